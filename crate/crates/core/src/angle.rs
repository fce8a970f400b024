// Copyright 2026 The qcadfs Authors
// SPDX-License-Identifier: Apache-2.0

//! Radian literals: plain numbers or `π` fractions such as `pi/2`,
//! `3*pi/2`, `-pi`, `2pi`, `0.5*pi/3`.

use std::f64::consts::PI;
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{QcaError, Result};

pub fn parse_angle(text: &str) -> Result<f64> {
    let bad = || QcaError::InvalidParameter(format!("invalid angle {text:?}"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.to_ascii_lowercase();
    if s.is_empty() {
        return Err(bad());
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, s.strip_prefix('+').unwrap_or(&s)),
    };
    if body.starts_with(['+', '-']) {
        return Err(bad());
    }
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => {
            let d: f64 = d.parse().map_err(|_| bad())?;
            if d == 0.0 {
                return Err(bad());
            }
            (n, d)
        }
        None => (body, 1.0),
    };
    let value = if let Some(coef) = numer.strip_suffix("pi") {
        let coef = coef.strip_suffix('*').unwrap_or(coef);
        let k: f64 = if coef.is_empty() {
            1.0
        } else {
            coef.parse().map_err(|_| bad())?
        };
        k * PI
    } else {
        numer.parse::<f64>().map_err(|_| bad())?
    };
    let out = sign * value / denom;
    if !out.is_finite() {
        return Err(bad());
    }
    Ok(out)
}

/// Angle in radians accepting either a JSON number or a `pi` expression.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Angle(pub f64);

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.0)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct AngleVisitor;

        impl Visitor<'_> for AngleVisitor {
            type Value = Angle;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number of radians or an expression like \"3*pi/2\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Angle, E> {
                Ok(Angle(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Angle, E> {
                Ok(Angle(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Angle, E> {
                Ok(Angle(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Angle, E> {
                parse_angle(v).map(Angle).map_err(E::custom)
            }
        }

        d.deserialize_any(AngleVisitor)
    }
}
