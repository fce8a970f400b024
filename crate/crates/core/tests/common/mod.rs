// Copyright 2026 The qcadfs Authors
// SPDX-License-Identifier: Apache-2.0

//! Reference computations written without the library's linear algebra:
//! nested `Vec` matrices, explicit loops, closed forms typed in by hand.

#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64 as C;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type M = Vec<Vec<C>>;

pub const ZERO: C = C::new(0.0, 0.0);
pub const ONE: C = C::new(1.0, 0.0);
pub const I: C = C::new(0.0, 1.0);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn eye(n: usize) -> M {
    (0..n)
        .map(|r| (0..n).map(|c| if r == c { ONE } else { ZERO }).collect())
        .collect()
}

pub fn mat(rows: &[&[C]]) -> M {
    rows.iter().map(|r| r.to_vec()).collect()
}

pub fn matmul(a: &M, b: &M) -> M {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    let mut out = vec![vec![ZERO; m]; n];
    for r in 0..n {
        for c in 0..m {
            let mut acc = ZERO;
            for j in 0..k {
                acc += a[r][j] * b[j][c];
            }
            out[r][c] = acc;
        }
    }
    out
}

pub fn kron(a: &M, b: &M) -> M {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![ZERO; n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn dagger(a: &M) -> M {
    let n = a.len();
    (0..n).map(|r| (0..n).map(|c| a[c][r].conj()).collect()).collect()
}

pub fn add(a: &M, b: &M) -> M {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect())
        .collect()
}

pub fn scale(a: &M, k: C) -> M {
    a.iter().map(|r| r.iter().map(|x| x * k).collect()).collect()
}

pub fn trace(a: &M) -> C {
    (0..a.len()).map(|i| a[i][i]).sum()
}

pub fn apply(a: &M, v: &[C]) -> Vec<C> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn max_diff(a: &M, b: &M) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_vec_diff(a: &[C], b: &[C]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn fidelity(a: &[C], b: &[C]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<C>().norm_sqr()
}

/// `|tr(A†B)| / d`.
pub fn similarity(a: &M, b: &M) -> f64 {
    trace(&matmul(&dagger(a), b)).norm() / a.len() as f64
}

pub fn from_library(m: &qcadfs::linalg::CMatrix) -> M {
    let n = m.dim();
    (0..n).map(|r| (0..n).map(|c| m[(r, c)]).collect()).collect()
}

pub fn pauli(ch: char) -> M {
    match ch {
        'I' => eye(2),
        'X' => mat(&[&[ZERO, ONE], &[ONE, ZERO]]),
        'Y' => mat(&[&[ZERO, -I], &[I, ZERO]]),
        'Z' => mat(&[&[ONE, ZERO], &[ZERO, -ONE]]),
        other => panic!("not a Pauli symbol: {other}"),
    }
}

pub fn pauli_string(label: &str) -> M {
    label
        .chars()
        .map(pauli)
        .reduce(|a, b| kron(&a, &b))
        .expect("non-empty label")
}

/// `cos(θ/2) I − i sin(θ/2) σ`.
pub fn rot(axis: char, theta: f64) -> M {
    let (s, c) = (theta / 2.0).sin_cos();
    add(&scale(&eye(2), C::new(c, 0.0)), &scale(&pauli(axis), C::new(0.0, -s)))
}

/// Truncated Taylor series for `exp(−iHt)`.
pub fn expm_series(h: &M, t: f64, terms: usize) -> M {
    let a = scale(h, C::new(0.0, -t));
    let mut term = eye(h.len());
    let mut sum = eye(h.len());
    for k in 1..terms {
        term = scale(&matmul(&term, &a), C::new(1.0 / k as f64, 0.0));
        sum = add(&sum, &term);
    }
    sum
}

/// 4×4-or-smaller inverse by Gauss-Jordan with partial pivoting.
pub fn inverse(a: &M) -> M {
    let n = a.len();
    let mut aug: Vec<Vec<C>> = a
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut v = row.clone();
            v.extend((0..n).map(|c| if r == c { ONE } else { ZERO }));
            v
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| aug[x][col].norm().total_cmp(&aug[y][col].norm()))
            .unwrap();
        aug.swap(col, pivot);
        let p = aug[col][col];
        assert!(p.norm() > 1e-14, "singular matrix");
        for v in aug[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col {
                let f = aug[r][col];
                let pivot_row = aug[col].clone();
                for (v, pv) in aug[r].iter_mut().zip(pivot_row) {
                    *v -= f * pv;
                }
            }
        }
    }
    aug.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Unitary polar factor by Newton iteration `X ← (X + X^{−†})/2`.
pub fn polar_unitary(a: &M) -> M {
    let mut x = a.clone();
    for _ in 0..100 {
        let next = scale(&add(&x, &dagger(&inverse(&x))), C::new(0.5, 0.0));
        let done = max_diff(&next, &x) < 1e-15;
        x = next;
        if done {
            break;
        }
    }
    x
}

pub fn unitarity_deviation(a: &M) -> f64 {
    max_diff(&matmul(&dagger(a), a), &eye(a.len()))
}

/// Spin operator of a pulse list applied in order on a two-spin pair.
fn pulses(list: &[(usize, char, f64)]) -> M {
    list.iter().fold(eye(4), |acc, &(target, axis, angle)| {
        let r = rot(axis, angle);
        let op = if target == 0 {
            kron(&r, &eye(2))
        } else {
            kron(&eye(2), &r)
        };
        matmul(&op, &acc)
    })
}

/// Angle with one `ε` per `π/2` of nominal rotation.
fn over(theta: f64, eps: f64) -> f64 {
    theta + eps * theta.abs() / FRAC_PI_2 * theta.signum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    Hl,
    Cpf,
}

/// Effective two-spin operator of a perturbed canonical cycle (`ω₀ = 0`,
/// `γ = 1`), assembled from `α·U_AC + β·U_BD` with the charge amplitudes
/// written out in closed form.
pub fn effective(gate: Gate, eps: f64, delta: f64) -> (M, bool) {
    let (u_ac, u_bd) = match gate {
        Gate::Hl => (
            pulses(&[(0, 'X', over(PI, eps)), (1, 'X', over(3.0 * PI, eps))]),
            pulses(&[(0, 'Z', over(3.0 * PI, eps))]),
        ),
        Gate::Cpf => (
            pulses(&[(0, 'Z', over(FRAC_PI_2, eps)), (1, 'Z', over(FRAC_PI_2, eps))]),
            pulses(&[
                (0, 'Z', over(3.0 * FRAC_PI_2, eps)),
                (1, 'Z', over(3.0 * FRAC_PI_2, eps)),
            ]),
        ),
    };
    // exp(−i(θ/2)σ_x) applied to |−⟩: stays with cos(θ/2), moves with −i sin(θ/2)
    let theta = FRAC_PI_2 + delta;
    let alpha = C::new((theta / 2.0).cos(), 0.0);
    let beta = C::new(0.0, -(theta / 2.0).sin());
    let m = add(&scale(&u_ac, alpha), &scale(&u_bd, beta));
    if unitarity_deviation(&m) > 1e-9 {
        (polar_unitary(&m), true)
    } else {
        (m, false)
    }
}

pub fn noisy_fidelity(gate: Gate, input: &[C], eps: f64, delta: f64) -> f64 {
    let (ideal, _) = effective(gate, 0.0, 0.0);
    let (noisy, _) = effective(gate, eps, delta);
    fidelity(&apply(&ideal, input), &apply(&noisy, input))
}

/// Code-space behaviour of a two-qubit operator found by applying it to
/// `|01⟩` and `|10⟩` and reading the projections.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    Identity,
    Logic,
    Leakage,
}

pub fn classify(op: &M) -> Class {
    let code = [1usize, 2];
    let mut block = [[ZERO; 2]; 2];
    for (j, &col) in code.iter().enumerate() {
        let image: Vec<C> = (0..4).map(|r| op[r][col]).collect();
        let inside: f64 = code.iter().map(|&r| image[r].norm_sqr()).sum();
        let total: f64 = image.iter().map(|z| z.norm_sqr()).sum();
        if total - inside > 1e-12 {
            return Class::Leakage;
        }
        for (i, &row) in code.iter().enumerate() {
            block[i][j] = image[row];
        }
    }
    let scalar = block[0][0];
    let off = block[0][1].norm() + block[1][0].norm();
    if off < 1e-12 && (block[1][1] - scalar).norm() < 1e-12 {
        Class::Identity
    } else {
        Class::Logic
    }
}

/// Coefficient of `P` surviving `(1/|G|) Σ_g g P g†`.
pub fn surviving(group: &[&str], p: &str) -> f64 {
    let pm = pauli_string(p);
    let mut avg = scale(&pm, ZERO);
    for g in group {
        let gm = pauli_string(g);
        avg = add(&avg, &matmul(&matmul(&gm, &pm), &dagger(&gm)));
    }
    let avg = scale(&avg, C::new(1.0 / group.len() as f64, 0.0));
    (trace(&matmul(&pm, &avg)) / pm.len() as f64).re
}

pub fn random_amplitudes(rng: &mut ChaCha8Rng, n: usize) -> Vec<C> {
    let v: Vec<C> = (0..n)
        .map(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// Random unitary by Gram-Schmidt on random complex columns.
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> M {
    let mut cols: Vec<Vec<C>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v = random_amplitudes(rng, n);
        for u in &cols {
            let proj: C = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= proj * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    (0..n).map(|r| (0..n).map(|c| cols[c][r]).collect()).collect()
}

pub fn hadamard() -> M {
    let h = C::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    mat(&[&[h, h], &[h, -h]])
}

pub fn phase_gate(theta: f64) -> M {
    mat(&[&[ONE, ZERO], &[ZERO, C::from_polar(1.0, theta)]])
}
