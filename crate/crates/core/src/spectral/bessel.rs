//! Bessel functions J_m and I_m of integer order for the disk radial solutions.
//!
//! Evaluated in binary64 regardless of the caller's scalar type. Validity
//! envelope: order ≤ 200, 0 ≤ x ≤ 500.

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

pub const MAX_ORDER: usize = 200;
pub const MAX_ARG: f64 = 500.0;

const SERIES_TOL: f64 = 1e-17;

fn check_envelope(order: usize, x: f64) -> Result<()> {
    if order > MAX_ORDER || !(0.0..=MAX_ARG).contains(&x) {
        return Err(Error::BesselEnvelope { order, x });
    }
    Ok(())
}

fn ln_factorial(m: usize) -> f64 {
    (2..=m).map(|k| (k as f64).ln()).sum()
}

/// ln((x/2)^m / m!), the leading power-series factor.
fn ln_prefactor(m: usize, x: f64) -> f64 {
    if m == 0 {
        0.0
    } else {
        m as f64 * (0.5 * x).ln() - ln_factorial(m)
    }
}

/// Σ_k s^k (z/4)^k / (k! (m+1)_k) with s = −1 for J and +1 for I, z = x².
fn reduced_series(m: usize, x: f64, sign: f64) -> f64 {
    let q = sign * 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1usize;
    loop {
        term *= q / (k as f64 * (m + k) as f64);
        sum += term;
        if term.abs() <= SERIES_TOL * sum.abs() && (k as f64) * ((m + k) as f64) > q.abs() {
            break;
        }
        k += 1;
        if k > 5000 {
            break;
        }
    }
    sum
}

fn use_series(m: usize, x: f64) -> bool {
    x <= 12.0 || 0.25 * x * x <= (m + 1) as f64
}

/// J_0..=J_{top} at x ≥ 12 by normalized backward (Miller) recurrence.
fn miller(top: usize, x: f64) -> Vec<f64> {
    let big = top.max(x.ceil() as usize);
    let mut start = big + (160.0 * big as f64).sqrt() as usize + 20;
    start += start % 2;
    let mut vals = vec![0.0; top + 2];
    let mut next = 0.0; // J_{k+1}
    let mut cur = 1e-300; // J_k
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        let prev = 2.0 * k as f64 / x * cur - next; // J_{k-1}
        next = cur;
        cur = prev;
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
            for v in vals.iter_mut() {
                *v *= 1e-250;
            }
        }
        let idx = k - 1;
        if idx <= top + 1 {
            vals[idx] = cur;
        }
        if idx % 2 == 0 && idx > 0 {
            norm += 2.0 * cur;
        }
    }
    norm += cur; // J_0 term
    vals.iter().map(|v| v / norm).collect()
}

fn j_f64(m: usize, x: f64) -> f64 {
    if x == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    if use_series(m, x) {
        (ln_prefactor(m, x)).exp() * reduced_series(m, x, -1.0)
    } else {
        miller(m, x)[m]
    }
}

/// Bessel function of the first kind J_m(x).
pub fn bessel_j<T: Real>(m: usize, x: T) -> Result<T> {
    let xf = to_f64(x);
    check_envelope(m, xf)?;
    Ok(lit(j_f64(m, xf)))
}

/// J_m'(x) = (J_{m−1}(x) − J_{m+1}(x)) / 2, with J_0' = −J_1.
pub fn bessel_j_prime<T: Real>(m: usize, x: T) -> Result<T> {
    let xf = to_f64(x);
    check_envelope(m, xf)?;
    let (_, b, ls) = j_pair_f64(m, xf);
    Ok(lit(b * ls.exp()))
}

/// (a, b, s) with J_m(x) = a·e^s and J_m'(x) = b·e^s. The scale keeps tiny
/// values representable when x ≪ m.
fn j_pair_f64(m: usize, x: f64) -> (f64, f64, f64) {
    if x == 0.0 {
        return match m {
            0 => (1.0, 0.0, 0.0),
            1 => (0.0, 0.5, 0.0),
            _ => (0.0, 0.0, 0.0),
        };
    }
    if use_series(m, x) {
        let ls = ln_prefactor(m, x);
        let a = reduced_series(m, x, -1.0);
        let b = if m == 0 {
            -0.5 * x * reduced_series(1, x, -1.0)
        } else {
            m as f64 / x * reduced_series(m - 1, x, -1.0)
                - x / (4.0 * (m + 1) as f64) * reduced_series(m + 1, x, -1.0)
        };
        (a, b, ls)
    } else {
        let v = miller(m + 1, x);
        let d = if m == 0 { -v[1] } else { 0.5 * (v[m - 1] - v[m + 1]) };
        (v[m], d, 0.0)
    }
}

/// Scaled pair for J: see [`bessel_i_pair`].
pub fn bessel_j_pair<T: Real>(m: usize, x: T) -> Result<(T, T, T)> {
    let xf = to_f64(x);
    check_envelope(m, xf)?;
    let (a, b, s) = j_pair_f64(m, xf);
    Ok((lit(a), lit(b), lit(s)))
}

fn i_pair_f64(m: usize, x: f64) -> (f64, f64, f64) {
    if x == 0.0 {
        return match m {
            0 => (1.0, 0.0, 0.0),
            1 => (0.0, 0.5, 0.0),
            _ => (0.0, 0.0, 0.0),
        };
    }
    let ls = ln_prefactor(m, x);
    let a = reduced_series(m, x, 1.0);
    let b = if m == 0 {
        0.5 * x * reduced_series(1, x, 1.0)
    } else {
        m as f64 / x * reduced_series(m - 1, x, 1.0) + x / (4.0 * (m + 1) as f64) * reduced_series(m + 1, x, 1.0)
    };
    (a, b, ls)
}

/// Modified Bessel function I_m(x).
pub fn bessel_i<T: Real>(m: usize, x: T) -> Result<T> {
    let xf = to_f64(x);
    check_envelope(m, xf)?;
    let (a, _, s) = i_pair_f64(m, xf);
    Ok(lit(a * s.exp()))
}

pub fn bessel_i_prime<T: Real>(m: usize, x: T) -> Result<T> {
    let xf = to_f64(x);
    check_envelope(m, xf)?;
    let (_, b, s) = i_pair_f64(m, xf);
    Ok(lit(b * s.exp()))
}

/// (a, b, s) with I_m(x) = a·e^s and I_m'(x) = b·e^s.
pub fn bessel_i_pair<T: Real>(m: usize, x: T) -> Result<(T, T, T)> {
    let xf = to_f64(x);
    check_envelope(m, xf)?;
    let (a, b, s) = i_pair_f64(m, xf);
    Ok((lit(a), lit(b), lit(s)))
}
