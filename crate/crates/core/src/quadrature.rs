//! Fixed quadrature rules used for volume integrals.

use crate::scalar::{lit, Cplx, Real};

/// Subintervals of the composite Simpson rule on the interval (even).
pub const SIMPSON_INTERVALS: usize = 2048;
/// Radial Gauss–Legendre nodes on the disk.
pub const GAUSS_LEGENDRE_NODES: usize = 128;

/// Composite Simpson rule for a complex integrand on [a, b].
pub fn simpson<T: Real>(a: T, b: T, n: usize, f: impl Fn(T) -> Cplx<T>) -> Cplx<T> {
    let n = n + n % 2;
    let h = (b - a) / lit::<T>(n as f64);
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w: T = if i % 2 == 1 { lit(4.0) } else { lit(2.0) };
        acc += f(a + h * lit::<T>(i as f64)).scale(w);
    }
    acc.scale(h / lit(3.0))
}

/// Gauss–Legendre nodes and weights on [−1, 1], computed in binary64 by
/// Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else if n == 1 { x } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

/// Gauss–Legendre rule mapped to [a, b].
pub fn gauss_legendre_on<T: Real>(a: T, b: T, n: usize, f: impl Fn(T) -> Cplx<T>) -> Cplx<T> {
    let half = (b - a) * lit(0.5);
    let mid = (b + a) * lit(0.5);
    gauss_legendre(n)
        .into_iter()
        .fold(Cplx::new(T::zero(), T::zero()), |acc, (x, w)| acc + f(mid + half * lit(x)).scale(half * lit(w)))
}
