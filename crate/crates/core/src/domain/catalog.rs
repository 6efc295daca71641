//! Compiled-in corpus of closed-form test functions for Green-type identities.

use crate::boundary::{index_of_mode, BoundaryGeometry};
use crate::scalar::{lit, Cplx, Real};

use super::function::{CatalogFunction, Profile};

/// Functions on an interval [a, b]: harmonic ones, zero-trace ones, an
/// H²_0-type bump and generic smooth functions.
pub fn interval_corpus<T: Real>(geom: &BoundaryGeometry<T>) -> Vec<CatalogFunction<T>> {
    let BoundaryGeometry::Interval { a, b } = *geom else {
        return Vec::new();
    };
    let two: T = lit(2.0);
    let entries: Vec<(&str, Profile<T>)> = vec![
        ("one", Profile::real(|_| T::one(), |_| T::zero(), |_| T::zero())),
        ("x", Profile::real(|x| x, |_| T::one(), |_| T::zero())),
        ("sin", Profile::real(|x: T| x.sin(), |x: T| x.cos(), |x: T| -x.sin())),
        ("cos", Profile::real(|x: T| x.cos(), |x: T| -x.sin(), |x: T| -x.cos())),
        ("sin+x", Profile::real(|x: T| x.sin() + x, |x: T| x.cos() + T::one(), |x: T| -x.sin())),
        (
            "parabola",
            // (x−a)(b−x): zero trace
            Profile::real(move |x| (x - a) * (b - x), move |x| a + b - two * x, move |_| -two),
        ),
        (
            "bump",
            // (x−a)²(b−x)²: zero trace and zero normal derivative
            Profile::real(
                move |x| {
                    let p = (x - a) * (b - x);
                    p * p
                },
                move |x| two * (x - a) * (b - x) * (a + b - two * x),
                move |x| {
                    let p = (x - a) * (b - x);
                    let dp = a + b - two * x;
                    two * (dp * dp - two * p)
                },
            ),
        ),
        ("exp", Profile::real(|x: T| x.exp(), |x: T| x.exp(), |x: T| x.exp())),
        ("cubic", Profile::real(|x: T| x * x * x, |x: T| lit::<T>(3.0) * x * x, |x: T| lit::<T>(6.0) * x)),
        (
            "wave",
            // e^{2ix}
            Profile::new(
                move |x: T| Cplx::new((two * x).cos(), (two * x).sin()),
                move |x: T| Cplx::new(-two * (two * x).sin(), two * (two * x).cos()),
                move |x: T| Cplx::new(-lit::<T>(4.0) * (two * x).cos(), -lit::<T>(4.0) * (two * x).sin()),
            ),
        ),
    ];
    entries
        .into_iter()
        .map(|(name, p)| CatalogFunction::on_interval(name, geom, p).expect("interval geometry"))
        .collect()
}

fn monomial<T: Real>(power: i32, c: Cplx<T>) -> Profile<T> {
    let p: T = lit(power as f64);
    Profile::new(
        move |r: T| c.scale(r.powi(power)),
        move |r: T| if power == 0 { Cplx::new(T::zero(), T::zero()) } else { c.scale(p * r.powi(power - 1)) },
        move |r: T| {
            if power < 2 {
                Cplx::new(T::zero(), T::zero())
            } else {
                c.scale(p * (p - T::one()) * r.powi(power - 2))
            }
        },
    )
}

/// Functions on a disk with cutoff N ≥ 2; entries needing modes beyond the
/// cutoff are dropped.
pub fn disk_corpus<T: Real>(geom: &BoundaryGeometry<T>) -> Vec<CatalogFunction<T>> {
    let BoundaryGeometry::Disk { radius, cutoff } = *geom else {
        return Vec::new();
    };
    let one = Cplx::new(T::one(), T::zero());
    let i = Cplx::new(T::zero(), T::one());
    let rr = radius * radius;
    let two: T = lit(2.0);
    let k: T = lit::<T>(2.0) / radius;
    let bessel = Profile::real(
        move |r: T| crate::spectral::bessel::bessel_j(0, k * r).unwrap_or(crate::scalar::lit::<T>(f64::NAN)),
        move |r: T| -k * crate::spectral::bessel::bessel_j(1, k * r).unwrap_or(crate::scalar::lit::<T>(f64::NAN)),
        move |r: T| {
            // J_0'' = −J_0'/x − J_0
            let x = k * r;
            let j0 = crate::spectral::bessel::bessel_j(0, x).unwrap_or(crate::scalar::lit::<T>(f64::NAN));
            let j1 = crate::spectral::bessel::bessel_j(1, x).unwrap_or(crate::scalar::lit::<T>(f64::NAN));
            k * k * (j1 / x - j0)
        },
    );
    let bump = Profile::real(
        // (R² − r²)²
        move |r: T| (rr - r * r) * (rr - r * r),
        move |r: T| -lit::<T>(4.0) * r * (rr - r * r),
        move |r: T| -lit::<T>(4.0) * rr + lit::<T>(12.0) * r * r,
    );
    let parabola2 = Profile::real(
        // r²(R² − r²), mode 2
        move |r: T| r * r * (rr - r * r),
        move |r: T| two * r * rr - lit::<T>(4.0) * r * r * r,
        move |r: T| two * rr - lit::<T>(12.0) * r * r,
    );
    type Entry<'a, T> = (&'a str, Vec<(i64, Profile<T>)>);
    let entries: Vec<Entry<T>> = vec![
        ("const", vec![(0, monomial(0, one))]),
        ("r1", vec![(1, monomial(1, one))]),
        ("bessel0", vec![(0, bessel)]),
        ("quad", vec![(0, monomial(2, one))]),
        ("bump", vec![(0, bump)]),
        ("parabola2", vec![(2, parabola2)]),
        ("mix", vec![(0, monomial(2, one)), (-1, monomial(3, one)), (2, monomial(2, one))]),
        ("complex", vec![(1, monomial(3, i)), (-2, monomial(2, one + i))]),
    ];
    entries
        .into_iter()
        .filter(|(_, parts)| parts.iter().all(|(m, _)| m.unsigned_abs() as usize <= cutoff))
        .map(|(name, parts)| {
            let parts = parts.into_iter().map(|(m, p)| (index_of_mode(m), p));
            CatalogFunction::on_disk(name, geom, parts.collect::<Vec<_>>()).expect("disk geometry")
        })
        .collect()
}
