//! Geometry-side operators: trace, normal derivative, Dirichlet-to-Neumann
//! map, harmonic extension, the projection Π_D and the regularized normal
//! derivative μ.
//!
//! μψ = Λ ν Π_D ψ is evaluated as Λ(νψ − DtN γψ): Π_D removes the harmonic
//! extension of γψ, whose normal derivative is DtN γψ. This is exact for the
//! closed-form functions handled here and needs no Dirichlet solve.

mod catalog;
mod function;
mod mode_state;

pub use catalog::{disk_corpus, interval_corpus};
pub use function::{CatalogFunction, Profile, ScalarFn};
pub use mode_state::{basis_profile, basis_size, basis_trace, trace_data, BasisTrace, ModeState, Regime};

use nalgebra::DMatrix;

use crate::boundary::{check_dim, BoundaryGeometry, BoundaryVector};
use crate::error::Result;
use crate::scalar::{lit, CMatrix, CVector, Cplx, Real};

/// Dirichlet-to-Neumann map in raw L² coordinates.
pub fn dtn<T: Real>(geom: &BoundaryGeometry<T>) -> CMatrix<T> {
    match *geom {
        BoundaryGeometry::Interval { a, b } => {
            let w = (b - a).recip();
            let c = |x: T| Cplx::new(x, T::zero());
            DMatrix::from_row_slice(2, 2, &[c(w), c(-w), c(-w), c(w)])
        }
        BoundaryGeometry::Disk { radius, .. } => {
            let d = geom.dim();
            DMatrix::from_fn(d, d, |r, c| {
                if r == c {
                    Cplx::new(lit::<T>(geom.mode(r).unsigned_abs() as f64) / radius, T::zero())
                } else {
                    Cplx::new(T::zero(), T::zero())
                }
            })
        }
    }
}

/// Regularized normal derivative in hat coordinates:
/// component j is (1+λ_j)^{1/4} (n_j − (DtN g)_j).
pub fn mu_from_trace<T: Real>(geom: &BoundaryGeometry<T>, g: &CVector<T>, n: &CVector<T>) -> Result<BoundaryVector<T>> {
    function::check_trace_dims(geom, g, n)?;
    let regular = n - dtn(geom) * g;
    let w = geom.sobolev_weights(lit(0.5));
    Ok(BoundaryVector(CVector::from_fn(regular.len(), |j, _| regular[j].scale(w[j]))))
}

/// Trace γψ converted to hat coordinates.
pub fn gamma_hat<T: Real>(geom: &BoundaryGeometry<T>, g: &CVector<T>) -> Result<BoundaryVector<T>> {
    geom.raw_to_hat(g).map(BoundaryVector)
}

/// Harmonic function with trace `g` (raw coordinates): the affine interpolant
/// on the interval, Σ g_m (r/R)^{|m|} e_m(θ) on the disk.
pub fn harmonic_extension<T: Real>(geom: &BoundaryGeometry<T>, g: &CVector<T>) -> Result<CatalogFunction<T>> {
    check_dim(geom.dim(), g.len())?;
    match *geom {
        BoundaryGeometry::Interval { a, b } => {
            let (ga, gb) = (g[0], g[1]);
            let slope = (gb - ga).unscale(b - a);
            let zero = Cplx::new(T::zero(), T::zero());
            let p = Profile::new(move |x: T| ga + slope.scale(x - a), move |_| slope, move |_| zero);
            CatalogFunction::on_interval("harmonic", geom, p)
        }
        BoundaryGeometry::Disk { radius, .. } => {
            let parts = (0..geom.dim()).filter(|&j| g[j] != Cplx::new(T::zero(), T::zero())).map(|j| {
                let m: T = lit(geom.mode(j).unsigned_abs() as f64);
                let c = g[j];
                let p = Profile::new(
                    move |r: T| c.scale((r / radius).powf(m)),
                    move |r: T| {
                        if m == T::zero() {
                            Cplx::new(T::zero(), T::zero())
                        } else {
                            c.scale(m / radius * (r / radius).powf(m - T::one()))
                        }
                    },
                    move |r: T| {
                        if m < lit(2.0) {
                            Cplx::new(T::zero(), T::zero())
                        } else {
                            c.scale(m * (m - T::one()) / (radius * radius) * (r / radius).powf(m - lit(2.0)))
                        }
                    },
                );
                (j, p)
            });
            CatalogFunction::on_disk("harmonic", geom, parts.collect::<Vec<_>>())
        }
    }
}

/// Π_D ψ = ψ − harmonic_extension(γψ): the Dirichlet-domain component.
pub fn pi_d<T: Real>(psi: &CatalogFunction<T>) -> Result<CatalogFunction<T>> {
    let (g, _) = psi.trace_data();
    let h = harmonic_extension(psi.geom(), &g)?;
    Ok(psi.minus(&h)?.with_name(format!("Π_D({})", psi.name())))
}

/// (γ̂ψ, μ̂ψ) of a closed-form function.
pub fn hat_pair<T: Real>(psi: &CatalogFunction<T>) -> Result<(BoundaryVector<T>, BoundaryVector<T>)> {
    let (g, n) = psi.trace_data();
    Ok((gamma_hat(psi.geom(), &g)?, mu_from_trace(psi.geom(), &g, &n)?))
}
