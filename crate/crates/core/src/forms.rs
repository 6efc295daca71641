//! The quadratic form 𝔱_U(ψ) = ‖∇ψ_D‖² + ⟨γ̂ψ|K_U γ̂ψ⟩ and its consistency
//! with the operator T_U.

use crate::boundary::{h_inner, BoundaryUnitary, DEFAULT_TOL_ONE};
use crate::cayley::k_u;
use crate::domain::{hat_pair, pi_d, CatalogFunction, ModeState};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{cabs, lit, to_f64, Real};

pub const TRACE_TOL: f64 = 1e-10;
/// Relative threshold for ‖P_U γ̂ψ‖ in the form-domain test.
pub const DOMAIN_TOL: f64 = 1e-8;
const IMAG_TOL: f64 = 1e-10;

/// ‖∇ψ_D‖² for a function with zero trace.
pub fn dirichlet_energy<T: Real>(psi: &CatalogFunction<T>) -> Result<T> {
    let (g, _) = psi.trace_data();
    let norm = linalg::vec_norm(&g);
    if !(norm <= lit(TRACE_TOL)) {
        return Err(Error::NonzeroTrace { norm: to_f64(norm) });
    }
    psi.gradient_energy()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FormBreakdown<T: Real> {
    pub t_u: T,
    /// ‖∇ψ_D‖².
    pub dirichlet_part: T,
    /// ⟨γ̂ψ|K_U γ̂ψ⟩.
    pub boundary_part: T,
    /// Whether γ̂ψ lies in Ran Q_U within tolerance.
    pub domain_ok: bool,
    /// ‖P_U γ̂ψ‖.
    pub domain_defect: T,
}

/// Both parts of 𝔱_U(ψ), reporting instead of rejecting traces outside the
/// form domain. The boundary part only sees the Ran Q_U component of γ̂ψ.
pub fn form_breakdown<T: Real>(u: &BoundaryUnitary<T>, psi: &CatalogFunction<T>) -> Result<FormBreakdown<T>> {
    crate::boundary::check_dim(psi.geom().dim(), u.dim())?;
    let (g, mu) = hat_pair(psi)?;
    let form = k_u(u, lit(DEFAULT_TOL_ONE))?;
    let defect = linalg::vec_norm(&(&form.p * &g.0));
    let domain_ok = defect <= lit::<T>(DOMAIN_TOL) * (g.norm() + mu.norm());
    let kg = form.k_full() * &g.0;
    let boundary = g.0.dotc(&kg);
    if !(boundary.im.abs() <= lit::<T>(IMAG_TOL) * (T::one() + cabs(boundary))) {
        return Err(Error::NotHermitian { defect: to_f64(boundary.im.abs()) });
    }
    let dirichlet_part = pi_d(psi)?.gradient_energy()?;
    Ok(FormBreakdown {
        t_u: dirichlet_part + boundary.re,
        dirichlet_part,
        boundary_part: boundary.re,
        domain_ok,
        domain_defect: defect,
    })
}

/// 𝔱_U(ψ); fails when γ̂ψ is outside the form domain Ran Q_U.
pub fn form_value<T: Real>(u: &BoundaryUnitary<T>, psi: &CatalogFunction<T>) -> Result<T> {
    let b = form_breakdown(u, psi)?;
    if !b.domain_ok {
        return Err(Error::FormDomain { defect: to_f64(b.domain_defect) });
    }
    Ok(b.t_u)
}

pub fn form_value_state<T: Real>(u: &BoundaryUnitary<T>, state: &ModeState<T>) -> Result<T> {
    form_value(u, &state.to_function()?)
}

/// |⟨φ|T*φ⟩ − (‖∇φ_D‖² − ⟨γ̂φ|μ̂φ⟩)|, volume terms by quadrature.
pub fn semi_green_check<T: Real>(phi: &CatalogFunction<T>) -> Result<T> {
    let lhs = phi.inner_tstar(phi)?;
    let (g, mu) = hat_pair(phi)?;
    let energy = pi_d(phi)?.gradient_energy()?;
    let rhs = -h_inner(&g, &mu)? + crate::scalar::real(energy);
    Ok(cabs(lhs - rhs))
}
