//! Exact solutions of −Δu = λu over the geometry's energy basis.

use crate::boundary::BoundaryGeometry;
use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, CVector, Cplx, Real};
use crate::spectral::bessel;

use super::function::{CatalogFunction, Profile};

/// Sign regime of the energy parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Regime<T: Real> {
    /// λ = k² > 0.
    Oscillatory(T),
    Zero,
    /// λ = −κ² < 0.
    Evanescent(T),
}

impl<T: Real> Regime<T> {
    pub fn of(lambda: T) -> Self {
        if lambda > T::zero() {
            Self::Oscillatory(lambda.sqrt())
        } else if lambda < T::zero() {
            Self::Evanescent((-lambda).sqrt())
        } else {
            Self::Zero
        }
    }
}

/// Trace data of one basis solution, `(g, n)` for the boundary coordinate it
/// touches, scaled by `e^{log_scale}`: the true values are `g·e^s`, `n·e^s`.
/// Interval solutions touch both endpoints and always have `log_scale = 0`.
#[derive(Clone, Debug)]
pub struct BasisTrace<T: Real> {
    pub g: CVector<T>,
    pub n: CVector<T>,
    pub log_scale: T,
}

/// Number of basis solutions per energy.
pub fn basis_size<T: Real>(geom: &BoundaryGeometry<T>) -> usize {
    geom.dim()
}

fn check_disk_envelope<T: Real>(geom: &BoundaryGeometry<T>, lambda: T) -> Result<()> {
    if let BoundaryGeometry::Disk { radius, cutoff } = *geom {
        let x = to_f64(lambda.abs().sqrt() * radius);
        if cutoff > bessel::MAX_ORDER || x > bessel::MAX_ARG {
            return Err(Error::BesselEnvelope { order: cutoff, x });
        }
    }
    Ok(())
}

/// Closed-form basis solution `j` at energy `lambda`.
///
/// Interval [a, b]: {cos k(x−a), sin k(x−a)} for λ = k² > 0, {1, x−a} for
/// λ = 0, and for λ = −κ² < 0 either {cosh κ(x−a), sinh κ(x−a)} (κℓ ≤ 1) or
/// {e^{−κ(x−a)}, e^{−κ(b−x)}} (κℓ > 1). The exponential pair degenerates to
/// {1, 1} as κ → 0, the hyperbolic pair overflows for large κℓ.
///
/// Disk: J_|m|(kr), r^|m|, I_|m|(κr) times e_m(θ). The second solution of each
/// mode (Y_|m|, log r, r^{−|m|}, K_|m|) is excluded: for |m| ≥ 1 it behaves like
/// r^{−|m|} and ∫ r^{−2|m|} r dr diverges at 0, so it is not in L²(Ω); for m = 0
/// it is L² but Δ log r = 2π δ_0 is not, so it is not in D(T*).
pub fn basis_profile<T: Real>(geom: &BoundaryGeometry<T>, lambda: T, j: usize) -> Result<Profile<T>> {
    check_disk_envelope(geom, lambda)?;
    let regime = Regime::of(lambda);
    match *geom {
        BoundaryGeometry::Interval { a, b } => Ok(match (regime, j) {
            (Regime::Oscillatory(k), 0) => Profile::real(
                move |x: T| (k * (x - a)).cos(),
                move |x: T| -k * (k * (x - a)).sin(),
                move |x: T| -k * k * (k * (x - a)).cos(),
            ),
            (Regime::Oscillatory(k), _) => Profile::real(
                move |x: T| (k * (x - a)).sin(),
                move |x: T| k * (k * (x - a)).cos(),
                move |x: T| -k * k * (k * (x - a)).sin(),
            ),
            (Regime::Zero, 0) => Profile::real(|_| T::one(), |_| T::zero(), |_| T::zero()),
            (Regime::Zero, _) => Profile::real(move |x: T| x - a, |_| T::one(), |_| T::zero()),
            (Regime::Evanescent(q), 0) if q * (b - a) <= T::one() => Profile::real(
                move |x: T| (q * (x - a)).cosh(),
                move |x: T| q * (q * (x - a)).sinh(),
                move |x: T| q * q * (q * (x - a)).cosh(),
            ),
            (Regime::Evanescent(q), _) if q * (b - a) <= T::one() => Profile::real(
                move |x: T| (q * (x - a)).sinh(),
                move |x: T| q * (q * (x - a)).cosh(),
                move |x: T| q * q * (q * (x - a)).sinh(),
            ),
            (Regime::Evanescent(q), 0) => Profile::real(
                move |x: T| (-q * (x - a)).exp(),
                move |x: T| -q * (-q * (x - a)).exp(),
                move |x: T| q * q * (-q * (x - a)).exp(),
            ),
            (Regime::Evanescent(q), _) => Profile::real(
                move |x: T| (-q * (b - x)).exp(),
                move |x: T| q * (-q * (b - x)).exp(),
                move |x: T| q * q * (-q * (b - x)).exp(),
            ),
        }),
        BoundaryGeometry::Disk { .. } => {
            let order = geom.mode(j).unsigned_abs() as usize;
            let m: T = lit(order as f64);
            Ok(match regime {
                Regime::Oscillatory(k) => {
                    let j_at = move |x: T| bessel::bessel_j(order, x).unwrap_or(crate::scalar::lit::<T>(f64::NAN));
                    let jp_at = move |x: T| bessel::bessel_j_prime(order, x).unwrap_or(crate::scalar::lit::<T>(f64::NAN));
                    Profile::real(
                        move |r: T| j_at(k * r),
                        move |r: T| k * jp_at(k * r),
                        // Bessel ODE: J'' = −J'/x − (1 − m²/x²) J
                        move |r: T| {
                            let x = k * r;
                            k * k * (-jp_at(x) / x - (T::one() - m * m / (x * x)) * j_at(x))
                        },
                    )
                }
                Regime::Zero => Profile::real(
                    move |r: T| r.powf(m),
                    move |r: T| if order == 0 { T::zero() } else { m * r.powf(m - T::one()) },
                    move |r: T| {
                        if order < 2 {
                            T::zero()
                        } else {
                            m * (m - T::one()) * r.powf(m - lit(2.0))
                        }
                    },
                ),
                Regime::Evanescent(q) => {
                    let i_at = move |x: T| bessel::bessel_i(order, x).unwrap_or(crate::scalar::lit::<T>(f64::NAN));
                    let ip_at = move |x: T| bessel::bessel_i_prime(order, x).unwrap_or(crate::scalar::lit::<T>(f64::NAN));
                    Profile::real(
                        move |r: T| i_at(q * r),
                        move |r: T| q * ip_at(q * r),
                        // I'' = −I'/x + (1 + m²/x²) I
                        move |r: T| {
                            let x = q * r;
                            q * q * (-ip_at(x) / x + (T::one() + m * m / (x * x)) * i_at(x))
                        },
                    )
                }
            })
        }
    }
}

/// Raw trace and outward normal derivative of basis solution `j`, scaled to
/// stay representable (see [`BasisTrace`]).
pub fn basis_trace<T: Real>(geom: &BoundaryGeometry<T>, lambda: T, j: usize) -> Result<BasisTrace<T>> {
    check_disk_envelope(geom, lambda)?;
    let d = geom.dim();
    let mut g = CVector::zeros(d);
    let mut n = CVector::zeros(d);
    let c = |x: T| Cplx::new(x, T::zero());
    match *geom {
        BoundaryGeometry::Interval { a, b } => {
            let p = basis_profile(geom, lambda, j)?;
            g[0] = (p.value)(a);
            g[1] = (p.value)(b);
            n[0] = -(p.deriv)(a);
            n[1] = (p.deriv)(b);
            Ok(BasisTrace { g, n, log_scale: T::zero() })
        }
        BoundaryGeometry::Disk { radius, .. } => {
            let order = geom.mode(j).unsigned_abs() as usize;
            let (gv, nv, s) = match Regime::of(lambda) {
                Regime::Oscillatory(k) => {
                    let (v, dv, s) = bessel::bessel_j_pair(order, k * radius)?;
                    (v, k * dv, s)
                }
                Regime::Zero => {
                    let m: T = lit(order as f64);
                    // r^m: value R^m, derivative m R^{m−1}
                    (T::one(), m / radius, m * radius.ln())
                }
                Regime::Evanescent(q) => {
                    let (v, dv, s) = bessel::bessel_i_pair(order, q * radius)?;
                    (v, q * dv, s)
                }
            };
            g[j] = c(gv);
            n[j] = c(nv);
            Ok(BasisTrace { g, n, log_scale: s })
        }
    }
}

/// A function u = Σ_j c_j u_j(λ) with −Δu = λu exactly; hence u ∈ D(T*) and T*u = λu.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeState<T: Real> {
    geom: BoundaryGeometry<T>,
    lambda: T,
    coeffs: CVector<T>,
}

impl<T: Real> ModeState<T> {
    pub fn new(geom: &BoundaryGeometry<T>, lambda: T, coeffs: CVector<T>) -> Result<Self> {
        crate::boundary::check_dim(basis_size(geom), coeffs.len())?;
        check_disk_envelope(geom, lambda)?;
        Ok(Self { geom: geom.clone(), lambda, coeffs })
    }

    pub fn geom(&self) -> &BoundaryGeometry<T> {
        &self.geom
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn coeffs(&self) -> &CVector<T> {
        &self.coeffs
    }

    /// Closed-form representation for quadrature and pointwise evaluation.
    pub fn to_function(&self) -> Result<CatalogFunction<T>> {
        let name = format!("mode-state(λ={})", self.lambda);
        match self.geom {
            BoundaryGeometry::Interval { .. } => {
                let mut p = Profile::zero();
                for j in 0..self.coeffs.len() {
                    if self.coeffs[j] != Cplx::new(T::zero(), T::zero()) {
                        p = p.plus(&basis_profile(&self.geom, self.lambda, j)?.scaled(self.coeffs[j]));
                    }
                }
                CatalogFunction::on_interval(name, &self.geom, p)
            }
            BoundaryGeometry::Disk { .. } => {
                let mut parts = Vec::new();
                for j in 0..self.coeffs.len() {
                    if self.coeffs[j] != Cplx::new(T::zero(), T::zero()) {
                        parts.push((j, basis_profile(&self.geom, self.lambda, j)?.scaled(self.coeffs[j])));
                    }
                }
                CatalogFunction::on_disk(name, &self.geom, parts)
            }
        }
    }

    pub fn scaled(&self, c: Cplx<T>) -> Self {
        Self { geom: self.geom.clone(), lambda: self.lambda, coeffs: self.coeffs.map(|z| z * c) }
    }
}

/// Raw trace γψ and outward normal derivative νψ of a mode state.
pub fn trace_data<T: Real>(state: &ModeState<T>) -> Result<(CVector<T>, CVector<T>)> {
    let d = state.geom.dim();
    let mut g = CVector::zeros(d);
    let mut n = CVector::zeros(d);
    for j in 0..state.coeffs.len() {
        let c = state.coeffs[j];
        if c == Cplx::new(T::zero(), T::zero()) {
            continue;
        }
        let bt = basis_trace(&state.geom, state.lambda, j)?;
        let w = c.scale(bt.log_scale.exp());
        g += bt.g.map(|z| z * w);
        n += bt.n.map(|z| z * w);
    }
    Ok((g, n))
}
