//! Closed-form functions on Ω̄ with analytic derivatives.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::boundary::{check_dim, BoundaryGeometry};
use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre_on, simpson, GAUSS_LEGENDRE_NODES, SIMPSON_INTERVALS};
use crate::scalar::{lit, CVector, Cplx, Real};

pub type ScalarFn<T> = Arc<dyn Fn(T) -> Cplx<T> + Send + Sync>;

/// A function of one real variable with its first two derivatives. On the
/// interval this is ψ(x); on the disk it is the radial profile of one angular mode.
#[derive(Clone)]
pub struct Profile<T: Real> {
    pub value: ScalarFn<T>,
    pub deriv: ScalarFn<T>,
    pub second: ScalarFn<T>,
}

impl<T: Real> Profile<T> {
    pub fn new(
        value: impl Fn(T) -> Cplx<T> + Send + Sync + 'static,
        deriv: impl Fn(T) -> Cplx<T> + Send + Sync + 'static,
        second: impl Fn(T) -> Cplx<T> + Send + Sync + 'static,
    ) -> Self {
        Self { value: Arc::new(value), deriv: Arc::new(deriv), second: Arc::new(second) }
    }

    /// Real-valued profile from three real closures.
    pub fn real(
        value: impl Fn(T) -> T + Send + Sync + 'static,
        deriv: impl Fn(T) -> T + Send + Sync + 'static,
        second: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        Self::new(
            move |x| Cplx::new(value(x), T::zero()),
            move |x| Cplx::new(deriv(x), T::zero()),
            move |x| Cplx::new(second(x), T::zero()),
        )
    }

    pub fn zero() -> Self {
        let z = |_| Cplx::new(T::zero(), T::zero());
        Self::new(z, z, z)
    }

    pub fn scaled(&self, c: Cplx<T>) -> Self {
        let (v, d, s) = (self.value.clone(), self.deriv.clone(), self.second.clone());
        Self::new(move |x| v(x) * c, move |x| d(x) * c, move |x| s(x) * c)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let (v1, d1, s1) = (self.value.clone(), self.deriv.clone(), self.second.clone());
        let (v2, d2, s2) = (other.value.clone(), other.deriv.clone(), other.second.clone());
        Self::new(move |x| v1(x) + v2(x), move |x| d1(x) + d2(x), move |x| s1(x) + s2(x))
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(Cplx::new(-T::one(), T::zero())))
    }
}

/// A function on Ω̄ known in closed form: a single profile on the interval, or
/// a finite sum Σ_j f_j(r) e_{m_j}(θ) on the disk with e_m = e^{imθ}/√(2πR)
/// the L²(∂Ω)-orthonormal boundary harmonics.
#[derive(Clone)]
pub struct CatalogFunction<T: Real> {
    name: String,
    geom: BoundaryGeometry<T>,
    parts: BTreeMap<usize, Profile<T>>,
}

impl<T: Real> fmt::Debug for CatalogFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CatalogFunction")
            .field("name", &self.name)
            .field("geom", &self.geom)
            .field("modes", &self.parts.keys().collect::<Vec<_>>())
            .finish()
    }
}

impl<T: Real> CatalogFunction<T> {
    pub fn on_interval(name: impl Into<String>, geom: &BoundaryGeometry<T>, profile: Profile<T>) -> Result<Self> {
        if !geom.is_interval() {
            return Err(Error::InvalidGeometry("expected an interval".into()));
        }
        let mut parts = BTreeMap::new();
        parts.insert(0, profile);
        Ok(Self { name: name.into(), geom: geom.clone(), parts })
    }

    /// `parts` pairs a coordinate index (mode ordering of the boundary module)
    /// with its radial profile. Profiles must vanish like r^{|m|} at the origin.
    pub fn on_disk(
        name: impl Into<String>,
        geom: &BoundaryGeometry<T>,
        parts: impl IntoIterator<Item = (usize, Profile<T>)>,
    ) -> Result<Self> {
        if geom.is_interval() {
            return Err(Error::InvalidGeometry("expected a disk".into()));
        }
        let mut map: BTreeMap<usize, Profile<T>> = BTreeMap::new();
        for (j, p) in parts {
            if j >= geom.dim() {
                return Err(Error::DimensionMismatch { expected: geom.dim(), got: j + 1 });
            }
            let merged = match map.remove(&j) {
                Some(q) => q.plus(&p),
                None => p,
            };
            map.insert(j, merged);
        }
        Ok(Self { name: name.into(), geom: geom.clone(), parts: map })
    }

    pub fn zero(geom: &BoundaryGeometry<T>) -> Self {
        Self { name: "zero".into(), geom: geom.clone(), parts: BTreeMap::new() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn geom(&self) -> &BoundaryGeometry<T> {
        &self.geom
    }

    pub fn parts(&self) -> impl Iterator<Item = (usize, &Profile<T>)> {
        self.parts.iter().map(|(j, p)| (*j, p))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.geom != other.geom {
            return Err(Error::InvalidGeometry("functions live on different geometries".into()));
        }
        Ok(())
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut parts = self.parts.clone();
        for (j, p) in &other.parts {
            let neg = p.scaled(Cplx::new(-T::one(), T::zero()));
            let merged = match parts.remove(j) {
                Some(q) => q.plus(&neg),
                None => neg,
            };
            parts.insert(*j, merged);
        }
        Ok(Self { name: format!("{} - {}", self.name, other.name), geom: self.geom.clone(), parts })
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.minus(&other.scaled(Cplx::new(-T::one(), T::zero())))
            .map(|f| f.with_name(format!("{} + {}", self.name, other.name)))
    }

    pub fn scaled(&self, c: Cplx<T>) -> Self {
        Self {
            name: self.name.clone(),
            geom: self.geom.clone(),
            parts: self.parts.iter().map(|(j, p)| (*j, p.scaled(c))).collect(),
        }
    }

    /// Raw L² coordinates of the trace γψ and of the outward normal derivative νψ.
    pub fn trace_data(&self) -> (CVector<T>, CVector<T>) {
        let d = self.geom.dim();
        let mut g = CVector::zeros(d);
        let mut n = CVector::zeros(d);
        match self.geom {
            BoundaryGeometry::Interval { a, b } => {
                if let Some(p) = self.parts.get(&0) {
                    g[0] = (p.value)(a);
                    g[1] = (p.value)(b);
                    // outward normal is −d/dx at a
                    n[0] = -(p.deriv)(a);
                    n[1] = (p.deriv)(b);
                }
            }
            BoundaryGeometry::Disk { radius, .. } => {
                for (&j, p) in &self.parts {
                    g[j] = (p.value)(radius);
                    n[j] = (p.deriv)(radius);
                }
            }
        }
        (g, n)
    }

    /// Pointwise value on the interval.
    pub fn eval_interval(&self, x: T) -> Cplx<T> {
        self.parts.get(&0).map_or(Cplx::new(T::zero(), T::zero()), |p| (p.value)(x))
    }

    /// Pointwise value on the disk at polar coordinates (r, θ).
    pub fn eval_disk(&self, r: T, theta: T) -> Cplx<T> {
        let BoundaryGeometry::Disk { radius, .. } = self.geom else {
            return Cplx::new(T::zero(), T::zero());
        };
        let norm = (T::two_pi() * radius).sqrt();
        self.parts.iter().fold(Cplx::new(T::zero(), T::zero()), |acc, (&j, p)| {
            let m: T = lit(self.geom.mode(j) as f64);
            let phase = Cplx::new((m * theta).cos(), (m * theta).sin());
            acc + (p.value)(r) * phase.unscale(norm)
        })
    }

    fn minus_laplacian_part(&self, j: usize, p: &Profile<T>, x: T) -> Cplx<T> {
        match self.geom {
            BoundaryGeometry::Interval { .. } => -(p.second)(x),
            BoundaryGeometry::Disk { .. } => {
                let m: T = lit(self.geom.mode(j) as f64);
                -((p.second)(x) + (p.deriv)(x).unscale(x) - (p.value)(x).scale(m * m / (x * x)))
            }
        }
    }

    /// Σ over shared modes of ∫ conj(f_j) h_j with the domain measure.
    fn mode_integral(
        &self,
        other: &Self,
        integrand: impl Fn(usize, &Profile<T>, &Profile<T>, T) -> Cplx<T>,
    ) -> Result<Cplx<T>> {
        self.check_same(other)?;
        let mut acc = Cplx::new(T::zero(), T::zero());
        match self.geom {
            BoundaryGeometry::Interval { a, b } => {
                if let (Some(p), Some(q)) = (self.parts.get(&0), other.parts.get(&0)) {
                    acc = simpson(a, b, SIMPSON_INTERVALS, |x| integrand(0, p, q, x));
                }
            }
            BoundaryGeometry::Disk { radius, .. } => {
                // angular integral is exact: ∫ conj(e_m) e_m' dθ · R = δ_mm' / R · (r dr measure)
                for (&j, p) in &self.parts {
                    if let Some(q) = other.parts.get(&j) {
                        let v = gauss_legendre_on(T::zero(), radius, GAUSS_LEGENDRE_NODES, |r| {
                            integrand(j, p, q, r).scale(r)
                        });
                        acc += v.unscale(radius);
                    }
                }
            }
        }
        if !(acc.re.is_finite() && acc.im.is_finite()) {
            return Err(Error::Quadrature(format!("non-finite integral for `{}`", self.name)));
        }
        Ok(acc)
    }

    /// ⟨φ|ψ⟩_{L²(Ω)} by quadrature.
    pub fn inner(&self, other: &Self) -> Result<Cplx<T>> {
        self.mode_integral(other, |_, p, q, x| (p.value)(x).conj() * (q.value)(x))
    }

    /// ⟨φ|T*ψ⟩ = ⟨φ| −Δψ⟩ by quadrature.
    pub fn inner_tstar(&self, other: &Self) -> Result<Cplx<T>> {
        self.mode_integral(other, |j, p, q, x| (p.value)(x).conj() * other.minus_laplacian_part(j, q, x))
    }

    pub fn norm_sq(&self) -> Result<T> {
        Ok(self.inner(self)?.re)
    }

    /// ‖∇ψ‖²_{L²(Ω)} by quadrature.
    pub fn gradient_energy(&self) -> Result<T> {
        let geom = self.geom.clone();
        let v = self.mode_integral(self, |j, p, _, x| {
            let d = (p.deriv)(x).norm_sqr();
            match geom {
                BoundaryGeometry::Interval { .. } => Cplx::new(d, T::zero()),
                BoundaryGeometry::Disk { .. } => {
                    let m: T = lit(geom.mode(j) as f64);
                    Cplx::new(d + (p.value)(x).norm_sqr() * m * m / (x * x), T::zero())
                }
            }
        })?;
        Ok(v.re)
    }

    /// Maximum of |−Δψ − λψ| over the quadrature nodes; zero for exact eigenfunctions.
    pub fn eigen_defect(&self, lambda: T) -> T {
        let mut worst = T::zero();
        let mut probe = |j: usize, p: &Profile<T>, x: T| {
            let r = self.minus_laplacian_part(j, p, x) - (p.value)(x).scale(lambda);
            if crate::scalar::cabs(r) > worst {
                worst = crate::scalar::cabs(r);
            }
        };
        match self.geom {
            BoundaryGeometry::Interval { a, b } => {
                if let Some(p) = self.parts.get(&0) {
                    for i in 0..=64 {
                        probe(0, p, a + (b - a) * lit::<T>(i as f64 / 64.0));
                    }
                }
            }
            BoundaryGeometry::Disk { radius, .. } => {
                for (&j, p) in &self.parts {
                    for i in 1..=64 {
                        probe(j, p, radius * lit::<T>(i as f64 / 64.0));
                    }
                }
            }
        }
        worst
    }
}

pub(crate) fn check_trace_dims<T: Real>(geom: &BoundaryGeometry<T>, g: &CVector<T>, n: &CVector<T>) -> Result<()> {
    check_dim(geom.dim(), g.len())?;
    check_dim(geom.dim(), n.len())
}
