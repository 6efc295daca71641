//! Boundary geometries, the Sobolev scale Λ_t and boundary unitaries.
//!
//! Boundary vectors live in H^{-1/2}(∂Ω) truncated to finitely many boundary
//! harmonics. Coordinates are taken in the Λ-orthonormal basis
//! ê_j = (1+λ_j)^{1/4} e_j, where e_j are the L²(∂Ω)-orthonormal harmonics and
//! λ_j the Laplace–Beltrami eigenvalues, so that
//! ‖u‖_{H^{-1/2}} = ‖Λ_{-1/2} u‖_{L²} is the plain Euclidean norm of the
//! coordinates. "Hat" coordinates refer to this basis; "raw" coordinates to
//! the L² basis e_j. A raw vector g converts by ĝ_j = (1+λ_j)^{-1/4} g_j.
//!
//! Disk modes are ordered m = 0, +1, −1, +2, −2, …, ±N.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{cplx, lit, to_f64, CMatrix, CVector, Cplx, Real};

/// Default distance below which an eigenvalue of U counts as 1.
pub const DEFAULT_TOL_ONE: f64 = 1e-9;
/// Accepted ‖U†U − I‖ for a boundary unitary.
pub const UNITARY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum BoundaryGeometry<T: Real> {
    /// [a, b]; the boundary is the two endpoints.
    Interval { a: T, b: T },
    /// Disk of radius `radius`, boundary harmonics e^{imθ} with |m| ≤ `cutoff`.
    Disk { radius: T, cutoff: usize },
}

impl<T: Real> BoundaryGeometry<T> {
    pub fn interval(a: T, b: T) -> Result<Self> {
        if !(a < b) {
            return Err(Error::InvalidGeometry(format!("interval needs a < b, got [{a}, {b}]")));
        }
        Ok(Self::Interval { a, b })
    }

    pub fn disk(radius: T, cutoff: usize) -> Result<Self> {
        if !(radius > T::zero()) {
            return Err(Error::InvalidGeometry(format!("disk radius must be positive, got {radius}")));
        }
        Ok(Self::Disk { radius, cutoff })
    }

    /// Dimension d of the truncated boundary space.
    pub fn dim(&self) -> usize {
        match self {
            Self::Interval { .. } => 2,
            Self::Disk { cutoff, .. } => 2 * cutoff + 1,
        }
    }

    pub fn is_interval(&self) -> bool {
        matches!(self, Self::Interval { .. })
    }

    /// Length b − a of an interval, 2πR for the disk.
    pub fn boundary_scale(&self) -> T {
        match *self {
            Self::Interval { a, b } => b - a,
            Self::Disk { radius, .. } => T::two_pi() * radius,
        }
    }

    /// Angular mode number carried by coordinate `j` (0 for the interval).
    pub fn mode(&self, j: usize) -> i64 {
        match self {
            Self::Interval { .. } => 0,
            Self::Disk { .. } => mode_of_index(j),
        }
    }

    /// Laplace–Beltrami eigenvalues of ∂Ω in coordinate order.
    pub fn lb_eigenvalues(&self) -> Vec<T> {
        match *self {
            // zero-dimensional boundary
            Self::Interval { .. } => vec![T::zero(); 2],
            Self::Disk { radius, .. } => (0..self.dim())
                .map(|j| {
                    let m: T = lit(mode_of_index(j) as f64);
                    m * m / (radius * radius)
                })
                .collect(),
        }
    }

    /// Diagonal of Λ_t = (I − Δ_LB)^{t/2}: component j is (1+λ_j)^{t/2}.
    pub fn sobolev_weights(&self, t: T) -> Vec<T> {
        let half_t = t * lit(0.5);
        self.lb_eigenvalues()
            .into_iter()
            .map(|l| (T::one() + l).powf(half_t))
            .collect()
    }

    /// S = diag((1+λ_j)^{-1/4}), the raw → hat change of coordinates.
    pub fn hat_scaling(&self) -> Vec<T> {
        self.sobolev_weights(lit(-0.5))
    }

    /// Converts a raw L²-coefficient vector to hat coordinates.
    pub fn raw_to_hat(&self, raw: &CVector<T>) -> Result<CVector<T>> {
        check_dim(self.dim(), raw.len())?;
        let s = self.hat_scaling();
        Ok(CVector::from_fn(raw.len(), |j, _| raw[j].scale(s[j])))
    }

    pub fn hat_to_raw(&self, hat: &CVector<T>) -> Result<CVector<T>> {
        check_dim(self.dim(), hat.len())?;
        let s = self.hat_scaling();
        Ok(CVector::from_fn(hat.len(), |j, _| hat[j].unscale(s[j])))
    }

    /// Converts a raw-coordinate operator A to S A S^{-1}.
    pub fn operator_raw_to_hat(&self, a: &CMatrix<T>) -> Result<CMatrix<T>> {
        check_dim(self.dim(), a.nrows())?;
        check_dim(self.dim(), a.ncols())?;
        let s = self.hat_scaling();
        Ok(DMatrix::from_fn(a.nrows(), a.ncols(), |r, c| a[(r, c)].scale(s[r] / s[c])))
    }
}

/// `UNITARY_TOL`, widened to a few hundred ulps for single precision.
pub fn unitary_tol<T: Real>() -> T {
    let floor = T::default_epsilon() * lit(1e3);
    let tol: T = lit(UNITARY_TOL);
    if floor > tol {
        floor
    } else {
        tol
    }
}

/// Disk coordinate index → mode number (0, +1, −1, +2, −2, …).
pub fn mode_of_index(j: usize) -> i64 {
    if j == 0 {
        0
    } else if j % 2 == 1 {
        j.div_ceil(2) as i64
    } else {
        -((j / 2) as i64)
    }
}

pub fn index_of_mode(m: i64) -> usize {
    if m == 0 {
        0
    } else if m > 0 {
        (2 * m - 1) as usize
    } else {
        (-2 * m) as usize
    }
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// Element of the truncated H^{-1/2}(∂Ω), hat coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryVector<T: Real>(pub CVector<T>);

impl<T: Real> BoundaryVector<T> {
    pub fn new(coords: CVector<T>) -> Self {
        Self(coords)
    }

    pub fn zeros(d: usize) -> Self {
        Self(CVector::zeros(d))
    }

    pub fn basis(d: usize, j: usize) -> Self {
        let mut v = CVector::zeros(d);
        v[j] = cplx(T::one(), T::zero());
        Self(v)
    }

    pub fn from_slice(c: &[Cplx<T>]) -> Self {
        Self(CVector::from_column_slice(c))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &CVector<T> {
        &self.0
    }

    pub fn norm(&self) -> T {
        linalg::vec_norm(&self.0)
    }
}

/// ⟨u|v⟩_{H^{-1/2}}, antilinear in the first slot.
pub fn h_inner<T: Real>(u: &BoundaryVector<T>, v: &BoundaryVector<T>) -> Result<Cplx<T>> {
    check_dim(u.dim(), v.dim())?;
    Ok(u.0.dotc(&v.0))
}

/// Duality pairing ⟨u, v⟩_{s,−s} = ⟨Λ_s u | Λ_{−s} v⟩_{L²} for raw L² coefficient vectors.
pub fn pairing<T: Real>(geom: &BoundaryGeometry<T>, s: T, u: &CVector<T>, v: &CVector<T>) -> Result<Cplx<T>> {
    check_dim(geom.dim(), u.len())?;
    check_dim(geom.dim(), v.len())?;
    let up = geom.sobolev_weights(s);
    let down = geom.sobolev_weights(-s);
    Ok((0..u.len()).fold(Cplx::new(T::zero(), T::zero()), |acc, j| {
        acc + u[j].conj().scale(up[j]) * v[j].scale(down[j])
    }))
}

/// Unitary operator on the truncated boundary space (Euclidean in hat coordinates).
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryUnitary<T: Real>(CMatrix<T>);

impl<T: Real> BoundaryUnitary<T> {
    /// Validates unitarity at [`unitary_tol`].
    pub fn new(m: CMatrix<T>) -> Result<Self> {
        Self::with_tolerance(m, unitary_tol())
    }

    pub fn with_tolerance(m: CMatrix<T>, tol: T) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch { expected: m.nrows(), got: m.ncols() });
        }
        let defect = linalg::unitarity_defect(&m);
        if !(defect <= tol) {
            return Err(Error::NotUnitary { defect: to_f64(defect) });
        }
        Ok(Self(m))
    }

    pub fn identity(d: usize) -> Self {
        Self(linalg::identity(d))
    }

    pub fn minus_identity(d: usize) -> Self {
        Self(-linalg::identity::<T>(d))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.0
    }

    pub fn apply(&self, v: &BoundaryVector<T>) -> Result<BoundaryVector<T>> {
        check_dim(self.dim(), v.dim())?;
        Ok(BoundaryVector(&self.0 * &v.0))
    }

    pub fn eigenvalues(&self) -> Result<Vec<Cplx<T>>> {
        linalg::eigenvalues(&self.0)
    }
}

/// Spectral projectors of U on {1} and on its complement.
#[derive(Clone, Debug)]
pub struct SpectralProjectors<T: Real> {
    /// P_U: eigenvalue-1 (idle) subspace.
    pub p: CMatrix<T>,
    /// Q_U = I − P_U.
    pub q: CMatrix<T>,
    /// Orthonormal basis of Ran P_U.
    pub idle_basis: CMatrix<T>,
    /// Orthonormal basis of Ran Q_U.
    pub active_basis: CMatrix<T>,
}

/// Splits the boundary space into the eigenvalue-1 subspace of U and its
/// orthogonal complement. For a normal matrix the singular values of U − I
/// are exactly |w − 1| over the eigenvalues w, so both subspaces come from one
/// SVD of U − I.
pub fn spectral_projectors<T: Real>(u: &BoundaryUnitary<T>, tol_one: T) -> Result<SpectralProjectors<T>> {
    let d = u.dim();
    let shifted = u.matrix() - linalg::identity::<T>(d);
    let svd = linalg::full_svd(&shifted)?;
    let mut idle = Vec::new();
    let mut active = Vec::new();
    for (i, &s) in svd.sigma.iter().enumerate() {
        if s <= tol_one {
            idle.push(i);
        } else {
            active.push(i);
        }
        let ratio = to_f64(s) / to_f64(tol_one);
        if (0.1..10.0).contains(&ratio) {
            log::warn!("eigenvalue of U at distance {:e} from 1 is close to tol_one = {:e}", to_f64(s), to_f64(tol_one));
        }
    }
    let idle_basis = DMatrix::from_fn(d, idle.len(), |r, c| svd.v[(r, idle[c])]);
    let active_basis = DMatrix::from_fn(d, active.len(), |r, c| svd.v[(r, active[c])]);
    let p = linalg::projector(&idle_basis);
    let q = linalg::identity::<T>(d) - &p;
    Ok(SpectralProjectors { p, q, idle_basis, active_basis })
}

/// Haar-distributed random unitary, deterministic in `seed`.
pub fn random_unitary<T: Real>(d: usize, seed: u64) -> Result<BoundaryUnitary<T>> {
    if d == 0 {
        return Err(Error::InvalidParameter("random_unitary needs d ≥ 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = DMatrix::from_fn(d, d, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        cplx(lit::<T>(re), lit::<T>(im))
    });
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    // fix column phases by the phase of diag(R) so the distribution is Haar
    for j in 0..d {
        let rjj = r[(j, j)];
        let n = crate::scalar::cabs(rjj);
        if n > T::zero() {
            let phase = rjj.unscale(n);
            let mut col = q.column_mut(j);
            col *= phase;
        }
    }
    // one Gram–Schmidt polish keeps the defect at rounding level for larger d
    let polished = polish_unitary(q);
    BoundaryUnitary::new(polished)
}

/// Nearest unitary via the polar factor W V† of the SVD.
pub fn polish_unitary<T: Real>(m: CMatrix<T>) -> CMatrix<T> {
    match m.clone().try_svd(true, true, T::default_epsilon(), 0) {
        Some(svd) => match (svd.u, svd.v_t) {
            (Some(w), Some(vt)) => w * vt,
            _ => m,
        },
        None => m,
    }
}
