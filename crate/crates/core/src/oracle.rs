//! P1 finite-element oracle on the interval.
//!
//! Discretizes the form ‖ψ'‖² − ⟨g|DtN g⟩ + ⟨ĝ|K_U ĝ⟩ + ρ‖P_U ĝ‖², where
//! g = (ψ(a), ψ(b)). ‖ψ'‖² = ‖ψ_D'‖² + ⟨g|DtN g⟩ because the harmonic part
//! of ψ is affine, so this is 𝔱_U with the constraint γ̂ψ ∈ Ran Q_U replaced by
//! a penalty. It shares no code with the secular solver beyond K_U.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::boundary::{BoundaryGeometry, BoundaryUnitary, DEFAULT_TOL_ONE};
use crate::cayley::k_u;
use crate::domain::{dtn, CatalogFunction};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{cabs, lit, to_f64, CMatrix, CVector, Cplx, Real};
use crate::spectral::SpectrumResult;

pub const PENALTY: f64 = 1e8;
pub const MIN_ELEMENTS: usize = 64;
const BISECTION_REL: f64 = 1e-14;
const MAX_BISECTION_STEPS: usize = 300;

/// Assembled pencil (A + E) v = λ B v on a uniform mesh with n elements.
///
/// A and B are the tridiagonal stiffness and consistent mass matrices; E is
/// the 2×2 Hermitian boundary block acting on the end nodes 0 and n.
#[derive(Clone, Debug)]
pub struct FemProblem<T: Real> {
    a: T,
    n: usize,
    h: T,
    boundary: CMatrix<T>,
}

impl<T: Real> FemProblem<T> {
    pub fn new(geom: &BoundaryGeometry<T>, u: &BoundaryUnitary<T>, n: usize) -> Result<Self> {
        let BoundaryGeometry::Interval { a, b } = *geom else {
            return Err(Error::InvalidGeometry("the finite-element oracle is only available on the interval".into()));
        };
        if n < MIN_ELEMENTS {
            return Err(Error::InvalidParameter(format!("need at least {MIN_ELEMENTS} elements, got {n}")));
        }
        crate::boundary::check_dim(2, u.dim())?;
        let defect = linalg::unitarity_defect(u.matrix());
        if !(defect <= crate::boundary::unitary_tol::<T>()) {
            return Err(Error::NotUnitary { defect: to_f64(defect) });
        }
        let form = k_u(u, lit(DEFAULT_TOL_ONE))?;
        let hat = form.k_full() + &form.p * Cplx::new(lit::<T>(PENALTY), T::zero());
        let s = geom.hat_scaling();
        let scaled = DMatrix::from_fn(2, 2, |i, j| hat[(i, j)].scale(s[i] * s[j]));
        let boundary = scaled - dtn(geom);
        Ok(Self { a, n, h: (b - a) / lit(n as f64), boundary })
    }

    pub fn elements(&self) -> usize {
        self.n
    }

    pub fn mesh_width(&self) -> T {
        self.h
    }

    pub fn nodes(&self) -> Vec<T> {
        (0..=self.n).map(|i| self.a + self.h * lit(i as f64)).collect()
    }

    pub fn boundary_block(&self) -> &CMatrix<T> {
        &self.boundary
    }

    /// Stiffness ∫ψ'φ' as (diagonal, off-diagonal).
    pub fn stiffness(&self) -> (Vec<T>, T) {
        let k = self.h.recip();
        let mut d = vec![k + k; self.n + 1];
        d[0] = k;
        d[self.n] = k;
        (d, -k)
    }

    /// Consistent mass ∫ψφ as (diagonal, off-diagonal).
    pub fn mass(&self) -> (Vec<T>, T) {
        let third = self.h / lit(3.0);
        let mut d = vec![third + third; self.n + 1];
        d[0] = third;
        d[self.n] = third;
        (d, self.h / lit(6.0))
    }

    /// Number of eigenvalues of the pencil strictly below σ (Sylvester inertia
    /// of A + E − σB, with a Schur complement onto the two end nodes).
    pub fn count_below(&self, sigma: T) -> usize {
        let h = self.h;
        let two = lit::<T>(2.0);
        let t = two / h - sigma * two * h / lit(3.0);
        let e = -h.recip() - sigma * h / lit(6.0);
        let tiny = T::default_epsilon() * (t.abs() + e.abs());
        // LDLᵀ of the constant tridiagonal interior block, m = n − 1 nodes
        let m = self.n - 1;
        let mut negative = 0usize;
        let mut d = t;
        let mut log_prod = T::zero();
        let mut sign_prod = T::one();
        for i in 0..m {
            if i > 0 {
                let l = e / d;
                log_prod += l.abs().ln();
                // the corner of the inverse is Π(−l_i) / d_m
                if l > T::zero() {
                    sign_prod = -sign_prod;
                }
                d = t - e * l;
            }
            if d.abs() < tiny {
                d = tiny;
            }
            if d < T::zero() {
                negative += 1;
            }
        }
        // the interior block is persymmetric, so its inverse has equal corners
        let t11 = d.recip();
        let t1m = if m == 1 { t11 } else { sign_prod * (log_prod - d.abs().ln()).exp() * d.signum() };
        let corner = h.recip() - sigma * h / lit(3.0);
        let e2 = e * e;
        let p = self.boundary[(0, 0)].re + corner - e2 * t11;
        let r = self.boundary[(1, 1)].re + corner - e2 * t11;
        let q = self.boundary[(0, 1)] - Cplx::new(e2 * t1m, T::zero());
        let mean = (p + r) / two;
        let half = (p - r) / two;
        let rad = (half * half + q.norm_sqr()).sqrt();
        negative + usize::from(mean - rad < T::zero()) + usize::from(mean + rad < T::zero())
    }

    /// The `k`-th eigenvalue (0-based) by bisection on [`Self::count_below`].
    pub fn eigenvalue(&self, k: usize) -> Result<T> {
        if k > self.n {
            return Err(Error::InvalidParameter(format!("index {k} exceeds {} degrees of freedom", self.n + 1)));
        }
        let mut lo = -T::one();
        let mut steps = 0;
        while self.count_below(lo) > k {
            lo *= lit(4.0);
            steps += 1;
            if steps > 200 || !lo.is_finite() {
                return Err(Error::Eigensolver("no lower bracket for FEM eigenvalue".into()));
            }
        }
        let mut hi = T::one();
        while self.count_below(hi) <= k {
            hi *= lit(4.0);
            steps += 1;
            if steps > 400 || !hi.is_finite() {
                return Err(Error::Eigensolver("no upper bracket for FEM eigenvalue".into()));
            }
        }
        for _ in 0..MAX_BISECTION_STEPS {
            let mid = (lo + hi) / lit(2.0);
            if hi - lo <= lit::<T>(BISECTION_REL) * T::one().max(mid.abs()) || mid == lo || mid == hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok((lo + hi) / lit(2.0))
    }

    /// Nodal interpolant of a closed-form function.
    pub fn interpolate(&self, f: &CatalogFunction<T>) -> CVector<T> {
        CVector::from_iterator(self.n + 1, self.nodes().into_iter().map(|x| f.eval_interval(x)))
    }

    /// v*(A + E)v / v*Bv.
    pub fn rayleigh_quotient(&self, v: &CVector<T>) -> Result<T> {
        crate::boundary::check_dim(self.n + 1, v.len())?;
        let (ad, ao) = self.stiffness();
        let (bd, bo) = self.mass();
        let mut num = T::zero();
        let mut den = T::zero();
        for i in 0..=self.n {
            num += ad[i] * v[i].norm_sqr();
            den += bd[i] * v[i].norm_sqr();
            if i < self.n {
                let cross = lit::<T>(2.0) * (v[i].conj() * v[i + 1]).re;
                num += ao * cross;
                den += bo * cross;
            }
        }
        let ends = [v[0], v[self.n]];
        for i in 0..2 {
            for j in 0..2 {
                num += (ends[i].conj() * self.boundary[(i, j)] * ends[j]).re;
            }
        }
        if !(den > T::zero()) {
            return Err(Error::InvalidParameter("zero vector in Rayleigh quotient".into()));
        }
        Ok(num / den)
    }

    fn dense(&self) -> (CMatrix<T>, CMatrix<T>) {
        let size = self.n + 1;
        let (ad, ao) = self.stiffness();
        let (bd, bo) = self.mass();
        let c = |x: T| Cplx::new(x, T::zero());
        let mut a = CMatrix::zeros(size, size);
        let mut b = CMatrix::zeros(size, size);
        for i in 0..size {
            a[(i, i)] = c(ad[i]);
            b[(i, i)] = c(bd[i]);
            if i + 1 < size {
                a[(i, i + 1)] = c(ao);
                a[(i + 1, i)] = c(ao);
                b[(i, i + 1)] = c(bo);
                b[(i + 1, i)] = c(bo);
            }
        }
        let ends = [0, self.n];
        for i in 0..2 {
            for j in 0..2 {
                a[(ends[i], ends[j])] += self.boundary[(i, j)];
            }
        }
        (a, b)
    }
}

fn check_count(n: usize, count: usize) -> Result<()> {
    if count > n {
        return Err(Error::InvalidParameter(format!("requested {count} eigenvalues from {n} elements")));
    }
    Ok(())
}

/// Lowest `count` eigenvalues of the P1 discretization with `n` elements.
pub fn fem_spectrum<T: Real>(geom: &BoundaryGeometry<T>, u: &BoundaryUnitary<T>, n: usize, count: usize) -> Result<Vec<T>> {
    let problem = FemProblem::new(geom, u, n)?;
    check_count(n, count)?;
    (0..count).map(|k| problem.eigenvalue(k)).collect()
}

/// Same as [`fem_spectrum`] through a dense Cholesky reduction and Hermitian
/// eigensolver. O(n³); for cross-checks on small meshes.
pub fn fem_spectrum_dense<T: Real>(geom: &BoundaryGeometry<T>, u: &BoundaryUnitary<T>, n: usize, count: usize) -> Result<Vec<T>> {
    let problem = FemProblem::new(geom, u, n)?;
    check_count(n, count)?;
    let (a, b) = problem.dense();
    let chol = b.cholesky().ok_or_else(|| Error::Eigensolver("mass matrix is not positive definite".into()))?;
    let l = chol.l();
    let linv = l
        .clone()
        .solve_lower_triangular(&linalg::identity::<T>(n + 1))
        .ok_or_else(|| Error::Eigensolver("singular Cholesky factor".into()))?;
    let reduced = &linv * a * linv.adjoint();
    let herm = (&reduced + reduced.adjoint()) * Cplx::new(lit::<T>(0.5), T::zero());
    let (eig, _) = linalg::hermitian_eigen(&herm);
    Ok(eig.into_iter().take(count).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub index: usize,
    pub secular: f64,
    pub fem: f64,
    pub abs_dev: f64,
    pub rel_dev: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub count: usize,
    pub rows: Vec<ComparisonRow>,
    pub pass: bool,
}

/// Tolerance max(1e−3, 5e−3·|λ|).
pub fn comparison_tolerance(lambda: f64) -> f64 {
    1e-3f64.max(5e-3 * lambda.abs())
}

/// Compares the first `count` eigenvalues (with multiplicity) of the secular
/// solver against the FEM values.
pub fn compare_spectra<T: Real>(secular: &SpectrumResult<T>, fem: &[T], count: usize) -> Result<ComparisonReport> {
    let s = secular.expanded();
    if s.len() < count || fem.len() < count {
        return Err(Error::InvalidParameter(format!(
            "count mismatch: {count} requested, secular has {}, FEM has {}",
            s.len(),
            fem.len()
        )));
    }
    let rows: Vec<ComparisonRow> = (0..count)
        .map(|i| {
            let (x, y) = (to_f64(s[i]), to_f64(fem[i]));
            let abs_dev = (x - y).abs();
            let tolerance = comparison_tolerance(x);
            ComparisonRow {
                index: i,
                secular: x,
                fem: y,
                abs_dev,
                rel_dev: abs_dev / x.abs().max(f64::MIN_POSITIVE),
                tolerance,
                pass: abs_dev <= tolerance,
            }
        })
        .collect();
    let pass = rows.iter().all(|r| r.pass);
    Ok(ComparisonReport { count, rows, pass })
}

/// Largest entry of |E − E†| for the boundary block; zero up to rounding.
pub fn boundary_hermitian_defect<T: Real>(p: &FemProblem<T>) -> T {
    let e = p.boundary_block();
    let mut worst = T::zero();
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max(cabs(e[(i, j)] - e[(j, i)].conj()));
        }
    }
    worst
}
