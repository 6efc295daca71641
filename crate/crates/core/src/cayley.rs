//! Cayley transforms and the two parametrizations of self-adjoint extensions:
//! boundary unitaries U and pairs (X, ΛL) of a closed subspace with a
//! self-adjoint boundary operator.
//!
//! In hat coordinates "ΛL self-adjoint" is plain Hermitian-ness, so the pair
//! is stored as (Π_X, M = ΛL). L itself is Λ^{-1}M and only exposed as metadata.

use nalgebra::DMatrix;

use crate::boundary::{spectral_projectors, BoundaryGeometry, BoundaryUnitary};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{lit, to_f64, CMatrix, Cplx, Real};

/// C(M) = (M − i)(M + i)^{-1}. Never has eigenvalue 1.
pub fn cayley<T: Real>(m: &CMatrix<T>) -> Result<CMatrix<T>> {
    let r = m.nrows();
    if r != m.ncols() {
        return Err(Error::DimensionMismatch { expected: r, got: m.ncols() });
    }
    let i = Cplx::new(T::zero(), T::one());
    let id = linalg::identity::<T>(r);
    let plus = m + &id * i;
    let minus = m - &id * i;
    // (M − i)(M + i)^{-1} = (M + i)^{-1}(M − i) since both are functions of M;
    // solve (M + i) X = (M − i)
    let lu = plus.lu();
    lu.solve(&minus).ok_or_else(|| Error::Eigensolver("M + i is singular".into()))
}

/// C^{-1}(V) = i(I + V)(I − V)^{-1}.
pub fn inverse_cayley<T: Real>(v: &CMatrix<T>, tol_one: T) -> Result<CMatrix<T>> {
    let r = v.nrows();
    if r != v.ncols() {
        return Err(Error::DimensionMismatch { expected: r, got: v.ncols() });
    }
    if r == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    let id = linalg::identity::<T>(r);
    let shifted = &id - v;
    let smin = linalg::singular_values(&shifted)?.last().copied().unwrap_or(T::zero());
    if smin <= tol_one {
        return Err(Error::EigenvalueOne { distance: to_f64(smin), tol: to_f64(tol_one) });
    }
    let i = Cplx::new(T::zero(), T::one());
    let numer = (&id + v) * i;
    // (I − V)^{-1} commutes with I + V
    let lu = shifted.lu();
    let m = lu.solve(&numer).ok_or_else(|| Error::Eigensolver("I − V is singular".into()))?;
    Ok(hermitize(m))
}

fn hermitize<T: Real>(m: CMatrix<T>) -> CMatrix<T> {
    (&m + m.adjoint()).scale(lit(0.5))
}

/// The pair (X, ΛL): a subspace X with orthonormal basis and a Hermitian M on it.
#[derive(Clone, Debug, PartialEq)]
pub struct SelfAdjointParam<T: Real> {
    basis: CMatrix<T>,
    projector: CMatrix<T>,
    m: CMatrix<T>,
}

impl<T: Real> SelfAdjointParam<T> {
    /// `basis` must have orthonormal columns (d × r), `m` must be r × r Hermitian.
    pub fn new(basis: CMatrix<T>, m: CMatrix<T>) -> Result<Self> {
        let r = basis.ncols();
        if m.nrows() != r || m.ncols() != r {
            return Err(Error::DimensionMismatch { expected: r, got: m.nrows().max(m.ncols()) });
        }
        let ortho = linalg::unitarity_defect(&basis);
        if r > 0 && !(ortho <= lit(1e-10)) {
            return Err(Error::NotOrthonormal { defect: to_f64(ortho) });
        }
        let herm = linalg::hermitian_defect(&m);
        if !(herm <= lit::<T>(1e-12) * (T::one() + linalg::frobenius(&m))) {
            return Err(Error::NotHermitian { defect: to_f64(herm) });
        }
        let projector = linalg::projector(&basis);
        Ok(Self { basis, projector, m: hermitize(m) })
    }

    /// Orthonormalizes the columns of `span` first; `m` is given in the
    /// resulting orthonormal basis, so this is mainly useful with M = 0 or for
    /// spans that are already orthonormal up to rounding.
    pub fn from_span(span: &CMatrix<T>, m: CMatrix<T>) -> Result<Self> {
        let basis = linalg::range_basis(span, lit(1e-12))?;
        Self::new(basis, m)
    }

    /// From raw L² boundary coordinates: X spanned by the columns of `x_raw`
    /// (full column rank) and the condition x_raw†(ν − DtN γ)ψ = L c for
    /// γψ = x_raw c. With S x_raw = B R this is M = R^{-†} L R^{-1} on B.
    pub fn from_raw(geom: &BoundaryGeometry<T>, x_raw: &CMatrix<T>, l: &CMatrix<T>) -> Result<Self> {
        crate::boundary::check_dim(geom.dim(), x_raw.nrows())?;
        let r = x_raw.ncols();
        if l.nrows() != r || l.ncols() != r {
            return Err(Error::DimensionMismatch { expected: r, got: l.nrows().max(l.ncols()) });
        }
        if r == 0 {
            return Ok(Self::dirichlet(geom.dim()));
        }
        let herm = linalg::hermitian_defect(l);
        if !(herm <= lit::<T>(1e-12) * (T::one() + linalg::frobenius(l))) {
            return Err(Error::NotHermitian { defect: to_f64(herm) });
        }
        let s = geom.hat_scaling();
        let scaled = DMatrix::from_fn(x_raw.nrows(), r, |i, j| x_raw[(i, j)].scale(s[i]));
        let rank = linalg::numerical_rank(&scaled, lit(1e-12))?;
        if rank != r {
            return Err(Error::RankDeficient { expected: r, got: rank });
        }
        let qr = scaled.qr();
        let (b, rr) = (qr.q(), qr.r());
        let rinv = rr
            .try_inverse()
            .ok_or(Error::RankDeficient { expected: r, got: rank })?;
        let m = rinv.adjoint() * l * &rinv;
        Self::new(b, hermitize(m))
    }

    /// X = {0}: the Dirichlet condition.
    pub fn dirichlet(d: usize) -> Self {
        Self { basis: DMatrix::zeros(d, 0), projector: DMatrix::zeros(d, d), m: DMatrix::zeros(0, 0) }
    }

    /// X = whole space with the given M.
    pub fn full(m: CMatrix<T>) -> Result<Self> {
        Self::new(linalg::identity(m.nrows()), m)
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn rank(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &CMatrix<T> {
        &self.basis
    }

    pub fn projector(&self) -> &CMatrix<T> {
        &self.projector
    }

    /// ΛL in the stored basis of X.
    pub fn m(&self) -> &CMatrix<T> {
        &self.m
    }

    /// L = Λ^{-1}M as a d × d operator in hat coordinates (zero on X^⊥).
    pub fn l_operator(&self, geom: &BoundaryGeometry<T>) -> Result<CMatrix<T>> {
        crate::boundary::check_dim(geom.dim(), self.dim())?;
        let inv = geom.sobolev_weights(-T::one());
        let full = &self.basis * &self.m * self.basis.adjoint();
        Ok(DMatrix::from_fn(full.nrows(), full.ncols(), |r, c| full[(r, c)].scale(inv[r])))
    }
}

/// U = C(ΛL) ⊕ I_{X^⊥}.
pub fn param_to_unitary<T: Real>(p: &SelfAdjointParam<T>) -> Result<BoundaryUnitary<T>> {
    let d = p.dim();
    let v = cayley(&p.m)?;
    let u = &p.basis * v * p.basis.adjoint() + (linalg::identity::<T>(d) - &p.projector);
    BoundaryUnitary::with_tolerance(u, lit(1e-10))
}

/// X = Ran Q_U, ΛL = C^{-1}(U restricted to X).
pub fn unitary_to_param<T: Real>(u: &BoundaryUnitary<T>, tol_one: T) -> Result<SelfAdjointParam<T>> {
    let sp = spectral_projectors(u, tol_one)?;
    let b = sp.active_basis;
    let v = b.adjoint() * u.matrix() * &b;
    let m = inverse_cayley(&v, tol_one)?;
    let projector = linalg::projector(&b);
    Ok(SelfAdjointParam { basis: b, projector, m })
}

/// Boundary Hamiltonian of the quadratic form 𝔱_U.
#[derive(Clone, Debug)]
pub struct FormOperator<T: Real> {
    /// Q_U, the projector onto Ran(I − U).
    pub q: CMatrix<T>,
    /// P_U = I − Q_U.
    pub p: CMatrix<T>,
    /// Orthonormal basis of Ran Q_U.
    pub basis: CMatrix<T>,
    /// K_U in `basis`.
    pub k: CMatrix<T>,
}

impl<T: Real> FormOperator<T> {
    /// K_U as a d × d matrix, zero on Ran P_U.
    pub fn k_full(&self) -> CMatrix<T> {
        &self.basis * &self.k * self.basis.adjoint()
    }
}

/// K_U defined by K_U(I − U)g = −i Q_U(I + U)g on D(K_U) = Ran(I − U).
///
/// On Ran Q_U this is K_U = −C^{-1}(U restricted to Ran Q_U), so that
/// K_U γψ = −Q_U μψ for every ψ ∈ D(T_U).
pub fn k_u<T: Real>(u: &BoundaryUnitary<T>, tol_one: T) -> Result<FormOperator<T>> {
    let sp = spectral_projectors(u, tol_one)?;
    let b = sp.active_basis;
    let v = b.adjoint() * u.matrix() * &b;
    let k = -inverse_cayley(&v, tol_one)?;
    Ok(FormOperator { q: sp.q, p: sp.p, basis: b, k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::random_unitary;
    use crate::scalar::cplx;
    use crate::scalar::CVector;

    const TOL_ONE: f64 = 1e-9;

    fn c(re: f64, im: f64) -> Cplx<f64> {
        cplx(re, im)
    }

    fn diag(v: &[Cplx<f64>]) -> CMatrix<f64> {
        DMatrix::from_diagonal(&CVector::from_column_slice(v))
    }

    #[test]
    fn cayley_examples() {
        let z = DMatrix::zeros(3, 3);
        assert!(linalg::frobenius(&(cayley(&z).unwrap() + linalg::identity::<f64>(3))) < 1e-15);
        let one = DMatrix::from_element(1, 1, c(1.0, 0.0));
        assert!((cayley(&one).unwrap()[(0, 0)] - c(0.0, -1.0)).norm() < 1e-15);

        let swap = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let v = cayley(&swap).unwrap();
        let s = 0.5f64.sqrt();
        let plus = CVector::from_vec(vec![c(s, 0.0), c(s, 0.0)]);
        let minus = CVector::from_vec(vec![c(s, 0.0), c(-s, 0.0)]);
        assert!(linalg::vec_norm(&(&v * &plus - plus.map(|z| z * c(0.0, -1.0)))) < 1e-15);
        assert!(linalg::vec_norm(&(&v * &minus - minus.map(|z| z * c(0.0, 1.0)))) < 1e-15);
    }

    #[test]
    fn inverse_cayley_examples() {
        let mid = -linalg::identity::<f64>(2);
        assert!(linalg::frobenius(&inverse_cayley(&mid, TOL_ONE).unwrap()) < 1e-15);
        let vi = DMatrix::from_element(1, 1, c(0.0, 1.0));
        assert!((inverse_cayley(&vi, TOL_ONE).unwrap()[(0, 0)] - c(-1.0, 0.0)).norm() < 1e-15);
        let id = linalg::identity::<f64>(2);
        assert!(matches!(inverse_cayley(&id, TOL_ONE), Err(Error::EigenvalueOne { .. })));
    }

    #[test]
    fn raw_param_matches_robin_condition_on_disk() {
        // Robin νψ + αγψ = 0 in raw coordinates is X = everything, L = −(DtN + α)
        let geom = BoundaryGeometry::disk(1.5, 2).unwrap();
        let alpha = 0.7;
        let l = -(crate::domain::dtn(&geom) + linalg::identity::<f64>(5) * c(alpha, 0.0));
        let p = SelfAdjointParam::from_raw(&geom, &linalg::identity(5), &l).unwrap();
        let w = geom.sobolev_weights(0.5);
        for j in 0..5 {
            assert!((p.m()[(j, j)].re - w[j] * w[j] * l[(j, j)].re).abs() < 1e-12);
        }
        let dup = DMatrix::from_fn(5, 2, |_, _| c(1.0, 0.0));
        assert!(SelfAdjointParam::from_raw(&geom, &dup, &DMatrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn param_to_unitary_examples() {
        let dir = SelfAdjointParam::<f64>::dirichlet(3);
        assert!(linalg::frobenius(&(param_to_unitary(&dir).unwrap().into_matrix() - linalg::identity(3))) < 1e-15);
        let krein = SelfAdjointParam::<f64>::full(DMatrix::zeros(2, 2)).unwrap();
        assert!(linalg::frobenius(&(param_to_unitary(&krein).unwrap().into_matrix() + linalg::identity(2))) < 1e-15);

        // Neumann on [0, π]: M = −DtN
        let geom = BoundaryGeometry::interval(0.0, std::f64::consts::PI).unwrap();
        let neumann = SelfAdjointParam::full(-crate::domain::dtn(&geom)).unwrap();
        let u = param_to_unitary(&neumann).unwrap();
        let s = 0.5f64.sqrt();
        let even = CVector::from_vec(vec![c(s, 0.0), c(s, 0.0)]);
        let odd = CVector::from_vec(vec![c(s, 0.0), c(-s, 0.0)]);
        assert!(linalg::vec_norm(&(u.matrix() * &even + &even)) < 1e-15);
        let x = -2.0 / std::f64::consts::PI;
        let w = (c(x, -1.0)) / c(x, 1.0);
        assert!((w - c(-0.42320, 0.90604)).norm() < 1e-5);
        assert!(linalg::vec_norm(&(u.matrix() * &odd - odd.map(|z| z * w))) < 1e-14);
    }

    #[test]
    fn unitary_to_param_examples() {
        let p = unitary_to_param(&BoundaryUnitary::<f64>::identity(3), TOL_ONE).unwrap();
        assert_eq!(p.rank(), 0);
        assert_eq!(p.m().shape(), (0, 0));
        let p = unitary_to_param(&BoundaryUnitary::<f64>::minus_identity(3), TOL_ONE).unwrap();
        assert_eq!(p.rank(), 3);
        assert!(linalg::frobenius(p.m()) < 1e-15);
        assert!(linalg::frobenius(&(p.projector() - linalg::identity(3))) < 1e-14);
    }

    #[test]
    fn k_u_examples() {
        let f = k_u(&BoundaryUnitary::<f64>::identity(2), TOL_ONE).unwrap();
        assert_eq!(f.k.shape(), (0, 0));
        assert!(linalg::frobenius(&f.q) < 1e-15);
        let f = k_u(&BoundaryUnitary::<f64>::minus_identity(2), TOL_ONE).unwrap();
        assert!(linalg::frobenius(&f.k_full()) < 1e-15);
        assert!(linalg::frobenius(&(f.q - linalg::identity(2))) < 1e-14);

        // U = diag(−1, i): the defining relation gives K = diag(0, +1)
        let u = BoundaryUnitary::new(diag(&[c(-1.0, 0.0), c(0.0, 1.0)])).unwrap();
        let f = k_u(&u, TOL_ONE).unwrap();
        assert!(linalg::frobenius(&(f.k_full() - diag(&[c(0.0, 0.0), c(1.0, 0.0)]))) < 1e-14);
    }

    #[test]
    fn k_u_satisfies_defining_relation() {
        // K_U (I − U) g = −i Q_U (I + U) g for all g
        for seed in 0..20u64 {
            let d = 1 + (seed as usize % 6);
            let u = random_unitary::<f64>(d, seed).unwrap();
            let f = k_u(&u, TOL_ONE).unwrap();
            let id = linalg::identity::<f64>(d);
            let lhs = f.k_full() * (&id - u.matrix());
            let rhs = (&f.q * (&id + u.matrix())) * c(0.0, -1.0);
            assert!(linalg::frobenius(&(lhs - rhs)) < 1e-9, "seed {seed}");
        }
    }

    #[test]
    fn restriction_to_complement_is_identity() {
        let basis = DMatrix::from_row_slice(3, 1, &[c(0.6, 0.0), c(0.0, 0.8), c(0.0, 0.0)]);
        let p = SelfAdjointParam::new(basis.clone(), DMatrix::from_element(1, 1, c(2.5, 0.0))).unwrap();
        let u = param_to_unitary(&p).unwrap();
        let comp = linalg::null_space_rel(&basis.adjoint(), 1e-12).unwrap();
        let restricted = comp.adjoint() * u.matrix() * &comp;
        assert!(linalg::frobenius(&(restricted - linalg::identity(2))) < 1e-15);
        assert!(linalg::frobenius(&(u.matrix() * &comp - &comp)) < 1e-15);
    }

    #[test]
    fn param_validation() {
        let basis = DMatrix::from_row_slice(2, 1, &[c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            SelfAdjointParam::new(basis.clone(), DMatrix::zeros(1, 1)),
            Err(Error::NotOrthonormal { .. })
        ));
        let p = SelfAdjointParam::from_span(&basis, DMatrix::zeros(1, 1)).unwrap();
        assert_eq!(p.rank(), 1);
        let nh = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(SelfAdjointParam::full(nh), Err(Error::NotHermitian { .. })));
    }
}
