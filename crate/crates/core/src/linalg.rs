//! Dense complex linear-algebra helpers on top of nalgebra.

use nalgebra::{Complex, ComplexField, DMatrix};

use crate::error::{Error, Result};
use crate::scalar::{lit, CMatrix, CVector, Real};

pub fn identity<T: Real>(d: usize) -> CMatrix<T> {
    DMatrix::identity(d, d)
}

pub fn frobenius<T: Real>(m: &CMatrix<T>) -> T {
    m.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
}

pub fn vec_norm<T: Real>(v: &CVector<T>) -> T {
    v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
}

/// ‖M†M − I‖_F.
pub fn unitarity_defect<T: Real>(m: &CMatrix<T>) -> T {
    let d = m.ncols();
    frobenius(&(m.adjoint() * m - identity::<T>(d)))
}

/// ‖M − M†‖_F.
pub fn hermitian_defect<T: Real>(m: &CMatrix<T>) -> T {
    frobenius(&(m - m.adjoint()))
}

/// Orthogonal projector B B† onto the span of orthonormal columns.
pub fn projector<T: Real>(basis: &CMatrix<T>) -> CMatrix<T> {
    basis * basis.adjoint()
}

/// Frobenius distance between projectors; bounds the operator-norm distance from above.
pub fn projector_distance<T: Real>(p1: &CMatrix<T>, p2: &CMatrix<T>) -> T {
    frobenius(&(p1 - p2))
}

/// Singular value decomposition with full right singular vectors, sorted by
/// descending singular value. Rectangular inputs are zero-padded to square.
pub struct FullSvd<T: Real> {
    pub sigma: Vec<T>,
    /// Left singular vectors (columns), padded dimension.
    pub u: CMatrix<T>,
    /// Right singular vectors (columns), padded dimension.
    pub v: CMatrix<T>,
}

pub fn full_svd<T: Real>(m: &CMatrix<T>) -> Result<FullSvd<T>> {
    let (r, c) = m.shape();
    let n = r.max(c);
    if n == 0 {
        return Ok(FullSvd { sigma: vec![], u: DMatrix::zeros(0, 0), v: DMatrix::zeros(0, 0) });
    }
    let mut padded = DMatrix::<Complex<T>>::zeros(n, n);
    padded.view_mut((0, 0), (r, c)).copy_from(m);
    let svd = padded
        .try_svd(true, true, T::default_epsilon(), 0)
        .ok_or_else(|| Error::Eigensolver("SVD did not converge".into()))?;
    let u = svd.u.ok_or_else(|| Error::Eigensolver("SVD left vectors missing".into()))?;
    let v_t = svd.v_t.ok_or_else(|| Error::Eigensolver("SVD right vectors missing".into()))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        svd.singular_values[j]
            .partial_cmp(&svd.singular_values[i])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let sigma = order.iter().map(|&i| svd.singular_values[i]).collect();
    let v_full = v_t.adjoint();
    let u_sorted = DMatrix::from_fn(n, n, |row, col| u[(row, order[col])]);
    let v_sorted = DMatrix::from_fn(n, n, |row, col| v_full[(row, order[col])]);
    Ok(FullSvd { sigma, u: u_sorted, v: v_sorted })
}

pub fn singular_values<T: Real>(m: &CMatrix<T>) -> Result<Vec<T>> {
    if m.is_empty() {
        return Ok(vec![]);
    }
    let svd = m
        .clone()
        .try_svd(false, false, T::default_epsilon(), 0)
        .ok_or_else(|| Error::Eigensolver("SVD did not converge".into()))?;
    let mut s: Vec<T> = svd.singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    Ok(s)
}

fn select_columns<T: Real>(m: &CMatrix<T>, rows: usize, cols: &[usize]) -> CMatrix<T> {
    DMatrix::from_fn(rows, cols.len(), |r, c| m[(r, cols[c])])
}

/// Orthonormal basis of the null space of `m`: right singular vectors whose
/// singular value is at most `tol` (absolute).
pub fn null_space_abs<T: Real>(m: &CMatrix<T>, tol: T) -> Result<CMatrix<T>> {
    let c = m.ncols();
    let svd = full_svd(m)?;
    // padded rows contribute exact zeros, so the trailing singular values past rank are zero
    let cols: Vec<usize> = (0..svd.sigma.len()).filter(|&i| svd.sigma[i] <= tol).collect();
    Ok(select_columns(&svd.v, c, &cols))
}

/// Null space with threshold `rel · σ_max`.
pub fn null_space_rel<T: Real>(m: &CMatrix<T>, rel: T) -> Result<CMatrix<T>> {
    let smax = singular_values(m)?.first().copied().unwrap_or(T::zero());
    null_space_abs(m, rel * smax)
}

/// Orthonormal basis of the column space of `m`, singular values above `rel · σ_max`.
pub fn range_basis<T: Real>(m: &CMatrix<T>, rel: T) -> Result<CMatrix<T>> {
    let r = m.nrows();
    if m.ncols() == 0 || r == 0 {
        return Ok(DMatrix::zeros(r, 0));
    }
    let svd = full_svd(m)?;
    let smax = svd.sigma[0];
    if smax == T::zero() {
        return Ok(DMatrix::zeros(r, 0));
    }
    let cols: Vec<usize> = (0..svd.sigma.len()).filter(|&i| svd.sigma[i] > rel * smax).collect();
    Ok(select_columns(&svd.u, r, &cols))
}

pub fn numerical_rank<T: Real>(m: &CMatrix<T>, rel: T) -> Result<usize> {
    let s = singular_values(m)?;
    let smax = s.first().copied().unwrap_or(T::zero());
    if smax == T::zero() {
        return Ok(0);
    }
    Ok(s.iter().filter(|&&x| x > rel * smax).count())
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigen<T: Real>(m: &CMatrix<T>) -> (Vec<T>, CMatrix<T>) {
    let n = m.nrows();
    if n == 0 {
        return (vec![], DMatrix::zeros(0, 0));
    }
    let sym = (m + m.adjoint()).scale(lit(0.5));
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[i]
            .partial_cmp(&eig.eigenvalues[j])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = select_columns(&eig.eigenvectors, n, &order);
    (vals, vecs)
}

/// Eigenvalues of a general complex matrix from its complex Schur form.
pub fn eigenvalues<T: Real>(m: &CMatrix<T>) -> Result<Vec<Complex<T>>> {
    if m.is_empty() {
        return Ok(vec![]);
    }
    let schur = nalgebra::linalg::Schur::try_new(m.clone(), T::default_epsilon(), 0)
        .ok_or_else(|| Error::Eigensolver("Schur decomposition did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok((0..t.nrows()).map(|i| t[(i, i)]).collect())
}

pub fn max_abs<T: Real>(m: &CMatrix<T>) -> T {
    m.iter().fold(T::zero(), |acc, z| {
        let a = ComplexField::abs(*z);
        if a > acc {
            a
        } else {
            acc
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    #[test]
    fn null_space_of_wide_matrix_is_complete() {
        // 1×3 row: null space has dimension 2
        let m = DMatrix::from_row_slice(1, 3, &[cplx(1.0, 0.0), cplx(0.0, 1.0), cplx(0.0, 0.0)]);
        let ns = null_space_rel(&m, 1e-10).unwrap();
        assert_eq!(ns.shape(), (3, 2));
        assert!(frobenius(&(&m * &ns)) < 1e-14);
        assert!(unitarity_defect(&ns) < 1e-14);
    }

    #[test]
    fn schur_eigenvalues_of_diagonal() {
        let m = DMatrix::from_diagonal(&CVector::from_vec(vec![cplx(1.0, 0.0), cplx(0.0, 1.0)]));
        let mut ev = eigenvalues(&m).unwrap();
        ev.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((ev[0] - cplx(1.0, 0.0)).norm() < 1e-15);
        assert!((ev[1] - cplx(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn hermitian_eigen_sorted() {
        let m = DMatrix::from_row_slice(2, 2, &[cplx(0.0, 0.0), cplx(1.0, 0.0), cplx(1.0, 0.0), cplx(0.0, 0.0)]);
        let (vals, vecs) = hermitian_eigen(&m);
        assert!((vals[0] + 1.0).abs() < 1e-14 && (vals[1] - 1.0).abs() < 1e-14);
        assert!(unitarity_defect(&vecs) < 1e-14);
    }
}
