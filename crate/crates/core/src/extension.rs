//! Boundary conditions of T_U, the Gauss–Green boundary form Γ and maximal
//! isotropy certificates.
//!
//! Closedness of subspaces is automatic in finite dimensions, so isotropy
//! plus dimension d is the whole self-adjointness test.

use nalgebra::DMatrix;

use crate::boundary::{check_dim, h_inner, BoundaryUnitary, BoundaryVector};
use crate::domain::{self, CatalogFunction};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{cabs, lit, to_f64, CMatrix, Cplx, Real};

pub const DEFAULT_TOL_BC: f64 = 1e-9;
const ISOTROPY_TOL: f64 = 1e-10;
const SUBSPACE_TOL: f64 = 1e-8;
const NULL_REL: f64 = 1e-10;

/// (γψ, μψ) ∈ H^{-1/2}(∂Ω) ⊕ H^{-1/2}(∂Ω).
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryPair<T: Real> {
    pub g: BoundaryVector<T>,
    pub u: BoundaryVector<T>,
}

impl<T: Real> BoundaryPair<T> {
    pub fn new(g: BoundaryVector<T>, u: BoundaryVector<T>) -> Result<Self> {
        check_dim(g.dim(), u.dim())?;
        Ok(Self { g, u })
    }

    pub fn of_function(psi: &CatalogFunction<T>) -> Result<Self> {
        let (g, u) = domain::hat_pair(psi)?;
        Ok(Self { g, u })
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn norm(&self) -> T {
        (self.g.norm() * self.g.norm() + self.u.norm() * self.u.norm()).sqrt()
    }
}

/// i(I+U)γψ − (I−U)μψ.
pub fn bc_residual<T: Real>(u: &BoundaryUnitary<T>, p: &BoundaryPair<T>) -> Result<BoundaryVector<T>> {
    check_dim(u.dim(), p.dim())?;
    let i = Cplx::new(T::zero(), T::one());
    let ug = u.matrix() * &p.g.0;
    let uu = u.matrix() * &p.u.0;
    Ok(BoundaryVector((&p.g.0 + ug) * i - (&p.u.0 - uu)))
}

/// (μψ − iγψ) − U(μψ + iγψ).
pub fn aim_residual<T: Real>(u: &BoundaryUnitary<T>, p: &BoundaryPair<T>) -> Result<BoundaryVector<T>> {
    check_dim(u.dim(), p.dim())?;
    let i = Cplx::new(T::zero(), T::one());
    let minus = &p.u.0 - &p.g.0 * i;
    let plus = &p.u.0 + &p.g.0 * i;
    Ok(BoundaryVector(minus - u.matrix() * plus))
}

/// Membership of the boundary data in D(T_U): ‖r‖ ≤ tol_bc·(1 + ‖g‖ + ‖u‖).
pub fn satisfies_bc<T: Real>(u: &BoundaryUnitary<T>, p: &BoundaryPair<T>, tol_bc: T) -> Result<bool> {
    let r = bc_residual(u, p)?;
    Ok(r.norm() <= tol_bc * (T::one() + p.g.norm() + p.u.norm()))
}

/// Γ(p1, p2) = ⟨u1|g2⟩ − ⟨g1|u2⟩.
pub fn gauss_green<T: Real>(p1: &BoundaryPair<T>, p2: &BoundaryPair<T>) -> Result<Cplx<T>> {
    Ok(h_inner(&p1.u, &p2.g)? - h_inner(&p1.g, &p2.u)?)
}

/// |Γ(φ, ψ) − (⟨φ|T*ψ⟩ − ⟨T*φ|ψ⟩)| with volume integrals by quadrature.
pub fn green_identity_check<T: Real>(phi: &CatalogFunction<T>, psi: &CatalogFunction<T>) -> Result<T> {
    let gamma = gauss_green(&BoundaryPair::of_function(phi)?, &BoundaryPair::of_function(psi)?)?;
    let volume = phi.inner_tstar(psi)? - psi.inner_tstar(phi)?.conj();
    Ok(cabs(gamma - volume))
}

/// A subspace W of the doubled boundary space, columns stacked as (g; u).
#[derive(Clone, Debug, PartialEq)]
pub struct IsotropySubspace<T: Real> {
    basis: CMatrix<T>,
}

impl<T: Real> IsotropySubspace<T> {
    /// `basis` is 2d × k; rank is not enforced here, the certificate checks it.
    pub fn new(basis: CMatrix<T>) -> Result<Self> {
        if !basis.nrows().is_multiple_of(2) {
            return Err(Error::InvalidParameter("isotropy basis must have 2d rows".into()));
        }
        Ok(Self { basis })
    }

    pub fn from_pairs(pairs: &[BoundaryPair<T>]) -> Result<Self> {
        let d = pairs.first().map_or(0, |p| p.dim());
        let mut basis = DMatrix::zeros(2 * d, pairs.len());
        for (c, p) in pairs.iter().enumerate() {
            check_dim(d, p.dim())?;
            basis.view_mut((0, c), (d, 1)).copy_from(&p.g.0);
            basis.view_mut((d, c), (d, 1)).copy_from(&p.u.0);
        }
        Self::new(basis)
    }

    /// Boundary-space dimension d.
    pub fn boundary_dim(&self) -> usize {
        self.basis.nrows() / 2
    }

    pub fn basis(&self) -> &CMatrix<T> {
        &self.basis
    }

    pub fn rank(&self) -> Result<usize> {
        linalg::numerical_rank(&self.basis, lit(NULL_REL))
    }
}

/// W_U = {((I−U)h, i(I+U)h)}: the boundary data allowed by U.
pub fn wu_basis<T: Real>(u: &BoundaryUnitary<T>) -> Result<IsotropySubspace<T>> {
    let d = u.dim();
    let id = linalg::identity::<T>(d);
    let i = Cplx::new(T::zero(), T::one());
    let mut basis = DMatrix::zeros(2 * d, d);
    basis.view_mut((0, 0), (d, d)).copy_from(&(&id - u.matrix()));
    basis.view_mut((d, 0), (d, d)).copy_from(&((&id + u.matrix()) * i));
    let w = IsotropySubspace::new(basis)?;
    let rank = w.rank()?;
    if rank != d {
        return Err(Error::RankDeficient { expected: d, got: rank });
    }
    Ok(w)
}

/// Diagnostics behind [`maximal_isotropy_certificate`].
#[derive(Clone, Debug, PartialEq)]
pub struct IsotropyReport {
    pub isotropic: bool,
    pub maximal: bool,
    /// max |Γ(w_i, w_j)| over an orthonormal basis of W.
    pub gamma_max_defect: f64,
    pub dim: usize,
    pub expected_dim: usize,
    /// ‖Π_W − Π_{W†}‖.
    pub dagger_distance: f64,
}

impl IsotropyReport {
    pub fn certified(&self) -> bool {
        self.isotropic && self.maximal
    }
}

pub fn isotropy_report<T: Real>(w: &IsotropySubspace<T>) -> Result<IsotropyReport> {
    let d = w.boundary_dim();
    let q = linalg::range_basis(w.basis(), lit(NULL_REL))?;
    let k = q.ncols();
    let g_part = q.rows(0, d).into_owned();
    let u_part = q.rows(d, d).into_owned();
    // Gram matrix of Γ: Γ(w_i, w_j) = ⟨u_i|g_j⟩ − ⟨g_i|u_j⟩
    let gram = u_part.adjoint() * &g_part - g_part.adjoint() * &u_part;
    let gamma_max = linalg::max_abs(&gram);

    // W† = {v : Γ(w, v) = 0 ∀w ∈ W}, i.e. rows (u_j†, −g_j†) annihilate v
    let mut pairing = DMatrix::zeros(k, 2 * d);
    pairing.view_mut((0, 0), (k, d)).copy_from(&u_part.adjoint());
    pairing.view_mut((0, d), (k, d)).copy_from(&(-g_part.adjoint()));
    let dagger = if k == 0 { linalg::identity::<T>(2 * d) } else { linalg::null_space_rel(&pairing, lit(NULL_REL))? };
    let dist = if dagger.ncols() == k {
        to_f64(linalg::projector_distance(&linalg::projector(&q), &linalg::projector(&dagger)))
    } else {
        f64::INFINITY
    };
    let isotropic = gamma_max <= lit(ISOTROPY_TOL);
    Ok(IsotropyReport {
        isotropic,
        maximal: k == d && dist <= SUBSPACE_TOL,
        gamma_max_defect: to_f64(gamma_max),
        dim: k,
        expected_dim: d,
        dagger_distance: dist,
    })
}

/// True iff W is isotropic for Γ, has dimension d, and equals its Γ-orthogonal W†.
pub fn maximal_isotropy_certificate<T: Real>(w: &IsotropySubspace<T>) -> Result<bool> {
    Ok(isotropy_report(w)?.certified())
}
