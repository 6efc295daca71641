//! Eigenvalues and eigenfunctions of T_U from secular matrices.
//!
//! At energy λ every solution of −Δu = λu in D(T*) is a combination of the
//! geometry's energy basis; λ is an eigenvalue iff some combination satisfies
//! the boundary condition, i.e. iff the secular matrix has a kernel. Roots are
//! located by the smallest singular value, which is real and vanishes exactly
//! at eigenvalues.

pub mod bessel;

use crate::boundary::{BoundaryGeometry, BoundaryUnitary, DEFAULT_TOL_ONE};
use crate::cayley::k_u;
use crate::domain::{self, basis_size, basis_trace, ModeState};
use crate::error::{Error, Result};
use crate::extension::{bc_residual, BoundaryPair};
use crate::linalg;
use crate::scalar::{lit, to_f64, CMatrix, CVector, Cplx, Real};

/// Refined roots with σ_min above this are rejected.
pub const ACCEPT_TOL: f64 = 1e-8;
/// Golden-section refinement stops at bracket width `REFINE_REL·max(1, |λ|)`.
pub const REFINE_REL: f64 = 1e-12;
/// Roots closer than `MERGE_REL·max(1, |λ|)` are one eigenvalue.
pub const MERGE_REL: f64 = 1e-9;
pub const MIN_GRID_POINTS: usize = 16;
const MAX_REFINE_STEPS: usize = 200;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumResult<T: Real> {
    /// Strictly increasing.
    pub eigenvalues: Vec<T>,
    pub multiplicities: Vec<usize>,
    /// σ_min of the secular matrix at each eigenvalue.
    pub residuals: Vec<T>,
    pub window: (T, T),
}

impl<T: Real> SpectrumResult<T> {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Eigenvalues repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<T> {
        self.eigenvalues
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(&l, &m)| std::iter::repeat_n(l, m))
            .collect()
    }
}

/// Secular matrix together with the column scalings needed to map kernel
/// vectors back to basis coefficients.
#[derive(Clone, Debug)]
pub struct SecularSystem<T: Real> {
    pub matrix: CMatrix<T>,
    /// ‖(γ̂, μ̂)‖ of each scaled basis solution.
    pub column_norms: Vec<T>,
    /// Basis solution j is `e^{log_scales[j]}` times its scaled trace data.
    pub log_scales: Vec<T>,
}

impl<T: Real> SecularSystem<T> {
    /// Basis coefficients of the solution whose normalized column weights are `v`.
    pub fn coefficients(&self, v: &CVector<T>) -> CVector<T> {
        CVector::from_fn(v.len(), |j, _| {
            if v[j] == Cplx::new(T::zero(), T::zero()) {
                v[j]
            } else {
                v[j].unscale(self.column_norms[j] * self.log_scales[j].exp())
            }
        })
    }
}

pub fn secular_system<T: Real>(geom: &BoundaryGeometry<T>, u: &BoundaryUnitary<T>, lambda: T) -> Result<SecularSystem<T>> {
    let all: Vec<usize> = (0..basis_size(geom)).collect();
    secular_columns(geom, u, lambda, &all)
}

/// The listed columns of the secular system, in order.
fn secular_columns<T: Real>(
    geom: &BoundaryGeometry<T>,
    u: &BoundaryUnitary<T>,
    lambda: T,
    cols: &[usize],
) -> Result<SecularSystem<T>> {
    let d = geom.dim();
    crate::boundary::check_dim(d, u.dim())?;
    let mut matrix = CMatrix::zeros(d, cols.len());
    let mut column_norms = Vec::with_capacity(cols.len());
    let mut log_scales = Vec::with_capacity(cols.len());
    for (k, &j) in cols.iter().enumerate() {
        let bt = basis_trace(geom, lambda, j)?;
        let g = domain::gamma_hat(geom, &bt.g)?;
        let mu = domain::mu_from_trace(geom, &bt.g, &bt.n)?;
        let pair = BoundaryPair::new(g, mu)?;
        let norm = pair.norm();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::Eigensolver(format!("degenerate basis solution {j} at λ = {lambda}")));
        }
        let r = bc_residual(u, &pair)?;
        matrix.set_column(k, &r.0.unscale(norm));
        column_norms.push(norm);
        log_scales.push(bt.log_scale);
    }
    Ok(SecularSystem { matrix, column_norms, log_scales })
}

/// Column j is bc_residual(U, pair of basis solution j at λ), normalized.
pub fn secular_matrix<T: Real>(geom: &BoundaryGeometry<T>, u: &BoundaryUnitary<T>, lambda: T) -> Result<CMatrix<T>> {
    Ok(secular_system(geom, u, lambda)?.matrix)
}

pub fn sigma_min<T: Real>(geom: &BoundaryGeometry<T>, u: &BoundaryUnitary<T>, lambda: T) -> Result<T> {
    let s = linalg::singular_values(&secular_matrix(geom, u, lambda)?)?;
    Ok(s.last().copied().unwrap_or(T::zero()))
}

fn lambda_of<T: Real>(s: T) -> T {
    s * s.abs()
}

fn s_of<T: Real>(lambda: T) -> T {
    if lambda < T::zero() {
        -(-lambda).sqrt()
    } else {
        lambda.sqrt()
    }
}

fn refine_width<T: Real>(lambda: T) -> T {
    lit::<T>(REFINE_REL) * T::one().max(lambda.abs())
}

/// Entries of U below this do not couple boundary modes.
const COUPLING_TOL: f64 = 1e-14;

/// Groups of boundary modes that U does not couple to each other.
///
/// On the disk basis solution j has its trace on mode j alone, so the secular
/// matrix is block diagonal along these groups. Scanning each block on its
/// own keeps one mode from hiding another's roots: high-|m| columns stay
/// small across low energies and would otherwise dominate σ_min. The interval
/// basis couples both endpoints and is a single block.
fn coupling_blocks<T: Real>(geom: &BoundaryGeometry<T>, u: &BoundaryUnitary<T>) -> Vec<Vec<usize>> {
    let d = geom.dim();
    if geom.is_interval() {
        return vec![(0..d).collect()];
    }
    let m = u.matrix();
    let tol: T = lit(COUPLING_TOL);
    let mut parent: Vec<usize> = (0..d).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..d {
        for j in (i + 1)..d {
            if crate::scalar::cabs(m[(i, j)]) > tol || crate::scalar::cabs(m[(j, i)]) > tol {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = vec![];
    let mut slot = vec![usize::MAX; d];
    for i in 0..d {
        let r = root(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = blocks.len();
            blocks.push(vec![]);
        }
        blocks[slot[r]].push(i);
    }
    blocks
}

/// σ_min of the rows `block[r]` and columns `col(c)` of `m`.
fn block_sigma<T: Real>(m: &CMatrix<T>, block: &[usize], col: impl Fn(usize) -> usize) -> Result<T> {
    let sub = CMatrix::from_fn(block.len(), block.len(), |r, c| m[(block[r], col(c))]);
    Ok(linalg::singular_values(&sub)?.last().copied().unwrap_or(T::zero()))
}

struct Scanner<'a, T: Real> {
    geom: &'a BoundaryGeometry<T>,
    u: &'a BoundaryUnitary<T>,
    blocks: Vec<Vec<usize>>,
}

impl<T: Real> Scanner<'_, T> {
    /// σ_min of every block at s.
    fn all(&self, s: T) -> Result<Vec<T>> {
        let full = secular_matrix(self.geom, self.u, lambda_of(s))?;
        self.blocks.iter().map(|b| block_sigma(&full, b, |c| b[c])).collect()
    }

    fn f(&self, block: usize, s: T) -> Result<T> {
        let cols = &self.blocks[block];
        let sys = secular_columns(self.geom, self.u, lambda_of(s), cols)?;
        block_sigma(&sys.matrix, cols, |c| c)
    }

    /// Golden-section search for the minimum of σ_min on [lo, hi] (in s),
    /// starting from a known point `best`. Returns (λ, σ_min).
    fn refine(&self, block: usize, mut lo: T, mut hi: T, mut best: (T, T)) -> Result<(T, T)> {
        let phi: T = lit((5f64.sqrt() - 1.0) / 2.0);
        let mut c = hi - phi * (hi - lo);
        let mut d = lo + phi * (hi - lo);
        let mut fc = self.f(block, c)?;
        let mut fd = self.f(block, d)?;
        for (s, v) in [(c, fc), (d, fd)] {
            if v < best.1 {
                best = (s, v);
            }
        }
        for _ in 0..MAX_REFINE_STEPS {
            let mid = lambda_of((lo + hi) / lit(2.0));
            if lambda_of(hi) - lambda_of(lo) <= refine_width(mid) {
                break;
            }
            if fc <= fd {
                hi = d;
                d = c;
                fd = fc;
                c = hi - phi * (hi - lo);
                fc = self.f(block, c)?;
                if fc < best.1 {
                    best = (c, fc);
                }
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + phi * (hi - lo);
                fd = self.f(block, d)?;
                if fd < best.1 {
                    best = (d, fd);
                }
            }
        }
        Ok((lambda_of(best.0), best.1))
    }
}

fn par_map<I: Sync, O: Send>(items: &[I], workers: usize, f: impl Fn(&I) -> O + Sync) -> Vec<O> {
    if workers <= 1 || items.len() < 2 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    let f = &f;
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| scope.spawn(move || c.iter().map(f).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().unwrap_or_else(|e| std::panic::resume_unwind(e)))
            .collect()
    })
}

/// Eigenvalues of T_U in [λ_min, λ_max].
///
/// σ_min is sampled on `grid_points` values uniform in s = sign(λ)√|λ|, every
/// local minimum is refined by golden-section search and accepted when
/// σ_min ≤ 1e−8. λ = 0 is always tested directly when it lies in the window.
pub fn scan_spectrum<T: Real>(
    geom: &BoundaryGeometry<T>,
    u: &BoundaryUnitary<T>,
    lambda_min: T,
    lambda_max: T,
    grid_points: usize,
) -> Result<SpectrumResult<T>> {
    scan_spectrum_concurrent(geom, u, lambda_min, lambda_max, grid_points, 1)
}

/// [`scan_spectrum`] with grid evaluation and refinement spread over
/// `workers` threads. The output does not depend on `workers`.
pub fn scan_spectrum_concurrent<T: Real>(
    geom: &BoundaryGeometry<T>,
    u: &BoundaryUnitary<T>,
    lambda_min: T,
    lambda_max: T,
    grid_points: usize,
    workers: usize,
) -> Result<SpectrumResult<T>> {
    if !(lambda_min < lambda_max) {
        return Err(Error::InvalidParameter(format!("empty window ({lambda_min}, {lambda_max})")));
    }
    if grid_points < MIN_GRID_POINTS {
        return Err(Error::InvalidParameter(format!("grid_points must be at least {MIN_GRID_POINTS}")));
    }
    crate::boundary::check_dim(geom.dim(), u.dim())?;
    let scanner = Scanner { geom, u, blocks: coupling_blocks(geom, u) };
    let (s_lo, s_hi) = (s_of(lambda_min), s_of(lambda_max));
    let step = (s_hi - s_lo) / lit((grid_points - 1) as f64);
    let grid: Vec<T> = (0..grid_points)
        .map(|i| if i + 1 == grid_points { s_hi } else { s_lo + step * lit(i as f64) })
        .collect();
    let values = par_map(&grid, workers, |&s| scanner.all(s)).into_iter().collect::<Result<Vec<_>>>()?;

    let n = grid.len();
    let mut brackets: Vec<(usize, T, T, (T, T))> = vec![];
    for (b, _) in scanner.blocks.iter().enumerate() {
        let v = |i: usize| values[i][b];
        brackets.extend(
            (0..n)
                .filter(|&i| (i == 0 || v(i) <= v(i - 1)) && (i + 1 == n || v(i) <= v(i + 1)))
                .map(|i| (b, grid[i.saturating_sub(1)], grid[(i + 1).min(n - 1)], (grid[i], v(i)))),
        );
    }
    let refined = par_map(&brackets, workers, |&(b, lo, hi, best)| scanner.refine(b, lo, hi, best))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let accept: T = lit(ACCEPT_TOL);
    let mut candidates: Vec<(T, T)> = refined
        .into_iter()
        .filter(|&(l, s)| s <= accept && l >= lambda_min && l <= lambda_max)
        .collect();
    if lambda_min <= T::zero() && T::zero() <= lambda_max {
        let s0 = sigma_min(geom, u, T::zero())?;
        if s0 <= accept {
            candidates.push((T::zero(), s0));
        }
    }
    candidates.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));

    let mut result = SpectrumResult {
        eigenvalues: vec![],
        multiplicities: vec![],
        residuals: vec![],
        window: (lambda_min, lambda_max),
    };
    let mut i = 0;
    while i < candidates.len() {
        let mut best = candidates[i];
        let mut j = i + 1;
        while j < candidates.len() {
            let prev = candidates[j - 1].0;
            if candidates[j].0 - prev > lit::<T>(MERGE_REL) * T::one().max(prev.abs()) {
                break;
            }
            if candidates[j].1 < best.1 {
                best = candidates[j];
            }
            j += 1;
        }
        let sv = linalg::singular_values(&secular_matrix(geom, u, best.0)?)?;
        let mult = sv.iter().filter(|&&s| s <= accept).count().max(1);
        result.eigenvalues.push(best.0);
        result.multiplicities.push(mult);
        result.residuals.push(best.1);
        i = j;
    }
    Ok(result)
}

fn kernel_states<T: Real>(geom: &BoundaryGeometry<T>, u: &BoundaryUnitary<T>, lambda: T) -> Result<Vec<ModeState<T>>> {
    let sys = secular_system(geom, u, lambda)?;
    let svd = linalg::full_svd(&sys.matrix)?;
    let smin = svd.sigma.last().copied().unwrap_or(T::zero());
    let accept: T = lit(ACCEPT_TOL);
    if !(smin <= accept) {
        return Err(Error::NotARoot { lambda: to_f64(lambda), sigma: to_f64(smin) });
    }
    let nb = sys.matrix.ncols();
    let mut states = Vec::new();
    // smallest singular value first
    for k in (0..svd.sigma.len()).rev() {
        if svd.sigma[k] > accept {
            break;
        }
        let v = svd.v.column(k).rows(0, nb).into_owned();
        states.push(ModeState::new(geom, lambda, sys.coefficients(&v))?);
    }
    Ok(states)
}

/// Eigenfunction for an accepted root λ*: the kernel vector of the smallest
/// singular value, normalized to unit L²(Ω) norm by quadrature.
pub fn eigenfunction<T: Real>(geom: &BoundaryGeometry<T>, u: &BoundaryUnitary<T>, lambda: T) -> Result<ModeState<T>> {
    let state = kernel_states(geom, u, lambda)?.swap_remove(0);
    let norm = state.to_function()?.norm_sq()?.sqrt();
    if !(norm > T::zero()) {
        return Err(Error::Quadrature(format!("eigenfunction at λ = {lambda} has zero norm")));
    }
    Ok(state.scaled(Cplx::new(norm.recip(), T::zero())))
}

/// L²-orthonormal basis of the eigenspace at λ*, one state per singular value
/// ≤ 1e−8.
pub fn eigenfunctions<T: Real>(geom: &BoundaryGeometry<T>, u: &BoundaryUnitary<T>, lambda: T) -> Result<Vec<ModeState<T>>> {
    let mut out: Vec<ModeState<T>> = Vec::new();
    for state in kernel_states(geom, u, lambda)? {
        let f = state.to_function()?;
        let mut coeffs = state.coeffs().clone();
        for prev in &out {
            let proj = prev.to_function()?.inner(&f)?;
            coeffs -= prev.coeffs().map(|z| z * proj);
        }
        let candidate = ModeState::new(geom, lambda, coeffs)?;
        let norm = candidate.to_function()?.norm_sq()?.sqrt();
        if norm > lit::<T>(1e-8) {
            out.push(candidate.scaled(Cplx::new(norm.recip(), T::zero())));
        }
    }
    Ok(out)
}

/// Lower bound for the spectrum of T_U on an interval of length ℓ:
/// λ₁ ≥ −c(c + 2/ℓ) with c = 2/ℓ + max(0, −min eig K_U).
pub fn interval_lower_bound<T: Real>(geom: &BoundaryGeometry<T>, u: &BoundaryUnitary<T>) -> Result<T> {
    let BoundaryGeometry::Interval { a, b } = *geom else {
        return Err(Error::InvalidGeometry("lower bound is only available on the interval".into()));
    };
    crate::boundary::check_dim(geom.dim(), u.dim())?;
    let two_over_l = lit::<T>(2.0) / (b - a);
    let form = k_u(u, lit(DEFAULT_TOL_ONE))?;
    let (eig, _) = linalg::hermitian_eigen(&form.k);
    let kmin = eig.first().copied().unwrap_or(T::zero());
    let c = two_over_l + T::zero().max(-kmin);
    Ok(-c * (c + two_over_l))
}

/// Boundary data (γ̂ψ, μ̂ψ) of a mode state.
pub fn state_pair<T: Real>(state: &ModeState<T>) -> Result<BoundaryPair<T>> {
    let (g, n) = domain::trace_data(state)?;
    BoundaryPair::new(domain::gamma_hat(state.geom(), &g)?, domain::mu_from_trace(state.geom(), &g, &n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{param_to_unitary, SelfAdjointParam};
    use crate::scalar::cplx;
    use nalgebra::DMatrix;
    use std::f64::consts::PI;

    const J01: f64 = 2.404825557695773;

    fn iv(a: f64, b: f64) -> BoundaryGeometry<f64> {
        BoundaryGeometry::interval(a, b).unwrap()
    }

    fn neumann(geom: &BoundaryGeometry<f64>) -> BoundaryUnitary<f64> {
        param_to_unitary(&SelfAdjointParam::full(-domain::dtn(geom)).unwrap()).unwrap()
    }

    fn periodic() -> BoundaryUnitary<f64> {
        let m = DMatrix::from_row_slice(2, 2, &[cplx(0.0, 0.0), cplx(-1.0, 0.0), cplx(-1.0, 0.0), cplx(0.0, 0.0)]);
        BoundaryUnitary::new(m).unwrap()
    }

    fn assert_spectrum(r: &SpectrumResult<f64>, want: &[(f64, usize)], tol: f64) {
        assert_eq!(r.len(), want.len(), "{r:?}");
        for (k, &(l, m)) in want.iter().enumerate() {
            assert!((r.eigenvalues[k] - l).abs() <= tol, "{} vs {l}", r.eigenvalues[k]);
            assert_eq!(r.multiplicities[k], m, "multiplicity at {l}");
            assert!(r.residuals[k] <= ACCEPT_TOL);
        }
    }

    #[test]
    fn secular_matrix_dirichlet_interval() {
        let geom = iv(0.0, PI);
        let id = BoundaryUnitary::identity(2);
        assert!(sigma_min(&geom, &id, 1.0).unwrap() <= 1e-12);
        assert!(sigma_min(&geom, &id, 2.5).unwrap() > 1e-3);
    }

    #[test]
    fn secular_matrix_dirichlet_disk() {
        let geom = BoundaryGeometry::disk(1.0, 3).unwrap();
        let id = BoundaryUnitary::identity(7);
        let sys = secular_system(&geom, &id, J01 * J01).unwrap();
        let svd = linalg::full_svd(&sys.matrix).unwrap();
        assert!(svd.sigma[6] <= 1e-10);
        assert!(svd.sigma[5] > 1e-3);
        let v = svd.v.column(6);
        assert!((v[0].norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn dirichlet_interval_spectrum() {
        let r = scan_spectrum(&iv(0.0, PI), &BoundaryUnitary::identity(2), -1.0, 30.0, 200).unwrap();
        assert_spectrum(&r, &[(1.0, 1), (4.0, 1), (9.0, 1), (16.0, 1), (25.0, 1)], 1e-8);
    }

    #[test]
    fn krein_double_zero() {
        let r = scan_spectrum(&iv(0.0, 1.0), &BoundaryUnitary::minus_identity(2), -1.0, 1.0, 64).unwrap();
        assert_spectrum(&r, &[(0.0, 2)], 1e-12);
    }

    #[test]
    fn periodic_spectrum_merges_degeneracies() {
        let r = scan_spectrum(&iv(0.0, 2.0 * PI), &periodic(), -0.5, 5.0, 200).unwrap();
        assert_spectrum(&r, &[(0.0, 1), (1.0, 2), (4.0, 2)], 1e-6);
        assert_eq!(r.expanded().len(), 5);
    }

    #[test]
    fn neumann_spectrum() {
        let geom = iv(0.0, PI);
        let r = scan_spectrum(&geom, &neumann(&geom), -1.0, 17.0, 200).unwrap();
        assert_spectrum(&r, &[(0.0, 1), (1.0, 1), (4.0, 1), (9.0, 1), (16.0, 1)], 1e-8);
    }

    #[test]
    fn concurrent_scan_matches_serial() {
        let geom = iv(0.0, 1.0);
        let u = crate::boundary::random_unitary::<f64>(2, 3).unwrap();
        let lo = interval_lower_bound(&geom, &u).unwrap();
        let a = scan_spectrum(&geom, &u, lo, 200.0, 300).unwrap();
        let b = scan_spectrum_concurrent(&geom, &u, lo, 200.0, 300, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_windows() {
        let geom = iv(0.0, 1.0);
        let id = BoundaryUnitary::identity(2);
        assert!(scan_spectrum(&geom, &id, 1.0, 0.0, 64).is_err());
        assert!(scan_spectrum(&geom, &id, 0.0, 1.0, 8).is_err());
    }

    #[test]
    fn dirichlet_eigenfunction_is_normalized_sine() {
        let geom = iv(0.0, PI);
        let psi = eigenfunction(&geom, &BoundaryUnitary::identity(2), 1.0).unwrap().to_function().unwrap();
        assert!((psi.norm_sq().unwrap() - 1.0).abs() < 1e-10);
        let c = (2.0 / PI).sqrt();
        for x in [0.3, 1.0, 2.2] {
            assert!((psi.eval_interval(x).norm() - c * x.sin()).abs() < 1e-10);
        }
        assert!(psi.eigen_defect(1.0) < 1e-12);
    }

    #[test]
    fn neumann_ground_state_is_constant() {
        let geom = iv(0.0, PI);
        let psi = eigenfunction(&geom, &neumann(&geom), 0.0).unwrap().to_function().unwrap();
        let v0 = psi.eval_interval(0.0);
        for x in [0.5, 1.5, 3.0] {
            assert!((psi.eval_interval(x) - v0).norm() < 1e-12);
        }
        assert!((v0.norm() - PI.sqrt().recip()).abs() < 1e-10);
    }

    #[test]
    fn disk_ground_state_is_j0() {
        let geom = BoundaryGeometry::disk(1.0, 2).unwrap();
        let id = BoundaryUnitary::identity(5);
        let r = scan_spectrum(&geom, &id, -1.0, 10.0, 100).unwrap();
        assert!((r.eigenvalues[0] - J01 * J01).abs() < 1e-8);
        let psi = eigenfunction(&geom, &id, r.eigenvalues[0]).unwrap().to_function().unwrap();
        assert!((psi.norm_sq().unwrap() - 1.0).abs() < 1e-10);
        let ratio = psi.eval_disk(0.4, 0.0) / psi.eval_disk(0.1, 0.0);
        let want = bessel::bessel_j(0, J01 * 0.4).unwrap() / bessel::bessel_j(0, J01 * 0.1).unwrap();
        assert!((ratio - cplx(want, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn disk_neumann_keeps_low_modes_visible() {
        // j'_{m,k}² for |m| ≤ 4 below 50: high-|m| columns must not mask m = 0, 1.
        let want = [
            (0.0, 1),
            (3.389957716671928, 2),
            (9.328363213746345, 2),
            (14.68197064212387, 1),
            (17.6499885197501, 2),
            (28.27637124872386, 2),
            (28.42428204737218, 2),
            (44.97222241779087, 2),
            (49.21845632169058, 1),
        ];
        let geom = BoundaryGeometry::disk(1.0, 4).unwrap();
        let neumann = crate::presets::Preset::Neumann.unitary(&geom).unwrap();
        let r = scan_spectrum(&geom, &neumann, -0.5, 50.0, 300).unwrap();
        assert_spectrum(&r, &want, 1e-8);
    }

    #[test]
    fn eigenspace_is_orthonormal() {
        let geom = iv(0.0, 2.0 * PI);
        let states = eigenfunctions(&geom, &periodic(), 1.0).unwrap();
        assert_eq!(states.len(), 2);
        let f: Vec<_> = states.iter().map(|s| s.to_function().unwrap()).collect();
        assert!((f[0].inner(&f[0]).unwrap().re - 1.0).abs() < 1e-10);
        assert!((f[1].inner(&f[1]).unwrap().re - 1.0).abs() < 1e-10);
        assert!(f[0].inner(&f[1]).unwrap().norm() < 1e-10);
    }

    #[test]
    fn distinct_eigenfunctions_are_orthogonal() {
        let geom = iv(0.0, 1.0);
        let u = crate::boundary::random_unitary::<f64>(2, 9).unwrap();
        let lo = interval_lower_bound(&geom, &u).unwrap();
        let r = scan_spectrum(&geom, &u, lo, 120.0, 300).unwrap();
        assert!(r.len() >= 3);
        let fs: Vec<_> = r.eigenvalues.iter().map(|&l| eigenfunction(&geom, &u, l).unwrap().to_function().unwrap()).collect();
        for i in 0..fs.len() {
            for j in 0..i {
                assert!(fs[i].inner(&fs[j]).unwrap().norm() < 1e-6);
            }
        }
    }

    #[test]
    fn eigenpairs_satisfy_boundary_condition() {
        let geom = iv(0.0, 1.0);
        let u = crate::boundary::random_unitary::<f64>(2, 21).unwrap();
        let lo = interval_lower_bound(&geom, &u).unwrap();
        let r = scan_spectrum(&geom, &u, lo, 100.0, 300).unwrap();
        for &l in &r.eigenvalues {
            let st = eigenfunction(&geom, &u, l).unwrap();
            let res = bc_residual(&u, &state_pair(&st).unwrap()).unwrap();
            assert!(res.norm() <= 1e-7);
        }
    }

    #[test]
    fn dirichlet_dominates_krein() {
        let geom = iv(0.0, 1.0);
        let d = scan_spectrum(&geom, &BoundaryUnitary::identity(2), -1.0, 200.0, 300).unwrap().expanded();
        let k = scan_spectrum(&geom, &BoundaryUnitary::minus_identity(2), -1.0, 200.0, 300).unwrap().expanded();
        for (a, b) in d.iter().zip(&k) {
            assert!(a >= b);
        }
    }

    #[test]
    fn lower_bound_holds_for_random_unitaries() {
        let geom = iv(0.0, 1.0);
        for seed in 0..5 {
            let u = crate::boundary::random_unitary::<f64>(2, seed).unwrap();
            let lo = interval_lower_bound(&geom, &u).unwrap();
            let r = scan_spectrum(&geom, &u, lo - 10.0, 50.0, 300).unwrap();
            assert!(r.eigenvalues.iter().all(|&l| l >= lo));
        }
    }

    #[test]
    fn not_a_root_is_rejected() {
        let geom = iv(0.0, PI);
        assert!(matches!(
            eigenfunction(&geom, &BoundaryUnitary::identity(2), 2.5),
            Err(Error::NotARoot { .. })
        ));
    }
}
