//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use bdry_ext_core::boundary::{random_unitary, DEFAULT_TOL_ONE};
use bdry_ext_core::cayley::{cayley, inverse_cayley, param_to_unitary, unitary_to_param};
use bdry_ext_core::domain::{disk_corpus, interval_corpus};
use bdry_ext_core::extension::{aim_residual, bc_residual, green_identity_check, isotropy_report, wu_basis};
use bdry_ext_core::forms::{form_value_state, semi_green_check};
use bdry_ext_core::linalg::{self, frobenius, projector_distance};
use bdry_ext_core::oracle::{comparison_tolerance, fem_spectrum};
use bdry_ext_core::scalar::{CMatrix, Cplx};
use bdry_ext_core::spectral::bessel::bessel_j;
use bdry_ext_core::spectral::{eigenfunctions, interval_lower_bound, scan_spectrum};
use bdry_ext_core::{BoundaryPair, BoundaryUnitary, Geometry64, Preset, Spectrum64, Unitary64};
use common::*;

const FEM_ELEMENTS: usize = 4096;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// Eigenpairs collected for the form-consistency criterion.
type Eigenpairs = Vec<(Geometry64, Unitary64, Spectrum64)>;

fn max_dev(got: &[f64], want: &[f64]) -> f64 {
    if got.len() != want.len() {
        return f64::INFINITY;
    }
    got.iter().zip(want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

fn c1(pairs: &mut Eigenpairs) -> Outcome {
    let geom = Geometry64::interval(0.0, PI).unwrap();
    let u = BoundaryUnitary::identity(2);
    let t = Instant::now();
    let r = scan_spectrum(&geom, &u, -1.0, 30.0, 400).unwrap();
    let dt = t.elapsed();
    let dev = max_dev(&r.expanded(), &[1.0, 4.0, 9.0, 16.0, 25.0]);
    let pass = dev <= 1e-8 && dt < Duration::from_secs(1);
    pairs.push((geom, u, r));
    outcome(pass, format!("Dirichlet [0,π]: max dev {dev:.2e} (tol 1e-8), {:.1} ms (limit 1 s)", dt.as_secs_f64() * 1e3))
}

fn c2(pairs: &mut Eigenpairs) -> Outcome {
    let geom = Geometry64::interval(0.0, PI).unwrap();
    let u = Preset::Neumann.unitary(&geom).unwrap();
    let r = scan_spectrum(&geom, &u, -1.0, 17.0, 400).unwrap();
    let dev = max_dev(&r.expanded(), &[0.0, 1.0, 4.0, 9.0, 16.0]);
    pairs.push((geom, u, r));
    outcome(dev <= 1e-8, format!("Neumann [0,π]: max dev {dev:.2e} (tol 1e-8)"))
}

fn c3(pairs: &mut Eigenpairs) -> Outcome {
    let geom = Geometry64::interval(0.0, 2.0 * PI).unwrap();
    let u = Preset::Periodic.unitary(&geom).unwrap();
    let want_u = CMatrix::from_row_slice(2, 2, &[Cplx::new(0.0, 0.0), Cplx::new(-1.0, 0.0), Cplx::new(-1.0, 0.0), Cplx::new(0.0, 0.0)]);
    let r = scan_spectrum(&geom, &u, -0.5, 5.0, 400).unwrap();
    let dev = max_dev(&r.expanded(), &[0.0, 1.0, 1.0, 4.0, 4.0]);
    let mults_ok = r.multiplicities == [1, 2, 2];
    let u_ok = frobenius(&(u.matrix() - want_u)) <= 1e-12;
    pairs.push((geom, u, r.clone()));
    outcome(
        dev <= 1e-6 && mults_ok && u_ok,
        format!("periodic [0,2π]: max dev {dev:.2e} (tol 1e-6), multiplicities {:?} (want [1, 2, 2])", r.multiplicities),
    )
}

fn c4(pairs: &mut Eigenpairs) -> Outcome {
    let geom = Geometry64::interval(0.0, 1.0).unwrap();
    let u = BoundaryUnitary::minus_identity(2);
    let r = scan_spectrum(&geom, &u, -1.0, 50.0, 600).unwrap();
    let zero_ok = !r.is_empty() && r.eigenvalues[0] == 0.0 && r.multiplicities[0] == 2 && r.residuals[0] <= 1e-8;
    let rest: Vec<f64> = r.expanded().into_iter().filter(|&l| l > 0.0).collect();
    let fem = fem_spectrum(&geom, &u, FEM_ELEMENTS, rest.len() + 2).unwrap();
    let fem_zero = fem[0].abs().max(fem[1].abs());
    let dev = max_dev(&rest, &fem[2..]);
    pairs.push((geom, u, r.clone()));
    outcome(
        zero_ok && dev <= 1e-3 && !rest.is_empty(),
        format!(
            "Kreĭn [0,1]: λ=0 multiplicity {} residual {:.1e} (tol 1e-8); {} positive eigenvalues vs FEM max dev {dev:.2e} (tol 1e-3); FEM zero pair {fem_zero:.1e}",
            r.multiplicities.first().copied().unwrap_or(0),
            r.residuals.first().copied().unwrap_or(f64::NAN),
            rest.len()
        ),
    )
}

/// First positive zero of J_0 by bisection on [2, 3].
fn j0_first_zero() -> f64 {
    let (mut lo, mut hi) = (2.0f64, 3.0f64);
    let f = |x: f64| bessel_j(0, x).unwrap();
    assert!(f(lo) > 0.0 && f(hi) < 0.0);
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn c5(pairs: &mut Eigenpairs) -> Outcome {
    let j = j0_first_zero();
    let geom = Geometry64::disk(1.0, 8).unwrap();
    let u = BoundaryUnitary::identity(geom.dim());
    let t = Instant::now();
    let r = scan_spectrum(&geom, &u, -50.0, 20.0, 400).unwrap();
    let dt = t.elapsed();
    let dev = r.eigenvalues.first().map_or(f64::INFINITY, |l| (l - j * j).abs());
    pairs.push((geom, u, r));
    let pass = dev <= 1e-6 && dt < Duration::from_secs(5);
    outcome(pass, format!("disk Dirichlet R=1, N=8: |λ₁ − j₀₁²| = {dev:.2e} (tol 1e-6), {:.1} ms (limit 5 s)", dt.as_secs_f64() * 1e3))
}

fn c6() -> Outcome {
    let geom = Geometry64::interval(0.0, 1.0).unwrap();
    let mut failures = vec![];
    let mut worst = 0.0f64;
    for seed in 0..20u64 {
        let u = random_unitary::<f64>(2, seed).unwrap();
        let fem = fem_spectrum(&geom, &u, FEM_ELEMENTS, 6).unwrap();
        let lo = interval_lower_bound(&geom, &u).unwrap();
        let r = scan_spectrum(&geom, &u, lo, 1.05 * fem[5].abs() + 1.0, 800).unwrap();
        let sec = r.expanded();
        let ok = sec.len() >= 6
            && (0..6).all(|k| {
                let dev = (sec[k] - fem[k]).abs();
                worst = worst.max(dev / comparison_tolerance(fem[k]));
                dev <= comparison_tolerance(fem[k])
            });
        if !ok {
            failures.push(seed);
        }
    }
    outcome(
        failures.is_empty(),
        format!("20 random U(2) on [0,1] vs FEM n=4096: failing seeds {failures:?}; worst dev/tol {worst:.2e} (tol max(1e-3, 5e-3|λ|))"),
    )
}

fn c7() -> Outcome {
    let mut g = rng(7);
    let mut worst_m = 0.0f64;
    for k in 0..100 {
        let d = 1 + k % 9;
        let m = random_hermitian(&mut g, d, 1.0);
        let back = inverse_cayley(&cayley(&m).unwrap(), DEFAULT_TOL_ONE).unwrap();
        worst_m = worst_m.max(frobenius(&(back - m)));
    }
    let mut worst_v = 0.0f64;
    for k in 0..100u64 {
        let d = 1 + (k as usize) % 9;
        let w = random_unitary::<f64>(d, 1000 + k).unwrap();
        // Eigenphases in [0.3, 2π − 0.3] keep the spectrum away from 1.
        let phases: Vec<f64> = (0..d).map(|_| rand::Rng::random_range(&mut g, 0.3..2.0 * PI - 0.3)).collect();
        let diag = CMatrix::from_fn(d, d, |i, j| if i == j { Cplx::from_polar(1.0, phases[i]) } else { Cplx::new(0.0, 0.0) });
        let v = w.matrix() * diag * w.matrix().adjoint();
        let back = cayley(&inverse_cayley(&v, DEFAULT_TOL_ONE).unwrap()).unwrap();
        worst_v = worst_v.max(frobenius(&(back - v)));
    }
    outcome(
        worst_m <= 1e-10 && worst_v <= 1e-10,
        format!("Cayley round trips: Hermitian {worst_m:.2e}, unitary {worst_v:.2e} (tol 1e-10, 100 each)"),
    )
}

fn c8() -> Outcome {
    let mut g = rng(8);
    let (mut worst_p, mut worst_m) = (0.0f64, 0.0f64);
    for k in 0..50 {
        let d = 1 + k % 9;
        let r = rand::Rng::random_range(&mut g, 0..=d);
        let p = random_param(&mut g, d, r);
        let q = unitary_to_param(&param_to_unitary(&p).unwrap(), DEFAULT_TOL_ONE).unwrap();
        worst_p = worst_p.max(projector_distance(p.projector(), q.projector()));
        let dev = max_dev(&sorted_eigenvalues(p.m()), &sorted_eigenvalues(q.m()));
        worst_m = worst_m.max(dev);
    }
    let mut worst_route = 0.0f64;
    let presets = [Preset::Dirichlet, Preset::Neumann, Preset::Robin(0.7), Preset::Robin(-0.4), Preset::Krein, Preset::Periodic];
    for (a, b) in [(0.0, PI), (0.0, 1.0), (-1.0, 2.0)] {
        let geom = Geometry64::interval(a, b).unwrap();
        for p in presets {
            let direct = p.unitary(&geom).unwrap();
            let via_param = param_to_unitary(&p.param(&geom).unwrap()).unwrap();
            let round = param_to_unitary(&unitary_to_param(&direct, DEFAULT_TOL_ONE).unwrap()).unwrap();
            let lo = interval_lower_bound(&geom, &direct).unwrap();
            let base = scan_spectrum(&geom, &direct, lo, 150.0, 600).unwrap().expanded();
            for v in [via_param, round] {
                let other = scan_spectrum(&geom, &v, lo, 150.0, 600).unwrap().expanded();
                worst_route = worst_route.max(max_dev(&base, &other));
            }
        }
    }
    outcome(
        worst_p <= 1e-8 && worst_m <= 1e-8 && worst_route <= 1e-8,
        format!(
            "param ↔ unitary (50 pairs): Π_X {worst_p:.2e}, eig(M) {worst_m:.2e}; preset route spectra {worst_route:.2e} (tol 1e-8)"
        ),
    )
}

fn c9() -> Outcome {
    let mut worst = 0.0f64;
    let mut counts = vec![];
    for geom in [Geometry64::interval(-0.5, 2.0).unwrap(), Geometry64::disk(1.3, 3).unwrap()] {
        let corpus = if geom.is_interval() { interval_corpus(&geom) } else { disk_corpus(&geom) };
        let mut pairs = 0;
        for phi in &corpus {
            for psi in &corpus {
                worst = worst.max(green_identity_check(phi, psi).unwrap());
                pairs += 1;
            }
        }
        counts.push(pairs);
    }
    outcome(
        worst <= 1e-6 && counts.iter().all(|&c| c >= 5),
        format!("Green identity over {counts:?} catalog pairs: max defect {worst:.2e} (tol 1e-6)"),
    )
}

fn c10() -> Outcome {
    let mut worst_gamma = 0.0f64;
    let mut worst_dagger = 0.0f64;
    let mut rank_ok = true;
    for k in 0..50u64 {
        let d = 2 + (k as usize) % 8;
        let u = random_unitary::<f64>(d, 5000 + k).unwrap();
        let w = wu_basis(&u).unwrap();
        rank_ok &= w.rank().unwrap() == d;
        let r = isotropy_report(&w).unwrap();
        rank_ok &= r.certified();
        worst_gamma = worst_gamma.max(r.gamma_max_defect);
        worst_dagger = worst_dagger.max(r.dagger_distance);
    }
    outcome(
        rank_ok && worst_gamma <= 1e-10 && worst_dagger <= 1e-8,
        format!("maximal isotropy (50 unitaries, d=2..9): rank ok {rank_ok}, Γ {worst_gamma:.2e} (tol 1e-10), W† vs W {worst_dagger:.2e} (tol 1e-8)"),
    )
}

fn c11(pairs: &Eigenpairs) -> Outcome {
    let mut worst_form = 0.0f64;
    let mut n = 0;
    for (geom, u, r) in pairs {
        for &l in &r.eigenvalues {
            for st in eigenfunctions(geom, u, l).unwrap() {
                let f = st.to_function().unwrap();
                let t = form_value_state(u, &st).unwrap();
                worst_form = worst_form.max((t - l * f.norm_sq().unwrap()).abs());
                n += 1;
            }
        }
    }
    let mut worst_semi = 0.0f64;
    for geom in [Geometry64::interval(0.0, PI).unwrap(), Geometry64::disk(1.0, 3).unwrap()] {
        let corpus = if geom.is_interval() { interval_corpus(&geom) } else { disk_corpus(&geom) };
        for phi in &corpus {
            worst_semi = worst_semi.max(semi_green_check(phi).unwrap());
        }
    }
    outcome(
        worst_form <= 1e-6 && worst_semi <= 1e-6 && n > 0,
        format!("form vs operator over {n} eigenpairs: {worst_form:.2e}; semi-Green {worst_semi:.2e} (tol 1e-6)"),
    )
}

fn c12() -> Outcome {
    let mut g = rng(12);
    let mut worst = 0.0f64;
    for k in 0..1000u64 {
        let d = 1 + (k as usize) % 9;
        let u = random_unitary::<f64>(d, 9000 + k).unwrap();
        let p = BoundaryPair::new(random_vector(&mut g, d), random_vector(&mut g, d)).unwrap();
        let sum = bc_residual(&u, &p).unwrap().coords() + aim_residual(&u, &p).unwrap().coords();
        worst = worst.max(linalg::vec_norm(&sum) / (1.0 + p.norm()));
    }
    let tol = 8.0 * f64::EPSILON;
    outcome(worst <= tol, format!("bc + aim over 1000 triples: max relative {worst:.2e} (tol 8ε = {tol:.1e})"))
}

fn main() {
    let mut pairs: Eigenpairs = vec![];
    let results = [
        c1(&mut pairs),
        c2(&mut pairs),
        c3(&mut pairs),
        c4(&mut pairs),
        c5(&mut pairs),
        c6(),
        c7(),
        c8(),
        c9(),
        c10(),
        c11(&pairs),
        c12(),
    ];
    let mut failed = 0;
    for (k, r) in results.iter().enumerate() {
        println!("acceptance {:>2}: {} {}", k + 1, if r.pass { "PASS" } else { "FAIL" }, r.detail);
        failed += usize::from(!r.pass);
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
