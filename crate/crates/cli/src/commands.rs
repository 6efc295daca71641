//! The five verbs.

use std::path::{Path, PathBuf};

use bdry_ext_core::boundary::{random_unitary, BoundaryGeometry};
use bdry_ext_core::cayley::{k_u, param_to_unitary, unitary_to_param, SelfAdjointParam};
use bdry_ext_core::domain::{disk_corpus, interval_corpus, CatalogFunction};
use bdry_ext_core::extension::{isotropy_report, wu_basis};
use bdry_ext_core::forms::form_breakdown;
use bdry_ext_core::io::{unitary_from_json, unitary_to_json, MatrixJson, ParamJson};
use bdry_ext_core::oracle::{compare_spectra, fem_spectrum};
use bdry_ext_core::spectral::{eigenfunctions, interval_lower_bound, scan_spectrum_concurrent};
use bdry_ext_core::{linalg, Geometry64, Param64, Preset, Spectrum64, Unitary64};
use serde::Serialize;

use crate::config::RunConfig;
use crate::output::{emit, fmt_f64, json_text, Csv};
use crate::CliError;

pub const DEFAULT_ORACLE_ELEMENTS: usize = 4096;
pub const DEFAULT_ORACLE_COUNT: usize = 6;
const MIN_DEFAULT_GRID: usize = 400;
const MAX_DEFAULT_GRID: usize = 200_000;

pub struct Invocation {
    pub config: RunConfig,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub timestamp: bool,
    pub raw_coords: bool,
}

struct Setup {
    geom: Geometry64,
    unitary: Unitary64,
    /// Present when the input was a parametrization.
    param: Option<Param64>,
}

fn setup(inv: &Invocation) -> Result<Setup, CliError> {
    let cfg = &inv.config;
    let geom: Geometry64 = cfg.geometry.to_geometry()?;
    let d = geom.dim();
    let raw = inv.raw_coords || cfg.raw_coords;
    let ext = &cfg.extension;
    if let Some(name) = &ext.preset {
        return Ok(Setup { unitary: Preset::parse(name, ext.alpha)?.unitary(&geom)?, geom, param: None });
    }
    if let Some(spec) = &ext.random {
        let seed = inv.seed.or(spec.seed).unwrap_or(0);
        return Ok(Setup { unitary: random_unitary(d, seed)?, geom, param: None });
    }
    if let Some(m) = &ext.unitary {
        let unitary = if raw {
            let u = m.to_matrix::<f64>(d)?;
            Unitary64::new(geom.operator_raw_to_hat(&u)?)?
        } else {
            unitary_from_json(m, d)?
        };
        return Ok(Setup { geom, unitary, param: None });
    }
    if let Some(p) = &ext.param {
        let param = if raw { raw_param(&geom, p)? } else { p.to_param(d)? };
        return Ok(Setup { unitary: param_to_unitary(&param)?, geom, param: Some(param) });
    }
    Err(CliError::Config("no extension given".into()))
}

fn raw_param(geom: &Geometry64, p: &ParamJson) -> Result<Param64, CliError> {
    let d = geom.dim();
    let x = match &p.x_basis {
        MatrixJson::Rows(r) if r.len() == d && r.iter().all(Vec::is_empty) => return Ok(SelfAdjointParam::dirichlet(d)),
        other => other.to_matrix::<f64>(d)?,
    };
    let l = p.m.to_matrix::<f64>(x.ncols())?;
    Ok(SelfAdjointParam::from_raw(geom, &x, &l)?)
}

fn default_window(geom: &Geometry64, u: &Unitary64) -> Result<(f64, f64), CliError> {
    Ok(match *geom {
        BoundaryGeometry::Interval { a, b } => {
            let l = b - a;
            (interval_lower_bound(geom, u)?, (10.0 * std::f64::consts::PI / l).powi(2))
        }
        BoundaryGeometry::Disk { radius, .. } => (-2500.0 / (radius * radius), 100.0 / (radius * radius)),
    })
}

/// Grid fine enough for eight samples per expected root spacing π/L in s.
fn default_grid(geom: &Geometry64, window: (f64, f64)) -> usize {
    let length = match *geom {
        BoundaryGeometry::Interval { a, b } => b - a,
        BoundaryGeometry::Disk { radius, .. } => radius,
    };
    let s = |l: f64| l.signum() * l.abs().sqrt();
    let span = s(window.1) - s(window.0);
    let spacing = std::f64::consts::PI / length / 8.0;
    ((span / spacing).ceil() as usize).clamp(MIN_DEFAULT_GRID, MAX_DEFAULT_GRID)
}

/// `forced` overrides the configured window.
fn run_scan(inv: &Invocation, s: &Setup, forced: Option<(f64, f64)>) -> Result<Spectrum64, CliError> {
    let opts = &inv.config.spectrum;
    let window = match (forced, opts.window) {
        (Some(w), _) => w,
        (None, Some([lo, hi])) => (lo, hi),
        (None, None) => default_window(&s.geom, &s.unitary)?,
    };
    let grid = opts.grid.unwrap_or_else(|| default_grid(&s.geom, window));
    let workers = opts.workers.unwrap_or(1).max(1);
    log::info!("scanning [{}, {}] on {grid} points", window.0, window.1);
    Ok(scan_spectrum_concurrent(&s.geom, &s.unitary, window.0, window.1, grid, workers)?)
}

fn spectrum_csv(timestamp: bool, r: &Spectrum64) -> String {
    let mut csv = Csv::new(timestamp, "bdry-ext spectrum", &["index", "eigenvalue", "multiplicity", "residual"]);
    for i in 0..r.len() {
        csv.row(&[i.to_string(), fmt_f64(r.eigenvalues[i]), r.multiplicities[i].to_string(), fmt_f64(r.residuals[i])]);
    }
    csv.into_string()
}

pub fn spectrum(inv: &Invocation) -> Result<(), CliError> {
    let s = setup(inv)?;
    let r = run_scan(inv, &s, None)?;
    emit(inv.out.as_deref(), &spectrum_csv(inv.timestamp, &r))
}

#[derive(Serialize)]
struct KReport {
    /// Orthonormal basis of Ran Q_U.
    q_basis: MatrixJson,
    #[serde(rename = "K")]
    k: MatrixJson,
}

#[derive(Serialize)]
struct ConvertReport {
    unitary: MatrixJson,
    param: ParamJson,
    k_u: KReport,
    /// ‖U − U(param(U))‖ for unitary input, ‖Π_X − Π_X'‖ for param input.
    round_trip_defect: f64,
}

pub fn convert(inv: &Invocation) -> Result<(), CliError> {
    let s = setup(inv)?;
    let tol = inv.config.tolerances.tol_one;
    let (param, defect) = match &s.param {
        Some(p) => {
            let back = unitary_to_param(&s.unitary, tol)?;
            let d = linalg::projector_distance(p.projector(), back.projector());
            (back, d)
        }
        None => {
            let p = unitary_to_param(&s.unitary, tol)?;
            let back = param_to_unitary(&p)?;
            let d = linalg::frobenius(&(back.matrix() - s.unitary.matrix()));
            (p, d)
        }
    };
    let form = k_u(&s.unitary, tol)?;
    let report = ConvertReport {
        unitary: unitary_to_json(&s.unitary),
        param: ParamJson::from_param(&param),
        k_u: KReport { q_basis: MatrixJson::from_matrix(&form.basis), k: MatrixJson::from_matrix(&form.k) },
        round_trip_defect: defect,
    };
    emit(inv.out.as_deref(), &json_text(&report)?)
}

#[derive(Serialize)]
struct CertificateReport {
    isotropy: bool,
    dim: usize,
    gamma_max_defect: f64,
    isotropic: bool,
    maximal: bool,
    expected_dim: usize,
    dagger_distance: f64,
}

pub fn check_sa(inv: &Invocation) -> Result<(), CliError> {
    let s = setup(inv)?;
    let r = isotropy_report(&wu_basis(&s.unitary)?)?;
    let report = CertificateReport {
        isotropy: r.certified(),
        dim: r.dim,
        gamma_max_defect: r.gamma_max_defect,
        isotropic: r.isotropic,
        maximal: r.maximal,
        expected_dim: r.expected_dim,
        dagger_distance: r.dagger_distance,
    };
    emit(inv.out.as_deref(), &json_text(&report)?)
}

#[derive(Serialize)]
struct FormReport {
    function: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<f64>,
    #[serde(rename = "t_U")]
    t_u: f64,
    dirichlet_part: f64,
    boundary_part: f64,
    domain_ok: bool,
    norm_sq: f64,
}

fn catalog(geom: &Geometry64) -> Vec<CatalogFunction<f64>> {
    if geom.is_interval() {
        interval_corpus(geom)
    } else {
        disk_corpus(geom)
    }
}

pub fn form(inv: &Invocation) -> Result<(), CliError> {
    let s = setup(inv)?;
    let opts = inv.config.form.as_ref().ok_or_else(|| CliError::Config("`form` section is required".into()))?;
    let (psi, lambda) = if let Some(name) = &opts.function {
        let all = catalog(&s.geom);
        let names: Vec<String> = all.iter().map(|f| f.name().to_string()).collect();
        let f = all
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| CliError::Config(format!("unknown catalog function `{name}`; available: {}", names.join(", "))))?;
        (f, None)
    } else {
        let k = opts.eigen_index.unwrap_or(0);
        let r = run_scan(inv, &s, None)?;
        let mut seen = 0;
        let mut hit = None;
        for (i, &m) in r.multiplicities.iter().enumerate() {
            if k < seen + m {
                hit = Some((r.eigenvalues[i], k - seen));
                break;
            }
            seen += m;
        }
        let (lambda, slot) = hit.ok_or_else(|| {
            CliError::Config(format!("eigen_index {k} exceeds the {seen} eigenvalues found in the window"))
        })?;
        let states = eigenfunctions(&s.geom, &s.unitary, lambda)?;
        let st = states.get(slot).or_else(|| states.last()).ok_or_else(|| CliError::Check("empty eigenspace".into()))?;
        (st.to_function()?.with_name(format!("eigenfunction {k}")), Some(lambda))
    };
    let b = form_breakdown(&s.unitary, &psi)?;
    let report = FormReport {
        function: psi.name().to_string(),
        lambda,
        t_u: b.t_u,
        dirichlet_part: b.dirichlet_part,
        boundary_part: b.boundary_part,
        domain_ok: b.domain_ok,
        norm_sq: psi.norm_sq()?,
    };
    emit(inv.out.as_deref(), &json_text(&report)?)
}

fn report_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".report.json");
    PathBuf::from(name)
}

pub fn oracle(inv: &Invocation) -> Result<(), CliError> {
    let s = setup(inv)?;
    let n = inv.config.oracle.elements.unwrap_or(DEFAULT_ORACLE_ELEMENTS);
    let count = inv.config.oracle.count.unwrap_or(DEFAULT_ORACLE_COUNT);
    let fem = fem_spectrum(&s.geom, &s.unitary, n, count)?;
    let lower = interval_lower_bound(&s.geom, &s.unitary)?;
    let upper = fem.last().map_or(1.0, |&l| 1.05 * l.abs() + 1.0);
    let secular = run_scan(inv, &s, Some((lower, upper)))?;
    let report = compare_spectra(&secular, &fem, count)?;

    let expanded = secular.expanded();
    let mut csv = Csv::new(inv.timestamp, "bdry-ext oracle", &["index", "eigenvalue", "multiplicity", "residual"]);
    for (i, &l) in fem.iter().enumerate() {
        csv.row(&[i.to_string(), fmt_f64(l), "1".into(), fmt_f64((l - expanded[i]).abs())]);
    }
    emit(inv.out.as_deref(), &csv.into_string())?;
    let text = json_text(&report)?;
    match &inv.out {
        Some(out) => emit(Some(&report_path(out)), &text)?,
        None => eprint!("{text}"),
    }
    if !report.pass {
        return Err(CliError::Check("FEM oracle and secular solver disagree".into()));
    }
    Ok(())
}
