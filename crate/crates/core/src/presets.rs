//! Named boundary conditions.
//!
//! Robin uses the convention νψ + αγψ = 0, i.e. the regular normal derivative
//! is Lγψ with L = −(DtN + α). In hat coordinates that reads μ̂ = Mĝ with
//! M = W L W, W = diag((1+λ_j)^{1/4}).

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::boundary::{BoundaryGeometry, BoundaryUnitary};
use crate::cayley::{param_to_unitary, SelfAdjointParam};
use crate::domain::dtn;
use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, CMatrix, Cplx, Real};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Preset {
    Dirichlet,
    Neumann,
    Robin(f64),
    Krein,
    Periodic,
}

impl Preset {
    /// `alpha` is required for `robin` and ignored otherwise; `robin(α)`
    /// carries it in the name.
    pub fn parse(name: &str, alpha: Option<f64>) -> Result<Self> {
        let lower = name.trim().to_ascii_lowercase();
        if let Some(inner) = lower.strip_prefix("robin(").and_then(|r| r.strip_suffix(')')) {
            if alpha.is_some() {
                return Err(Error::InvalidParameter("robin(α) given together with `alpha`".into()));
            }
            let a: f64 = inner
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad Robin parameter in `{name}`")))?;
            return Ok(Self::Robin(a));
        }
        match lower.as_str() {
            "dirichlet" => Ok(Self::Dirichlet),
            "neumann" => Ok(Self::Neumann),
            "robin" => alpha
                .map(Self::Robin)
                .ok_or_else(|| Error::InvalidParameter("robin preset needs `alpha`".into())),
            "krein" | "kreĭn" => Ok(Self::Krein),
            "periodic" => Ok(Self::Periodic),
            _ => Err(Error::UnknownPreset(name.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Dirichlet => "dirichlet",
            Self::Neumann => "neumann",
            Self::Robin(_) => "robin",
            Self::Krein => "krein",
            Self::Periodic => "periodic",
        }
    }

    /// The (X, M) parametrization of the preset.
    pub fn param<T: Real>(&self, geom: &BoundaryGeometry<T>) -> Result<SelfAdjointParam<T>> {
        let d = geom.dim();
        match *self {
            Self::Dirichlet => Ok(SelfAdjointParam::dirichlet(d)),
            Self::Krein => SelfAdjointParam::full(DMatrix::zeros(d, d)),
            Self::Neumann => SelfAdjointParam::full(robin_m(geom, T::zero())),
            Self::Robin(alpha) => SelfAdjointParam::full(robin_m(geom, lit(alpha))),
            Self::Periodic => {
                if !geom.is_interval() {
                    return Err(Error::InvalidGeometry("the periodic preset needs an interval".into()));
                }
                let s: T = lit(0.5f64.sqrt());
                let x = DMatrix::from_element(2, 1, Cplx::new(s, T::zero()));
                SelfAdjointParam::new(x, DMatrix::zeros(1, 1))
            }
        }
    }

    pub fn unitary<T: Real>(&self, geom: &BoundaryGeometry<T>) -> Result<BoundaryUnitary<T>> {
        match self {
            Self::Dirichlet => Ok(BoundaryUnitary::identity(geom.dim())),
            Self::Krein => Ok(BoundaryUnitary::minus_identity(geom.dim())),
            _ => param_to_unitary(&self.param(geom)?),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Robin(alpha) => write!(f, "robin({alpha})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, None)
    }
}

fn robin_m<T: Real>(geom: &BoundaryGeometry<T>, alpha: T) -> CMatrix<T> {
    let d = geom.dim();
    let l = -(dtn(geom) + DMatrix::from_diagonal_element(d, d, Cplx::new(alpha, T::zero())));
    let w = geom.sobolev_weights(lit(0.5));
    DMatrix::from_fn(d, d, |i, j| l[(i, j)].scale(w[i] * w[j]))
}

/// Unitary of preset `name`; `alpha` parametrizes `robin`.
pub fn preset<T: Real>(name: &str, geom: &BoundaryGeometry<T>, alpha: Option<T>) -> Result<BoundaryUnitary<T>> {
    Preset::parse(name, alpha.map(to_f64))?.unitary(geom)
}
