//! JSON forms of geometries, unitaries and (X, M) parametrizations.
//!
//! Complex matrices are arrays of rows of `[re, im]` pairs; a flat row-major
//! list of pairs is accepted for square matrices.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::boundary::{BoundaryGeometry, BoundaryUnitary};
use crate::cayley::SelfAdjointParam;
use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, CMatrix, Cplx, Real};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GeometryJson {
    Interval {
        a: f64,
        b: f64,
    },
    Disk {
        #[serde(rename = "R")]
        radius: f64,
        #[serde(rename = "N")]
        cutoff: usize,
    },
}

impl GeometryJson {
    pub fn to_geometry<T: Real>(&self) -> Result<BoundaryGeometry<T>> {
        match *self {
            Self::Interval { a, b } => BoundaryGeometry::interval(lit(a), lit(b)),
            Self::Disk { radius, cutoff } => BoundaryGeometry::disk(lit(radius), cutoff),
        }
    }

    pub fn from_geometry<T: Real>(geom: &BoundaryGeometry<T>) -> Self {
        match *geom {
            BoundaryGeometry::Interval { a, b } => Self::Interval { a: to_f64(a), b: to_f64(b) },
            BoundaryGeometry::Disk { radius, cutoff } => Self::Disk { radius: to_f64(radius), cutoff },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixJson {
    Rows(Vec<Vec<[f64; 2]>>),
    Flat(Vec<[f64; 2]>),
}

impl MatrixJson {
    pub fn from_matrix<T: Real>(m: &CMatrix<T>) -> Self {
        Self::Rows(
            (0..m.nrows())
                .map(|r| (0..m.ncols()).map(|c| [to_f64(m[(r, c)].re), to_f64(m[(r, c)].im)]).collect())
                .collect(),
        )
    }

    /// Dense matrix with `rows` rows; `rows` also fixes the shape of flat input
    /// and of empty row lists.
    pub fn to_matrix<T: Real>(&self, rows: usize) -> Result<CMatrix<T>> {
        let c = |p: &[f64; 2]| Cplx::new(lit::<T>(p[0]), lit::<T>(p[1]));
        match self {
            Self::Rows(data) => {
                if data.len() != rows {
                    return Err(Error::DimensionMismatch { expected: rows, got: data.len() });
                }
                let cols = data.first().map_or(0, Vec::len);
                if data.iter().any(|r| r.len() != cols) {
                    return Err(Error::Parse("ragged matrix rows".into()));
                }
                Ok(DMatrix::from_fn(rows, cols, |r, k| c(&data[r][k])))
            }
            Self::Flat(data) => {
                if data.is_empty() && rows == 0 {
                    return Ok(DMatrix::zeros(0, 0));
                }
                if rows == 0 || data.len() % rows != 0 {
                    return Err(Error::Parse(format!("{} entries do not fill {rows} rows", data.len())));
                }
                let cols = data.len() / rows;
                Ok(DMatrix::from_fn(rows, cols, |r, k| c(&data[r * cols + k])))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamJson {
    #[serde(rename = "X_basis")]
    pub x_basis: MatrixJson,
    #[serde(rename = "M")]
    pub m: MatrixJson,
}

impl ParamJson {
    pub fn to_param<T: Real>(&self, d: usize) -> Result<SelfAdjointParam<T>> {
        let x: CMatrix<T> = match &self.x_basis {
            // d rows of zero columns serialize as d empty arrays
            MatrixJson::Rows(r) if r.len() == d && r.iter().all(Vec::is_empty) => DMatrix::zeros(d, 0),
            other => other.to_matrix(d)?,
        };
        let m: CMatrix<T> = if x.ncols() == 0 { DMatrix::zeros(0, 0) } else { self.m.to_matrix(x.ncols())? };
        if m.ncols() != x.ncols() {
            return Err(Error::DimensionMismatch { expected: x.ncols(), got: m.ncols() });
        }
        SelfAdjointParam::new(x, m)
    }

    pub fn from_param<T: Real>(p: &SelfAdjointParam<T>) -> Self {
        Self { x_basis: MatrixJson::from_matrix(p.basis()), m: MatrixJson::from_matrix(p.m()) }
    }
}

pub fn unitary_from_json<T: Real>(m: &MatrixJson, d: usize) -> Result<BoundaryUnitary<T>> {
    let u = m.to_matrix::<T>(d)?;
    if u.ncols() != d {
        return Err(Error::DimensionMismatch { expected: d, got: u.ncols() });
    }
    BoundaryUnitary::new(u)
}

pub fn unitary_to_json<T: Real>(u: &BoundaryUnitary<T>) -> MatrixJson {
    MatrixJson::from_matrix(u.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::random_unitary;
    use crate::cayley::{param_to_unitary, unitary_to_param};
    use crate::linalg;

    #[test]
    fn geometry_json() {
        let g: GeometryJson = serde_json::from_str(r#"{"kind":"interval","a":0.0,"b":3.141592653589793}"#).unwrap();
        assert_eq!(g.to_geometry::<f64>().unwrap(), BoundaryGeometry::interval(0.0, std::f64::consts::PI).unwrap());
        let d: GeometryJson = serde_json::from_str(r#"{"kind":"disk","R":1.0,"N":8}"#).unwrap();
        assert_eq!(d.to_geometry::<f64>().unwrap().dim(), 17);
        assert!(serde_json::from_str::<GeometryJson>(r#"{"kind":"disk","R":1.0}"#).is_err());
        let bad: GeometryJson = serde_json::from_str(r#"{"kind":"interval","a":1.0,"b":0.0}"#).unwrap();
        assert!(bad.to_geometry::<f64>().is_err());
        let back = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<GeometryJson>(&back).unwrap(), d);
    }

    #[test]
    fn unitary_round_trip() {
        let u = random_unitary::<f64>(3, 4).unwrap();
        let text = serde_json::to_string(&unitary_to_json(&u)).unwrap();
        let back = unitary_from_json::<f64>(&serde_json::from_str(&text).unwrap(), 3).unwrap();
        assert_eq!(back, u);
        let flat: MatrixJson = serde_json::from_str("[[0,0],[-1,0],[-1,0],[0,0]]").unwrap();
        let p = unitary_from_json::<f64>(&flat, 2).unwrap();
        assert_eq!(p.matrix()[(0, 1)], Cplx::new(-1.0, 0.0));
        let bad: MatrixJson = serde_json::from_str("[[1,0],[0.5,0],[0,0],[1,0]]").unwrap();
        assert!(unitary_from_json::<f64>(&bad, 2).is_err());
    }

    #[test]
    fn param_round_trip() {
        let u = random_unitary::<f64>(4, 8).unwrap();
        let p = unitary_to_param(&u, 1e-9).unwrap();
        let text = serde_json::to_string(&ParamJson::from_param(&p)).unwrap();
        let back = serde_json::from_str::<ParamJson>(&text).unwrap().to_param::<f64>(4).unwrap();
        let u2 = param_to_unitary(&back).unwrap();
        assert!(linalg::frobenius(&(u2.into_matrix() - u.into_matrix())) < 1e-12);

        let dir = SelfAdjointParam::<f64>::dirichlet(2);
        let text = serde_json::to_string(&ParamJson::from_param(&dir)).unwrap();
        let back = serde_json::from_str::<ParamJson>(&text).unwrap().to_param::<f64>(2).unwrap();
        assert_eq!(back.rank(), 0);
    }
}
