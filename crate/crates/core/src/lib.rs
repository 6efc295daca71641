//! Self-adjoint extensions T_U of the Laplacian on an interval or a disk,
//! parametrized by unitaries U on the boundary space.
//!
//! Everything is generic over the scalar type through [`scalar::Real`]
//! (`f32` or `f64`); the aliases below fix the common choices. Tolerances in
//! the documentation refer to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boundary;
pub mod cayley;
pub mod domain;
pub mod error;
pub mod extension;
pub mod forms;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod presets;
pub mod quadrature;
pub mod scalar;
pub mod spectral;

pub use boundary::{BoundaryGeometry, BoundaryUnitary, BoundaryVector};
pub use cayley::SelfAdjointParam;
pub use domain::{CatalogFunction, ModeState};
pub use error::{Error, Result};
pub use extension::{BoundaryPair, IsotropySubspace};
pub use presets::Preset;
pub use scalar::Real;
pub use spectral::SpectrumResult;

pub type Geometry64 = BoundaryGeometry<f64>;
pub type Unitary64 = BoundaryUnitary<f64>;
pub type Vector64 = BoundaryVector<f64>;
pub type Param64 = SelfAdjointParam<f64>;
pub type Pair64 = BoundaryPair<f64>;
pub type Function64 = CatalogFunction<f64>;
pub type ModeState64 = ModeState<f64>;
pub type Spectrum64 = SpectrumResult<f64>;

pub type Geometry32 = BoundaryGeometry<f32>;
pub type Unitary32 = BoundaryUnitary<f32>;
pub type Vector32 = BoundaryVector<f32>;
pub type Param32 = SelfAdjointParam<f32>;
pub type Pair32 = BoundaryPair<f32>;
pub type Function32 = CatalogFunction<f32>;
pub type ModeState32 = ModeState<f32>;
pub type Spectrum32 = SpectrumResult<f32>;
