// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod asymptotics;
pub mod catalog;
pub mod error;
pub mod geometry;
pub mod measure;
pub mod oracles;
pub mod plaplace;
pub mod pmean;
pub mod roots;
pub mod solver;

pub use error::{Error, Result};

pub use asymptotics::{AsymptoticReport, Engine, ExtrapolationModel, Setting, Subject, SweepSettings};
pub use catalog::CatalogField;
pub use measure::{DomainKind, QuadratureRule};
pub use oracles::{FormulaId, OracleParameters, OracleValue};
pub use plaplace::{Geometry, QuadraticProbe, SmoothField};
pub use pmean::{Exponent, PMeanResult, WeightedSamples};
pub use solver::{Domain, GridProblem, GridSolution};
