//! Skew category algebras `A x_sigma G` of finite category dynamical systems.
//!
//! A finite category `G` acts contravariantly on finite discrete spaces; the
//! coefficient rings are the functions on those spaces. The crate builds the
//! algebra, computes commutants and ideals exactly, and checks how
//! topological freeness, maximal commutativity of `A` and the ideal
//! intersection property relate on concrete instances.

pub mod analysis;
pub mod category;
pub mod coeff;
pub mod dynsys;
pub mod error;
pub mod instances;
pub mod linalg;
pub mod nmonoid;
pub mod reproduce;
pub mod skewalg;

pub use analysis::{FnAlgebra, LinearModel, TheoremOptions, TheoremVerdict};
pub use category::{CategoryBuilder, FinCategory, MorphismId, ObjectId};
pub use coeff::{FnRingElem, FormalElem, FormalSystem, FunctionRingSpec, Scalar, ScalarKind};
pub use dynsys::{FinDynSys, PartialSystem, PointSet};
pub use error::{Error, Result};
pub use linalg::SubspaceBasis;
pub use skewalg::{SkewAlgebra, SkewElem, SkewSystem};
