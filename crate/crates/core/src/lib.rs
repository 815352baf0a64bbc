//! Paraconsistent and paracomplete modal logic over finite topological spaces.
//!
//! Spaces are finite (at most 16 points) and described by their open sets.
//! Formulas are evaluated in one of three modes that differ only in how
//! negation reads: complement, closure of the complement, or interior of
//! the complement.
//!
//! ```
//! use paratopo::{FiniteTopology, Mode, PointSet, TopoModel};
//!
//! let space = FiniteTopology::chain(3);
//! let model = TopoModel::new(space, Mode::Paraconsistent, [("p".into(), PointSet::from([1, 2]))].into()).unwrap();
//! let glut = model.glut_points(&"p".parse().unwrap()).unwrap();
//! assert_eq!(glut, PointSet::from([1, 2]));
//! ```

pub mod bisimulation;
pub mod error;
pub mod formula;
pub mod harness;
pub mod io;
pub mod kripke;
pub mod morphisms;
pub mod pointset;
pub mod semantics;
pub mod topology;

pub use error::{Error, Result};
pub use formula::{parse, Formula, Fragment};
pub use kripke::KripkeModel;
pub use morphisms::PointMap;
pub use pointset::PointSet;
pub use semantics::{Mode, TopoModel, Valuation};
pub use topology::{FiniteTopology, Preorder};
