//! Exact computations for curves on rational ACM surfaces: divisor classes,
//! elementary biliaison and Gorenstein linkage, Hilbert-function
//! combinatorics for points, and breadth-first searches over linkage moves.

pub mod catalog;
pub mod curves;
pub mod experiments;
pub mod glicci;
pub mod hilbert;
pub mod lattice;
pub mod liaison;
pub mod par;
pub mod report;
pub mod search;

pub use catalog::{Catalog, SurfaceModel};
pub use curves::{CurveRecord, RaoKind, RaoTag};
pub use hilbert::HVector;
pub use lattice::{Basis, DivisorClass, Polarized};
pub use par::Parallelism;
pub use report::ExperimentReport;
