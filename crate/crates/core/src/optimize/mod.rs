//! Certified maximization of the objectives over `D1`: interval
//! branch-and-bound, Newton refinement of interior critical points, exact
//! root isolation and the boundary analysis.

pub mod bnb;
pub mod boundary;
pub mod monotone;
pub mod newton;
pub mod roots;

pub use bnb::{branch_and_bound_max, maximize, BnbConfig, BnbError, BoundedObjective, CertifiedBound, ConstantObjective};
pub use boundary::{boundary_scan, BoundaryReport, EdgeMax, ScanMethod};
pub use monotone::{certify_monotone_negative, MonotoneError};
pub use newton::{multi_start, refine_critical_point, CriticalKind, CriticalPoint, NewtonError};
pub use roots::{isolate_roots, Polynomial, RootError, RootInterval};
