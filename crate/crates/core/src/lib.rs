//! Sidon spaces over finite-field towers and the cyclic constant-dimension
//! codes built from them.
//!
//! Quick tour:
//!
//! ```
//! use sidon_codes::{ConstructionParams, FieldTower, Params2, verify_construction};
//!
//! let t = FieldTower::with_q(2, 2, 8).unwrap();
//! let p = ConstructionParams::Two(Params2::new(&t, 2).unwrap());
//! let gens = p.enumerate(&t).unwrap();
//! let report = verify_construction(&t, &p, &gens).unwrap();
//! assert!(report.certified());
//! assert_eq!(report.total_size.to_string(), "765");
//! ```

mod bigint_str;
pub mod bounds;
pub mod constructions;
mod error;
pub mod field;
pub mod genfile;
mod linalg;
mod poly;
pub mod sidon;
pub mod subspace;
pub mod verify;

pub use bounds::{gaussian_binomial, size_formula, sphere_packing, table_row, BoundRow};
pub use constructions::{
    ConstructionParams, Family, GeneratorMeta, GeneratorRecord, Params1, Params2,
};
pub use error::{Error, Result};
pub use field::{FieldDescription, FieldElement, FieldTower, Level, TowerConfig};
pub use genfile::GeneratorFile;
pub use sidon::{ProjectivePoint, ShiftCheck};
pub use subspace::{Orbit, Subspace, SubspaceJson};
pub use verify::{
    materialize_code, min_distance_exhaustive, verify_code, verify_construction, CodeReport, Step,
};
