//! Finite groupoids, group actions and their homotopy quotients, the
//! straightening/unstraightening correspondence, bar-resolution group
//! cohomology over Smith normal form, and anomaly classification via
//! projective representations and twisted group(oid) algebras.
//!
//! Everything is exhaustively checkable: groups are multiplication tables,
//! groupoids store full composition tables, and every equivalence claimed
//! by an operation comes with a witness that the test suite re-verifies.

pub mod action;
pub mod anomaly;
pub mod cohomology;
pub mod error;
pub mod fibration;
pub mod group;
pub mod groupoid;
pub mod linalg;
pub mod oracle;
pub mod rep;
pub mod report;
pub mod snf;
pub mod workspace;

pub use error::Error;

/// Default cap on group orders produced by generator closure.
pub const DEFAULT_MAX_ORDER: usize = 10080;

/// Default cap on functor-enumeration search spaces.
pub const DEFAULT_MAX_ENUM: usize = 500_000;

/// Bounds threaded through enumeration-heavy operations.
#[derive(Debug, Clone, Copy)]
pub struct Bounds {
    pub max_order: usize,
    pub max_enum: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_order: DEFAULT_MAX_ORDER,
            max_enum: DEFAULT_MAX_ENUM,
        }
    }
}
