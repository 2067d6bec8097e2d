//! Diameter-avoiding subsets of the signed ternary sets `L(m, k, l)`.

pub mod bitset;
pub mod canon;
pub mod diamgraph;
pub mod error;
pub mod families;
pub mod johnson;
pub mod lattice;
pub mod solver;
pub mod verify;

pub use diamgraph::{BipartiteView, DiameterGraph};
pub use error::Error;
pub use lattice::{Signature, TritVector};

/// Library version, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
