//! Finite lattice computations: Galois adjoints and duality, orthocomplemented
//! lattices and the dagger calculus, weak adjunctions, closure operators and
//! closure spaces, transition structures over truncated power sets, and
//! state-property constructions. Every construction comes with exhaustive
//! law checks suitable for small instances.

pub mod closure;
pub mod corpus;
pub mod error;
pub mod format;
pub mod lattice;
pub mod maps;
pub mod oracle;
pub mod ortho;
pub mod state;
pub mod shipped;
pub mod suite;
pub mod transition;
pub mod weak;

pub use error::{Error, Result};
pub use lattice::{Elem, Lattice, LatticeRef, Limits};
pub use maps::LatticeMap;
