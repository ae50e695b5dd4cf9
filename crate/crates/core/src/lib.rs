//! Exact computation of the rationalized topological K-theory of classifying
//! spaces of discrete groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`permgroup`]: permutation groups, conjugacy classes, Sylow subgroups
//! * [`cyclotomic`]: exact arithmetic in cyclotomic fields
//! * [`chartab`]: character tables by Dixon's method, induction and restriction
//! * [`zlattice`]: Hermite and Smith normal forms, lattice arithmetic
//! * [`repring`]: representation rings, augmentation ideals and their verifiers
//! * [`promod`]: truncated inverse systems, pro-isomorphisms, `lim` and `lim^1`
//! * [`cohom`]: rational cohomology inputs for the infinite group families
//! * [`assemble`]: the final per-parity result

pub mod arith;
pub mod assemble;
pub mod chartab;
pub mod cohom;
pub mod cyclotomic;
pub mod error;
pub mod groups;
pub mod permgroup;
pub mod promod;
pub mod qlinalg;
pub mod report;
pub mod repring;
pub mod zlattice;

pub use error::{Error, Result};
