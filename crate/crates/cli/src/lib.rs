//! Batch front end for `kbg-core`: JSON spec files in, deterministic JSON
//! reports out.

pub mod compute;
pub mod error;
pub mod selfcheck;
pub mod specfile;

pub use compute::{compute, render, ComputeReport};
pub use error::{exit, CliError};
pub use selfcheck::{selfcheck, Fault, SelfcheckOptions, SelfcheckReport};
pub use specfile::{parse_spec, SpecFile};
