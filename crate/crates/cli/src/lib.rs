//! Document formats, commands, seeded generators and the batch verifier for
//! the `toric-towers` command-line tool.

pub mod commands;
pub mod document;
pub mod error;
pub mod oracles;
pub mod random;
pub mod report;
pub mod verify;

pub use document::{emit_tower, parse_tower, TowerDocument};
pub use error::CliError;
pub use random::random_tower;
pub use report::{Report, Status};
pub use verify::{run_verify, Suite, VerifyParams};
