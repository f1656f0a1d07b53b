//! Library side of the `omk` command-line tool: input loading, the job
//! runners behind each subcommand, and the machine/human output forms.
//!
//! Inputs are JSON documents carrying exact values as strings (cyclotomic
//! expressions, rationals `p/q`, motivic weights), never floats. Outputs are
//! deterministic: identical inputs produce byte-identical JSON.

pub mod error;
pub mod jobs;
pub mod loader;

pub use error::CliError;
pub use jobs::{run_job, Job, JobOutput, JobResult};
pub use loader::{load_group_file, load_pair_file, LoadedGroup};
