pub mod commands;
pub mod error;
pub mod job;

pub use commands::{run, Report};
pub use error::CliError;
pub use job::{parse_job, parse_spec, Command, Job, JobOptions, JobSpec};
