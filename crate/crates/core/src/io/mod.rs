//! Input parsing, reports and batch jobs.

pub mod job;
pub mod json;
pub mod report;

pub use job::{run_job, Command, Format, JobOutput, JobSpec, DEFAULT_MAX_DEGREE};
pub use json::{parse_input, to_pretty, Input, SCHEMA_VERSION};
