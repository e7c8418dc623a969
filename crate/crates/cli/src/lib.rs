//! Batch driver: JSON job specifications in, cohomology reports out.

pub mod demos;
pub mod job;
pub mod report;
pub mod spec;

pub use demos::demo;
pub use job::{run_job, BAR_ORACLE_BUDGET};
pub use report::{CheckResult, Report, Status};
pub use spec::{parse_spec, CheckName, JobSpec, SpecError};
