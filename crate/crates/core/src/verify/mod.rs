//! Checks of the gluing statements, independent oracles, and random instances.

pub mod checks;
pub mod fuzz;
pub mod oracle;
pub mod random;

pub use checks::{run_all, run_check, run_checks, CheckId, CheckReport, GluingContext, Status};
