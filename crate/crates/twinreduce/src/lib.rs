//! File formats, small-graph enumeration, seeded instances and the
//! verification suites behind the `twinreduce` command.

pub mod enumerate;
pub mod formats;
pub mod planar;
pub mod random;
pub mod report;
pub mod suites;

pub use report::VerifyReport;
pub use suites::{run_suite, Suite};
