//! Text formats, reports and the command line for graded Lie algebra
//! computations built on `kla-core`.

pub mod cli;
pub mod frontend;
pub mod report;
