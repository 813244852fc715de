//! File formats, reports and the `gvc` command-line tool on top of
//! [`gvc_core`].

pub mod commands;
pub mod format;
pub mod lpfile;
pub mod report;
pub mod verify;

pub use format::{parse, serialize, FormatError, InstanceFile, Problem};
pub use report::RunReport;
