//! Text formats and command-line front end for `tgx-core`.

pub mod cli;
pub mod format;
