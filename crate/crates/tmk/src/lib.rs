//! File formats, the bundled corpus, and the command line front end for
//! `tmk-core`.

#![forbid(unsafe_code)]

pub mod cli;
pub mod corpus;
pub mod formats;
