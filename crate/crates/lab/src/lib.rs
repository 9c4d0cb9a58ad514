//! File formats, experiment descriptors and the subcommands behind the
//! `wsp-lab` binary. The numerics live in `wsp-core`.

pub mod commands;
pub mod descriptor;
pub mod instances;
pub mod output;
pub mod parse;
