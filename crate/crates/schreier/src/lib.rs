//! File formats, spec grammars and the command-line front-end for
//! `schreier-core`.

pub mod cli;
pub mod formats;
pub mod specs;
