//! Text format, catalog, reports, layer cache and command line for the
//! dialgebra workbench.

pub mod cache;
pub mod catalog;
pub mod cli;
pub mod input;
pub mod report;
pub mod sexpr;
