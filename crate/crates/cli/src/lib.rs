//! Command-line front end for the `gsb` workbench.

pub mod app;
pub mod presentation;

pub use app::run;
