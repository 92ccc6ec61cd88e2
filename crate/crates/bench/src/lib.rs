//! Shared setup for the benchmarks: fixture loading by name.

use std::path::PathBuf;

use algmatroid::{AnyProblem, Result};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.problem"))
}

pub fn fixture(name: &str) -> Result<AnyProblem> {
    AnyProblem::read(fixture_path(name))
}
