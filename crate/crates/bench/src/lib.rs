//! Shared fixtures for the benchmarks.

use qwzeta_core::{Graph, GraphFamily};

/// Generates a family member from a spec such as `complete:6`.
pub fn family(spec: &str) -> Graph {
    spec.parse::<GraphFamily>()
        .and_then(|f| f.generate())
        .unwrap_or_else(|e| panic!("{spec}: {e}"))
}
