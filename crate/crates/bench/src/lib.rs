//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use godel_core::corpus::{generate, CorpusKind};
use godel_core::{Instance, OracleConfig, SeqDescriptor, Universe};

/// A universe small enough to rebuild inside a benchmark loop.
pub fn bench_config() -> OracleConfig {
    OracleConfig {
        cap: 2_000,
        window: 16,
        index_bound: 400,
    }
}

pub fn universe() -> Arc<Universe> {
    Arc::new(Universe::build(bench_config()))
}

pub fn total_sequences(u: &Universe, size: usize) -> Vec<SeqDescriptor> {
    generate(CorpusKind::TotalPrograms, size, 1, u)
        .instances()
        .into_iter()
        .filter_map(|x| match x {
            Instance::Seq(d) => Some(d),
            _ => None,
        })
        .collect()
}
