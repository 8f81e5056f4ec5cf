#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use godel_core::corpus::{generate, CorpusKind};
use godel_core::{Context, Instance, OracleConfig, SeqDescriptor, Universe};

/// The default-scale universe, built once per test binary.
pub fn universe() -> Arc<Universe> {
    static U: OnceLock<Arc<Universe>> = OnceLock::new();
    U.get_or_init(|| Arc::new(Universe::build(OracleConfig::default())))
        .clone()
}

pub fn context() -> Context {
    Context::with_universe(universe())
}

pub fn small_universe() -> Arc<Universe> {
    static U: OnceLock<Arc<Universe>> = OnceLock::new();
    U.get_or_init(|| {
        Arc::new(Universe::build(OracleConfig {
            cap: 2000,
            window: 12,
            index_bound: 300,
        }))
    })
    .clone()
}

pub fn seq(x: &Instance) -> &SeqDescriptor {
    match x {
        Instance::Seq(d) | Instance::Bounded(d, _) => d,
        other => panic!("not a sequence instance: {other}"),
    }
}

pub fn sequences(kind: CorpusKind, size: usize, seed: u64, u: &Universe) -> Vec<SeqDescriptor> {
    generate(kind, size, seed, u)
        .instances()
        .iter()
        .map(|x| seq(x).clone())
        .collect()
}

pub fn lit(prefix: &[u64], c: u64) -> SeqDescriptor {
    SeqDescriptor::eventually(prefix.to_vec(), c)
}
