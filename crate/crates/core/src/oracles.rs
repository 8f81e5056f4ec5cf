//! Capped stand-ins for the halting oracle: halting queries, compatibility,
//! the random set `R` and brute-force minimal indices.
//!
//! Every query runs programs for at most `cap` steps. A capped answer errs
//! in one direction only: a program reported as halting really halts, one
//! reported as running may still halt later.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::numbering::{eval, eval_number, EvalOutcome, ProgramIndex};
use crate::spaces::SeqDescriptor;

/// Budget multiplier for programs outside the universe. Synthesized programs
/// simulate universe programs through `EVB` and need room for that.
pub const SYNTH_FACTOR: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OracleConfig {
    pub cap: u64,
    /// Arguments `0..=window` are checked.
    pub window: u64,
    /// The universe is the indices `0..=index_bound`.
    pub index_bound: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            cap: 10_000,
            window: 32,
            index_bound: 2000,
        }
    }
}

impl OracleConfig {
    /// Step budget used when checking program `i` against a sequence:
    /// `cap` inside the universe, `cap · SYNTH_FACTOR` outside.
    pub fn budget_for(&self, i: &ProgramIndex) -> u64 {
        if i.is_at_most(self.index_bound) {
            self.cap
        } else {
            self.cap.saturating_mul(SYNTH_FACTOR)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompatibilityVerdict {
    Compatible,
    Incompatible { witness_n: u64, v1: u64, v2: u64 },
}

pub fn halts(i: &ProgramIndex, n: u64, cfg: &OracleConfig) -> EvalOutcome {
    eval(i, n, cfg.cap)
}

/// Searches `n <= window` for a point where both halt with different values.
pub fn compatible(i: &ProgramIndex, j: &ProgramIndex, cfg: &OracleConfig) -> CompatibilityVerdict {
    for n in 0..=cfg.window {
        if let (Some(v1), Some(v2)) = (halts(i, n, cfg).value(), halts(j, n, cfg).value()) {
            if v1 != v2 {
                return CompatibilityVerdict::Incompatible { witness_n: n, v1, v2 };
            }
        }
    }
    CompatibilityVerdict::Compatible
}

/// Whether `⟨k, n⟩ ∈ R`: no `i < n` in the universe outputs `n` on `k`.
pub fn in_r(k: u64, n: u64, cfg: &OracleConfig) -> bool {
    let below = n.min(cfg.index_bound.saturating_add(1));
    !(0..below).any(|i| eval_number(i, k, cfg.cap).value() == Some(n))
}

/// Least `n` in `lower..=limit` with `⟨k, n⟩ ∈ R`.
pub fn search_r(k: u64, lower: u64, cfg: &OracleConfig, limit: u64) -> Option<u64> {
    let least = least_producers(k, cfg);
    search_with(&least, lower, limit)
}

fn least_producers(k: u64, cfg: &OracleConfig) -> HashMap<u64, u64> {
    let outputs: Vec<Option<u64>> = (0..=cfg.index_bound)
        .into_par_iter()
        .map(|i| eval_number(i, k, cfg.cap).value())
        .collect();
    let mut least = HashMap::new();
    for (i, v) in outputs.into_iter().enumerate() {
        if let Some(v) = v {
            least.entry(v).or_insert(i as u64);
        }
    }
    least
}

fn search_with(least: &HashMap<u64, u64>, lower: u64, limit: u64) -> Option<u64> {
    (lower..=limit).find(|n| least.get(n).is_none_or(|&i| i >= *n))
}

/// Whether `i` agrees with `d` on `0..=window`, running `i` with
/// [`OracleConfig::budget_for`].
pub fn window_verifies(i: &ProgramIndex, d: &SeqDescriptor, cfg: &OracleConfig) -> bool {
    let Ok(values) = d.values(cfg.window) else {
        return false;
    };
    verifies_values(i, &values, cfg)
}

fn verifies_values(i: &ProgramIndex, values: &[u64], cfg: &OracleConfig) -> bool {
    let budget = cfg.budget_for(i);
    values
        .iter()
        .enumerate()
        .all(|(n, &v)| eval(i, n as u64, budget).value() == Some(v))
}

/// Least universe index that window-verifies `d`.
pub fn min_index(d: &SeqDescriptor, cfg: &OracleConfig) -> Option<u64> {
    let values = d.values(cfg.window).ok()?;
    (0..=cfg.index_bound).find(|&i| verifies_values(&ProgramIndex::new(i), &values, cfg))
}

/// Precomputed universe: the value of every index `<= index_bound` on every
/// argument `<= window`. All answers equal those of the free functions.
pub struct Universe {
    cfg: OracleConfig,
    table: Vec<Option<u64>>,
    compat: OnceLock<Vec<FixedBitSet>>,
    producers: Mutex<HashMap<u64, Arc<HashMap<u64, u64>>>>,
}

impl Universe {
    pub fn build(cfg: OracleConfig) -> Self {
        let width = cfg.window as usize + 1;
        let rows: Vec<Vec<Option<u64>>> = (0..=cfg.index_bound)
            .into_par_iter()
            .map(|i| {
                (0..width as u64)
                    .map(|n| eval_number(i, n, cfg.cap).value())
                    .collect()
            })
            .collect();
        Universe {
            cfg,
            table: rows.into_iter().flatten().collect(),
            compat: OnceLock::new(),
            producers: Mutex::new(HashMap::new()),
        }
    }

    pub fn cfg(&self) -> &OracleConfig {
        &self.cfg
    }

    pub fn size(&self) -> u64 {
        self.cfg.index_bound + 1
    }

    /// Capped values of universe index `i` on `0..=window`.
    pub fn row(&self, i: u64) -> &[Option<u64>] {
        let width = self.cfg.window as usize + 1;
        let start = i as usize * width;
        &self.table[start..start + width]
    }

    /// Value of `i` on `n` under [`OracleConfig::budget_for`].
    pub fn value(&self, i: &ProgramIndex, n: u64) -> Option<u64> {
        match i.as_u64() {
            Some(k) if k <= self.cfg.index_bound && n <= self.cfg.window => self.row(k)[n as usize],
            _ => eval(i, n, self.cfg.budget_for(i)).value(),
        }
    }

    /// Whether `i` halts on every argument of the window.
    pub fn is_total(&self, i: u64) -> bool {
        self.row(i).iter().all(Option::is_some)
    }

    pub fn partial_fraction(&self) -> f64 {
        let partial = (0..self.size()).filter(|&i| !self.is_total(i)).count();
        partial as f64 / self.size() as f64
    }

    pub fn verifies_values(&self, i: &ProgramIndex, values: &[u64]) -> bool {
        match i.as_u64() {
            Some(k) if k <= self.cfg.index_bound && values.len() as u64 <= self.cfg.window + 1 => self
                .row(k)
                .iter()
                .zip(values)
                .all(|(got, want)| *got == Some(*want)),
            _ => verifies_values(i, values, &self.cfg),
        }
    }

    pub fn verifies(&self, i: &ProgramIndex, d: &SeqDescriptor) -> bool {
        match d.values(self.cfg.window) {
            Ok(values) => self.verifies_values(i, &values),
            Err(_) => false,
        }
    }

    /// All universe indices that window-verify `values`, ascending.
    pub fn verifying(&self, values: &[u64]) -> Vec<u64> {
        (0..self.size())
            .filter(|&i| self.verifies_values(&ProgramIndex::new(i), values))
            .collect()
    }

    pub fn min_index_values(&self, values: &[u64]) -> Option<u64> {
        (0..self.size()).find(|&i| self.verifies_values(&ProgramIndex::new(i), values))
    }

    pub fn min_index(&self, d: &SeqDescriptor) -> Option<u64> {
        self.min_index_values(&d.values(self.cfg.window).ok()?)
    }

    /// Pairwise compatibility of universe indices on the window, as bit rows.
    pub fn compat_matrix(&self) -> &[FixedBitSet] {
        self.compat.get_or_init(|| {
            let size = self.size() as usize;
            (0..size)
                .into_par_iter()
                .map(|i| {
                    let mut bits = FixedBitSet::with_capacity(size);
                    let ri = self.row(i as u64);
                    for j in 0..size {
                        let rj = self.row(j as u64);
                        let ok = ri.iter().zip(rj).all(|(a, b)| match (a, b) {
                            (Some(x), Some(y)) => x == y,
                            _ => true,
                        });
                        bits.set(j, ok);
                    }
                    bits
                })
                .collect()
        })
    }

    pub fn compatible(&self, i: u64, j: u64) -> CompatibilityVerdict {
        let (ri, rj) = (self.row(i), self.row(j));
        for (n, (a, b)) in ri.iter().zip(rj).enumerate() {
            if let (Some(v1), Some(v2)) = (*a, *b) {
                if v1 != v2 {
                    return CompatibilityVerdict::Incompatible {
                        witness_n: n as u64,
                        v1,
                        v2,
                    };
                }
            }
        }
        CompatibilityVerdict::Compatible
    }

    fn producers(&self, k: u64) -> Arc<HashMap<u64, u64>> {
        if let Some(p) = self.producers.lock().expect("poisoned").get(&k) {
            return p.clone();
        }
        let least = Arc::new(if k <= self.cfg.window {
            let mut least = HashMap::new();
            for i in 0..self.size() {
                if let Some(v) = self.row(i)[k as usize] {
                    least.entry(v).or_insert(i);
                }
            }
            least
        } else {
            least_producers(k, &self.cfg)
        });
        self.producers
            .lock()
            .expect("poisoned")
            .insert(k, least.clone());
        least
    }

    pub fn in_r(&self, k: u64, n: u64) -> bool {
        self.producers(k).get(&n).is_none_or(|&i| i >= n)
    }

    pub fn search_r(&self, k: u64, lower: u64, limit: u64) -> Option<u64> {
        search_with(&self.producers(k), lower, limit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbering::synth::compile_literal;
    use crate::numbering::{Instruction, Program};
    use crate::spaces::Tail;

    fn small() -> OracleConfig {
        OracleConfig {
            cap: 2000,
            window: 12,
            index_bound: 300,
        }
    }

    #[test]
    fn halting_queries() {
        let cfg = OracleConfig {
            cap: 10,
            ..small()
        };
        assert_eq!(halts(&2.into(), 0, &cfg).value(), Some(1));
        let looping: ProgramIndex = Program::new(vec![Instruction::Jump(0, 0, 0)]).into();
        assert!(!halts(&looping, 0, &OracleConfig { cap: 10_000, ..cfg }).halted());
    }

    #[test]
    fn compatibility_examples() {
        let cfg = small();
        assert_eq!(compatible(&5.into(), &5.into(), &cfg), CompatibilityVerdict::Compatible);
        assert_eq!(
            compatible(&1.into(), &2.into(), &cfg),
            CompatibilityVerdict::Incompatible {
                witness_n: 0,
                v1: 0,
                v2: 1
            }
        );
        for j in 0..40 {
            assert_eq!(compatible(&7.into(), &j.into(), &cfg), CompatibilityVerdict::Compatible);
        }
    }

    #[test]
    fn random_set() {
        let cfg = small();
        for k in 0..5 {
            assert!(in_r(k, 0, &cfg));
            assert_eq!(search_r(k, 0, &cfg, 10), Some(0));
        }
        assert!(in_r(0, 1, &cfg));
        let n = search_r(0, 1, &cfg, 2000).unwrap();
        assert!(n >= 1 && in_r(0, n, &cfg));
    }

    #[test]
    fn minimal_indices() {
        let cfg = small();
        assert_eq!(min_index(&SeqDescriptor::zero(), &cfg), Some(1));
        assert_eq!(min_index(&SeqDescriptor::generated(0, 100), &cfg), Some(0));
        let d = SeqDescriptor::literal(vec![3, 1], Tail::Periodic(vec![4, 0])).unwrap();
        let compiled = compile_literal(&d).unwrap();
        assert!(window_verifies(&compiled, &d, &cfg));
        assert!(min_index(&d, &cfg).is_none_or(|m| compiled.as_u64().is_none_or(|c| m <= c)));
    }

    #[test]
    fn universe_matches_direct_queries() {
        let cfg = small();
        let u = Universe::build(cfg);
        for i in (0..=cfg.index_bound).step_by(7) {
            for n in 0..=cfg.window {
                assert_eq!(u.value(&i.into(), n), halts(&i.into(), n, &cfg).value());
            }
            for j in (0..=cfg.index_bound).step_by(13) {
                let direct = compatible(&i.into(), &j.into(), &cfg);
                assert_eq!(u.compatible(i, j), direct);
                assert_eq!(
                    u.compat_matrix()[i as usize].contains(j as usize),
                    direct == CompatibilityVerdict::Compatible
                );
            }
        }
        for k in [0, 3, cfg.window + 5] {
            for n in [0, 1, 2, 5, 40, 299, 301] {
                assert_eq!(u.in_r(k, n), in_r(k, n, &cfg), "k={k} n={n}");
            }
            assert_eq!(u.search_r(k, 3, 5000), search_r(k, 3, &cfg, 5000));
        }
        for d in [SeqDescriptor::zero(), SeqDescriptor::constant(3), SeqDescriptor::generated(2, 50)] {
            assert_eq!(u.min_index(&d), min_index(&d, &cfg));
        }
    }
}
