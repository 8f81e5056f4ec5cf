//! The shrinking-set learner: start from all indices up to `k`, drop any
//! that disagree with the input, and amalgamate what is left.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::numbering::synth::dovetailer;
use crate::numbering::ProgramIndex;
use crate::oracles::Universe;
use crate::spaces::SeqDescriptor;

use super::pockets::PromiseViolation;
use super::trace::{run_to_limit, GuessStream, GuessTrace};
use super::LearnerConfig;

/// `Σ_{i ∈ A} 2^(k - i)`, the set weight scaled to an integer.
pub fn set_code(set: &BTreeSet<u64>, k: u64) -> BigUint {
    let mut code = BigUint::default();
    for &i in set {
        code.set_bit(k - i, true);
    }
    code
}

pub struct BoundedMinRun {
    pub index: ProgramIndex,
    pub final_set: BTreeSet<u64>,
    /// Set codes, one after each checked position.
    pub trace: GuessTrace<BigUint>,
    pub initial_code: BigUint,
}

pub fn bounded_min_learner(
    p: &SeqDescriptor,
    k: u64,
    universe: &Universe,
    cfg: &LearnerConfig,
) -> Result<BoundedMinRun, PromiseViolation> {
    let ocfg = *universe.cfg();
    let values = p
        .values(ocfg.window)
        .map_err(|_| PromiseViolation::PartialInput)?;
    let k = k.min(ocfg.index_bound);
    let mut set: BTreeSet<u64> = (0..=k).collect();
    let initial_code = set_code(&set, k);
    let mut codes = Vec::new();
    for (n, &expected) in values.iter().enumerate() {
        set.retain(|&i| universe.row(i)[n].is_none_or(|got| got == expected));
        codes.push(set_code(&set, k));
    }
    if set.is_empty() {
        return Err(PromiseViolation::Unverified);
    }
    let members: Vec<u64> = set.iter().copied().collect();
    let index = dovetailer(&members, ocfg.cap);
    if !universe.verifies_values(&index, &values) {
        return Err(PromiseViolation::Unverified);
    }
    let last = codes.last().cloned().unwrap_or_else(|| initial_code.clone());
    let stream = codes.into_iter().chain(std::iter::repeat(last));
    let trace = run_to_limit(&mut GuessStream(stream), cfg.stability_window, cfg.max_steps);
    Ok(BoundedMinRun {
        index,
        final_set: set,
        trace,
        initial_code,
    })
}
