//! Enumerating every index whenever it validates a longer prefix; the least
//! index that keeps reappearing is the minimal one.

use crate::oracles::Universe;
use crate::spaces::SeqDescriptor;

pub struct LiminfRun {
    /// Stage `t` (from 1) lists the indices validating positions `0..t`.
    pub stages: Vec<Vec<u64>>,
}

impl LiminfRun {
    /// Least index emitted at each stage.
    pub fn least(&self) -> Vec<Option<u64>> {
        self.stages.iter().map(|s| s.first().copied()).collect()
    }

    pub fn final_least(&self) -> Option<u64> {
        self.stages.last().and_then(|s| s.first().copied())
    }
}

/// Runs stages `1..=window + 1`; `None` if `p` is undefined on the window.
pub fn kol_liminf_enumerator(p: &SeqDescriptor, universe: &Universe) -> Option<LiminfRun> {
    let values = p.values(universe.cfg().window).ok()?;
    let mut alive: Vec<u64> = (0..universe.size()).collect();
    let mut stages = Vec::new();
    for (n, &v) in values.iter().enumerate() {
        alive.retain(|&i| universe.row(i)[n] == Some(v));
        stages.push(alive.clone());
    }
    Some(LiminfRun { stages })
}
