//! Identification by enumeration: try candidates in order, abandoning each
//! at its first disagreement with the input.

use std::sync::Arc;

use serde::Serialize;

use crate::numbering::looplang::LoopClass;
use crate::numbering::{eval, ProgramIndex};
use crate::oracles::Universe;
use crate::spaces::SeqDescriptor;

use super::trace::{run_to_limit, GuessTrace, LimitLearner, Step};
use super::LearnerConfig;

/// Candidate programs, in the order they are tried.
#[derive(Clone)]
pub enum CandidateClass {
    /// Every universe index.
    Full,
    /// Compiled LOOP programs.
    Total(Arc<LoopClass>),
}

/// Why a candidate was abandoned.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub candidate: String,
    pub n: u64,
    pub expected: u64,
    /// `None` when the candidate did not halt within the cap.
    pub got: Option<u64>,
}

pub struct EnumLearner<'a> {
    universe: &'a Universe,
    values: Vec<u64>,
    class: CandidateClass,
    position: usize,
    n: u64,
    witnesses: Vec<Disagreement>,
}

impl<'a> EnumLearner<'a> {
    /// `None` when `p` is undefined somewhere on the window.
    pub fn new(p: &SeqDescriptor, class: CandidateClass, universe: &'a Universe) -> Option<Self> {
        Some(EnumLearner {
            values: p.values(universe.cfg().window).ok()?,
            universe,
            class,
            position: 0,
            n: 0,
            witnesses: Vec::new(),
        })
    }

    pub fn witnesses(&self) -> &[Disagreement] {
        &self.witnesses
    }

    fn candidate(&self) -> Option<ProgramIndex> {
        match &self.class {
            CandidateClass::Full => {
                let i = self.position as u64;
                (i <= self.universe.cfg().index_bound).then(|| ProgramIndex::new(i))
            }
            CandidateClass::Total(class) => class.indices().get(self.position).cloned(),
        }
    }

    fn value(&self, i: &ProgramIndex, n: u64) -> Option<u64> {
        match self.class {
            CandidateClass::Full => self.universe.value(i, n),
            // Compiled LOOP code needs at most three machine steps per host
            // operation; the cap bounds host operations.
            CandidateClass::Total(_) => {
                eval(i, n, self.universe.cfg().cap.saturating_mul(3)).value()
            }
        }
    }
}

impl LimitLearner for EnumLearner<'_> {
    type Guess = ProgramIndex;

    fn step(&mut self) -> Step<ProgramIndex> {
        let Some(i) = self.candidate() else {
            return Step::Exhausted;
        };
        // Beyond the window there is nothing left to check.
        let Some(&expected) = self.values.get(self.n as usize) else {
            return Step::Emit(i);
        };
        let got = self.value(&i, self.n);
        if got == Some(expected) {
            self.n += 1;
            Step::Emit(i)
        } else {
            self.witnesses.push(Disagreement {
                candidate: i.to_string(),
                n: self.n,
                expected,
                got,
            });
            self.position += 1;
            self.n = 0;
            Step::Silent
        }
    }
}

pub struct EnumRun {
    pub trace: GuessTrace<ProgramIndex>,
    pub witnesses: Vec<Disagreement>,
}

pub fn enum_learner(
    p: &SeqDescriptor,
    class: CandidateClass,
    universe: &Universe,
    cfg: &LearnerConfig,
) -> Option<EnumRun> {
    let mut learner = EnumLearner::new(p, class, universe)?;
    let trace = run_to_limit(&mut learner, cfg.stability_window, cfg.max_steps);
    Some(EnumRun {
        trace,
        witnesses: learner.witnesses,
    })
}
