//! Adversarial checking of reduction witnesses: every enumerated inner
//! answer must be turned into a verifying outer answer.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::numbering::synth::postcompose_succ;
use crate::numbering::ProgramIndex;
use crate::problems::{Answer, Context, Instance, Problem};

pub type Preprocess = Arc<dyn Fn(&Instance, &Context) -> Result<Instance, String> + Send + Sync>;
pub type Postprocess =
    Arc<dyn Fn(&Instance, &Answer, &Context) -> Result<Answer, String> + Send + Sync>;

/// A deliberately broken variant of a reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MutantMode {
    /// The post-processor ignores the inner answer and returns zero.
    ConstantAnswer,
    /// Numbers are incremented; indices compute the successor of their value.
    OffByOne,
    /// Numbers and plain indices are decremented.
    ShiftDown,
    /// The pre-processor is replaced by a naive one.
    DropPreprocessing,
}

impl MutantMode {
    pub const ALL: [MutantMode; 4] = [
        MutantMode::ConstantAnswer,
        MutantMode::OffByOne,
        MutantMode::ShiftDown,
        MutantMode::DropPreprocessing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MutantMode::ConstantAnswer => "constant-answer",
            MutantMode::OffByOne => "off-by-one",
            MutantMode::ShiftDown => "shift-down",
            MutantMode::DropPreprocessing => "drop-preprocessing",
        }
    }

    pub fn from_name(name: &str) -> Option<MutantMode> {
        MutantMode::ALL.into_iter().find(|m| m.name() == name)
    }
}

impl fmt::Display for MutantMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Witness of `f ≤_W g`: `K` maps `f`-instances to `g`-instances and `H`
/// maps an `f`-instance with a `g`-answer to an `f`-answer.
#[derive(Clone)]
pub struct ReductionPair {
    pub name: String,
    pub f: Problem,
    pub g: Problem,
    pub k: Preprocess,
    pub h: Postprocess,
    /// What `K` degrades to under [`MutantMode::DropPreprocessing`].
    pub naive_k: Preprocess,
    /// Modes this reduction is expected to be sensitive to.
    pub mutants: Vec<MutantMode>,
}

fn constant_like(a: &Answer) -> Answer {
    match a {
        Answer::Nat(_) => Answer::Nat(0),
        Answer::Index(_) => Answer::Index(ProgramIndex::new(0)),
        Answer::Indices(v) => Answer::Indices(vec![ProgramIndex::new(0); v.len()]),
    }
}

fn off_by_one(a: &Answer) -> Answer {
    match a {
        Answer::Nat(n) => Answer::Nat(n.saturating_add(1)),
        Answer::Index(i) => Answer::Index(postcompose_succ(i)),
        Answer::Indices(v) => Answer::Indices(v.iter().map(postcompose_succ).collect()),
    }
}

fn shift_down(a: &Answer) -> Answer {
    let down = |i: &ProgramIndex| match i.as_u64() {
        Some(n) => ProgramIndex::new(n.saturating_sub(1)),
        None => i.clone(),
    };
    match a {
        Answer::Nat(n) => Answer::Nat(n.saturating_sub(1)),
        Answer::Index(i) => Answer::Index(down(i)),
        Answer::Indices(v) => Answer::Indices(v.iter().map(down).collect()),
    }
}

pub fn mutate(r: &ReductionPair, mode: MutantMode) -> ReductionPair {
    let mut m = r.clone();
    m.name = format!("{}~{}", r.name, mode);
    let h = r.h.clone();
    match mode {
        MutantMode::DropPreprocessing => m.k = r.naive_k.clone(),
        MutantMode::ConstantAnswer => {
            m.h = Arc::new(move |x, a, cx| h(x, a, cx).map(|out| constant_like(&out)))
        }
        MutantMode::OffByOne => m.h = Arc::new(move |x, a, cx| h(x, a, cx).map(|out| off_by_one(&out))),
        MutantMode::ShiftDown => m.h = Arc::new(move |x, a, cx| h(x, a, cx).map(|out| shift_down(&out))),
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Preprocessing { message: String },
    OutsideInnerDomain { inner_instance: String },
    /// The inner problem has no enumerable answers, so nothing was tested.
    NoInnerAnswers { inner_instance: String },
    Postprocessing { inner_answer: String, message: String },
    Unverified { inner_answer: String, outer_answer: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceRecord {
    pub id: usize,
    pub instance: String,
    pub pass: bool,
    /// Outside the outer problem's domain; not checked.
    pub skipped: bool,
    pub inner_instance: Option<String>,
    pub inner_answers_tried: usize,
    /// Distinct outer answers produced, at most [`MAX_LISTED`].
    pub outer_answers: Vec<String>,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub reduction: String,
    pub corpus: String,
    pub instances: Vec<InstanceRecord>,
    pub checked: usize,
    pub skipped: usize,
    /// Every produced outer answer verified again in a second pass.
    pub reverified: bool,
    pub pass: bool,
}

impl ReductionReport {
    pub fn witnesses(&self) -> impl Iterator<Item = (usize, &Witness)> {
        self.instances
            .iter()
            .flat_map(|r| r.witnesses.iter().map(move |w| (r.id, w)))
    }
}

pub const MAX_LISTED: usize = 16;
const MAX_WITNESSES: usize = 8;

struct Outcome {
    record: InstanceRecord,
    produced: Vec<Answer>,
}

fn check_one(r: &ReductionPair, id: usize, x: &Instance, cx: &Context) -> Outcome {
    let mut record = InstanceRecord {
        id,
        instance: x.to_string(),
        pass: true,
        skipped: false,
        inner_instance: None,
        inner_answers_tried: 0,
        outer_answers: Vec::new(),
        witnesses: Vec::new(),
    };
    let mut produced = Vec::new();
    if !r.f.domain_check(x, cx) {
        record.skipped = true;
        return Outcome { record, produced };
    }
    let y = match (r.k)(x, cx) {
        Ok(y) => y,
        Err(message) => {
            record.pass = false;
            record.witnesses.push(Witness::Preprocessing { message });
            return Outcome { record, produced };
        }
    };
    let inner = y.to_string();
    record.inner_instance = Some(inner.clone());
    if !r.g.domain_check(&y, cx) {
        record.pass = false;
        record.witnesses.push(Witness::OutsideInnerDomain { inner_instance: inner });
        return Outcome { record, produced };
    }
    let answers = r.g.enumerate_answers(&y, cx);
    record.inner_answers_tried = answers.len();
    if answers.is_empty() {
        record.pass = false;
        record.witnesses.push(Witness::NoInnerAnswers { inner_instance: inner });
        return Outcome { record, produced };
    }
    let mut listed = BTreeSet::new();
    for a in &answers {
        let witness = match (r.h)(x, a, cx) {
            Err(message) => Some(Witness::Postprocessing {
                inner_answer: a.to_string(),
                message,
            }),
            Ok(out) => {
                let ok = r.f.verify(x, &out, cx);
                if listed.len() < MAX_LISTED {
                    listed.insert(out.to_string());
                }
                let w = (!ok).then(|| Witness::Unverified {
                    inner_answer: a.to_string(),
                    outer_answer: out.to_string(),
                });
                produced.push(out);
                w
            }
        };
        if let Some(w) = witness {
            record.pass = false;
            if record.witnesses.len() < MAX_WITNESSES {
                record.witnesses.push(w);
            }
        }
    }
    record.outer_answers = listed.into_iter().collect();
    Outcome { record, produced }
}

/// Checks `r` on every corpus instance against every enumerated inner answer.
pub fn check_reduction(
    r: &ReductionPair,
    corpus: &[Instance],
    corpus_name: &str,
    cx: &Context,
) -> ReductionReport {
    let outcomes: Vec<Outcome> = corpus
        .par_iter()
        .enumerate()
        .map(|(id, x)| check_one(r, id, x, cx))
        .collect();
    let pass = outcomes.iter().all(|o| o.record.pass);
    let reverified = pass
        && outcomes
            .par_iter()
            .zip(corpus)
            .all(|(o, x)| o.produced.iter().all(|a| r.f.verify(x, a, cx)));
    let instances: Vec<InstanceRecord> = outcomes.into_iter().map(|o| o.record).collect();
    let skipped = instances.iter().filter(|r| r.skipped).count();
    ReductionReport {
        reduction: r.name.clone(),
        corpus: corpus_name.to_string(),
        checked: instances.len() - skipped,
        skipped,
        reverified,
        pass: pass && reverified,
        instances,
    }
}

/// `f ≤ f` with `K` and `H` passing things through.
pub fn identity(f: Problem) -> ReductionPair {
    let k: Preprocess = Arc::new(|x, _| Ok(x.clone()));
    ReductionPair {
        name: format!("identity:{}", f.name()),
        f,
        g: f,
        k: k.clone(),
        h: Arc::new(|_, a, _| Ok(a.clone())),
        naive_k: k,
        mutants: vec![MutantMode::ConstantAnswer, MutantMode::OffByOne],
    }
}
