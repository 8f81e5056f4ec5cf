//! Corpus files: one instance per line, plus deterministic generators.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::oracles::Universe;
use crate::problems::{Instance, Problem};
use crate::spaces::{split_fields, Family, SeqDescriptor, Tail};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub problem: Problem,
    pub instance: Instance,
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "problem={} {}", self.problem.name(), self.instance)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct CorpusError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Corpus {
    pub entries: Vec<Entry>,
}

fn parse_entry(text: &str) -> Result<Entry, String> {
    let fields = split_fields(text);
    let (head, mut rest) = fields.split_first().ok_or("empty line")?;
    let name = head
        .strip_prefix("problem=")
        .ok_or_else(|| format!("expected problem=<name>, got {head:?}"))?;
    let problem = Problem::from_name(name).ok_or_else(|| format!("unknown problem {name:?}"))?;
    let mut family = None;
    if let Some(kind) = rest.first().and_then(|f| f.strip_prefix("family=")) {
        family = Some(kind.to_string());
        rest = &rest[1..];
    }
    let mut bound = None;
    if let Some(m) = rest.last().and_then(|f| f.strip_prefix("m=")) {
        bound = Some(m.parse::<u64>().map_err(|_| format!("not a number: {m:?}"))?);
        rest = &rest[..rest.len() - 1];
    }
    let descriptors = rest
        .split(|f| f == ";")
        .map(|group| SeqDescriptor::from_fields(group).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let instance = match (family.as_deref(), bound) {
        (None, m) => {
            let [d] = <[SeqDescriptor; 1]>::try_from(descriptors)
                .map_err(|_| "a single sequence expected; use family= for lists".to_string())?;
            match m {
                Some(m) => Instance::Bounded(d, m),
                None => Instance::Seq(d),
            }
        }
        (Some(_), Some(_)) => return Err("families take no bound".into()),
        (Some("tupled"), None) => {
            let [d] = <[SeqDescriptor; 1]>::try_from(descriptors)
                .map_err(|_| "a tupled family is one sequence".to_string())?;
            Instance::Family(Family::Tupled(d))
        }
        (Some("finite"), None) => Instance::Family(Family::Finite(descriptors)),
        (Some("stable"), None) => Instance::Family(Family::Stable(descriptors)),
        (Some(other), _) => return Err(format!("unknown family kind {other:?}")),
    };
    Ok(Entry { problem, instance })
}

impl FromStr for Corpus {
    type Err = CorpusError;

    /// Blank lines and lines starting with `#` are ignored.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut entries = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let entry = parse_entry(line).map_err(|message| CorpusError { line: k + 1, message })?;
            entries.push(entry);
        }
        Ok(Corpus { entries })
    }
}

impl fmt::Display for Corpus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

impl Corpus {
    pub fn instances(&self) -> Vec<Instance> {
        self.entries.iter().map(|e| e.instance.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CorpusKind {
    /// Universe indices that are total on the window.
    TotalPrograms,
    /// Literals with constant or periodic tails.
    LiteralSequences,
    /// Non-decreasing eventually constant literals.
    BoundedMonotone,
    /// `0̂` and sequences with a first nonzero value.
    LpoMixed,
    /// Countable and finite families of literals.
    Families,
}

impl CorpusKind {
    pub const ALL: [CorpusKind; 5] = [
        CorpusKind::TotalPrograms,
        CorpusKind::LiteralSequences,
        CorpusKind::BoundedMonotone,
        CorpusKind::LpoMixed,
        CorpusKind::Families,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CorpusKind::TotalPrograms => "total-programs",
            CorpusKind::LiteralSequences => "literal-sequences",
            CorpusKind::BoundedMonotone => "bounded-monotone",
            CorpusKind::LpoMixed => "lpo-mixed",
            CorpusKind::Families => "families",
        }
    }

    pub fn from_name(name: &str) -> Option<CorpusKind> {
        CorpusKind::ALL.into_iter().find(|k| k.name() == name)
    }
}

impl fmt::Display for CorpusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn values(rng: &mut ChaCha8Rng, len: usize, max: u64) -> Vec<u64> {
    (0..len).map(|_| rng.gen_range(0..=max)).collect()
}

fn random_literal(rng: &mut ChaCha8Rng) -> SeqDescriptor {
    let len = rng.gen_range(0..=6);
    let prefix = values(rng, len, 9);
    if rng.gen_bool(0.5) {
        SeqDescriptor::eventually(prefix, rng.gen_range(0..=9))
    } else {
        let wlen = rng.gen_range(2..=3);
        let word = values(rng, wlen, 9);
        SeqDescriptor::literal(prefix, Tail::Periodic(word)).expect("nonempty word")
    }
}

fn monotone_literal(rng: &mut ChaCha8Rng) -> SeqDescriptor {
    let len = rng.gen_range(1..=8);
    let mut steps = values(rng, len, 5);
    let mut acc = 0;
    for v in steps.iter_mut() {
        acc += *v;
        *v = acc;
    }
    let last = *steps.last().expect("nonempty");
    SeqDescriptor::eventually(steps, last)
}

fn lpo_literal(rng: &mut ChaCha8Rng, k: usize) -> SeqDescriptor {
    if k.is_multiple_of(2) {
        return SeqDescriptor::zero();
    }
    let zeros = rng.gen_range(0..=10);
    let mut prefix = vec![0; zeros];
    prefix.push(rng.gen_range(1..=9));
    let more = rng.gen_range(0..=3);
    prefix.extend(values(rng, more, 9));
    SeqDescriptor::eventually(prefix, rng.gen_range(0..=9))
}

fn family_entry(rng: &mut ChaCha8Rng, k: usize) -> Entry {
    let list = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(1..=3);
        (0..n).map(|_| random_literal(rng)).collect::<Vec<_>>()
    };
    match k % 3 {
        0 => Entry {
            problem: Problem::GHat,
            instance: Instance::Family(Family::Tupled(random_literal(rng))),
        },
        1 => Entry {
            problem: Problem::GHat,
            instance: Instance::Family(Family::Stable(list(rng))),
        },
        _ => Entry {
            problem: Problem::GStar,
            instance: Instance::Family(Family::Finite(list(rng))),
        },
    }
}

/// A deterministic corpus of `size` instances.
pub fn generate(kind: CorpusKind, size: usize, seed: u64, universe: &Universe) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq = |problem, d| Entry {
        problem,
        instance: Instance::Seq(d),
    };
    let entries = match kind {
        CorpusKind::TotalPrograms => {
            let total: Vec<u64> = (0..universe.size()).filter(|&i| universe.is_total(i)).collect();
            let cap = universe.cfg().cap;
            let mut picks: Vec<u64> = total.choose_multiple(&mut rng, size.min(total.len())).copied().collect();
            while picks.len() < size && !total.is_empty() {
                picks.push(*total.choose(&mut rng).expect("nonempty"));
            }
            picks
                .into_iter()
                .map(|i| seq(Problem::Kol, SeqDescriptor::generated(i, cap)))
                .collect()
        }
        CorpusKind::LiteralSequences => (0..size)
            .map(|_| {
                let d = random_literal(&mut rng);
                let problem = if d.limit().is_some() { Problem::LimN } else { Problem::LiminfN };
                seq(problem, d)
            })
            .collect(),
        CorpusKind::BoundedMonotone => (0..size).map(|_| seq(Problem::B, monotone_literal(&mut rng))).collect(),
        CorpusKind::LpoMixed => (0..size).map(|k| seq(Problem::Lpo, lpo_literal(&mut rng, k))).collect(),
        CorpusKind::Families => (0..size).map(|k| family_entry(&mut rng, k)).collect(),
    };
    Corpus { entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_round_trip() {
        let text = "problem=lim_n lit prefix=1,2 tail=const:3\n\
                    # comment\n\
                    problem=k_n lit tail=per:0,1 m=4\n\
                    problem=gstar family=finite lit tail=const:1 ; gen index=2 budget=9\n";
        let corpus: Corpus = text.parse().unwrap();
        assert_eq!(corpus.len(), 3);
        let again: Corpus = corpus.to_string().parse().unwrap();
        assert_eq!(again, corpus);
    }

    #[test]
    fn errors_name_the_line() {
        let err = "problem=lim_n lit tail=const:1\nproblem=nope lit tail=const:1"
            .parse::<Corpus>()
            .unwrap_err();
        assert_eq!(err.line, 2);
        let err = "problem=lim_n lit tail=bogus".parse::<Corpus>().unwrap_err();
        assert_eq!(err.line, 1);
    }
}
