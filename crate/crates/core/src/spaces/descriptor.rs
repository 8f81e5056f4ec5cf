//! Finitely presented sequences.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::numbering::{eval, Program, ProgramIndex};

/// The tail of a literal sequence, repeated forever after the prefix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tail {
    Constant(u64),
    Periodic(Vec<u64>),
}

impl Tail {
    pub fn word(&self) -> &[u64] {
        match self {
            Tail::Constant(c) => std::slice::from_ref(c),
            Tail::Periodic(w) => w,
        }
    }
}

/// A point of Baire space given by finite data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SeqDescriptor {
    /// `prefix` followed by the tail rule; always total.
    Literal { prefix: Vec<u64>, tail: Tail },
    /// `n ↦ φ_index(n)`, evaluated with a fixed step budget.
    Generated { index: ProgramIndex, budget: u64 },
}

/// A query that did not finish within the descriptor's budget.
#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("undefined at {position} within budget {budget}")]
pub struct Partial {
    pub position: u64,
    pub budget: u64,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DescriptorError {
    #[error("periodic tail needs a nonempty word")]
    EmptyPeriod,
    #[error("bad descriptor: {0}")]
    Syntax(String),
}

impl SeqDescriptor {
    /// Literal `prefix · tail`, in canonical (shortest) form.
    pub fn literal(prefix: Vec<u64>, tail: Tail) -> Result<Self, DescriptorError> {
        if tail.word().is_empty() {
            return Err(DescriptorError::EmptyPeriod);
        }
        Ok(canonical(prefix, tail.word().to_vec()))
    }

    /// The constant sequence `ĉ`.
    pub fn constant(c: u64) -> Self {
        SeqDescriptor::Literal {
            prefix: Vec::new(),
            tail: Tail::Constant(c),
        }
    }

    pub fn zero() -> Self {
        SeqDescriptor::constant(0)
    }

    /// `prefix` followed by `ĉ`.
    pub fn eventually(prefix: Vec<u64>, c: u64) -> Self {
        canonical(prefix, vec![c])
    }

    pub fn generated(index: impl Into<ProgramIndex>, budget: u64) -> Self {
        SeqDescriptor::Generated {
            index: index.into(),
            budget,
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, SeqDescriptor::Literal { .. })
    }

    pub fn get(&self, n: u64) -> Result<u64, Partial> {
        match self {
            SeqDescriptor::Literal { prefix, tail } => Ok(literal_at(prefix, tail.word(), n)),
            SeqDescriptor::Generated { index, budget } => {
                eval(index, n, *budget).value().ok_or(Partial {
                    position: n,
                    budget: *budget,
                })
            }
        }
    }

    /// Values at `0..=last`.
    pub fn values(&self, last: u64) -> Result<Vec<u64>, Partial> {
        (0..=last).map(|n| self.get(n)).collect()
    }

    /// Literal data: prefix and tail word.
    pub fn literal_parts(&self) -> Option<(&[u64], &[u64])> {
        match self {
            SeqDescriptor::Literal { prefix, tail } => Some((prefix, tail.word())),
            SeqDescriptor::Generated { .. } => None,
        }
    }

    /// Exact range of a literal.
    pub fn range(&self) -> Option<BTreeSet<u64>> {
        let (prefix, word) = self.literal_parts()?;
        Some(prefix.iter().chain(word).copied().collect())
    }

    /// Values occurring infinitely often in a literal.
    pub fn cluster_points(&self) -> Option<BTreeSet<u64>> {
        let (_, word) = self.literal_parts()?;
        Some(word.iter().copied().collect())
    }

    /// Limit of an eventually constant literal.
    pub fn limit(&self) -> Option<u64> {
        match self {
            SeqDescriptor::Literal {
                tail: Tail::Constant(c),
                ..
            } => Some(*c),
            _ => None,
        }
    }

    /// Whether a literal is `0̂`.
    pub fn is_zero_literal(&self) -> Option<bool> {
        let (prefix, word) = self.literal_parts()?;
        Some(prefix.iter().chain(word).all(|&v| v == 0))
    }

    /// The subsequence `n ↦ self(a·n + b)` of a literal, for `a >= 1`.
    pub fn subsequence(&self, a: u64, b: u64) -> Option<SeqDescriptor> {
        assert!(a >= 1);
        let (prefix, word) = self.literal_parts()?;
        let len = prefix.len() as u64;
        let start = if len > b { (len - b).div_ceil(a) } else { 0 };
        let period = word.len() as u64;
        let at = |n: u64| literal_at(prefix, word, a * n + b);
        let new_prefix = (0..start).map(at).collect();
        let new_word = (start..start + period).map(at).collect();
        Some(canonical(new_prefix, new_word))
    }

    /// Length of the prefix after which a literal is periodic.
    pub fn settled_after(&self) -> Option<u64> {
        let (prefix, _) = self.literal_parts()?;
        Some(prefix.len() as u64)
    }
}

fn literal_at(prefix: &[u64], word: &[u64], n: u64) -> u64 {
    let len = prefix.len() as u64;
    if n < len {
        prefix[n as usize]
    } else {
        word[((n - len) % word.len() as u64) as usize]
    }
}

fn canonical(mut prefix: Vec<u64>, mut word: Vec<u64>) -> SeqDescriptor {
    let w = word.len();
    if let Some(p) = (1..=w).find(|&p| w.is_multiple_of(p) && (p..w).all(|k| word[k] == word[k - p])) {
        word.truncate(p);
    }
    while let Some(&last) = prefix.last() {
        if last != *word.last().expect("nonempty word") {
            break;
        }
        prefix.pop();
        word.rotate_right(1);
    }
    let tail = if word.len() == 1 {
        Tail::Constant(word[0])
    } else {
        Tail::Periodic(word)
    };
    SeqDescriptor::Literal { prefix, tail }
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for SeqDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqDescriptor::Literal { prefix, tail } => {
                write!(f, "lit ")?;
                if !prefix.is_empty() {
                    write!(f, "prefix={} ", join(prefix))?;
                }
                match tail {
                    Tail::Constant(c) => write!(f, "tail=const:{c}"),
                    Tail::Periodic(w) => write!(f, "tail=per:{}", join(w)),
                }
            }
            SeqDescriptor::Generated { index, budget } => match index {
                ProgramIndex::Number(n) => write!(f, "gen index={n} budget={budget}"),
                ProgramIndex::Code(_) => write!(
                    f,
                    "gen program=\"{}\" budget={budget}",
                    index.decode().to_inline()
                ),
            },
        }
    }
}

/// Splits on whitespace, keeping double-quoted stretches together.
pub(crate) fn split_fields(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    for ch in text.chars() {
        match ch {
            '"' => {
                quoted = !quoted;
                cur.push(ch);
            }
            c if c.is_whitespace() && !quoted => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn parse_list(text: &str) -> Result<Vec<u64>, DescriptorError> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| DescriptorError::Syntax(format!("not a number: {v:?}")))
        })
        .collect()
}

fn parse_num(text: &str) -> Result<u64, DescriptorError> {
    text.parse()
        .map_err(|_| DescriptorError::Syntax(format!("not a number: {text:?}")))
}

impl SeqDescriptor {
    /// Parses a descriptor from whitespace-split fields.
    pub fn from_fields(fields: &[String]) -> Result<Self, DescriptorError> {
        let (kind, rest) = fields
            .split_first()
            .ok_or_else(|| DescriptorError::Syntax("empty descriptor".into()))?;
        let mut prefix = None;
        let mut tail = None;
        let mut index = None;
        let mut budget = None;
        for field in rest {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| DescriptorError::Syntax(format!("expected key=value, got {field:?}")))?;
            match (kind.as_str(), key) {
                ("lit", "prefix") => prefix = Some(parse_list(value)?),
                ("lit", "tail") => {
                    tail = Some(if let Some(c) = value.strip_prefix("const:") {
                        Tail::Constant(parse_num(c)?)
                    } else if let Some(w) = value.strip_prefix("per:") {
                        Tail::Periodic(parse_list(w)?)
                    } else {
                        return Err(DescriptorError::Syntax(format!("bad tail {value:?}")));
                    })
                }
                ("gen", "index") => index = Some(ProgramIndex::new(parse_num(value)?)),
                ("gen", "program") => {
                    let text = value.trim_matches('"');
                    let program = Program::parse(text)
                        .map_err(|e| DescriptorError::Syntax(e.to_string()))?;
                    index = Some(ProgramIndex::encode(program));
                }
                ("gen", "budget") => budget = Some(parse_num(value)?),
                _ => return Err(DescriptorError::Syntax(format!("unexpected field {field:?}"))),
            }
        }
        match kind.as_str() {
            "lit" => {
                let tail = tail.ok_or_else(|| DescriptorError::Syntax("missing tail".into()))?;
                SeqDescriptor::literal(prefix.unwrap_or_default(), tail)
            }
            "gen" => Ok(SeqDescriptor::Generated {
                index: index.ok_or_else(|| DescriptorError::Syntax("missing index".into()))?,
                budget: budget.ok_or_else(|| DescriptorError::Syntax("missing budget".into()))?,
            }),
            other => Err(DescriptorError::Syntax(format!("unknown descriptor kind {other:?}"))),
        }
    }
}

impl FromStr for SeqDescriptor {
    type Err = DescriptorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SeqDescriptor::from_fields(&split_fields(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lit(prefix: &[u64], word: &[u64]) -> SeqDescriptor {
        let tail = if word.len() == 1 {
            Tail::Constant(word[0])
        } else {
            Tail::Periodic(word.to_vec())
        };
        SeqDescriptor::literal(prefix.to_vec(), tail).unwrap()
    }

    #[test]
    fn queries() {
        assert_eq!(lit(&[4], &[1]).get(0), Ok(4));
        assert_eq!(lit(&[], &[2, 3]).get(5), Ok(3));
        assert_eq!(lit(&[1, 2, 3], &[7]).get(2), Ok(3));
        assert_eq!(lit(&[1, 2, 3], &[7]).get(5), Ok(7));
        let looping = SeqDescriptor::generated(7, 10);
        assert_eq!(
            looping.get(0),
            Err(Partial {
                position: 0,
                budget: 10
            })
        );
        assert_eq!(SeqDescriptor::generated(2, 10).get(4), Ok(5));
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(lit(&[5, 5, 3], &[3]), lit(&[5, 5], &[3]));
        assert_eq!(lit(&[0, 1], &[0, 1, 0, 1]), lit(&[], &[0, 1]));
        assert_eq!(lit(&[], &[2, 2, 2]), SeqDescriptor::constant(2));
        assert!(SeqDescriptor::literal(vec![], Tail::Periodic(vec![])).is_err());
    }

    #[test]
    fn text_round_trip() {
        for text in [
            "lit prefix=1,2,3 tail=const:7",
            "lit tail=per:0,1",
            "gen index=412 budget=1000",
        ] {
            let d: SeqDescriptor = text.parse().unwrap();
            assert_eq!(d.to_string(), text);
        }
        let big = SeqDescriptor::generated(crate::numbering::synth::constant(1000), 50);
        let back: SeqDescriptor = big.to_string().parse().unwrap();
        assert_eq!(back, big);
        assert!("lit prefix=1".parse::<SeqDescriptor>().is_err());
        assert!("gen index=x budget=1".parse::<SeqDescriptor>().is_err());
        assert!("foo".parse::<SeqDescriptor>().is_err());
    }

    #[test]
    fn ranges_and_limits() {
        let d = lit(&[9], &[1, 2]);
        assert_eq!(d.cluster_points().unwrap(), BTreeSet::from([1, 2]));
        assert_eq!(d.range().unwrap(), BTreeSet::from([1, 2, 9]));
        assert_eq!(d.limit(), None);
        assert_eq!(lit(&[5, 5, 3], &[3]).limit(), Some(3));
        assert_eq!(lit(&[0, 0], &[0]).is_zero_literal(), Some(true));
        assert_eq!(lit(&[0, 0, 1], &[0]).is_zero_literal(), Some(false));
    }

    fn arb_literal() -> impl Strategy<Value = SeqDescriptor> {
        (
            prop::collection::vec(0u64..6, 0..6),
            prop::collection::vec(0u64..6, 1..4),
        )
            .prop_map(|(p, w)| lit(&p, &w))
    }

    proptest! {
        #[test]
        fn canonical_form_preserves_values(p in prop::collection::vec(0u64..4, 0..6),
                                           w in prop::collection::vec(0u64..4, 1..5)) {
            let d = lit(&p, &w);
            for n in 0..40u64 {
                prop_assert_eq!(d.get(n).unwrap(), literal_at(&p, &w, n));
            }
        }

        #[test]
        fn subsequences_agree(d in arb_literal(), a in 1u64..4, b in 0u64..4) {
            let s = d.subsequence(a, b).unwrap();
            for n in 0..30u64 {
                prop_assert_eq!(s.get(n).unwrap(), d.get(a * n + b).unwrap());
            }
        }

        #[test]
        fn display_parses_back(d in arb_literal()) {
            let back: SeqDescriptor = d.to_string().parse().unwrap();
            prop_assert_eq!(back, d);
        }
    }
}
