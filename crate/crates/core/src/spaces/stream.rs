//! Stream views: pairing, tupling and projection of sequences.

use std::sync::Arc;

use crate::numbering::unpair;

use super::descriptor::{Partial, SeqDescriptor};

/// A countable or finite family of sequences.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `⟨p₀, p₁, …⟩` given as one sequence: `p_n(k) = d(pair(n, k))`.
    Tupled(SeqDescriptor),
    /// Finitely many sequences.
    Finite(Vec<SeqDescriptor>),
    /// `p_n = seqs[min(n, len - 1)]`, a countable family that is eventually
    /// constant in `n`.
    Stable(Vec<SeqDescriptor>),
}

impl Family {
    pub fn component(&self, n: u64) -> StreamView {
        match self {
            Family::Tupled(d) => project(&StreamView::Desc(d.clone()), n),
            Family::Finite(list) => match list.get(n as usize) {
                Some(d) => StreamView::Desc(d.clone()),
                None => StreamView::Desc(SeqDescriptor::zero()),
            },
            Family::Stable(list) => {
                let k = (n as usize).min(list.len().saturating_sub(1));
                StreamView::Desc(list[k].clone())
            }
        }
    }

    /// Number of components, `None` for countable families.
    pub fn len(&self) -> Option<usize> {
        match self {
            Family::Finite(list) => Some(list.len()),
            _ => None,
        }
    }
}

/// Query interface over a descriptor or a derived transform.
#[derive(Clone)]
pub enum StreamView {
    Desc(SeqDescriptor),
    /// `⟨p, q⟩(2n) = p(n)`, `⟨p, q⟩(2n + 1) = q(n)`.
    Pair(Arc<StreamView>, Arc<StreamView>),
    /// `⟨p₀, p₁, …⟩(pair(n, k)) = p_n(k)`.
    Tuple(Arc<Family>),
    /// `t(0) = len`, `t(1 + k·len + j) = p_j(k)`.
    FiniteTuple(Arc<Vec<StreamView>>),
    /// `k ↦ s(pair(n, k))`.
    Project(Arc<StreamView>, u64),
    Fn(Arc<dyn Fn(u64) -> Result<u64, Partial> + Send + Sync>),
}

impl std::fmt::Debug for StreamView {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StreamView::Desc(d) => write!(f, "Desc({d})"),
            StreamView::Pair(a, b) => write!(f, "Pair({a:?}, {b:?})"),
            StreamView::Tuple(fam) => write!(f, "Tuple({fam:?})"),
            StreamView::FiniteTuple(v) => write!(f, "FiniteTuple({v:?})"),
            StreamView::Project(s, n) => write!(f, "Project({s:?}, {n})"),
            StreamView::Fn(_) => write!(f, "Fn"),
        }
    }
}

impl From<SeqDescriptor> for StreamView {
    fn from(d: SeqDescriptor) -> Self {
        StreamView::Desc(d)
    }
}

pub fn stream_get(s: &StreamView, n: u64) -> Result<u64, Partial> {
    match s {
        StreamView::Desc(d) => d.get(n),
        StreamView::Pair(p, q) => {
            if n.is_multiple_of(2) {
                stream_get(p, n / 2)
            } else {
                stream_get(q, n / 2)
            }
        }
        StreamView::Tuple(family) => match &**family {
            Family::Tupled(d) => d.get(n),
            other => {
                let (c, k) = unpair(n);
                stream_get(&other.component(c), k)
            }
        },
        StreamView::FiniteTuple(parts) => {
            if n == 0 {
                return Ok(parts.len() as u64);
            }
            let len = parts.len() as u64;
            if len == 0 {
                return Ok(0);
            }
            let (k, j) = ((n - 1) / len, (n - 1) % len);
            stream_get(&parts[j as usize], k)
        }
        StreamView::Project(s, c) => {
            let at = crate::numbering::checked_pair(*c, n).ok_or(Partial {
                position: n,
                budget: 0,
            })?;
            stream_get(s, at)
        }
        StreamView::Fn(f) => f(n),
    }
}

impl StreamView {
    pub fn get(&self, n: u64) -> Result<u64, Partial> {
        stream_get(self, n)
    }

    pub fn values(&self, last: u64) -> Result<Vec<u64>, Partial> {
        (0..=last).map(|n| self.get(n)).collect()
    }
}

pub fn pair_streams(p: StreamView, q: StreamView) -> StreamView {
    StreamView::Pair(Arc::new(p), Arc::new(q))
}

pub fn tuple_streams(family: Family) -> StreamView {
    match family {
        Family::Finite(list) => {
            StreamView::FiniteTuple(Arc::new(list.into_iter().map(StreamView::Desc).collect()))
        }
        other => StreamView::Tuple(Arc::new(other)),
    }
}

pub fn project(s: &StreamView, n: u64) -> StreamView {
    StreamView::Project(Arc::new(s.clone()), n)
}

/// Component `j` of a length-tagged finite tuple with `len` components.
pub fn finite_project(s: &StreamView, len: u64, j: u64) -> StreamView {
    let s = s.clone();
    StreamView::Fn(Arc::new(move |k| s.get(1 + k * len + j)))
}

/// `⟨p, q⟩` of two literals, again a literal.
pub fn pair_literals(p: &SeqDescriptor, q: &SeqDescriptor) -> Option<SeqDescriptor> {
    let (pp, pw) = p.literal_parts()?;
    let (qp, qw) = q.literal_parts()?;
    let start = pp.len().max(qp.len()) as u64;
    let period = lcm(pw.len() as u64, qw.len() as u64);
    let at = |n: u64| {
        if n.is_multiple_of(2) {
            p.get(n / 2).expect("literal")
        } else {
            q.get(n / 2).expect("literal")
        }
    };
    let prefix = (0..2 * start).map(at).collect();
    let word = (2 * start..2 * (start + period)).map(at).collect();
    SeqDescriptor::literal(prefix, super::Tail::Periodic(word)).ok()
}

/// The two halves of a paired literal.
pub fn unpair_literal(d: &SeqDescriptor) -> Option<(SeqDescriptor, SeqDescriptor)> {
    Some((d.subsequence(2, 0)?, d.subsequence(2, 1)?))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// A sequence of names converging to a limit name after finitely many
/// switches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergingName {
    stages: Vec<(u64, SeqDescriptor)>,
}

impl ConvergingName {
    /// `stages` must be nonempty with strictly increasing switch times.
    pub fn new(stages: Vec<(u64, SeqDescriptor)>) -> Option<Self> {
        let increasing = stages.windows(2).all(|w| w[0].0 < w[1].0);
        (!stages.is_empty() && increasing).then_some(ConvergingName { stages })
    }

    pub fn single(d: SeqDescriptor) -> Self {
        ConvergingName {
            stages: vec![(0, d)],
        }
    }

    pub fn stages(&self) -> &[(u64, SeqDescriptor)] {
        &self.stages
    }

    pub fn limit(&self) -> &SeqDescriptor {
        &self.stages.last().expect("nonempty").1
    }
}

/// Descriptor active at time `t`. Before the first switch time the first
/// descriptor is active.
pub fn name_at_stage(c: &ConvergingName, t: u64) -> &SeqDescriptor {
    c.stages
        .iter()
        .rev()
        .find(|(time, _)| *time <= t)
        .map_or(&c.stages[0].1, |(_, d)| d)
}
