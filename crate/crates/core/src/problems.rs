//! The benchmark problems as executable specifications: domain check,
//! answer verifier, bounded answer enumerator and reference solver.
//!
//! First-order problems are decided exactly on literal descriptors. On
//! generated descriptors they look at positions `0..=horizon`, where the
//! horizon is at least the answer ceiling. Gödel-family problems use window
//! verification: `φ_i = p` means agreement on `0..=window`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::numbering::synth::{compile_literal, pad};
use crate::numbering::{eval, ProgramIndex};
use crate::oracles::{OracleConfig, Universe};
use crate::spaces::{unpair_literal, Family, SeqDescriptor};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Instance {
    Seq(SeqDescriptor),
    /// A sequence with a natural-number bound.
    Bounded(SeqDescriptor, u64),
    Family(Family),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Answer {
    Nat(u64),
    Index(ProgramIndex),
    /// One index per component of a family.
    Indices(Vec<ProgramIndex>),
}

impl Answer {
    pub fn as_nat(&self) -> Option<u64> {
        match self {
            Answer::Nat(n) => Some(*n),
            Answer::Index(i) => i.as_u64(),
            Answer::Indices(_) => None,
        }
    }

    pub fn as_index(&self) -> Option<ProgramIndex> {
        match self {
            Answer::Nat(n) => Some(ProgramIndex::new(*n)),
            Answer::Index(i) => Some(i.clone()),
            Answer::Indices(_) => None,
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Nat(n) => write!(f, "{n}"),
            Answer::Index(i) => write!(f, "{i}"),
            Answer::Indices(v) => {
                let parts: Vec<String> = v.iter().map(|i| i.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

fn join_family(list: &[SeqDescriptor]) -> String {
    let parts: Vec<String> = list.iter().map(|d| d.to_string()).collect();
    parts.join(" ; ")
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instance::Seq(d) => write!(f, "{d}"),
            Instance::Bounded(d, m) => write!(f, "{d} m={m}"),
            Instance::Family(Family::Tupled(d)) => write!(f, "family=tupled {d}"),
            Instance::Family(Family::Finite(list)) => {
                write!(f, "family=finite {}", join_family(list))
            }
            Instance::Family(Family::Stable(list)) => {
                write!(f, "family=stable {}", join_family(list))
            }
        }
    }
}

/// Shared evaluation context: the oracle universe plus answer bounds.
pub struct Context {
    pub universe: Arc<Universe>,
    /// Largest natural-number answer enumerated.
    pub ceiling: u64,
    /// Components of a countable family that are checked.
    pub components: u64,
    memo: Mutex<HashMap<(SeqDescriptor, u64), Option<Arc<Vec<u64>>>>>,
}

impl Context {
    pub fn new(cfg: OracleConfig) -> Self {
        Context::with_universe(Arc::new(Universe::build(cfg)))
    }

    pub fn with_universe(universe: Arc<Universe>) -> Self {
        let ceiling = universe.cfg().index_bound + 64;
        Context {
            universe,
            ceiling,
            components: 4,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn cfg(&self) -> &OracleConfig {
        self.universe.cfg()
    }

    /// Positions examined on generated first-order instances.
    pub fn horizon(&self) -> u64 {
        self.ceiling.max(self.cfg().window)
    }

    /// Values on `0..=last`, memoized; `None` if some value is undefined.
    pub fn values(&self, d: &SeqDescriptor, last: u64) -> Option<Arc<Vec<u64>>> {
        let key = (d.clone(), last);
        if let Some(v) = self.memo.lock().expect("poisoned").get(&key) {
            return v.clone();
        }
        let v = d.values(last).ok().map(Arc::new);
        self.memo.lock().expect("poisoned").insert(key, v.clone());
        v
    }

    pub fn window_values(&self, d: &SeqDescriptor) -> Option<Arc<Vec<u64>>> {
        self.values(d, self.cfg().window)
    }

    /// Whether `i` window-verifies `d`.
    pub fn verifies(&self, i: &ProgramIndex, d: &SeqDescriptor) -> bool {
        self.window_values(d)
            .is_some_and(|v| self.universe.verifies_values(i, &v))
    }

    /// Window-verified Kolmogorov complexity within the universe.
    pub fn kol(&self, d: &SeqDescriptor) -> Option<u64> {
        self.universe.min_index_values(&self.window_values(d)?)
    }

    /// Known indices of `d` outside the universe: its generator or its
    /// compiled literal, plus two padded variants.
    pub fn extra_indices(&self, d: &SeqDescriptor) -> Vec<ProgramIndex> {
        let base = match d {
            SeqDescriptor::Literal { .. } => compile_literal(d).expect("literal"),
            SeqDescriptor::Generated { index, .. } => index.clone(),
        };
        let mut out = Vec::new();
        for k in 0..3 {
            let i = pad(&base, k);
            if !i.is_at_most(self.cfg().index_bound) && self.verifies(&i, d) {
                out.push(i);
            }
        }
        out
    }

    /// Every index of `d` the harness knows: window-verifying universe
    /// indices first, then [`Context::extra_indices`].
    pub fn g_answers(&self, d: &SeqDescriptor) -> Vec<ProgramIndex> {
        let Some(values) = self.window_values(d) else {
            return Vec::new();
        };
        let mut out: Vec<ProgramIndex> = self
            .universe
            .verifying(&values)
            .into_iter()
            .map(ProgramIndex::new)
            .collect();
        out.extend(self.extra_indices(d));
        out
    }

    /// Exact range of a literal, or the values up to the horizon.
    fn observed_range(&self, d: &SeqDescriptor) -> Option<BTreeSet<u64>> {
        match d.range() {
            Some(r) => Some(r),
            None => Some(self.values(d, self.horizon())?.iter().copied().collect()),
        }
    }

    fn is_zero(&self, d: &SeqDescriptor) -> Option<bool> {
        match d.is_zero_literal() {
            Some(z) => Some(z),
            None => Some(self.values(d, self.horizon())?.iter().all(|&v| v == 0)),
        }
    }

    fn halves(&self, d: &SeqDescriptor) -> Option<[bool; 2]> {
        match unpair_literal(d) {
            Some((a, b)) => Some([a.is_zero_literal()?, b.is_zero_literal()?]),
            None => {
                let v = self.values(d, self.horizon())?;
                let zero = |r: usize| v.iter().skip(r).step_by(2).all(|&x| x == 0);
                Some([zero(0), zero(1)])
            }
        }
    }

    /// Components of a family checked for `Ĝ` and `G*`, each with the
    /// arguments whose position in the tupled name lies in the window.
    fn family_checks(&self, family: &Family) -> Vec<(SeqDescriptor, Vec<u64>)> {
        let window = self.cfg().window;
        match family {
            Family::Finite(list) => {
                let n = list.len() as u64;
                list.iter()
                    .enumerate()
                    .map(|(j, d)| {
                        let ks = (0..=window).filter(|k| 1 + k * n + j as u64 <= window).collect();
                        (d.clone(), ks)
                    })
                    .collect()
            }
            Family::Tupled(_) | Family::Stable(_) => (0..self.components)
                .map(|c| {
                    let comp = family.component(c);
                    let ks: Vec<u64> = (0..=window)
                        .filter(|&k| crate::numbering::checked_pair(c, k).is_some_and(|z| z <= window))
                        .collect();
                    let d = match comp {
                        crate::spaces::StreamView::Desc(d) => d,
                        view => {
                            // Only positions in `ks` are ever consulted.
                            let prefix: Vec<u64> =
                                ks.iter().map(|&k| view.get(k).unwrap_or(u64::MAX)).collect();
                            SeqDescriptor::eventually(prefix, 0)
                        }
                    };
                    (d, ks)
                })
                .collect(),
        }
    }

    fn component_verifies(&self, i: &ProgramIndex, d: &SeqDescriptor, ks: &[u64]) -> bool {
        ks.iter().all(|&k| match d.get(k) {
            Ok(v) => self.universe.value(i, k) == Some(v),
            Err(_) => false,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Problem {
    Lpo,
    Llpo,
    LimN,
    B,
    Inf,
    Min,
    Cn,
    Kn,
    ClN,
    BwtN,
    LiminfN,
    /// `lim_ℕ ∘ min^`: the limit of the minima of a family.
    LimMinHat,
    G,
    Kol,
    GGeq,
    KolGeq,
    GHat,
    GStar,
}

/// How a problem's instances are shaped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Seq,
    Bounded,
    Tupled,
    Finite,
    Stable,
}

pub fn make_lpo() -> Problem {
    Problem::Lpo
}
pub fn make_llpo() -> Problem {
    Problem::Llpo
}
pub fn make_lim_n() -> Problem {
    Problem::LimN
}
pub fn make_b() -> Problem {
    Problem::B
}
pub fn make_inf() -> Problem {
    Problem::Inf
}
pub fn make_min() -> Problem {
    Problem::Min
}
pub fn make_cn() -> Problem {
    Problem::Cn
}
pub fn make_kn() -> Problem {
    Problem::Kn
}
pub fn make_cl_n() -> Problem {
    Problem::ClN
}
pub fn make_bwt_n() -> Problem {
    Problem::BwtN
}
pub fn make_liminf_n() -> Problem {
    Problem::LiminfN
}
pub fn make_g() -> Problem {
    Problem::G
}
pub fn make_kol() -> Problem {
    Problem::Kol
}
pub fn make_g_geq() -> Problem {
    Problem::GGeq
}
pub fn make_kol_geq() -> Problem {
    Problem::KolGeq
}

fn nats(range: impl IntoIterator<Item = u64>) -> Vec<Answer> {
    range.into_iter().map(Answer::Nat).collect()
}

impl Problem {
    pub const ALL: [Problem; 18] = [
        Problem::Lpo,
        Problem::Llpo,
        Problem::LimN,
        Problem::B,
        Problem::Inf,
        Problem::Min,
        Problem::Cn,
        Problem::Kn,
        Problem::ClN,
        Problem::BwtN,
        Problem::LiminfN,
        Problem::LimMinHat,
        Problem::G,
        Problem::Kol,
        Problem::GGeq,
        Problem::KolGeq,
        Problem::GHat,
        Problem::GStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Problem::Lpo => "lpo",
            Problem::Llpo => "llpo",
            Problem::LimN => "lim_n",
            Problem::B => "b",
            Problem::Inf => "inf",
            Problem::Min => "min",
            Problem::Cn => "c_n",
            Problem::Kn => "k_n",
            Problem::ClN => "cl_n",
            Problem::BwtN => "bwt_n",
            Problem::LiminfN => "liminf_n",
            Problem::LimMinHat => "lim_minhat",
            Problem::G => "g",
            Problem::Kol => "kol",
            Problem::GGeq => "g_geq",
            Problem::KolGeq => "kol_geq",
            Problem::GHat => "ghat",
            Problem::GStar => "gstar",
        }
    }

    pub fn from_name(name: &str) -> Option<Problem> {
        Problem::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn shape(self) -> Shape {
        match self {
            Problem::Kn | Problem::GGeq => Shape::Bounded,
            Problem::GHat => Shape::Tupled,
            Problem::GStar => Shape::Finite,
            Problem::LimMinHat => Shape::Stable,
            _ => Shape::Seq,
        }
    }

    pub fn domain_check(self, x: &Instance, cx: &Context) -> bool {
        match (self, x) {
            (Problem::Lpo, Instance::Seq(d)) => cx.is_zero(d).is_some(),
            (Problem::Llpo, Instance::Seq(d)) => cx.halves(d).is_some_and(|h| h != [true, true]),
            (Problem::LimN, Instance::Seq(d)) => d.limit().is_some(),
            (Problem::B, Instance::Seq(d)) => {
                d.range().is_some_and(|r| r.last().is_some_and(|&s| s <= cx.ceiling))
            }
            (Problem::Inf | Problem::Cn, Instance::Seq(_)) => !self.enumerate_answers(x, cx).is_empty(),
            (Problem::Min, Instance::Seq(d)) => d.is_literal(),
            (Problem::Kn, Instance::Bounded(d, m)) => d
                .range()
                .is_some_and(|r| r.iter().all(|v| v <= m) && (r.len() as u64) < m + 1),
            (Problem::ClN | Problem::BwtN | Problem::LiminfN, Instance::Seq(d)) => d.is_literal(),
            (Problem::LimMinHat, Instance::Family(Family::Stable(list))) => {
                !list.is_empty() && list.iter().all(SeqDescriptor::is_literal)
            }
            (Problem::G | Problem::Kol | Problem::KolGeq, Instance::Seq(d)) => {
                cx.window_values(d).is_some()
            }
            (Problem::GGeq, Instance::Bounded(d, m)) => {
                cx.window_values(d).is_some()
                    && match cx.kol(d) {
                        Some(k) => *m >= k,
                        None => *m > cx.cfg().index_bound,
                    }
            }
            (Problem::GHat, Instance::Family(f @ (Family::Tupled(_) | Family::Stable(_))))
            | (Problem::GStar, Instance::Family(f @ Family::Finite(_))) => cx
                .family_checks(f)
                .iter()
                .all(|(d, ks)| ks.iter().all(|&k| d.get(k).is_ok())),
            _ => false,
        }
    }

    pub fn verify(self, x: &Instance, a: &Answer, cx: &Context) -> bool {
        if !self.domain_check(x, cx) {
            return false;
        }
        match (self, x) {
            (Problem::G | Problem::Kol, Instance::Seq(d)) | (Problem::GGeq, Instance::Bounded(d, _)) => {
                let Some(i) = a.as_index() else {
                    return false;
                };
                if !cx.verifies(&i, d) {
                    return false;
                }
                match (self, cx.kol(d)) {
                    (Problem::Kol, Some(k)) => i == ProgramIndex::new(k),
                    (Problem::Kol, None) => !i.is_at_most(cx.cfg().index_bound),
                    _ => true,
                }
            }
            (Problem::KolGeq, Instance::Seq(d)) => a.as_nat().is_some_and(|b| match cx.kol(d) {
                Some(k) => b >= k,
                None => b > cx.cfg().index_bound,
            }),
            (Problem::GHat | Problem::GStar, Instance::Family(f)) => {
                let Answer::Indices(list) = a else {
                    return false;
                };
                let checks = cx.family_checks(f);
                list.len() == checks.len()
                    && list
                        .iter()
                        .zip(&checks)
                        .all(|(i, (d, ks))| cx.component_verifies(i, d, ks))
            }
            (Problem::B, Instance::Seq(d)) => {
                let sup = *d.range().expect("literal").last().expect("nonempty");
                a.as_nat().is_some_and(|b| b >= sup)
            }
            (Problem::Cn, Instance::Seq(d)) => a.as_nat().is_some_and(|n| {
                n <= cx.ceiling && !cx.observed_range(d).expect("in domain").contains(&n)
            }),
            (Problem::Kn, Instance::Bounded(d, m)) => a
                .as_nat()
                .is_some_and(|n| n <= *m && !d.range().expect("literal").contains(&n)),
            (Problem::ClN | Problem::BwtN, Instance::Seq(d)) => a
                .as_nat()
                .is_some_and(|n| d.cluster_points().expect("literal").contains(&n)),
            (Problem::Llpo, Instance::Seq(d)) => {
                let halves = cx.halves(d).expect("in domain");
                matches!(a.as_nat(), Some(i @ (0 | 1)) if !halves[i as usize])
            }
            _ => self.solve_ref(x, cx).as_ref() == Some(a),
        }
    }

    /// Every answer that verifies, bounded by the context's ceiling (and for
    /// index answers, by the universe plus the known extra indices).
    pub fn enumerate_answers(self, x: &Instance, cx: &Context) -> Vec<Answer> {
        match (self, x) {
            (Problem::Inf | Problem::Cn, Instance::Seq(d)) => {
                let Some(range) = cx.observed_range(d) else {
                    return Vec::new();
                };
                let free = (0..=cx.ceiling).filter(|n| !range.contains(n));
                match self {
                    Problem::Inf => nats(free.take(1)),
                    _ => nats(free),
                }
            }
            _ if !self.domain_check(x, cx) => Vec::new(),
            (Problem::Lpo, Instance::Seq(d)) => nats([cx.is_zero(d).expect("domain") as u64]),
            (Problem::Llpo, Instance::Seq(d)) => {
                let halves = cx.halves(d).expect("domain");
                nats((0..2).filter(|&i| !halves[i as usize]))
            }
            (Problem::B, Instance::Seq(d)) => {
                nats(*d.range().expect("literal").last().expect("nonempty")..=cx.ceiling)
            }
            (Problem::Kn, Instance::Bounded(d, m)) => {
                let range = d.range().expect("literal");
                nats((0..=*m).filter(|n| !range.contains(n)))
            }
            (Problem::ClN | Problem::BwtN, Instance::Seq(d)) => {
                nats(d.cluster_points().expect("literal"))
            }
            (Problem::G, Instance::Seq(d)) | (Problem::GGeq, Instance::Bounded(d, _)) => {
                cx.g_answers(d).into_iter().map(Answer::Index).collect()
            }
            (Problem::Kol, Instance::Seq(d)) => match cx.kol(d) {
                Some(k) => vec![Answer::Index(ProgramIndex::new(k))],
                None => cx.extra_indices(d).into_iter().map(Answer::Index).collect(),
            },
            (Problem::KolGeq, Instance::Seq(d)) => {
                let least = cx.kol(d).unwrap_or(cx.cfg().index_bound + 1);
                nats(least..=cx.ceiling)
            }
            (Problem::GHat | Problem::GStar, Instance::Family(f)) => {
                // Universe candidates per component, at most three each.
                let per: Vec<Vec<ProgramIndex>> = cx
                    .family_checks(f)
                    .iter()
                    .map(|(d, ks)| {
                        (0..cx.universe.size())
                            .map(ProgramIndex::new)
                            .filter(|i| cx.component_verifies(i, d, ks))
                            .take(3)
                            .collect()
                    })
                    .collect();
                let mut combos: Vec<Vec<ProgramIndex>> = vec![Vec::new()];
                for options in &per {
                    combos = combos
                        .into_iter()
                        .flat_map(|c| {
                            options.iter().map(move |o| {
                                let mut c = c.clone();
                                c.push(o.clone());
                                c
                            })
                        })
                        .collect();
                }
                combos.into_iter().map(Answer::Indices).collect()
            }
            _ => self.solve_ref(x, cx).into_iter().collect(),
        }
    }

    /// A reference solution, computed by brute force where needed.
    pub fn solve_ref(self, x: &Instance, cx: &Context) -> Option<Answer> {
        if !self.domain_check(x, cx) {
            return None;
        }
        match (self, x) {
            (Problem::LimN, Instance::Seq(d)) => d.limit().map(Answer::Nat),
            (Problem::Min, Instance::Seq(d)) => d.range()?.first().copied().map(Answer::Nat),
            (Problem::LiminfN, Instance::Seq(d)) => {
                d.cluster_points()?.first().copied().map(Answer::Nat)
            }
            (Problem::LimMinHat, Instance::Family(Family::Stable(list))) => {
                list.last()?.range()?.first().copied().map(Answer::Nat)
            }
            (Problem::G | Problem::Kol, Instance::Seq(d)) | (Problem::GGeq, Instance::Bounded(d, _)) => {
                match cx.kol(d) {
                    Some(k) => Some(Answer::Index(ProgramIndex::new(k))),
                    None => cx.extra_indices(d).into_iter().next().map(Answer::Index),
                }
            }
            (Problem::GHat | Problem::GStar, Instance::Family(f)) => {
                let mut out = Vec::new();
                for (d, ks) in cx.family_checks(f) {
                    let found = (0..cx.universe.size())
                        .map(ProgramIndex::new)
                        .find(|i| cx.component_verifies(i, &d, &ks))
                        .or_else(|| compile_literal(&d).filter(|i| cx.component_verifies(i, &d, &ks)))?;
                    out.push(found);
                }
                Some(Answer::Indices(out))
            }
            _ => self.enumerate_answers(x, cx).into_iter().next(),
        }
    }
}

/// Value of `φ_i(n)` under the context's budget rules, for readouts.
pub fn readout(i: &ProgramIndex, n: u64, cx: &Context) -> Option<u64> {
    match i.as_u64() {
        Some(_) => cx.universe.value(i, n),
        None => eval(i, n, cx.cfg().budget_for(i)).value(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{pair_literals, Tail};

    fn cx() -> Context {
        Context::new(OracleConfig {
            cap: 2000,
            window: 12,
            index_bound: 300,
        })
    }

    fn lit(prefix: &[u64], c: u64) -> SeqDescriptor {
        SeqDescriptor::eventually(prefix.to_vec(), c)
    }

    fn per(prefix: &[u64], word: &[u64]) -> SeqDescriptor {
        SeqDescriptor::literal(prefix.to_vec(), Tail::Periodic(word.to_vec())).unwrap()
    }

    fn seq(d: SeqDescriptor) -> Instance {
        Instance::Seq(d)
    }

    #[test]
    fn first_order_examples() {
        let cx = cx();
        assert_eq!(Problem::Lpo.solve_ref(&seq(lit(&[], 0)), &cx), Some(Answer::Nat(1)));
        assert_eq!(Problem::Lpo.solve_ref(&seq(lit(&[0, 0, 1], 0)), &cx), Some(Answer::Nat(0)));
        let llpo = seq(pair_literals(&lit(&[], 0), &lit(&[0, 3], 0)).unwrap());
        assert_eq!(Problem::Llpo.enumerate_answers(&llpo, &cx), vec![Answer::Nat(1)]);
        let both_zero = seq(pair_literals(&lit(&[], 0), &lit(&[], 0)).unwrap());
        assert!(!Problem::Llpo.domain_check(&both_zero, &cx));
        assert_eq!(Problem::LimN.solve_ref(&seq(lit(&[5, 5, 3], 3)), &cx), Some(Answer::Nat(3)));
        assert!(!Problem::LimN.domain_check(&seq(per(&[], &[1, 2])), &cx));
        assert_eq!(Problem::Min.solve_ref(&seq(lit(&[4, 2], 9)), &cx), Some(Answer::Nat(2)));
        let b = seq(lit(&[1, 3], 2));
        let answers = Problem::B.enumerate_answers(&b, &cx);
        assert_eq!(answers.first(), Some(&Answer::Nat(3)));
        assert_eq!(answers.last(), Some(&Answer::Nat(cx.ceiling)));
        assert!(!Problem::B.verify(&b, &Answer::Nat(2), &cx));
        assert_eq!(Problem::Inf.solve_ref(&seq(lit(&[3, 1], 4)), &cx), Some(Answer::Nat(0)));
        assert_eq!(Problem::Inf.solve_ref(&seq(lit(&[0, 2], 1)), &cx), Some(Answer::Nat(3)));
    }

    #[test]
    fn choice_examples() {
        let cx = cx();
        let c = seq(lit(&[0, 1], 1));
        let answers = Problem::Cn.enumerate_answers(&c, &cx);
        assert_eq!(answers.len() as u64, cx.ceiling - 1);
        assert_eq!(answers[0], Answer::Nat(2));
        let k = Instance::Bounded(lit(&[0, 2], 2), 2);
        assert_eq!(Problem::Kn.enumerate_answers(&k, &cx), vec![Answer::Nat(1)]);
        assert!(!Problem::Kn.domain_check(&Instance::Bounded(lit(&[0, 1], 2), 2), &cx));
        let cl = seq(per(&[9], &[1, 2]));
        assert_eq!(Problem::ClN.enumerate_answers(&cl, &cx), nats([1, 2]));
        assert_eq!(Problem::LiminfN.solve_ref(&cl, &cx), Some(Answer::Nat(1)));
        assert!(Problem::BwtN.domain_check(&cl, &cx));
        // A generated enumeration is read up to the horizon.
        let g = seq(SeqDescriptor::generated(2, 100));
        assert_eq!(Problem::Cn.solve_ref(&g, &cx), Some(Answer::Nat(0)));
        assert!(!Problem::Cn.verify(&g, &Answer::Nat(5), &cx));
    }

    #[test]
    fn godel_family_examples() {
        let cx = cx();
        let zero = seq(SeqDescriptor::zero());
        assert!(Problem::G.verify(&zero, &Answer::Index(1.into()), &cx));
        assert!(!Problem::G.verify(&zero, &Answer::Index(0.into()), &cx));
        let id = seq(SeqDescriptor::generated(0, 10));
        assert_eq!(Problem::Kol.solve_ref(&id, &cx), Some(Answer::Index(0.into())));
        assert!(Problem::KolGeq.verify(&zero, &Answer::Nat(1), &cx));
        assert!(!Problem::KolGeq.verify(&zero, &Answer::Nat(0), &cx));
        let gs = Problem::G.enumerate_answers(&zero, &cx);
        assert_eq!(gs[0], Answer::Index(1.into()));
        assert!(gs.iter().all(|a| Problem::G.verify(&zero, a, &cx)));
        assert!(gs.iter().any(|a| matches!(a, Answer::Index(ProgramIndex::Code(_)))));
    }

    #[test]
    fn beyond_the_universe() {
        let cx = cx();
        let far = seq(lit(&[7, 7, 7, 3, 9, 12, 5], 1));
        assert_eq!(cx.kol(match &far {
            Instance::Seq(d) => d,
            _ => unreachable!(),
        }), None);
        let kol = Problem::Kol.enumerate_answers(&far, &cx);
        assert!(!kol.is_empty());
        assert!(kol.iter().all(|a| Problem::Kol.verify(&far, a, &cx)));
        assert!(!Problem::KolGeq.verify(&far, &Answer::Nat(cx.cfg().index_bound), &cx));
    }

    #[test]
    fn families() {
        let cx = cx();
        let fam = Instance::Family(Family::Finite(vec![
            SeqDescriptor::generated(0, 100),
            SeqDescriptor::generated(2, 100),
            SeqDescriptor::zero(),
        ]));
        let ans = Problem::GStar.solve_ref(&fam, &cx).unwrap();
        assert_eq!(ans, Answer::Indices(vec![0.into(), 2.into(), 1.into()]));
        assert!(Problem::GStar.verify(&fam, &ans, &cx));
        let stable = Instance::Family(Family::Stable(vec![lit(&[5, 2], 3), lit(&[], 3)]));
        assert_eq!(Problem::LimMinHat.solve_ref(&stable, &cx), Some(Answer::Nat(3)));
    }

    #[test]
    fn solutions_verify_and_are_enumerated() {
        let cx = cx();
        let instances = [
            (Problem::Cn, seq(lit(&[0, 4, 2], 1))),
            (Problem::Inf, seq(per(&[1], &[0, 2]))),
            (Problem::LimN, seq(lit(&[9], 6))),
            (Problem::ClN, seq(per(&[], &[4, 0, 4]))),
            (Problem::G, seq(SeqDescriptor::generated(2, 100))),
            (Problem::Kol, seq(lit(&[], 5))),
            (Problem::KolGeq, seq(lit(&[], 5))),
            (Problem::GGeq, Instance::Bounded(lit(&[], 0), 1)),
        ];
        for (p, x) in instances {
            let sol = p.solve_ref(&x, &cx).unwrap();
            assert!(p.verify(&x, &sol, &cx), "{p:?}");
            let all = p.enumerate_answers(&x, &cx);
            assert!(all.contains(&sol), "{p:?}");
            assert!(all.iter().all(|a| p.verify(&x, a, &cx)), "{p:?}");
        }
    }
}
