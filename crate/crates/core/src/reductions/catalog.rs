//! The explicit reduction witnesses.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::learners::{enum_learner, CandidateClass, LearnerConfig};
use crate::numbering::asm::{Asm, HALT};
use crate::numbering::synth::{
    compile_literal, finite_component, finite_tuple, project_component, stable_tuple,
};
use crate::numbering::{pair, unpair, ProgramIndex};
use crate::oracles::SYNTH_FACTOR;
use crate::problems::{readout, Answer, Context, Instance, Problem};
use crate::spaces::{Family, SeqDescriptor};

use super::harness::{identity, MutantMode, Postprocess, Preprocess, ReductionPair};

use MutantMode::*;

fn seq(x: &Instance) -> Result<&SeqDescriptor, String> {
    match x {
        Instance::Seq(d) => Ok(d),
        other => Err(format!("expected a sequence, got {other}")),
    }
}

fn literal(d: &SeqDescriptor) -> Result<(&[u64], &[u64]), String> {
    d.literal_parts()
        .ok_or_else(|| format!("expected a literal, got {d}"))
}

fn nat(a: &Answer) -> Result<u64, String> {
    a.as_nat().ok_or_else(|| format!("expected a number, got {a}"))
}

fn index(a: &Answer) -> Result<ProgramIndex, String> {
    a.as_index().ok_or_else(|| format!("expected an index, got {a}"))
}

fn pass_through() -> Preprocess {
    Arc::new(|x, _| Ok(x.clone()))
}

fn same_answer() -> Postprocess {
    Arc::new(|_, a, _| Ok(a.clone()))
}

fn synth_budget(cx: &Context) -> u64 {
    cx.cfg().cap.saturating_mul(SYNTH_FACTOR)
}

/// Positions after which a literal's running statistics can no longer change.
fn settle(d: &SeqDescriptor) -> Result<u64, String> {
    let (prefix, word) = literal(d)?;
    Ok((prefix.len() + word.len()) as u64)
}

/// `t ↦ least value not among p(0..=t)`, which converges to `inf(p)`.
fn least_free_stream(p: &SeqDescriptor) -> Result<SeqDescriptor, String> {
    let mut seen = BTreeSet::new();
    let mut guesses = Vec::new();
    for t in 0..settle(p)? {
        seen.insert(p.get(t).map_err(|e| e.to_string())?);
        guesses.push((0..).find(|v| !seen.contains(v)).expect("finite set"));
    }
    let last = *guesses.last().expect("nonempty");
    Ok(SeqDescriptor::eventually(guesses, last))
}

/// An enumeration of `{pair(v, s) : q(t) ≠ v for some t >= s}` for a
/// convergent literal `q`. The codes left out are `pair(lim q, s)` for `s`
/// at least the length of `q`'s canonical prefix.
fn forbidden_codes(q: &SeqDescriptor, cx: &Context) -> Result<SeqDescriptor, String> {
    let c = q.limit().ok_or_else(|| format!("{q} does not converge"))?;
    let settle = literal(q)?.0.len() as u64;
    let filler = pair(c + 1, 0);
    let mut a = Asm::new(1);
    let (x, v, s, cr, lr, t) = (a.fresh(), a.fresh(), a.fresh(), a.fresh(), a.fresh(), a.fresh());
    a.copy(0, x);
    a.unpair_into(x, v, s);
    a.set_const(cr, c);
    a.set_const(lr, settle);
    let same_value = a.label();
    a.jeq(v, cr, same_value);
    a.goto(HALT);
    a.bind(same_value);
    // Is s >= settle? Count t up from zero until it meets either.
    a.zero(t);
    let walk = a.here();
    let allowed = a.label();
    a.jeq(t, lr, allowed);
    a.jeq(t, s, HALT);
    a.succ(t);
    a.goto(walk);
    a.bind(allowed);
    a.set_const(0, filler);
    Ok(SeqDescriptor::generated(a.finish(), synth_budget(cx)))
}

fn first_component(a: &Answer) -> Result<Answer, String> {
    Ok(Answer::Nat(unpair(nat(a)?).0))
}

/// `C_ℕ ≤ lim_ℕ`: guess the least value not enumerated so far.
pub fn catalog_cn_limn() -> ReductionPair {
    ReductionPair {
        name: "cn_limn".into(),
        f: Problem::Cn,
        g: Problem::LimN,
        k: Arc::new(|x, _| Ok(Instance::Seq(least_free_stream(seq(x)?)?))),
        h: same_answer(),
        naive_k: pass_through(),
        mutants: vec![ConstantAnswer, OffByOne, DropPreprocessing],
    }
}

/// `lim_ℕ ≤ C_ℕ`: forbid every `⟨v, s⟩` refuted by a later value.
pub fn catalog_limn_cn() -> ReductionPair {
    ReductionPair {
        name: "limn_cn".into(),
        f: Problem::LimN,
        g: Problem::Cn,
        k: Arc::new(|x, cx| Ok(Instance::Seq(forbidden_codes(seq(x)?, cx)?))),
        h: Arc::new(|_, a, _| first_component(a)),
        naive_k: pass_through(),
        mutants: vec![ConstantAnswer, OffByOne, DropPreprocessing],
    }
}

/// `inf ≤ C_ℕ`, through the guess stream of `C_ℕ ≤ lim_ℕ`.
pub fn catalog_inf_cn() -> ReductionPair {
    ReductionPair {
        name: "inf_cn".into(),
        f: Problem::Inf,
        g: Problem::Cn,
        k: Arc::new(|x, cx| {
            let guesses = least_free_stream(seq(x)?)?;
            Ok(Instance::Seq(forbidden_codes(&guesses, cx)?))
        }),
        h: Arc::new(|_, a, _| first_component(a)),
        naive_k: pass_through(),
        mutants: vec![ConstantAnswer, OffByOne, DropPreprocessing],
    }
}

/// `p_n` holds the values occurring at least `n + 1` times in `p`.
fn multiplicity_family(p: &SeqDescriptor) -> Result<Family, String> {
    let (prefix, word) = literal(p)?;
    let cluster: BTreeSet<u64> = word.iter().copied().collect();
    let mut counts = std::collections::BTreeMap::<u64, usize>::new();
    for v in prefix.iter().filter(|v| !cluster.contains(v)) {
        *counts.entry(*v).or_default() += 1;
    }
    let most = counts.values().copied().max().unwrap_or(0);
    let list = (1..=most + 1)
        .map(|n| {
            let set: Vec<u64> = cluster
                .iter()
                .copied()
                .chain(counts.iter().filter(|(_, &c)| c >= n).map(|(&v, _)| v))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let last = *set.last().expect("cluster points exist");
            SeqDescriptor::eventually(set, last)
        })
        .collect();
    Ok(Family::Stable(list))
}

/// `liminf_ℕ ≤ lim_ℕ ∘ min^` by multiplicity filtering.
pub fn catalog_liminf_minhat() -> ReductionPair {
    ReductionPair {
        name: "liminf_minhat".into(),
        f: Problem::LiminfN,
        g: Problem::LimMinHat,
        k: Arc::new(|x, _| Ok(Instance::Family(multiplicity_family(seq(x)?)?))),
        h: same_answer(),
        naive_k: Arc::new(|x, _| Ok(Instance::Family(Family::Stable(vec![seq(x)?.clone()])))),
        mutants: vec![ConstantAnswer, OffByOne, DropPreprocessing],
    }
}

/// Running maximum of a literal, as a literal.
fn running_max(q: &SeqDescriptor) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    let mut m = 0;
    for t in 0..settle(q)? {
        m = m.max(q.get(t).map_err(|e| e.to_string())?);
        out.push(m);
    }
    Ok(out)
}

/// The eventually constant `p` whose values are `R`-random numbers at
/// least as large as the (monotone) bound sequence.
fn random_markers(q: &SeqDescriptor, cx: &Context, respect_bounds: bool) -> Result<SeqDescriptor, String> {
    let mono = running_max(q)?;
    let limit = cx.horizon();
    let mut p: Vec<u64> = Vec::with_capacity(mono.len());
    for (k, &bound) in mono.iter().enumerate() {
        let grew = k == 0 || bound > mono[k - 1];
        if grew {
            let lower = if respect_bounds { bound } else { 0 };
            let n = cx
                .universe
                .search_r(k as u64, lower, limit)
                .ok_or_else(|| format!("no R-random value in [{lower}, {limit}] for position {k}"))?;
            p.push(n);
        } else {
            p.push(p[k - 1]);
        }
    }
    let last = *p.last().expect("nonempty");
    Ok(SeqDescriptor::eventually(p, last))
}

/// `B ≤ Kol_≥` with the random set `R`.
pub fn catalog_b_kolgeq() -> ReductionPair {
    ReductionPair {
        name: "b_kolgeq".into(),
        f: Problem::B,
        g: Problem::KolGeq,
        k: Arc::new(|x, cx| Ok(Instance::Seq(random_markers(seq(x)?, cx, true)?))),
        h: same_answer(),
        naive_k: Arc::new(|x, cx| Ok(Instance::Seq(random_markers(seq(x)?, cx, false)?))),
        mutants: vec![ConstantAnswer, DropPreprocessing],
    }
}

/// The sequence `p` of `lim_ℕ ≤ G`: an `R`-random marker at `2k + 2` each
/// time `q` changes, `q`'s values at the odd positions.
pub fn limn_g_sequence(q: &SeqDescriptor, cx: &Context) -> Result<SeqDescriptor, String> {
    let lim = q.limit().ok_or_else(|| format!("{q} does not converge"))?;
    let limit = cx.horizon();
    let marker = |pos: u64| {
        cx.universe
            .search_r(pos, pos + 1, limit)
            .ok_or_else(|| format!("no R-random value above {pos} up to {limit}"))
    };
    let at = |t: u64| q.get(t).map_err(|e| e.to_string());
    let mut p = vec![marker(0)?, at(0)?];
    for k in 0..settle(q)? {
        let (prev, next) = (at(k)?, at(k + 1)?);
        if next != prev {
            p.push(marker(2 * k + 2)?);
        } else {
            p.push(next);
        }
        p.push(next);
    }
    Ok(SeqDescriptor::eventually(p, lim))
}

/// Argument used to read `φ_i(i)`. Indices beyond the register range are
/// read at the horizon, which every marker of the construction lies below.
fn diagonal_argument(i: &ProgramIndex, cx: &Context) -> u64 {
    i.as_u64().unwrap_or_else(|| cx.horizon())
}

/// `lim_ℕ ≤ G`: every index of `p` is large enough that `φ_i(i) = lim q`.
pub fn catalog_limn_g() -> ReductionPair {
    ReductionPair {
        name: "limn_g".into(),
        f: Problem::LimN,
        g: Problem::G,
        k: Arc::new(|x, cx| Ok(Instance::Seq(limn_g_sequence(seq(x)?, cx)?))),
        h: Arc::new(|_, a, cx| {
            let i = index(a)?;
            let n = diagonal_argument(&i, cx);
            readout(&i, n, cx)
                .map(Answer::Nat)
                .ok_or_else(|| format!("φ_{i}({n}) undefined within budget"))
        }),
        naive_k: pass_through(),
        mutants: vec![ConstantAnswer, OffByOne],
    }
}

/// The enumeration learner's guesses on `p` as an eventually constant literal.
fn enumeration_trace(p: &SeqDescriptor, cx: &Context) -> Result<SeqDescriptor, String> {
    let lcfg = LearnerConfig::for_oracle(cx.cfg());
    let run = enum_learner(p, CandidateClass::Full, &cx.universe, &lcfg)
        .ok_or_else(|| format!("{p} is undefined on the window"))?;
    let last = run
        .trace
        .final_guess()
        .and_then(ProgramIndex::as_u64)
        .ok_or_else(|| "enumeration did not converge in the universe".to_string())?;
    let guesses = run
        .trace
        .guesses
        .iter()
        .map(|g| g.as_u64().expect("universe index"))
        .collect();
    Ok(SeqDescriptor::eventually(guesses, last))
}

/// `Kol ≤ lim_ℕ` with the halting oracle: the enumeration learner's trace.
pub fn catalog_kol_limn() -> ReductionPair {
    ReductionPair {
        name: "kol_limn".into(),
        f: Problem::Kol,
        g: Problem::LimN,
        k: Arc::new(|x, cx| Ok(Instance::Seq(enumeration_trace(seq(x)?, cx)?))),
        h: Arc::new(|_, a, _| Ok(Answer::Index(ProgramIndex::new(nat(a)?)))),
        naive_k: pass_through(),
        mutants: vec![ConstantAnswer, OffByOne, DropPreprocessing],
    }
}

/// `Kol_≥ ≤ B` with the halting oracle: the same trace is bounded by its limit.
pub fn catalog_kolgeq_b() -> ReductionPair {
    ReductionPair {
        name: "kolgeq_b".into(),
        f: Problem::KolGeq,
        g: Problem::B,
        k: Arc::new(|x, cx| Ok(Instance::Seq(enumeration_trace(seq(x)?, cx)?))),
        h: same_answer(),
        naive_k: pass_through(),
        mutants: vec![ConstantAnswer, ShiftDown, DropPreprocessing],
    }
}

/// `0̂` stays, `0ⁿ1…` becomes `0ⁿ1̂`.
pub fn normalize_lpo(p: &SeqDescriptor, cx: &Context) -> Result<SeqDescriptor, String> {
    let first_nonzero = match p.literal_parts() {
        Some((prefix, word)) => {
            let all: Vec<u64> = prefix.iter().chain(word).copied().collect();
            all.iter().position(|&v| v != 0).map(|k| k as u64)
        }
        None => {
            let values = cx
                .values(p, cx.horizon())
                .ok_or_else(|| format!("{p} is undefined below the horizon"))?;
            values.iter().position(|&v| v != 0).map(|k| k as u64)
        }
    };
    Ok(match first_nonzero {
        None => SeqDescriptor::zero(),
        Some(n) => SeqDescriptor::eventually(vec![0; n as usize], 1),
    })
}

/// `LPO ≤ Kol`: `p = 0̂` iff `Kol(p)` is the minimal index of `0̂`.
pub fn catalog_lpo_kol() -> ReductionPair {
    ReductionPair {
        name: "lpo_kol".into(),
        f: Problem::Lpo,
        g: Problem::Kol,
        k: Arc::new(|x, cx| Ok(Instance::Seq(normalize_lpo(seq(x)?, cx)?))),
        h: Arc::new(|_, a, cx| {
            let zero_index = cx
                .kol(&SeqDescriptor::zero())
                .ok_or("the zero sequence has no index in the universe")?;
            Ok(Answer::Nat((index(a)? == ProgramIndex::new(zero_index)) as u64))
        }),
        naive_k: pass_through(),
        mutants: vec![ConstantAnswer, OffByOne],
    }
}

fn index_of(d: &SeqDescriptor) -> ProgramIndex {
    match d {
        SeqDescriptor::Generated { index, .. } => index.clone(),
        SeqDescriptor::Literal { .. } => compile_literal(d).expect("literal"),
    }
}

fn first_member(x: &Instance) -> Result<Instance, String> {
    match x {
        Instance::Family(Family::Tupled(d)) => Ok(Instance::Seq(d.clone())),
        Instance::Family(Family::Finite(list) | Family::Stable(list)) => list
            .first()
            .map(|d| Instance::Seq(d.clone()))
            .ok_or_else(|| "empty family".to_string()),
        other => Err(format!("expected a family, got {other}")),
    }
}

/// `Ĝ ≤ G` on computable families: tuple, then project with smn.
pub fn catalog_ghat_g() -> ReductionPair {
    ReductionPair {
        name: "ghat_g".into(),
        f: Problem::GHat,
        g: Problem::G,
        k: Arc::new(|x, cx| match x {
            Instance::Family(Family::Tupled(d)) => Ok(Instance::Seq(d.clone())),
            Instance::Family(Family::Stable(list)) => {
                let parts: Vec<ProgramIndex> = list.iter().map(index_of).collect();
                let budget = list
                    .iter()
                    .map(|d| match d {
                        SeqDescriptor::Generated { budget, .. } => *budget,
                        _ => 0,
                    })
                    .max()
                    .unwrap_or(0)
                    .max(synth_budget(cx));
                Ok(Instance::Seq(SeqDescriptor::generated(stable_tuple(&parts), budget)))
            }
            other => Err(format!("expected a countable family, got {other}")),
        }),
        h: Arc::new(|_, a, cx| {
            let i = index(a)?;
            Ok(Answer::Indices(
                (0..cx.components).map(|c| project_component(&i, c)).collect(),
            ))
        }),
        naive_k: Arc::new(|x, _| first_member(x)),
        mutants: vec![ConstantAnswer, OffByOne, DropPreprocessing],
    }
}

/// `t(0) = n`, `t(1 + k·n + j) = p_j(k)` for literal components.
fn literal_finite_tuple(list: &[SeqDescriptor]) -> Option<SeqDescriptor> {
    let n = list.len() as u64;
    let mut longest = 0;
    let mut period = 1u64;
    for d in list {
        let (prefix, word) = d.literal_parts()?;
        longest = longest.max(prefix.len() as u64);
        let w = word.len() as u64;
        period = period / gcd(period, w) * w;
    }
    let at = |t: u64| {
        if t == 0 {
            n
        } else {
            let (k, j) = ((t - 1) / n, (t - 1) % n);
            list[j as usize].get(k).expect("literal")
        }
    };
    let start = 1 + longest * n;
    let prefix = (0..start).map(at).collect();
    let word = (start..start + period * n).map(at).collect();
    SeqDescriptor::literal(prefix, crate::spaces::Tail::Periodic(word)).ok()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `G* ≤ G`: tuple with a length tag, then extract each component.
pub fn catalog_gstar_g() -> ReductionPair {
    ReductionPair {
        name: "gstar_g".into(),
        f: Problem::GStar,
        g: Problem::G,
        k: Arc::new(|x, cx| match x {
            Instance::Family(Family::Finite(list)) if !list.is_empty() => {
                if let Some(t) = literal_finite_tuple(list) {
                    return Ok(Instance::Seq(t));
                }
                let parts: Vec<ProgramIndex> = list.iter().map(index_of).collect();
                Ok(Instance::Seq(SeqDescriptor::generated(finite_tuple(&parts), synth_budget(cx))))
            }
            other => Err(format!("expected a nonempty finite family, got {other}")),
        }),
        h: Arc::new(|x, a, _| {
            let Instance::Family(Family::Finite(list)) = x else {
                return Err("expected a finite family".into());
            };
            let i = index(a)?;
            let n = list.len() as u64;
            Ok(Answer::Indices((0..n).map(|j| finite_component(&i, n, j)).collect()))
        }),
        naive_k: Arc::new(|x, _| first_member(x)),
        mutants: vec![ConstantAnswer, OffByOne, DropPreprocessing],
    }
}

/// `G ≤ Kol`: the least index is an index.
pub fn catalog_g_kol() -> ReductionPair {
    ReductionPair {
        name: "g_kol".into(),
        f: Problem::G,
        g: Problem::Kol,
        k: pass_through(),
        h: same_answer(),
        naive_k: pass_through(),
        mutants: vec![ConstantAnswer, OffByOne],
    }
}

/// `G_≥ ≤ G`: forget the bound.
pub fn catalog_ggeq_g() -> ReductionPair {
    ReductionPair {
        name: "ggeq_g".into(),
        f: Problem::GGeq,
        g: Problem::G,
        k: Arc::new(|x, _| match x {
            Instance::Bounded(d, _) => Ok(Instance::Seq(d.clone())),
            other => Err(format!("expected a bounded instance, got {other}")),
        }),
        h: same_answer(),
        naive_k: pass_through(),
        mutants: vec![ConstantAnswer, OffByOne],
    }
}

/// `Kol_≥ ≤ G`: every index bounds the least one. Indices past the
/// register range saturate.
pub fn catalog_kolgeq_g() -> ReductionPair {
    ReductionPair {
        name: "kolgeq_g".into(),
        f: Problem::KolGeq,
        g: Problem::G,
        k: pass_through(),
        h: Arc::new(|_, a, _| Ok(Answer::Nat(index(a)?.as_u64().unwrap_or(u64::MAX)))),
        naive_k: pass_through(),
        mutants: vec![ConstantAnswer, ShiftDown],
    }
}

pub fn catalog() -> Vec<ReductionPair> {
    vec![
        catalog_cn_limn(),
        catalog_limn_cn(),
        catalog_inf_cn(),
        catalog_liminf_minhat(),
        catalog_b_kolgeq(),
        catalog_limn_g(),
        catalog_kol_limn(),
        catalog_kolgeq_b(),
        catalog_lpo_kol(),
        catalog_ghat_g(),
        catalog_gstar_g(),
        catalog_g_kol(),
        catalog_ggeq_g(),
        catalog_kolgeq_g(),
    ]
}

/// Catalog entry by name; `identity:<problem>` gives the identity reduction.
pub fn lookup(name: &str) -> Option<ReductionPair> {
    if let Some(p) = name.strip_prefix("identity:") {
        return Problem::from_name(p).map(identity);
    }
    catalog().into_iter().find(|r| r.name == name)
}
