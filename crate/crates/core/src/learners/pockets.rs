//! Amalgamation over pockets of mutually compatible programs.

use serde::Serialize;

use crate::numbering::synth::dovetailer;
use crate::numbering::ProgramIndex;
use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::oracles::{halts, OracleConfig, Universe};
use crate::spaces::SeqDescriptor;

use super::trace::{run_to_limit, GuessStream, GuessTrace};
use super::LearnerConfig;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pocket {
    pub anchor: u64,
    /// Ascending.
    pub members: Vec<u64>,
}

impl Pocket {
    pub fn is_subset_of(&self, other: &Pocket) -> bool {
        self.members
            .iter()
            .all(|m| other.members.binary_search(m).is_ok())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PocketTable {
    pub pockets: Vec<Pocket>,
    /// Positions in `pockets` still in play.
    pub survivors: Vec<usize>,
}

impl PocketTable {
    pub fn surviving(&self) -> impl Iterator<Item = &Pocket> {
        self.survivors.iter().map(|&k| &self.pockets[k])
    }
}

/// `P_i = {j <= m : φ_i ≈ φ_j}` for every `i <= m`.
pub fn build_pockets(m: u64, universe: &Universe) -> PocketTable {
    let m = m.min(universe.cfg().index_bound);
    let matrix = universe.compat_matrix();
    let pockets: Vec<Pocket> = (0..=m)
        .map(|i| Pocket {
            anchor: i,
            members: (0..=m).filter(|&j| matrix[i as usize].contains(j as usize)).collect(),
        })
        .collect();
    let survivors = (0..pockets.len()).collect();
    PocketTable { pockets, survivors }
}

/// Drops internally incompatible pockets and repeated sets.
pub fn prune_pockets(t: PocketTable, universe: &Universe) -> PocketTable {
    let matrix = universe.compat_matrix();
    let mut survivors: Vec<usize> = Vec::new();
    let mut seen = HashSet::new();
    for &k in &t.survivors {
        let p = &t.pockets[k];
        let mut set = FixedBitSet::with_capacity(matrix.len());
        set.extend(p.members.iter().map(|&j| j as usize));
        let internal = p.members.iter().all(|&a| set.is_subset(&matrix[a as usize]));
        if internal && seen.insert(p.members.clone()) {
            survivors.push(k);
        }
    }
    PocketTable {
        pockets: t.pockets,
        survivors,
    }
}

/// Whether no surviving pocket is a subset of another.
pub fn is_antichain(t: &PocketTable) -> bool {
    let s: Vec<&Pocket> = t.surviving().collect();
    s.iter().enumerate().all(|(a, p)| {
        s.iter()
            .enumerate()
            .all(|(b, q)| a == b || !p.is_subset_of(q))
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Elimination {
    pub anchor: u64,
    pub member: u64,
    pub n: u64,
    pub expected: u64,
    pub got: u64,
}

#[derive(Clone, Debug, Serialize)]
pub enum PromiseViolation {
    /// The input is undefined on the window.
    PartialInput,
    /// Zero or several pockets survived the whole window.
    Survivors { anchors: Vec<u64> },
    /// The amalgamated program failed window verification.
    Unverified,
}

pub struct AmalgamationRun {
    pub index: ProgramIndex,
    pub table: PocketTable,
    pub survivor: Pocket,
    pub eliminations: Vec<Elimination>,
    /// Least anchor still alive after each checked position.
    pub trace: GuessTrace<u64>,
}

/// Pairwise compatibility of the members, recomputed by running each
/// member directly instead of reading the cache.
pub fn reaudit(pocket: &Pocket, cfg: &OracleConfig) -> bool {
    let rows: Vec<Vec<Option<u64>>> = pocket
        .members
        .iter()
        .map(|&j| (0..=cfg.window).map(|n| halts(&j.into(), n, cfg).value()).collect())
        .collect();
    rows.iter().enumerate().all(|(a, ra)| {
        rows[a + 1..].iter().all(|rb| {
            ra.iter()
                .zip(rb)
                .all(|(x, y)| x.is_none() || y.is_none() || x == y)
        })
    })
}

/// Finds the pocket compatible with `p` and amalgamates its members.
pub fn amalgamation_learn(
    p: &SeqDescriptor,
    m: u64,
    universe: &Universe,
    cfg: &LearnerConfig,
) -> Result<AmalgamationRun, PromiseViolation> {
    let ocfg = *universe.cfg();
    let values = p
        .values(ocfg.window)
        .map_err(|_| PromiseViolation::PartialInput)?;
    let table = prune_pockets(build_pockets(m, universe), universe);
    let mut alive: Vec<usize> = table.survivors.clone();
    let mut eliminations = Vec::new();
    let mut least = Vec::new();
    for (n, &expected) in values.iter().enumerate() {
        alive.retain(|&k| {
            let pocket = &table.pockets[k];
            for &j in &pocket.members {
                if let Some(got) = universe.row(j)[n] {
                    if got != expected {
                        eliminations.push(Elimination {
                            anchor: pocket.anchor,
                            member: j,
                            n: n as u64,
                            expected,
                            got,
                        });
                        return false;
                    }
                }
            }
            true
        });
        if let Some(&k) = alive.first() {
            least.push(table.pockets[k].anchor);
        }
    }
    if alive.len() != 1 {
        return Err(PromiseViolation::Survivors {
            anchors: alive.iter().map(|&k| table.pockets[k].anchor).collect(),
        });
    }
    let survivor = table.pockets[alive[0]].clone();
    let index = dovetailer(&survivor.members, ocfg.cap);
    if !universe.verifies_values(&index, &values) {
        return Err(PromiseViolation::Unverified);
    }
    let stream = least.into_iter().chain(std::iter::repeat(survivor.anchor));
    let trace = run_to_limit(&mut GuessStream(stream), cfg.stability_window, cfg.max_steps);
    Ok(AmalgamationRun {
        index,
        table,
        survivor,
        eliminations,
        trace,
    })
}
