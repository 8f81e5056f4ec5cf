//! Program synthesis: parameter substitution, padding, tuples, dovetailing
//! and literal sequences, all as concrete indices.

use super::asm::{Asm, HALT};
use super::index::ProgramIndex;
use super::program::{Instruction, Program};
use crate::spaces::SeqDescriptor;

/// Index of `y ↦ φ_i(pair(c, y))`.
pub fn s_const(i: &ProgramIndex, c: u64) -> ProgramIndex {
    let program = i.decode();
    let mut a = Asm::above([&program]);
    let (x, cr, out) = (a.fresh(), a.fresh(), a.fresh());
    a.copy(0, x);
    a.set_const(cr, c);
    a.pair_into(cr, x, out);
    a.copy(out, 0);
    a.embed(&program, HALT);
    a.finish().into()
}

/// Index of the `n`-th component of a tupled sequence, `k ↦ φ_i(pair(n, k))`.
pub fn project_component(i: &ProgramIndex, n: u64) -> ProgramIndex {
    s_const(i, n)
}

/// An index of the same function as `i`, different from `i` when `k > 0`.
pub fn pad(i: &ProgramIndex, k: usize) -> ProgramIndex {
    if k == 0 {
        return i.clone();
    }
    let program = i.decode();
    let mut instructions = vec![Instruction::Transfer(0, 0); k];
    instructions.extend(program.instructions.iter().map(|ins| match *ins {
        Instruction::Jump(a, b, t) => Instruction::Jump(a, b, t.saturating_add(k as u64)),
        other => other,
    }));
    Program::new(instructions).into()
}

/// Index of `x ↦ φ_i(x) + 1`.
pub fn postcompose_succ(i: &ProgramIndex) -> ProgramIndex {
    let program = i.decode();
    let mut a = Asm::above([&program]);
    let exit = a.label();
    a.embed(&program, exit);
    a.bind(exit);
    a.succ(0);
    a.finish().into()
}

/// Index of the constant function `c`.
pub fn constant(c: u64) -> ProgramIndex {
    let mut a = Asm::new(1);
    a.set_const(0, c);
    a.finish().into()
}

/// Index `t` of the finite tuple `(p_0, ..., p_{n-1})`:
/// `φ_t(0) = n` and `φ_t(1 + k·n + j) = φ_{p_j}(k)`.
pub fn finite_tuple(components: &[ProgramIndex]) -> ProgramIndex {
    let n = components.len() as u64;
    let programs: Vec<Program> = components.iter().map(|c| c.decode()).collect();
    let mut a = Asm::above(programs.iter());
    let (x, y, q, r) = (a.fresh(), a.fresh(), a.fresh(), a.fresh());
    let z = a.zero_reg();
    let length = a.label();
    a.copy(0, x);
    a.jeq(x, z, length);
    if n > 0 {
        a.pred_into(x, y);
        a.divmod_const(y, n, q, r);
        let entries: Vec<_> = (0..n).map(|_| a.label()).collect();
        a.dispatch(r, &entries);
        for (entry, program) in entries.into_iter().zip(&programs) {
            a.bind(entry);
            a.copy(q, 0);
            a.embed(program, HALT);
        }
    }
    a.bind(length);
    a.set_const(0, n);
    a.finish().into()
}

/// Index of `k ↦ φ_t(1 + k·n + j)`, component `j` of an `n`-tuple `t`.
pub fn finite_component(t: &ProgramIndex, n: u64, j: u64) -> ProgramIndex {
    let program = t.decode();
    let mut a = Asm::above([&program]);
    let (x, out) = (a.fresh(), a.fresh());
    a.copy(0, x);
    a.mul_add_const(x, n, j + 1, out);
    a.copy(out, 0);
    a.embed(&program, HALT);
    a.finish().into()
}

/// Index of a program that runs every member on its input with budgets
/// `1, 2, 4, ...` up to `cap`, and returns the first value any member
/// produces. It diverges if no member halts within `cap` steps.
pub fn dovetailer(members: &[u64], cap: u64) -> ProgramIndex {
    let mut members = members.to_vec();
    members.sort_unstable();
    members.dedup();
    let cap = cap.max(1);
    let mut a = Asm::new(1);
    let (x, b, capr, m, out) = (a.fresh(), a.fresh(), a.fresh(), a.fresh(), a.fresh());
    let z = a.zero_reg();
    let found = a.label();
    let stuck = a.label();
    a.copy(0, x);
    a.set_const(b, 1);
    a.set_const(capr, cap);
    let round = a.here();
    a.zero(m);
    let mut loaded = 0;
    for &member in &members {
        if member - loaded <= 32 {
            for _ in loaded..member {
                a.succ(m);
            }
        } else {
            a.set_const(m, member);
        }
        loaded = member;
        a.evb(m, x, b, out);
        let next = a.label();
        a.jeq(out, z, next);
        a.goto(found);
        a.bind(next);
    }
    a.jeq(b, capr, stuck);
    // b <- min(2b, cap)
    let (t, c) = (a.fresh(), a.fresh());
    a.copy(b, t);
    a.zero(c);
    let grow = a.here();
    a.jeq(c, t, round);
    a.jeq(b, capr, round);
    a.succ(b);
    a.succ(c);
    a.goto(grow);
    a.bind(stuck);
    a.goto(stuck);
    a.bind(found);
    a.pred_into(out, 0);
    a.finish().into()
}

/// Index of the tupled stream `⟨p₀, p₁, …⟩` of an eventually constant
/// family, `p_n = φ_{components[min(n, len - 1)]}`.
pub fn stable_tuple(components: &[ProgramIndex]) -> ProgramIndex {
    assert!(!components.is_empty());
    let programs: Vec<Program> = components.iter().map(|c| c.decode()).collect();
    let mut a = Asm::above(programs.iter());
    let (x, n, k) = (a.fresh(), a.fresh(), a.fresh());
    a.copy(0, x);
    a.unpair_into(x, n, k);
    let entries: Vec<_> = programs.iter().map(|_| a.label()).collect();
    a.dispatch(n, &entries);
    a.goto(*entries.last().expect("nonempty"));
    for (entry, program) in entries.into_iter().zip(&programs) {
        a.bind(entry);
        a.copy(k, 0);
        a.embed(program, HALT);
    }
    a.finish().into()
}

/// Index of a literal descriptor's sequence; `None` for generated ones,
/// which already carry an index.
pub fn compile_literal(d: &SeqDescriptor) -> Option<ProgramIndex> {
    let (prefix, word) = d.literal_parts()?;
    Some(literal_program(prefix, word))
}

/// Index of the eventually periodic sequence `prefix · word^ω`.
/// An empty `word` is treated as the constant `0` tail.
pub fn literal_program(prefix: &[u64], word: &[u64]) -> ProgramIndex {
    let word: &[u64] = if word.is_empty() { &[0] } else { word };
    let mut a = Asm::new(1);
    let (x, c, r, wr) = (a.fresh(), a.fresh(), a.fresh(), a.fresh());
    a.copy(0, x);
    let heads: Vec<_> = prefix.iter().map(|_| a.label()).collect();
    let tails: Vec<_> = word.iter().map(|_| a.label()).collect();
    a.dispatch(x, &heads);
    if word.len() == 1 {
        a.goto(tails[0]);
    } else {
        // c walks from len(prefix) up to x while r counts mod len(word).
        a.set_const(c, prefix.len() as u64);
        a.set_const(wr, word.len() as u64);
        a.zero(r);
        let walk = a.here();
        let done = a.label();
        let wrap = a.label();
        a.jeq(c, x, done);
        a.succ(c);
        a.succ(r);
        a.jeq(r, wr, wrap);
        a.goto(walk);
        a.bind(wrap);
        a.zero(r);
        a.goto(walk);
        a.bind(done);
        a.dispatch(r, &tails);
        a.goto(HALT);
    }
    for (label, &v) in heads.into_iter().zip(prefix).chain(tails.into_iter().zip(word)) {
        a.bind(label);
        a.set_const(0, v);
        a.goto(HALT);
    }
    a.finish().into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbering::machine::eval;
    use crate::numbering::pairing::pair;

    const BUDGET: u64 = 10_000_000;

    fn run(i: &ProgramIndex, x: u64) -> Option<u64> {
        eval(i, x, BUDGET).value()
    }

    #[test]
    fn s_const_substitutes() {
        // Index 0 is the identity.
        let id = ProgramIndex::new(0);
        for c in 0..5 {
            let s = s_const(&id, c);
            for y in 0..10 {
                assert_eq!(run(&s, y), Some(pair(c, y)));
            }
        }
    }

    #[test]
    fn padding_preserves_function() {
        let succ = ProgramIndex::new(2);
        for k in 0..4 {
            let p = pad(&succ, k);
            assert_eq!(p != succ, k > 0);
            for x in 0..10 {
                assert_eq!(run(&p, x), Some(x + 1));
            }
        }
        let looper = ProgramIndex::new(7);
        assert_eq!(eval(&pad(&looper, 2), 0, 1000).value(), None);
    }

    #[test]
    fn successor_composition() {
        let p = postcompose_succ(&ProgramIndex::new(2));
        for x in 0..10 {
            assert_eq!(run(&p, x), Some(x + 2));
        }
        assert_eq!(run(&constant(77), 3), Some(77));
    }

    #[test]
    fn finite_tuples_round_trip() {
        let comps = vec![constant(5), ProgramIndex::new(0), ProgramIndex::new(2)];
        let t = finite_tuple(&comps);
        assert_eq!(run(&t, 0), Some(3));
        for k in 0..6u64 {
            assert_eq!(run(&t, 1 + 3 * k), Some(5));
            assert_eq!(run(&t, 2 + 3 * k), Some(k));
            assert_eq!(run(&t, 3 + 3 * k), Some(k + 1));
            for j in 0..3 {
                let c = finite_component(&t, 3, j);
                assert_eq!(run(&c, k), run(&comps[j as usize], k));
            }
        }
        assert_eq!(run(&finite_tuple(&[]), 0), Some(0));
    }

    #[test]
    fn stable_tuples() {
        let t = stable_tuple(&[constant(3), ProgramIndex::new(2)]);
        for k in 0..5 {
            assert_eq!(run(&t, pair(0, k)), Some(3));
            assert_eq!(run(&t, pair(1, k)), Some(k + 1));
            assert_eq!(run(&t, pair(4, k)), Some(k + 1));
        }
    }

    #[test]
    fn dovetailer_finds_a_halting_member() {
        // 7 loops forever, 2 is the successor.
        let d = dovetailer(&[7, 2], 1000);
        for x in 0..10 {
            assert_eq!(run(&d, x), Some(x + 1));
        }
        let never = dovetailer(&[7], 64);
        assert_eq!(eval(&never, 0, 100_000).value(), None);
    }

    #[test]
    fn literals() {
        let p = literal_program(&[3, 1], &[4]);
        let got: Vec<_> = (0..6).map(|x| run(&p, x).unwrap()).collect();
        assert_eq!(got, vec![3, 1, 4, 4, 4, 4]);
        let p = literal_program(&[9], &[0, 1, 2]);
        let got: Vec<_> = (0..8).map(|x| run(&p, x).unwrap()).collect();
        assert_eq!(got, vec![9, 0, 1, 2, 0, 1, 2, 0]);
        let p = literal_program(&[], &[100]);
        assert_eq!(run(&p, 12), Some(100));
    }
}
