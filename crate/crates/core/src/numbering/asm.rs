//! A small assembler with labels, register allocation and arithmetic macros.
//!
//! Synthesized programs (parameter substitution, literal sequences, tuples,
//! dovetailers, compiled LOOP code) are all built here. Macros zero their
//! scratch registers on entry, so they may sit inside loops.

use super::program::{Instruction, Program, Reg};

/// Jump target placeholder.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Label(usize);

/// Resolves to the first position past the end of the finished program.
pub const HALT: Label = Label(usize::MAX);

enum Target {
    At(usize),
    Label(Label),
}

enum Item {
    Plain(Instruction),
    Jump(Reg, Reg, Target),
}

pub struct Asm {
    items: Vec<Item>,
    labels: Vec<Option<usize>>,
    next_reg: Reg,
    zero_reg: Option<Reg>,
}

impl Asm {
    /// Registers `>= first_free` are handed out as scratch.
    pub fn new(first_free: Reg) -> Self {
        Asm {
            items: Vec::new(),
            labels: Vec::new(),
            next_reg: first_free.max(1),
            zero_reg: None,
        }
    }

    /// Assembler whose scratch registers avoid everything `programs` touch.
    pub fn above<'a>(programs: impl IntoIterator<Item = &'a Program>) -> Self {
        let first_free = programs
            .into_iter()
            .filter_map(|p| p.max_register())
            .max()
            .map_or(1, |r| r + 1);
        Asm::new(first_free)
    }

    pub fn fresh(&mut self) -> Reg {
        let r = self.next_reg;
        self.next_reg += 1;
        r
    }

    /// A register that is never written and so always holds zero.
    pub fn zero_reg(&mut self) -> Reg {
        match self.zero_reg {
            Some(r) => r,
            None => {
                let r = self.fresh();
                self.zero_reg = Some(r);
                r
            }
        }
    }

    pub fn label(&mut self) -> Label {
        self.labels.push(None);
        Label(self.labels.len() - 1)
    }

    pub fn bind(&mut self, label: Label) {
        let slot = &mut self.labels[label.0];
        assert!(slot.is_none(), "label bound twice");
        *slot = Some(self.items.len());
    }

    pub fn here(&mut self) -> Label {
        let l = self.label();
        self.bind(l);
        l
    }

    pub fn zero(&mut self, r: Reg) {
        self.items.push(Item::Plain(Instruction::Zero(r)));
    }

    pub fn succ(&mut self, r: Reg) {
        self.items.push(Item::Plain(Instruction::Succ(r)));
    }

    /// `R[dst] <- R[src]`
    pub fn copy(&mut self, src: Reg, dst: Reg) {
        self.items.push(Item::Plain(Instruction::Transfer(src, dst)));
    }

    pub fn jeq(&mut self, a: Reg, b: Reg, to: Label) {
        self.items.push(Item::Jump(a, b, Target::Label(to)));
    }

    pub fn goto(&mut self, to: Label) {
        self.jeq(0, 0, to);
    }

    pub fn evb(&mut self, index: Reg, input: Reg, budget: Reg, out: Reg) {
        self.items.push(Item::Plain(Instruction::Evb {
            index,
            input,
            budget,
            out,
        }));
    }

    /// Inlines `program`; both its halting jumps and falling off its end
    /// continue at `exit`.
    pub fn embed(&mut self, program: &Program, exit: Label) {
        let base = self.items.len();
        let len = program.len() as u64;
        for ins in &program.instructions {
            let item = match *ins {
                Instruction::Jump(a, b, k) if k < len => {
                    Item::Jump(a, b, Target::At(base + k as usize))
                }
                Instruction::Jump(a, b, _) => Item::Jump(a, b, Target::Label(exit)),
                other => Item::Plain(other),
            };
            self.items.push(item);
        }
        self.goto(exit);
    }

    pub fn finish(self) -> Program {
        let len = self.items.len() as u64;
        let labels = self.labels;
        let resolve = |t: Target| -> u64 {
            match t {
                Target::At(p) => p as u64,
                Target::Label(l) if l == HALT => len,
                Target::Label(l) => labels[l.0].expect("unbound label") as u64,
            }
        };
        let instructions = self
            .items
            .into_iter()
            .map(|item| match item {
                Item::Plain(ins) => ins,
                Item::Jump(a, b, t) => Instruction::Jump(a, b, resolve(t)),
            })
            .collect();
        Program::new(instructions)
    }

    /// `R[r] <- c`
    pub fn set_const(&mut self, r: Reg, c: u64) {
        self.zero(r);
        if c <= 32 {
            for _ in 0..c {
                self.succ(r);
            }
            return;
        }
        let bits = 64 - c.leading_zeros();
        self.succ(r);
        for b in (0..bits - 1).rev() {
            self.double(r);
            if c >> b & 1 == 1 {
                self.succ(r);
            }
        }
    }

    /// `R[r] <- 2 R[r]`
    pub fn double(&mut self, r: Reg) {
        let (t, k) = (self.fresh(), self.fresh());
        self.zero(t);
        self.zero(k);
        let top = self.here();
        let end = self.label();
        self.jeq(k, r, end);
        self.succ(k);
        self.succ(t);
        self.succ(t);
        self.goto(top);
        self.bind(end);
        self.copy(t, r);
    }

    /// `R[acc] <- R[acc] + R[src]`; `acc` and `src` must differ.
    pub fn add_into(&mut self, acc: Reg, src: Reg) {
        debug_assert_ne!(acc, src);
        let c = self.fresh();
        self.zero(c);
        let top = self.here();
        let end = self.label();
        self.jeq(c, src, end);
        self.succ(acc);
        self.succ(c);
        self.goto(top);
        self.bind(end);
    }

    /// `R[dst] <- max(R[src] - 1, 0)`
    pub fn pred_into(&mut self, src: Reg, dst: Reg) {
        debug_assert_ne!(src, dst);
        let c = self.fresh();
        let end = self.label();
        self.zero(dst);
        let z = self.zero_reg();
        self.jeq(src, z, end);
        self.zero(c);
        self.succ(c);
        let top = self.here();
        self.jeq(c, src, end);
        self.succ(c);
        self.succ(dst);
        self.goto(top);
        self.bind(end);
    }

    /// Advances the Cantor walk `(diag, snd)` by one position.
    fn walk_step(&mut self, diag: Reg, snd: Reg, then: Label) {
        let next_diag = self.label();
        self.jeq(snd, diag, next_diag);
        self.succ(snd);
        self.goto(then);
        self.bind(next_diag);
        self.succ(diag);
        self.zero(snd);
        self.goto(then);
    }

    /// `R[out] <- pair(R[a], R[b])`. Costs `O(pair(a, b))` steps.
    pub fn pair_into(&mut self, a: Reg, b: Reg, out: Reg) {
        let (s, diag, snd) = (self.fresh(), self.fresh(), self.fresh());
        self.copy(a, s);
        self.add_into(s, b);
        self.zero(out);
        self.zero(diag);
        self.zero(snd);
        let top = self.here();
        let step = self.label();
        let check_snd = self.label();
        let end = self.label();
        let counted = self.label();
        self.jeq(diag, s, check_snd);
        self.goto(step);
        self.bind(check_snd);
        self.jeq(snd, b, end);
        self.bind(step);
        self.walk_step(diag, snd, counted);
        self.bind(counted);
        self.succ(out);
        self.goto(top);
        self.bind(end);
    }

    /// `(R[fst], R[snd]) <- unpair(R[z])`. Costs `O(z)` steps.
    pub fn unpair_into(&mut self, z: Reg, fst: Reg, snd: Reg) {
        let (diag, w, count) = (self.fresh(), self.fresh(), self.fresh());
        self.zero(diag);
        self.zero(w);
        self.zero(count);
        let top = self.here();
        let end = self.label();
        let counted = self.label();
        self.jeq(count, z, end);
        self.walk_step(diag, w, counted);
        self.bind(counted);
        self.succ(count);
        self.goto(top);
        self.bind(end);
        // fst = diag - w
        let t = self.fresh();
        self.copy(w, t);
        self.zero(fst);
        let sub = self.here();
        let done = self.label();
        self.jeq(t, diag, done);
        self.succ(t);
        self.succ(fst);
        self.goto(sub);
        self.bind(done);
        self.copy(w, snd);
    }

    /// `R[q] <- R[x] div n`, `R[r] <- R[x] mod n` for a constant `n >= 1`.
    pub fn divmod_const(&mut self, x: Reg, n: u64, q: Reg, r: Reg) {
        assert!(n >= 1);
        let (nreg, c) = (self.fresh(), self.fresh());
        self.set_const(nreg, n);
        self.zero(q);
        self.zero(r);
        self.zero(c);
        let top = self.here();
        let end = self.label();
        let wrap = self.label();
        self.jeq(c, x, end);
        self.succ(c);
        self.succ(r);
        self.jeq(r, nreg, wrap);
        self.goto(top);
        self.bind(wrap);
        self.zero(r);
        self.succ(q);
        self.goto(top);
        self.bind(end);
    }

    /// `R[out] <- R[x] * n + offset` for constants `n`, `offset`.
    pub fn mul_add_const(&mut self, x: Reg, n: u64, offset: u64, out: Reg) {
        let c = self.fresh();
        self.set_const(out, offset);
        self.zero(c);
        let top = self.here();
        let end = self.label();
        self.jeq(c, x, end);
        self.succ(c);
        for _ in 0..n {
            self.succ(out);
        }
        self.goto(top);
        self.bind(end);
    }

    /// Jumps to `targets[k]` when `R[r] == k`; falls through otherwise.
    pub fn dispatch(&mut self, r: Reg, targets: &[Label]) {
        let c = self.fresh();
        self.zero(c);
        for (k, &t) in targets.iter().enumerate() {
            if k > 0 {
                self.succ(c);
            }
            self.jeq(r, c, t);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbering::machine::{eval_program, EvalOutcome};
    use crate::numbering::pairing::{pair, unpair};

    fn run(p: &Program, x: u64) -> u64 {
        match eval_program(p, x, 10_000_000) {
            EvalOutcome::Halted { value, .. } => value,
            other => panic!("did not halt: {other:?}"),
        }
    }

    #[test]
    fn constants() {
        for c in [0, 1, 5, 32, 33, 64, 100, 1023, 4097] {
            let mut a = Asm::new(1);
            a.set_const(0, c);
            assert_eq!(run(&a.finish(), 7), c);
        }
    }

    #[test]
    fn pairing_macros() {
        let mut a = Asm::new(1);
        let (c, out) = (a.fresh(), a.fresh());
        a.set_const(c, 3);
        a.pair_into(c, 0, out);
        a.copy(out, 0);
        let p = a.finish();
        for x in 0..20 {
            assert_eq!(run(&p, x), pair(3, x));
        }

        let mut a = Asm::new(1);
        let (f, s) = (a.fresh(), a.fresh());
        a.unpair_into(0, f, s);
        a.copy(f, 0);
        let fst = a.finish();
        let mut a = Asm::new(1);
        let (f, s) = (a.fresh(), a.fresh());
        a.unpair_into(0, f, s);
        a.copy(s, 0);
        let snd = a.finish();
        for z in 0..200 {
            assert_eq!((run(&fst, z), run(&snd, z)), unpair(z));
        }
    }

    #[test]
    fn arithmetic_macros() {
        let mut a = Asm::new(1);
        let (q, r) = (a.fresh(), a.fresh());
        a.divmod_const(0, 3, q, r);
        a.mul_add_const(q, 10, 0, 0);
        a.add_into(0, r);
        let p = a.finish();
        for x in 0..50 {
            assert_eq!(run(&p, x), (x / 3) * 10 + x % 3);
        }

        let mut a = Asm::new(1);
        let d = a.fresh();
        a.pred_into(0, d);
        a.copy(d, 0);
        let p = a.finish();
        for x in 0..20 {
            assert_eq!(run(&p, x), x.saturating_sub(1));
        }
    }

    #[test]
    fn embed_relocates_jumps() {
        // Jumps past the end when R0 == R1 (= 0), else successor.
        let inner = Program::parse("J 0 1 2\nS 0").unwrap();
        let mut a = Asm::new(2);
        let exit = a.label();
        a.embed(&inner, exit);
        a.bind(exit);
        a.succ(0);
        a.succ(0);
        let p = a.finish();
        assert_eq!(run(&p, 0), 2);
        assert_eq!(run(&p, 4), 7);
    }
}
