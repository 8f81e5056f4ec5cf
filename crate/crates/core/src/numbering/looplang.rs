//! A LOOP-style language of total programs, compiled to URM-lite.
//!
//! Syntax: statements separated by `;`, each one of `inc r`, `zero r`,
//! `copy a b` (`R[b] <- R[a]`) or `loop r { ... }`, which repeats its body
//! `R[r]` times, the count being fixed on entry. Input and output in `R0`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::asm::Asm;
use super::index::ProgramIndex;
use super::program::{Program, Reg};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Stmt {
    Inc(Reg),
    Zero(Reg),
    Copy(Reg, Reg),
    Loop(Reg, Vec<Stmt>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LoopProgram {
    pub body: Vec<Stmt>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseLoopError {
    #[error("unexpected token {0:?}")]
    Unexpected(String),
    #[error("unexpected end of input")]
    Eof,
}

/// Result of running a LOOP program on the host.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HostRun {
    pub value: u64,
    /// One per simple statement, loop entry and loop iteration.
    pub ops: u64,
}

impl LoopProgram {
    pub fn max_register(&self) -> Option<Reg> {
        fn walk(body: &[Stmt], m: &mut Option<Reg>) {
            for s in body {
                let regs: &[Reg] = match s {
                    Stmt::Inc(r) | Stmt::Zero(r) => std::slice::from_ref(r),
                    Stmt::Copy(a, b) => &[*a, *b][..],
                    Stmt::Loop(r, inner) => {
                        walk(inner, m);
                        std::slice::from_ref(r)
                    }
                };
                for &r in regs {
                    *m = Some(m.map_or(r, |x| x.max(r)));
                }
            }
        }
        let mut m = None;
        walk(&self.body, &mut m);
        m
    }

    /// Runs on the host; `None` once more than `max_ops` operations are needed.
    pub fn run(&self, input: u64, max_ops: u64) -> Option<HostRun> {
        let slots = self.max_register().map_or(1, |r| r as usize + 1);
        let mut regs = vec![0u64; slots.max(1)];
        regs[0] = input;
        let mut ops = 0u64;
        exec(&self.body, &mut regs, &mut ops, max_ops)?;
        Some(HostRun { value: regs[0], ops })
    }

    /// Compiled URM-lite program. A host run of `ops` operations takes at
    /// most `3 * ops` machine steps.
    pub fn compile(&self) -> Program {
        let mut a = Asm::new(self.max_register().map_or(1, |r| r + 1));
        emit(&self.body, &mut a);
        a.finish()
    }

    pub fn index(&self) -> ProgramIndex {
        self.compile().into()
    }
}

fn exec(body: &[Stmt], regs: &mut [u64], ops: &mut u64, max_ops: u64) -> Option<()> {
    for s in body {
        *ops += 1;
        if *ops > max_ops {
            return None;
        }
        match s {
            Stmt::Inc(r) => regs[*r as usize] = regs[*r as usize].saturating_add(1),
            Stmt::Zero(r) => regs[*r as usize] = 0,
            Stmt::Copy(a, b) => regs[*b as usize] = regs[*a as usize],
            Stmt::Loop(r, inner) => {
                let count = regs[*r as usize];
                for _ in 0..count {
                    *ops += 1;
                    if *ops > max_ops {
                        return None;
                    }
                    exec(inner, regs, ops, max_ops)?;
                }
            }
        }
    }
    Some(())
}

fn emit(body: &[Stmt], a: &mut Asm) {
    for s in body {
        match s {
            Stmt::Inc(r) => a.succ(*r),
            Stmt::Zero(r) => a.zero(*r),
            Stmt::Copy(x, y) => a.copy(*x, *y),
            Stmt::Loop(r, inner) => {
                let (count, i) = (a.fresh(), a.fresh());
                a.copy(*r, count);
                a.zero(i);
                let top = a.here();
                let end = a.label();
                a.jeq(i, count, end);
                emit(inner, a);
                a.succ(i);
                a.goto(top);
                a.bind(end);
            }
        }
    }
}

impl fmt::Display for LoopProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn write_body(body: &[Stmt], f: &mut fmt::Formatter<'_>) -> fmt::Result {
            for (k, s) in body.iter().enumerate() {
                if k > 0 {
                    write!(f, "; ")?;
                }
                match s {
                    Stmt::Inc(r) => write!(f, "inc {r}")?,
                    Stmt::Zero(r) => write!(f, "zero {r}")?,
                    Stmt::Copy(a, b) => write!(f, "copy {a} {b}")?,
                    Stmt::Loop(r, inner) => {
                        write!(f, "loop {r} {{ ")?;
                        write_body(inner, f)?;
                        write!(f, " }}")?;
                    }
                }
            }
            Ok(())
        }
        write_body(&self.body, f)
    }
}

fn tokenize(text: &str) -> Vec<String> {
    let spaced = text.replace('{', " { ").replace('}', " } ").replace(';', " ; ");
    spaced.split_whitespace().map(str::to_owned).collect()
}

struct Parser {
    tokens: Vec<String>,
    pos: usize,
}

impl Parser {
    fn next(&mut self) -> Result<String, ParseLoopError> {
        let t = self.tokens.get(self.pos).cloned().ok_or(ParseLoopError::Eof)?;
        self.pos += 1;
        Ok(t)
    }

    fn reg(&mut self) -> Result<Reg, ParseLoopError> {
        let t = self.next()?;
        t.parse().map_err(|_| ParseLoopError::Unexpected(t))
    }

    fn body(&mut self, nested: bool) -> Result<Vec<Stmt>, ParseLoopError> {
        let mut out = Vec::new();
        loop {
            match self.tokens.get(self.pos).map(String::as_str) {
                None if nested => return Err(ParseLoopError::Eof),
                None => return Ok(out),
                Some("}") if nested => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(";") => {
                    self.pos += 1;
                    continue;
                }
                _ => {}
            }
            let word = self.next()?;
            let stmt = match word.as_str() {
                "inc" => Stmt::Inc(self.reg()?),
                "zero" => Stmt::Zero(self.reg()?),
                "copy" => Stmt::Copy(self.reg()?, self.reg()?),
                "loop" => {
                    let r = self.reg()?;
                    let brace = self.next()?;
                    if brace != "{" {
                        return Err(ParseLoopError::Unexpected(brace));
                    }
                    Stmt::Loop(r, self.body(true)?)
                }
                _ => return Err(ParseLoopError::Unexpected(word)),
            };
            out.push(stmt);
        }
    }
}

impl FromStr for LoopProgram {
    type Err = ParseLoopError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            tokens: tokenize(s),
            pos: 0,
        };
        Ok(LoopProgram { body: p.body(false)? })
    }
}

/// All LOOP programs up to a size bound over a fixed register set, in
/// enumeration order (by size, then structure). Every member is total.
pub struct LoopClass {
    programs: Vec<LoopProgram>,
    indices: Vec<ProgramIndex>,
    position: HashMap<ProgramIndex, usize>,
}

impl LoopClass {
    /// Programs with at most `max_size` statements (a loop counts one plus
    /// its body) over registers `0..registers`.
    pub fn enumerate(max_size: usize, registers: Reg) -> Self {
        let regs: Vec<Reg> = (0..registers.max(1)).collect();
        let mut by_size: Vec<Vec<Vec<Stmt>>> = vec![vec![Vec::new()]];
        for size in 1..=max_size {
            let mut bodies = Vec::new();
            // A first statement of size `head` followed by a body of the rest.
            for head in 1..=size {
                let heads = stmts_of_size(head, &regs, &by_size);
                for h in &heads {
                    for rest in &by_size[size - head] {
                        let mut b = vec![h.clone()];
                        b.extend(rest.iter().cloned());
                        bodies.push(b);
                    }
                }
            }
            by_size.push(bodies);
        }
        let mut class = LoopClass {
            programs: Vec::new(),
            indices: Vec::new(),
            position: HashMap::new(),
        };
        for body in by_size.into_iter().flatten() {
            let p = LoopProgram { body };
            let index = p.index();
            if class.position.contains_key(&index) {
                continue;
            }
            class.position.insert(index.clone(), class.programs.len());
            class.programs.push(p);
            class.indices.push(index);
        }
        class
    }

    pub fn len(&self) -> usize {
        self.programs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.programs.is_empty()
    }

    pub fn programs(&self) -> &[LoopProgram] {
        &self.programs
    }

    /// Compiled indices, in enumeration order.
    pub fn indices(&self) -> &[ProgramIndex] {
        &self.indices
    }

    pub fn position(&self, index: &ProgramIndex) -> Option<usize> {
        self.position.get(index).copied()
    }
}

fn stmts_of_size(size: usize, regs: &[Reg], by_size: &[Vec<Vec<Stmt>>]) -> Vec<Stmt> {
    let mut out = Vec::new();
    if size == 1 {
        for &r in regs {
            out.push(Stmt::Inc(r));
        }
        for &r in regs {
            out.push(Stmt::Zero(r));
        }
        for &a in regs {
            for &b in regs {
                if a != b {
                    out.push(Stmt::Copy(a, b));
                }
            }
        }
    }
    if size >= 2 {
        for &r in regs {
            for body in &by_size[size - 1] {
                out.push(Stmt::Loop(r, body.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbering::machine::eval_program;

    #[test]
    fn parse_and_print() {
        let text = "inc 0; loop 0 { inc 1 }; copy 1 0";
        let p: LoopProgram = text.parse().unwrap();
        assert_eq!(p.to_string(), text);
        assert_eq!(p.run(3, 1000).unwrap().value, 4);
        assert!("loop 0 { inc 1".parse::<LoopProgram>().is_err());
        assert!("jump 3".parse::<LoopProgram>().is_err());
    }

    #[test]
    fn compiled_agrees_with_host() {
        let doubling: LoopProgram = "copy 0 1; loop 1 { inc 0 }".parse().unwrap();
        let square: LoopProgram = "copy 0 1; zero 0; loop 1 { loop 1 { inc 0 } }"
            .parse()
            .unwrap();
        for p in [doubling, square] {
            let code = p.compile();
            for x in 0..12 {
                let host = p.run(x, 1_000_000).unwrap();
                let out = eval_program(&code, x, 3 * host.ops);
                assert_eq!(out.value(), Some(host.value), "{p} on {x}");
            }
        }
    }

    #[test]
    fn class_is_ordered_and_total() {
        let class = LoopClass::enumerate(3, 2);
        assert!(class.len() > 50);
        for (k, idx) in class.indices().iter().enumerate() {
            assert_eq!(class.position(idx), Some(k));
        }
        for p in class.programs() {
            for x in 0..4 {
                let host = p.run(x, 100_000).unwrap();
                assert_eq!(eval_program(&p.compile(), x, 3 * host.ops).value(), Some(host.value));
            }
        }
    }
}
