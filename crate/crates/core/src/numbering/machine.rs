//! Budgeted evaluation of URM-lite programs.
//!
//! Input and output live in `R0`; every other register starts at zero.
//! A program halts when the program counter leaves the instruction list,
//! either by falling off the end or by a jump to a target `>= len`.
//!
//! Step accounting: every instruction costs one step. `EVB` additionally
//! charges the steps its inner run consumed, and its inner budget is capped
//! by what the caller has left. If that cap (and not the requested budget)
//! stops the inner run, the caller itself runs out of budget. Hence the
//! value of a run never depends on the budget, only whether it completes.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::index::ProgramIndex;
use super::program::{Instruction, Program};

/// Result of a budgeted evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EvalOutcome {
    Halted { value: u64, steps: u64 },
    BudgetExceeded { budget: u64 },
}

impl EvalOutcome {
    pub fn value(&self) -> Option<u64> {
        match *self {
            EvalOutcome::Halted { value, .. } => Some(value),
            EvalOutcome::BudgetExceeded { .. } => None,
        }
    }

    pub fn halted(&self) -> bool {
        matches!(self, EvalOutcome::Halted { .. })
    }
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Zero(u32),
    Succ(u32),
    Transfer(u32, u32),
    Jump(u32, u32, usize),
    Evb {
        index: u32,
        input: u32,
        budget: u32,
        out: u32,
    },
}

/// A program with registers renumbered densely (`R0` stays slot 0).
#[derive(Debug)]
pub struct Compiled {
    ops: Vec<Op>,
    slots: usize,
}

impl Compiled {
    pub fn new(program: &Program) -> Self {
        let mut slot_of: HashMap<u64, u32> = HashMap::new();
        slot_of.insert(0, 0);
        let mut slot = |r: u64| -> u32 {
            let next = slot_of.len() as u32;
            *slot_of.entry(r).or_insert(next)
        };
        let len = program.len();
        let ops = program
            .instructions
            .iter()
            .map(|ins| match *ins {
                Instruction::Zero(r) => Op::Zero(slot(r)),
                Instruction::Succ(r) => Op::Succ(slot(r)),
                Instruction::Transfer(a, b) => Op::Transfer(slot(a), slot(b)),
                Instruction::Jump(a, b, k) => {
                    let target = usize::try_from(k).map_or(len, |k| k.min(len));
                    Op::Jump(slot(a), slot(b), target)
                }
                Instruction::Evb {
                    index,
                    input,
                    budget,
                    out,
                } => Op::Evb {
                    index: slot(index),
                    input: slot(input),
                    budget: slot(budget),
                    out: slot(out),
                },
            })
            .collect();
        Compiled {
            ops,
            slots: slot_of.len(),
        }
    }
}

struct Frame {
    code: Arc<Compiled>,
    pc: usize,
    regs: Vec<u64>,
    steps: u64,
    budget: u64,
    call: Option<PendingCall>,
}

struct PendingCall {
    out: u32,
    granted: u64,
    capped_by_caller: bool,
}

enum Stop {
    Halted,
    Exceeded,
    Call { index: u64, input: u64 },
}

impl Frame {
    fn new(code: Arc<Compiled>, input: u64, budget: u64) -> Self {
        let mut regs = vec![0; code.slots];
        regs[0] = input;
        Frame {
            code,
            pc: 0,
            regs,
            steps: 0,
            budget,
            call: None,
        }
    }

    fn run(&mut self) -> Stop {
        let code = Arc::clone(&self.code);
        let ops = &code.ops;
        while self.pc < ops.len() {
            if self.steps >= self.budget {
                return Stop::Exceeded;
            }
            self.steps += 1;
            match ops[self.pc] {
                Op::Zero(r) => {
                    self.regs[r as usize] = 0;
                    self.pc += 1;
                }
                Op::Succ(r) => {
                    let v = &mut self.regs[r as usize];
                    *v = v.saturating_add(1);
                    self.pc += 1;
                }
                Op::Transfer(a, b) => {
                    self.regs[b as usize] = self.regs[a as usize];
                    self.pc += 1;
                }
                Op::Jump(a, b, target) => {
                    if self.regs[a as usize] == self.regs[b as usize] {
                        self.pc = target;
                    } else {
                        self.pc += 1;
                    }
                }
                Op::Evb {
                    index,
                    input,
                    budget,
                    out,
                } => {
                    self.pc += 1;
                    let requested = self.regs[budget as usize];
                    let remaining = self.budget - self.steps;
                    self.call = Some(PendingCall {
                        out,
                        granted: requested.min(remaining),
                        capped_by_caller: requested > remaining,
                    });
                    return Stop::Call {
                        index: self.regs[index as usize],
                        input: self.regs[input as usize],
                    };
                }
            }
        }
        Stop::Halted
    }
}

/// Evaluates program `index` on `input` for at most `budget` steps.
pub fn eval(index: &ProgramIndex, input: u64, budget: u64) -> EvalOutcome {
    run_compiled(index.compiled(), input, budget)
}

/// [`eval`] on a program value.
pub fn eval_program(program: &Program, input: u64, budget: u64) -> EvalOutcome {
    run_compiled(Arc::new(Compiled::new(program)), input, budget)
}

/// [`eval`] on a plain numeric index.
pub fn eval_number(index: u64, input: u64, budget: u64) -> EvalOutcome {
    eval(&ProgramIndex::Number(index), input, budget)
}

pub(crate) fn run_compiled(root: Arc<Compiled>, input: u64, budget: u64) -> EvalOutcome {
    let mut cache: HashMap<u64, Arc<Compiled>> = HashMap::new();
    let mut stack = vec![Frame::new(root, input, budget)];
    loop {
        let top = stack.last_mut().expect("non-empty frame stack");
        let mut stop = top.run();
        if let Stop::Call { index, input } = stop {
            let granted = top.call.as_ref().map_or(0, |c| c.granted);
            let code = cache
                .entry(index)
                .or_insert_with(|| Arc::new(Compiled::new(&Program::decode(index))))
                .clone();
            stack.push(Frame::new(code, input, granted));
            continue;
        }
        // Unwind finished frames into their callers.
        loop {
            let done = stack.pop().expect("frame to finish");
            let Some(parent) = stack.last_mut() else {
                return match stop {
                    Stop::Halted => EvalOutcome::Halted {
                        value: done.regs[0],
                        steps: done.steps,
                    },
                    _ => EvalOutcome::BudgetExceeded { budget },
                };
            };
            let call = parent.call.take().expect("pending call in caller");
            match stop {
                Stop::Halted => {
                    parent.regs[call.out as usize] = done.regs[0].saturating_add(1);
                    parent.steps += done.steps;
                    break;
                }
                _ if call.capped_by_caller => {
                    parent.steps = parent.budget;
                    stop = Stop::Exceeded;
                }
                _ => {
                    parent.regs[call.out as usize] = 0;
                    parent.steps += call.granted;
                    break;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbering::program::Instruction::*;

    fn prog(ins: Vec<Instruction>) -> ProgramIndex {
        ProgramIndex::encode(Program::new(ins))
    }

    #[test]
    fn successor_and_identity() {
        assert_eq!(
            eval_number(2, 5, 100),
            EvalOutcome::Halted { value: 6, steps: 1 }
        );
        assert_eq!(
            eval_number(0, 9, 10),
            EvalOutcome::Halted { value: 9, steps: 0 }
        );
        assert_eq!(
            eval_number(1, 9, 10),
            EvalOutcome::Halted { value: 0, steps: 1 }
        );
    }

    #[test]
    fn self_loop_exhausts_budget() {
        let lp = prog(vec![Jump(0, 0, 0)]);
        assert_eq!(eval(&lp, 7, 50), EvalOutcome::BudgetExceeded { budget: 50 });
    }

    #[test]
    fn zero_budget() {
        assert_eq!(
            eval_number(0, 3, 0),
            EvalOutcome::Halted { value: 3, steps: 0 }
        );
        assert_eq!(
            eval_number(2, 3, 0),
            EvalOutcome::BudgetExceeded { budget: 0 }
        );
    }

    #[test]
    fn jump_out_of_range_halts() {
        // R1 == R1 always, target 9 is past the end.
        let p = prog(vec![Jump(1, 1, 9), Succ(0)]);
        assert_eq!(eval(&p, 4, 10), EvalOutcome::Halted { value: 4, steps: 1 });
    }

    #[test]
    fn huge_register_ids_are_fine() {
        let p = prog(vec![Succ(1 << 40), Transfer(1 << 40, 0)]);
        assert_eq!(eval(&p, 4, 10), EvalOutcome::Halted { value: 1, steps: 2 });
    }

    #[test]
    fn evb_calls_successor() {
        // R1 <- 2 (successor index), R2 <- 5 budget, call on R0.
        let p = prog(vec![
            Succ(1),
            Succ(1),
            Succ(2),
            Succ(2),
            Succ(2),
            Succ(2),
            Succ(2),
            Evb {
                index: 1,
                input: 0,
                budget: 2,
                out: 3,
            },
            Transfer(3, 0),
        ]);
        // successor(10) = 11 is stored as 12.
        assert_eq!(
            eval(&p, 10, 100),
            EvalOutcome::Halted {
                value: 12,
                steps: 10
            }
        );
    }

    #[test]
    fn evb_reports_divergence_as_zero() {
        let self_loop = prog(vec![Jump(0, 0, 0)]).as_u64().unwrap();
        let mut ins = vec![Succ(1); self_loop as usize];
        ins.extend([
            Succ(2),
            Succ(2),
            Succ(2),
            Evb {
                index: 1,
                input: 0,
                budget: 2,
                out: 0,
            },
        ]);
        let p = prog(ins);
        let n = self_loop + 3;
        assert_eq!(
            eval(&p, 1, 1000),
            EvalOutcome::Halted {
                value: 0,
                steps: n + 1 + 3
            }
        );
    }

    #[test]
    fn self_call_terminates() {
        // Index 11 decodes to [EVB 0 0 0 0]: run program R0 on R0 with budget R0.
        assert_eq!(
            Program::decode(11).instructions,
            vec![Evb {
                index: 0,
                input: 0,
                budget: 0,
                out: 0
            }]
        );
        let a = eval_number(11, 11, 1_000);
        let b = eval_number(11, 11, 1_000_000);
        assert_eq!(a, b);
        assert!(a.halted());
    }

    #[test]
    fn caller_cap_propagates() {
        // Requests 1000 inner steps for a self loop but has only a few left.
        let self_loop = prog(vec![Jump(0, 0, 0)]).as_u64().unwrap();
        let mut ins = vec![Succ(1); self_loop as usize];
        ins.extend(vec![Succ(2); 1000]);
        ins.push(Evb {
            index: 1,
            input: 0,
            budget: 2,
            out: 0,
        });
        let p = prog(ins);
        let used = self_loop + 1000 + 1;
        assert!(!eval(&p, 0, used + 999).halted());
        assert_eq!(
            eval(&p, 0, used + 1000),
            EvalOutcome::Halted {
                value: 0,
                steps: used + 1000
            }
        );
    }
}
