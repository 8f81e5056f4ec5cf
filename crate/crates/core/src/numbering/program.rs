//! Instructions, programs and their total numbering.
//!
//! An instruction code `m` decodes as `tag = m mod 5`, `payload = m div 5`;
//! multi-argument payloads are nested Cantor pairs. A program is a list
//! coded by `[] ↦ 0`, `x :: t ↦ pair(x, code(t)) + 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::pairing::{pair, pair_wide, unpair};

/// Register identifier.
pub type Reg = u64;

/// One URM-lite instruction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Instruction {
    /// `R[r] <- 0`
    Zero(Reg),
    /// `R[r] <- R[r] + 1`
    Succ(Reg),
    /// `R[dst] <- R[src]`
    Transfer(Reg, Reg),
    /// Jump to instruction `target` when `R[a] == R[b]`.
    Jump(Reg, Reg, u64),
    /// Budgeted universal call: runs program `R[index]` on `R[input]` with
    /// step budget `R[budget]`, storing `value + 1` in `R[out]` on halting
    /// and `0` otherwise.
    Evb {
        index: Reg,
        input: Reg,
        budget: Reg,
        out: Reg,
    },
}

impl Instruction {
    /// Decodes an instruction code. Every natural decodes.
    pub fn decode(code: u64) -> Instruction {
        let payload = code / 5;
        match code % 5 {
            0 => Instruction::Zero(payload),
            1 => Instruction::Succ(payload),
            2 => {
                let (a, b) = unpair(payload);
                Instruction::Transfer(a, b)
            }
            3 => {
                let (a, rest) = unpair(payload);
                let (b, k) = unpair(rest);
                Instruction::Jump(a, b, k)
            }
            _ => {
                let (index, rest) = unpair(payload);
                let (input, rest) = unpair(rest);
                let (budget, out) = unpair(rest);
                Instruction::Evb {
                    index,
                    input,
                    budget,
                    out,
                }
            }
        }
    }

    /// Instruction code, or `None` if it does not fit in 128 bits.
    pub fn code_wide(&self) -> Option<u128> {
        let (payload, tag) = match *self {
            Instruction::Zero(r) => (r as u128, 0),
            Instruction::Succ(r) => (r as u128, 1),
            Instruction::Transfer(a, b) => (pair_wide(a as u128, b as u128)?, 2),
            Instruction::Jump(a, b, k) => {
                (pair_wide(a as u128, pair_wide(b as u128, k as u128)?)?, 3)
            }
            Instruction::Evb {
                index,
                input,
                budget,
                out,
            } => {
                let inner = pair_wide(budget as u128, out as u128)?;
                let inner = pair_wide(input as u128, inner)?;
                (pair_wide(index as u128, inner)?, 4)
            }
        };
        payload.checked_mul(5)?.checked_add(tag)
    }

    fn code_big(&self) -> BigUint {
        fn bpair(x: BigUint, y: BigUint) -> BigUint {
            let s = &x + &y;
            (&s * (&s + 1u32)) / 2u32 + y
        }
        let big = BigUint::from;
        let (payload, tag) = match *self {
            Instruction::Zero(r) => (big(r), 0u32),
            Instruction::Succ(r) => (big(r), 1),
            Instruction::Transfer(a, b) => (bpair(big(a), big(b)), 2),
            Instruction::Jump(a, b, k) => (bpair(big(a), bpair(big(b), big(k))), 3),
            Instruction::Evb {
                index,
                input,
                budget,
                out,
            } => (
                bpair(big(index), bpair(big(input), bpair(big(budget), big(out)))),
                4,
            ),
        };
        payload * 5u32 + tag
    }

    /// Registers read or written by this instruction.
    pub fn registers(&self) -> impl Iterator<Item = Reg> {
        let regs: [Option<Reg>; 4] = match *self {
            Instruction::Zero(r) | Instruction::Succ(r) => [Some(r), None, None, None],
            Instruction::Transfer(a, b) | Instruction::Jump(a, b, _) => {
                [Some(a), Some(b), None, None]
            }
            Instruction::Evb {
                index,
                input,
                budget,
                out,
            } => [Some(index), Some(input), Some(budget), Some(out)],
        };
        regs.into_iter().flatten()
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Instruction::Zero(r) => write!(f, "Z {r}"),
            Instruction::Succ(r) => write!(f, "S {r}"),
            Instruction::Transfer(a, b) => write!(f, "T {a} {b}"),
            Instruction::Jump(a, b, k) => write!(f, "J {a} {b} {k}"),
            Instruction::Evb {
                index,
                input,
                budget,
                out,
            } => write!(f, "EVB {index} {input} {budget} {out}"),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseProgramError {
    #[error("line {line}: unknown mnemonic `{mnemonic}`")]
    UnknownMnemonic { line: usize, mnemonic: String },
    #[error("line {line}: `{mnemonic}` takes {expected} arguments, got {got}")]
    Arity {
        line: usize,
        mnemonic: String,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: bad argument `{arg}`")]
    BadArgument { line: usize, arg: String },
}

impl FromStr for Instruction {
    type Err = ParseProgramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_instruction(s, 1)
    }
}

fn parse_instruction(text: &str, line: usize) -> Result<Instruction, ParseProgramError> {
    let mut words = text.split_whitespace();
    let mnemonic = words.next().unwrap_or_default();
    let args = words
        .map(|w| {
            w.parse::<u64>().map_err(|_| ParseProgramError::BadArgument {
                line,
                arg: w.to_string(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let expected = match mnemonic {
        "Z" | "S" => 1,
        "T" => 2,
        "J" => 3,
        "EVB" => 4,
        _ => {
            return Err(ParseProgramError::UnknownMnemonic {
                line,
                mnemonic: mnemonic.to_string(),
            })
        }
    };
    if args.len() != expected {
        return Err(ParseProgramError::Arity {
            line,
            mnemonic: mnemonic.to_string(),
            expected,
            got: args.len(),
        });
    }
    Ok(match mnemonic {
        "Z" => Instruction::Zero(args[0]),
        "S" => Instruction::Succ(args[0]),
        "T" => Instruction::Transfer(args[0], args[1]),
        "J" => Instruction::Jump(args[0], args[1], args[2]),
        _ => Instruction::Evb {
            index: args[0],
            input: args[1],
            budget: args[2],
            out: args[3],
        },
    })
}

/// A finite instruction list.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Program {
    pub instructions: Vec<Instruction>,
}

impl Program {
    pub fn new(instructions: Vec<Instruction>) -> Self {
        Program { instructions }
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    /// Decodes a list code.
    pub fn decode(mut code: u64) -> Program {
        let mut instructions = Vec::new();
        while code > 0 {
            let (head, tail) = unpair(code - 1);
            instructions.push(Instruction::decode(head));
            code = tail;
        }
        Program { instructions }
    }

    /// List code if it fits in a `u64`.
    pub fn code_u64(&self) -> Option<u64> {
        let mut code: u128 = 0;
        for ins in self.instructions.iter().rev() {
            code = pair_wide(ins.code_wide()?, code)?.checked_add(1)?;
            if code > u64::MAX as u128 {
                return None;
            }
        }
        Some(code as u64)
    }

    /// Exact list code, or `None` if it would exceed `max_bits` bits.
    ///
    /// Each instruction roughly doubles the bit length of the code, so this
    /// is only feasible for short programs.
    pub fn code_big(&self, max_bits: u64) -> Option<BigUint> {
        let mut code = BigUint::zero();
        for ins in self.instructions.iter().rev() {
            let x = ins.code_big();
            let s = &x + &code;
            code = (&s * (&s + BigUint::one())) / 2u32 + code + 1u32;
            if code.bits() > max_bits {
                return None;
            }
        }
        Some(code)
    }

    /// Largest register mentioned, if any.
    pub fn max_register(&self) -> Option<Reg> {
        self.instructions.iter().flat_map(|i| i.registers()).max()
    }

    /// Parses the one-instruction-per-line text form. `;` also separates
    /// instructions and `#` starts a comment.
    pub fn parse(text: &str) -> Result<Program, ParseProgramError> {
        let mut instructions = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or_default();
            for part in line.split(';') {
                let part = part.trim();
                if !part.is_empty() {
                    instructions.push(parse_instruction(part, lineno + 1)?);
                }
            }
        }
        Ok(Program { instructions })
    }

    /// Single-line rendering with `;` separators.
    pub fn to_inline(&self) -> String {
        self.instructions
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, ins) in self.instructions.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{ins}")?;
        }
        Ok(())
    }
}

impl FromStr for Program {
    type Err = ParseProgramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Program::parse(s)
    }
}

/// Encodes a list code directly, for callers that build codes by hand.
pub fn cons_code(head: u64, tail: u64) -> u64 {
    pair(head, tail) + 1
}
