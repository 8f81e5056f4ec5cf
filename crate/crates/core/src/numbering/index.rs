use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;

use super::machine::Compiled;
use super::program::Program;

/// Bits up to which a large index is still printed in decimal.
const DECIMAL_BITS: u64 = 512;

/// A Gödel number.
///
/// Every natural is a valid index. Indices that fit in a `u64` are stored as
/// numbers; larger ones (every synthesized program beyond a handful of
/// instructions) are stored as the program they decode to, since the list
/// code roughly doubles in length per instruction. The representation is
/// canonical: a `Code` index never fits in a `u64`.
#[derive(Clone)]
pub enum ProgramIndex {
    Number(u64),
    Code(Arc<CodedProgram>),
}

pub struct CodedProgram {
    program: Program,
    compiled: OnceLock<Arc<Compiled>>,
}

impl ProgramIndex {
    pub fn new(value: u64) -> Self {
        ProgramIndex::Number(value)
    }

    /// Index of `program`.
    pub fn encode(program: Program) -> Self {
        match program.code_u64() {
            Some(code) => ProgramIndex::Number(code),
            None => ProgramIndex::Code(Arc::new(CodedProgram {
                program,
                compiled: OnceLock::new(),
            })),
        }
    }

    pub fn decode(&self) -> Program {
        match self {
            ProgramIndex::Number(n) => Program::decode(*n),
            ProgramIndex::Code(c) => c.program.clone(),
        }
    }

    pub fn as_u64(&self) -> Option<u64> {
        match self {
            ProgramIndex::Number(n) => Some(*n),
            ProgramIndex::Code(_) => None,
        }
    }

    /// Exact value when it has at most `max_bits` bits.
    pub fn to_biguint(&self, max_bits: u64) -> Option<BigUint> {
        match self {
            ProgramIndex::Number(n) => Some(BigUint::from(*n)),
            ProgramIndex::Code(c) => c.program.code_big(max_bits),
        }
    }

    /// Whether this index is at most `bound`.
    pub fn is_at_most(&self, bound: u64) -> bool {
        matches!(self, ProgramIndex::Number(n) if *n <= bound)
    }

    pub(crate) fn compiled(&self) -> Arc<Compiled> {
        match self {
            ProgramIndex::Number(n) => Arc::new(Compiled::new(&Program::decode(*n))),
            ProgramIndex::Code(c) => c
                .compiled
                .get_or_init(|| Arc::new(Compiled::new(&c.program)))
                .clone(),
        }
    }
}

impl From<u64> for ProgramIndex {
    fn from(value: u64) -> Self {
        ProgramIndex::Number(value)
    }
}

impl From<Program> for ProgramIndex {
    fn from(program: Program) -> Self {
        ProgramIndex::encode(program)
    }
}

impl PartialEq for ProgramIndex {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ProgramIndex::Number(a), ProgramIndex::Number(b)) => a == b,
            (ProgramIndex::Code(a), ProgramIndex::Code(b)) => {
                Arc::ptr_eq(a, b) || a.program == b.program
            }
            _ => false,
        }
    }
}

impl Eq for ProgramIndex {}

impl Hash for ProgramIndex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            ProgramIndex::Number(n) => {
                0u8.hash(state);
                n.hash(state);
            }
            ProgramIndex::Code(c) => {
                1u8.hash(state);
                c.program.hash(state);
            }
        }
    }
}

impl fmt::Display for ProgramIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProgramIndex::Number(n) => write!(f, "{n}"),
            ProgramIndex::Code(c) => match c.program.code_big(DECIMAL_BITS) {
                Some(v) => write!(f, "{v}"),
                None => write!(
                    f,
                    "prog:{}:{:016x}",
                    c.program.len(),
                    fnv1a(c.program.to_inline().as_bytes())
                ),
            },
        }
    }
}

impl fmt::Debug for ProgramIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProgramIndex({self})")
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbering::program::Instruction;

    #[test]
    fn canonical_representation() {
        let small = ProgramIndex::encode(Program::new(vec![Instruction::Succ(0)]));
        assert_eq!(small, ProgramIndex::Number(2));
        let long = Program::new(vec![Instruction::Succ(0); 12]);
        let big = ProgramIndex::encode(long.clone());
        assert!(big.as_u64().is_none());
        assert_eq!(big, ProgramIndex::encode(long.clone()));
        assert_eq!(big.decode(), long);
        assert_ne!(big, ProgramIndex::Number(2));
    }

    #[test]
    fn display_forms() {
        assert_eq!(ProgramIndex::new(412).to_string(), "412");
        let mid = ProgramIndex::encode(Program::new(vec![Instruction::Succ(0); 5]));
        let expected = mid.to_biguint(512).unwrap().to_string();
        assert_eq!(mid.to_string(), expected);
        let huge = ProgramIndex::encode(Program::new(vec![Instruction::Succ(0); 40]));
        assert!(huge.to_string().starts_with("prog:40:"));
    }
}
