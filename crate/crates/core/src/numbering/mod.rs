//! The URM-lite machine and its Gödel numbering.

pub mod asm;
pub mod index;
pub mod looplang;
pub mod machine;
pub mod pairing;
pub mod program;
pub mod synth;

pub use index::ProgramIndex;
pub use machine::{eval, eval_number, eval_program, EvalOutcome};
pub use pairing::{checked_pair, pair, unpair};
pub use program::{cons_code, Instruction, ParseProgramError, Program, Reg};
