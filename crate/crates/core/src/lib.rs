pub mod numbering;
pub mod spaces;
pub mod oracles;
pub mod problems;
pub mod learners;
pub mod reductions;
pub mod corpus;
pub mod config;

pub use config::RunConfig;
pub use corpus::{Corpus, CorpusKind};
pub use numbering::ProgramIndex;
pub use oracles::{OracleConfig, Universe};
pub use problems::{Answer, Context, Instance, Problem};
pub use spaces::SeqDescriptor;
