//! Weihrauch reductions: an adversarial checker and the catalog of
//! explicit witnesses with mutant negative controls.

mod catalog;
mod harness;

pub use catalog::*;
pub use harness::{
    check_reduction, identity, mutate, InstanceRecord, MutantMode, Postprocess, Preprocess,
    ReductionPair, ReductionReport, Witness, MAX_LISTED,
};
