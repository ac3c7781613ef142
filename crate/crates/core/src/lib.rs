//! Exact Italian domination, Italian bondage and Italian reinforcement numbers
//! of small simple digraphs, with generators for the usual digraph families
//! and a harness that checks the known bounds and characterizations over
//! exhaustive and sampled corpora.

pub mod cli;
pub mod digraph;
pub mod edgelist;
pub mod families;
pub mod harness;
pub mod idf;
pub mod perturbation;
pub mod subsets;

pub use digraph::{Arc, Digraph, DigraphError, MAX_ORDER};
pub use families::FamilySpec;
pub use harness::{run_check, run_corpus, CheckId, CorpusConfig, Outcome, Report, TheoremVerdict};
pub use idf::{gamma_italian, verify_idf, GammaResult, Labeling, SolverError};
