//! Corpus expansion and claim verification over generated graphs.

pub mod corpus;
pub mod verify;

pub use corpus::{expand_spec, CorpusSpec};
pub use verify::{verify_corpus, verify_graph, EqualityCase, Flag, VerifyReport, VerifyRow};
