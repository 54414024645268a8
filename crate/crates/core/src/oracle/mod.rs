//! The declarative typing oracle and corpus generators: the independent
//! ground truth the bidirectional checkers are verified against.

pub mod derive;
pub mod enumerate;
pub mod generate;

pub use derive::{agree, Judgement, JudgementSet, Oracle};
pub use enumerate::{enumerate_types, TypeUniverse};
pub use generate::{generate_corpus, prelude};

use crate::kernel::config::StructConfig;
use crate::scope::Query;

/// All judgements derivable for the query's fixed inputs; see
/// [`Oracle::derive_query`]. A fresh oracle is built per query so the memo
/// tables cannot alias across queries.
pub fn derive_query(q: &Query, u: &TypeUniverse, cfg: &StructConfig) -> JudgementSet {
    Oracle::new(u, cfg, q.calculus).derive_query(q)
}
