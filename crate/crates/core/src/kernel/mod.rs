//! Type language, contexts, covers, thinnings, the subtype order and the
//! structural configuration that every checker depends on. Everything here
//! is an immutable value and every operation is a pure function.

pub mod config;
pub mod ctx;
pub mod cover;
pub mod order;
pub mod ty;

use thiserror::Error;

use ty::TypeExpr;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum KernelError {
    #[error("cover of length {cover} applied to context of length {ctx}")]
    CoverLength { cover: usize, ctx: usize },
    #[error("thinning of length {thin} applied to context of length {ctx}")]
    ThinningLength { thin: usize, ctx: usize },
    #[error("thinning keeps {kept} entries but {given} were supplied")]
    ExtendArity { kept: usize, given: usize },
    #[error("no meet for `{left}` and `{right}` at variable {name}")]
    MergeConflict { name: String, left: TypeExpr, right: TypeExpr },
    #[error("cannot relate types from different calculi: `{left}` vs `{right}`")]
    MixedFamilies { left: TypeExpr, right: TypeExpr },
    #[error("cannot relate types of different polarities: `{left}` vs `{right}`")]
    MixedPolarities { left: TypeExpr, right: TypeExpr },
}
