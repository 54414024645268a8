//! polcheck: a workbench for bicontextual bidirectional typechecking.
//!
//! The crate is organised around the pipeline `surface` (text to raw syntax)
//! → `scope` (raw syntax to intrinsically scoped co-de Bruijn syntax) →
//! `lambda`/`systeml` (the bidirectional checkers), with `kernel` holding
//! the shared type language and context machinery and `oracle` the
//! declarative ground truth used to verify the checkers.

pub mod diag;
pub mod driver;
pub mod kernel;
pub mod lambda;
pub mod oracle;
pub mod scope;
pub mod surface;
pub mod systeml;

pub use kernel::config::{Preset, Side, StructConfig, CARTESIAN, LINEAR, LNL_BANG, LNL_FULL};
pub use kernel::ctx::{ScopedCtx, ScopedEntry, TypedCtx, TypedEntry};
pub use kernel::cover::{Cover, CoverStep, MeetLog, Thinning, ThinStep};
pub use kernel::ty::{polarity_of, Family, Polarity, TypeExpr};
pub use kernel::KernelError;
pub use driver::run_query;
pub use scope::{Calculus, JudgementClass, Query};
pub use surface::ast::{Directive, QueryKind, RawQuery, RawTerm, Span};
