//! Covers and thinnings: step-sequence witnesses for context interleaving
//! and context inclusion.
//!
//! A cover relates `g1 ⊎ g2 ~ g3` positionally: step `i` says where entry
//! `i` of `g3` goes. A thinning relates `g1 ⊆ g2`: step `i` says whether
//! entry `i` of `g2` is kept. `Both` and `Drop` are the cartesian steps;
//! purely linear witnesses contain neither.

use std::fmt;

use super::ctx::{ScopedCtx, TypedCtx, TypedEntry};
use super::order::meet;
use super::ty::{contains_top, top_of, TypeExpr};
use super::KernelError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverStep {
    Left,
    Right,
    Both,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cover(pub Vec<CoverStep>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThinStep {
    Keep,
    Drop,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Thinning(pub Vec<ThinStep>);

/// Running counters for merge meets, used by the instrumented invariant that
/// co-de Bruijn checking never meets a type involving a top.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MeetLog {
    pub meets: u64,
    pub top_arg_meets: u64,
}

impl Cover {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_linear(&self) -> bool {
        !self.0.contains(&CoverStep::Both)
    }

    pub fn left_len(&self) -> usize {
        self.0.iter().filter(|s| !matches!(s, CoverStep::Right)).count()
    }

    pub fn right_len(&self) -> usize {
        self.0.iter().filter(|s| !matches!(s, CoverStep::Left)).count()
    }

    fn split_slice<T: Clone>(&self, whole: &[T]) -> Result<(Vec<T>, Vec<T>), KernelError> {
        if self.len() != whole.len() {
            return Err(KernelError::CoverLength { cover: self.len(), ctx: whole.len() });
        }
        let mut left = Vec::with_capacity(self.left_len());
        let mut right = Vec::with_capacity(self.right_len());
        for (step, item) in self.0.iter().zip(whole) {
            match step {
                CoverStep::Left => left.push(item.clone()),
                CoverStep::Right => right.push(item.clone()),
                CoverStep::Both => {
                    left.push(item.clone());
                    right.push(item.clone());
                }
            }
        }
        Ok((left, right))
    }

    /// Splits a scoped context into the two premise contexts.
    pub fn split_scoped(&self, g3: &ScopedCtx) -> Result<(ScopedCtx, ScopedCtx), KernelError> {
        let (l, r) = self.split_slice(&g3.0)?;
        Ok((ScopedCtx(l), ScopedCtx(r)))
    }

    /// Splits a typed context; `Both` steps copy the entry to both sides.
    pub fn split_typed(&self, g3: &TypedCtx) -> Result<(TypedCtx, TypedCtx), KernelError> {
        let (l, r) = self.split_slice(&g3.0)?;
        Ok((TypedCtx(l), TypedCtx(r)))
    }

    /// Merges two typed contexts along this scoped cover. `Left` copies from
    /// `g1`, `Right` from `g2`, and `Both` takes the meet of the two types,
    /// failing if no meet exists.
    pub fn merge_typed(
        &self,
        g1: &TypedCtx,
        g2: &TypedCtx,
        log: &mut MeetLog,
    ) -> Result<TypedCtx, KernelError> {
        if g1.len() != self.left_len() || g2.len() != self.right_len() {
            return Err(KernelError::CoverLength {
                cover: self.len(),
                ctx: g1.len() + g2.len(),
            });
        }
        let mut it1 = g1.iter();
        let mut it2 = g2.iter();
        let mut out = TypedCtx::new();
        for step in &self.0 {
            match step {
                CoverStep::Left => out.push(it1.next().unwrap().clone()),
                CoverStep::Right => out.push(it2.next().unwrap().clone()),
                CoverStep::Both => {
                    let a = it1.next().unwrap();
                    let b = it2.next().unwrap();
                    match meet_counted(&a.ty, &b.ty, log)? {
                        Some(t) => out.push(TypedEntry::new(a.name.clone(), t)),
                        None => {
                            return Err(KernelError::MergeConflict {
                                name: a.name.clone(),
                                left: a.ty.clone(),
                                right: b.ty.clone(),
                            })
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// A meet that also records whether either argument involves a top.
pub fn meet_counted(
    a: &TypeExpr,
    b: &TypeExpr,
    log: &mut MeetLog,
) -> Result<Option<TypeExpr>, KernelError> {
    log.meets += 1;
    if contains_top(a) || contains_top(b) {
        log.top_arg_meets += 1;
    }
    meet(a, b)
}

impl Thinning {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_linear(&self) -> bool {
        !self.0.contains(&ThinStep::Drop)
    }

    pub fn kept_len(&self) -> usize {
        self.0.iter().filter(|s| matches!(s, ThinStep::Keep)).count()
    }

    fn restrict_slice<T: Clone>(&self, whole: &[T]) -> Result<Vec<T>, KernelError> {
        if self.len() != whole.len() {
            return Err(KernelError::ThinningLength { thin: self.len(), ctx: whole.len() });
        }
        Ok(self
            .0
            .iter()
            .zip(whole)
            .filter(|(s, _)| matches!(s, ThinStep::Keep))
            .map(|(_, item)| item.clone())
            .collect())
    }

    /// Keeps exactly the `Keep`-marked entries of a scoped context.
    pub fn restrict_scoped(&self, g2: &ScopedCtx) -> Result<ScopedCtx, KernelError> {
        Ok(ScopedCtx(self.restrict_slice(&g2.0)?))
    }

    pub fn restrict_typed(&self, g2: &TypedCtx) -> Result<TypedCtx, KernelError> {
        Ok(TypedCtx(self.restrict_slice(&g2.0)?))
    }

    /// Extends a typed context along this thinning: `Keep` positions copy the
    /// next entry of `kept`, `Drop` positions synthesise the target name at
    /// the top type of its polarity.
    pub fn extend_typed(
        &self,
        kept: &TypedCtx,
        target: &ScopedCtx,
    ) -> Result<TypedCtx, KernelError> {
        if self.len() != target.len() {
            return Err(KernelError::ThinningLength { thin: self.len(), ctx: target.len() });
        }
        if self.kept_len() != kept.len() {
            return Err(KernelError::ExtendArity { kept: self.kept_len(), given: kept.len() });
        }
        let mut it = kept.iter();
        let mut out = TypedCtx::new();
        for (step, entry) in self.0.iter().zip(target.iter()) {
            match step {
                ThinStep::Keep => out.push(it.next().unwrap().clone()),
                ThinStep::Drop => {
                    out.push(TypedEntry::new(entry.name.clone(), top_of(entry.polarity)))
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                CoverStep::Left => "L",
                CoverStep::Right => "R",
                CoverStep::Both => "B",
            })?;
        }
        Ok(())
    }
}

impl fmt::Display for Thinning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                ThinStep::Keep => "K",
                ThinStep::Drop => "D",
            })?;
        }
        Ok(())
    }
}

impl FromIterator<CoverStep> for Cover {
    fn from_iter<I: IntoIterator<Item = CoverStep>>(it: I) -> Self {
        Cover(it.into_iter().collect())
    }
}

impl FromIterator<ThinStep> for Thinning {
    fn from_iter<I: IntoIterator<Item = ThinStep>>(it: I) -> Self {
        Thinning(it.into_iter().collect())
    }
}
