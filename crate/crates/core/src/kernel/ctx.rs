//! Ordered variable contexts, scoped (names only) and typed.

use std::fmt;

use super::ty::{polarity_of, Polarity, TypeExpr};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScopedEntry {
    pub name: String,
    pub polarity: Polarity,
}

impl ScopedEntry {
    pub fn new(name: impl Into<String>, polarity: Polarity) -> Self {
        ScopedEntry { name: name.into(), polarity }
    }
}

/// An ordered name context. Order is significant; names need not be distinct
/// across polarities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScopedCtx(pub Vec<ScopedEntry>);

impl ScopedCtx {
    pub fn new() -> Self {
        ScopedCtx(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ScopedEntry> {
        self.0.iter()
    }

    pub fn push(&mut self, e: ScopedEntry) {
        self.0.push(e);
    }
}

impl FromIterator<ScopedEntry> for ScopedCtx {
    fn from_iter<I: IntoIterator<Item = ScopedEntry>>(it: I) -> Self {
        ScopedCtx(it.into_iter().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypedEntry {
    pub name: String,
    pub ty: TypeExpr,
}

impl TypedEntry {
    pub fn new(name: impl Into<String>, ty: TypeExpr) -> Self {
        TypedEntry { name: name.into(), ty }
    }

    /// The polarity tag of an entry is always the polarity of its type.
    pub fn polarity(&self) -> Polarity {
        polarity_of(&self.ty)
    }

    pub fn erase(&self) -> ScopedEntry {
        ScopedEntry { name: self.name.clone(), polarity: self.polarity() }
    }
}

/// An ordered typed context.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypedCtx(pub Vec<TypedEntry>);

impl TypedCtx {
    pub fn new() -> Self {
        TypedCtx(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, TypedEntry> {
        self.0.iter()
    }

    pub fn push(&mut self, e: TypedEntry) {
        self.0.push(e);
    }

    pub fn pop(&mut self) -> Option<TypedEntry> {
        self.0.pop()
    }

    /// Erasing types yields a scoped context.
    pub fn erase(&self) -> ScopedCtx {
        self.iter().map(TypedEntry::erase).collect()
    }

    /// Rightmost entry with the given name, the one a shadowing lookup sees.
    pub fn lookup(&self, name: &str) -> Option<&TypedEntry> {
        self.iter().rev().find(|e| e.name == name)
    }
}

impl FromIterator<TypedEntry> for TypedCtx {
    fn from_iter<I: IntoIterator<Item = TypedEntry>>(it: I) -> Self {
        TypedCtx(it.into_iter().collect())
    }
}

impl fmt::Display for ScopedCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "·");
        }
        let mut first = true;
        for e in self.iter() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{}{}", e.name, e.polarity.mark())?;
        }
        Ok(())
    }
}

impl fmt::Display for TypedCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "·");
        }
        let mut first = true;
        for e in self.iter() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{}{} : {}", e.name, e.polarity().mark(), e.ty)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::ty::TypeExpr::*;

    #[test]
    fn erasure_keeps_names_and_polarity() {
        let ctx: TypedCtx = [
            TypedEntry::new("x", PosAtom("P".into())),
            TypedEntry::new("k", NegAtom("N".into())),
        ]
        .into_iter()
        .collect();
        let scoped = ctx.erase();
        assert_eq!(scoped.0[0], ScopedEntry::new("x", Polarity::Positive));
        assert_eq!(scoped.0[1], ScopedEntry::new("k", Polarity::Negative));
        assert_eq!(ctx.to_string(), "x+ : P, k- : N");
    }
}
