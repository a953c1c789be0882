use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::poly::Poly;
use super::Expr;

/// Rank shared by every opaque-function application; they sort after all
/// chart symbols and are then ordered structurally.
pub(crate) const APPLY_RANK: u32 = u32::MAX;

/// A polynomial indeterminate.
///
/// Symbols and radicals carry a rank fixed by their chart, which is the
/// variable order used by the graded-lex monomial order. Applications of
/// opaque functions are treated as independent transcendentals.
#[derive(Clone)]
pub struct Atom(Arc<AtomData>);

struct AtomData {
    rank: u32,
    name: Arc<str>,
    kind: AtomKind,
}

#[derive(Clone, Debug)]
pub enum AtomKind {
    Symbol,
    /// `s` with `s^2 = radicand`, positive branch.
    Radical { radicand: Poly },
    /// `head^{(order)}(arg)`.
    Apply { order: u32, arg: Expr },
}

impl Atom {
    pub(crate) fn symbol(rank: u32, name: &str) -> Atom {
        Atom(Arc::new(AtomData {
            rank,
            name: name.into(),
            kind: AtomKind::Symbol,
        }))
    }

    pub(crate) fn radical(rank: u32, name: &str, radicand: Poly) -> Atom {
        Atom(Arc::new(AtomData {
            rank,
            name: name.into(),
            kind: AtomKind::Radical { radicand },
        }))
    }

    pub fn apply(head: &str, order: u32, arg: Expr) -> Atom {
        Atom(Arc::new(AtomData {
            rank: APPLY_RANK,
            name: head.into(),
            kind: AtomKind::Apply { order, arg },
        }))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn rank(&self) -> u32 {
        self.0.rank
    }

    pub fn kind(&self) -> &AtomKind {
        &self.0.kind
    }

    pub fn is_symbol(&self) -> bool {
        matches!(self.0.kind, AtomKind::Symbol)
    }

    pub fn radicand(&self) -> Option<&Poly> {
        match &self.0.kind {
            AtomKind::Radical { radicand } => Some(radicand),
            _ => None,
        }
    }

    pub fn is_radical(&self) -> bool {
        self.radicand().is_some()
    }

    pub fn is_apply(&self) -> bool {
        matches!(self.0.kind, AtomKind::Apply { .. })
    }
}

impl PartialEq for Atom {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Atom {}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0
            .rank
            .cmp(&other.0.rank)
            .then_with(|| self.0.name.cmp(&other.0.name))
            .then_with(|| match (&self.0.kind, &other.0.kind) {
                (
                    AtomKind::Apply { order: o1, arg: a1 },
                    AtomKind::Apply { order: o2, arg: a2 },
                ) => o1.cmp(o2).then_with(|| a1.cmp(a2)),
                _ => Ordering::Equal,
            })
    }
}

impl Hash for Atom {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.rank.hash(state);
        self.0.name.hash(state);
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            AtomKind::Apply { order: 0, arg } => write!(f, "{}({})", self.0.name, arg),
            AtomKind::Apply { order, arg } => write!(f, "{}__{}({})", self.0.name, order, arg),
            _ => f.write_str(&self.0.name),
        }
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
