//! Syntax tree of the declaration language.

use std::fmt;

/// Half-open byte range `start..end` with the 1-based line and column of `start`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub start: usize,
    pub end: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// A node with its location. Equality ignores the location.
#[derive(Clone, Debug)]
pub struct Located<T> {
    pub node: T,
    pub span: SourceSpan,
}

impl<T: PartialEq> PartialEq for Located<T> {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl<T: Eq> Eq for Located<T> {}

pub type Name = Located<String>;

/// A permutation in cycle notation; `()` is the identity.
pub type Cycles = Vec<Vec<u32>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Group { name: Name, degree: usize, generators: Vec<Cycles> },
    GSet { name: Name, size: usize, group: Name, action: Vec<(Cycles, Vec<u32>)> },
    Map { name: Name, source: Name, target: Name, images: Vec<u32> },
    Span { name: Name, left: Name, right: Name },
    Command(Command),
}

/// A flag-variety instance `A<rank> q=<q>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flags {
    pub rank: usize,
    pub q: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Flags(Flags),
    Names(Vec<Name>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RandomCheck {
    Cardinality,
    Functoriality,
    Monoidal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    /// `check cardinality X//G`
    Cardinality { gset: Name, group: Name },
    /// `degroup span S`
    Degroup { span: Name },
    /// `compose T, S` is `T ∘ S`.
    Compose { spans: Vec<Name> },
    /// `iso S, T`
    Iso { left: Name, right: Name },
    HeckeVerify(Flags),
    MainClaim(Target),
    Zamolodchikov(Flags),
    YangBaxter(Flags),
    /// `grothendieck roundtrip S` or `grothendieck roundtrip A2 q=2 count=N`
    Grothendieck { target: Target, count: Option<usize> },
    ReferenceMatrices { q: u64 },
    /// `random cardinality count=N`
    Random { check: RandomCheck, count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Program {
    pub statements: Vec<Located<Statement>>,
}
