use alloc::string::String;
use core::fmt;

use crate::action::CompatibilityWitness;

/// Which group axiom a candidate Cayley table violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotAGroupReason {
    NotLatinSquare,
    NoIdentity,
    NotAssociative,
    MissingInverse,
}

impl fmt::Display for NotAGroupReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NotAGroupReason::NotLatinSquare => "not-latin-square",
            NotAGroupReason::NoIdentity => "no-identity",
            NotAGroupReason::NotAssociative => "not-associative",
            NotAGroupReason::MissingInverse => "missing-inverse",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input (wrong shape, out of range entries, bad lengths).
    Malformed(String),
    /// The table is well formed but fails a group axiom. The witness triple
    /// is `(x, y, z)` for associativity and `(row, col_a, col_b)` for the
    /// Latin square check.
    NotAGroup {
        reason: NotAGroupReason,
        witness: (usize, usize, usize),
    },
    UnknownCatalogKey(String),
    /// `g^-1 n g` left the subgroup.
    NotNormal { g: usize, n: usize },
    /// The map breaks `f(x * gen) = f(x) * f(gen)` at `x`.
    NotAHomomorphism {
        x: usize,
        generator: usize,
        expected: usize,
        found: usize,
    },
    GensDoNotGenerate { generated: usize, order: usize },
    BudgetExceeded { what: &'static str, limit: u64 },
    NotASubgroup { a: usize, b: usize },
    AlphaNotInjective { h1: usize, h2: usize },
    /// Conjugating `member` by the inner automorphism of `g` leaves the image.
    NormalizerConditionFails { g: usize, member: usize },
    PsiNotInvolution { element: usize },
    IncompatibleActions(CompatibilityWitness),
    /// Coset enumeration did not complete within its limits. This never
    /// means the presented group is infinite.
    LimitExceeded { cosets: usize, deductions: u64 },
    TableIncomplete,
    /// An internal consistency check failed; indicates a bug.
    Internal(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Malformed(msg) => write!(f, "malformed input: {msg}"),
            Error::NotAGroup { reason, witness } => write!(
                f,
                "not a group ({reason}), witness ({}, {}, {})",
                witness.0, witness.1, witness.2
            ),
            Error::UnknownCatalogKey(key) => write!(f, "unknown catalog key `{key}`"),
            Error::NotNormal { g, n } => {
                write!(f, "subgroup is not normal: conjugate of {n} by {g} leaves it")
            }
            Error::NotAHomomorphism { x, generator, expected, found } => write!(
                f,
                "not a homomorphism: image of {x}*gen[{generator}] must be {expected} but is {found}"
            ),
            Error::GensDoNotGenerate { generated, order } => write!(
                f,
                "generators span a subgroup of order {generated}, group has order {order}"
            ),
            Error::BudgetExceeded { what, limit } => {
                write!(f, "search budget exceeded: {what} > {limit}")
            }
            Error::NotASubgroup { a, b } => {
                write!(f, "not a subgroup: product of {a} and {b} is missing")
            }
            Error::AlphaNotInjective { h1, h2 } => {
                write!(f, "alpha is not injective: {h1} and {h2} share an image")
            }
            Error::NormalizerConditionFails { g, member } => write!(
                f,
                "Inn(G) does not normalize alpha(H): conjugating automorphism {member} by inner({g}) leaves the image"
            ),
            Error::PsiNotInvolution { element } => {
                write!(f, "automorphism is not an involution at element {element}")
            }
            Error::IncompatibleActions(w) => write!(f, "actions are not compatible: {w}"),
            Error::LimitExceeded { cosets, deductions } => write!(
                f,
                "coset enumeration incomplete after {cosets} cosets / {deductions} steps (possibly infinite or budget too small)"
            ),
            Error::TableIncomplete => f.write_str("coset table is incomplete"),
            Error::Internal(msg) => write!(f, "internal consistency failure: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
