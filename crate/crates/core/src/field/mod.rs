//! Exact arithmetic in the tower k ⊂ L ⊂ E.
//!
//! A [`Field`] value is a *context*: it owns the parameters (the prime, the
//! quadratic constant, ...) and performs arithmetic on plain element values.
//! This keeps elements small (`u64` for prime fields) and lets every
//! algorithm in the crate be generic over the ground field.

mod cubic;
pub mod poly;
mod prime;
mod quadratic;
mod rational;

pub use cubic::{cubic_is_irreducible, first_irreducible_cubic, has_rational_root, CubicAlgebra, CubicRing, EElem, NormQuotients};
pub use prime::PrimeField;
pub use quadratic::{LElem, QuadKind, QuadraticEtale};
pub use rational::{Rational, Rationals};

use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng;

use crate::Error;

/// Arithmetic context for a commutative ring whose nonzero elements are
/// (almost always) units.
///
/// Fields proper return `Some` from [`Field::inv`] for every nonzero input.
/// The split quadratic algebra k×k also implements this trait; there
/// `inv` returns `None` on zero divisors.
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Characteristic; 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    /// The `i`-th element in a fixed enumeration order (`i < order`).
    ///
    /// Index 0 is always zero. Enumeration by index lets callers split
    /// searches into disjoint ranges.
    fn element_at(&self, i: u64) -> Self::Elem;
    /// Inverse of [`Field::element_at`] for finite rings.
    fn index_of(&self, a: &Self::Elem) -> u64;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, Error>;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }
    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
    /// All elements, for finite rings.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        let n = self.order()?;
        Some((0..n).map(|i| self.element_at(i)).collect())
    }
    fn is_finite(&self) -> bool {
        self.order().is_some()
    }
    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// A field that is also a valid ground field k for the octonion models:
/// a prime field or the rationals.
pub trait GroundField: Field {
    /// Whether `a` is a square in k. `None` when undecidable cheaply.
    fn is_square(&self, a: &Self::Elem) -> bool;
    /// A square root if one exists.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Description used in reports: the prime, or `"Q"`.
    fn spec(&self) -> FieldSpec;
    /// Sign of a nonzero element for ordered fields; `None` for prime fields.
    fn sign(&self, a: &Self::Elem) -> Option<std::cmp::Ordering>;
    /// Squarefree representative of the square class (rationals only).
    fn square_class(&self, a: &Self::Elem) -> Self::Elem;
}

/// Field choice as it appears on the command line and in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Prime(u64),
    Rationals(RationalTag),
}

/// Serializes as the string `"Q"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RationalTag;

impl serde::Serialize for RationalTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("Q")
    }
}

impl<'de> serde::Deserialize<'de> for RationalTag {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "Q" {
            Ok(RationalTag)
        } else {
            Err(serde::de::Error::custom(format!("expected \"Q\", got {s:?}")))
        }
    }
}

impl FieldSpec {
    pub const Q: FieldSpec = FieldSpec::Rationals(RationalTag);
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "{p}"),
            FieldSpec::Rationals(_) => f.write_str("Q"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "Q" || s == "q" {
            return Ok(FieldSpec::Q);
        }
        let p: u64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("field spec {s:?} is neither a prime nor Q")))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::Prime(p))
    }
}

/// Lexicographic enumeration of coefficient vectors over a finite field,
/// least significant coordinate first.
///
/// `index_to_coeffs(f, n, i)` returns the `i`-th vector of length `n`.
pub fn index_to_coeffs<F: Field>(field: &F, len: usize, mut index: u64) -> Vec<F::Elem> {
    let q = field.order().expect("finite field required");
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(field.element_at(index % q));
        index /= q;
    }
    out
}
