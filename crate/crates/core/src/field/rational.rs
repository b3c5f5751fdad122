use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::{BigRational, Rational64};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::{Field, FieldSpec, GroundField};
use crate::Error;

/// The rationals with arbitrary-precision numerator and denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

/// A rational number in lowest terms with positive denominator.
///
/// Values whose numerator and denominator fit in an `i64` (excluding
/// `i64::MIN`) are always stored inline; larger ones spill to `BigRational`.
/// The representation is canonical, so derived equality and hashing agree
/// with numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(Rational64),
    Big(BigRational),
}

fn fits(n: i64) -> bool {
    n != i64::MIN
}

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        Self::from_big(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if fits(n) && fits(d) => Rational::Small(Rational64::new_raw(n, d)),
            _ => Rational::Big(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(r) => BigRational::new_raw((*r.numer()).into(), (*r.denom()).into()),
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(r) => (*r.numer()).into(),
            Rational::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(r) => (*r.denom()).into(),
            Rational::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(r) if r.is_zero())
    }

    fn small(r: Option<Rational64>) -> Option<Self> {
        r.filter(|r| fits(*r.numer()) && fits(*r.denom())).map(Rational::Small)
    }

    fn binop(
        &self,
        other: &Self,
        fast: impl Fn(&Rational64, &Rational64) -> Option<Rational64>,
        slow: impl Fn(BigRational, BigRational) -> BigRational,
    ) -> Self {
        if let (Rational::Small(a), Rational::Small(b)) = (self, other) {
            if let Some(r) = Self::small(fast(a, b)) {
                return r;
            }
        }
        Self::from_big(slow(self.to_big(), other.to_big()))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::new(n, 1)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Self::from_big(r)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Rationals.format(self))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Rationals.format(self))
    }
}

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Largest square divisor removed: returns the squarefree part of `n > 0`.
fn squarefree_part(n: &BigInt) -> BigInt {
    let mut n = n.clone();
    let mut out = BigInt::one();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &d;
        }
        d += 1;
    }
    out * n
}

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::Small(Rational64::zero())
    }
    fn one(&self) -> Rational {
        Rational::Small(Rational64::one())
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::from(n)
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a.binop(b, |x, y| x.checked_add(y), |x, y| x + y)
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a.binop(b, |x, y| x.checked_sub(y), |x, y| x - y)
    }
    fn neg(&self, a: &Rational) -> Rational {
        match a {
            Rational::Small(r) => Rational::Small(-r),
            Rational::Big(r) => Rational::from_big(-r),
        }
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a.binop(b, |x, y| x.checked_mul(y), |x, y| x * y)
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        match a {
            _ if a.is_zero() => None,
            Rational::Small(r) => Some(Rational::Small(r.recip())),
            Rational::Big(r) => Some(Rational::from_big(r.recip())),
        }
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn element_at(&self, _i: u64) -> Rational {
        panic!("the rationals cannot be enumerated")
    }
    fn index_of(&self, _a: &Rational) -> u64 {
        panic!("the rationals cannot be enumerated")
    }
    /// Small rationals: numerator in `-9..=9`, denominator in `1..=4`.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Rational {
        let n: i64 = rng.gen_range(-9..=9);
        let d: i64 = rng.gen_range(1..=4);
        Rational::new(n, d)
    }
    fn format(&self, a: &Rational) -> String {
        let (n, d) = (a.numer(), a.denom());
        if d.is_one() {
            n.to_string()
        } else {
            format!("{n}/{d}")
        }
    }
    fn parse(&self, s: &str) -> Result<Rational, Error> {
        let s = s.trim();
        let int = |t: &str| -> Result<BigInt, Error> {
            let t = t.trim();
            let digits = t.strip_prefix('-').unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("not an integer: {t:?}")));
            }
            t.parse().map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let d = int(d)?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(Rational::from_big(BigRational::new(int(n)?, d)))
            }
            None => Ok(Rational::from_big(BigRational::from_integer(int(s)?))),
        }
    }
}

impl GroundField for Rationals {
    fn is_square(&self, a: &Rational) -> bool {
        self.sqrt(a).is_some()
    }

    fn sqrt(&self, a: &Rational) -> Option<Rational> {
        let n = int_sqrt_exact(&a.numer())?;
        let d = int_sqrt_exact(&a.denom())?;
        Some(Rational::from_big(BigRational::new(n, d)))
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Q
    }

    fn sign(&self, a: &Rational) -> Option<Ordering> {
        Some(match a.numer().sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        })
    }

    /// Squarefree integer in the square class of `a` (sign kept).
    ///
    /// Trial division; intended for the small values met in Gram diagonals.
    fn square_class(&self, a: &Rational) -> Rational {
        if a.is_zero() {
            return self.zero();
        }
        let n = a.numer() * a.denom();
        let sf = squarefree_part(&n.abs());
        let sf = if n.is_negative() { -sf } else { sf };
        Rational::from_big(BigRational::from_integer(sf))
    }
}
