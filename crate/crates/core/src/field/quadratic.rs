use rand::Rng;

use super::{Field, GroundField};
use crate::Error;

/// Which quadratic étale algebra: k×k, or k(γ) with γ² = c nonsquare.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QuadKind<E> {
    Split,
    Field { c: E },
}

/// A quadratic étale algebra L over a ground field k, with its standard
/// involution σ.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticEtale<F: GroundField> {
    base: F,
    kind: QuadKind<F::Elem>,
}

/// x₀ + x₁γ in the field case, (x₀, x₁) in the split case.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LElem<E> {
    pub x0: E,
    pub x1: E,
}

impl<E> LElem<E> {
    pub fn new(x0: E, x1: E) -> Self {
        LElem { x0, x1 }
    }
}

impl<F: GroundField> QuadraticEtale<F> {
    pub fn split(base: F) -> Self {
        QuadraticEtale { base, kind: QuadKind::Split }
    }

    /// k(γ) with γ² = c; rejects squares (including 0).
    pub fn field(base: F, c: F::Elem) -> Result<Self, Error> {
        if base.is_zero(&c) || base.is_square(&c) {
            return Err(Error::InvalidField(format!(
                "{} is a square in k, so k(sqrt c) is not a field",
                base.format(&c)
            )));
        }
        Ok(QuadraticEtale { base, kind: QuadKind::Field { c } })
    }

    /// The field extension of degree 2 of a prime field, using the least
    /// nonsquare as c.
    pub fn finite_extension(base: F) -> Result<Self, Error> {
        let q = base
            .order()
            .ok_or_else(|| Error::Unsupported("finite_extension needs a finite base".into()))?;
        let c = (1..q)
            .map(|i| base.element_at(i))
            .find(|a| !base.is_square(a))
            .expect("odd order finite field has a nonsquare");
        Self::field(base, c)
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn kind(&self) -> &QuadKind<F::Elem> {
        &self.kind
    }

    pub fn is_field(&self) -> bool {
        matches!(self.kind, QuadKind::Field { .. })
    }

    /// γ² in the field case.
    pub fn c(&self) -> Option<&F::Elem> {
        match &self.kind {
            QuadKind::Field { c } => Some(c),
            QuadKind::Split => None,
        }
    }

    pub fn embed(&self, a: &F::Elem) -> LElem<F::Elem> {
        match self.kind {
            QuadKind::Split => LElem::new(a.clone(), a.clone()),
            QuadKind::Field { .. } => LElem::new(a.clone(), self.base.zero()),
        }
    }

    /// γ (field case) or (1, −1) (split case): a trace-zero generator.
    pub fn gamma(&self) -> LElem<F::Elem> {
        let k = &self.base;
        match self.kind {
            QuadKind::Split => LElem::new(k.one(), k.neg(&k.one())),
            QuadKind::Field { .. } => LElem::new(k.zero(), k.one()),
        }
    }

    pub fn sigma(&self, x: &LElem<F::Elem>) -> LElem<F::Elem> {
        match self.kind {
            QuadKind::Split => LElem::new(x.x1.clone(), x.x0.clone()),
            QuadKind::Field { .. } => LElem::new(x.x0.clone(), self.base.neg(&x.x1)),
        }
    }

    /// x·σ(x), as an element of k.
    pub fn norm(&self, x: &LElem<F::Elem>) -> F::Elem {
        let k = &self.base;
        match &self.kind {
            QuadKind::Split => k.mul(&x.x0, &x.x1),
            QuadKind::Field { c } => k.sub(&k.square(&x.x0), &k.mul(c, &k.square(&x.x1))),
        }
    }

    /// x + σ(x), as an element of k.
    pub fn trace(&self, x: &LElem<F::Elem>) -> F::Elem {
        let k = &self.base;
        match self.kind {
            QuadKind::Split => k.add(&x.x0, &x.x1),
            QuadKind::Field { .. } => k.add(&x.x0, &x.x0),
        }
    }

    /// The k-part of an element fixed by σ.
    pub fn to_base(&self, x: &LElem<F::Elem>) -> Option<F::Elem> {
        (self.sigma(x) == *x).then(|| x.x0.clone())
    }

    pub fn scale(&self, a: &F::Elem, x: &LElem<F::Elem>) -> LElem<F::Elem> {
        let k = &self.base;
        LElem::new(k.mul(a, &x.x0), k.mul(a, &x.x1))
    }

    /// Elements with x·σ(x) = 1, in enumeration order.
    pub fn norm_one_group(&self) -> Result<Vec<LElem<F::Elem>>, Error> {
        let n = self
            .order()
            .ok_or_else(|| Error::Unsupported("norm-one enumeration needs a finite base".into()))?;
        let one = self.base.one();
        Ok((0..n)
            .map(|i| self.element_at(i))
            .filter(|x| self.norm(x) == one)
            .collect())
    }

    /// Whether `x` is a cube in L*, by the index test in the cyclic group
    /// (field case) or componentwise (split case). Finite fields only.
    pub fn is_cube(&self, x: &LElem<F::Elem>) -> Option<bool> {
        let q = self.base.order()?;
        match self.kind {
            QuadKind::Split => {
                let k = &self.base;
                let cube = |a: &F::Elem| {
                    k.is_zero(a) || (q - 1) % 3 != 0 || k.is_one(&k.pow(a, (q - 1) / 3))
                };
                Some(cube(&x.x0) && cube(&x.x1))
            }
            QuadKind::Field { .. } => {
                let n = q * q - 1;
                Some(self.is_zero(x) || n % 3 != 0 || self.is_one(&self.pow(x, n / 3)))
            }
        }
    }
}

impl<F: GroundField> Field for QuadraticEtale<F> {
    type Elem = LElem<F::Elem>;

    fn zero(&self) -> Self::Elem {
        LElem::new(self.base.zero(), self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        self.embed(&self.base.one())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.embed(&self.base.from_i64(n))
    }
    #[inline]
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        LElem::new(self.base.add(&a.x0, &b.x0), self.base.add(&a.x1, &b.x1))
    }
    #[inline]
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        LElem::new(self.base.sub(&a.x0, &b.x0), self.base.sub(&a.x1, &b.x1))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        LElem::new(self.base.neg(&a.x0), self.base.neg(&a.x1))
    }
    #[inline]
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = &self.base;
        match &self.kind {
            QuadKind::Split => LElem::new(k.mul(&a.x0, &b.x0), k.mul(&a.x1, &b.x1)),
            QuadKind::Field { c } => LElem::new(
                k.add(&k.mul(&a.x0, &b.x0), &k.mul(c, &k.mul(&a.x1, &b.x1))),
                k.add(&k.mul(&a.x0, &b.x1), &k.mul(&a.x1, &b.x0)),
            ),
        }
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let k = &self.base;
        match self.kind {
            QuadKind::Split => Some(LElem::new(k.inv(&a.x0)?, k.inv(&a.x1)?)),
            QuadKind::Field { .. } => {
                let n = k.inv(&self.norm(a))?;
                Some(self.scale(&n, &self.sigma(a)))
            }
        }
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn order(&self) -> Option<u64> {
        self.base.order().map(|q| q * q)
    }
    fn element_at(&self, i: u64) -> Self::Elem {
        let q = self.base.order().expect("finite base");
        LElem::new(self.base.element_at(i % q), self.base.element_at(i / q))
    }
    fn index_of(&self, a: &Self::Elem) -> u64 {
        let q = self.base.order().expect("finite base");
        self.base.index_of(&a.x0) + q * self.base.index_of(&a.x1)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        LElem::new(self.base.random(rng), self.base.random(rng))
    }

    /// `x0+x1*g`, with `g` standing for γ (or the second idempotent
    /// coordinate in the split case).
    fn format(&self, a: &Self::Elem) -> String {
        format!("{}+{}*g", self.base.format(&a.x0), self.base.format(&a.x1))
    }

    /// Accepts `x0+x1*g`, `x0-x1*g`, `x1*g`, `g`, or a bare scalar of k.
    fn parse(&self, s: &str) -> Result<Self::Elem, Error> {
        let s = s.trim();
        let Some(head) = s.strip_suffix('g') else {
            return Ok(self.embed(&self.base.parse(s)?));
        };
        let head = head.trim_end();
        let head = head.strip_suffix('*').unwrap_or(head).trim_end();
        // split at the last '+' or '-' that is not a leading sign or part of "+-"
        let bytes = head.as_bytes();
        let mut cut = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'+' && bytes[i - 1] != b'-' {
                cut = Some(i);
                break;
            }
        }
        let coeff = |t: &str| -> Result<F::Elem, Error> {
            match t.trim() {
                "" | "+" => Ok(self.base.one()),
                "-" => Ok(self.base.neg(&self.base.one())),
                t => self.base.parse(t.strip_prefix('+').unwrap_or(t)),
            }
        };
        match cut {
            Some(i) => {
                let x0 = self.base.parse(&head[..i])?;
                let x1 = coeff(&head[i..])?;
                Ok(LElem::new(x0, x1))
            }
            None => Ok(LElem::new(self.base.zero(), coeff(head)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn f49() -> QuadraticEtale<PrimeField> {
        QuadraticEtale::field(PrimeField::new(7).unwrap(), 3).unwrap()
    }

    #[test]
    fn sigma_and_norm_mod_7() {
        let l = f49();
        let x = LElem::new(1, 2);
        assert_eq!(l.sigma(&x), LElem::new(1, 5));
        assert_eq!(l.norm(&x), 3);
        assert_eq!(l.trace(&x), 2);
        assert_eq!(l.norm(&l.one()), 1);
    }

    #[test]
    fn split_case() {
        let l = QuadraticEtale::split(PrimeField::new(7).unwrap());
        let x = LElem::new(4, 1);
        assert_eq!(l.sigma(&x), LElem::new(1, 4));
        assert_eq!(l.norm(&x), 4);
        assert_eq!(l.inv(&LElem::new(0, 3)), None);
        assert_eq!(l.norm_one_group().unwrap().len(), 6);
    }

    #[test]
    fn rejects_square_constant() {
        assert!(QuadraticEtale::field(PrimeField::new(7).unwrap(), 2).is_err());
    }

    #[test]
    fn norm_one_count_is_q_plus_one() {
        assert_eq!(f49().norm_one_group().unwrap().len(), 8);
    }

    #[test]
    fn text_round_trip() {
        let l = f49();
        for i in 0..49 {
            let x = l.element_at(i);
            assert_eq!(l.parse(&l.format(&x)).unwrap(), x);
        }
        assert_eq!(l.parse("3-2*g").unwrap(), LElem::new(3, 5));
        assert_eq!(l.parse("-g").unwrap(), LElem::new(0, 6));
        assert_eq!(l.parse("5").unwrap(), LElem::new(5, 0));
    }

    #[test]
    fn every_nonzero_element_is_invertible_in_the_field_case() {
        let l = f49();
        for i in 1..49 {
            let x = l.element_at(i);
            assert!(l.is_one(&l.mul(&x, &l.inv(&x).unwrap())));
        }
    }
}
