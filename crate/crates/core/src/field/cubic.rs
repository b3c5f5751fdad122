use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{poly, Field, GroundField, LElem, QuadraticEtale, Rationals};
use crate::linalg::Matrix;
use crate::Error;

/// Element of a cubic algebra, stored as c₀ + c₁t + c₂t² with t the class
/// of X.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EElem<E> {
    pub c: [E; 3],
}

/// R[X]/(X³ + m₂X² + m₁X + m₀) over a commutative ring R.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicRing<R: Field> {
    ring: R,
    /// [m₀, m₁, m₂]
    modulus: [R::Elem; 3],
}

impl<R: Field> CubicRing<R> {
    /// `modulus` holds the low coefficients of the monic cubic.
    pub fn new(ring: R, modulus: [R::Elem; 3]) -> Self {
        CubicRing { ring, modulus }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn modulus(&self) -> &[R::Elem; 3] {
        &self.modulus
    }

    /// Monic modulus as a polynomial, low degree first.
    pub fn modulus_poly(&self) -> Vec<R::Elem> {
        let mut p = self.modulus.to_vec();
        p.push(self.ring.one());
        p
    }

    pub fn scalar(&self, a: R::Elem) -> EElem<R::Elem> {
        let z = self.ring.zero();
        EElem { c: [a, z.clone(), z] }
    }

    pub fn zero(&self) -> EElem<R::Elem> {
        self.scalar(self.ring.zero())
    }

    pub fn one(&self) -> EElem<R::Elem> {
        self.scalar(self.ring.one())
    }

    /// The class t of X.
    pub fn generator(&self) -> EElem<R::Elem> {
        let r = &self.ring;
        EElem { c: [r.zero(), r.one(), r.zero()] }
    }

    pub fn add(&self, a: &EElem<R::Elem>, b: &EElem<R::Elem>) -> EElem<R::Elem> {
        let r = &self.ring;
        EElem { c: std::array::from_fn(|i| r.add(&a.c[i], &b.c[i])) }
    }

    pub fn sub(&self, a: &EElem<R::Elem>, b: &EElem<R::Elem>) -> EElem<R::Elem> {
        let r = &self.ring;
        EElem { c: std::array::from_fn(|i| r.sub(&a.c[i], &b.c[i])) }
    }

    pub fn neg(&self, a: &EElem<R::Elem>) -> EElem<R::Elem> {
        let r = &self.ring;
        EElem { c: std::array::from_fn(|i| r.neg(&a.c[i])) }
    }

    pub fn scale(&self, s: &R::Elem, a: &EElem<R::Elem>) -> EElem<R::Elem> {
        let r = &self.ring;
        EElem { c: std::array::from_fn(|i| r.mul(s, &a.c[i])) }
    }

    pub fn mul(&self, a: &EElem<R::Elem>, b: &EElem<R::Elem>) -> EElem<R::Elem> {
        let r = &self.ring;
        let mut prod: [R::Elem; 5] = std::array::from_fn(|_| r.zero());
        for i in 0..3 {
            if r.is_zero(&a.c[i]) {
                continue;
            }
            for j in 0..3 {
                prod[i + j] = r.add(&prod[i + j], &r.mul(&a.c[i], &b.c[j]));
            }
        }
        // t³ = −(m₂t² + m₁t + m₀)
        for d in (3..5).rev() {
            let top = std::mem::replace(&mut prod[d], r.zero());
            if r.is_zero(&top) {
                continue;
            }
            for k in 0..3 {
                prod[d - 3 + k] = r.sub(&prod[d - 3 + k], &r.mul(&top, &self.modulus[k]));
            }
        }
        let [c0, c1, c2, _, _] = prod;
        EElem { c: [c0, c1, c2] }
    }

    pub fn pow(&self, a: &EElem<R::Elem>, mut e: u64) -> EElem<R::Elem> {
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

    /// Matrix of y ↦ a·y in the basis 1, t, t² (columns are images).
    pub fn mult_matrix(&self, a: &EElem<R::Elem>) -> Matrix<R::Elem> {
        let r = &self.ring;
        let mut m = Matrix::zeros(r, 3, 3);
        let mut basis = self.one();
        for j in 0..3 {
            let col = self.mul(a, &basis);
            for i in 0..3 {
                m[(i, j)] = col.c[i].clone();
            }
            basis = self.mul(&basis, &self.generator());
        }
        m
    }

    /// Determinant of multiplication by `a`.
    pub fn norm(&self, a: &EElem<R::Elem>) -> R::Elem {
        self.mult_matrix(a).det3(&self.ring)
    }

    /// Trace of multiplication by `a`.
    pub fn trace(&self, a: &EElem<R::Elem>) -> R::Elem {
        let m = self.mult_matrix(a);
        let r = &self.ring;
        r.add(&r.add(&m[(0, 0)], &m[(1, 1)]), &m[(2, 2)])
    }

    /// Inverse via the adjugate; `None` when the norm is not a unit.
    pub fn inv(&self, a: &EElem<R::Elem>) -> Option<EElem<R::Elem>> {
        let m = self.mult_matrix(a);
        let r = &self.ring;
        let d = r.inv(&m.det3(r))?;
        let adj = m.adjugate3(r);
        // a⁻¹ = M⁻¹·e₁ = first column of adj / det
        Some(EElem { c: std::array::from_fn(|i| r.mul(&adj[(i, 0)], &d)) })
    }

    pub fn is_unit(&self, a: &EElem<R::Elem>) -> bool {
        let n = self.norm(a);
        self.ring.inv(&n).is_some()
    }

    /// Evaluate a polynomial with coefficients in R at `a`.
    pub fn eval_poly(&self, p: &[R::Elem], a: &EElem<R::Elem>) -> EElem<R::Elem> {
        p.iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, a), &self.scalar(c.clone())))
    }

    pub fn order(&self) -> Option<u64> {
        self.ring.order().and_then(|q| q.checked_pow(3))
    }

    pub fn element_at(&self, i: u64) -> EElem<R::Elem> {
        let q = self.ring.order().expect("finite ring");
        EElem { c: [0, 1, 2].map(|k| self.ring.element_at((i / q.pow(k)) % q)) }
    }

    pub fn random<G: Rng + ?Sized>(&self, rng: &mut G) -> EElem<R::Elem> {
        EElem { c: std::array::from_fn(|_| self.ring.random(rng)) }
    }

    /// `(c0)+(c1)*t+(c2)*t^2`.
    pub fn format(&self, a: &EElem<R::Elem>) -> String {
        format!(
            "({})+({})*t+({})*t^2",
            self.ring.format(&a.c[0]),
            self.ring.format(&a.c[1]),
            self.ring.format(&a.c[2])
        )
    }

    /// Sum of terms `c`, `c*t`, `c*t^2` where `c` is a ring element,
    /// parenthesized when it contains `+` or `-`. Missing terms are zero;
    /// repeated terms add.
    pub fn parse(&self, s: &str) -> Result<EElem<R::Elem>, Error> {
        let r = &self.ring;
        let mut out = self.zero();
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty cubic-algebra element".into()));
        }
        for term in split_top_level(s)? {
            let term = term.trim();
            let (coef, deg) = if let Some(h) = term.strip_suffix("*t^2") {
                (h, 2)
            } else if let Some(h) = term.strip_suffix("t^2") {
                (h, 2)
            } else if let Some(h) = term.strip_suffix("*t") {
                (h, 1)
            } else if let Some(h) = term.strip_suffix('t') {
                (h, 1)
            } else {
                (term, 0)
            };
            let coef = coef.trim();
            let inner = coef
                .strip_prefix('(')
                .and_then(|c| c.strip_suffix(')'))
                .unwrap_or(coef);
            let value = if inner.is_empty() && deg > 0 { r.one() } else { r.parse(inner)? };
            out.c[deg] = r.add(&out.c[deg], &value);
        }
        Ok(out)
    }
}

/// Split on '+' outside parentheses.
fn split_top_level(s: &str) -> Result<Vec<&str>, Error> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut parts = Vec::new();
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced ')' in {s:?}")));
                }
            }
            '+' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced '(' in {s:?}")));
    }
    parts.push(&s[start..]);
    if parts.iter().any(|p| p.trim().is_empty()) {
        return Err(Error::Parse(format!("empty term in {s:?}")));
    }
    Ok(parts)
}

/// E = L[X]/(χ) with χ a monic cubic over k, and the involution σ_E that
/// applies σ to coefficients and fixes the class of X.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicAlgebra<F: GroundField> {
    l: QuadraticEtale<F>,
    /// [χ₀, χ₁, χ₂] over k
    chi: [F::Elem; 3],
    ring: CubicRing<QuadraticEtale<F>>,
}

impl<F: GroundField> CubicAlgebra<F> {
    /// `chi` holds the low coefficients of the monic cubic, in k.
    pub fn new(l: QuadraticEtale<F>, chi: [F::Elem; 3]) -> Self {
        let modulus = chi.clone().map(|a| l.embed(&a));
        let ring = CubicRing::new(l.clone(), modulus);
        CubicAlgebra { l, chi, ring }
    }

    /// Accepts a modulus over L only when every coefficient lies in k.
    pub fn from_l_modulus(
        l: QuadraticEtale<F>,
        modulus: [LElem<F::Elem>; 3],
    ) -> Result<Self, Error> {
        let mut chi = Vec::with_capacity(3);
        for m in &modulus {
            chi.push(l.to_base(m).ok_or_else(|| {
                Error::Precondition(
                    "modulus has coefficients outside k; no coefficientwise involution".into(),
                )
            })?);
        }
        let chi: [F::Elem; 3] = chi.try_into().expect("three coefficients");
        Ok(Self::new(l, chi))
    }

    pub fn l(&self) -> &QuadraticEtale<F> {
        &self.l
    }

    pub fn ring(&self) -> &CubicRing<QuadraticEtale<F>> {
        &self.ring
    }

    pub fn chi(&self) -> &[F::Elem; 3] {
        &self.chi
    }

    /// The cubic k-algebra F = k[X]/(χ), fixed by σ_E.
    pub fn fixed_algebra(&self) -> CubicRing<F> {
        CubicRing::new(self.l.base().clone(), self.chi.clone())
    }

    pub fn chi_poly(&self) -> Vec<F::Elem> {
        let mut p = self.chi.to_vec();
        p.push(self.l.base().one());
        p
    }

    pub fn sigma(&self, a: &EElem<LElem<F::Elem>>) -> EElem<LElem<F::Elem>> {
        EElem { c: std::array::from_fn(|i| self.l.sigma(&a.c[i])) }
    }

    pub fn norm(&self, a: &EElem<LElem<F::Elem>>) -> LElem<F::Elem> {
        self.ring.norm(a)
    }

    pub fn trace(&self, a: &EElem<LElem<F::Elem>>) -> LElem<F::Elem> {
        self.ring.trace(a)
    }

    /// χ separable.
    pub fn is_etale(&self) -> bool {
        poly::is_separable(self.l.base(), &self.chi_poly())
    }

    /// L a field and χ irreducible over L.
    pub fn is_field(&self) -> Result<bool, Error> {
        if !self.l.is_field() {
            return Ok(false);
        }
        let m = self.ring.modulus().clone();
        cubic_is_irreducible(&self.l, &m)
    }

    /// Elements with x·σ(x) = 1.
    pub fn norm_one_group(&self) -> Result<Vec<EElem<LElem<F::Elem>>>, Error> {
        let n = self.ring.order().ok_or_else(|| {
            Error::Unsupported("norm-one enumeration needs a finite base".into())
        })?;
        let one = self.ring.one();
        Ok((0..n)
            .map(|i| self.ring.element_at(i))
            .filter(|x| self.ring.mul(x, &self.sigma(x)) == one)
            .collect())
    }

    /// |L¹ / N(E¹)| and |k* / N(F*)|, by enumeration.
    pub fn norm_quotient_report(&self) -> Result<NormQuotients, Error> {
        let l = &self.l;
        let k = l.base();
        let l1: HashSet<_> = l.norm_one_group()?.into_iter().collect();
        let image: HashSet<_> = self.norm_one_group()?.iter().map(|x| self.norm(x)).collect();
        if !image.is_subset(&l1) {
            return Err(Error::Internal("norm of E¹ left L¹".into()));
        }
        let f = self.fixed_algebra();
        let q = k.order().expect("finite");
        let fstar_norms: HashSet<_> = (0..q.pow(3))
            .map(|i| f.element_at(i))
            .map(|x| f.norm(&x))
            .filter(|n| !k.is_zero(n))
            .collect();
        let kstar = q - 1;
        Ok(NormQuotients {
            l1_order: l1.len() as u64,
            l1_over_norm_e1: (l1.len() / image.len()) as u64,
            kstar_over_norm_fstar: kstar / fstar_norms.len() as u64,
        })
    }
}

/// Orders of the two norm quotients attached to E/L/k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct NormQuotients {
    pub l1_order: u64,
    pub l1_over_norm_e1: u64,
    pub kstar_over_norm_fstar: u64,
}

/// Low coefficients [m₀, m₁, m₂] of the first monic cubic over a finite k
/// with no root in k, in the order of [`super::index_to_coeffs`].
pub fn first_irreducible_cubic<F: GroundField>(k: &F) -> Option<[F::Elem; 3]> {
    let q = k.order()?;
    (0..q * q * q)
        .map(|i| super::index_to_coeffs(k, 3, i))
        .find(|c| poly::roots(k, &[c[0].clone(), c[1].clone(), c[2].clone(), k.one()]).is_some_and(|r| r.is_empty()))
        .map(|c| [c[0].clone(), c[1].clone(), c[2].clone()])
}

/// Whether X³ + m₂X² + m₁X + m₀ has no root in L.
///
/// Finite base: exhaustive root search over L. Rational base: only
/// coefficients in k are supported; a cubic over k has a root in a
/// quadratic extension only if it has one in k, so the rational root test
/// decides it.
pub fn cubic_is_irreducible<F: GroundField>(
    l: &QuadraticEtale<F>,
    modulus: &[LElem<F::Elem>; 3],
) -> Result<bool, Error> {
    let mut p = modulus.to_vec();
    p.push(l.one());
    if l.order().is_some() {
        return Ok(poly::roots(l, &p).expect("finite").is_empty());
    }
    let k_coeffs: Option<Vec<F::Elem>> = modulus.iter().map(|m| l.to_base(m)).collect();
    let k_coeffs = k_coeffs.ok_or_else(|| {
        Error::Unsupported("irreducibility over Q(γ) needs coefficients in Q".into())
    })?;
    let k = l.base();
    let as_rational: Result<Vec<BigRational>, Error> =
        k_coeffs.iter().map(|c| Rationals.parse(&k.format(c)).map(|r| r.to_big())).collect();
    Ok(!has_rational_root(&as_rational?))
}

/// Rational root test for the monic cubic with low coefficients `m`.
pub fn has_rational_root(m: &[BigRational]) -> bool {
    // X = Y/D turns it into a monic integer cubic in Y.
    let d = m.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = (0..3)
        .map(|i| (&m[i] * BigRational::from_integer(d.pow(3 - i as u32))).to_integer())
        .collect();
    let eval = |y: &BigInt| -> BigInt { ((y + &ints[2]) * y + &ints[1]) * y + &ints[0] };
    if ints[0].is_zero() {
        return true;
    }
    let c = ints[0].abs();
    let mut div = BigInt::one();
    while &div * &div <= c {
        if (&c % &div).is_zero() {
            for cand in [div.clone(), &c / &div] {
                if eval(&cand).is_zero() || eval(&-cand).is_zero() {
                    return true;
                }
            }
        }
        div += 1;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    #[test]
    fn norm_of_generator_of_binomial() {
        let l = QuadraticEtale::field(f7(), 3).unwrap();
        // X³ − a with a = 2+γ
        let a = LElem::new(2, 1);
        let ring = CubicRing::new(l.clone(), [l.neg(&a), l.zero(), l.zero()]);
        assert_eq!(ring.norm(&ring.generator()), a);
        let s = LElem::new(3, 4);
        assert_eq!(ring.norm(&ring.scalar(s.clone())), l.pow(&s, 3));
    }

    #[test]
    fn x_cubed_minus_4_is_irreducible_mod_7() {
        let l = QuadraticEtale::field(f7(), 3).unwrap();
        let e = CubicAlgebra::new(l.clone(), [3, 0, 0]);
        assert!(e.is_field().unwrap());
        assert!(e.is_etale());
        let one = CubicAlgebra::new(l, [6, 0, 0]);
        assert!(!one.is_field().unwrap());
    }

    #[test]
    fn repeated_root_is_not_etale() {
        let k = f7();
        let l = QuadraticEtale::field(k, 3).unwrap();
        // (X−2)³ = X³ + X² + 5X + 6 mod 7
        let e = CubicAlgebra::new(l, [6, 5, 1]);
        assert!(!e.is_etale());
        assert!(!e.is_field().unwrap());
    }

    #[test]
    fn rational_roots() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        // X³ − 3X − 1 has no rational root
        assert!(!has_rational_root(&[q(-1, 1), q(-3, 1), q(0, 1)]));
        // (X − 1/2)(X² + 1) = X³ − X²/2 + X − 1/2
        assert!(has_rational_root(&[q(-1, 2), q(1, 1), q(-1, 2)]));
    }

    #[test]
    fn inverse_and_text() {
        let l = QuadraticEtale::field(PrimeField::new(5).unwrap(), 2).unwrap();
        let e = CubicAlgebra::new(l, [3, 1, 0]);
        let r = e.ring();
        let mut rng = rand::thread_rng();
        for _ in 0..50 {
            let x = r.random(&mut rng);
            if let Some(y) = r.inv(&x) {
                assert_eq!(r.mul(&x, &y), r.one());
            }
            assert_eq!(r.parse(&r.format(&x)).unwrap(), x);
        }
    }
}
