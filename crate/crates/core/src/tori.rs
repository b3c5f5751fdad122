//! Maximal tori of SU(V, h) built from a cubic étale algebra E over L with
//! involution σ.
//!
//! For u in the σ-fixed algebra F, the form h⁽ᵘ⁾(x, y) = tr_{E/L}(u·x·σ(y))
//! is hermitian on E, and multiplication by elements with α·σ(α) = 1
//! preserves it. In the basis 1, t, t² these multiplications are 3×3
//! matrices over L.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::composition::HermitianSpace3;
use crate::field::{
    cubic_is_irreducible, CubicAlgebra, EElem, Field, GroundField, LElem, QuadraticEtale,
};
use crate::linalg::Matrix;
use crate::Error;

type LE<F> = LElem<<F as Field>::Elem>;
type EE<F> = EElem<LE<F>>;

/// A cubic algebra with involution together with a unit u of its fixed
/// algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusSpec<F: GroundField> {
    pub e: CubicAlgebra<F>,
    pub u: EE<F>,
}

impl<F: GroundField> TorusSpec<F> {
    pub fn new(e: CubicAlgebra<F>, u: EE<F>) -> Result<Self, Error> {
        if e.sigma(&u) != u {
            return Err(Error::Precondition("u is not fixed by sigma".into()));
        }
        if !e.ring().is_unit(&u) {
            return Err(Error::Precondition("u is not a unit".into()));
        }
        let spec = TorusSpec { e, u };
        let l = spec.e.l();
        if l.inv(&spec.gram().det3(l)).is_none() {
            return Err(Error::Precondition("h^(u) is degenerate".into()));
        }
        Ok(spec)
    }

    /// u = 1.
    pub fn standard(e: CubicAlgebra<F>) -> Result<Self, Error> {
        let u = e.ring().one();
        Self::new(e, u)
    }

    /// h⁽ᵘ⁾(x, y) = tr_{E/L}(u·x·σ(y)).
    pub fn h(&self, x: &EE<F>, y: &EE<F>) -> LE<F> {
        let r = self.e.ring();
        self.e.trace(&r.mul(&self.u, &r.mul(x, &self.e.sigma(y))))
    }

    /// Gram matrix of h⁽ᵘ⁾ in the basis 1, t, t².
    pub fn gram(&self) -> Matrix<LE<F>> {
        let r = self.e.ring();
        let b = [r.one(), r.generator(), r.mul(&r.generator(), &r.generator())];
        Matrix::from_fn(3, 3, |i, j| self.h(&b[i], &b[j]))
    }

    /// T¹ = {α : α·σ(α) = 1, N_{E/L}(α) = 1}, in enumeration order.
    pub fn torus_one_elements(&self) -> Result<Vec<EE<F>>, Error> {
        let l = self.e.l();
        Ok(self
            .e
            .norm_one_group()?
            .into_iter()
            .filter(|a| l.is_one(&self.e.norm(a)))
            .collect())
    }
}

/// Matrix of x ↦ a·x in the basis 1, t, t².
pub fn left_homothety<F: GroundField>(e: &CubicAlgebra<F>, a: &EE<F>) -> Matrix<LE<F>> {
    e.ring().mult_matrix(a)
}

/// Whether 1, a, a² form an L-basis of E (so a generates E over L).
pub fn is_generator<F: GroundField>(e: &CubicAlgebra<F>, a: &EE<F>) -> bool {
    let r = e.ring();
    let a2 = r.mul(a, a);
    let cols = vec![r.one().c.to_vec(), a.c.to_vec(), a2.c.to_vec()];
    let l = e.l();
    l.inv(&Matrix::from_cols(&cols).det3(l)).is_some()
}

/// Whether the torus generated by `a` is indecomposable, i.e. whether E is
/// a field. Decided by irreducibility of the characteristic polynomial of
/// the left homothety, and cross-checked against the modulus of E.
pub fn is_indecomposable<F: GroundField>(e: &CubicAlgebra<F>, a: &EE<F>) -> Result<bool, Error> {
    if !is_generator(e, a) {
        return Err(Error::Precondition("element does not generate E over L".into()));
    }
    let l = e.l();
    let cp = left_homothety(e, a).char_poly3(l);
    let modulus = [cp[0].clone(), cp[1].clone(), cp[2].clone()];
    let by_char_poly = l.is_field() && cubic_is_irreducible(l, &modulus)?;
    let by_modulus = e.is_field()?;
    if by_char_poly != by_modulus {
        return Err(Error::Internal("generator and modulus disagree on irreducibility".into()));
    }
    Ok(by_char_poly)
}

/// L-dimension of the centralizer of the left homothety of `a` in M₃(L),
/// and whether it equals span(1, l_a, l_a²). L must be a field.
pub fn centralizer_check<F: GroundField>(
    e: &CubicAlgebra<F>,
    a: &EE<F>,
) -> Result<(usize, bool), Error> {
    let l = e.l();
    if !l.is_field() {
        return Err(Error::Unsupported("centralizer check needs L to be a field".into()));
    }
    let m = left_homothety(e, a);
    // X ↦ XM − MX on the 9 entries of X
    let sys = Matrix::from_fn(9, 9, |row, col| {
        let (i, j) = (row / 3, row % 3);
        let (p, q) = (col / 3, col % 3);
        let mut v = l.zero();
        if p == i {
            v = l.add(&v, &m[(q, j)]);
        }
        if q == j {
            v = l.sub(&v, &m[(i, p)]);
        }
        v
    });
    let ker = sys.kernel(l);
    let m2 = m.mul(l, &m);
    let powers = [Matrix::identity(l, 3), m, m2];
    let mut cols: Vec<Vec<LE<F>>> = powers.iter().map(|p| p.entries().to_vec()).collect();
    let rank_powers = Matrix::from_cols(&cols).rank(l);
    cols.extend(ker.iter().cloned());
    let rank_all = Matrix::from_cols(&cols).rank(l);
    Ok((ker.len(), rank_powers == ker.len() && rank_all == ker.len()))
}

/// The trace hermitian space of E = F·L: an orthogonal basis of F for
/// tr_{F/k}(x·y), diagonal entries normalized.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceHermitian<F: GroundField> {
    pub space: HermitianSpace3<F>,
    /// Orthogonal basis of E with h(bᵢ, bᵢ) = λᵢ.
    pub basis: [EE<F>; 3],
}

/// Orthogonal basis of E for h(x, y) = tr_{E/L}(x·σ(y)) with normalized
/// diagonal.
///
/// Gram–Schmidt runs on the k-basis 1, t, t² of F with first-nonzero
/// pivoting. Over finite fields each λᵢ is then scaled to 1 by some μ with
/// N(μ) = λᵢ⁻¹. Over the rationals entries are reduced to squarefree
/// integers, and the first entry is rotated to 1 against a later one when
/// a small representation of 1 exists.
pub fn trace_hermitian_space<F: GroundField>(e: &CubicAlgebra<F>) -> Result<TraceHermitian<F>, Error> {
    let l = e.l();
    let k = l.base();
    let r = e.ring();
    let spec = TorusSpec { e: e.clone(), u: r.one() };
    let hk = |x: &EE<F>, y: &EE<F>| -> F::Elem {
        l.to_base(&spec.h(x, y)).expect("trace form on F takes values in k")
    };
    let t = r.generator();
    let mut rest = vec![r.one(), t.clone(), r.mul(&t, &t)];
    let mut basis = Vec::new();
    while !rest.is_empty() {
        let pivot = rest.iter().position(|v| !k.is_zero(&hk(v, v))).or_else(|| {
            (1..rest.len()).find(|&j| !k.is_zero(&hk(&rest[0], &rest[j]))).map(|j| {
                rest[0] = r.add(&rest[0], &rest[j]);
                0
            })
        });
        let Some(p) = pivot else {
            return Err(Error::Precondition("trace form is degenerate (E not etale)".into()));
        };
        let b = rest.remove(p);
        let qb = hk(&b, &b);
        for v in &mut rest {
            let c = k.div(&hk(v, &b), &qb).expect("nonzero pivot");
            *v = r.sub(v, &r.scale(&l.embed(&c), &b));
        }
        basis.push(b);
    }
    let mut lambda: Vec<F::Elem> = basis.iter().map(|b| hk(b, b)).collect();
    if l.order().is_some() {
        for i in 0..3 {
            let target = k.inv(&lambda[i]).expect("nonzero");
            let n = l.order().expect("finite");
            let mu = (1..n)
                .map(|j| l.element_at(j))
                .find(|m| l.norm(m) == target)
                .ok_or_else(|| Error::Internal("norm is not surjective".into()))?;
            basis[i] = r.scale(&mu, &basis[i]);
            lambda[i] = k.one();
        }
    } else {
        normalize_rational(k, r, &mut lambda, &mut basis)?;
    }
    for i in 0..3 {
        for j in 0..3 {
            let want = if i == j { l.embed(&lambda[i]) } else { l.zero() };
            if spec.h(&basis[i], &basis[j]) != want {
                return Err(Error::Internal("normalized basis is not orthogonal".into()));
            }
        }
    }
    let space = HermitianSpace3::new(l.clone(), [lambda[0].clone(), lambda[1].clone(), lambda[2].clone()])?;
    Ok(TraceHermitian { space, basis: [basis[0].clone(), basis[1].clone(), basis[2].clone()] })
}

/// Whether the determinant of the trace hermitian space lies in N(L*).
/// `None` when a bounded search over the rationals finds no witness.
pub fn discriminant_is_norm<F: GroundField>(th: &TraceHermitian<F>) -> Option<bool> {
    let l = th.space.l();
    let k = l.base();
    let det = th.space.det();
    if k.is_square(&det) || !l.is_field() {
        return Some(true);
    }
    if let Some(n) = l.order() {
        return Some((0..n).any(|i| l.norm(&l.element_at(i)) == det));
    }
    let c = l.c().expect("field").clone();
    for den in 1..=8i64 {
        for a in -8..=8i64 {
            for b in 0..=8i64 {
                let x = k.div(&k.from_i64(a), &k.from_i64(den)).expect("nonzero");
                let y = k.div(&k.from_i64(b), &k.from_i64(den)).expect("nonzero");
                if k.sub(&k.square(&x), &k.mul(&c, &k.square(&y))) == det {
                    return Some(true);
                }
            }
        }
    }
    None
}

fn to_q<F: GroundField>(k: &F, x: &F::Elem) -> Result<BigRational, Error> {
    crate::field::Rationals.parse(&k.format(x)).map(|r| r.to_big())
}

fn normalize_rational<F: GroundField>(
    k: &F,
    r: &crate::field::CubicRing<QuadraticEtale<F>>,
    lambda: &mut [F::Elem],
    basis: &mut [EE<F>],
) -> Result<(), Error> {
    let from_q = |x: &BigRational| k.parse(&crate::field::Rationals.format(&x.clone().into()));
    // λ = s·m² with s squarefree: divide the vector by m
    let reduce = |lam: &mut F::Elem, b: &mut EE<F>| -> Result<(), Error> {
        let s = k.square_class(lam);
        let m2 = k.div(lam, &s).expect("nonzero");
        let m = k.sqrt(&m2).ok_or_else(|| Error::Internal("square class quotient".into()))?;
        let minv = k.inv(&m).expect("nonzero");
        *b = r.scale(&r.ring().embed(&minv), b);
        *lam = s;
        Ok(())
    };
    for i in 0..3 {
        reduce(&mut lambda[i], &mut basis[i])?;
    }
    // only the first entry is rotated to 1; the rest stay squarefree
    for i in 0..1 {
        if k.is_one(&lambda[i]) {
            continue;
        }
        let di = to_q(k, &lambda[i])?;
        'outer: for j in i + 1..3 {
            let dj = to_q(k, &lambda[j])?;
            for den in 1..=6i64 {
                for xn in 0..=6i64 {
                    for yn in 0..=6i64 {
                        let x = BigRational::new(xn.into(), den.into());
                        let y = BigRational::new(yn.into(), den.into());
                        if (&di * &x * &x + &dj * &y * &y) != BigRational::one() || x.is_zero() && y.is_zero() {
                            continue;
                        }
                        // bᵢ' = x·bᵢ + y·bⱼ, bⱼ' = −dⱼy·bᵢ + dᵢx·bⱼ
                        let (xe, ye) = (r.ring().embed(&from_q(&x)?), r.ring().embed(&from_q(&y)?));
                        let c1 = r.ring().embed(&from_q(&(-(&dj * &y)))?);
                        let c2 = r.ring().embed(&from_q(&(&di * &x))?);
                        let bi = r.add(&r.scale(&xe, &basis[i]), &r.scale(&ye, &basis[j]));
                        let bj = r.add(&r.scale(&c1, &basis[i]), &r.scale(&c2, &basis[j]));
                        basis[i] = bi;
                        basis[j] = bj;
                        lambda[i] = k.one();
                        lambda[j] = from_q(&(&di * &dj))?;
                        reduce(&mut lambda[j], &mut basis[j])?;
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rational, Rationals};

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn trace_form_of_x3_minus_3x_minus_1_is_1_2_2() {
        let l = QuadraticEtale::field(Rationals, r(-1)).unwrap();
        let e = CubicAlgebra::new(l, [r(-1), r(-3), r(0)]);
        let th = trace_hermitian_space(&e).unwrap();
        assert_eq!(th.space.gram(), &[r(1), r(2), r(2)]);
        assert_eq!(th.space.det(), r(4));
    }

    #[test]
    fn discriminant_is_trivial_over_f7() {
        let f = PrimeField::new(7).unwrap();
        let l = QuadraticEtale::finite_extension(f).unwrap();
        let e = CubicAlgebra::new(l, [3, 0, 0]);
        let th = trace_hermitian_space(&e).unwrap();
        assert_eq!(discriminant_is_norm(&th), Some(true));
    }

    #[test]
    fn finite_trace_form_normalizes_to_ones() {
        let f = PrimeField::new(7).unwrap();
        let l = QuadraticEtale::finite_extension(f).unwrap();
        // X³ − 4 is irreducible over 𝔽₇ (and over 𝔽₄₉)
        let e = CubicAlgebra::new(l, [3, 0, 0]);
        let th = trace_hermitian_space(&e).unwrap();
        assert_eq!(th.space.gram(), &[1, 1, 1]);
    }

    #[test]
    fn torus_one_count_over_f5() {
        let f = PrimeField::new(5).unwrap();
        let l = QuadraticEtale::finite_extension(f).unwrap();
        // X³ + X + 1 has no root mod 5, and stays irreducible over 𝔽₂₅
        let e = CubicAlgebra::new(l, [1, 1, 0]);
        assert!(e.is_field().unwrap());
        let spec = TorusSpec::standard(e).unwrap();
        let t1 = spec.torus_one_elements().unwrap();
        assert_eq!(t1.len(), 21);
    }

    #[test]
    fn centralizer_is_the_image_of_e() {
        let f = PrimeField::new(5).unwrap();
        let l = QuadraticEtale::finite_extension(f).unwrap();
        let e = CubicAlgebra::new(l, [1, 1, 0]);
        let t = e.ring().generator();
        assert_eq!(centralizer_check(&e, &t).unwrap(), (3, true));
    }

    #[test]
    fn scalar_is_not_a_generator() {
        let f = PrimeField::new(5).unwrap();
        let l = QuadraticEtale::finite_extension(f).unwrap();
        let e = CubicAlgebra::new(l.clone(), [1, 1, 0]);
        let a = e.ring().scalar(l.from_i64(2));
        assert!(is_indecomposable(&e, &a).is_err());
        assert!(is_indecomposable(&e, &e.ring().generator()).unwrap());
    }
}
