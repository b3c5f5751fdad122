//! Concrete constructions of composition algebras.

use serde::{Deserialize, Serialize};

use super::{Algebra, Elem, Model};
use crate::field::{Field, GroundField, LElem, QuadraticEtale};
use crate::Error;

/// k itself, with N(x) = x².
pub fn ground<F: GroundField>(field: F) -> Algebra<F> {
    let f = field.clone();
    let g = field.clone();
    Algebra::from_product(
        field.clone(),
        Model::Doubled,
        1,
        vec![field.one()],
        move |x, y| vec![f.mul(&x[0], &y[0])],
        move |x| g.square(&x[0]),
    )
}

fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        acc = f.add(&acc, &f.mul(x, y));
    }
    acc
}

fn wedge<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> [F::Elem; 3] {
    let m = |i: usize, j: usize| f.sub(&f.mul(&a[i], &b[j]), &f.mul(&a[j], &b[i]));
    [m(1, 2), m(2, 0), m(0, 1)]
}

/// Product of two Zorn vector matrices (α, v; w, β), coordinates
/// (α, v₁, v₂, v₃, w₁, w₂, w₃, β):
///
/// (α,v;w,β)(α',v';w',β') =
///   (αα' − ⟨v,w'⟩, αv' + β'v + w∧w'; βw' + α'w + v∧v', ββ' − ⟨w,v'⟩).
pub fn zorn_mul<F: Field>(f: &F, x: &[F::Elem], y: &[F::Elem]) -> Elem<F::Elem> {
    let (a, v, w, b) = (&x[0], &x[1..4], &x[4..7], &x[7]);
    let (a2, v2, w2, b2) = (&y[0], &y[1..4], &y[4..7], &y[7]);
    let ww = wedge(f, w, w2);
    let vv = wedge(f, v, v2);
    let mut out = Vec::with_capacity(8);
    out.push(f.sub(&f.mul(a, a2), &dot(f, v, w2)));
    for i in 0..3 {
        out.push(f.add(&f.add(&f.mul(a, &v2[i]), &f.mul(b2, &v[i])), &ww[i]));
    }
    for i in 0..3 {
        out.push(f.add(&f.add(&f.mul(b, &w2[i]), &f.mul(a2, &w[i])), &vv[i]));
    }
    out.push(f.sub(&f.mul(b, b2), &dot(f, w, v2)));
    out
}

/// N(α,v;w,β) = αβ + ⟨v,w⟩.
pub fn zorn_norm<F: Field>(f: &F, x: &[F::Elem]) -> F::Elem {
    f.add(&f.mul(&x[0], &x[7]), &dot(f, &x[1..4], &x[4..7]))
}

/// The split octonions as Zorn vector matrices.
pub fn zorn<F: GroundField>(field: F) -> Algebra<F> {
    let (f, g) = (field.clone(), field.clone());
    let mut one = vec![field.zero(); 8];
    one[0] = field.one();
    one[7] = field.one();
    Algebra::from_product(
        field,
        Model::Zorn,
        8,
        one,
        move |x, y| zorn_mul(&f, x, y),
        move |x| zorn_norm(&g, x),
    )
}

/// Cayley–Dickson double of `base` with parameter λ:
/// (x + ya)(u + va) = (xu + λ v̄ y) + (vx + y ū)a, N(x + ya) = N(x) − λN(y).
pub fn cayley_dickson_double<F: GroundField>(
    base: &Algebra<F>,
    lambda: &F::Elem,
) -> Result<Algebra<F>, Error> {
    let f = base.field().clone();
    if f.is_zero(lambda) {
        return Err(Error::Precondition("doubling parameter must be nonzero".into()));
    }
    let n = base.dim();
    if !matches!(n, 1 | 2 | 4) {
        return Err(Error::Precondition(format!(
            "can only double algebras of dimension 1, 2 or 4, not {n}"
        )));
    }
    let mut one = base.one();
    one.extend(base.zero());
    let (b1, b2) = (base.clone(), base.clone());
    let (l1, l2) = (lambda.clone(), lambda.clone());
    let (f1, f2) = (f.clone(), f.clone());
    Ok(Algebra::from_product(
        f,
        Model::Doubled,
        2 * n,
        one,
        move |p, q| {
            let (x, y) = p.split_at(n);
            let (u, v) = q.split_at(n);
            let first = b1.add(&b1.mul(x, u), &b1.scale(&l1, &b1.mul(&b1.conj(v), y)));
            let second = b1.add(&b1.mul(v, x), &b1.mul(y, &b1.conj(u)));
            let _ = &f1;
            let mut out = first;
            out.extend(second);
            out
        },
        move |p| {
            let (x, y) = p.split_at(n);
            f2.sub(&b2.norm(x), &f2.mul(&l2, &b2.norm(y)))
        },
    ))
}

/// Iterated doubling of k with the given parameters (at most three).
pub fn doubled<F: GroundField>(field: F, lambdas: &[F::Elem]) -> Result<Algebra<F>, Error> {
    let mut a = ground(field);
    for l in lambdas {
        a = cayley_dickson_double(&a, l)?;
    }
    Ok(a)
}

/// A rank 3 hermitian space over L with diagonal Gram (λ₁, λ₂, λ₃), λᵢ ∈ k*.
///
/// h(x, y) = Σ λᵢ xᵢ σ(yᵢ), linear in the first argument.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianSpace3<F: GroundField> {
    l: QuadraticEtale<F>,
    gram: [F::Elem; 3],
}

impl<F: GroundField> HermitianSpace3<F> {
    pub fn new(l: QuadraticEtale<F>, gram: [F::Elem; 3]) -> Result<Self, Error> {
        if gram.iter().any(|g| l.base().is_zero(g)) {
            return Err(Error::Precondition("hermitian Gram entries must be nonzero".into()));
        }
        Ok(HermitianSpace3 { l, gram })
    }

    pub fn l(&self) -> &QuadraticEtale<F> {
        &self.l
    }

    pub fn gram(&self) -> &[F::Elem; 3] {
        &self.gram
    }

    pub fn h(&self, x: &[LElem<F::Elem>], y: &[LElem<F::Elem>]) -> LElem<F::Elem> {
        let l = &self.l;
        let mut acc = l.zero();
        for i in 0..3 {
            let t = l.mul(&x[i], &l.sigma(&y[i]));
            acc = l.add(&acc, &l.scale(&self.gram[i], &t));
        }
        acc
    }

    /// det H = λ₁λ₂λ₃.
    pub fn det(&self) -> F::Elem {
        let k = self.l.base();
        k.mul(&k.mul(&self.gram[0], &self.gram[1]), &self.gram[2])
    }

    /// A ψ ∈ L with N(ψ) = det H, preferring ψ ∈ k.
    ///
    /// Finite fields: exhaustive. Rationals: a square root of det H, then a
    /// small search box; `None` if nothing is found there.
    pub fn find_trivialization(&self) -> Option<LElem<F::Elem>> {
        let l = &self.l;
        let k = l.base();
        let d = self.det();
        if let Some(r) = k.sqrt(&d) {
            return Some(l.embed(&r));
        }
        if let Some(n) = l.order() {
            return (0..n).map(|i| l.element_at(i)).find(|x| l.norm(x) == d);
        }
        for num in 0..=12i64 {
            for den in 1..=6i64 {
                for n1 in -12..=12i64 {
                    let x0 = k.div(&k.from_i64(num), &k.from_i64(den))?;
                    let x1 = k.div(&k.from_i64(n1), &k.from_i64(den))?;
                    let x = LElem::new(x0, x1);
                    if l.norm(&x) == d {
                        return Some(x);
                    }
                }
            }
        }
        None
    }

    /// The cross product with h(u, v×w) = ψ·det(u, v, w):
    /// (v×w)ᵢ = σ(ψ)·σ((v∧w)ᵢ)/λᵢ.
    pub fn cross(
        &self,
        psi: &LElem<F::Elem>,
        v: &[LElem<F::Elem>],
        w: &[LElem<F::Elem>],
    ) -> [LElem<F::Elem>; 3] {
        let l = &self.l;
        let k = l.base();
        let vw = wedge(l, v, w);
        let sp = l.sigma(psi);
        let mut out = vw;
        for i in 0..3 {
            let inv = k.inv(&self.gram[i]).expect("nonzero Gram");
            out[i] = l.scale(&inv, &l.mul(&sp, &l.sigma(&out[i])));
        }
        out
    }
}

/// Splits k-coordinates (x₀, x₁, x₀', x₁', ...) into L-elements.
pub fn to_l<E: Clone>(c: &[E]) -> Vec<LElem<E>> {
    c.chunks(2).map(|p| LElem::new(p[0].clone(), p[1].clone())).collect()
}

pub fn from_l<E: Clone>(c: &[LElem<E>]) -> Vec<E> {
    c.iter().flat_map(|x| [x.x0.clone(), x.x1.clone()]).collect()
}

/// The octonion algebra L ⊕ V built from a rank 3 hermitian space:
/// (a, v)(b, w) = (ab − h(v, w), aw + b̄v + v×w), N(a, v) = N(a) + h(v, v).
///
/// `psi` must satisfy N(ψ) = det H; `None` searches for one.
pub fn octonion_from_hermitian<F: GroundField>(
    space: &HermitianSpace3<F>,
    psi: Option<LElem<F::Elem>>,
) -> Result<Algebra<F>, Error> {
    let l = space.l().clone();
    let psi = match psi {
        Some(p) => p,
        None => space.find_trivialization().ok_or_else(|| {
            Error::Precondition(format!(
                "discriminant {} is not a norm from L (none found)",
                l.base().format(&space.det())
            ))
        })?,
    };
    if l.norm(&psi) != space.det() {
        return Err(Error::Precondition(format!(
            "N(psi) = {} differs from det H = {}",
            l.base().format(&l.norm(&psi)),
            l.base().format(&space.det())
        )));
    }
    let k = l.base().clone();
    let mut one = vec![k.zero(); 8];
    one[0] = k.one();
    let (s1, s2) = (space.clone(), space.clone());
    Ok(Algebra::from_product(
        k,
        Model::Hermitian,
        8,
        one,
        move |x, y| {
            let l = s1.l();
            let (x, y) = (to_l(x), to_l(y));
            let (a, v) = (&x[0], &x[1..]);
            let (b, w) = (&y[0], &y[1..]);
            let first = l.sub(&l.mul(a, b), &s1.h(v, w));
            let cr = s1.cross(&psi, v, w);
            let bs = l.sigma(b);
            let mut out = vec![first];
            for i in 0..3 {
                out.push(l.add(&l.add(&l.mul(a, &w[i]), &l.mul(&bs, &v[i])), &cr[i]));
            }
            from_l(&out)
        },
        move |x| {
            let l = s2.l();
            let x = to_l(x);
            let hv = s2.h(&x[1..], &x[1..]);
            l.base().add(&l.norm(&x[0]), &l.to_base(&hv).expect("h(v,v) lies in k"))
        },
    ))
}

/// A rank 3 quadratic space with diagonal form B(v, w) = Σ λᵢvᵢwᵢ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticSpace3<E> {
    pub diag: [E; 3],
}

/// The quaternion algebra k ⊕ V: (a, v)(b, w) = (ab − B(v, w), aw + bv + v×w),
/// N(a, v) = a² + B(v, v), where B(u, v×w) = ψ·det(u, v, w) and ψ² = det B.
pub fn quaternion_from_quadratic<F: GroundField>(
    field: F,
    space: &QuadraticSpace3<F::Elem>,
    psi: Option<F::Elem>,
) -> Result<Algebra<F>, Error> {
    let d = &space.diag;
    if d.iter().any(|x| field.is_zero(x)) {
        return Err(Error::Precondition("quadratic space is degenerate".into()));
    }
    let det = field.mul(&field.mul(&d[0], &d[1]), &d[2]);
    let psi = match psi {
        Some(p) => p,
        None => field.sqrt(&det).ok_or_else(|| {
            Error::Precondition(format!("discriminant {} is not a square", field.format(&det)))
        })?,
    };
    if field.square(&psi) != det {
        return Err(Error::Precondition("psi^2 differs from det B".into()));
    }
    let inv: Vec<F::Elem> = d.iter().map(|x| field.inv(x).expect("nonzero")).collect();
    let diag = d.clone();
    let (f1, f2) = (field.clone(), field.clone());
    let diag2 = diag.clone();
    let mut one = vec![field.zero(); 4];
    one[0] = field.one();
    Ok(Algebra::from_product(
        field,
        Model::Quaternion,
        4,
        one,
        move |x, y| {
            let f = &f1;
            let (a, v) = (&x[0], &x[1..]);
            let (b, w) = (&y[0], &y[1..]);
            let bvw = f.sum(
                (0..3).map(|i| f.mul(&diag[i], &f.mul(&v[i], &w[i]))).collect::<Vec<_>>().iter(),
            );
            let vw = wedge(f, v, w);
            let mut out = vec![f.sub(&f.mul(a, b), &bvw)];
            for i in 0..3 {
                let cr = f.mul(&psi, &f.mul(&vw[i], &inv[i]));
                out.push(f.add(&f.add(&f.mul(a, &w[i]), &f.mul(b, &v[i])), &cr));
            }
            out
        },
        move |x| {
            let f = &f2;
            let bvv = f.sum(
                (0..3).map(|i| f.mul(&diag2[i], &f.square(&x[i + 1]))).collect::<Vec<_>>().iter(),
            );
            f.add(&f.square(&x[0]), &bvv)
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::field::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f7() -> PrimeField {
        PrimeField::new(7).unwrap()
    }

    #[test]
    fn zorn_identity_and_idempotent() {
        let z = zorn(f7());
        let e = vec![1, 0, 0, 0, 0, 0, 0, 0];
        assert_eq!(z.mul(&e, &e), e);
        let x = vec![3, 1, 4, 1, 5, 2, 6, 5];
        assert_eq!(z.mul(&z.one(), &x), x);
        assert_eq!(z.mul(&x, &z.one()), x);
    }

    #[test]
    fn zorn_square_of_off_diagonal_unit() {
        let z = zorn(f7());
        let x = vec![0, 1, 0, 0, 1, 0, 0, 0];
        assert_eq!(z.mul(&x, &x), vec![6, 0, 0, 0, 0, 0, 0, 6]);
        assert_eq!(z.norm(&x), 1);
        assert_eq!(z.trace(&x), 0);
    }

    #[test]
    fn doubling_k_gives_quadratic_norm() {
        let f = f7();
        let a = doubled(f, &[3]).unwrap();
        assert_eq!(a.norm(&[2, 1]), f.sub(&4, &3));
        assert!(a.is_composition(100, &mut ChaCha8Rng::seed_from_u64(1)));
        assert!(cayley_dickson_double(&a, &0).is_err());
        let o = doubled(f, &[1, 1, 1]).unwrap();
        assert!(cayley_dickson_double(&o, &1).is_err());
    }

    #[test]
    fn three_doublings_compose() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let o = doubled(f7(), &[3, 5, 6]).unwrap();
        assert_eq!(o.dim(), 8);
        assert!(o.is_composition(2000, &mut rng));
        assert!(!o.is_associative());
        let q = doubled(f7(), &[3, 5]).unwrap();
        assert!(q.is_associative());
    }

    #[test]
    fn hermitian_model_composes_and_rejects_bad_psi() {
        let f = f7();
        let l = QuadraticEtale::finite_extension(f).unwrap();
        let space = HermitianSpace3::new(l.clone(), [1, 2, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let o = octonion_from_hermitian(&space, Some(l.embed(&2))).unwrap();
        assert!(o.is_composition(2000, &mut rng));
        assert!(octonion_from_hermitian(&space, Some(l.one())).is_err());
        // a second trivialization outside k
        let psi = (0..49)
            .map(|i| l.element_at(i))
            .find(|x| l.norm(x) == 4 && l.to_base(x).is_none())
            .unwrap();
        let o2 = octonion_from_hermitian(&space, Some(psi)).unwrap();
        assert!(o2.is_composition(2000, &mut rng));
    }

    #[test]
    fn hermitian_norm_over_q_has_expected_diagonal() {
        let q = Rationals;
        let r = |n: i64| Rational::from(n);
        let l = QuadraticEtale::field(q, r(-1)).unwrap();
        let space = HermitianSpace3::new(l, [r(1), r(2), r(2)]).unwrap();
        let o = octonion_from_hermitian(&space, None).unwrap();
        let diag: Vec<Rational> = (0..8).map(|i| o.norm(&o.basis(i))).collect();
        // c = −1
        let want = [1, 1, 1, 1, 2, 2, 2, 2].map(r);
        assert_eq!(diag, want);
        assert!(o.is_composition(300, &mut ChaCha8Rng::seed_from_u64(9)));
    }

    #[test]
    fn quaternion_from_quadratic_is_associative() {
        let f = f7();
        let space = QuadraticSpace3 { diag: [1, 2, 2] };
        let h = quaternion_from_quadratic(f, &space, None).unwrap();
        assert!(h.is_associative());
        assert!(h.is_composition(500, &mut ChaCha8Rng::seed_from_u64(4)));
        assert_eq!(h.mul(&h.one(), &h.one()), h.one());
        let bad = QuadraticSpace3 { diag: [1, 1, 3] };
        assert!(quaternion_from_quadratic(f, &bad, None).is_err());
    }
}
