//! Involutions of 𝔆 and the quaternion subalgebras they fix.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::AutMap;
use crate::composition::{Algebra, Elem};
use crate::field::{index_to_coeffs, GroundField};
use crate::linalg::Matrix;
use crate::Error;

/// A 4-dimensional subalgebra with nondegenerate norm, given by a basis.
#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionSubalgebra<F: GroundField> {
    pub basis: [Elem<F::Elem>; 4],
}

impl<F: GroundField> QuaternionSubalgebra<F> {
    /// Checks closure under multiplication and nondegeneracy of the norm.
    pub fn new(alg: &Algebra<F>, basis: [Elem<F::Elem>; 4]) -> Result<Self, Error> {
        let k = alg.field();
        let span = Matrix::from_cols(&basis);
        if span.rank(k) != 4 {
            return Err(Error::Precondition("quaternion basis is dependent".into()));
        }
        if span.solve(k, &alg.one()).is_none() {
            return Err(Error::Precondition("subalgebra does not contain 1".into()));
        }
        for x in &basis {
            for y in &basis {
                if span.solve(k, &alg.mul(x, y)).is_none() {
                    return Err(Error::Precondition("subspace is not closed under products".into()));
                }
            }
        }
        let gram = Matrix::from_fn(4, 4, |i, j| alg.bilinear_norm(&basis[i], &basis[j]));
        if gram.rank(k) != 4 {
            return Err(Error::Precondition("norm is degenerate on the subalgebra".into()));
        }
        Ok(QuaternionSubalgebra { basis })
    }

    /// span(1, i, j, ij) for orthogonal trace-zero i, j of nonzero norm.
    pub fn generated_by(alg: &Algebra<F>, i: &[F::Elem], j: &[F::Elem]) -> Result<Self, Error> {
        Self::new(alg, [alg.one(), i.to_vec(), j.to_vec(), alg.mul(i, j)])
    }

    /// Basis of the orthogonal complement.
    pub fn orthogonal_complement(&self, alg: &Algebra<F>) -> Vec<Elem<F::Elem>> {
        let k = alg.field();
        let rows: Vec<Vec<F::Elem>> =
            self.basis.iter().map(|d| alg.polar_gram().mul_vec(k, d)).collect();
        Matrix::from_rows(rows).kernel(k)
    }
}

/// The involution fixing D pointwise and acting as −1 on D^⊥.
pub fn involution_from_quaternion<F: GroundField>(
    alg: &Arc<Algebra<F>>,
    d: &QuaternionSubalgebra<F>,
) -> Result<AutMap<F>, Error> {
    let k = alg.field();
    let mut cols: Vec<Elem<F::Elem>> = d.basis.to_vec();
    cols.extend(d.orthogonal_complement(alg));
    let p = Matrix::from_cols(&cols);
    let pinv = p.inverse(k).ok_or_else(|| Error::Precondition("D is degenerate".into()))?;
    let signs: Vec<F::Elem> =
        (0..8).map(|i| if i < 4 { k.one() } else { k.neg(&k.one()) }).collect();
    let m = p.mul(k, &Matrix::diagonal(k, &signs)).mul(k, &pinv);
    AutMap::new(alg, m)
}

/// x + ya ↦ x + (py)a on 𝔆 = D ⊕ Da, for p ∈ D with N(p) = 1.
pub fn sl1_action<F: GroundField>(
    alg: &Arc<Algebra<F>>,
    d: &QuaternionSubalgebra<F>,
    a: &[F::Elem],
    p: &[F::Elem],
) -> Result<AutMap<F>, Error> {
    let k = alg.field();
    if !k.is_one(&alg.norm(p)) {
        return Err(Error::Precondition("sl1_action needs N(p) = 1".into()));
    }
    let span = Matrix::from_cols(&d.basis);
    if span.solve(k, p).is_none() {
        return Err(Error::Precondition("p must lie in D".into()));
    }
    if d.basis.iter().any(|x| !k.is_zero(&alg.bilinear_norm(x, a))) || k.is_zero(&alg.norm(a)) {
        return Err(Error::Precondition("a must be orthogonal to D with N(a) != 0".into()));
    }
    let mut src: Vec<Elem<F::Elem>> = d.basis.to_vec();
    let mut dst = src.clone();
    for x in &d.basis {
        src.push(alg.mul(x, a));
        dst.push(alg.mul(&alg.mul(p, x), a));
    }
    let pinv = Matrix::from_cols(&src)
        .inverse(k)
        .ok_or_else(|| Error::Internal("D + Da does not span".into()))?;
    AutMap::new(alg, Matrix::from_cols(&dst).mul(k, &pinv))
}

/// 1, i, j, ij, ℓ, iℓ, jℓ, (ij)ℓ.
pub fn cayley_dickson_basis<F: GroundField>(
    alg: &Algebra<F>,
    i: &[F::Elem],
    j: &[F::Elem],
    l: &[F::Elem],
) -> Vec<Elem<F::Elem>> {
    let ij = alg.mul(i, j);
    vec![
        alg.one(),
        i.to_vec(),
        j.to_vec(),
        ij.clone(),
        l.to_vec(),
        alg.mul(i, l),
        alg.mul(j, l),
        alg.mul(&ij, l),
    ]
}

/// First vector (in lexicographic coefficient order) of span(`span`) that
/// is orthogonal to every vector in `ortho` and has norm `target`.
fn search_norm<F: GroundField>(
    alg: &Algebra<F>,
    span: &[Elem<F::Elem>],
    ortho: &[Elem<F::Elem>],
    target: &F::Elem,
) -> Option<Elem<F::Elem>> {
    let k = alg.field();
    let q = k.order()?;
    let conditions = Matrix::from_fn(ortho.len().max(1), span.len(), |r, c| {
        ortho.get(r).map_or(k.zero(), |o| alg.bilinear_norm(o, &span[c]))
    });
    let sub: Vec<Elem<F::Elem>> = conditions
        .kernel(k)
        .iter()
        .map(|coeffs| {
            let mut v = alg.zero();
            for (c, s) in coeffs.iter().zip(span) {
                v = alg.add(&v, &alg.scale(c, s));
            }
            v
        })
        .collect();
    let total = q.checked_pow(sub.len() as u32)?;
    (1..total).find_map(|idx| {
        let coeffs = index_to_coeffs(k, sub.len(), idx);
        let mut v = alg.zero();
        for (c, s) in coeffs.iter().zip(&sub) {
            v = alg.add(&v, &alg.scale(c, s));
        }
        (alg.norm(&v) == *target).then_some(v)
    })
}

/// A Cayley–Dickson triple (i, j, ℓ) of norm −1 elements adapted to D:
/// i, j ∈ D trace zero, orthogonal; ℓ ∈ D^⊥.
fn adapted_triple<F: GroundField>(
    alg: &Algebra<F>,
    d: &QuaternionSubalgebra<F>,
) -> Option<[Elem<F::Elem>; 3]> {
    let k = alg.field();
    let m1 = k.neg(&k.one());
    let one = alg.one();
    let i = search_norm(alg, &d.basis, &[one.clone()], &m1)?;
    let j = search_norm(alg, &d.basis, &[one, i.clone()], &m1)?;
    let l = search_norm(alg, &d.orthogonal_complement(alg), &[], &m1)?;
    Some([i, j, l])
}

/// Result of [`involution_conjugacy_classes`].
#[derive(Clone, Debug)]
pub struct InvolutionClasses<F: GroundField> {
    /// Number of conjugacy classes met among the constructed involutions.
    pub classes: usize,
    pub involutions: Vec<AutMap<F>>,
    /// (i, j, g) with g·ιᵢ·g⁻¹ = ιⱼ, verified exactly.
    pub conjugators: Vec<(usize, usize, AutMap<F>)>,
}

/// Builds one involution from the first quaternion subalgebra in
/// lexicographic order plus `random` seeded ones, and joins them by
/// explicit conjugators. An automorphism is fixed by the image of a
/// Cayley–Dickson triple, so mapping a norm −1 triple adapted to one fixed
/// algebra onto one adapted to the other conjugates the involutions.
pub fn involution_conjugacy_classes<F: GroundField>(
    alg: &Arc<Algebra<F>>,
    random: usize,
    seed: u64,
) -> Result<InvolutionClasses<F>, Error> {
    let k = alg.field();
    if k.order().is_none() {
        return Err(Error::Unsupported("involution classes need a finite field".into()));
    }
    if alg.dim() != 8 {
        return Err(Error::Precondition("not an octonion algebra".into()));
    }
    let all: Vec<Elem<F::Elem>> = (0..8).map(|i| alg.basis(i)).collect();
    let zero = k.zero();
    let mut subalgebras = Vec::new();
    // lexicographically first: i, j of norm −1 found by search
    let m1 = k.neg(&k.one());
    let i = search_norm(alg, &all, &[alg.one()], &m1)
        .ok_or_else(|| Error::Internal("no trace-zero element of norm -1".into()))?;
    let j = search_norm(alg, &all, &[alg.one(), i.clone()], &m1)
        .ok_or_else(|| Error::Internal("no second element of norm -1".into()))?;
    subalgebras.push(QuaternionSubalgebra::generated_by(alg, &i, &j)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while subalgebras.len() < random + 1 {
        let i = alg.random(&mut rng);
        let i = alg.sub(&i, &alg.scale(&k.div(&alg.trace(&i), &k.from_i64(2)).unwrap(), &alg.one()));
        let ni = alg.norm(&i);
        if ni == zero {
            continue;
        }
        let j = alg.random(&mut rng);
        // project j away from 1 and i
        let j = alg.sub(&j, &alg.scale(&k.div(&alg.trace(&j), &k.from_i64(2)).unwrap(), &alg.one()));
        let c = k.div(&alg.bilinear_norm(&j, &i), &k.add(&ni, &ni)).unwrap();
        let j = alg.sub(&j, &alg.scale(&c, &i));
        if alg.norm(&j) == zero {
            continue;
        }
        if let Ok(d) = QuaternionSubalgebra::generated_by(alg, &i, &j) {
            subalgebras.push(d);
        }
    }
    let involutions: Vec<AutMap<F>> = subalgebras
        .iter()
        .map(|d| involution_from_quaternion(alg, d))
        .collect::<Result<_, _>>()?;
    let triples: Vec<Option<[Elem<F::Elem>; 3]>> =
        subalgebras.iter().map(|d| adapted_triple(alg, d)).collect();
    let mut root: Vec<usize> = (0..involutions.len()).collect();
    let mut conjugators = Vec::new();
    for t in 1..involutions.len() {
        let (Some(a), Some(b)) = (&triples[0], &triples[t]) else { continue };
        let src = Matrix::from_cols(&cayley_dickson_basis(alg, &a[0], &a[1], &a[2]));
        let dst = Matrix::from_cols(&cayley_dickson_basis(alg, &b[0], &b[1], &b[2]));
        let Some(sinv) = src.inverse(k) else { continue };
        let Ok(g) = AutMap::new(alg, dst.mul(k, &sinv)) else { continue };
        if involutions[0].conjugate_by(&g) == involutions[t] {
            root[t] = 0;
            conjugators.push((0, t, g));
        }
    }
    let mut roots = root.clone();
    roots.sort_unstable();
    roots.dedup();
    Ok(InvolutionClasses { classes: roots.len(), involutions, conjugators })
}
