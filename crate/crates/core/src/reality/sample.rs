//! Seeded samplers for SL(3, k) and SU(H) over finite fields.

use rand::Rng;

use super::is_semisimple;
use crate::field::{index_to_coeffs, Field, GroundField, LElem, QuadraticEtale};
use crate::linalg::Matrix;

/// A uniformly random invertible matrix with its first row rescaled to
/// make the determinant 1.
pub fn random_sl3<F: Field, R: Rng + ?Sized>(k: &F, rng: &mut R) -> Matrix<F::Elem> {
    loop {
        let mut m = Matrix::random(k, 3, 3, rng);
        let Some(inv) = k.inv(&m.det3(k)) else { continue };
        for j in 0..3 {
            m[(0, j)] = k.mul(&m[(0, j)], &inv);
        }
        return m;
    }
}

pub fn semisimple_sl3<F: Field, R: Rng + ?Sized>(k: &F, rng: &mut R) -> Matrix<F::Elem> {
    loop {
        let m = random_sl3(k, rng);
        if is_semisimple(k, &m) {
            return m;
        }
    }
}

fn h_pairing<F: GroundField>(
    l: &QuadraticEtale<F>,
    gram: &[F::Elem; 3],
    x: &[LElem<F::Elem>],
    y: &[LElem<F::Elem>],
) -> LElem<F::Elem> {
    (0..3).fold(l.zero(), |acc, i| {
        l.add(&acc, &l.scale(&gram[i], &l.mul(&x[i], &l.sigma(&y[i]))))
    })
}

/// A random element of SU(H), H = diag(gram): Gram–Schmidt on random
/// columns, each column rescaled so that h(cᵢ, cᵢ) = gramᵢ, then the first
/// column divided by the determinant (a norm-one scalar).
pub fn random_su<F: GroundField, R: Rng + ?Sized>(
    l: &QuadraticEtale<F>,
    gram: &[F::Elem; 3],
    rng: &mut R,
) -> Matrix<LElem<F::Elem>> {
    let k = l.base();
    let n = l.order().expect("finite field");
    'retry: loop {
        let mut cols: Vec<Vec<LElem<F::Elem>>> = Vec::with_capacity(3);
        for j in 0..3 {
            let mut v: Vec<LElem<F::Elem>> = (0..3).map(|_| l.random(rng)).collect();
            for (i, u) in cols.iter().enumerate() {
                let c = l.div(&h_pairing(l, gram, &v, u), &l.embed(&gram[i])).expect("gram entries are units");
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi = l.sub(vi, &l.mul(&c, ui));
                }
            }
            let hv = l.to_base(&h_pairing(l, gram, &v, &v)).expect("h(v,v) lies in k");
            if k.is_zero(&hv) {
                continue 'retry;
            }
            let target = k.div(&gram[j], &hv).expect("nonzero");
            let mu = (1..n)
                .map(|i| l.element_at(i))
                .find(|m| l.norm(m) == target)
                .expect("norms of a finite field extension are surjective");
            cols.push(v.iter().map(|x| l.mul(&mu, x)).collect());
        }
        let mut m = Matrix::from_cols(&cols);
        let dinv = l.inv(&m.det3(l)).expect("unitary matrices are invertible");
        for i in 0..3 {
            m[(i, 0)] = l.mul(&m[(i, 0)], &dinv);
        }
        return m;
    }
}

pub fn semisimple_su<F: GroundField, R: Rng + ?Sized>(
    l: &QuadraticEtale<F>,
    gram: &[F::Elem; 3],
    rng: &mut R,
) -> Matrix<LElem<F::Elem>> {
    loop {
        let m = random_su(l, gram, rng);
        if is_semisimple(l, &m) {
            return m;
        }
    }
}

/// Every upper unitriangular 3×3 matrix other than I, in lexicographic
/// order of the entries (a₁₂, a₁₃, a₂₃).
pub fn unitriangular_family<F: Field>(k: &F) -> Vec<Matrix<F::Elem>> {
    let q = k.order().expect("finite field");
    (1..q * q * q)
        .map(|i| {
            let c = index_to_coeffs(k, 3, i);
            let mut m = Matrix::identity(k, 3);
            m[(0, 1)] = c[0].clone();
            m[(0, 2)] = c[1].clone();
            m[(1, 2)] = c[2].clone();
            m
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::in_su;
    use crate::field::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn su_samples_are_unitary() {
        let f = PrimeField::new(5).unwrap();
        let l = QuadraticEtale::finite_extension(f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for gram in [[1, 1, 1], [2, 2, 2], [1, 2, 3]] {
            for _ in 0..20 {
                assert!(in_su(&l, &gram, &random_su(&l, &gram, &mut rng)));
            }
        }
    }

    #[test]
    fn unitriangular_count() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(unitriangular_family(&f).len(), 124);
    }
}
