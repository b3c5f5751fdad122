//! Peirce frames of split octonion algebras.
//!
//! For a proper idempotent e, the trace-zero complement of ⟨e, 1−e⟩ splits
//! as U ⊕ W with U = {x : ex = 0, xe = x} and W = {x : xe = 0, ex = x}.
//! A frame normalizes bases of U and W so that the linear map sending the
//! Zorn basis to (1−e, u₁, u₂, u₃, w₁, w₂, w₃, e) is an algebra isomorphism.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::models::zorn_mul;
use super::{Algebra, Elem};
use crate::field::GroundField;
use crate::linalg::Matrix;
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
pub struct PeirceFrame<F: GroundField> {
    pub e: Elem<F::Elem>,
    pub u: [Elem<F::Elem>; 3],
    pub w: [Elem<F::Elem>; 3],
    /// Columns are the images of the Zorn basis vectors.
    pub to_algebra: Matrix<F::Elem>,
    pub from_algebra: Matrix<F::Elem>,
}

fn stacked_kernel<F: GroundField>(
    f: &F,
    top: &Matrix<F::Elem>,
    bottom: &Matrix<F::Elem>,
) -> Vec<Vec<F::Elem>> {
    let mut rows = top.to_rows();
    rows.extend(bottom.to_rows());
    Matrix::from_rows(rows).kernel(f)
}

/// The Peirce frame of `alg` with respect to the idempotent `e`.
pub fn peirce_frame<F: GroundField>(
    alg: &Algebra<F>,
    e: &[F::Elem],
) -> Result<PeirceFrame<F>, Error> {
    let f = alg.field();
    if alg.dim() != 8 {
        return Err(Error::Precondition("Peirce frames need an 8-dimensional algebra".into()));
    }
    if alg.mul(e, e) != e || alg.is_zero(e) || e == alg.one().as_slice() {
        return Err(Error::Precondition("e is not a proper idempotent".into()));
    }
    let id = Matrix::identity(f, 8);
    let le = alg.left_mul_matrix(e);
    let re = alg.right_mul_matrix(e);
    let u = stacked_kernel(f, &le, &re.sub(f, &id));
    let w = stacked_kernel(f, &re, &le.sub(f, &id));
    if u.len() != 3 || w.len() != 3 {
        return Err(Error::Precondition(format!(
            "Peirce spaces have dimensions {} and {}, expected 3 and 3",
            u.len(),
            w.len()
        )));
    }
    let mut u = [u[0].clone(), u[1].clone(), u[2].clone()];
    let w1 = alg.mul(&u[1], &u[2]);
    let c = alg.bilinear_norm(&u[0], &w1);
    let cinv = f
        .inv(&c)
        .ok_or_else(|| Error::Precondition("norm pairing between U and W is degenerate".into()))?;
    u[0] = alg.scale(&cinv, &u[0]);
    let w = [alg.mul(&u[1], &u[2]), alg.mul(&u[2], &u[0]), alg.mul(&u[0], &u[1])];
    let one_minus_e = alg.sub(&alg.one(), e);
    let cols = vec![
        one_minus_e,
        u[0].clone(),
        u[1].clone(),
        u[2].clone(),
        w[0].clone(),
        w[1].clone(),
        w[2].clone(),
        e.to_vec(),
    ];
    let p = Matrix::from_cols(&cols);
    let pinv = p
        .inverse(f)
        .ok_or_else(|| Error::Internal("Peirce frame vectors are dependent".into()))?;
    for i in 0..8 {
        for j in 0..8 {
            let (a, b) = (alg.basis(i), alg.basis(j));
            let lhs = p.mul_vec(f, &zorn_mul(f, &a, &b));
            let rhs = alg.mul(&p.mul_vec(f, &a), &p.mul_vec(f, &b));
            if lhs != rhs {
                return Err(Error::Internal(format!(
                    "Peirce frame is not multiplicative on Zorn basis pair ({i}, {j})"
                )));
            }
        }
    }
    Ok(PeirceFrame { e: e.to_vec(), u, w, to_algebra: p, from_algebra: pinv })
}

/// A proper idempotent, found by completing random elements to norm-zero
/// points on lines through 1. `None` if none appears within `tries`
/// (for example in a division algebra).
pub fn find_idempotent<F: GroundField>(alg: &Algebra<F>, tries: usize) -> Option<Elem<F::Elem>> {
    let f = alg.field();
    let one = alg.one();
    let two = f.from_i64(2);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..tries {
        let x = alg.random(&mut rng);
        // N(x + t) = t² + tr(x)·t + N(x)
        let tr = alg.trace(&x);
        let disc = f.sub(&f.square(&tr), &f.mul(&f.from_i64(4), &alg.norm(&x)));
        let Some(r) = f.sqrt(&disc) else { continue };
        let t = f.div(&f.sub(&r, &tr), &two).expect("odd characteristic");
        let z = alg.add(&x, &alg.scale(&t, &one));
        let tz = alg.trace(&z);
        let Some(inv) = f.inv(&tz) else { continue };
        let e = alg.scale(&inv, &z);
        if alg.mul(&e, &e) == e && !alg.is_zero(&e) && e != one {
            return Some(e);
        }
    }
    None
}
