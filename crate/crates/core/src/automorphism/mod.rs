//! Automorphisms of an octonion algebra as certified 8×8 matrices.
//!
//! Matrices act on coordinate columns in the algebra's basis. Composition
//! `g.compose(&h)` is the map x ↦ g(h(x)).

mod embed;
mod involution;

use std::sync::Arc;

use rand::Rng;

use crate::composition::{Algebra, Elem};
use crate::field::GroundField;
use crate::linalg::Matrix;
use crate::Error;

pub use embed::{
    build_rho, in_sl3, in_su, involution_from_symmetric, semidirect_split, sl3_embed, su_embed,
    UnitaryFrame,
};
pub use involution::{
    cayley_dickson_basis, involution_conjugacy_classes, involution_from_quaternion, sl1_action,
    InvolutionClasses, QuaternionSubalgebra,
};

/// Why a matrix failed to certify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertFailure {
    WrongShape,
    MovesOne,
    /// e_i·e_j is not mapped to M(e_i)·M(e_j).
    NotMultiplicative { i: usize, j: usize },
    /// MᵀGM ≠ G for the polar Gram G.
    NormNotPreserved,
}

/// An 8×8 matrix over k together with the algebra it acts on.
///
/// `certified` holds iff M(1) = 1, M(e_i·e_j) = M(e_i)M(e_j) on all 64
/// basis pairs, and M preserves the polar form. By bilinearity the basis
/// checks prove M is an automorphism.
#[derive(Clone, Debug)]
pub struct AutMap<F: GroundField> {
    matrix: Matrix<F::Elem>,
    algebra: Arc<Algebra<F>>,
    failure: Option<CertFailure>,
}

impl<F: GroundField> PartialEq for AutMap<F> {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

/// Checks M against the defining property of Aut(𝔆).
pub fn certify_automorphism<F: GroundField>(
    algebra: &Arc<Algebra<F>>,
    matrix: Matrix<F::Elem>,
) -> AutMap<F> {
    let failure = find_failure(algebra, &matrix);
    AutMap { matrix, algebra: Arc::clone(algebra), failure }
}

fn find_failure<F: GroundField>(alg: &Algebra<F>, m: &Matrix<F::Elem>) -> Option<CertFailure> {
    let f = alg.field();
    let n = alg.dim();
    if m.rows() != n || m.cols() != n {
        return Some(CertFailure::WrongShape);
    }
    if m.mul_vec(f, &alg.one()) != alg.one() {
        return Some(CertFailure::MovesOne);
    }
    let images: Vec<Elem<F::Elem>> = (0..n).map(|j| m.col(j)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = m.mul_vec(f, &alg.mul(&alg.basis(i), &alg.basis(j)));
            if lhs != alg.mul(&images[i], &images[j]) {
                return Some(CertFailure::NotMultiplicative { i, j });
            }
        }
    }
    let g = alg.polar_gram();
    if m.transpose().mul(f, g).mul(f, m) != *g {
        return Some(CertFailure::NormNotPreserved);
    }
    None
}

impl<F: GroundField> AutMap<F> {
    /// Certifies and returns an error naming the failure otherwise.
    pub fn new(algebra: &Arc<Algebra<F>>, matrix: Matrix<F::Elem>) -> Result<Self, Error> {
        let a = certify_automorphism(algebra, matrix);
        match &a.failure {
            None => Ok(a),
            Some(fail) => Err(Error::NotAutomorphism(format!("{fail:?}"))),
        }
    }

    pub fn identity(algebra: &Arc<Algebra<F>>) -> Self {
        let m = Matrix::identity(algebra.field(), algebra.dim());
        AutMap { matrix: m, algebra: Arc::clone(algebra), failure: None }
    }

    pub fn is_certified(&self) -> bool {
        self.failure.is_none()
    }

    pub fn failure(&self) -> Option<&CertFailure> {
        self.failure.as_ref()
    }

    pub fn matrix(&self) -> &Matrix<F::Elem> {
        &self.matrix
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn apply(&self, x: &[F::Elem]) -> Elem<F::Elem> {
        self.matrix.mul_vec(self.field(), x)
    }

    /// x ↦ self(other(x)). Certified if both factors are.
    pub fn compose(&self, other: &Self) -> Self {
        let failure = if self.is_certified() && other.is_certified() {
            None
        } else {
            find_failure(&self.algebra, &self.matrix.mul(self.field(), &other.matrix))
        };
        AutMap {
            matrix: self.matrix.mul(self.field(), &other.matrix),
            algebra: Arc::clone(&self.algebra),
            failure,
        }
    }

    pub fn inverse(&self) -> Self {
        let inv = self.matrix.inverse(self.field()).expect("automorphisms are invertible");
        let failure = if self.is_certified() { None } else { find_failure(&self.algebra, &inv) };
        AutMap { matrix: inv, algebra: Arc::clone(&self.algebra), failure }
    }

    /// g·self·g⁻¹.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.compose(self).compose(&g.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity(self.field())
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// ker(M − 1).
    pub fn fixed_space(&self) -> Vec<Elem<F::Elem>> {
        let f = self.field();
        self.matrix.sub(f, &Matrix::identity(f, self.matrix.rows())).kernel(f)
    }

    pub fn fixes(&self, x: &[F::Elem]) -> bool {
        self.apply(x) == x
    }

    /// Redundant sampled check N(Mx) = N(x); returns the number of failures.
    pub fn norm_failures<R: Rng + ?Sized>(&self, samples: usize, rng: &mut R) -> usize {
        let a = &self.algebra;
        (0..samples)
            .filter(|_| {
                let x = a.random(rng);
                a.norm(&self.apply(&x)) != a.norm(&x)
            })
            .count()
    }

    /// Row-major text, rows separated by `;`.
    pub fn format(&self) -> String {
        self.matrix.format(self.field())
    }
}

/// A quadratic subalgebra k[γ] ⊂ 𝔆 with γ² = c·1 and tr γ = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadSubalgebra<F: GroundField> {
    pub gamma: Elem<F::Elem>,
    pub c: F::Elem,
}

impl<F: GroundField> QuadSubalgebra<F> {
    pub fn new(alg: &Algebra<F>, gamma: Elem<F::Elem>) -> Result<Self, Error> {
        let f = alg.field();
        if !f.is_zero(&alg.trace(&gamma)) {
            return Err(Error::Precondition("gamma must have trace zero".into()));
        }
        let c = f.neg(&alg.norm(&gamma));
        if f.is_zero(&c) {
            return Err(Error::Precondition("k[gamma] is degenerate".into()));
        }
        debug_assert_eq!(alg.mul(&gamma, &gamma), alg.scale(&c, &alg.one()));
        Ok(QuadSubalgebra { gamma, c })
    }

    /// The diagonal {(α,0;0,β)} of the Zorn model, γ = (1,0;0,−1).
    pub fn zorn_diagonal(alg: &Algebra<F>) -> Self {
        let f = alg.field();
        let mut gamma = alg.zero();
        gamma[0] = f.one();
        gamma[7] = f.neg(&f.one());
        Self::new(alg, gamma).expect("diagonal is a split quadratic subalgebra")
    }

    pub fn is_split(&self, f: &F) -> bool {
        f.is_square(&self.c)
    }

    pub fn basis(&self, alg: &Algebra<F>) -> [Elem<F::Elem>; 2] {
        [alg.one(), self.gamma.clone()]
    }

    /// Whether x lies in span(1, γ).
    pub fn contains(&self, alg: &Algebra<F>, x: &[F::Elem]) -> bool {
        let f = alg.field();
        let cols = vec![alg.one(), self.gamma.clone(), x.to_vec()];
        Matrix::from_cols(&cols).rank(f) == 2
    }

    /// Whether x is orthogonal to 1 and γ.
    pub fn is_orthogonal(&self, alg: &Algebra<F>, x: &[F::Elem]) -> bool {
        let f = alg.field();
        f.is_zero(&alg.bilinear_norm(x, &alg.one()))
            && f.is_zero(&alg.bilinear_norm(x, &self.gamma))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::models::zorn;
    use crate::field::PrimeField;

    #[test]
    fn identity_certifies_and_minus_identity_does_not() {
        let f = PrimeField::new(7).unwrap();
        let z = Arc::new(zorn(f));
        let id = certify_automorphism(&z, Matrix::identity(&f, 8));
        assert!(id.is_certified());
        let minus = Matrix::identity(&f, 8).scale(&f, &6);
        let m = certify_automorphism(&z, minus);
        assert_eq!(m.failure(), Some(&CertFailure::MovesOne));
    }

    #[test]
    fn coordinate_swap_is_not_multiplicative() {
        let f = PrimeField::new(5).unwrap();
        let z = Arc::new(zorn(f));
        let mut m = Matrix::identity(&f, 8);
        m[(1, 1)] = 0;
        m[(1, 2)] = 1;
        m[(2, 2)] = 0;
        m[(2, 1)] = 1;
        let a = certify_automorphism(&z, m);
        assert!(matches!(a.failure(), Some(CertFailure::NotMultiplicative { .. })));
    }
}
