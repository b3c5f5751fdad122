//! The two ambient settings G(𝔆, L) = G(𝔆/L) ⋊ ⟨ρ⟩: L split with
//! G(𝔆/L) ≅ SL(3), and L a field with G(𝔆/L) ≅ SU(3).

use std::sync::Arc;

use crate::automorphism::{
    build_rho, in_su, sl3_embed, su_embed, AutMap, QuadSubalgebra, UnitaryFrame,
};
use crate::composition::models::{octonion_from_hermitian, zorn, HermitianSpace3};
use crate::composition::peirce::peirce_frame;
use crate::composition::{Algebra, PeirceFrame};
use crate::field::{GroundField, LElem, QuadraticEtale};
use crate::linalg::Matrix;
use crate::Error;

/// The Zorn algebra with its diagonal L, the Peirce frame of
/// e = (0, 0; 0, 1), and the coordinate swap ρ.
#[derive(Clone, Debug)]
pub struct SplitSetting<F: GroundField> {
    pub algebra: Arc<Algebra<F>>,
    pub frame: PeirceFrame<F>,
    pub sub: QuadSubalgebra<F>,
    pub rho: AutMap<F>,
}

impl<F: GroundField> SplitSetting<F> {
    pub fn zorn(k: F) -> Result<Self, Error> {
        let algebra = Arc::new(zorn(k.clone()));
        let mut e = algebra.zero();
        e[7] = k.one();
        let frame = peirce_frame(&algebra, &e)?;
        let sub = QuadSubalgebra::zorn_diagonal(&algebra);
        let (mut a, mut b) = (algebra.zero(), algebra.zero());
        a[1] = k.one();
        a[4] = k.one();
        b[2] = k.one();
        b[5] = k.one();
        let rho = build_rho(&algebra, &sub, &a, &b)?;
        Ok(SplitSetting { algebra, frame, sub, rho })
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn embed(&self, a: &Matrix<F::Elem>) -> Result<AutMap<F>, Error> {
        sl3_embed(&self.algebra, &self.frame, a)
    }

    /// The 3×3 matrix A with t = sl3_embed(A).
    pub fn block(&self, t: &AutMap<F>) -> Result<Matrix<F::Elem>, Error> {
        let k = self.field();
        let m = self.frame.from_algebra.mul(k, t.matrix()).mul(k, &self.frame.to_algebra);
        let a = Matrix::from_fn(3, 3, |i, j| m[(1 + i, 1 + j)].clone());
        if self.embed(&a).ok().as_ref() != Some(t) {
            return Err(Error::Precondition("automorphism is not in the SL(3) image".into()));
        }
        Ok(a)
    }

    /// ι₁ = sl3_embed(S₁)·ρ and ι₂ = sl3_embed(S₂⁻¹)·ρ for A = S₁S₂, verified
    /// to be involutions with ι₁ι₂ = sl3_embed(A).
    pub fn two_involutions(
        &self,
        s1: &Matrix<F::Elem>,
        s2: &Matrix<F::Elem>,
    ) -> Result<(AutMap<F>, AutMap<F>), Error> {
        let k = self.field();
        if !s1.is_symmetric() || !s2.is_symmetric() {
            return Err(Error::Precondition("factors must be symmetric".into()));
        }
        let s2inv = s2
            .inverse(k)
            .ok_or_else(|| Error::Precondition("S2 must be invertible".into()))?;
        let i1 = self.embed(s1)?.compose(&self.rho);
        let i2 = self.embed(&s2inv)?.compose(&self.rho);
        let t = self.embed(&s1.mul(k, s2))?;
        verify_pair(&i1, &i2, &t)?;
        Ok((i1, i2))
    }
}

/// The hermitian model L ⊕ V of a rank 3 hermitian space whose
/// discriminant has a square root ψ in k, with ρ acting as σ on every
/// L-coordinate.
#[derive(Clone, Debug)]
pub struct UnitarySetting<F: GroundField> {
    pub algebra: Arc<Algebra<F>>,
    pub frame: UnitaryFrame<F>,
    pub rho: AutMap<F>,
}

impl<F: GroundField> UnitarySetting<F> {
    pub fn hermitian(space: &HermitianSpace3<F>) -> Result<Self, Error> {
        let k = space.l().base();
        let psi = k.sqrt(&space.det()).ok_or_else(|| {
            Error::Precondition("the unitary setting needs det H to be a square in k".into())
        })?;
        let algebra = Arc::new(octonion_from_hermitian(space, Some(space.l().embed(&psi)))?);
        let frame = UnitaryFrame::hermitian_model(&algebra)?;
        let rho = build_rho(&algebra, &frame.sub, &frame.f[0], &frame.f[1])?;
        Ok(UnitarySetting { algebra, frame, rho })
    }

    pub fn l(&self) -> &QuadraticEtale<F> {
        &self.frame.l
    }

    /// H = diag(h(fᵢ, fᵢ)) for the form used by su_embed.
    pub fn gram(&self) -> &[F::Elem; 3] {
        &self.frame.gram
    }

    pub fn contains(&self, a: &Matrix<LElem<F::Elem>>) -> bool {
        in_su(self.l(), self.gram(), a)
    }

    pub fn embed(&self, a: &Matrix<LElem<F::Elem>>) -> Result<AutMap<F>, Error> {
        su_embed(&self.algebra, &self.frame, a)
    }

    /// The 3×3 matrix A over L with t = su_embed(A).
    pub fn block(&self, t: &AutMap<F>) -> Result<Matrix<LElem<F::Elem>>, Error> {
        let k = self.l().base();
        let m = self.frame.from_algebra.mul(k, t.matrix()).mul(k, &self.frame.to_algebra);
        let a = Matrix::from_fn(3, 3, |i, j| {
            LElem::new(m[(2 + 2 * i, 2 + 2 * j)].clone(), m[(3 + 2 * i, 2 + 2 * j)].clone())
        });
        if self.embed(&a).ok().as_ref() != Some(t) {
            return Err(Error::Precondition("automorphism is not in the SU(3) image".into()));
        }
        Ok(a)
    }

    /// ι₁ = su_embed(A₁)·ρ and ι₂ = su_embed(Ā₂)·ρ for A = A₁A₂ with
    /// Āᵢ·Aᵢ = I, verified to be involutions with ι₁ι₂ = su_embed(A).
    pub fn two_involutions(
        &self,
        a1: &Matrix<LElem<F::Elem>>,
        a2: &Matrix<LElem<F::Elem>>,
    ) -> Result<(AutMap<F>, AutMap<F>), Error> {
        let l = self.l();
        let a2bar = a2.map(|x| l.sigma(x));
        let i1 = self.embed(a1)?.compose(&self.rho);
        let i2 = self.embed(&a2bar)?.compose(&self.rho);
        let t = self.embed(&a1.mul(l, a2))?;
        verify_pair(&i1, &i2, &t)?;
        Ok((i1, i2))
    }
}

/// The group an automorphism is taken from.
#[derive(Clone, Copy, Debug)]
pub enum Ambient<'a, F: GroundField> {
    Split(&'a SplitSetting<F>),
    Unitary(&'a UnitarySetting<F>),
}

fn verify_pair<F: GroundField>(i1: &AutMap<F>, i2: &AutMap<F>, t: &AutMap<F>) -> Result<(), Error> {
    if !i1.is_involution() || !i2.is_involution() {
        return Err(Error::Internal("witness factor is not an involution".into()));
    }
    if &i1.compose(i2) != t {
        return Err(Error::Internal("involution product differs from t".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn split_block_round_trip() {
        let f = PrimeField::new(7).unwrap();
        let s = SplitSetting::zorn(f).unwrap();
        let a = Matrix::from_rows(vec![vec![0, 0, 1], vec![1, 0, 3], vec![0, 1, 5]]);
        let t = s.embed(&a).unwrap();
        assert_eq!(s.block(&t).unwrap(), a);
        assert!(s.block(&s.rho).is_err());
    }

    #[test]
    fn rho_conjugates_su_to_the_conjugate_matrix() {
        let f = PrimeField::new(5).unwrap();
        let l = QuadraticEtale::finite_extension(f).unwrap();
        let space = HermitianSpace3::new(l.clone(), [1, 1, 1]).unwrap();
        let s = UnitarySetting::hermitian(&space).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let a = super::super::random_su(&l, s.gram(), &mut rng);
            let t = s.embed(&a).unwrap();
            let abar = a.map(|x| l.sigma(x));
            assert_eq!(s.rho.compose(&t).compose(&s.rho), s.embed(&abar).unwrap());
            assert_eq!(s.block(&t).unwrap(), a);
        }
    }
}
