//! The subgroups SL(3) and SU(3) of G(𝔆/L), and the involution ρ with
//! G(𝔆, L) = G(𝔆/L) ⋊ ⟨ρ⟩.

use std::sync::Arc;

use super::{AutMap, QuadSubalgebra};
use crate::composition::{Algebra, Elem, Model, PeirceFrame};
use crate::field::{Field, GroundField, LElem, QuadraticEtale};
use crate::linalg::Matrix;
use crate::Error;

pub fn in_sl3<F: Field>(f: &F, a: &Matrix<F::Elem>) -> bool {
    a.rows() == 3 && a.cols() == 3 && f.is_one(&a.det3(f))
}

/// det A = 1 and ᵗA·H·Ā = H for H = diag(h).
pub fn in_su<F: GroundField>(
    l: &QuadraticEtale<F>,
    h: &[F::Elem; 3],
    a: &Matrix<LElem<F::Elem>>,
) -> bool {
    if a.rows() != 3 || a.cols() != 3 || !l.is_one(&a.det3(l)) {
        return false;
    }
    let hm = Matrix::diagonal(l, &h.clone().map(|x| l.embed(&x)));
    let abar = a.map(|x| l.sigma(x));
    a.transpose().mul(l, &hm).mul(l, &abar) == hm
}

fn conjugate_block<F: GroundField>(
    alg: &Arc<Algebra<F>>,
    p: &Matrix<F::Elem>,
    pinv: &Matrix<F::Elem>,
    block: &Matrix<F::Elem>,
) -> Result<AutMap<F>, Error> {
    let f = alg.field();
    let m = if p.is_identity(f) { block.clone() } else { p.mul(f, block).mul(f, pinv) };
    AutMap::new(alg, m).map_err(|e| Error::Internal(format!("embedding did not certify: {e}")))
}

/// (α, v; w, β) ↦ (α, Av; ᵗA⁻¹w, β) in the coordinates of a Peirce frame.
pub fn sl3_embed<F: GroundField>(
    alg: &Arc<Algebra<F>>,
    frame: &PeirceFrame<F>,
    a: &Matrix<F::Elem>,
) -> Result<AutMap<F>, Error> {
    let f = alg.field();
    if !in_sl3(f, a) {
        return Err(Error::Precondition("sl3_embed needs a 3×3 matrix of determinant 1".into()));
    }
    let inv_t = a.inverse(f).expect("det 1").transpose();
    let one = Matrix::identity(f, 1);
    let block = Matrix::direct_sum(f, &[&one, a, &inv_t, &one]);
    conjugate_block(alg, &frame.to_algebra, &frame.from_algebra, &block)
}

/// An h-orthogonal L-basis f₁, f₂, f₃ of L^⊥ for a quadratic field L = k[γ] ⊂ 𝔆,
/// where h(x, y) = N(x, y) + γ⁻¹N(γx, y) and L acts by left multiplication.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryFrame<F: GroundField> {
    pub l: QuadraticEtale<F>,
    pub sub: QuadSubalgebra<F>,
    pub f: [Elem<F::Elem>; 3],
    /// h(fᵢ, fᵢ), which lie in k.
    pub gram: [F::Elem; 3],
    /// Columns 1, γ, f₁, γf₁, f₂, γf₂, f₃, γf₃.
    pub to_algebra: Matrix<F::Elem>,
    pub from_algebra: Matrix<F::Elem>,
}

impl<F: GroundField> UnitaryFrame<F> {
    pub fn new(
        alg: &Algebra<F>,
        sub: QuadSubalgebra<F>,
        f: [Elem<F::Elem>; 3],
    ) -> Result<Self, Error> {
        let k = alg.field();
        let l = QuadraticEtale::field(k.clone(), sub.c.clone())
            .map_err(|_| Error::Precondition("su_embed needs L to be a field".into()))?;
        for v in &f {
            if !sub.is_orthogonal(alg, v) {
                return Err(Error::Precondition("frame vector is not orthogonal to L".into()));
            }
        }
        let h = |x: &[F::Elem], y: &[F::Elem]| hermitian_pairing(alg, &sub, x, y);
        let mut gram = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let v = h(&f[i], &f[j]);
                if i != j && !l.is_zero(&v) {
                    return Err(Error::Precondition(format!("frame vectors {i}, {j} are not h-orthogonal")));
                }
                if i == j {
                    let d = l.to_base(&v).filter(|d| !k.is_zero(d)).ok_or_else(|| {
                        Error::Precondition(format!("frame vector {i} is h-isotropic"))
                    })?;
                    gram.push(d);
                }
            }
        }
        let mut cols = vec![alg.one(), sub.gamma.clone()];
        for v in &f {
            cols.push(v.clone());
            cols.push(alg.mul(&sub.gamma, v));
        }
        let p = Matrix::from_cols(&cols);
        let pinv = p
            .inverse(k)
            .ok_or_else(|| Error::Precondition("frame does not span the algebra".into()))?;
        Ok(UnitaryFrame {
            l,
            sub,
            f,
            gram: [gram[0].clone(), gram[1].clone(), gram[2].clone()],
            to_algebra: p,
            from_algebra: pinv,
        })
    }

    /// The coordinate frame of the hermitian model, where the frame map is
    /// the identity.
    pub fn hermitian_model(alg: &Algebra<F>) -> Result<Self, Error> {
        if alg.model() != Model::Hermitian {
            return Err(Error::Precondition("not a hermitian-model algebra".into()));
        }
        let sub = QuadSubalgebra::new(alg, alg.basis(1))?;
        Self::new(alg, sub, [alg.basis(2), alg.basis(4), alg.basis(6)])
    }

    /// f₁ = a, f₂ = b, f₃ = ab.
    pub fn from_doubling(
        alg: &Algebra<F>,
        sub: QuadSubalgebra<F>,
        a: &[F::Elem],
        b: &[F::Elem],
    ) -> Result<Self, Error> {
        let ab = alg.mul(a, b);
        Self::new(alg, sub, [a.to_vec(), b.to_vec(), ab])
    }

    pub fn h_matrix(&self) -> Matrix<LElem<F::Elem>> {
        Matrix::diagonal(&self.l, &self.gram.clone().map(|x| self.l.embed(&x)))
    }

    /// Writes an L-linear map of L^⊥ (in the basis fᵢ) as a k-linear map of
    /// the coordinates (x₀, x₁) per fᵢ.
    fn realify(&self, a: &Matrix<LElem<F::Elem>>) -> Matrix<F::Elem> {
        let k = self.l.base();
        let c = self.sub.c.clone();
        Matrix::from_fn(6, 6, |r, s| {
            let e = &a[(r / 2, s / 2)];
            match (r % 2, s % 2) {
                (0, 0) | (1, 1) => e.x0.clone(),
                (0, 1) => k.mul(&c, &e.x1),
                _ => e.x1.clone(),
            }
        })
    }
}

/// h(x, y) = N(x, y) + γ⁻¹N(γx, y), as an element x₀ + x₁γ of L.
pub fn hermitian_pairing<F: GroundField>(
    alg: &Algebra<F>,
    sub: &QuadSubalgebra<F>,
    x: &[F::Elem],
    y: &[F::Elem],
) -> LElem<F::Elem> {
    let k = alg.field();
    let n = alg.bilinear_norm(x, y);
    let ng = alg.bilinear_norm(&alg.mul(&sub.gamma, x), y);
    LElem::new(n, k.div(&ng, &sub.c).expect("c is nonzero"))
}

/// The automorphism fixing L pointwise and acting on L^⊥ by A ∈ SU(H).
pub fn su_embed<F: GroundField>(
    alg: &Arc<Algebra<F>>,
    frame: &UnitaryFrame<F>,
    a: &Matrix<LElem<F::Elem>>,
) -> Result<AutMap<F>, Error> {
    if !in_su(&frame.l, &frame.gram, a) {
        return Err(Error::Precondition("matrix is not in SU(H)".into()));
    }
    let k = alg.field();
    let block = Matrix::direct_sum(k, &[&Matrix::identity(k, 2), &frame.realify(a)]);
    conjugate_block(alg, &frame.to_algebra, &frame.from_algebra, &block)
}

/// ρ(x + yb) = ρ₁(x) + ρ₁(y)b with ρ₁(x + ya) = σ(x) + σ(y)a.
///
/// Requires a ⊥ L with N(a) ≠ 0 and b ⊥ L ⊕ La with N(b) ≠ 0.
pub fn build_rho<F: GroundField>(
    alg: &Arc<Algebra<F>>,
    sub: &QuadSubalgebra<F>,
    a: &[F::Elem],
    b: &[F::Elem],
) -> Result<AutMap<F>, Error> {
    let k = alg.field();
    let ga = alg.mul(&sub.gamma, a);
    if !sub.is_orthogonal(alg, a) || k.is_zero(&alg.norm(a)) {
        return Err(Error::Precondition("a must be orthogonal to L with N(a) != 0".into()));
    }
    let b_ok = sub.is_orthogonal(alg, b)
        && k.is_zero(&alg.bilinear_norm(b, a))
        && k.is_zero(&alg.bilinear_norm(b, &ga));
    if !b_ok || k.is_zero(&alg.norm(b)) {
        return Err(Error::Precondition("b must be orthogonal to L + La with N(b) != 0".into()));
    }
    let cols = vec![
        alg.one(),
        sub.gamma.clone(),
        a.to_vec(),
        ga.clone(),
        b.to_vec(),
        alg.mul(&sub.gamma, b),
        alg.mul(a, b),
        alg.mul(&ga, b),
    ];
    let p = Matrix::from_cols(&cols);
    let pinv = p.inverse(k).ok_or_else(|| Error::Internal("rho frame is dependent".into()))?;
    let signs: Vec<F::Elem> =
        (0..8).map(|i| if i % 2 == 0 { k.one() } else { k.neg(&k.one()) }).collect();
    let d = Matrix::diagonal(k, &signs);
    conjugate_block(alg, &p, &pinv, &d)
}

/// Writes h = g·ρ^ε with g fixing L pointwise.
pub fn semidirect_split<F: GroundField>(
    h: &AutMap<F>,
    rho: &AutMap<F>,
    sub: &QuadSubalgebra<F>,
) -> Result<(AutMap<F>, u8), Error> {
    let alg = h.algebra();
    let k = alg.field();
    let hg = h.apply(&sub.gamma);
    let (g, eps) = if hg == sub.gamma {
        (h.clone(), 0)
    } else if hg == alg.scale(&k.neg(&k.one()), &sub.gamma) {
        (h.compose(rho), 1)
    } else {
        return Err(Error::Precondition("h does not map L to L".into()));
    };
    if !g.fixes(&sub.gamma) {
        return Err(Error::Internal("rho does not act as sigma on L".into()));
    }
    Ok((g, eps))
}

/// ι_S = sl3_embed(S)·ρ for symmetric S of determinant 1; an involution
/// because (sl3_embed(P)ρ)(sl3_embed(Q)ρ) = sl3_embed(P·ᵗQ⁻¹).
pub fn involution_from_symmetric<F: GroundField>(
    alg: &Arc<Algebra<F>>,
    frame: &PeirceFrame<F>,
    rho: &AutMap<F>,
    s: &Matrix<F::Elem>,
) -> Result<AutMap<F>, Error> {
    if !s.is_symmetric() {
        return Err(Error::Precondition("S must be symmetric".into()));
    }
    Ok(sl3_embed(alg, frame, s)?.compose(rho))
}
