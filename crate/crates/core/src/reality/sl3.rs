//! Reality in G(𝔆/L) ≅ SL(3) for split L.
//!
//! t = sl3_embed(A) is real iff A is conjugate to ᵗA in SL(3), i.e. iff
//! some T with det T = 1 solves T·A = ᵗA·T. A symmetric such T gives
//! A = T⁻¹·(TA), a product of two symmetric matrices of determinant 1.

use super::{
    case_from_char_poly, intertwiners, real_by_wonenburger, is_cube, is_regular, is_semisimple, search_span,
    symmetric_intertwiners, least_in_class, triple_root, Obstruction, RealityCase, RealityReport, Search, Verdict,
    WitnessKind, WitnessRecord,
};
use crate::automorphism::in_sl3;
use crate::field::{poly, GroundField};
use crate::linalg::Matrix;
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
pub struct Sl3Reality<F: GroundField> {
    pub case: RealityCase,
    pub verdict: Verdict,
    /// Monic, low degree first.
    pub char_poly: Vec<F::Elem>,
    pub regular: bool,
    /// T with det T = 1 and T·A·T⁻¹ = ᵗA.
    pub conjugator: Option<Matrix<F::Elem>>,
    /// (S₁, S₂) with A = S₁S₂, both symmetric of determinant 1.
    pub decomposition: Option<(Matrix<F::Elem>, Matrix<F::Elem>)>,
    pub obstruction: Option<Obstruction>,
    pub note: Option<String>,
}

impl<F: GroundField> Sl3Reality<F> {
    pub fn report(&self, k: &F) -> RealityReport {
        let witness = if let Some((s1, s2)) = &self.decomposition {
            Some(WitnessRecord { kind: WitnessKind::SymmetricPair, matrices: vec![s1.format(k), s2.format(k)] })
        } else {
            self.conjugator
                .as_ref()
                .map(|t| WitnessRecord { kind: WitnessKind::Conjugator, matrices: vec![t.format(k)] })
        };
        RealityReport {
            case: self.case.clone(),
            char_poly: poly::format(k, &self.char_poly),
            verdict: self.verdict,
            witness,
            obstruction: self.obstruction.clone(),
            note: self.note.clone(),
        }
    }
}

fn decompose<F: GroundField>(k: &F, a: &Matrix<F::Elem>, t: &Matrix<F::Elem>) -> Result<(Matrix<F::Elem>, Matrix<F::Elem>), Error> {
    let s1 = t.inverse(k).ok_or_else(|| Error::Internal("conjugator is singular".into()))?;
    let s2 = t.mul(k, a);
    let ok = s1.is_symmetric()
        && s2.is_symmetric()
        && k.is_one(&s1.det3(k))
        && k.is_one(&s2.det3(k))
        && s1.mul(k, &s2) == *a;
    if !ok {
        return Err(Error::Internal("symmetric decomposition failed to verify".into()));
    }
    Ok((s1, s2))
}

/// T = P⁻ᵀ·diag(det(P)², 1, 1)·P⁻¹ for a diagonalizing P; symmetric,
/// determinant 1, and T·A = ᵗA·T because P⁻¹AP is diagonal.
fn diagonal_conjugator<F: GroundField>(k: &F, a: &Matrix<F::Elem>, chi: &[F::Elem]) -> Option<Matrix<F::Elem>> {
    let roots = poly::roots(k, chi)?;
    let mut cols = Vec::new();
    for r in roots {
        let shifted = a.sub(k, &Matrix::identity(k, 3).scale(k, &r));
        cols.extend(shifted.kernel(k));
    }
    if cols.len() != 3 {
        return None;
    }
    let p = Matrix::from_cols(&cols);
    let pinv = p.inverse(k)?;
    let d = p.det3(k);
    let mid = Matrix::diagonal(k, &[k.square(&d), k.one(), k.one()]);
    Some(pinv.transpose().mul(k, &mid).mul(k, &pinv))
}

/// Decides whether sl3_embed(A) is real, with a symmetric witness when it
/// is. Over infinite fields only scalar and diagonalizable inputs are
/// decided; everything else is reported unknown. When A has eigenvalue 1
/// and no witness exists inside G(𝔆, L), the verdict is real without a
/// witness (see the note on the report).
pub fn reality_sl3<F: GroundField>(k: &F, a: &Matrix<F::Elem>, budget: u64) -> Result<Sl3Reality<F>, Error> {
    let mut out = restricted_sl3(k, a, budget)?;
    if out.verdict != Verdict::Real {
        if let Some(note) = real_by_wonenburger(&out.case) {
            out.verdict = Verdict::Real;
            out.obstruction = None;
            out.note = Some(note.into());
        }
    }
    Ok(out)
}

/// The decision inside G(𝔆, L) = SL(3) ⋊ ⟨ρ⟩.
fn restricted_sl3<F: GroundField>(k: &F, a: &Matrix<F::Elem>, budget: u64) -> Result<Sl3Reality<F>, Error> {
    if !in_sl3(k, a) {
        return Err(Error::Precondition("reality_sl3 needs a 3×3 matrix of determinant 1".into()));
    }
    let chi = a.char_poly3(k);
    let case = case_from_char_poly(k, &chi, true)?;
    let regular = is_regular(k, a);
    let mut out = Sl3Reality {
        case,
        verdict: Verdict::Unknown,
        char_poly: chi.clone(),
        regular,
        conjugator: None,
        decomposition: None,
        obstruction: None,
        note: None,
    };
    let finish = |mut out: Sl3Reality<F>, t: Matrix<F::Elem>| -> Result<Sl3Reality<F>, Error> {
        out.decomposition = Some(decompose(k, a, &t)?);
        out.conjugator = Some(t);
        out.verdict = Verdict::Real;
        Ok(out)
    };
    let off_diagonal_zero = (0..3).all(|i| (0..3).all(|j| i == j || k.is_zero(&a[(i, j)])));
    if off_diagonal_zero && a[(0, 0)] == a[(1, 1)] && a[(1, 1)] == a[(2, 2)] {
        return finish(out, Matrix::identity(k, 3));
    }
    if !regular && is_semisimple(k, a) {
        if let Some(t) = diagonal_conjugator(k, a, &chi) {
            return finish(out, t);
        }
    }
    if !k.is_finite() {
        out.note = Some("norm images over infinite fields are not decided".into());
        return Ok(out);
    }
    let sym = symmetric_intertwiners(k, a);
    let det_one = |t: &crate::linalg::Matrix<F::Elem>| k.is_one(&t.det3(k));
    if regular {
        // every solution is symmetric, and the solution space is T₀·k[A]
        let t0 = match search_span(k, &sym, budget, 0, |t| !k.is_zero(&t.det3(k))) {
            Search::Found(t) => t,
            _ => return Err(Error::Internal("no invertible solution of T·A = ᵗA·T".into())),
        };
        let d0 = t0.det3(k);
        let cubes_only = triple_root(k, &chi).is_some();
        let predicted = !cubes_only || is_cube(k, &d0);
        match search_span(k, &sym, budget, 1, det_one) {
            Search::Found(t) => {
                if !predicted {
                    return Err(Error::Internal("det-1 solution contradicts the cube obstruction".into()));
                }
                finish(out, t)
            }
            Search::Exhausted => {
                if predicted {
                    return Err(Error::Internal("norm image predicts a det-1 solution but none exists".into()));
                }
                out.verdict = Verdict::NotReal;
                out.obstruction = Some(obstruction_of(k, &d0));
                Ok(out)
            }
            Search::GaveUp => {
                if cubes_only && is_cube(k, &d0) {
                    let q = k.order().expect("finite");
                    let c = (1..q).map(|i| k.element_at(i)).find(|c| k.mul(&k.square(c), c) == d0);
                    if let Some(c) = c {
                        let t = t0.scale(k, &k.inv(&c).expect("nonzero"));
                        return finish(out, t);
                    }
                }
                out.verdict = if predicted { Verdict::Real } else { Verdict::NotReal };
                if !predicted {
                    out.obstruction = Some(obstruction_of(k, &d0));
                }
                out.note = Some("verdict from the norm image; witness search exceeded the budget".into());
                Ok(out)
            }
        }
    } else {
        match search_span(k, &sym, budget, 2, det_one) {
            Search::Found(t) => return finish(out, t),
            Search::GaveUp => {
                out.note = Some("budget exhausted in the symmetric solution space".into());
                return Ok(out);
            }
            Search::Exhausted => {}
        }
        let general = intertwiners(k, a, &a.transpose());
        match search_span(k, &general, budget, 3, det_one) {
            Search::Found(t) => {
                out.verdict = Verdict::Real;
                out.conjugator = Some(t);
                out.note = Some("no symmetric solution of determinant 1".into());
            }
            Search::Exhausted => {
                out.verdict = Verdict::NotReal;
                out.obstruction = Some(Obstruction {
                    value: "no solution of determinant 1".into(),
                    excluded_class: "determinants of solutions of T·A = ᵗA·T".into(),
                    class_group_order: 0,
                });
            }
            Search::GaveUp => out.note = Some("budget exhausted in the solution space".into()),
        }
        Ok(out)
    }
}

/// det(T₀)⁻¹ must be a cube; the reported value is the least element of
/// its cube class.
fn obstruction_of<F: GroundField>(k: &F, d0: &F::Elem) -> Obstruction {
    let q = k.order().expect("finite");
    let inv = k.inv(d0).expect("T0 is invertible");
    Obstruction {
        value: k.format(&least_in_class(k, &inv, (1..q).map(|i| k.element_at(i)))),
        excluded_class: "cubes of k*".into(),
        class_group_order: 3,
    }
}

/// A = S₁S₂ with Sᵢ symmetric of determinant 1. `Ok(None)` when no such
/// pair exists; `Err(BudgetExhausted)` when the search did not finish.
pub fn symmetric_decomposition<F: GroundField>(
    k: &F,
    a: &Matrix<F::Elem>,
    budget: u64,
) -> Result<Option<(Matrix<F::Elem>, Matrix<F::Elem>)>, Error> {
    let r = restricted_sl3(k, a, budget)?;
    match (r.decomposition, r.verdict) {
        (Some(d), _) => Ok(Some(d)),
        (None, Verdict::Unknown) => Err(Error::BudgetExhausted(budget)),
        (None, Verdict::Real) if r.conjugator.is_none() => Err(Error::BudgetExhausted(budget)),
        (None, _) => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn m(rows: [[i64; 3]; 3], f: &PrimeField) -> Matrix<u64> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| f.reduce(x)).collect()).collect())
    }

    #[test]
    fn irreducible_companion_over_f5_is_real() {
        let f = PrimeField::new(5).unwrap();
        // X³ + X + 4: χ(0)=4, (1)=1, (2)=4, (3)=4, (4)=3, no roots
        let a = m([[0, 0, 1], [1, 0, -1], [0, 1, 0]], &f);
        assert!(poly::roots(&f, &a.char_poly3(&f)).unwrap().is_empty());
        let r = reality_sl3(&f, &a, 1_000_000).unwrap();
        assert_eq!(r.verdict, Verdict::Real);
        let (s1, s2) = r.decomposition.unwrap();
        assert_eq!(s1.mul(&f, &s2), a);
    }

    #[test]
    fn finitecounter_matrix_b_is_not_real() {
        let f = PrimeField::new(7).unwrap();
        // A = [[ω, −1, 0], [0, ω, 1], [0, 0, ω]] with ω = 2; B = DAD⁻¹, D = diag(2, 1, 1)
        let a = m([[2, -1, 0], [0, 2, 1], [0, 0, 2]], &f);
        let t = m([[0, 0, 1], [0, -1, 0], [1, 0, 0]], &f);
        assert_eq!(t.mul(&f, &a), a.transpose().mul(&f, &t));
        let d = m([[2, 0, 0], [0, 1, 0], [0, 0, 1]], &f);
        let b = d.mul(&f, &a).mul(&f, &d.inverse(&f).unwrap());
        let r = reality_sl3(&f, &b, 1_000_000).unwrap();
        assert_eq!(r.verdict, Verdict::NotReal);
        assert_eq!(r.obstruction.unwrap().class_group_order, 3);
        assert_eq!(symmetric_decomposition(&f, &b, 1_000_000).unwrap(), None);
        assert_eq!(reality_sl3(&f, &a, 1_000_000).unwrap().verdict, Verdict::Real);
    }

    #[test]
    fn identity_and_diagonal_inputs() {
        let f = PrimeField::new(7).unwrap();
        let r = reality_sl3(&f, &Matrix::identity(&f, 3), 10).unwrap();
        assert_eq!(r.verdict, Verdict::Real);
        assert_eq!(r.case, RealityCase::Identity);
        // diag(2, 2, 2⁻²) = diag(2, 2, 2)
        let a = m([[3, 0, 0], [0, 3, 0], [0, 0, 4]], &f);
        let r = reality_sl3(&f, &a, 10).unwrap();
        assert_eq!(r.verdict, Verdict::Real);
        assert!(!r.regular);
    }

    #[test]
    fn rejects_det_not_one() {
        let f = PrimeField::new(7).unwrap();
        assert!(reality_sl3(&f, &Matrix::identity(&f, 3).scale(&f, &3), 10).is_err());
    }
}
