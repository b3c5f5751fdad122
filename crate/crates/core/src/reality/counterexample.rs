//! The non-real elements over finite fields: B = D·A·D⁻¹ with A having a
//! single eigenvalue ω (a primitive cube root of unity) and D = diag(b, 1, 1)
//! for b with X³ − b² irreducible.

use super::{is_cube, is_regular, triple_root, SplitSetting, UnitarySetting};
use crate::automorphism::{in_su, AutMap};
use crate::field::{first_irreducible_cubic, CubicAlgebra, Field, GroundField, LElem, PrimeField, QuadraticEtale};
use crate::linalg::Matrix;
use crate::tori::trace_hermitian_space;
use crate::Error;

#[derive(Clone, Debug)]
pub struct Sl3Counterexample {
    pub setting: SplitSetting<PrimeField>,
    pub omega: u64,
    pub b: u64,
    /// [[ω, −1, 0], [0, ω, 1], [0, 0, ω]]
    pub a: Matrix<u64>,
    pub d: Matrix<u64>,
    /// D·A·D⁻¹
    pub b_matrix: Matrix<u64>,
    pub t: AutMap<PrimeField>,
}

fn base_field(q: u64) -> Result<PrimeField, Error> {
    let k = PrimeField::new(q)?;
    if q == 3 {
        return Err(Error::Precondition("characteristic 3 is excluded".into()));
    }
    Ok(k)
}

fn fixed_is_exactly_l(t: &AutMap<PrimeField>) -> Result<(), Error> {
    match t.fixed_space().len() {
        2 => Ok(()),
        n => Err(Error::Internal(format!("fixed subalgebra has dimension {n}, expected 2"))),
    }
}

/// The split (SL(3)) counterexample over 𝔽_q, q ≡ 1 mod 3. ω and b are
/// the least admissible residues.
pub fn build_counterexample_sl3(q: u64) -> Result<Sl3Counterexample, Error> {
    let k = base_field(q)?;
    if q % 3 != 1 {
        return Err(Error::Precondition(format!(
            "q = {q} is not 1 mod 3, so F_q has no primitive cube root of unity"
        )));
    }
    let omega = (2..q).find(|w| k.pow(w, 3) == 1).expect("q ≡ 1 mod 3");
    let b = (1..q)
        .find(|b| !is_cube(&k, &k.square(b)))
        .ok_or_else(|| Error::Precondition(format!("every square is a cube mod {q}")))?;
    let a = Matrix::from_rows(vec![
        vec![omega, k.reduce(-1), 0],
        vec![0, omega, 1],
        vec![0, 0, omega],
    ]);
    let d = Matrix::diagonal(&k, &[b, 1, 1]);
    let b_matrix = d.mul(&k, &a).mul(&k, &d.inverse(&k).expect("b is nonzero"));
    let setting = SplitSetting::zorn(k)?;
    let t = setting.embed(&b_matrix)?;
    fixed_is_exactly_l(&t)?;
    Ok(Sl3Counterexample { setting, omega, b, a, d, b_matrix, t })
}

type LE = LElem<u64>;

#[derive(Clone, Debug)]
pub struct SuCounterexample {
    pub setting: UnitarySetting<PrimeField>,
    /// Low coefficients of the irreducible cubic defining F over k.
    pub cubic: [u64; 3],
    pub omega: LE,
    pub b: LE,
    pub alpha: LE,
    pub a: Matrix<LE>,
    pub d: Matrix<LE>,
    pub b_matrix: Matrix<LE>,
    pub t: AutMap<PrimeField>,
}

/// The unitary counterexample over 𝔽_q with q ≡ 2 mod 3 and 2 a square
/// mod q, built in L ⊕ E for the trace hermitian form of E = F·L. ω, b, α
/// and the cubic are the first admissible values in enumeration order.
pub fn build_counterexample_su(q: u64) -> Result<SuCounterexample, Error> {
    let k = base_field(q)?;
    if q % 3 != 2 {
        return Err(Error::Precondition(format!("q = {q} is not 2 mod 3")));
    }
    if !k.is_square(&2) {
        return Err(Error::Precondition(format!("2 is not a square mod {q}")));
    }
    let l = QuadraticEtale::finite_extension(k)?;
    let n = q * q;
    let find = |pred: &dyn Fn(&LE) -> bool| (0..n).map(|i| l.element_at(i)).find(|x| pred(x));
    let omega = find(&|w| l.is_zero(&l.add(&l.add(&l.square(w), w), &l.one())))
        .ok_or_else(|| Error::Internal("L has no primitive cube root of unity".into()))?;
    let b = find(&|b| l.norm(b) == 1 && !l.is_cube(b).expect("finite"))
        .ok_or_else(|| Error::Precondition(format!("no norm-one non-cube in F_{}", n)))?;
    let alpha = find(&|a| l.norm(a) == k.reduce(-1)).expect("norms are surjective");

    let e = |x: i64| l.from_i64(x);
    let quarter = l.inv(&e(4)).expect("odd characteristic");
    let half = l.inv(&e(2)).expect("odd characteristic");
    let w2 = l.square(&omega);
    let abar = l.sigma(&alpha);
    let a = Matrix::from_rows(vec![
        vec![l.add(&omega, &quarter), half.clone(), l.neg(&l.mul(&quarter, &alpha))],
        vec![l.neg(&l.mul(&half, &w2)), omega.clone(), l.mul(&half, &l.mul(&alpha, &w2))],
        vec![l.neg(&l.mul(&quarter, &abar)), l.neg(&l.mul(&half, &abar)), l.sub(&omega, &quarter)],
    ]);
    if !in_su(&l, &[1, 1, 1], &a) {
        return Err(Error::Internal("displayed matrix is not in SU(3)".into()));
    }
    let chi = a.char_poly3(&l);
    if triple_root(&l, &chi) != Some(omega.clone()) || !is_regular(&l, &a) {
        return Err(Error::Internal("displayed matrix does not have minimal polynomial (X − ω)³".into()));
    }

    let cubic = first_irreducible_cubic(&k).expect("irreducible cubics exist");
    let ea = CubicAlgebra::new(l.clone(), cubic);
    let th = trace_hermitian_space(&ea)?;
    if th.space.gram() != &[1, 1, 1] {
        return Err(Error::Internal("trace hermitian form did not normalize to <1,1,1>".into()));
    }
    let setting = UnitarySetting::hermitian(&th.space)?;
    let d = Matrix::diagonal(&l, &[b.clone(), l.one(), l.one()]);
    let b_matrix = d.mul(&l, &a).mul(&l, &d.inverse(&l).expect("b is a unit"));
    if !setting.contains(&b_matrix) {
        return Err(Error::Internal("B is not in SU(H)".into()));
    }
    let t = setting.embed(&b_matrix)?;
    fixed_is_exactly_l(&t)?;
    Ok(SuCounterexample { setting, cubic, omega, b, alpha, a, d, b_matrix, t })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl3_parameters_at_7_and_13() {
        let c = build_counterexample_sl3(7).unwrap();
        assert_eq!((c.omega, c.b), (2, 2));
        let c = build_counterexample_sl3(13).unwrap();
        assert_eq!(c.omega, 3);
        assert!(build_counterexample_sl3(5).is_err());
    }

    #[test]
    fn su_inadmissible_fields() {
        // 2 is not a square mod 5; 7 is 1 mod 3
        assert!(build_counterexample_su(5).is_err());
        assert!(build_counterexample_su(7).is_err());
    }
}
