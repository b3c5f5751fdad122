//! Exhaustive conjugator search in G(𝔆, L) = G(𝔆/L) ⋊ ⟨ρ⟩.
//!
//! When the fixed subalgebra of t is exactly L, every h with
//! h·t·h⁻¹ = t⁻¹ maps L to L, so h = g·ρ^ε with g ∈ G(𝔆/L). For each ε the
//! candidate matrices of g form a linear space cut out by the 3×3
//! conjugation equation; the oracle walks all of it, keeps the elements of
//! SL(3) or SU(H), lifts them to 8×8 automorphisms and tests
//! h·t = t⁻¹·h exactly. It shares no decision logic with the criteria in
//! `sl3` and `su`.

use rayon::prelude::*;

use super::{intertwiners, is_regular, Ambient, Verdict};
use crate::automorphism::AutMap;
use crate::field::{Field, GroundField};
use crate::linalg::Matrix;
use crate::Error;

#[derive(Clone, Debug)]
pub struct OracleResult<F: GroundField> {
    pub verdict: Verdict,
    /// A verified h with h·t·h⁻¹ = t⁻¹ and its coset index ε.
    pub conjugator: Option<(AutMap<F>, u8)>,
    /// Sizes of the spans walked for ε = 0 and ε = 1.
    pub candidates: [u64; 2],
    /// Candidates that passed the group membership filter.
    pub members: [u64; 2],
}

struct Sweep<E> {
    found: Option<Matrix<E>>,
    candidates: u64,
    members: u64,
}

/// Walks every Σ cᵢ·basisᵢ, returning the first that passes `member` and
/// `accept` (outer coefficient order, so the result is independent of
/// scheduling).
fn sweep<G: Field>(
    g: &G,
    basis: &[Matrix<G::Elem>],
    member: impl Fn(&Matrix<G::Elem>) -> bool + Sync,
    accept: impl Fn(&Matrix<G::Elem>) -> bool + Sync,
) -> Sweep<G::Elem> {
    let n = g.order().expect("finite field");
    if basis.is_empty() {
        return Sweep { found: None, candidates: 1, members: 0 };
    }
    let elems: Vec<G::Elem> = (0..n).map(|i| g.element_at(i)).collect();
    let multiples: Vec<Vec<Vec<G::Elem>>> = basis
        .iter()
        .map(|b| elems.iter().map(|c| b.entries().iter().map(|x| g.mul(c, x)).collect()).collect())
        .collect();
    let d = basis.len();
    let add = |a: &[G::Elem], b: &[G::Elem]| -> Vec<G::Elem> { a.iter().zip(b).map(|(x, y)| g.add(x, y)).collect() };
    let per_outer = |i0: u64| -> (Option<Matrix<G::Elem>>, u64) {
        let mut members = 0;
        let mut partial: Vec<Vec<G::Elem>> = vec![multiples[0][i0 as usize].clone()];
        let mut idx = vec![0usize; d];
        idx[0] = i0 as usize;
        // partial[j] = Σ_{i ≤ j} c_i·basis_i
        for j in 1..d {
            let next = add(&partial[j - 1], &multiples[j][0]);
            partial.push(next);
        }
        loop {
            let m = Matrix::from_rows(partial[d - 1].chunks(3).map(|r| r.to_vec()).collect());
            if member(&m) {
                members += 1;
                if accept(&m) {
                    return (Some(m), members);
                }
            }
            // odometer over coefficients 1..d, last fastest
            let mut j = d - 1;
            loop {
                if j == 0 {
                    return (None, members);
                }
                idx[j] += 1;
                if idx[j] < n as usize {
                    break;
                }
                idx[j] = 0;
                j -= 1;
            }
            for t in j..d {
                partial[t] = add(&partial[t - 1], &multiples[t][idx[t]]);
            }
        }
    };
    let results: Vec<(Option<Matrix<G::Elem>>, u64)> = (0..n).into_par_iter().map(per_outer).collect();
    let members = results.iter().map(|r| r.1).sum();
    let found = results.into_iter().find_map(|r| r.0);
    Sweep { found, candidates: n.pow(d as u32), members }
}

/// Exhaustive search for h ∈ G(𝔆, L) with h·t·h⁻¹ = t⁻¹.
///
/// Requires a finite field, ker(t − 1) = L exactly, and a regular 3×3
/// image; the identity is answered directly. Each coset is walked only if
/// its span has at most `budget` elements; otherwise the verdict is
/// unknown.
pub fn brute_force_reality_oracle<F: GroundField>(
    setting: Ambient<'_, F>,
    t: &AutMap<F>,
    budget: u64,
) -> Result<OracleResult<F>, Error> {
    let mut result = OracleResult { verdict: Verdict::NotReal, conjugator: None, candidates: [0; 2], members: [0; 2] };
    if t.is_identity() {
        result.verdict = Verdict::Real;
        result.conjugator = Some((t.clone(), 0));
        return Ok(result);
    }
    let fixed = t.fixed_space();
    if fixed.len() != 2 {
        return Err(Error::Precondition(format!(
            "fixed subalgebra has dimension {}, expected exactly L",
            fixed.len()
        )));
    }
    let tinv = t.inverse();
    let reverses = |h: &AutMap<F>| h.compose(t) == tinv.compose(h);
    match setting {
        Ambient::Split(s) => {
            let k = s.field();
            let q = k.order().ok_or_else(|| Error::Unsupported("oracle needs a finite field".into()))?;
            let a = s.block(t)?;
            if !is_regular(k, &a) {
                return Err(Error::Precondition("oracle needs a regular matrix".into()));
            }
            let ainv = a.inverse(k).expect("det 1");
            // ε = 0: P·A = A⁻¹·P ; ε = 1: P·ᵗA = A·P
            let spans = [intertwiners(k, &a, &ainv), intertwiners(k, &a.transpose(), &a)];
            for (eps, basis) in spans.iter().enumerate() {
                if q.checked_pow(basis.len() as u32).map_or(true, |n| n > budget) {
                    result.verdict = Verdict::Unknown;
                    continue;
                }
                let lift = |p: &Matrix<F::Elem>| {
                    let g = s.embed(p).expect("det 1");
                    if eps == 1 { g.compose(&s.rho) } else { g }
                };
                let sw = sweep(k, basis, |p| k.is_one(&p.det3(k)), |p| reverses(&lift(p)));
                result.candidates[eps] = sw.candidates;
                result.members[eps] = sw.members;
                if let Some(p) = sw.found {
                    result.conjugator = Some((lift(&p), eps as u8));
                    result.verdict = Verdict::Real;
                    return Ok(result);
                }
            }
        }
        Ambient::Unitary(s) => {
            let l = s.l();
            let n = l.order().ok_or_else(|| Error::Unsupported("oracle needs a finite field".into()))?;
            let a = s.block(t)?;
            if !is_regular(l, &a) {
                return Err(Error::Precondition("oracle needs a regular matrix".into()));
            }
            let ainv = a.inverse(l).expect("det 1");
            let abar = a.map(|x| l.sigma(x));
            // ε = 0: P·A = A⁻¹·P ; ε = 1: P·Ā = A⁻¹·P
            let spans = [intertwiners(l, &a, &ainv), intertwiners(l, &abar, &ainv)];
            let hm = Matrix::diagonal(l, &s.gram().clone().map(|x| l.embed(&x)));
            let member = |p: &Matrix<_>| {
                let h00 = (0..3).fold(l.zero(), |acc, i| {
                    l.add(&acc, &l.mul(&hm[(i, i)], &l.mul(&p[(i, 0)], &l.sigma(&p[(i, 0)]))))
                });
                h00 == hm[(0, 0)] && s.contains(p)
            };
            for (eps, basis) in spans.iter().enumerate() {
                if n.checked_pow(basis.len() as u32).map_or(true, |c| c > budget) {
                    result.verdict = Verdict::Unknown;
                    continue;
                }
                let lift = |p: &Matrix<_>| {
                    let g = s.embed(p).expect("member of SU(H)");
                    if eps == 1 { g.compose(&s.rho) } else { g }
                };
                let sw = sweep(l, basis, member, |p| reverses(&lift(p)));
                result.candidates[eps] = sw.candidates;
                result.members[eps] = sw.members;
                if let Some(p) = sw.found {
                    result.conjugator = Some((lift(&p), eps as u8));
                    result.verdict = Verdict::Real;
                    return Ok(result);
                }
            }
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::reality::SplitSetting;

    #[test]
    fn companion_over_f5_has_a_reversing_element() {
        let f = PrimeField::new(5).unwrap();
        let s = SplitSetting::zorn(f).unwrap();
        let a = Matrix::from_rows(vec![vec![0, 0, 1], vec![1, 0, 4], vec![0, 1, 0]]);
        let t = s.embed(&a).unwrap();
        let r = brute_force_reality_oracle(Ambient::Split(&s), &t, 1_000_000).unwrap();
        assert_eq!(r.verdict, Verdict::Real);
        let (h, _) = r.conjugator.unwrap();
        assert_eq!(h.compose(&t).compose(&h.inverse()), t.inverse());
    }

    #[test]
    fn identity_is_real_and_larger_fixed_spaces_are_rejected() {
        let f = PrimeField::new(5).unwrap();
        let s = SplitSetting::zorn(f).unwrap();
        let t = AutMap::identity(&s.algebra);
        let r = brute_force_reality_oracle(Ambient::Split(&s), &t, 10).unwrap();
        assert_eq!(r.verdict, Verdict::Real);
        let a = Matrix::from_rows(vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 3]]);
        let t = s.embed(&a).unwrap();
        assert!(brute_force_reality_oracle(Ambient::Split(&s), &t, 10).is_err());
    }
}
