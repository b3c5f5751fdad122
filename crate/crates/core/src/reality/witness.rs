use super::{reality_sl3, reality_su, Ambient, Verdict, WitnessKind, WitnessRecord};
use crate::automorphism::{in_su, AutMap};
use crate::field::{Field, GroundField, LElem, QuadraticEtale};
use crate::linalg::Matrix;
use crate::Error;

/// (ι₁, ι₂) with ιᵢ² = 1 and ι₁ι₂ = t for t in the image of SL(3) or SU(H),
/// built from the factorization found by the reality criterion. The
/// identity gets (ρ, ρ).
pub fn two_involution_witness<F: GroundField>(
    ambient: Ambient<'_, F>,
    t: &AutMap<F>,
    budget: u64,
) -> Result<(AutMap<F>, AutMap<F>), Error> {
    let missing = |verdict: Verdict| match verdict {
        Verdict::Real => Error::Precondition("real, but only a conjugator witness is available".into()),
        Verdict::NotReal => Error::Precondition("element is not real".into()),
        Verdict::Unknown => Error::BudgetExhausted(budget),
    };
    match ambient {
        Ambient::Split(s) => {
            if t.is_identity() {
                return Ok((s.rho.clone(), s.rho.clone()));
            }
            let r = reality_sl3(s.field(), &s.block(t)?, budget)?;
            let (s1, s2) = r.decomposition.ok_or_else(|| missing(r.verdict))?;
            s.two_involutions(&s1, &s2)
        }
        Ambient::Unitary(s) => {
            if t.is_identity() {
                return Ok((s.rho.clone(), s.rho.clone()));
            }
            let r = reality_su(s.l(), s.gram(), &s.block(t)?, budget)?;
            let (a1, a2) = r.decomposition.ok_or_else(|| missing(r.verdict))?;
            s.two_involutions(&a1, &a2)
        }
    }
}

fn parse_all<G: Field>(g: &G, record: &WitnessRecord, count: usize) -> Result<Vec<Matrix<G::Elem>>, Error> {
    if record.matrices.len() != count {
        return Err(Error::Parse(format!("{:?} witness needs {count} matrices, got {}", record.kind, record.matrices.len())));
    }
    let ms = record.matrices.iter().map(|m| Matrix::parse(g, m)).collect::<Result<Vec<_>, _>>()?;
    if ms.iter().any(|m| m.rows() != 3 || m.cols() != 3) {
        return Err(Error::Parse("witness matrices must be 3x3".into()));
    }
    Ok(ms)
}

fn check(ok: bool, what: &str) -> Result<(), Error> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(format!("witness fails: {what}")))
    }
}

/// Re-checks a serialized SL(3) witness for `a`: a symmetric pair with
/// S₁S₂ = A and det Sᵢ = 1, or T of determinant 1 with T·A·T⁻¹ = ᵗA.
pub fn verify_sl3_witness<F: GroundField>(k: &F, a: &Matrix<F::Elem>, record: &WitnessRecord) -> Result<(), Error> {
    match record.kind {
        WitnessKind::SymmetricPair => {
            let ms = parse_all(k, record, 2)?;
            for s in &ms {
                check(s.is_symmetric() && k.is_one(&s.det3(k)), "factor is not symmetric of determinant 1")?;
            }
            check(ms[0].mul(k, &ms[1]) == *a, "S1 S2 differs from A")
        }
        WitnessKind::Conjugator => {
            let ms = parse_all(k, record, 1)?;
            let t = &ms[0];
            check(k.is_one(&t.det3(k)), "conjugator does not have determinant 1")?;
            check(t.mul(k, a) == a.transpose().mul(k, t), "T A differs from tA T")
        }
        other => Err(Error::Unsupported(format!("{other:?} witness for an SL(3) element"))),
    }
}

/// Re-checks a serialized SU(H) witness for `a`: a unitary pair with
/// A₁A₂ = A, Aᵢ ∈ SU(H) and Āᵢ·Aᵢ = I, or X ∈ U(H) with X·Ā·X⁻¹ = A⁻¹.
pub fn verify_su_witness<F: GroundField>(
    l: &QuadraticEtale<F>,
    gram: &[F::Elem; 3],
    a: &Matrix<LElem<F::Elem>>,
    record: &WitnessRecord,
) -> Result<(), Error> {
    let bar = |m: &Matrix<LElem<F::Elem>>| m.map(|x| l.sigma(x));
    match record.kind {
        WitnessKind::UnitaryPair => {
            let ms = parse_all(l, record, 2)?;
            for m in &ms {
                check(in_su(l, gram, m), "factor is not in SU(H)")?;
                check(bar(m).mul(l, m).is_identity(l), "conj(Ai) Ai is not I")?;
            }
            check(ms[0].mul(l, &ms[1]) == *a, "A1 A2 differs from A")
        }
        WitnessKind::Conjugator => {
            let ms = parse_all(l, record, 1)?;
            let x = &ms[0];
            let h = Matrix::diagonal(l, &gram.clone().map(|g| l.embed(&g)));
            check(x.transpose().mul(l, &h).mul(l, &bar(x)) == h, "conjugator is not in U(H)")?;
            let ainv = a.inverse(l).ok_or_else(|| Error::Precondition("A is singular".into()))?;
            check(x.mul(l, &bar(a)) == ainv.mul(l, x), "X conj(A) differs from inv(A) X")
        }
        other => Err(Error::Unsupported(format!("{other:?} witness for an SU(H) element"))),
    }
}
