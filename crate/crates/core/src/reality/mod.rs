//! Reality of automorphisms: classification by fixed subalgebra, the
//! SL(3) and SU(3) decision procedures, witnesses, and the finite-field
//! counterexamples.
//!
//! An element t is real when some h in G(k) has h·t·h⁻¹ = t⁻¹. Every
//! verdict here is either backed by an exact witness, by a determinant
//! class obstruction, or reported as unknown.

mod counterexample;
mod oracle;
mod sample;
mod setting;
mod sl3;
mod su;
mod witness;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automorphism::{AutMap, QuadSubalgebra};
use crate::field::{index_to_coeffs, poly, Field, GroundField};
use crate::linalg::Matrix;
use crate::Error;

pub use counterexample::{
    build_counterexample_sl3, build_counterexample_su, Sl3Counterexample, SuCounterexample,
};
pub use oracle::{brute_force_reality_oracle, OracleResult};
pub use sample::{random_sl3, random_su, semisimple_sl3, semisimple_su, unitriangular_family};
pub use setting::{Ambient, SplitSetting, UnitarySetting};
pub use sl3::{reality_sl3, symmetric_decomposition, Sl3Reality};
pub use su::{companion_factorization, companion_matrix, reality_su, SuReality};
pub use witness::{two_involution_witness, verify_sl3_witness, verify_su_witness};

/// Default cap on candidate checks in coset enumerations.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Span enumerations up to this size run exhaustively in lexicographic
/// order; larger ones are sampled.
pub const EXHAUSTIVE_CAP: u64 = 1_000_000;

/// Which kind of subalgebra the generalized 1-eigenspace of t meets 𝔆₀ in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case", deny_unknown_fields)]
pub enum RealityCase {
    /// r = 3
    QuaternionInvariant,
    /// r = 7
    Identity,
    /// r = 1; the fixed subalgebra is quadratic étale.
    FixesEtale { split: bool },
}

impl RealityCase {
    pub fn from_rank(r: usize, split: bool) -> Result<Self, Error> {
        match r {
            1 => Ok(RealityCase::FixesEtale { split }),
            3 => Ok(RealityCase::QuaternionInvariant),
            7 => Ok(RealityCase::Identity),
            _ => Err(Error::Internal(format!("generalized fixed space has rank {r}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Real,
    NotReal,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// T with det 1 and T·A·T⁻¹ = ᵗA, or X with X·Ā·X⁻¹ = A⁻¹.
    Conjugator,
    /// A = S₁S₂ with Sᵢ symmetric of determinant 1.
    SymmetricPair,
    /// A = A₁A₂ with Aᵢ ∈ SU(H) and Āᵢ·Aᵢ = I.
    UnitaryPair,
    /// Two 8×8 involutions with ι₁·ι₂ = t.
    Involutions,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessRecord {
    #[serde(rename = "type")]
    pub kind: WitnessKind,
    /// Row-major text, rows separated by `;`.
    pub matrices: Vec<String>,
}

/// A determinant class that is not in the image of the relevant norm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Obstruction {
    pub value: String,
    pub excluded_class: String,
    pub class_group_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealityReport {
    pub case: RealityCase,
    pub char_poly: String,
    pub verdict: Verdict,
    pub witness: Option<WitnessRecord>,
    pub obstruction: Option<Obstruction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// The fixed subalgebra data of an element in the quadratic étale case.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification<F: GroundField> {
    pub case: RealityCase,
    /// r_t = dim(ker(t − 1)⁸ ∩ 𝔆₀).
    pub rank: usize,
    /// Present in the étale case.
    pub fixed: Option<QuadSubalgebra<F>>,
}

/// Classifies t by r_t = dim(V_t ∩ 𝔆₀) with V_t = ker(t − 1)⁸.
pub fn classify<F: GroundField>(t: &AutMap<F>) -> Result<Classification<F>, Error> {
    if !t.is_certified() {
        return Err(Error::Precondition("classify needs a certified automorphism".into()));
    }
    let alg = t.algebra();
    let k = alg.field();
    let n = alg.dim();
    let shifted = t.matrix().sub(k, &Matrix::identity(k, n));
    let power = shifted.pow(k, 8);
    let mut rows = power.to_rows();
    rows.push((0..n).map(|i| alg.trace(&alg.basis(i))).collect());
    let v0 = Matrix::from_rows(rows).kernel(k);
    let rank = v0.len();
    if rank != 1 {
        return Ok(Classification { case: RealityCase::from_rank(rank, false)?, rank, fixed: None });
    }
    let sub = QuadSubalgebra::new(alg, v0[0].clone())?;
    if !t.fixes(&sub.gamma) {
        return Err(Error::Internal("trace-zero generalized fixed vector is not fixed".into()));
    }
    let split = sub.is_split(k);
    Ok(Classification { case: RealityCase::FixesEtale { split }, rank, fixed: Some(sub) })
}

/// Case tag for an element of G(𝔆/L) given by a 3×3 matrix: the
/// generalized 1-eigenspace on 𝔆₀ has dimension 1 + 2m where m is the
/// multiplicity of 1 as a root of χ.
pub(crate) fn case_from_char_poly<F: Field>(
    f: &F,
    chi: &[F::Elem],
    split: bool,
) -> Result<RealityCase, Error> {
    let mut p = chi.to_vec();
    let mut m = 0;
    let lin = vec![f.neg(&f.one()), f.one()];
    loop {
        let (qt, r) = poly::divrem(f, &p, &lin).expect("monic divisor");
        if !r.iter().all(|c| f.is_zero(c)) || poly::degree(f, &p).unwrap_or(0) == 0 {
            break;
        }
        p = qt;
        m += 1;
    }
    RealityCase::from_rank(1 + 2 * m, split)
}

/// Eigenvalue 1 means t fixes more than L, and a reversing automorphism
/// need not preserve L. Wonenburger's theorem makes every such element a
/// product of two involutions: r = 3 leaves a quaternion subalgebra
/// invariant, and r = 7 has characteristic polynomial divisible by (x − 1)³.
/// Returns the note to attach when the search inside G(𝔆, L) came up empty.
// TODO: construct the involutions from the invariant quaternion subalgebra
// or a second fixed étale subalgebra, so these verdicts carry witnesses.
pub(crate) fn real_by_wonenburger(case: &RealityCase) -> Option<&'static str> {
    match case {
        RealityCase::FixesEtale { .. } => None,
        RealityCase::QuaternionInvariant => {
            Some("real by Wonenburger's theorem (invariant quaternion subalgebra); no witness in G(O, L)")
        }
        RealityCase::Identity => {
            Some("real by Wonenburger's theorem ((x - 1)^3 divides the characteristic polynomial); no witness in G(O, L)")
        }
    }
}

/// Basis of {X : X·a = b·X} for n×n matrices a and b.
pub fn intertwiners<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Vec<Matrix<F::Elem>> {
    let n = a.rows();
    let sys = Matrix::from_fn(n * n, n * n, |row, col| {
        let (i, j) = (row / n, row % n);
        let (p, q) = (col / n, col % n);
        // (XA)_ij = Σ X_iq A_qj ; (BX)_ij = Σ B_ip X_pj
        let mut v = f.zero();
        if p == i {
            v = f.add(&v, &a[(q, j)]);
        }
        if q == j {
            v = f.sub(&v, &b[(i, p)]);
        }
        v
    });
    sys.kernel(f)
        .into_iter()
        .map(|v| Matrix::from_rows(v.chunks(n).map(|r| r.to_vec()).collect()))
        .collect()
}

/// Basis of the symmetric solutions of T·a = ᵗa·T.
pub fn symmetric_intertwiners<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Vec<Matrix<F::Elem>> {
    let n = a.rows();
    let at = a.transpose();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let sym_basis: Vec<Matrix<F::Elem>> = pairs
        .iter()
        .map(|&(i, j)| {
            let mut m = Matrix::zeros(f, n, n);
            m[(i, j)] = f.one();
            m[(j, i)] = f.one();
            m
        })
        .collect();
    // columns: vec(E·a − ᵗa·E) for each symmetric unit E
    let cols: Vec<Vec<F::Elem>> = sym_basis
        .iter()
        .map(|e| e.mul(f, a).sub(f, &at.mul(f, e)).entries().to_vec())
        .collect();
    Matrix::from_cols(&cols)
        .kernel(f)
        .into_iter()
        .map(|c| {
            sym_basis.iter().zip(&c).fold(Matrix::zeros(f, n, n), |acc, (e, s)| acc.add(f, &e.scale(f, s)))
        })
        .collect()
}

/// Minimal polynomial equals characteristic polynomial.
pub fn is_regular<F: Field>(f: &F, a: &Matrix<F::Elem>) -> bool {
    let n = a.rows();
    let mut cols = Vec::with_capacity(n);
    let mut p = Matrix::identity(f, n);
    for _ in 0..n {
        cols.push(p.entries().to_vec());
        p = p.mul(f, a);
    }
    Matrix::from_cols(&cols).rank(f) == n
}

/// The squarefree part of χ annihilates a. Assumes a perfect field.
pub fn is_semisimple<F: Field>(f: &F, a: &Matrix<F::Elem>) -> bool {
    let chi = a.char_poly3(f);
    let g = poly::gcd(f, &chi, &poly::derivative(f, &chi));
    let (sq, _) = poly::divrem(f, &chi, &g).expect("nonzero divisor");
    eval_matrix_poly(f, &sq, a).entries().iter().all(|x| f.is_zero(x))
}

pub(crate) fn eval_matrix_poly<F: Field>(f: &F, p: &[F::Elem], a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let n = a.rows();
    p.iter().rev().fold(Matrix::zeros(f, n, n), |acc, c| {
        acc.mul(f, a).add(f, &Matrix::identity(f, n).scale(f, c))
    })
}

/// Whether χ = (X − r)³, returning r.
pub(crate) fn triple_root<F: Field>(f: &F, chi: &[F::Elem]) -> Option<F::Elem> {
    let three = f.from_i64(3);
    let r = f.neg(&f.div(&chi[2], &three)?);
    let lin = [f.neg(&r), f.one()];
    let cube = poly::mul(f, &poly::mul(f, &lin, &lin), &lin);
    (cube == chi).then_some(r)
}

/// Whether x is a cube in F*, for a finite field.
pub(crate) fn is_cube<F: Field>(f: &F, x: &F::Elem) -> bool {
    let n = f.order().expect("finite field") - 1;
    f.is_zero(x) || n % 3 != 0 || f.is_one(&f.pow(x, n / 3))
}

/// The element of x·{u³ : u ∈ units} with the least enumeration index, so
/// an obstruction class prints the same whichever representative was found.
pub(crate) fn least_in_class<F: Field>(f: &F, x: &F::Elem, units: impl Iterator<Item = F::Elem>) -> F::Elem {
    units
        .map(|u| f.mul(x, &f.mul(&f.square(&u), &u)))
        .min_by_key(|y| f.index_of(y))
        .unwrap_or_else(|| x.clone())
}

/// Result of a span search.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Search<E> {
    Found(Matrix<E>),
    /// The whole span was checked.
    Exhausted,
    /// Sampling or the budget stopped before a decision.
    GaveUp,
}

/// Looks for Σ cᵢ·basisᵢ satisfying `pred`. Spans of at most
/// `EXHAUSTIVE_CAP` elements (and within `budget`) are enumerated in
/// lexicographic coefficient order; larger spans are sampled with a seeded
/// generator for up to `budget` draws.
pub(crate) fn search_span<F: Field>(
    f: &F,
    basis: &[Matrix<F::Elem>],
    budget: u64,
    seed: u64,
    pred: impl Fn(&Matrix<F::Elem>) -> bool + Sync,
) -> Search<F::Elem> {
    let q = f.order().expect("finite field");
    let d = basis.len();
    if basis.is_empty() {
        return Search::Exhausted;
    }
    let (r, c) = (basis[0].rows(), basis[0].cols());
    let combine = |coeffs: &[F::Elem]| {
        basis
            .iter()
            .zip(coeffs)
            .fold(Matrix::zeros(f, r, c), |acc, (b, s)| if f.is_zero(s) { acc } else { acc.add(f, &b.scale(f, s)) })
    };
    let total = (q as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if total <= EXHAUSTIVE_CAP as u128 && total <= budget as u128 {
        let found = (0..total as u64).into_par_iter().find_map_first(|i| {
            let m = combine(&index_to_coeffs(f, d, i));
            pred(&m).then_some(m)
        });
        return found.map_or(Search::Exhausted, Search::Found);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let coeffs: Vec<F::Elem> = (0..d).map(|_| f.random(&mut rng)).collect();
        let m = combine(&coeffs);
        if pred(&m) {
            return Search::Found(m);
        }
    }
    Search::GaveUp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn intertwiners_of_a_regular_matrix_have_dimension_three() {
        let f = PrimeField::new(7).unwrap();
        let a = Matrix::from_rows(vec![vec![0, 0, 1], vec![1, 0, 3], vec![0, 1, 5]]);
        assert_eq!(intertwiners(&f, &a, &a).len(), 3);
        assert!(is_regular(&f, &a));
        let sym = symmetric_intertwiners(&f, &a);
        assert_eq!(sym.len(), 3);
        for s in &sym {
            assert!(s.is_symmetric());
            assert_eq!(s.mul(&f, &a), a.transpose().mul(&f, s));
        }
    }

    #[test]
    fn triple_root_detection() {
        let f = PrimeField::new(7).unwrap();
        // (X − 2)³ = X³ − 6X² + 12X − 8
        let chi = vec![f.reduce(-8), 12 % 7, f.reduce(-6), 1];
        assert_eq!(triple_root(&f, &chi), Some(2));
        assert_eq!(triple_root(&f, &[1, 0, 0, 1]), None);
    }

    #[test]
    fn cubes_mod_seven() {
        let f = PrimeField::new(7).unwrap();
        let cubes: Vec<u64> = (1..7).filter(|x| is_cube(&f, x)).collect();
        assert_eq!(cubes, vec![1, 6]);
    }
}
