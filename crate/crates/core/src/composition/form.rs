//! Quadratic forms: diagonalization and isotropy.

use std::cmp::Ordering;

use crate::field::{index_to_coeffs, GroundField};
use crate::linalg::Matrix;

/// Q(x) = ½·xᵀPx for a symmetric polar matrix P.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticForm<F: GroundField> {
    field: F,
    polar: Matrix<F::Elem>,
}

/// Outcome of an isotropy test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isotropy<E> {
    /// A nonzero vector with Q(x) = 0.
    Isotropic(Vec<E>),
    Anisotropic,
    /// Neither a zero nor a proof of anisotropy was found.
    Unknown,
}

impl<E> Isotropy<E> {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Isotropy::Isotropic(_) => Some(true),
            Isotropy::Anisotropic => Some(false),
            Isotropy::Unknown => None,
        }
    }
}

impl<F: GroundField> QuadraticForm<F> {
    pub fn from_polar(field: F, polar: Matrix<F::Elem>) -> Self {
        assert!(polar.is_symmetric(), "polar matrix must be symmetric");
        QuadraticForm { field, polar }
    }

    /// The diagonal form <d₁, ..., dₙ>.
    pub fn diagonal(field: F, d: &[F::Elem]) -> Self {
        let two: Vec<F::Elem> = d.iter().map(|x| field.add(x, x)).collect();
        let polar = Matrix::diagonal(&field, &two);
        QuadraticForm { field, polar }
    }

    pub fn dim(&self) -> usize {
        self.polar.rows()
    }

    pub fn polar(&self) -> &Matrix<F::Elem> {
        &self.polar
    }

    /// B(x, y) = ½·xᵀPy, so that B(x, x) = Q(x).
    pub fn bilinear(&self, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let py = self.polar.mul_vec(f, y);
        let s = x.iter().zip(&py).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
        f.div(&s, &f.from_i64(2)).expect("characteristic is not 2")
    }

    pub fn value(&self, x: &[F::Elem]) -> F::Elem {
        self.bilinear(x, x)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.polar.rank(&self.field) == self.dim()
    }

    /// Orthogonal basis by Gram–Schmidt with first-nonzero pivoting.
    ///
    /// Returns the values Q(bᵢ) and the basis vectors bᵢ in the original
    /// coordinates. Degenerate directions contribute zeros at the end.
    pub fn diagonalize_with_basis(&self) -> (Vec<F::Elem>, Vec<Vec<F::Elem>>) {
        let f = &self.field;
        let n = self.dim();
        let mut rest: Vec<Vec<F::Elem>> = (0..n).map(|i| super::unit(f, n, i)).collect();
        let mut diag = Vec::new();
        let mut basis = Vec::new();
        while !rest.is_empty() {
            let pivot = match rest.iter().position(|v| !f.is_zero(&self.value(v))) {
                Some(p) => p,
                None => {
                    let pair = (0..rest.len()).find_map(|i| {
                        (i + 1..rest.len())
                            .find(|&j| !f.is_zero(&self.bilinear(&rest[i], &rest[j])))
                            .map(|j| (i, j))
                    });
                    match pair {
                        Some((i, j)) => {
                            let s: Vec<F::Elem> =
                                rest[i].iter().zip(&rest[j]).map(|(a, b)| f.add(a, b)).collect();
                            rest[i] = s;
                            i
                        }
                        None => {
                            for v in rest.drain(..) {
                                diag.push(f.zero());
                                basis.push(v);
                            }
                            break;
                        }
                    }
                }
            };
            let b = rest.remove(pivot);
            let qb = self.value(&b);
            let inv = f.inv(&qb).expect("pivot value is nonzero");
            for v in &mut rest {
                let c = f.mul(&self.bilinear(v, &b), &inv);
                if !f.is_zero(&c) {
                    *v = v.iter().zip(&b).map(|(x, y)| f.sub(x, &f.mul(&c, y))).collect();
                }
            }
            diag.push(qb);
            basis.push(b);
        }
        (diag, basis)
    }

    pub fn diagonalize(&self) -> Vec<F::Elem> {
        self.diagonalize_with_basis().0
    }

    /// Finite fields: exhaustive search ordered by the first nonzero
    /// coordinate (normalized to 1). Rationals: a definite diagonalization
    /// proves anisotropy; otherwise integer vectors with entries in −2..=2
    /// are tried in the diagonal basis. At most `budget` vectors are tested.
    pub fn isotropy(&self, budget: u64) -> Isotropy<F::Elem> {
        let f = &self.field;
        let n = self.dim();
        if !self.is_nondegenerate() {
            let ker = self.polar.kernel(f);
            return Isotropy::Isotropic(ker[0].clone());
        }
        let mut spent = 0u64;
        if let Some(q) = f.order() {
            for p in 0..n {
                let free = (n - p - 1) as u32;
                for idx in 0..q.pow(free) {
                    spent += 1;
                    if spent > budget {
                        return Isotropy::Unknown;
                    }
                    let tail = index_to_coeffs(f, n - p - 1, idx);
                    let mut x = vec![f.zero(); p];
                    x.push(f.one());
                    x.extend(tail);
                    if f.is_zero(&self.value(&x)) {
                        return Isotropy::Isotropic(x);
                    }
                }
            }
            return Isotropy::Anisotropic;
        }
        let (diag, basis) = self.diagonalize_with_basis();
        let signs: Vec<Option<Ordering>> = diag.iter().map(|d| f.sign(d)).collect();
        if signs.iter().all(|s| *s == Some(Ordering::Greater))
            || signs.iter().all(|s| *s == Some(Ordering::Less))
        {
            return Isotropy::Anisotropic;
        }
        let range = 5u64;
        let total = range.saturating_pow(n as u32);
        for idx in 1..total {
            spent += 1;
            if spent > budget {
                break;
            }
            let mut t = idx;
            let coeffs: Vec<F::Elem> = (0..n)
                .map(|_| {
                    let c = (t % range) as i64 - 2;
                    t /= range;
                    f.from_i64(c)
                })
                .collect();
            let val = diag
                .iter()
                .zip(&coeffs)
                .fold(f.zero(), |acc, (d, c)| f.add(&acc, &f.mul(d, &f.square(c))));
            if f.is_zero(&val) && coeffs.iter().any(|c| !f.is_zero(c)) {
                let mut x = vec![f.zero(); n];
                for (c, b) in coeffs.iter().zip(&basis) {
                    for (xi, bi) in x.iter_mut().zip(b) {
                        *xi = f.add(xi, &f.mul(c, bi));
                    }
                }
                return Isotropy::Isotropic(x);
            }
        }
        Isotropy::Unknown
    }
}
