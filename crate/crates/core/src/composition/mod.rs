//! Composition algebras given by structure constants.
//!
//! An [`Algebra`] is a finite-dimensional unital algebra over a ground field
//! together with a quadratic norm. Elements are plain coordinate vectors in
//! the algebra's structured basis. The models (Zorn vector matrices,
//! Cayley–Dickson doubles, hermitian and quadratic constructions) live in
//! [`models`]; quadratic form tools in [`form`]; Peirce frames in [`peirce`].

pub mod form;
pub mod models;
pub mod peirce;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::field::{Field, FieldSpec, GroundField};
use crate::linalg::Matrix;
use crate::Error;

pub use form::{Isotropy, QuadraticForm};
pub use models::{HermitianSpace3, QuadraticSpace3};
pub use peirce::PeirceFrame;

/// Which construction produced an algebra. Fixes the meaning of coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    /// (α, v₁, v₂, v₃, w₁, w₂, w₃, β).
    Zorn,
    /// Iterated Cayley–Dickson doubling: (x, y) means x + y·a.
    Doubled,
    /// L ⊕ V over L, in the k-basis 1, γ, f₁, γf₁, f₂, γf₂, f₃, γf₃.
    Hermitian,
    /// k ⊕ V with V a rank 3 quadratic space.
    Quaternion,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Zorn => "zorn",
            Model::Doubled => "doubled",
            Model::Hermitian => "hermitian",
            Model::Quaternion => "quaternion",
        })
    }
}

/// A unital algebra with a quadratic norm, fixed by its structure constants.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra<F: GroundField> {
    field: F,
    model: Model,
    dim: usize,
    /// `table[i * dim + j]` lists the nonzero (k, c) with e_i·e_j = Σ c·e_k.
    table: Vec<Vec<(usize, F::Elem)>>,
    /// N(e_i).
    norm_diag: Vec<F::Elem>,
    /// Polar form N(x, y) = N(x+y) − N(x) − N(y) on basis vectors.
    polar: Matrix<F::Elem>,
    one: Vec<F::Elem>,
}

pub type Elem<E> = Vec<E>;

impl<F: GroundField> Algebra<F> {
    /// Tabulates a bilinear product and a quadratic norm on the standard basis.
    pub fn from_product(
        field: F,
        model: Model,
        dim: usize,
        one: Elem<F::Elem>,
        mul: impl Fn(&[F::Elem], &[F::Elem]) -> Elem<F::Elem>,
        norm: impl Fn(&[F::Elem]) -> F::Elem,
    ) -> Self {
        let basis: Vec<Elem<F::Elem>> = (0..dim).map(|i| unit(&field, dim, i)).collect();
        let mut table = Vec::with_capacity(dim * dim);
        for a in &basis {
            for b in &basis {
                let p = mul(a, b);
                table.push(
                    p.into_iter().enumerate().filter(|(_, c)| !field.is_zero(c)).collect(),
                );
            }
        }
        let norm_diag: Vec<F::Elem> = basis.iter().map(|b| norm(b)).collect();
        let polar = Matrix::from_fn(dim, dim, |i, j| {
            if i == j {
                field.add(&norm_diag[i], &norm_diag[i])
            } else {
                let s: Vec<F::Elem> =
                    (0..dim).map(|t| if t == i || t == j { field.one() } else { field.zero() }).collect();
                field.sub(&field.sub(&norm(&s), &norm_diag[i]), &norm_diag[j])
            }
        });
        Algebra { field, model, dim, table, norm_diag, polar, one }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> Elem<F::Elem> {
        self.one.clone()
    }

    pub fn zero(&self) -> Elem<F::Elem> {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis(&self, i: usize) -> Elem<F::Elem> {
        unit(&self.field, self.dim, i)
    }

    /// Polar Gram matrix of the norm.
    pub fn polar_gram(&self) -> &Matrix<F::Elem> {
        &self.polar
    }

    pub fn norm_form(&self) -> QuadraticForm<F> {
        QuadraticForm::from_polar(self.field.clone(), self.polar.clone())
    }

    /// Sparse structure constants: products of basis vectors.
    pub fn structure_constants(&self) -> &[Vec<(usize, F::Elem)>] {
        &self.table
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Elem<F::Elem> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let s = f.mul(xi, yj);
                for (k, c) in &self.table[i * self.dim + j] {
                    out[*k] = f.add(&out[*k], &f.mul(&s, c));
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[F::Elem], y: &[F::Elem]) -> Elem<F::Elem> {
        x.iter().zip(y).map(|(a, b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[F::Elem], y: &[F::Elem]) -> Elem<F::Elem> {
        x.iter().zip(y).map(|(a, b)| self.field.sub(a, b)).collect()
    }

    pub fn neg(&self, x: &[F::Elem]) -> Elem<F::Elem> {
        x.iter().map(|a| self.field.neg(a)).collect()
    }

    pub fn scale(&self, s: &F::Elem, x: &[F::Elem]) -> Elem<F::Elem> {
        x.iter().map(|a| self.field.mul(s, a)).collect()
    }

    pub fn norm(&self, x: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for i in 0..self.dim {
            if f.is_zero(&x[i]) {
                continue;
            }
            acc = f.add(&acc, &f.mul(&self.norm_diag[i], &f.square(&x[i])));
            for j in i + 1..self.dim {
                let b = &self.polar[(i, j)];
                if !f.is_zero(b) && !f.is_zero(&x[j]) {
                    acc = f.add(&acc, &f.mul(b, &f.mul(&x[i], &x[j])));
                }
            }
        }
        acc
    }

    pub fn bilinear_norm(&self, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
        let gy = self.polar.mul_vec(&self.field, y);
        self.field.sum(x.iter().zip(&gy).map(|(a, b)| self.field.mul(a, b)).collect::<Vec<_>>().iter())
    }

    /// N(x, 1).
    pub fn trace(&self, x: &[F::Elem]) -> F::Elem {
        self.bilinear_norm(x, &self.one)
    }

    /// x̄ = N(x,1)·1 − x.
    pub fn conj(&self, x: &[F::Elem]) -> Elem<F::Elem> {
        self.sub(&self.scale(&self.trace(x), &self.one), x)
    }

    /// x² − N(x,1)x + N(x)·1.
    pub fn minimal_equation_residue(&self, x: &[F::Elem]) -> Elem<F::Elem> {
        let x2 = self.mul(x, x);
        let t = self.scale(&self.trace(x), x);
        let n = self.scale(&self.norm(x), &self.one);
        self.add(&self.sub(&x2, &t), &n)
    }

    pub fn is_zero(&self, x: &[F::Elem]) -> bool {
        x.iter().all(|a| self.field.is_zero(a))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem<F::Elem> {
        (0..self.dim).map(|_| self.field.random(rng)).collect()
    }

    /// Matrix of y ↦ x·y.
    pub fn left_mul_matrix(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        let cols: Vec<_> = (0..self.dim).map(|j| self.mul(x, &self.basis(j))).collect();
        Matrix::from_cols(&cols)
    }

    /// Matrix of y ↦ y·x.
    pub fn right_mul_matrix(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        let cols: Vec<_> = (0..self.dim).map(|j| self.mul(&self.basis(j), x)).collect();
        Matrix::from_cols(&cols)
    }

    /// Whether N(xy) = N(x)N(y) on all basis pairs and `samples` random
    /// pairs. Returns the number of failures.
    pub fn composition_failures<R: Rng + ?Sized>(&self, samples: usize, rng: &mut R) -> usize {
        let f = &self.field;
        let check = |x: &[F::Elem], y: &[F::Elem]| {
            self.norm(&self.mul(x, y)) != f.mul(&self.norm(x), &self.norm(y))
        };
        let mut bad = 0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                bad += usize::from(check(&self.basis(i), &self.basis(j)));
            }
        }
        for _ in 0..samples {
            let x = self.random(rng);
            let y = self.random(rng);
            bad += usize::from(check(&x, &y));
        }
        bad
    }

    pub fn is_composition<R: Rng + ?Sized>(&self, samples: usize, rng: &mut R) -> bool {
        self.composition_failures(samples, rng) == 0 && self.polar.rank(&self.field) == self.dim
    }

    /// Whether e_i(e_j e_k) = (e_i e_j)e_k for every basis triple.
    pub fn is_associative(&self) -> bool {
        let b: Vec<_> = (0..self.dim).map(|i| self.basis(i)).collect();
        b.iter().all(|x| {
            b.iter().all(|y| {
                b.iter().all(|z| {
                    self.mul(x, &self.mul(y, z)) == self.mul(&self.mul(x, y), z)
                })
            })
        })
    }

    /// Left and right alternative laws x(xy) = (xx)y, (yx)x = y(xx).
    pub fn alternative_laws_hold(&self, x: &[F::Elem], y: &[F::Elem]) -> bool {
        let xx = self.mul(x, x);
        self.mul(x, &self.mul(x, y)) == self.mul(&xx, y)
            && self.mul(&self.mul(y, x), x) == self.mul(y, &xx)
    }

    /// Decides isotropy of the norm form.
    pub fn norm_is_isotropic(&self, budget: u64) -> Isotropy<F::Elem> {
        self.norm_form().isotropy(budget)
    }

    /// Text encoding. Zorn elements print as `[a | v1,v2,v3 | w1,w2,w3 | b]`,
    /// others as `[c0,c1,...]`.
    pub fn format_elem(&self, x: &[F::Elem]) -> String {
        let f = &self.field;
        let j = |s: &[F::Elem]| s.iter().map(|c| f.format(c)).collect::<Vec<_>>().join(",");
        if self.model == Model::Zorn {
            format!("[{} | {} | {} | {}]", f.format(&x[0]), j(&x[1..4]), j(&x[4..7]), f.format(&x[7]))
        } else {
            format!("[{}]", j(x))
        }
    }

    /// Inverse of [`Algebra::format_elem`]. Either form is accepted for Zorn.
    pub fn parse_elem(&self, s: &str) -> Result<Elem<F::Elem>, Error> {
        parse_coords(&self.field, s, self.dim)
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        let f = &self.field;
        let mut table = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in &self.table[i * self.dim + j] {
                    table.push((i, j, *k, f.format(c)));
                }
            }
        }
        AlgebraDescriptor {
            field: self.field.spec(),
            model: self.model,
            dim: self.dim,
            one: self.one.iter().map(|c| f.format(c)).collect(),
            table,
            norm: self.norm_diag.iter().map(|c| f.format(c)).collect(),
            polar: self.polar.to_rows().iter().map(|r| r.iter().map(|c| f.format(c)).collect()).collect(),
        }
    }

    /// Rebuilds an algebra from its descriptor over the given field.
    pub fn from_descriptor(field: F, d: &AlgebraDescriptor) -> Result<Self, Error> {
        if d.field != field.spec() {
            return Err(Error::Precondition(format!(
                "descriptor is over {}, not {}",
                d.field,
                field.spec()
            )));
        }
        let dim = d.dim;
        if !matches!(dim, 1 | 2 | 4 | 8) {
            return Err(Error::Parse(format!("dimension {dim} is not 1, 2, 4 or 8")));
        }
        let p = |s: &String| field.parse(s);
        let vec = |v: &[String], what: &str| -> Result<Vec<F::Elem>, Error> {
            if v.len() != dim {
                return Err(Error::Parse(format!("{what} has length {}, expected {dim}", v.len())));
            }
            v.iter().map(p).collect()
        };
        let one = vec(&d.one, "one")?;
        let norm_diag = vec(&d.norm, "norm")?;
        if d.polar.len() != dim {
            return Err(Error::Parse("polar Gram has the wrong number of rows".into()));
        }
        let rows: Result<Vec<Vec<F::Elem>>, Error> =
            d.polar.iter().map(|r| vec(r, "polar row")).collect();
        let polar = Matrix::from_rows(rows?);
        if !polar.is_symmetric() {
            return Err(Error::Parse("polar Gram is not symmetric".into()));
        }
        for i in 0..dim {
            if polar[(i, i)] != field.add(&norm_diag[i], &norm_diag[i]) {
                return Err(Error::Parse(format!("polar diagonal {i} disagrees with the norm")));
            }
        }
        let mut table = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in &d.table {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::Parse(format!("structure constant index ({i},{j},{k}) out of range")));
            }
            let c = p(c)?;
            if !field.is_zero(&c) {
                let slot: &mut Vec<(usize, F::Elem)> = &mut table[i * dim + j];
                if slot.iter().any(|(kk, _)| kk == k) {
                    return Err(Error::Parse(format!("duplicate structure constant ({i},{j},{k})")));
                }
                slot.push((*k, c));
            }
        }
        for slot in &mut table {
            slot.sort_by_key(|(k, _)| *k);
        }
        let a = Algebra { field, model: d.model, dim, table, norm_diag, polar, one };
        for i in 0..dim {
            let b = a.basis(i);
            if a.mul(&a.one, &b) != b || a.mul(&b, &a.one) != b {
                return Err(Error::Precondition("declared identity is not a two-sided unit".into()));
            }
        }
        Ok(a)
    }
}

/// Serializable form of an [`Algebra`], with entries in the field's text
/// encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDescriptor {
    pub field: FieldSpec,
    pub model: Model,
    pub dim: usize,
    pub one: Vec<String>,
    /// Nonzero structure constants (i, j, k, c): e_i·e_j has c at e_k.
    pub table: Vec<(usize, usize, usize, String)>,
    pub norm: Vec<String>,
    pub polar: Vec<Vec<String>>,
}

pub(crate) fn unit<F: Field>(f: &F, n: usize, i: usize) -> Vec<F::Elem> {
    (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect()
}

/// Parses `[c0,c1,...]`, also accepting `|` as a separator.
pub fn parse_coords<F: Field>(f: &F, s: &str, dim: usize) -> Result<Vec<F::Elem>, Error> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("element must be bracketed: {s:?}")))?;
    let coords: Result<Vec<F::Elem>, Error> =
        inner.split(['|', ',']).map(|t| f.parse(t)).collect();
    let coords = coords?;
    if coords.len() != dim {
        return Err(Error::Parse(format!("expected {dim} coordinates, got {}", coords.len())));
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zorn_text_round_trip() {
        let f = PrimeField::new(7).unwrap();
        let z = models::zorn(f);
        let x = vec![1, 2, 3, 4, 5, 6, 0, 1];
        let s = z.format_elem(&x);
        assert_eq!(s, "[1 | 2,3,4 | 5,6,0 | 1]");
        assert_eq!(z.parse_elem(&s).unwrap(), x);
        assert_eq!(z.parse_elem("[1,2,3,4,5,6,0,1]").unwrap(), x);
        assert!(z.parse_elem("[1,2]").is_err());
        assert!(z.parse_elem("1,2,3,4,5,6,0,1").is_err());
    }

    #[test]
    fn descriptor_round_trip() {
        let f = PrimeField::new(5).unwrap();
        let z = models::zorn(f);
        let d = z.descriptor();
        let json = serde_json::to_string(&d).unwrap();
        let back: AlgebraDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(Algebra::from_descriptor(f, &back).unwrap(), z);
    }

    #[test]
    fn conjugation_is_an_anti_automorphism() {
        let f = PrimeField::new(5).unwrap();
        let z = models::zorn(f);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let x = z.random(&mut rng);
            let y = z.random(&mut rng);
            assert_eq!(z.conj(&z.mul(&x, &y)), z.mul(&z.conj(&y), &z.conj(&x)));
            assert_eq!(z.conj(&z.conj(&x)), x);
        }
    }
}
