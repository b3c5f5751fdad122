//! Dense matrices over a [`Field`] context, with exact Gaussian elimination.

use std::ops::{Index, IndexMut};

use rand::Rng;

use crate::field::Field;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

/// Row-echelon data: reduced matrix and pivot columns.
struct Echelon<E> {
    m: Matrix<E>,
    pivots: Vec<usize>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: &[Vec<E>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in cols {
                data.push(col[i].clone());
            }
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<E> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<G: Clone>(&self, f: impl Fn(&E) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }
}

impl<E> Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}

impl<E> IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.data[i * self.cols + j]
    }
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![f.zero(); rows * cols] }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
    }

    pub fn diagonal<F: Field<Elem = E>>(f: &F, d: &[E]) -> Self {
        let n = d.len();
        Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { f.zero() })
    }

    pub fn random<F: Field<Elem = E>, R: Rng + ?Sized>(
        f: &F,
        rows: usize,
        cols: usize,
        rng: &mut R,
    ) -> Self {
        Matrix::from_fn(rows, cols, |_, _| f.random(rng))
    }

    pub fn is_identity<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.is_square() && *self == Matrix::identity(f, self.rows)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Self {
        self.map(|a| f.mul(s, a))
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(&out[(i, j)], &f.mul(a, &other[(k, j)]));
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !f.is_zero(a) && !f.is_zero(x) {
                        acc = f.add(&acc, &f.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Matrix::identity(f, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }

    pub fn trace<F: Field<Elem = E>>(&self, f: &F) -> E {
        f.sum((0..self.rows).map(|i| &self[(i, i)]))
    }

    /// Block-diagonal sum.
    pub fn direct_sum<F: Field<Elem = E>>(f: &F, blocks: &[&Matrix<E>]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(f, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    fn echelon<F: Field<Elem = E>>(&self, f: &F) -> Echelon<E> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| f.inv(&m[(i, c)]).is_some()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(&m[(r, c)]).expect("pivot is a unit");
            for j in c..m.cols {
                m[(r, j)] = f.mul(&m[(r, j)], &inv);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(&m[(i, c)]) {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    let v = f.sub(&m[(i, j)], &f.mul(&factor, &m[(r, j)]));
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { m, pivots }
    }

    /// Rank over a field.
    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        self.echelon(f).pivots.len()
    }

    /// Reduced row echelon form.
    pub fn rref<F: Field<Elem = E>>(&self, f: &F) -> (Self, Vec<usize>) {
        let e = self.echelon(f);
        (e.m, e.pivots)
    }

    /// Basis of {x : Mx = 0}, one vector per free column in increasing
    /// order, each with a 1 in its free coordinate.
    pub fn kernel<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let Echelon { m, pivots } = self.echelon(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(&m[(row, fc)]);
                }
                v
            })
            .collect()
    }

    /// Determinant by elimination over a field.
    pub fn det<F: Field<Elem = E>>(&self, f: &F) -> E {
        assert!(self.is_square());
        if self.rows == 3 {
            return self.det3(f);
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(&m[(i, c)])) else {
                return f.zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let pivot = m[(c, c)].clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).expect("field");
            for i in c + 1..n {
                if f.is_zero(&m[(i, c)]) {
                    continue;
                }
                let factor = f.mul(&m[(i, c)], &inv);
                for j in c..n {
                    let v = f.sub(&m[(i, j)], &f.mul(&factor, &m[(c, j)]));
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    /// 3×3 determinant by cofactor expansion; valid over any commutative ring.
    pub fn det3<F: Field<Elem = E>>(&self, f: &F) -> E {
        assert!(self.rows == 3 && self.cols == 3);
        let a = |i, j| &self[(i, j)];
        let minor = |j1: usize, j2: usize| {
            f.sub(&f.mul(a(1, j1), a(2, j2)), &f.mul(a(1, j2), a(2, j1)))
        };
        let t0 = f.mul(a(0, 0), &minor(1, 2));
        let t1 = f.mul(a(0, 1), &minor(0, 2));
        let t2 = f.mul(a(0, 2), &minor(0, 1));
        f.add(&f.sub(&t0, &t1), &t2)
    }

    /// Adjugate of a 3×3 matrix: adj(M)·M = det(M)·I over any commutative ring.
    pub fn adjugate3<F: Field<Elem = E>>(&self, f: &F) -> Self {
        assert!(self.rows == 3 && self.cols == 3);
        let cof = |i: usize, j: usize| {
            let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
            let c: Vec<usize> = (0..3).filter(|&x| x != j).collect();
            let m = f.sub(
                &f.mul(&self[(r[0], c[0])], &self[(r[1], c[1])]),
                &f.mul(&self[(r[0], c[1])], &self[(r[1], c[0])]),
            );
            if (i + j) % 2 == 0 {
                m
            } else {
                f.neg(&m)
            }
        };
        Matrix::from_fn(3, 3, |i, j| cof(j, i))
    }

    /// Inverse over a field (or a ring, for 3×3 via the adjugate).
    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Option<Self> {
        assert!(self.is_square());
        if self.rows == 3 {
            let d = f.inv(&self.det3(f))?;
            return Some(self.adjugate3(f).scale(f, &d));
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                f.one()
            } else {
                f.zero()
            }
        });
        let Echelon { m, pivots } = aug.echelon(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| m[(i, n + j)].clone()))
    }

    /// Some x with Mx = b, if the system is consistent.
    pub fn solve<F: Field<Elem = E>>(&self, f: &F, b: &[E]) -> Option<Vec<E>> {
        let n = self.cols;
        let aug = Matrix::from_fn(self.rows, n + 1, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let Echelon { m, pivots } = aug.echelon(f);
        if pivots.last() == Some(&n) {
            return None;
        }
        let mut x = vec![f.zero(); n];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = m[(row, n)].clone();
        }
        Some(x)
    }

    /// Characteristic polynomial det(XI − M) of a 3×3 matrix, low degree
    /// first and monic.
    pub fn char_poly3<F: Field<Elem = E>>(&self, f: &F) -> Vec<E> {
        let a = |i, j| &self[(i, j)];
        let tr = self.trace(f);
        let m2 = |i: usize, j: usize| f.sub(&f.mul(a(i, i), a(j, j)), &f.mul(a(i, j), a(j, i)));
        let s2 = f.add(&f.add(&m2(0, 1), &m2(0, 2)), &m2(1, 2));
        vec![f.neg(&self.det3(f)), s2, f.neg(&tr), f.one()]
    }

    /// Format as `r1;r2;...` with comma-separated entries.
    pub fn format<F: Field<Elem = E>>(&self, f: &F) -> String {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| f.format(&self[(i, j)])).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Parse `r1;r2;...`; every row must have the same length.
    pub fn parse<F: Field<Elem = E>>(f: &F, s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty matrix".into()));
        }
        let mut rows = Vec::new();
        for row in s.split(';') {
            let entries: Result<Vec<E>, Error> = row.split(',').map(|t| f.parse(t)).collect();
            rows.push(entries?);
        }
        let c = rows[0].len();
        if rows.iter().any(|r| r.len() != c) {
            return Err(Error::Parse("rows of unequal length".into()));
        }
        Ok(Matrix::from_rows(rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::field::Rational;

    #[test]
    fn inverse_and_det_mod_7() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_rows(vec![vec![2, 6, 0], vec![0, 2, 1], vec![0, 0, 2]]);
        assert_eq!(m.det(&f), 1);
        let inv = m.inverse(&f).unwrap();
        assert!(m.mul(&f, &inv).is_identity(&f));
    }

    #[test]
    fn kernel_of_rank_one() {
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::from_rows(vec![vec![1, 2, 3], vec![0, 1, 1]]);
        let ker = m.kernel(&f);
        assert_eq!(ker.len(), 1);
        for v in ker {
            assert!(m.mul_vec(&f, &v).iter().all(|x| *x == 0));
        }
    }

    #[test]
    fn generic_det_matches_cofactor() {
        let q = Rationals;
        let e = |n: i64| Rational::from(n);
        let m = Matrix::from_rows(vec![
            vec![e(1), e(2), e(0), e(1)],
            vec![e(0), e(3), e(1), e(0)],
            vec![e(2), e(0), e(1), e(1)],
            vec![e(1), e(1), e(1), e(1)],
        ]);
        let inv = m.inverse(&q).unwrap();
        assert!(m.mul(&q, &inv).is_identity(&q));
        assert_eq!(m.det(&q), e(4));
    }

    #[test]
    fn char_poly_of_companion() {
        let f = PrimeField::new(7).unwrap();
        // companion of X³ − 4
        let m = Matrix::from_rows(vec![vec![0, 0, 4], vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(m.char_poly3(&f), vec![3, 0, 0, 1]);
    }

    #[test]
    fn text_round_trip() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6], vec![0, 0, 1]]);
        assert_eq!(Matrix::parse(&f, &m.format(&f)).unwrap(), m);
        assert!(Matrix::<u64>::parse(&f, "1,2;3").is_err());
    }
}
