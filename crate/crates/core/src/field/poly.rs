//! Dense univariate polynomials, coefficients stored low degree first.
//!
//! Only what the cubic and 3×3 machinery needs: no factorization beyond
//! root finding over finite fields.

use super::Field;

pub type Poly<E> = Vec<E>;

pub fn trim<F: Field>(f: &F, mut p: Poly<F::Elem>) -> Poly<F::Elem> {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
    p
}

/// Degree, with the zero polynomial reported as `None`.
pub fn degree<F: Field>(f: &F, p: &[F::Elem]) -> Option<usize> {
    (0..p.len()).rev().find(|&i| !f.is_zero(&p[i]))
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

/// Quotient and remainder; `None` if the divisor's leading coefficient is
/// not a unit.
pub fn divrem<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> Option<(Poly<F::Elem>, Poly<F::Elem>)> {
    let db = degree(f, b)?;
    let lead_inv = f.inv(&b[db])?;
    let mut r = trim(f, a.to_vec());
    let mut q = vec![f.zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(f, &r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        q[shift] = f.add(&q[shift], &c);
        for i in 0..=db {
            r[i + shift] = f.sub(&r[i + shift], &f.mul(&c, &b[i]));
        }
        r = trim(f, r);
    }
    Some((trim(f, q), r))
}

/// Monic gcd over a field.
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let mut a = trim(f, a.to_vec());
    let mut b = trim(f, b.to_vec());
    while !b.is_empty() {
        let (_, r) = divrem(f, &a, &b).expect("field coefficients");
        a = b;
        b = r;
    }
    monic(f, &a)
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    match degree(f, a) {
        None => Vec::new(),
        Some(d) => {
            let inv = f.inv(&a[d]).expect("field coefficients");
            a[..=d].iter().map(|c| f.mul(c, &inv)).collect()
        }
    }
}

pub fn eval<F: Field>(f: &F, p: &[F::Elem], x: &F::Elem) -> F::Elem {
    p.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

pub fn derivative<F: Field>(f: &F, p: &[F::Elem]) -> Poly<F::Elem> {
    let out = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
        .collect();
    trim(f, out)
}

/// No repeated factor (over the algebraic closure).
pub fn is_separable<F: Field>(f: &F, p: &[F::Elem]) -> bool {
    degree(f, &gcd(f, p, &derivative(f, p))) == Some(0)
}

/// Roots in a finite field, by exhaustive search in enumeration order.
pub fn roots<F: Field>(f: &F, p: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let n = f.order()?;
    Some(
        (0..n)
            .map(|i| f.element_at(i))
            .filter(|x| f.is_zero(&eval(f, p, x)))
            .collect(),
    )
}

pub fn format<F: Field>(f: &F, p: &[F::Elem]) -> String {
    let mut terms = Vec::new();
    for (i, c) in p.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        terms.push(match i {
            0 => format!("({})", f.format(c)),
            1 => format!("({})*X", f.format(c)),
            _ => format!("({})*X^{i}", f.format(c)),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn divrem_and_gcd_mod_7() {
        let f = PrimeField::new(7).unwrap();
        // (X-1)(X-2) = X^2 - 3X + 2
        let a = vec![2, 4, 1];
        let b = vec![6, 1];
        let (q, r) = divrem(&f, &a, &b).unwrap();
        assert_eq!(q, vec![5, 1]);
        assert!(r.is_empty());
        assert_eq!(gcd(&f, &a, &vec![5, 1]), vec![5, 1]);
    }

    #[test]
    fn separability() {
        let f = PrimeField::new(7).unwrap();
        // (X-2)^3 = X^3 - 6X^2 + 12X - 8
        let p = vec![f.from_i64(-8), 12 % 7, f.from_i64(-6), 1];
        assert!(!is_separable(&f, &p));
        assert!(is_separable(&f, &[3, 0, 0, 1]));
        assert_eq!(roots(&f, &p).unwrap(), vec![2]);
    }
}
