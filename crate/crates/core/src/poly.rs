//! Dense univariate polynomials over a [`GaloisField`], low degree first.

use crate::field::{Elem, GaloisField};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Elem) -> Self {
        Poly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, f: &GaloisField, x: Elem) -> Elem {
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, f: &GaloisField, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Poly, i: usize| p.coeffs.get(i).copied().unwrap_or(Elem::ZERO);
        Poly::new((0..n).map(|i| f.add(get(self, i), get(other, i))).collect())
    }

    pub fn neg(&self, f: &GaloisField) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn mul(&self, f: &GaloisField, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.mul_add(out[i + j], a, b);
            }
        }
        Poly::new(out)
    }

    /// Formal derivative.
    pub fn derivative(&self, f: &GaloisField) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    /// `P(c X)`.
    pub fn scale_argument(&self, f: &GaloisField, c: Elem) -> Poly {
        let mut pw = Elem::ONE;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &a in &self.coeffs {
            out.push(f.mul(a, pw));
            pw = f.mul(pw, c);
        }
        Poly::new(out)
    }
}

/// Determinant of a square polynomial matrix by permutation expansion.
pub fn determinant(f: &GaloisField, m: &[Vec<Poly>]) -> Poly {
    let s = m.len();
    let mut perm: Vec<usize> = (0..s).collect();
    let mut total = Poly::zero();
    // Heap's algorithm; each step is a single transposition, so the sign alternates.
    let mut c = vec![0usize; s];
    let mut sign_positive = true;
    let term = |perm: &[usize]| {
        perm.iter()
            .enumerate()
            .fold(Poly::constant(Elem::ONE), |acc, (row, &col)| acc.mul(f, &m[row][col]))
    };
    let t = term(&perm);
    total = total.add(f, &t);
    let mut i = 0;
    while i < s {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign_positive = !sign_positive;
            let t = term(&perm);
            total = if sign_positive { total.add(f, &t) } else { total.add(f, &t.neg(f)) };
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(f: &GaloisField, xs: &[i64]) -> Poly {
        Poly::new(xs.iter().map(|&x| f.from_int(x)).collect())
    }

    #[test]
    fn eval_and_derivative() {
        let f = GaloisField::new(7, 1).unwrap();
        let a = p(&f, &[1, 2, 3]); // 1 + 2x + 3x^2
        assert_eq!(a.eval(&f, Elem(2)), f.from_int(1 + 4 + 12));
        assert_eq!(a.derivative(&f), p(&f, &[2, 6]));
        assert_eq!(p(&f, &[0, 0, 0]).degree(), None);
        // x^7 has vanishing formal derivative in characteristic 7
        assert!(p(&f, &[0, 0, 0, 0, 0, 0, 0, 1]).derivative(&f).is_zero());
    }

    #[test]
    fn determinant_matches_explicit_2x2_and_3x3() {
        let f = GaloisField::new(11, 1).unwrap();
        let a = p(&f, &[1, 1]);
        let b = p(&f, &[0, 2]);
        let c = p(&f, &[3]);
        let d = p(&f, &[1, 0, 1]);
        let det = determinant(&f, &[vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]);
        assert_eq!(det, a.mul(&f, &d).add(&f, &b.mul(&f, &c).neg(&f)));

        // diagonal 3x3 with constants
        let k = |x| Poly::constant(f.from_int(x));
        let m = vec![
            vec![k(2), k(0), k(0)],
            vec![k(0), k(3), k(0)],
            vec![k(0), k(0), k(5)],
        ];
        assert_eq!(determinant(&f, &m), k(30));
        // a row swap negates
        let m2 = vec![m[1].clone(), m[0].clone(), m[2].clone()];
        assert_eq!(determinant(&f, &m2), k(-30));
    }
}
