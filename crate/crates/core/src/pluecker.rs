//! Plücker coordinates of lines and of co-dimension-two subspaces.
//!
//! Both flavors are indexed by pairs `(i, j)`, `i < j`, in lexicographic order.
//! A dual vector is the wedge of two hyperplane equations cutting the subspace out.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, GaloisField};
use crate::projective::{ProjectiveSpace, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    PrimalLine,
    DualCodim2,
}

/// Normalized Plücker vector: the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlueckerVector {
    flavor: Flavor,
    n: usize,
    coords: Vec<Elem>,
}

/// Position of `(i, j)`, `i < j < n`, in the lexicographic list of pairs.
#[inline]
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// Un-normalized `a ∧ b`.
pub fn wedge(f: &GaloisField, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len();
    pairs(n).map(|(i, j)| f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]))).collect()
}

fn normalize(f: &GaloisField, coords: &mut [Elem]) -> Result<()> {
    let lead = *coords.iter().find(|x| !x.is_zero()).ok_or(Error::NotDecomposable)?;
    let inv = f.inv(lead)?;
    for x in coords.iter_mut() {
        *x = f.mul(*x, inv);
    }
    Ok(())
}

impl PlueckerVector {
    /// Normalizes raw coordinates; fails on the zero vector or a length that is not C(n,2).
    pub fn new(f: &GaloisField, flavor: Flavor, n: usize, mut coords: Vec<Elem>) -> Result<Self> {
        let expected = n * (n - 1) / 2;
        if coords.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: coords.len() });
        }
        normalize(f, &mut coords)?;
        Ok(PlueckerVector { flavor, n, coords })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.coords[pair_index(self.n, i, j)]
    }

    /// Entry of the alternating matrix, `V_ji = -V_ij`.
    pub fn entry(&self, f: &GaloisField, i: usize, j: usize) -> Elem {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.get(i, j),
            Greater => f.neg(self.get(j, i)),
            Equal => Elem::ZERO,
        }
    }

    /// Sorted `(i, j, value)` triples of the nonzero coordinates.
    pub fn triples(&self) -> Vec<(usize, usize, Elem)> {
        pairs(self.n)
            .zip(&self.coords)
            .filter(|(_, v)| !v.is_zero())
            .map(|((i, j), &v)| (i, j, v))
            .collect()
    }
}

pub fn line_to_pluecker(space: &ProjectiveSpace, line: &Subspace) -> Result<PlueckerVector> {
    if line.rank() != 2 {
        return Err(Error::WrongRank { expected: 2, found: line.rank() });
    }
    let f = space.field();
    let r = line.rows();
    PlueckerVector::new(f, Flavor::PrimalLine, space.n(), wedge(f, &r[0], &r[1]))
}

pub fn codim2_to_pluecker(space: &ProjectiveSpace, h: &Subspace) -> Result<PlueckerVector> {
    if h.rank() + 2 != space.n() {
        return Err(Error::WrongRank { expected: space.n() - 2, found: h.rank() });
    }
    let f = space.field();
    let ann = space.annihilator(h)?.expect("co-dimension two");
    let r = ann.rows();
    PlueckerVector::new(f, Flavor::DualCodim2, space.n(), wedge(f, &r[0], &r[1]))
}

/// `Σ H_ij L_ij`; zero exactly when the subspace meets the line.
pub fn pairing(f: &GaloisField, h: &PlueckerVector, l: &PlueckerVector) -> Result<Elem> {
    if h.flavor != Flavor::DualCodim2 || l.flavor != Flavor::PrimalLine || h.n != l.n {
        return Err(Error::FlavorMismatch);
    }
    Ok(f.dot(&h.coords, &l.coords))
}

/// The quadratic relations `V_ab V_cd - V_ac V_bd + V_ad V_bc = 0` for all `a<b<c<d`.
pub fn relations_hold(f: &GaloisField, n: usize, coords: &[Elem]) -> bool {
    let c = |i, j| coords[pair_index(n, i, j)];
    for a in 0..n {
        for b in a + 1..n {
            for cc in b + 1..n {
                for d in cc + 1..n {
                    let t1 = f.mul(c(a, b), c(cc, d));
                    let t2 = f.mul(c(a, cc), c(b, d));
                    let t3 = f.mul(c(a, d), c(b, cc));
                    if !f.add(f.sub(t1, t2), t3).is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn plucker_relations_hold(f: &GaloisField, v: &PlueckerVector) -> bool {
    relations_hold(f, v.n, &v.coords)
}

/// Two vectors whose wedge is proportional to `v`: rows `i` and `j` of the
/// alternating matrix, for the first nonzero coordinate `(i, j)`.
fn split(f: &GaloisField, v: &PlueckerVector) -> Result<(Vec<Elem>, Vec<Elem>)> {
    if !plucker_relations_hold(f, v) {
        return Err(Error::NotDecomposable);
    }
    let (i, j, _) = *v.triples().first().ok_or(Error::NotDecomposable)?;
    let row = |r: usize| (0..v.n).map(|k| v.entry(f, r, k)).collect::<Vec<_>>();
    Ok((row(i), row(j)))
}

/// The line (primal) or co-dimension-two subspace (dual) with Plücker vector `v`.
pub fn pluecker_decompose(space: &ProjectiveSpace, v: &PlueckerVector) -> Result<Subspace> {
    if v.n != space.n() {
        return Err(Error::DimensionMismatch { expected: space.n(), found: v.n });
    }
    let (a, b) = split(space.field(), v)?;
    let s = match v.flavor {
        Flavor::PrimalLine => space.line(&a, &b)?,
        Flavor::DualCodim2 => space.cut_out(&[a, b])?.expect("two independent equations"),
    };
    let back = match v.flavor {
        Flavor::PrimalLine => line_to_pluecker(space, &s)?,
        Flavor::DualCodim2 => codim2_to_pluecker(space, &s)?,
    };
    if &back != v {
        return Err(Error::NotDecomposable);
    }
    Ok(s)
}

/// Dimension and degree of the Grassmannian of m-dimensional subspaces of an (m+n)-space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrassmannSpec {
    pub m: u32,
    pub n: u32,
}

impl GrassmannSpec {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameter("Grassmannian parameters must be positive".into()));
        }
        Ok(GrassmannSpec { m, n })
    }

    pub fn dim(&self) -> u64 {
        self.m as u64 * self.n as u64
    }

    /// `0!1!...(n-1)! (mn)! / (m!(m+1)!...(m+n-1)!)`, exactly.
    pub fn degree(&self) -> BigUint {
        let num: BigUint = (0..self.n).map(factorial).product::<BigUint>() * factorial(self.m * self.n);
        let den: BigUint = (self.m..self.m + self.n).map(factorial).product();
        debug_assert!((&num % &den) == BigUint::from(0u32));
        num / den
    }
}

fn factorial(k: u32) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}
