//! Projective space PG(d,q): canonical subspaces, span/meet, and streaming
//! enumeration of all subspaces of a given dimension.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, GaloisField};
use crate::linalg;

/// Refuse enumerations larger than this unless the caller raises the budget.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A subspace of PG(d,q) as a row matrix in reduced row echelon form.
///
/// The RREF is unique, so structural equality is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subspace {
    rows: Vec<Vec<Elem>>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let s: Vec<String> = r.iter().map(|e| e.0.to_string()).collect();
            write!(f, "{}", s.join(","))?;
        }
        f.write_str(">")
    }
}

impl Subspace {
    /// Wraps rows that are already known to be in canonical form.
    pub(crate) fn from_rref_unchecked(rows: Vec<Vec<Elem>>) -> Self {
        debug_assert!(!rows.is_empty());
        Subspace { rows }
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    /// Linear dimension (number of basis rows).
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn projective_dim(&self) -> usize {
        self.rows.len() - 1
    }

    /// Length of the coordinate vectors, d+1.
    pub fn ambient_len(&self) -> usize {
        self.rows[0].len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("rows are nonzero"))
            .collect()
    }

    /// Whether the vector `v` lies in the row space.
    pub fn contains_vector(&self, f: &GaloisField, v: &[Elem]) -> bool {
        let mut v = v.to_vec();
        for (row, pc) in self.rows.iter().zip(self.pivots()) {
            let c = v[pc];
            if !c.is_zero() {
                let nc = f.neg(c);
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.mul_add(*x, nc, y);
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    pub fn is_contained_in(&self, f: &GaloisField, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains_vector(f, r))
    }
}

/// A hyperplane given by its dual coordinate vector, first nonzero entry 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Hyperplane {
    coords: Vec<Elem>,
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.coords.iter().map(|e| e.0.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl Hyperplane {
    pub fn new(f: &GaloisField, mut coords: Vec<Elem>) -> Result<Self> {
        let lead = *coords.iter().find(|x| !x.is_zero()).ok_or(Error::ZeroRows)?;
        let inv = f.inv(lead)?;
        for x in coords.iter_mut() {
            *x = f.mul(*x, inv);
        }
        Ok(Hyperplane { coords })
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn contains_vector(&self, f: &GaloisField, v: &[Elem]) -> bool {
        f.dot(&self.coords, v).is_zero()
    }
}

/// PG(d,q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveSpace {
    dim: usize,
    field: GaloisField,
}

impl ProjectiveSpace {
    pub fn new(dim: usize, field: GaloisField) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidParameter(format!("projective dimension must be at least 2, got {dim}")));
        }
        Ok(ProjectiveSpace { dim, field })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinate vector length d+1.
    pub fn n(&self) -> usize {
        self.dim + 1
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    fn check_len(&self, v: &[Elem]) -> Result<()> {
        if v.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: v.len() });
        }
        if let Some(bad) = v.iter().find(|e| e.0 >= self.q()) {
            return Err(Error::InvalidParameter(format!("element index {} out of range", bad.0)));
        }
        Ok(())
    }

    /// Canonical form of the row space of `rows`.
    pub fn rref(&self, rows: &[Vec<Elem>]) -> Result<Subspace> {
        for r in rows {
            self.check_len(r)?;
        }
        let mut m = rows.to_vec();
        linalg::rref_in_place(&self.field, &mut m);
        if m.is_empty() {
            return Err(Error::ZeroRows);
        }
        Ok(Subspace { rows: m })
    }

    pub fn point(&self, v: &[Elem]) -> Result<Subspace> {
        self.rref(&[v.to_vec()])
    }

    pub fn line(&self, a: &[Elem], b: &[Elem]) -> Result<Subspace> {
        let l = self.rref(&[a.to_vec(), b.to_vec()])?;
        if l.rank() != 2 {
            return Err(Error::WrongRank { expected: 2, found: l.rank() });
        }
        Ok(l)
    }

    fn check_member(&self, s: &Subspace) -> Result<()> {
        if s.ambient_len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: s.ambient_len() });
        }
        Ok(())
    }

    pub fn span(&self, parts: &[&Subspace]) -> Result<Subspace> {
        let mut rows = Vec::new();
        for s in parts {
            self.check_member(s)?;
            rows.extend(s.rows.iter().cloned());
        }
        self.rref(&rows)
    }

    /// The dual subspace `{x : <x,v> = 0 for all v in S}`; `None` for the whole space.
    pub fn annihilator(&self, s: &Subspace) -> Result<Option<Subspace>> {
        self.check_member(s)?;
        let ns = linalg::nullspace(&self.field, &s.rows, self.n());
        Ok(if ns.is_empty() { None } else { Some(Subspace { rows: ns }) })
    }

    /// The subspace cut out by the given dual vectors (hyperplane equations).
    pub fn cut_out(&self, equations: &[Vec<Elem>]) -> Result<Option<Subspace>> {
        for e in equations {
            self.check_len(e)?;
        }
        let ns = linalg::nullspace(&self.field, equations, self.n());
        Ok(if ns.is_empty() { None } else { Some(Subspace { rows: ns }) })
    }

    /// Intersection, computed as the annihilator of the union of annihilators.
    pub fn meet(&self, a: &Subspace, b: &Subspace) -> Result<Option<Subspace>> {
        self.check_member(a)?;
        self.check_member(b)?;
        let mut eqs = linalg::nullspace(&self.field, &a.rows, self.n());
        eqs.extend(linalg::nullspace(&self.field, &b.rows, self.n()));
        self.cut_out(&eqs)
    }

    pub fn hyperplane_subspace(&self, h: &Hyperplane) -> Result<Subspace> {
        self.check_len(&h.coords)?;
        Ok(self.cut_out(std::slice::from_ref(&h.coords))?.expect("d >= 2 leaves a nonzero hyperplane"))
    }

    pub fn hyperplane_from_subspace(&self, s: &Subspace) -> Result<Hyperplane> {
        if s.rank() != self.dim {
            return Err(Error::WrongRank { expected: self.dim, found: s.rank() });
        }
        let ann = self.annihilator(s)?.expect("rank d has a one-dimensional annihilator");
        Hyperplane::new(&self.field, ann.rows[0].clone())
    }

    /// All points of `s`, in the enumeration order of their coordinates in the basis of `s`.
    pub fn points_on(&self, s: &Subspace) -> Vec<Subspace> {
        let f = &self.field;
        let mut out = Vec::new();
        let mut e = RrefEnumerator::new(s.rank(), 1, self.q());
        while let Some(m) = e.next_matrix() {
            let coeffs = &m[0];
            let mut v = vec![Elem::ZERO; self.n()];
            for (c, row) in coeffs.iter().zip(&s.rows) {
                if c.is_zero() {
                    continue;
                }
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.mul_add(*x, *c, y);
                }
            }
            out.push(self.point(&v).expect("nonzero combination"));
        }
        out
    }

    /// Number of subspaces of projective dimension `m`.
    pub fn count_subspaces(&self, m: usize) -> BigUint {
        gaussian_binomial(self.n() as u64, m as u64 + 1, self.q() as u64)
    }

    fn check_budget(&self, m: usize, budget: u64) -> Result<()> {
        let count = self.count_subspaces(m);
        if count.to_u64().is_none_or(|c| c > budget) {
            return Err(Error::BudgetExceeded { count: count.to_string(), budget });
        }
        Ok(())
    }

    /// Streams every subspace of projective dimension `m` exactly once.
    pub fn subspaces(&self, m: usize, budget: u64) -> Result<SubspaceIter> {
        if m > self.dim {
            return Err(Error::InvalidParameter(format!("no subspaces of dimension {m} in PG({},q)", self.dim)));
        }
        self.check_budget(m, budget)?;
        Ok(SubspaceIter { inner: RrefEnumerator::new(self.n(), m + 1, self.q()) })
    }

    /// Raw RREF enumerator for rank `m+1`, for kernels that want borrowed matrices.
    pub fn rref_enumerator(&self, m: usize, budget: u64) -> Result<RrefEnumerator> {
        if m > self.dim {
            return Err(Error::InvalidParameter(format!("no subspaces of dimension {m} in PG({},q)", self.dim)));
        }
        self.check_budget(m, budget)?;
        Ok(RrefEnumerator::new(self.n(), m + 1, self.q()))
    }

    pub fn points(&self) -> impl Iterator<Item = Subspace> {
        SubspaceIter { inner: RrefEnumerator::new(self.n(), 1, self.q()) }
    }

    pub fn lines(&self, budget: u64) -> Result<SubspaceIter> {
        self.subspaces(1, budget)
    }

    /// All hyperplanes, in the enumeration order of their dual vectors.
    pub fn hyperplanes(&self) -> HyperplaneIter {
        HyperplaneIter { inner: RrefEnumerator::new(self.n(), 1, self.q()) }
    }

    pub fn hyperplane_count(&self) -> u64 {
        let q = self.q() as u64;
        (q.pow(self.n() as u32) - 1) / (q - 1)
    }
}

/// Exact number of k-dimensional linear subspaces of an n-dimensional space over GF(q).
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let q = BigUint::from(q);
    let one = BigUint::one();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - &one;
        den *= q.pow((i + 1) as u32) - &one;
    }
    num / den
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn pivot_patterns(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        if !next_combination(&mut c, n) {
            return out;
        }
    }
}

/// Advances `c` to the next k-subset of `0..n` in lexicographic order.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Streams rank-r RREF matrices of width n: pivot patterns in lexicographic
/// order, then free entries as an odometer in field order (last entry fastest).
pub struct RrefEnumerator {
    n: usize,
    r: usize,
    q: u32,
    pattern: Vec<usize>,
    free: Vec<(usize, usize)>,
    matrix: Vec<Vec<Elem>>,
    single_pattern: bool,
    fresh: bool,
    done: bool,
}

impl RrefEnumerator {
    pub fn new(n: usize, r: usize, q: u32) -> Self {
        let mut e = RrefEnumerator {
            n,
            r,
            q,
            pattern: (0..r).collect(),
            free: Vec::new(),
            matrix: Vec::new(),
            single_pattern: false,
            fresh: true,
            done: r == 0 || r > n,
        };
        if !e.done {
            e.load_pattern();
        }
        e
    }

    /// Enumerates only the matrices with the given pivot columns.
    pub fn for_pattern(n: usize, q: u32, pattern: &[usize]) -> Self {
        let mut e = RrefEnumerator {
            n,
            r: pattern.len(),
            q,
            pattern: pattern.to_vec(),
            free: Vec::new(),
            matrix: Vec::new(),
            single_pattern: true,
            fresh: true,
            done: pattern.is_empty(),
        };
        if !e.done {
            e.load_pattern();
        }
        e
    }

    fn load_pattern(&mut self) {
        self.matrix = vec![vec![Elem::ZERO; self.n]; self.r];
        self.free.clear();
        for (i, &p) in self.pattern.iter().enumerate() {
            self.matrix[i][p] = Elem::ONE;
            for c in p + 1..self.n {
                if !self.pattern.contains(&c) {
                    self.free.push((i, c));
                }
            }
        }
    }

    /// Number of free entries of the current pattern.
    pub fn free_count(&self) -> usize {
        self.free.len()
    }

    pub fn pattern(&self) -> &[usize] {
        &self.pattern
    }

    fn advance(&mut self) -> bool {
        for &(i, c) in self.free.iter().rev() {
            let x = self.matrix[i][c].0 + 1;
            if x < self.q {
                self.matrix[i][c] = Elem(x);
                return true;
            }
            self.matrix[i][c] = Elem::ZERO;
        }
        if self.single_pattern || !next_combination(&mut self.pattern, self.n) {
            return false;
        }
        self.load_pattern();
        true
    }

    /// The next matrix, borrowed until the following call.
    pub fn next_matrix(&mut self) -> Option<&[Vec<Elem>]> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(&self.matrix)
    }
}

pub struct SubspaceIter {
    inner: RrefEnumerator,
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        self.inner.next_matrix().map(|m| Subspace { rows: m.to_vec() })
    }
}

pub struct HyperplaneIter {
    inner: RrefEnumerator,
}

impl Iterator for HyperplaneIter {
    type Item = Hyperplane;

    fn next(&mut self) -> Option<Hyperplane> {
        self.inner.next_matrix().map(|m| Hyperplane { coords: m[0].clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn v(xs: &[u32]) -> Vec<Elem> {
        xs.iter().map(|&x| Elem(x)).collect()
    }

    fn pg(d: usize, q: u32) -> ProjectiveSpace {
        ProjectiveSpace::new(d, GaloisField::parse(&q.to_string()).unwrap()).unwrap()
    }

    #[test]
    fn rref_sorts_pivots_and_drops_dependent_rows() {
        let s = pg(2, 5);
        let a = s.rref(&[v(&[0, 1, 0]), v(&[1, 0, 0])]).unwrap();
        assert_eq!(a.rows(), &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let s1 = ProjectiveSpace { dim: 1, field: GaloisField::new(5, 1).unwrap() };
        let b = s1.rref(&[v(&[1, 1]), v(&[2, 2])]).unwrap();
        assert_eq!(b.rows(), &[v(&[1, 1])]);
        assert_eq!(s.rref(b.rows()).err().map(|e| e.to_string()), Some("dimension mismatch: expected 3, found 2".into()));
        assert!(matches!(s.rref(&[v(&[0, 0, 0])]), Err(Error::ZeroRows)));
        assert_eq!(s.rref(a.rows()).unwrap(), a);
    }

    #[test]
    fn span_and_meet() {
        let s = pg(3, 3);
        let p = s.point(&v(&[1, 0, 0, 0])).unwrap();
        let q = s.point(&v(&[0, 1, 2, 0])).unwrap();
        let l = s.span(&[&p, &q]).unwrap();
        assert_eq!(l.rank(), 2);

        let h1 = s.hyperplane_subspace(&Hyperplane::new(s.field(), v(&[1, 0, 0, 0])).unwrap()).unwrap();
        let h2 = s.hyperplane_subspace(&Hyperplane::new(s.field(), v(&[0, 1, 1, 0])).unwrap()).unwrap();
        assert_eq!(s.meet(&h1, &h2).unwrap().unwrap().rank(), s.dim() - 1);

        let l1 = s.line(&v(&[1, 0, 0, 0]), &v(&[0, 1, 0, 0])).unwrap();
        let l2 = s.line(&v(&[0, 0, 1, 0]), &v(&[0, 0, 0, 1])).unwrap();
        assert!(s.meet(&l1, &l2).unwrap().is_none());
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        assert_eq!(gaussian_binomial(4, 2, 2), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(4, 2, 5), BigUint::from(806u32));
        assert_eq!(gaussian_binomial(7, 0, 3), BigUint::from(1u32));
        for (d, q) in [(2, 2), (2, 3), (3, 2), (3, 3), (3, 4), (4, 2), (2, 7)] {
            let s = pg(d, q);
            for m in 0..=d {
                let count = s.subspaces(m, DEFAULT_BUDGET).unwrap().count() as u64;
                assert_eq!(BigUint::from(count), s.count_subspaces(m), "d={d} q={q} m={m}");
                assert_eq!(gaussian_binomial(d as u64 + 1, m as u64 + 1, q as u64), gaussian_binomial(d as u64 + 1, (d - m) as u64, q as u64));
            }
            assert_eq!(s.hyperplanes().count() as u64, s.hyperplane_count());
        }
    }

    #[test]
    fn enumeration_is_canonical_and_distinct() {
        let s = pg(3, 3);
        let mut seen = HashSet::new();
        for sub in s.subspaces(1, DEFAULT_BUDGET).unwrap() {
            assert_eq!(s.rref(sub.rows()).unwrap(), sub);
            assert!(seen.insert(sub));
        }
        assert_eq!(seen.len(), 130);
    }

    #[test]
    fn budget_refuses_before_enumerating() {
        let s = pg(3, 5);
        match s.subspaces(1, 100) {
            Err(Error::BudgetExceeded { count, budget }) => {
                assert_eq!(count, "806");
                assert_eq!(budget, 100);
            }
            _ => panic!("expected a budget refusal"),
        }
    }

    #[test]
    fn points_on_subspaces() {
        let s = pg(2, 3);
        let l = s.line(&v(&[1, 0, 0]), &v(&[0, 1, 0])).unwrap();
        assert_eq!(s.points_on(&l).len(), 4);
        let p = s.point(&v(&[0, 2, 1])).unwrap();
        assert_eq!(s.points_on(&p), vec![p.clone()]);
        let fano = pg(2, 2);
        let h = fano.hyperplane_subspace(&Hyperplane::new(fano.field(), v(&[1, 1, 1])).unwrap()).unwrap();
        assert_eq!(fano.points_on(&h).len(), 3);
    }

    #[test]
    fn meet_is_dual_of_span_in_pg32() {
        let s = pg(3, 2);
        let lines: Vec<Subspace> = s.lines(DEFAULT_BUDGET).unwrap().collect();
        let planes: Vec<Subspace> = s.subspaces(2, DEFAULT_BUDGET).unwrap().collect();
        let mut all = lines.clone();
        all.extend(planes);
        all.extend(s.points());
        for a in &all {
            for b in &all {
                let meet = s.meet(a, b).unwrap();
                let dual = match (s.annihilator(a).unwrap(), s.annihilator(b).unwrap()) {
                    (Some(x), Some(y)) => {
                        let sp = s.span(&[&x, &y]).unwrap();
                        s.annihilator(&sp).unwrap()
                    }
                    _ => unreachable!(),
                };
                assert_eq!(meet, dual);
                let span = s.span(&[a, b]).unwrap();
                let meet_rank = meet.map_or(0, |m| m.rank());
                assert_eq!(a.rank() + b.rank(), span.rank() + meet_rank);
            }
        }
    }

    #[test]
    fn hyperplane_roundtrip() {
        let s = pg(3, 4);
        for h in s.hyperplanes().take(40) {
            let sub = s.hyperplane_subspace(&h).unwrap();
            assert_eq!(sub.rank(), 3);
            assert_eq!(s.hyperplane_from_subspace(&sub).unwrap(), h);
        }
    }
}
