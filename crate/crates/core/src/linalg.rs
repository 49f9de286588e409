//! Row reduction over a [`GaloisField`]. Matrices are plain `Vec<Vec<Elem>>` row lists.

use crate::field::{Elem, GaloisField};

/// Brings `rows` into reduced row echelon form in place, dropping zero rows.
/// Returns the pivot columns.
pub fn rref_in_place(f: &GaloisField, rows: &mut Vec<Vec<Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]).expect("pivot is nonzero");
        if inv != Elem::ONE {
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().expect("row r exists");
        for other in head.iter_mut().chain(tail.iter_mut()) {
            let factor = other[c];
            if factor.is_zero() {
                continue;
            }
            let nf = f.neg(factor);
            for (x, &y) in other.iter_mut().zip(pivot_row.iter()).skip(c) {
                *x = f.mul_add(*x, nf, y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(f: &GaloisField, rows: &[Vec<Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref_in_place(f, &mut m).len()
}

/// Basis of `{x : row . x = 0 for every row}` in RREF, for vectors of length `ncols`.
pub fn nullspace(f: &GaloisField, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let mut m: Vec<Vec<Elem>> = rows.to_vec();
    let pivots = rref_in_place(f, &mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Elem::ZERO; ncols];
        v[free] = Elem::ONE;
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = f.neg(row[free]);
        }
        basis.push(v);
    }
    rref_in_place(f, &mut basis);
    basis
}

/// Incremental echelon basis used by the hot rank checks: vectors are reduced
/// against stored pivots on insertion. Row buffers are recycled across `clear`.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
    len: usize,
}

impl EchelonBasis {
    pub fn new() -> Self {
        EchelonBasis { rows: Vec::new(), pivots: Vec::new(), len: 0 }
    }

    pub fn rank(&self) -> usize {
        self.len
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows[..self.len]
    }

    pub fn clear(&mut self) {
        self.len = 0;
        self.pivots.clear();
    }

    /// Reduces `v` against the basis; returns the residual's pivot if nonzero.
    fn reduce(rows: &[Vec<Elem>], pivots: &[usize], f: &GaloisField, v: &mut [Elem]) -> Option<usize> {
        for (row, &pc) in rows.iter().zip(pivots) {
            let c = v[pc];
            if !c.is_zero() {
                let nc = f.neg(c);
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.mul_add(*x, nc, y);
                }
            }
        }
        v.iter().position(|x| !x.is_zero())
    }

    /// Inserts `v`; returns whether the rank grew.
    pub fn insert(&mut self, f: &GaloisField, v: Vec<Elem>) -> bool {
        self.insert_slice(f, &v)
    }

    /// Like [`insert`](Self::insert) without taking ownership.
    pub fn insert_slice(&mut self, f: &GaloisField, v: &[Elem]) -> bool {
        if self.len == self.rows.len() {
            self.rows.push(Vec::with_capacity(v.len()));
        }
        let (done, spare) = self.rows.split_at_mut(self.len);
        let buf = &mut spare[0];
        buf.clear();
        buf.extend_from_slice(v);
        match Self::reduce(done, &self.pivots, f, buf) {
            None => false,
            Some(pc) => {
                let inv = f.inv(buf[pc]).expect("nonzero pivot");
                if inv != Elem::ONE {
                    for x in buf.iter_mut() {
                        *x = f.mul(*x, inv);
                    }
                }
                self.pivots.push(pc);
                self.len += 1;
                true
            }
        }
    }

    pub fn contains(&self, f: &GaloisField, v: &[Elem]) -> bool {
        let mut v = v.to_vec();
        Self::reduce(self.rows(), &self.pivots, f, &mut v).is_none()
    }

    pub fn into_rows(mut self) -> Vec<Vec<Elem>> {
        self.rows.truncate(self.len);
        self.rows
    }
}

impl Default for EchelonBasis {
    fn default() -> Self {
        Self::new()
    }
}
