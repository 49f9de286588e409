//! Subspace designs in the space of polynomials of degree at most d.
//!
//! A polynomial `c_0 + c_1 X + ... + c_d X^d` is the vector `(c_0, ..., c_d)`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::{Elem, GaloisField};
use crate::linalg;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DesignParams {
    pub s: usize,
    pub r: usize,
    pub t: usize,
    /// Maximum polynomial degree; the ambient space has dimension d+1.
    pub d: usize,
}

/// A linear subspace of GF(q)^{d+1} (possibly `{0}`), kept in RREF.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySubspace {
    label: Elem,
    rows: Vec<Vec<Elem>>,
    codim: usize,
}

impl PolySubspace {
    pub fn new(f: &GaloisField, label: Elem, rows: Vec<Vec<Elem>>, ambient: usize) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, found: r.len() });
        }
        let mut rows = rows;
        linalg::rref_in_place(f, &mut rows);
        let codim = ambient - rows.len();
        Ok(PolySubspace { label, rows, codim })
    }

    pub fn label(&self) -> Elem {
        self.label
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.codim
    }
}

#[derive(Clone, Debug)]
pub struct DesignFamily {
    pub construction: String,
    pub params: DesignParams,
    pub field: GaloisField,
    /// Where the labels live: GF(q^r) for the folded construction with r > 1.
    pub label_field: GaloisField,
    pub members: Vec<PolySubspace>,
}

/// Rows `[c^0, c^1, ..., c^d]` express `P(c) = 0`.
fn evaluation_row(f: &GaloisField, c: Elem, d: usize) -> Vec<Elem> {
    (0..=d).map(|j| f.pow(c, j as u64)).collect()
}

/// Smallest e >= 1 with `a^(q^e) = a`, i.e. the degree of `a` over GF(q).
fn degree_over_base(ext: &GaloisField, a: Elem, q: u32) -> usize {
    let mut x = ext.pow(a, q as u64);
    let mut e = 1;
    while x != a {
        x = ext.pow(x, q as u64);
        e += 1;
    }
    e
}

/// Folded Reed-Solomon design: `H_α = {P : P(α ω^i) = 0, 0 <= i < t}`, with α
/// chosen greedily in enumeration order subject to `F_q(α) = F_{q^r}`,
/// `|S_α| = rt`, and pairwise disjoint `S_α`.
pub fn gk_frs_design(field: &GaloisField, params: DesignParams) -> Result<DesignFamily> {
    let DesignParams { s, r, t, d } = params;
    let q = field.order();
    if s == 0 || r == 0 || s > t || t > d + 1 || d + 1 >= q as usize {
        return Err(Error::InvalidParameter(format!("need 0 < s <= t <= d+1 < q, got s={s} t={t} d={d} q={q}")));
    }
    if r * t > d + 1 {
        return Err(Error::InvalidParameter(format!("r*t = {} exceeds d+1 = {}", r * t, d + 1)));
    }
    let ext = if r == 1 {
        field.clone()
    } else if field.is_prime_field() {
        GaloisField::new(field.characteristic(), r as u32)?
    } else {
        return Err(Error::InvalidParameter("folding degree r > 1 is only supported over prime fields".into()));
    };
    // A prime subfield element has the same index in GF(p^r).
    let omega = field.primitive_element();
    let omega_pows: Vec<Elem> = (0..t).map(|i| ext.pow(omega, i as u64)).collect();

    let mut used: HashSet<Elem> = HashSet::new();
    let mut members = Vec::new();
    for alpha in ext.elements().skip(1) {
        if degree_over_base(&ext, alpha, q) != r {
            continue;
        }
        let mut s_alpha = HashSet::with_capacity(r * t);
        let mut conj = alpha;
        for _ in 0..r {
            for &w in &omega_pows {
                s_alpha.insert(ext.mul(conj, w));
            }
            conj = ext.pow(conj, q as u64);
        }
        if s_alpha.len() != r * t || !s_alpha.is_disjoint(&used) {
            continue;
        }
        let mut conditions = Vec::with_capacity(r * t);
        for &w in &omega_pows {
            let row = evaluation_row(&ext, ext.mul(alpha, w), d);
            if r == 1 {
                conditions.push(row);
            } else {
                // Each GF(q^r) condition splits into r conditions over GF(q), one per coordinate.
                let coords: Vec<Vec<u32>> = row.iter().map(|&e| ext.coefficients(e)).collect();
                for c in 0..r {
                    conditions.push(coords.iter().map(|cs| Elem(cs[c])).collect());
                }
            }
        }
        let kernel = linalg::nullspace(field, &conditions, d + 1);
        used.extend(s_alpha);
        members.push(PolySubspace::new(field, alpha, kernel, d + 1)?);
    }
    Ok(DesignFamily {
        construction: "gk-frs".into(),
        params,
        field: field.clone(),
        label_field: ext,
        members,
    })
}

/// Multiplicity design: `H_α = {P : P(α) = P'(α) = ... = P^(t-1)(α) = 0}` for every α.
pub fn gk_mult_design(field: &GaloisField, params: DesignParams) -> Result<DesignFamily> {
    let DesignParams { s, t, d, .. } = params;
    let p = field.characteristic() as usize;
    if !field.is_prime_field() {
        return Err(Error::InvalidParameter("multiplicity design needs a prime field".into()));
    }
    if d + 1 >= p {
        return Err(Error::InvalidParameter(format!("need d+1 < char, got d={d} char={p}")));
    }
    if s == 0 || s > t || t > d + 1 {
        return Err(Error::InvalidParameter(format!("need 0 < s <= t <= d+1, got s={s} t={t} d={d}")));
    }
    let mut members = Vec::with_capacity(field.order() as usize);
    for alpha in field.elements() {
        let conditions: Vec<Vec<Elem>> = (0..t)
            .map(|k| {
                (0..=d)
                    .map(|j| {
                        if j < k {
                            return Elem::ZERO;
                        }
                        // j! / (j-k)!
                        let falling = (j - k + 1..=j).fold(Elem::ONE, |acc, m| field.mul(acc, field.from_int(m as i64)));
                        field.mul(falling, field.pow(alpha, (j - k) as u64))
                    })
                    .collect()
            })
            .collect();
        let kernel = linalg::nullspace(field, &conditions, d + 1);
        members.push(PolySubspace::new(field, alpha, kernel, d + 1)?);
    }
    Ok(DesignFamily {
        construction: "gk-mult".into(),
        params: DesignParams { r: 1, ..params },
        field: field.clone(),
        label_field: field.clone(),
        members,
    })
}
