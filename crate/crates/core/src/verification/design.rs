//! Measured weak/strong (s, A) parameters and the degree of the GK determinant.

use num_rational::Ratio;
use rayon::prelude::*;

use crate::constructions::{DesignFamily, PolySubspace};
use crate::error::{Error, Result};
use crate::field::{Elem, GaloisField};
use crate::linalg::{self, EchelonBasis};
use crate::poly::{determinant, Poly};
use crate::projective::{gaussian_binomial, pivot_patterns, RrefEnumerator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DesignMode {
    Weak,
    Strong,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignReport {
    pub mode: DesignMode,
    pub s: usize,
    /// Maximum over all s-dimensional W of the weak count or strong sum.
    pub measured: u64,
    /// First W in enumeration order attaining `measured`, in RREF.
    pub witness: Vec<Vec<Elem>>,
    pub claimed_bound: Option<Ratio<u64>>,
    pub satisfied: bool,
    pub subspaces_checked: u64,
    /// Whether the strong sum dominated the weak count on every W.
    pub weak_le_strong: bool,
}

/// `(2d - s + 1) s / (2 r (t - s + 1))`, i.e. `(d - (s-1)/2) s / (r (t - s + 1))`.
pub fn improved_frs_bound(d: usize, s: usize, r: usize, t: usize) -> Option<Ratio<u64>> {
    let denom = 2 * r * (t + 1).checked_sub(s).filter(|&x| x > 0)?;
    Some(Ratio::new(((2 * d + 1 - s) * s) as u64, denom as u64))
}

/// `(d - s + 1) s / (t - s + 1)`.
pub fn improved_mult_bound(d: usize, s: usize, t: usize) -> Option<Ratio<u64>> {
    let denom = (t + 1).checked_sub(s).filter(|&x| x > 0)?;
    Some(Ratio::new(((d + 1 - s) * s) as u64, denom as u64))
}

/// `d s / (r (t - s + 1))`.
pub fn original_bound(d: usize, s: usize, r: usize, t: usize) -> Option<Ratio<u64>> {
    let denom = r * (t + 1).checked_sub(s).filter(|&x| x > 0)?;
    Some(Ratio::new((d * s) as u64, denom as u64))
}

fn claimed_bound(family: &DesignFamily, s: usize) -> Option<Ratio<u64>> {
    let p = family.params;
    match family.construction.as_str() {
        "gk-frs" => improved_frs_bound(p.d, s, p.r, p.t),
        "gk-mult" => improved_mult_bound(p.d, s, p.t),
        _ => None,
    }
}

/// Per-pattern maxima: (weak, first weak witness, strong, first strong witness, checked, weak <= strong).
type Partial = (u64, Vec<Vec<Elem>>, u64, Vec<Vec<Elem>>, u64, bool);

fn scan_pattern(f: &GaloisField, ambient: usize, members: &[PolySubspace], pattern: &[usize]) -> Partial {
    let mut best: Partial = (0, Vec::new(), 0, Vec::new(), 0, true);
    let mut basis = EchelonBasis::new();
    let mut e = RrefEnumerator::for_pattern(ambient, f.order(), pattern);
    let s = pattern.len();
    while let Some(w) = e.next_matrix() {
        let (mut weak, mut strong) = (0u64, 0u64);
        for h in members {
            basis.clear();
            for r in h.rows() {
                basis.insert(f, r.clone());
            }
            let mut rank = basis.rank();
            for r in w {
                if basis.insert(f, r.clone()) {
                    rank += 1;
                }
            }
            // dim(H ∩ W) = dim H + dim W - dim(H + W)
            let meet = (h.dim() + s - rank) as u64;
            strong += meet;
            weak += u64::from(meet > 0);
        }
        best.4 += 1;
        best.5 &= weak <= strong;
        if weak > best.0 || best.1.is_empty() {
            best.0 = weak;
            best.1 = w.to_vec();
        }
        if strong > best.2 || best.3.is_empty() {
            best.2 = strong;
            best.3 = w.to_vec();
        }
    }
    best
}

/// Enumerates every s-dimensional W of GF(q)^{d+1} and measures the family against it.
pub fn design_measure(family: &DesignFamily, s: usize, mode: DesignMode, budget: u64) -> Result<DesignReport> {
    let f = &family.field;
    let ambient = family.params.d + 1;
    if s == 0 || s > ambient {
        return Err(Error::InvalidParameter(format!("need 1 <= s <= {ambient}, got s={s}")));
    }
    let count = gaussian_binomial(ambient as u64, s as u64, f.order() as u64);
    if count > budget.into() {
        return Err(Error::BudgetExceeded { count: count.to_string(), budget });
    }
    let partials: Vec<Partial> = pivot_patterns(ambient, s)
        .par_iter()
        .map(|p| scan_pattern(f, ambient, &family.members, p))
        .collect();
    // Strict improvement keeps the earliest pattern on ties.
    let mut total: Partial = (0, Vec::new(), 0, Vec::new(), 0, true);
    for p in partials {
        if p.0 > total.0 || total.1.is_empty() {
            total.0 = p.0;
            total.1 = p.1;
        }
        if p.2 > total.2 || total.3.is_empty() {
            total.2 = p.2;
            total.3 = p.3;
        }
        total.4 += p.4;
        total.5 &= p.5;
    }
    let (measured, witness) = match mode {
        DesignMode::Weak => (total.0, total.1),
        DesignMode::Strong => (total.2, total.3),
    };
    let claimed_bound = claimed_bound(family, s);
    let satisfied = claimed_bound.is_none_or(|b| Ratio::from_integer(measured) <= b);
    Ok(DesignReport {
        mode,
        s,
        measured,
        witness,
        claimed_bound,
        satisfied,
        subspaces_checked: total.4,
        weak_le_strong: total.5,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WronskianMode {
    Frs,
    Mult,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WronskianReport {
    pub mode: WronskianMode,
    /// Echelonized basis, strictly increasing degrees.
    pub basis: Vec<Poly>,
    pub determinant: Poly,
    /// `None` when the determinant vanishes identically.
    pub degree: Option<usize>,
    pub bound: usize,
    pub bound_holds: bool,
    /// Whether the hypotheses forcing a nonzero determinant hold: `d < q - 1` (frs), `d < char` (mult).
    pub nonzero_expected: bool,
}

impl WronskianReport {
    pub fn holds(&self) -> bool {
        self.bound_holds && (!self.nonzero_expected || self.degree.is_some())
    }
}

/// Re-chooses the basis so that degrees strictly increase.
fn degree_echelon(f: &GaloisField, basis: &[Vec<Elem>], d: usize) -> Result<Vec<Poly>> {
    let mut rev: Vec<Vec<Elem>> = basis
        .iter()
        .map(|b| {
            if b.len() > d + 1 && b[d + 1..].iter().any(|c| !c.is_zero()) {
                return Err(Error::InvalidParameter(format!("basis polynomial exceeds degree {d}")));
            }
            let mut v: Vec<Elem> = (0..=d).map(|i| b.get(i).copied().unwrap_or(Elem::ZERO)).collect();
            v.reverse();
            Ok(v)
        })
        .collect::<Result<_>>()?;
    linalg::rref_in_place(f, &mut rev);
    if rev.len() < basis.len() {
        return Err(Error::InvalidParameter("basis is linearly dependent".into()));
    }
    // Pivot columns increase in the reversed order, so degrees decrease down the rows.
    let mut polys: Vec<Poly> = rev
        .into_iter()
        .map(|mut v| {
            v.reverse();
            Poly::new(v)
        })
        .collect();
    polys.reverse();
    Ok(polys)
}

/// Builds the top s×s block of the folded (frs) or derivative (mult) matrix and takes its determinant.
pub fn wronskian_degree_check(
    f: &GaloisField,
    basis: &[Vec<Elem>],
    mode: WronskianMode,
    d: usize,
    t: usize,
) -> Result<WronskianReport> {
    let s = basis.len();
    if s == 0 || s > t {
        return Err(Error::InvalidParameter(format!("need 1 <= s <= t, got s={s} t={t}")));
    }
    let polys = degree_echelon(f, basis, d)?;
    let rows: Vec<Vec<Poly>> = match mode {
        WronskianMode::Frs => {
            let omega = f.primitive_element();
            (0..s)
                .map(|i| {
                    let c = f.pow(omega, i as u64);
                    polys.iter().map(|p| p.scale_argument(f, c)).collect()
                })
                .collect()
        }
        WronskianMode::Mult => {
            let mut row: Vec<Poly> = polys.clone();
            let mut out = Vec::with_capacity(s);
            for _ in 0..s {
                let next = row.iter().map(|p| p.derivative(f)).collect();
                out.push(std::mem::replace(&mut row, next));
            }
            out
        }
    };
    let det = determinant(f, &rows);
    let pairs = s * (s - 1) / 2;
    let bound = match mode {
        WronskianMode::Frs => d * s - pairs,
        WronskianMode::Mult => s * (d + 1 - s),
    };
    let nonzero_expected = match mode {
        WronskianMode::Frs => d + 1 < f.order() as usize,
        WronskianMode::Mult => f.is_prime_field() && d < f.characteristic() as usize,
    };
    let degree = det.degree();
    Ok(WronskianReport {
        mode,
        basis: polys,
        bound_holds: degree.is_none_or(|g| g <= bound),
        determinant: det,
        degree,
        bound,
        nonzero_expected,
    })
}
