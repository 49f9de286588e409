//! Co-dimension-two subspaces meeting every line of a set.

use rayon::prelude::*;

use crate::constructions::LineSet;
use crate::error::{Error, Result};
use crate::field::{Elem, GaloisField};
use crate::linalg::{self, EchelonBasis};
use crate::pluecker::{self, Flavor, PlueckerVector};
use crate::projective::{pivot_patterns, ProjectiveSpace, RrefEnumerator, Subspace};

use super::generator::is_generator_lineset;

/// The Plücker finder enumerates the projective nullspace only up to this many vectors.
pub const PLUECKER_ENUMERATION_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalWitness {
    pub subspace: Subspace,
    /// One point of `H ∩ ℓ` per line, in line order.
    pub meeting_points: Vec<Subspace>,
}

impl TransversalWitness {
    /// Builds the witness, re-checking incidence with every line.
    pub fn new(space: &ProjectiveSpace, subspace: Subspace, lines: &[Subspace]) -> Result<Self> {
        let meeting_points = lines
            .iter()
            .map(|l| {
                let m = space.meet(&subspace, l)?.ok_or_else(|| {
                    Error::InvalidParameter(format!("{subspace:?} does not meet line {l:?}"))
                })?;
                space.point(&m.rows()[0])
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TransversalWitness { subspace, meeting_points })
    }
}

/// Whether the RREF codim-2 matrix `h` (pivots `pattern`, free columns `u`, `v`) meets line `ab`.
#[inline]
pub(crate) fn meets(f: &GaloisField, h: &[Vec<Elem>], pattern: &[usize], u: usize, v: usize, a: &[Elem], b: &[Elem]) -> bool {
    // Reduce a and b modulo the row space of h; the residuals live in columns u, v.
    let (mut au, mut av, mut bu, mut bv) = (a[u], a[v], b[u], b[v]);
    for (row, &p) in h.iter().zip(pattern) {
        let (ca, cb) = (f.neg(a[p]), f.neg(b[p]));
        au = f.mul_add(au, ca, row[u]);
        av = f.mul_add(av, ca, row[v]);
        bu = f.mul_add(bu, cb, row[u]);
        bv = f.mul_add(bv, cb, row[v]);
    }
    f.mul(au, bv) == f.mul(av, bu)
}

fn scan_pattern(space: &ProjectiveSpace, pattern: &[usize], lines: &[Subspace]) -> Option<Subspace> {
    let f = space.field();
    let free: Vec<usize> = (0..space.n()).filter(|c| !pattern.contains(c)).collect();
    let (u, v) = (free[0], free[1]);
    let mut e = RrefEnumerator::for_pattern(space.n(), space.q(), pattern);
    while let Some(h) = e.next_matrix() {
        if lines.iter().all(|l| meets(f, h, pattern, u, v, &l.rows()[0], &l.rows()[1])) {
            return Some(Subspace::from_rref_unchecked(h.to_vec()));
        }
    }
    None
}

/// Scans all co-dimension-two subspaces in enumeration order; returns the first transversal.
pub fn find_transversal_geometric(
    space: &ProjectiveSpace,
    lines: &LineSet,
    budget: u64,
) -> Result<Option<TransversalWitness>> {
    let codim2 = space.dim() - 2;
    // validates the budget before any work
    space.rref_enumerator(codim2, budget)?;
    let patterns = pivot_patterns(space.n(), codim2 + 1);
    let found = patterns.par_iter().find_map_first(|p| scan_pattern(space, p, lines.lines()));
    found.map(|h| TransversalWitness::new(space, h, lines.lines())).transpose()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlueckerOutcome {
    /// Solved through the linear system and the quadratic relations.
    Solved(Option<TransversalWitness>),
    /// The nullspace was too large to enumerate; answered by the geometric scan.
    Fallback(Option<TransversalWitness>),
}

impl PlueckerOutcome {
    pub fn witness(&self) -> Option<&TransversalWitness> {
        match self {
            PlueckerOutcome::Solved(w) | PlueckerOutcome::Fallback(w) => w.as_ref(),
        }
    }

    pub fn into_witness(self) -> Option<TransversalWitness> {
        match self {
            PlueckerOutcome::Solved(w) | PlueckerOutcome::Fallback(w) => w,
        }
    }
}

/// Basis of the solutions of `Σ L_ij(k) H_ij = 0` over all lines k.
fn linear_solutions(space: &ProjectiveSpace, lines: &LineSet) -> Result<Vec<Vec<Elem>>> {
    let f = space.field();
    let rows = lines
        .lines()
        .iter()
        .map(|l| pluecker::line_to_pluecker(space, l).map(|v| v.coords().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    let width = space.n() * (space.n() - 1) / 2;
    Ok(linalg::nullspace(f, &rows, width))
}

fn nullspace_points(q: u32, nullity: usize) -> Option<u64> {
    (q as u64).checked_pow(nullity as u32).filter(|&c| c <= PLUECKER_ENUMERATION_CAP)
}

/// Visits the normalized decomposable solutions in enumeration order of their
/// nullspace coefficients; stops when `visit` returns true.
fn for_each_solution(
    space: &ProjectiveSpace,
    basis: &[Vec<Elem>],
    mut visit: impl FnMut(PlueckerVector) -> bool,
) {
    let f = space.field();
    let width = space.n() * (space.n() - 1) / 2;
    let mut coeffs = RrefEnumerator::new(basis.len(), 1, space.q());
    while let Some(c) = coeffs.next_matrix() {
        let mut v = vec![Elem::ZERO; width];
        for (&ci, b) in c[0].iter().zip(basis) {
            if ci.is_zero() {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(b) {
                *x = f.mul_add(*x, ci, y);
            }
        }
        if pluecker::relations_hold(f, space.n(), &v) {
            let pv = PlueckerVector::new(f, Flavor::DualCodim2, space.n(), v).expect("nonzero combination");
            if visit(pv) {
                return;
            }
        }
    }
}

/// All dual Plücker vectors of co-dimension-two subspaces meeting every line.
pub fn pluecker_transversal_solutions(space: &ProjectiveSpace, lines: &LineSet) -> Result<Vec<PlueckerVector>> {
    let basis = linear_solutions(space, lines)?;
    if nullspace_points(space.q(), basis.len()).is_none() {
        return Err(Error::BudgetExceeded {
            count: format!("{}^{}", space.q(), basis.len()),
            budget: PLUECKER_ENUMERATION_CAP,
        });
    }
    let mut out = Vec::new();
    for_each_solution(space, &basis, |v| {
        out.push(v);
        false
    });
    Ok(out)
}

/// Solves the linear Plücker system, filters by the quadratic relations and
/// decomposes the first survivor.
pub fn find_transversal_pluecker(space: &ProjectiveSpace, lines: &LineSet, budget: u64) -> Result<PlueckerOutcome> {
    let basis = linear_solutions(space, lines)?;
    if basis.is_empty() {
        return Ok(PlueckerOutcome::Solved(None));
    }
    if nullspace_points(space.q(), basis.len()).is_none() {
        return Ok(PlueckerOutcome::Fallback(find_transversal_geometric(space, lines, budget)?));
    }
    let mut first = None;
    for_each_solution(space, &basis, |v| {
        first = Some(v);
        true
    });
    let witness = match first {
        None => None,
        Some(v) => {
            let h = pluecker::pluecker_decompose(space, &v)?;
            Some(TransversalWitness::new(space, h, lines.lines())?)
        }
    };
    Ok(PlueckerOutcome::Solved(witness))
}

/// `⌊d/2⌋ + d - 1`, the largest size for which a transversal always exists.
pub fn small_set_bound(d: usize) -> usize {
    d / 2 + d - 1
}

/// Builds a transversal of a set of at most `⌊d/2⌋ + d - 1` lines: a hyperplane
/// through the first `⌊d/2⌋` lines, then a hyperplane of it through one point
/// of each remaining line.
pub fn build_transversal_small(space: &ProjectiveSpace, lines: &LineSet) -> Result<TransversalWitness> {
    let d = space.dim();
    let f = space.field();
    if lines.len() > small_set_bound(d) {
        return Err(Error::InvalidParameter(format!(
            "{} lines exceed the bound {} for PG({d},q)",
            lines.len(),
            small_set_bound(d)
        )));
    }
    let head = (d / 2).min(lines.len());
    let mut pi = EchelonBasis::new();
    for l in &lines.lines()[..head] {
        for r in l.rows() {
            pi.insert(f, r.clone());
        }
    }
    for i in 0..space.n() {
        if pi.rank() == d {
            break;
        }
        let mut e = vec![Elem::ZERO; space.n()];
        e[i] = Elem::ONE;
        pi.insert(f, e);
    }
    let pi = space.rref(&pi.into_rows())?;

    let mut h = EchelonBasis::new();
    for l in &lines.lines()[head..] {
        let p = space.meet(&pi, l)?.expect("a hyperplane meets every line");
        h.insert(f, p.rows()[0].clone());
    }
    for r in pi.rows() {
        if h.rank() == d - 1 {
            break;
        }
        h.insert(f, r.clone());
    }
    let h = space.rref(&h.into_rows())?;
    debug_assert_eq!(h.rank(), d - 1);
    TransversalWitness::new(space, h, lines.lines())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SufficiencyVerdict {
    pub generator: bool,
    pub transversal: Option<TransversalWitness>,
    /// No transversal implies generator (equivalently: non-generator implies a transversal).
    pub contrapositive_holds: bool,
    /// A generator set with a transversal has at least q+1 lines.
    pub size_bound_holds: bool,
}

impl SufficiencyVerdict {
    pub fn consistent(&self) -> bool {
        self.contrapositive_holds && self.size_bound_holds
    }
}

pub fn check_sufficiency(space: &ProjectiveSpace, lines: &LineSet, budget: u64) -> Result<SufficiencyVerdict> {
    let generator = is_generator_lineset(space, lines).verdict;
    let transversal = find_transversal_geometric(space, lines, budget)?;
    let contrapositive_holds = generator || transversal.is_some();
    let size_bound_holds = !(generator && transversal.is_some()) || lines.len() > space.q() as usize;
    Ok(SufficiencyVerdict { generator, transversal, contrapositive_holds, size_bound_holds })
}
