//! Exact decision procedures for the properties of line sets and designs.

mod design;
mod generator;
mod monitor;
mod search;
mod transversal;

pub use design::{
    design_measure, improved_frs_bound, improved_mult_bound, original_bound, wronskian_degree_check, DesignMode,
    DesignReport, WronskianMode, WronskianReport,
};
pub use generator::{first_failing_hyperplane, is_generator_lineset, is_tfold_blocking, GeneratorReport};
pub use monitor::ConsistencyMonitor;
pub use search::{search_minimal_generator, PartialCertification, SearchReport, SearchStrategy, SizeSummary};
pub use transversal::{
    build_transversal_small, check_sufficiency, find_transversal_geometric, find_transversal_pluecker,
    pluecker_transversal_solutions, small_set_bound, PlueckerOutcome, SufficiencyVerdict, TransversalWitness,
    PLUECKER_ENUMERATION_CAP,
};

use crate::field::{Elem, GaloisField};
use crate::linalg::EchelonBasis;

/// Adds `ℓ ∩ Π` to `basis`: the whole line when it lies in the hyperplane, else one point.
/// Returns whether the line is contained in the hyperplane.
#[inline]
pub(crate) fn push_intersection(f: &GaloisField, y: &[Elem], a: &[Elem], b: &[Elem], basis: &mut EchelonBasis) -> bool {
    let ya = f.dot(y, a);
    let yb = f.dot(y, b);
    if ya.is_zero() && yb.is_zero() {
        basis.insert(f, a.to_vec());
        basis.insert(f, b.to_vec());
        return true;
    }
    basis.insert(f, intersection_point(f, ya, yb, a, b));
    false
}

/// `<y,b> a - <y,a> b`, the point of the line `ab` on the hyperplane `y`.
#[inline]
pub(crate) fn intersection_point(f: &GaloisField, ya: Elem, yb: Elem, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let nya = f.neg(ya);
    a.iter().zip(b).map(|(&x, &z)| f.add(f.mul(yb, x), f.mul(nya, z))).collect()
}
