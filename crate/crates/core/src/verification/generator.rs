use crate::constructions::LineSet;
use crate::field::Elem;
use crate::linalg::EchelonBasis;
use crate::projective::{Hyperplane, ProjectiveSpace, RrefEnumerator, Subspace};

use super::push_intersection;

/// Outcome of the hyperplane-generation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorReport {
    pub verdict: bool,
    /// First hyperplane (in enumeration order) whose intersection fails to span it.
    pub counterexample: Option<Hyperplane>,
    /// `rank_histogram[r]` counts hyperplanes whose intersection spans rank `r`.
    pub rank_histogram: Vec<u64>,
}

/// Whether every hyperplane contains at least `t` of the given points.
pub fn is_tfold_blocking(space: &ProjectiveSpace, points: &[Subspace], t: usize) -> bool {
    let f = space.field();
    space.hyperplanes().all(|h| points.iter().filter(|p| h.contains_vector(f, &p.rows()[0])).count() >= t)
}

fn intersection_rank(space: &ProjectiveSpace, y: &[Elem], lines: &[Subspace], basis: &mut EchelonBasis) -> usize {
    let f = space.field();
    basis.clear();
    for l in lines {
        let r = l.rows();
        push_intersection(f, y, &r[0], &r[1], basis);
    }
    basis.rank()
}

/// Checks every hyperplane `Π` for `span(Π ∩ ⋃L) = Π`. The empty set generates nothing.
pub fn is_generator_lineset(space: &ProjectiveSpace, lines: &LineSet) -> GeneratorReport {
    let mut histogram = vec![0u64; space.dim() + 1];
    let mut counterexample = None;
    let mut basis = EchelonBasis::new();
    let mut hyps = RrefEnumerator::new(space.n(), 1, space.q());
    while let Some(m) = hyps.next_matrix() {
        let y = &m[0];
        let rank = intersection_rank(space, y, lines.lines(), &mut basis);
        histogram[rank] += 1;
        if rank < space.dim() && counterexample.is_none() {
            counterexample = Some(Hyperplane::new(space.field(), y.clone()).expect("nonzero"));
        }
    }
    GeneratorReport { verdict: counterexample.is_none(), counterexample, rank_histogram: histogram }
}

/// Early-exit variant: the first hyperplane not spanned by its intersection with the lines.
pub fn first_failing_hyperplane(space: &ProjectiveSpace, lines: &[Subspace]) -> Option<Hyperplane> {
    let mut basis = EchelonBasis::new();
    let mut hyps = RrefEnumerator::new(space.n(), 1, space.q());
    while let Some(m) = hyps.next_matrix() {
        if intersection_rank(space, &m[0], lines, &mut basis) < space.dim() {
            return Some(Hyperplane::new(space.field(), m[0].clone()).expect("nonzero"));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fano_concurrent, plane_triangle};
    use crate::field::GaloisField;

    fn pg(d: usize, q: &str) -> ProjectiveSpace {
        ProjectiveSpace::new(d, GaloisField::parse(q).unwrap()).unwrap()
    }

    #[test]
    fn disjoint_lines_are_multiple_blocking_sets() {
        let s = pg(3, "3");
        let z = Elem::ZERO;
        let o = Elem::ONE;
        let l1 = s.line(&[o, z, z, z], &[z, o, z, z]).unwrap();
        let l2 = s.line(&[z, z, o, z], &[z, z, z, o]).unwrap();
        let mut pts = s.points_on(&l1);
        pts.extend(s.points_on(&l2));
        assert!(is_tfold_blocking(&s, &pts, 2));
        assert!(!is_tfold_blocking(&s, &pts, 3));
        let single = vec![s.point(&[o, z, z, z]).unwrap()];
        assert!(!is_tfold_blocking(&s, &single, 1));
        let all: Vec<Subspace> = s.points().collect();
        // each plane of PG(3,3) has 13 points
        assert!(is_tfold_blocking(&s, &all, 13));
        assert!(!is_tfold_blocking(&s, &all, 14));
    }

    #[test]
    fn triangle_and_fano() {
        for q in ["2", "3", "4", "5", "7"] {
            let s = pg(2, q);
            let r = is_generator_lineset(&s, &plane_triangle(&s).unwrap());
            assert!(r.verdict);
            assert_eq!(r.rank_histogram.iter().sum::<u64>(), s.hyperplane_count());
        }
        let fano = fano_concurrent().unwrap();
        assert!(is_generator_lineset(&pg(2, "2"), &fano).verdict);
    }

    #[test]
    fn two_lines_fail_at_a_line_through_their_meet() {
        let s = pg(2, "5");
        let t = plane_triangle(&s).unwrap();
        let two = LineSet::new(&s, "pair", t.lines()[..2].to_vec()).unwrap();
        let r = is_generator_lineset(&s, &two);
        assert!(!r.verdict);
        let h = s.hyperplane_subspace(&r.counterexample.unwrap()).unwrap();
        let common = s.meet(&two.lines()[0], &two.lines()[1]).unwrap().unwrap();
        assert!(common.is_contained_in(s.field(), &h));
        assert_eq!(first_failing_hyperplane(&s, two.lines()), Some(s.hyperplane_from_subspace(&h).unwrap()));
    }

    #[test]
    fn empty_set_is_not_a_generator() {
        let s = pg(2, "3");
        let empty = LineSet::new(&s, "empty", vec![]).unwrap();
        let r = is_generator_lineset(&s, &empty);
        assert!(!r.verdict);
        assert_eq!(r.rank_histogram[0], s.hyperplane_count());
    }
}
