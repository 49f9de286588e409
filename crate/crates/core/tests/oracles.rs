//! Brute-force cross-checks: every vector and every subspace listed explicitly.

use std::collections::{BTreeSet, HashSet};

use higgledy::constructions::{gk_frs_design, gk_mult_design, higgledy_family, default_injection, fano_concurrent, plane_triangle};
use higgledy::verification::{
    design_measure, find_transversal_geometric, find_transversal_pluecker, is_generator_lineset, DesignMode,
};
use higgledy::acceptance::random_line_set;
use higgledy::{DesignFamily, DesignParams, Elem, GaloisField, LineSet, ProjectiveSpace, DEFAULT_BUDGET};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_vectors(f: &GaloisField, n: usize) -> Vec<Vec<Elem>> {
    let q = f.order();
    (0..q.pow(n as u32))
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let e = Elem(c % q);
                    c /= q;
                    e
                })
                .collect()
        })
        .collect()
}

fn span_set(f: &GaloisField, basis: &[Vec<Elem>], n: usize) -> BTreeSet<Vec<Elem>> {
    let mut out = BTreeSet::new();
    for coeffs in all_vectors(f, basis.len()) {
        let mut v = vec![Elem(0); n];
        for (c, b) in coeffs.iter().zip(basis) {
            for (x, y) in v.iter_mut().zip(b) {
                *x = f.mul_add(*x, *c, *y);
            }
        }
        out.insert(v);
    }
    out
}

/// Every 2-dimensional subspace, as its full vector set.
fn all_planes(f: &GaloisField, n: usize) -> Vec<BTreeSet<Vec<Elem>>> {
    let vs = all_vectors(f, n);
    let mut seen = HashSet::new();
    for (i, u) in vs.iter().enumerate().skip(1) {
        for v in &vs[i + 1..] {
            let s = span_set(f, &[u.clone(), v.clone()], n);
            if s.len() == (f.order() as usize).pow(2) {
                seen.insert(s);
            }
        }
    }
    seen.into_iter().collect()
}

fn log_q(q: usize, mut size: usize) -> u64 {
    let mut k = 0;
    while size > 1 {
        assert_eq!(size % q, 0);
        size /= q;
        k += 1;
    }
    k
}

fn naive_measure(fam: &DesignFamily) -> (u64, u64, usize) {
    let f = &fam.field;
    let n = fam.params.d + 1;
    let q = f.order() as usize;
    let members: Vec<_> = fam.members.iter().map(|m| span_set(f, m.rows(), n)).collect();
    let planes = all_planes(f, n);
    let (mut weak, mut strong) = (0, 0);
    for w in &planes {
        let dims: Vec<u64> = members.iter().map(|h| log_q(q, h.intersection(w).count())).collect();
        weak = weak.max(dims.iter().filter(|&&d| d > 0).count() as u64);
        strong = strong.max(dims.iter().sum());
    }
    (weak, strong, planes.len())
}

fn check_against_naive(fam: &DesignFamily, expected_planes: usize) {
    let (weak, strong, planes) = naive_measure(fam);
    assert_eq!(planes, expected_planes);
    let w = design_measure(fam, 2, DesignMode::Weak, DEFAULT_BUDGET).unwrap();
    let s = design_measure(fam, 2, DesignMode::Strong, DEFAULT_BUDGET).unwrap();
    assert_eq!((w.measured, s.measured), (weak, strong), "{}", fam.construction);
    assert_eq!(s.subspaces_checked as usize, planes);
    assert!(s.weak_le_strong);
}

#[test]
fn gk_mult_measure_matches_brute_force() {
    let f = GaloisField::new(5, 1).unwrap();
    let fam = gk_mult_design(&f, DesignParams { s: 2, r: 1, t: 2, d: 3 }).unwrap();
    // [4 choose 2]_5 = (5^4-1)(5^3-1) / ((5^2-1)(5-1))
    check_against_naive(&fam, 806);
}

#[test]
fn gk_frs_measure_matches_brute_force() {
    let f = GaloisField::new(7, 1).unwrap();
    let fam = gk_frs_design(&f, DesignParams { s: 2, r: 1, t: 2, d: 2 }).unwrap();
    // [3 choose 2]_7 = 7^2 + 7 + 1
    check_against_naive(&fam, 57);
}

/// Hyperplanes listed as all nonzero functionals up to scaling; generation tested by point counts.
fn naive_generator(space: &ProjectiveSpace, set: &LineSet) -> bool {
    let f = space.field();
    let n = space.n();
    let q = f.order() as usize;
    let lines: Vec<_> = set.lines().iter().map(|l| span_set(f, l.rows(), n)).collect();
    let mut seen = HashSet::new();
    for h in all_vectors(f, n).into_iter().skip(1) {
        let lead = *h.iter().find(|x| !x.is_zero()).unwrap();
        let inv = f.inv(lead).unwrap();
        let h: Vec<Elem> = h.iter().map(|&x| f.mul(x, inv)).collect();
        if !seen.insert(h.clone()) {
            continue;
        }
        let on: Vec<Vec<Elem>> = lines
            .iter()
            .flat_map(|l| l.iter().filter(|v| f.dot(v, &h).is_zero()).cloned())
            .collect();
        // The intersection spans the hyperplane iff its span has q^(n-1) vectors.
        let mut span: BTreeSet<Vec<Elem>> = BTreeSet::from([vec![Elem(0); n]]);
        for v in on {
            if span.contains(&v) {
                continue;
            }
            let extra: Vec<Vec<Elem>> = span
                .iter()
                .flat_map(|s| {
                    let v = &v;
                    f.elements().skip(1).map(move |c| s.iter().zip(v).map(|(&a, &b)| f.mul_add(a, c, b)).collect())
                })
                .collect();
            span.extend(extra);
        }
        if span.len() != q.pow(n as u32 - 1) {
            return false;
        }
    }
    true
}

#[test]
fn generator_test_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let s3 = ProjectiveSpace::new(3, GaloisField::new(3, 1).unwrap()).unwrap();
    let mut cases = vec![
        (ProjectiveSpace::new(2, GaloisField::new(2, 1).unwrap()).unwrap(), fano_concurrent().unwrap()),
    ];
    let s2 = ProjectiveSpace::new(2, GaloisField::parse("4").unwrap()).unwrap();
    cases.push((s2.clone(), plane_triangle(&s2).unwrap()));
    let s5 = ProjectiveSpace::new(3, GaloisField::new(5, 1).unwrap()).unwrap();
    let phi = default_injection(&s5).unwrap();
    cases.push((s5.clone(), higgledy_family(&s5, 5, &phi).unwrap()));
    for size in 2..=4 {
        for _ in 0..15 {
            cases.push((s3.clone(), random_line_set(&s3, size, &mut rng).unwrap()));
        }
    }
    let mut positives = 0;
    for (space, set) in &cases {
        let fast = is_generator_lineset(space, set).verdict;
        assert_eq!(fast, naive_generator(space, set), "{:?}", set.lines());
        positives += usize::from(fast);
    }
    assert!(positives > 0 && positives < cases.len());
}

#[test]
fn transversal_finders_agree_with_line_scan() {
    // In PG(3,q) the co-dimension-two subspaces are the lines themselves.
    let space = ProjectiveSpace::new(3, GaloisField::new(3, 1).unwrap()).unwrap();
    let f = space.field();
    let all: Vec<_> = space.lines(DEFAULT_BUDGET).unwrap().collect();
    let sets: Vec<_> = all.iter().map(|l| span_set(f, l.rows(), 4)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut yes, mut no) = (0, 0);
    for size in [3, 4, 5] {
        for _ in 0..20 {
            let set = random_line_set(&space, size, &mut rng).unwrap();
            let mine: Vec<_> = set.lines().iter().map(|l| span_set(f, l.rows(), 4)).collect();
            let naive = sets.iter().any(|h| mine.iter().all(|l| l.intersection(h).count() > 1));
            let geo = find_transversal_geometric(&space, &set, DEFAULT_BUDGET).unwrap();
            let pl = find_transversal_pluecker(&space, &set, DEFAULT_BUDGET).unwrap();
            assert_eq!(geo.is_some(), naive);
            assert_eq!(pl.witness().is_some(), naive);
            if let Some(w) = geo {
                let h = span_set(f, w.subspace.rows(), 4);
                assert!(mine.iter().all(|l| l.intersection(&h).count() > 1));
            }
            if naive { yes += 1 } else { no += 1 }
        }
    }
    assert!(yes > 0 && no > 0);
}
