//! Smallest generator sets among all lines of PG(d,q).
//!
//! Every failing hyperplane Π of a subset yields a co-dimension-two H ⊂ Π
//! containing all of the subset's points on Π, hence a transversal. Such H are
//! cached: a later subset whose lines all meet H, and for which some
//! hyperplane through H contains none of its lines, fails at that hyperplane.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::LineSet;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg::{self, EchelonBasis};
use crate::projective::{next_combination, ProjectiveSpace, RrefEnumerator, Subspace};

use super::monitor::ConsistencyMonitor;
use super::transversal::{find_transversal_geometric, meets};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SearchStrategy {
    Exhaustive,
    RandomRestart { seed: u64, samples: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeSummary {
    pub size: usize,
    /// `C(#lines, size)` as a decimal string.
    pub subsets_total: String,
    pub subsets_examined: u64,
    pub pruned_by_certificate: u64,
    pub generator_found: bool,
    /// Every subset of this size was examined (or the first generator in lexicographic order was reached).
    pub complete: bool,
}

/// Subsets of the interrupted size whose first line index is below `first_index_below` were all examined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialCertification {
    pub size: usize,
    pub first_index_below: usize,
    pub subsets_examined: u64,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub strategy: SearchStrategy,
    pub line_count: usize,
    pub sizes: Vec<SizeSummary>,
    /// Indices into the enumeration of all lines.
    pub generator: Option<Vec<usize>>,
    pub generator_lines: Option<LineSet>,
    /// No generator set of size `<= certified_none_up_to` exists (exhaustive strategy only).
    pub certified_none_up_to: usize,
    pub partial: Option<PartialCertification>,
    pub monitor: ConsistencyMonitor,
}

struct Certificate {
    meets: Vec<u64>,
    hyperplanes: Vec<u32>,
}

const CACHE_SIZE: usize = 32;

/// Line/hyperplane incidence for every line of the space.
struct Incidence<'a> {
    space: &'a ProjectiveSpace,
    lines: Vec<Subspace>,
    hyperplanes: Vec<Vec<Elem>>,
    hyperplane_bases: Vec<Vec<Vec<Elem>>>,
    contained: Vec<bool>,
    /// `points[(l * H + h) * n ..][..n]` is `ℓ ∩ Π_h` when the line is not contained.
    points: Vec<Elem>,
}

impl<'a> Incidence<'a> {
    fn new(space: &'a ProjectiveSpace, budget: u64) -> Result<Self> {
        let f = space.field();
        let n = space.n();
        let lines: Vec<Subspace> = space.lines(budget)?.collect();
        let hyperplanes: Vec<Vec<Elem>> = {
            let mut e = RrefEnumerator::new(n, 1, space.q());
            let mut out = Vec::new();
            while let Some(m) = e.next_matrix() {
                out.push(m[0].clone());
            }
            out
        };
        let cells = lines.len() as u64 * hyperplanes.len() as u64;
        if cells > budget {
            return Err(Error::BudgetExceeded { count: cells.to_string(), budget });
        }
        let hyperplane_bases = hyperplanes.iter().map(|y| linalg::nullspace(f, std::slice::from_ref(y), n)).collect();
        let hn = hyperplanes.len();
        let mut contained = vec![false; lines.len() * hn];
        let mut points = vec![Elem::ZERO; lines.len() * hn * n];
        for (l, line) in lines.iter().enumerate() {
            let (a, b) = (&line.rows()[0], &line.rows()[1]);
            for (h, y) in hyperplanes.iter().enumerate() {
                let (ya, yb) = (f.dot(y, a), f.dot(y, b));
                let cell = l * hn + h;
                if ya.is_zero() && yb.is_zero() {
                    contained[cell] = true;
                } else {
                    let p = super::intersection_point(f, ya, yb, a, b);
                    points[cell * n..(cell + 1) * n].copy_from_slice(&p);
                }
            }
        }
        Ok(Incidence { space, lines, hyperplanes, hyperplane_bases, contained, points })
    }

    fn hn(&self) -> usize {
        self.hyperplanes.len()
    }

    /// Fills `basis` with the subset's points on hyperplane `h`; returns the rank.
    fn rank_at(&self, subset: &[usize], h: usize, basis: &mut EchelonBasis) -> usize {
        let f = self.space.field();
        let n = self.space.n();
        basis.clear();
        for &l in subset {
            let cell = l * self.hn() + h;
            if self.contained[cell] {
                for r in self.lines[l].rows() {
                    basis.insert_slice(f, r);
                }
            } else {
                basis.insert_slice(f, &self.points[cell * n..(cell + 1) * n]);
            }
        }
        basis.rank()
    }

    fn first_failure(&self, subset: &[usize], basis: &mut EchelonBasis) -> Option<usize> {
        (0..self.hn()).find(|&h| self.rank_at(subset, h, basis) < self.space.dim())
    }

    /// Extends the deficient span on hyperplane `h` to a co-dimension-two subspace inside it.
    fn certificate(&self, h: usize, basis: &mut EchelonBasis) -> Certificate {
        let f = self.space.field();
        let d = self.space.dim();
        for r in &self.hyperplane_bases[h] {
            if basis.rank() == d - 1 {
                break;
            }
            basis.insert_slice(f, r);
        }
        let mut rows = basis.rows().to_vec();
        let pattern = linalg::rref_in_place(f, &mut rows);
        let free: Vec<usize> = (0..self.space.n()).filter(|c| !pattern.contains(c)).collect();
        let mut meets_bits = vec![0u64; self.lines.len().div_ceil(64)];
        for (l, line) in self.lines.iter().enumerate() {
            if meets(f, &rows, &pattern, free[0], free[1], &line.rows()[0], &line.rows()[1]) {
                meets_bits[l / 64] |= 1 << (l % 64);
            }
        }
        let hyperplanes = (0..self.hn())
            .filter(|&g| rows.iter().all(|r| f.dot(&self.hyperplanes[g], r).is_zero()))
            .map(|g| g as u32)
            .collect();
        Certificate { meets: meets_bits, hyperplanes }
    }

    /// Whether `c` proves the subset is not a generator set.
    fn refutes(&self, c: &Certificate, subset: &[usize]) -> bool {
        subset.iter().all(|&l| c.meets[l / 64] >> (l % 64) & 1 == 1)
            && c.hyperplanes.iter().any(|&g| subset.iter().all(|&l| !self.contained[l * self.hn() + g as usize]))
    }
}

#[derive(Default)]
struct TaskResult {
    examined: u64,
    pruned: u64,
    generator: Option<Vec<usize>>,
    monitor: ConsistencyMonitor,
}

/// Scans the k-subsets with smallest element `first` in lexicographic order, stopping at the first generator.
fn run_task(inc: &Incidence, first: usize, k: usize) -> TaskResult {
    let lcount = inc.lines.len();
    let q = inc.space.q();
    let mut out = TaskResult::default();
    let mut cache: Vec<Certificate> = Vec::with_capacity(CACHE_SIZE);
    let mut next_slot = 0;
    let mut basis = EchelonBasis::new();
    let tail_len = k - 1;
    if lcount - first - 1 < tail_len {
        return out;
    }
    let mut tail: Vec<usize> = (0..tail_len).collect();
    let mut subset = vec![0usize; k];
    loop {
        subset[0] = first;
        for (s, &t) in subset[1..].iter_mut().zip(&tail) {
            *s = first + 1 + t;
        }
        out.examined += 1;
        // newest certificates first
        let hit = (0..cache.len()).any(|i| {
            let idx = (next_slot + cache.len() - 1 - i) % cache.len();
            inc.refutes(&cache[idx], &subset)
        });
        if hit {
            out.pruned += 1;
            out.monitor.record("search", false, true, k, q);
        } else {
            match inc.first_failure(&subset, &mut basis) {
                Some(h) => {
                    let cert = inc.certificate(h, &mut basis);
                    let transversal = subset.iter().all(|&l| cert.meets[l / 64] >> (l % 64) & 1 == 1);
                    out.monitor.record("search", false, transversal, k, q);
                    if cache.len() < CACHE_SIZE {
                        cache.push(cert);
                        next_slot = cache.len() % CACHE_SIZE;
                    } else {
                        cache[next_slot] = cert;
                        next_slot = (next_slot + 1) % CACHE_SIZE;
                    }
                }
                None => {
                    out.generator = Some(subset.clone());
                    return out;
                }
            }
        }
        if tail_len == 0 || !next_combination(&mut tail, lcount - first - 1) {
            return out;
        }
    }
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

fn record_generator(space: &ProjectiveSpace, set: &LineSet, budget: u64, monitor: &mut ConsistencyMonitor) -> Result<()> {
    let transversal = find_transversal_geometric(space, set, budget)?.is_some();
    monitor.record("search", true, transversal, set.len(), space.q());
    Ok(())
}

/// Looks for the smallest generator set of lines of size `<= max_size`.
pub fn search_minimal_generator(
    space: &ProjectiveSpace,
    max_size: usize,
    strategy: SearchStrategy,
    budget: u64,
) -> Result<SearchReport> {
    let inc = Incidence::new(space, budget)?;
    let lcount = inc.lines.len();
    let mut report = SearchReport {
        strategy,
        line_count: lcount,
        sizes: Vec::new(),
        generator: None,
        generator_lines: None,
        certified_none_up_to: 0,
        partial: None,
        monitor: ConsistencyMonitor::new(),
    };
    match strategy {
        SearchStrategy::Exhaustive => exhaustive(&inc, max_size, budget, &mut report)?,
        SearchStrategy::RandomRestart { seed, samples } => random_restart(&inc, max_size, seed, samples, &mut report),
    }
    if let Some(g) = &report.generator {
        let set = LineSet::new(space, "search", g.iter().map(|&i| inc.lines[i].clone()).collect())?;
        record_generator(space, &set, budget, &mut report.monitor)?;
        report.generator_lines = Some(set);
    }
    Ok(report)
}

fn exhaustive(inc: &Incidence, max_size: usize, budget: u64, report: &mut SearchReport) -> Result<()> {
    let lcount = inc.lines.len();
    let mut remaining = budget;
    for k in 1..=max_size.min(lcount) {
        let total = binomial(lcount, k);
        // Largest prefix of first indices whose subsets fit in the remaining budget.
        let mut allowed = 0;
        let mut planned = 0u64;
        for first in 0..lcount {
            let c = binomial(lcount - first - 1, k - 1).to_u64().unwrap_or(u64::MAX);
            if planned.saturating_add(c) > remaining {
                break;
            }
            planned += c;
            allowed = first + 1;
        }
        let results: Vec<TaskResult> = (0..allowed).into_par_iter().map(|first| run_task(inc, first, k)).collect();
        let winner = results.iter().position(|r| r.generator.is_some());
        let used = winner.map_or(results.len(), |w| w + 1);
        let mut summary = SizeSummary {
            size: k,
            subsets_total: total.to_string(),
            subsets_examined: 0,
            pruned_by_certificate: 0,
            generator_found: winner.is_some(),
            complete: winner.is_some() || allowed == lcount,
        };
        for r in results.into_iter().take(used) {
            summary.subsets_examined += r.examined;
            summary.pruned_by_certificate += r.pruned;
            report.monitor.merge(r.monitor);
            if r.generator.is_some() {
                report.generator = r.generator;
            }
        }
        remaining -= summary.subsets_examined.min(remaining);
        let complete = summary.complete;
        let examined = summary.subsets_examined;
        report.sizes.push(summary);
        if report.generator.is_some() {
            return Ok(());
        }
        if !complete {
            report.partial = Some(PartialCertification { size: k, first_index_below: allowed, subsets_examined: examined });
            return Ok(());
        }
        report.certified_none_up_to = k;
    }
    Ok(())
}

fn random_restart(inc: &Incidence, max_size: usize, seed: u64, samples: u64, report: &mut SearchReport) {
    let lcount = inc.lines.len();
    let q = inc.space.q();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis = EchelonBasis::new();
    for k in 1..=max_size.min(lcount) {
        let mut summary = SizeSummary {
            size: k,
            subsets_total: binomial(lcount, k).to_string(),
            subsets_examined: 0,
            pruned_by_certificate: 0,
            generator_found: false,
            complete: false,
        };
        for _ in 0..samples {
            let mut subset = sample(&mut rng, lcount, k).into_vec();
            subset.sort_unstable();
            summary.subsets_examined += 1;
            if inc.first_failure(&subset, &mut basis).is_none() {
                summary.generator_found = true;
                report.generator = Some(subset);
                break;
            }
            report.monitor.record("random search", false, true, k, q);
        }
        report.sizes.push(summary);
        if report.generator.is_some() {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaloisField;
    use crate::verification::is_generator_lineset;
    use crate::DEFAULT_BUDGET;

    fn pg(d: usize, q: &str) -> ProjectiveSpace {
        ProjectiveSpace::new(d, GaloisField::parse(q).unwrap()).unwrap()
    }

    #[test]
    fn planes_need_three_lines() {
        for q in ["2", "3", "4"] {
            let s = pg(2, q);
            let r = search_minimal_generator(&s, 4, SearchStrategy::Exhaustive, DEFAULT_BUDGET).unwrap();
            assert_eq!(r.certified_none_up_to, 2);
            let g = r.generator_lines.unwrap();
            assert_eq!(g.len(), 3);
            assert!(is_generator_lineset(&s, &g).verdict);
            assert!(r.monitor.is_consistent());
        }
    }

    #[test]
    fn pruned_and_unpruned_agree_with_the_plain_check() {
        let s = pg(3, "2");
        let inc = Incidence::new(&s, DEFAULT_BUDGET).unwrap();
        let mut basis = EchelonBasis::new();
        let all = inc.lines.clone();
        // every refutation by a cached certificate is a genuine failure
        let mut cache = Vec::new();
        let mut subset = vec![0, 1, 2];
        let mut checked = 0;
        loop {
            let set = LineSet::new(&s, "t", subset.iter().map(|&i| all[i].clone()).collect()).unwrap();
            let plain = is_generator_lineset(&s, &set).verdict;
            if cache.iter().any(|c| inc.refutes(c, &subset)) {
                assert!(!plain);
            }
            match inc.first_failure(&subset, &mut basis) {
                Some(h) => {
                    assert!(!plain);
                    cache.push(inc.certificate(h, &mut basis));
                    if cache.len() > 8 {
                        cache.remove(0);
                    }
                }
                None => assert!(plain),
            }
            checked += 1;
            if checked > 3000 || !next_combination(&mut subset, all.len()) {
                break;
            }
        }
    }

    #[test]
    fn budget_gives_partial_certification() {
        let s = pg(3, "4");
        let r = search_minimal_generator(&s, 3, SearchStrategy::Exhaustive, 150_000).unwrap();
        assert!(r.generator.is_none());
        let p = r.partial.unwrap();
        assert_eq!(p.size, 3);
        assert_eq!(p.first_index_below, 1);
        assert_eq!(p.subsets_examined, 356 * 355 / 2);
        assert_eq!(r.certified_none_up_to, 2);
    }

    #[test]
    fn random_restart_is_reproducible() {
        let s = pg(2, "3");
        let strat = SearchStrategy::RandomRestart { seed: 7, samples: 200 };
        let a = search_minimal_generator(&s, 3, strat, DEFAULT_BUDGET).unwrap();
        let b = search_minimal_generator(&s, 3, strat, DEFAULT_BUDGET).unwrap();
        assert_eq!(a.generator, b.generator);
        assert_eq!(a.sizes, b.sizes);
        assert_eq!(a.certified_none_up_to, 0);
        assert_eq!(a.generator.map(|g| g.len()), Some(3));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(357, 3), BigUint::from(7_519_610u32));
        assert_eq!(binomial(3, 5), BigUint::from(0u32));
    }
}
