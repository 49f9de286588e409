//! The acceptance suite, shared by the `selftest` subcommand and the
//! `acceptance` test target. Each criterion reports one status line.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constructions::{
    default_injection, diverted_tangent, fano_concurrent, gk_frs_design, gk_mult_design, higgledy_family,
    moment_tangent, pg3_examples, plane_triangle, tangent_at_infinity, DesignParams, LineSet, Pg3Variant,
};
use crate::error::{Error, Result};
use crate::field::{Elem, GaloisField};
use crate::pluecker::{self, GrassmannSpec};
use crate::projective::{next_combination, ProjectiveSpace, Subspace};
use crate::verification::{
    build_transversal_small, check_sufficiency, design_measure, find_transversal_geometric, find_transversal_pluecker,
    is_generator_lineset, pluecker_transversal_solutions, search_minimal_generator, small_set_bound,
    wronskian_degree_check, ConsistencyMonitor, DesignMode, SearchStrategy, WronskianMode,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The enumeration did not fit the configured budget; no verdict was produced.
    BudgetRefused,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::BudgetRefused => "BUDGET",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub status: Status,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<6} {:>2}  {} [{:.2}s / {}s] {}",
            self.status,
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AcceptanceConfig {
    pub budget: u64,
    pub seed: u64,
}

impl Default for AcceptanceConfig {
    fn default() -> Self {
        AcceptanceConfig { budget: crate::DEFAULT_BUDGET, seed: 0x5eed }
    }
}

pub const CRITERIA: [(u8, &str, u64); 13] = [
    (1, "triangle generates PG(2,q); two lines never do", 1),
    (2, "three concurrent lines generate PG(2,2)", 1),
    (3, "quadric ruling lines fail, plus an exterior line generate", 5),
    (4, "2d-1 diverted tangents: generator, no transversal", 60),
    (5, "diverted tangents equal tangents when char > d", 1),
    (6, "char = d: moment tangents have a unique Pluecker transversal", 1),
    (7, "small line sets have constructive transversals", 30),
    (8, "no generator set of 3 lines in PG(3,4)", 600),
    (9, "geometric and Pluecker transversal finders agree", 300),
    (10, "Grassmannian degree and dimension formulas", 1),
    (11, "GK strong-design bounds", 30),
    (12, "GK determinant degree bounds", 10),
    (13, "global consistency of the transversal criterion", 1),
];

type Check = std::result::Result<String, Outcome>;

enum Outcome {
    Fail(String),
    Budget(String),
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Outcome::Budget(e.to_string()),
            other => Outcome::Fail(other.to_string()),
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), Outcome> {
    if cond {
        Ok(())
    } else {
        Err(Outcome::Fail(msg()))
    }
}

fn space(d: usize, q: &str) -> Result<ProjectiveSpace> {
    ProjectiveSpace::new(d, GaloisField::parse(q)?)
}

/// A uniformly random vector pair of rank two, as a line.
pub fn random_line(space: &ProjectiveSpace, rng: &mut impl Rng) -> Subspace {
    let q = space.q();
    loop {
        let a: Vec<Elem> = (0..space.n()).map(|_| Elem(rng.gen_range(0..q))).collect();
        let b: Vec<Elem> = (0..space.n()).map(|_| Elem(rng.gen_range(0..q))).collect();
        if let Ok(l) = space.line(&a, &b) {
            return l;
        }
    }
}

/// `size` distinct random lines.
pub fn random_line_set(space: &ProjectiveSpace, size: usize, rng: &mut impl Rng) -> Result<LineSet> {
    let mut lines: Vec<Subspace> = Vec::with_capacity(size);
    while lines.len() < size {
        let l = random_line(space, rng);
        if !lines.contains(&l) {
            lines.push(l);
        }
    }
    LineSet::new(space, "random", lines)
}

fn sufficiency(
    space: &ProjectiveSpace,
    set: &LineSet,
    budget: u64,
    monitor: &mut ConsistencyMonitor,
    context: &str,
) -> std::result::Result<bool, Outcome> {
    let v = check_sufficiency(space, set, budget)?;
    monitor.record_verdict(context, &v, set.len(), space.q());
    Ok(v.generator)
}

fn c1(cfg: &AcceptanceConfig, monitor: &mut ConsistencyMonitor) -> Check {
    let mut pairs = 0;
    for q in ["2", "3", "4", "5", "7"] {
        let s = space(2, q)?;
        let tri = plane_triangle(&s)?;
        ensure(sufficiency(&s, &tri, cfg.budget, monitor, "triangle")?, || format!("triangle fails over GF({q})"))?;
        let lines: Vec<Subspace> = s.lines(cfg.budget)?.collect();
        let mut idx = vec![0, 1];
        loop {
            let pair = LineSet::new(&s, "pair", vec![lines[idx[0]].clone(), lines[idx[1]].clone()])?;
            let r = is_generator_lineset(&s, &pair);
            let common = s.meet(&pair.lines()[0], &pair.lines()[1])?.expect("two lines of a plane meet");
            let through = match &r.counterexample {
                Some(h) => common.is_contained_in(s.field(), &s.hyperplane_subspace(h)?),
                None => false,
            };
            ensure(!r.verdict && through, || format!("pair {idx:?} over GF({q})"))?;
            let t = find_transversal_geometric(&s, &pair, cfg.budget)?.is_some();
            monitor.record("pair", false, t, 2, s.q());
            pairs += 1;
            if !next_combination(&mut idx, lines.len()) {
                break;
            }
        }
    }
    Ok(format!("5 triangles generate; {pairs} line pairs all fail through their common point"))
}

fn c2(cfg: &AcceptanceConfig, monitor: &mut ConsistencyMonitor) -> Check {
    let s = space(2, "2")?;
    let fano = fano_concurrent()?;
    ensure(sufficiency(&s, &fano, cfg.budget, monitor, "fano")?, || "not a generator set".into())?;
    Ok("generator set of PG(2,2)".into())
}

fn c3(cfg: &AcceptanceConfig, monitor: &mut ConsistencyMonitor) -> Check {
    let mut parts = Vec::new();
    let mut failed = false;
    for q in ["2", "3"] {
        let s = space(3, q)?;
        let three = pg3_examples(&s, Pg3Variant::ThreeRuling)?;
        let three_generates = sufficiency(&s, &three, cfg.budget, monitor, "three-ruling")?;
        let four_generates = match pg3_examples(&s, Pg3Variant::PlusExterior) {
            Ok(four) => Some(sufficiency(&s, &four, cfg.budget, monitor, "plus-exterior")?),
            Err(Error::SearchExhausted(_)) => None,
            Err(e) => return Err(e.into()),
        };
        failed |= three_generates || four_generates != Some(true);
        parts.push(format!(
            "q={q}: three ruling lines {}, plus exterior line {}",
            if three_generates { "GENERATE" } else { "fail" },
            match four_generates {
                Some(true) => "generate",
                Some(false) => "FAIL",
                None => "NOT FOUND",
            }
        ));
    }
    let detail = parts.join("; ");
    if failed {
        return Err(Outcome::Fail(detail));
    }
    Ok(detail)
}

fn c4(cfg: &AcceptanceConfig, monitor: &mut ConsistencyMonitor) -> Check {
    let mut done = Vec::new();
    for (d, q) in [(2, "5"), (3, "5"), (3, "7"), (4, "9"), (4, "11")] {
        let s = space(d, q)?;
        let fam = higgledy_family(&s, 2 * d - 1, &default_injection(&s)?)?;
        let generator = is_generator_lineset(&s, &fam).verdict;
        let geo = find_transversal_geometric(&s, &fam, cfg.budget)?;
        let plu = find_transversal_pluecker(&s, &fam, cfg.budget)?;
        monitor.record("diverted", generator, geo.is_some(), fam.len(), s.q());
        ensure(generator && geo.is_none() && plu.witness().is_none(), || {
            format!("(d,q)=({d},{q}): generator={generator} geometric={:?} pluecker={:?}", geo.is_some(), plu.witness().is_some())
        })?;
        done.push(format!("({d},{q})"));
    }
    Ok(format!("{} all hold", done.join(" ")))
}

fn c5(_: &AcceptanceConfig, _: &mut ConsistencyMonitor) -> Check {
    for (d, q) in [(3, "7"), (4, "11")] {
        let s = space(d, q)?;
        let phi = default_injection(&s)?;
        for t in s.field().elements() {
            ensure(diverted_tangent(&s, t, &phi)? == moment_tangent(&s, t), || format!("d={d} q={q} t={t}"))?;
        }
    }
    Ok("every t in GF(7) (d=3) and GF(11) (d=4)".into())
}

fn describe(v: &pluecker::PlueckerVector) -> String {
    let t: Vec<String> = v.triples().iter().map(|(i, j, x)| format!("H{i}{j}={x}")).collect();
    format!("({})", t.join(","))
}

fn c6(_: &AcceptanceConfig, _: &mut ConsistencyMonitor) -> Check {
    let s = space(3, "3")?;
    let tangents: Vec<Subspace> = s.field().elements().map(|t| moment_tangent(&s, t)).collect();
    let affine = LineSet::new(&s, "moment-tangents", tangents.clone())?;
    let sols = pluecker_transversal_solutions(&s, &affine)?;
    let expected = s.cut_out(&[
        vec![Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ZERO],
        vec![Elem::ZERO, Elem::ZERO, Elem::ZERO, Elem::ONE],
    ])?;
    let unique_h03 = sols.len() == 1
        && sols[0].triples() == [(0, 3, Elem::ONE)]
        && Some(pluecker::pluecker_decompose(&s, &sols[0])?) == expected;
    if unique_h03 {
        return Ok("unique solution H03, i.e. x0 = x3 = 0".into());
    }
    // Supplementary: with the tangent at (0,0,0,1) included the solution is unique.
    let mut all = tangents;
    all.push(tangent_at_infinity(&s));
    let with_inf = pluecker_transversal_solutions(&s, &LineSet::new(&s, "moment-tangents+inf", all)?)?;
    Err(Outcome::Fail(format!(
        "{} solutions for the 3 affine tangents: {}; adding the tangent at infinity leaves {}: {}",
        sols.len(),
        sols.iter().map(describe).collect::<Vec<_>>().join(" "),
        with_inf.len(),
        with_inf.iter().map(describe).collect::<Vec<_>>().join(" ")
    )))
}

fn c7(cfg: &AcceptanceConfig, monitor: &mut ConsistencyMonitor) -> Check {
    let mut parts = Vec::new();
    for (d, q) in [(3, "5"), (4, "5")] {
        let s = space(d, q)?;
        let size = small_set_bound(d);
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ d as u64);
        let sets = (0..1000).map(|_| random_line_set(&s, size, &mut rng)).collect::<Result<Vec<_>>>()?;
        let results: Vec<Result<(bool, bool)>> = sets
            .par_iter()
            .map(|set| {
                let w = build_transversal_small(&s, set)?;
                let ok = w.subspace.rank() == d - 1
                    && set.lines().iter().all(|l| matches!(s.meet(&w.subspace, l), Ok(Some(_))));
                Ok((ok, is_generator_lineset(&s, set).verdict))
            })
            .collect();
        for (i, r) in results.into_iter().enumerate() {
            let (ok, generator) = r?;
            ensure(ok, || format!("witness {i} in PG({d},{q}) failed re-verification"))?;
            monitor.record("small set", generator, true, size, s.q());
        }
        parts.push(format!("1000 sets of {size} lines in PG({d},{q})"));
    }
    Ok(parts.join("; "))
}

fn c8(cfg: &AcceptanceConfig, monitor: &mut ConsistencyMonitor) -> Check {
    let s = space(3, "4")?;
    let r = search_minimal_generator(&s, 3, SearchStrategy::Exhaustive, cfg.budget)?;
    monitor.merge(r.monitor.clone());
    let examined: u64 = r.sizes.iter().map(|z| z.subsets_examined).sum();
    let pruned: u64 = r.sizes.iter().map(|z| z.pruned_by_certificate).sum();
    if let Some(g) = &r.generator {
        return Err(Outcome::Fail(format!("found a generator set of size {}: lines {g:?}", g.len())));
    }
    if let Some(p) = &r.partial {
        return Err(Outcome::Budget(format!(
            "budget reached: none of size <= {} ; size {} certified for first line index < {} ({} subsets)",
            r.certified_none_up_to, p.size, p.first_index_below, p.subsets_examined
        )));
    }
    ensure(r.certified_none_up_to >= 3, || format!("certified only up to {}", r.certified_none_up_to))?;
    Ok(format!("{} lines; {examined} subsets of size <= 3 examined, {pruned} refuted by cached transversals", r.line_count))
}

fn agree(space: &ProjectiveSpace, set: &LineSet, budget: u64) -> Result<(bool, bool, bool)> {
    let geo = find_transversal_geometric(space, set, budget)?.is_some();
    let plu = find_transversal_pluecker(space, set, budget)?.witness().is_some();
    let generator = is_generator_lineset(space, set).verdict;
    Ok((geo == plu, generator, geo))
}

fn c9(cfg: &AcceptanceConfig, monitor: &mut ConsistencyMonitor) -> Check {
    let s = space(3, "2")?;
    let lines: Vec<Subspace> = s.lines(cfg.budget)?.collect();
    let mut subsets = Vec::new();
    for k in 1..=4 {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            subsets.push(idx.clone());
            if !next_combination(&mut idx, lines.len()) {
                break;
            }
        }
    }
    let exhaustive: Vec<Result<(bool, bool, bool, usize)>> = subsets
        .par_iter()
        .map(|idx| {
            let set = LineSet::new(&s, "subset", idx.iter().map(|&i| lines[i].clone()).collect())?;
            agree(&s, &set, cfg.budget).map(|(a, g, t)| (a, g, t, idx.len()))
        })
        .collect();
    let mut disagreements = 0;
    for r in exhaustive {
        let (a, g, t, k) = r?;
        disagreements += usize::from(!a);
        monitor.record("PG(3,2) subsets", g, t, k, 2);
    }
    let s5 = space(3, "5")?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let sets = (0..500)
        .map(|_| {
            let k = rng.gen_range(2..=6);
            random_line_set(&s5, k, &mut rng)
        })
        .collect::<Result<Vec<_>>>()?;
    let random: Vec<Result<(bool, bool, bool, usize)>> =
        sets.par_iter().map(|set| agree(&s5, set, cfg.budget).map(|(a, g, t)| (a, g, t, set.len()))).collect();
    for r in random {
        let (a, g, t, k) = r?;
        disagreements += usize::from(!a);
        monitor.record("PG(3,5) random", g, t, k, 5);
    }
    ensure(disagreements == 0, || format!("{disagreements} disagreements"))?;
    Ok(format!("{} subsets of PG(3,2) and 500 random sets in PG(3,5)", subsets.len()))
}

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

fn c10(_: &AcceptanceConfig, _: &mut ConsistencyMonitor) -> Check {
    for d in 2..=10u64 {
        let got = GrassmannSpec::new(2, d as u32 - 1)?.degree();
        let want = binomial(2 * d - 1, d) / BigUint::from(2 * d - 1);
        ensure(got == want, || format!("d={d}: {got} != {want}"))?;
    }
    let g = GrassmannSpec::new(2, 2)?;
    ensure(g.degree() == BigUint::from(2u32) && g.dim() == 4, || "G(2,2)".into())?;
    Ok("degree(2,d-1) = C(2d-1,d)/(2d-1) for d = 2..10; G(2,2): degree 2, dim 4".into())
}

fn c11(cfg: &AcceptanceConfig, _: &mut ConsistencyMonitor) -> Check {
    let frs = gk_frs_design(&GaloisField::parse("7")?, DesignParams { s: 2, r: 1, t: 2, d: 3 })?;
    let mult = gk_mult_design(&GaloisField::parse("11")?, DesignParams { s: 2, r: 1, t: 2, d: 3 })?;
    let mut parts = Vec::new();
    for (fam, limit) in [(&frs, 5u64), (&mult, 4)] {
        let strong = design_measure(fam, 2, DesignMode::Strong, cfg.budget)?;
        let weak = design_measure(fam, 2, DesignMode::Weak, cfg.budget)?;
        ensure(strong.measured <= limit && strong.satisfied && weak.measured <= strong.measured, || {
            format!("{}: strong {} weak {} (limit {limit})", fam.construction, strong.measured, weak.measured)
        })?;
        ensure(strong.weak_le_strong, || format!("{}: weak exceeds strong on some W", fam.construction))?;
        parts.push(format!(
            "{} strong A = {} <= {limit}, weak A = {} ({} W)",
            fam.construction, strong.measured, weak.measured, strong.subspaces_checked
        ));
    }
    Ok(parts.join("; "))
}

fn c12(cfg: &AcceptanceConfig, _: &mut ConsistencyMonitor) -> Check {
    let f = GaloisField::parse("11")?;
    let (d, t) = (5, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut parts = Vec::new();
    for (mode, limit) in [(WronskianMode::Frs, 9), (WronskianMode::Mult, 8)] {
        let mut max_deg = 0;
        let mut n = 0;
        while n < 200 {
            let basis: Vec<Vec<Elem>> =
                (0..2).map(|_| (0..=d).map(|_| Elem(rng.gen_range(0..11))).collect()).collect();
            if crate::linalg::rank(&f, &basis) < 2 {
                continue;
            }
            n += 1;
            let r = wronskian_degree_check(&f, &basis, mode, d, t)?;
            ensure(r.bound == limit && r.holds(), || format!("{mode:?}: degree {:?} for basis {basis:?}", r.degree))?;
            max_deg = max_deg.max(r.degree.unwrap_or(0));
        }
        parts.push(format!("{mode:?}: max degree {max_deg} <= {limit}, never zero"));
    }
    Ok(parts.join("; "))
}

fn c13(monitor: &ConsistencyMonitor) -> Check {
    ensure(monitor.observations > 0, || "no observations".into())?;
    ensure(monitor.is_consistent(), || monitor.violations.iter().take(5).cloned().collect::<Vec<_>>().join("; "))?;
    Ok(format!(
        "{} observations, {} generator sets with a transversal, 0 violations",
        monitor.observations, monitor.generator_with_transversal
    ))
}

/// Runs the selected criteria (all when `only` is empty) in order, reporting each as it finishes.
pub fn run(cfg: &AcceptanceConfig, only: &[u8], mut on_result: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    let mut monitor = ConsistencyMonitor::new();
    let mut out = Vec::new();
    for &(id, title, limit) in &CRITERIA {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let check = match id {
            1 => c1(cfg, &mut monitor),
            2 => c2(cfg, &mut monitor),
            3 => c3(cfg, &mut monitor),
            4 => c4(cfg, &mut monitor),
            5 => c5(cfg, &mut monitor),
            6 => c6(cfg, &mut monitor),
            7 => c7(cfg, &mut monitor),
            8 => c8(cfg, &mut monitor),
            9 => c9(cfg, &mut monitor),
            10 => c10(cfg, &mut monitor),
            11 => c11(cfg, &mut monitor),
            12 => c12(cfg, &mut monitor),
            _ => c13(&monitor),
        };
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(limit);
        let (mut status, mut detail) = match check {
            Ok(d) => (Status::Pass, d),
            Err(Outcome::Fail(d)) => (Status::Fail, d),
            Err(Outcome::Budget(d)) => (Status::BudgetRefused, d),
        };
        if status == Status::Pass && elapsed > limit {
            status = Status::Fail;
            detail = format!("time limit exceeded; {detail}");
        }
        let r = CriterionResult { id, title, status, detail, elapsed, limit };
        on_result(&r);
        out.push(r);
    }
    out
}
