use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use higgledy::acceptance::{self, AcceptanceConfig, Status};
use higgledy::constructions::{
    default_injection, fano_concurrent, gk_frs_design, gk_mult_design, higgledy_family, moment_tangent, pg3_examples,
    plane_triangle, tangent_at_infinity, Pg3Variant,
};
use higgledy::report::{
    property, DesignFamilyDoc, DesignResult, Envelope, GeneratorResult, LineSetDoc, SearchResult, SufficiencyResult,
    TransversalResult, DESIGN_FAMILY_KIND, LINE_SET_KIND,
};
use higgledy::verification::{
    check_sufficiency, design_measure, find_transversal_geometric, find_transversal_pluecker, is_generator_lineset,
    search_minimal_generator, wronskian_degree_check, DesignMode, SearchStrategy, WronskianMode,
};
use higgledy::{DesignFamily, DesignParams, Elem, GaloisField, Injection, LineSet, ProjectiveSpace, DEFAULT_BUDGET};

const EXIT_BOUND_VIOLATED: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "higgledy", version, about = "Construct and exhaustively verify line sets and subspace designs over GF(q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a line set or design family as JSON.
    Construct(ConstructArgs),
    /// Check a property of a constructed line set or design family.
    Verify(VerifyArgs),
    /// Measure a GK design family or check its determinant degrees.
    Design(DesignArgs),
    /// Look for the smallest generator set among all lines.
    Search(SearchArgs),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Args, Serialize, Clone)]
struct Output {
    /// Enumeration budget; larger enumerations are refused (exit 3).
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
    /// Embed wall time in the report (breaks byte-identical output).
    #[arg(long)]
    #[serde(skip)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ConstructName {
    Diverted,
    Tangents,
    Triangle,
    Fano,
    Pg3ThreeRuling,
    Pg3PlusExterior,
    Pg3PlusTwoSecants,
    GkFrs,
    GkMult,
}

#[derive(Args, Serialize)]
struct ConstructArgs {
    #[arg(value_enum)]
    name: ConstructName,
    /// Field order as `p`, `p^k` or `q`.
    #[arg(long, default_value = "2")]
    field: String,
    /// Projective dimension d (for designs: maximum polynomial degree).
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Number of tangents; defaults to 2d-1.
    #[arg(long)]
    count: Option<usize>,
    /// Injection values φ(0..=d) as element indices, comma separated.
    #[arg(long, value_delimiter = ',')]
    phi: Option<Vec<u32>>,
    /// Also include the tangent at (0,...,0,1) (tangents only).
    #[arg(long)]
    with_infinity: bool,
    #[arg(long, default_value_t = 2)]
    s: usize,
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = 2)]
    t: usize,
    #[command(flatten)]
    #[serde(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum VerifyWhat {
    Generator,
    Transversal,
    Sufficiency,
    Design,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Method {
    Geometric,
    Pluecker,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ModeArg {
    Weak,
    Strong,
}

impl From<ModeArg> for DesignMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Weak => DesignMode::Weak,
            ModeArg::Strong => DesignMode::Strong,
        }
    }
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    #[arg(value_enum)]
    what: VerifyWhat,
    /// JSON document produced by `construct`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Geometric)]
    method: Method,
    /// Dimension of the test subspaces W (design only).
    #[arg(long, default_value_t = 2)]
    s: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Strong)]
    mode: ModeArg,
    /// Exit 2 when the checked claim fails.
    #[arg(long)]
    assert_bound: bool,
    #[command(flatten)]
    #[serde(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum DesignAction {
    Measure,
    Wronskian,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum DesignConstruction {
    GkFrs,
    GkMult,
}

#[derive(Args, Serialize)]
struct DesignArgs {
    #[arg(value_enum)]
    action: DesignAction,
    #[arg(long, value_enum, default_value_t = DesignConstruction::GkMult)]
    construction: DesignConstruction,
    /// Read the family from a `construct` document instead of building it.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value = "11")]
    field: String,
    /// Maximum polynomial degree d.
    #[arg(long, default_value_t = 3)]
    dim: usize,
    #[arg(long, default_value_t = 2)]
    s: usize,
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = 2)]
    t: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Strong)]
    mode: ModeArg,
    /// Random subspaces W for `wronskian`.
    #[arg(long, default_value_t = 200)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    assert_bound: bool,
    #[command(flatten)]
    #[serde(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum StrategyArg {
    Exhaustive,
    RandomRestart,
}

#[derive(Args, Serialize)]
struct SearchArgs {
    #[arg(long)]
    field: String,
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = 3)]
    max_size: usize,
    #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
    strategy: StrategyArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Samples per size for random-restart.
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    /// Exit 2 if a generator set smaller than floor(d/2)+d turns up while q >= floor(d/2)+d.
    #[arg(long)]
    assert_bound: bool,
    #[command(flatten)]
    #[serde(flatten)]
    output: Output,
}

#[derive(Args)]
struct SelftestArgs {
    /// Only these criteria, comma separated.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

fn config_echo(command: &str, args: &impl Serialize) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    out.insert("command".to_string(), command.to_string());
    let serde_json::Value::Object(map) = serde_json::to_value(args)? else {
        bail!("arguments did not serialize to an object");
    };
    flatten("", &map, &mut out);
    Ok(out)
}

fn flatten(prefix: &str, map: &serde_json::Map<String, serde_json::Value>, out: &mut BTreeMap<String, String>) {
    for (k, v) in map {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match v {
            serde_json::Value::Object(m) => flatten(&key, m, out),
            serde_json::Value::Null => {}
            serde_json::Value::String(s) => {
                out.insert(key, s.clone());
            }
            other => {
                out.insert(key, other.to_string());
            }
        }
    }
}

fn emit(output: &Output, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match &output.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_report<T: Serialize>(output: &Output, mut env: Envelope<T>, start: Instant) -> Result<()> {
    if output.timing {
        env.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    emit(output, &env)
}

fn space(field: &str, dim: usize) -> Result<ProjectiveSpace> {
    Ok(ProjectiveSpace::new(dim, GaloisField::parse(field)?)?)
}

fn construct(a: ConstructArgs) -> Result<u8> {
    let design = |f: &str| -> Result<DesignFamily> {
        let field = GaloisField::parse(f)?;
        let params = DesignParams { s: a.s, r: a.r, t: a.t, d: a.dim };
        Ok(match a.name {
            ConstructName::GkFrs => gk_frs_design(&field, params)?,
            _ => gk_mult_design(&field, params)?,
        })
    };
    if matches!(a.name, ConstructName::GkFrs | ConstructName::GkMult) {
        let fam = design(&a.field)?;
        eprintln!("{}: {} members", fam.construction, fam.members.len());
        emit(&a.output, &DesignFamilyDoc::new(&fam))?;
        return Ok(0);
    }
    let (s, set) = match a.name {
        ConstructName::Fano => (space("2", 2)?, fano_concurrent()?),
        ConstructName::Triangle => {
            let s = space(&a.field, 2)?;
            let set = plane_triangle(&s)?;
            (s, set)
        }
        ConstructName::Pg3ThreeRuling | ConstructName::Pg3PlusExterior | ConstructName::Pg3PlusTwoSecants => {
            let s = space(&a.field, 3)?;
            let variant = match a.name {
                ConstructName::Pg3ThreeRuling => Pg3Variant::ThreeRuling,
                ConstructName::Pg3PlusExterior => Pg3Variant::PlusExterior,
                _ => Pg3Variant::PlusTwoSecants,
            };
            let set = pg3_examples(&s, variant)?;
            (s, set)
        }
        ConstructName::Diverted => {
            let s = space(&a.field, a.dim)?;
            let phi = match &a.phi {
                Some(v) => Injection::new(s.field(), v.iter().map(|&x| Elem(x)).collect())?,
                None => default_injection(&s)?,
            };
            let set = higgledy_family(&s, a.count.unwrap_or(2 * a.dim - 1), &phi)?;
            (s, set)
        }
        ConstructName::Tangents => {
            let s = space(&a.field, a.dim)?;
            let count = a.count.unwrap_or(2 * a.dim - 1);
            if count > s.q() as usize {
                bail!("{count} tangents requested but GF({}) has only {} parameters", s.q(), s.q());
            }
            let ts: Vec<Elem> = s.field().elements().take(count).collect();
            let mut lines: Vec<_> = ts.iter().map(|&t| moment_tangent(&s, t)).collect();
            let mut tags = ts;
            if a.with_infinity {
                lines.push(tangent_at_infinity(&s));
                tags.clear();
            }
            let set = LineSet::new(&s, "moment-tangents", lines)?.with_t_values(tags)?;
            (s, set)
        }
        ConstructName::GkFrs | ConstructName::GkMult => unreachable!(),
    };
    let mut doc = LineSetDoc::new(&s, &set);
    if let Some(c) = a.count {
        doc.params.insert("count".into(), c.to_string());
    }
    if let Some(phi) = &a.phi {
        doc.params.insert("phi".into(), phi.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
    }
    if a.with_infinity {
        doc.params.insert("with_infinity".into(), "true".into());
    }
    eprintln!("{}: {} lines in PG({},{})", set.construction(), set.len(), s.dim(), s.q());
    emit(&a.output, &doc)?;
    Ok(0)
}

fn read_input(path: &PathBuf) -> Result<serde_json::Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn doc_kind(v: &serde_json::Value) -> &str {
    v.get("kind").and_then(|k| k.as_str()).unwrap_or("")
}

fn verify(a: VerifyArgs) -> Result<u8> {
    let start = Instant::now();
    let config = config_echo("verify", &a)?;
    let value = read_input(&a.input)?;
    if matches!(a.what, VerifyWhat::Design) {
        if doc_kind(&value) != DESIGN_FAMILY_KIND {
            bail!("`verify design` needs a {DESIGN_FAMILY_KIND} document");
        }
        let fam = serde_json::from_value::<DesignFamilyDoc>(value)?.to_family()?;
        return measure(&fam, a.s, a.mode.into(), a.output.budget, a.assert_bound, config, &a.output, start);
    }
    if doc_kind(&value) != LINE_SET_KIND {
        bail!("expected a {LINE_SET_KIND} document");
    }
    let (s, set) = serde_json::from_value::<LineSetDoc>(value)?.to_line_set()?;
    let budget = a.output.budget;
    match a.what {
        VerifyWhat::Generator => {
            let r = is_generator_lineset(&s, &set);
            eprintln!("generator: {}", r.verdict);
            let prop = if set.construction() == "diverted-tangents" { property::DIVERTED } else { property::GENERATOR };
            let env = Envelope::new("generator-report", prop, config, s.field(), GeneratorResult::new(&s, &set, &r));
            emit_report(&a.output, env, start)?;
            Ok(0)
        }
        VerifyWhat::Transversal => {
            let result = match a.method {
                Method::Geometric => {
                    TransversalResult::geometric(&s, &set, find_transversal_geometric(&s, &set, budget)?.as_ref())?
                }
                Method::Pluecker => TransversalResult::pluecker(&s, &set, &find_transversal_pluecker(&s, &set, budget)?)?,
            };
            eprintln!("transversal found: {}", result.found);
            emit_report(&a.output, Envelope::new("transversal-report", property::TRANSVERSAL, config, s.field(), result), start)?;
            Ok(0)
        }
        VerifyWhat::Sufficiency => {
            let v = check_sufficiency(&s, &set, budget)?;
            let result = SufficiencyResult::new(&set, &v);
            eprintln!("generator: {}, transversal: {}, consistent: {}", result.generator, result.transversal_found, result.consistent);
            let consistent = result.consistent;
            emit_report(&a.output, Envelope::new("sufficiency-report", property::SUFFICIENCY, config, s.field(), result), start)?;
            Ok(if a.assert_bound && !consistent { EXIT_BOUND_VIOLATED } else { 0 })
        }
        VerifyWhat::Design => unreachable!(),
    }
}

#[allow(clippy::too_many_arguments)]
fn measure(
    fam: &DesignFamily,
    s: usize,
    mode: DesignMode,
    budget: u64,
    assert_bound: bool,
    config: BTreeMap<String, String>,
    output: &Output,
    start: Instant,
) -> Result<u8> {
    let r = design_measure(fam, s, mode, budget)?;
    let bound = r.claimed_bound.map_or("none".to_string(), |b| b.to_string());
    eprintln!("{} {:?} A = {} (claimed bound {bound}, satisfied: {})", fam.construction, mode, r.measured, r.satisfied);
    let satisfied = r.satisfied;
    emit_report(output, Envelope::new("design-report", property::DESIGN, config, &fam.field, DesignResult::new(fam, &r)), start)?;
    Ok(if assert_bound && !satisfied { EXIT_BOUND_VIOLATED } else { 0 })
}

#[derive(Serialize)]
struct WronskianSummary {
    construction: String,
    mode: WronskianMode,
    d: usize,
    s: usize,
    t: usize,
    samples: u64,
    seed: u64,
    bound: usize,
    max_degree: Option<usize>,
    zero_determinants: u64,
    nonzero_expected: bool,
    violations: u64,
    holds: bool,
}

fn design(a: DesignArgs) -> Result<u8> {
    let start = Instant::now();
    let config = config_echo("design", &a)?;
    let fam = match &a.input {
        Some(p) => serde_json::from_value::<DesignFamilyDoc>(read_input(p)?)?.to_family()?,
        None => {
            let field = GaloisField::parse(&a.field)?;
            let params = DesignParams { s: a.s, r: a.r, t: a.t, d: a.dim };
            match a.construction {
                DesignConstruction::GkFrs => gk_frs_design(&field, params)?,
                DesignConstruction::GkMult => gk_mult_design(&field, params)?,
            }
        }
    };
    match a.action {
        DesignAction::Measure => measure(&fam, a.s, a.mode.into(), a.output.budget, a.assert_bound, config, &a.output, start),
        DesignAction::Wronskian => {
            let f = &fam.field;
            let (d, t) = (fam.params.d, fam.params.t);
            let mode = if fam.construction == "gk-frs" { WronskianMode::Frs } else { WronskianMode::Mult };
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let mut summary = WronskianSummary {
                construction: fam.construction.clone(),
                mode,
                d,
                s: a.s,
                t,
                samples: a.samples,
                seed: a.seed,
                bound: 0,
                max_degree: None,
                zero_determinants: 0,
                nonzero_expected: false,
                violations: 0,
                holds: true,
            };
            let mut n = 0;
            while n < a.samples {
                let basis: Vec<Vec<Elem>> =
                    (0..a.s).map(|_| (0..=d).map(|_| Elem(rng.gen_range(0..f.order()))).collect()).collect();
                if higgledy::linalg::rank(f, &basis) < a.s {
                    continue;
                }
                n += 1;
                let r = wronskian_degree_check(f, &basis, mode, d, t)?;
                summary.bound = r.bound;
                summary.nonzero_expected = r.nonzero_expected;
                summary.max_degree = summary.max_degree.max(r.degree);
                summary.zero_determinants += u64::from(r.degree.is_none());
                summary.violations += u64::from(!r.holds());
            }
            summary.holds = summary.violations == 0;
            eprintln!(
                "{:?}: max degree {:?} (bound {}), {} violations in {} samples",
                mode, summary.max_degree, summary.bound, summary.violations, a.samples
            );
            let holds = summary.holds;
            emit_report(&a.output, Envelope::new("wronskian-report", property::WRONSKIAN, config, f, summary), start)?;
            Ok(if a.assert_bound && !holds { EXIT_BOUND_VIOLATED } else { 0 })
        }
    }
}

fn search(a: SearchArgs) -> Result<u8> {
    let start = Instant::now();
    let config = config_echo("search", &a)?;
    let s = space(&a.field, a.dim)?;
    let strategy = match a.strategy {
        StrategyArg::Exhaustive => SearchStrategy::Exhaustive,
        StrategyArg::RandomRestart => SearchStrategy::RandomRestart { seed: a.seed, samples: a.samples },
    };
    let r = search_minimal_generator(&s, a.max_size, strategy, a.output.budget)?;
    let result = SearchResult::new(&s, &r);
    match &r.generator {
        Some(g) => eprintln!("generator set of size {} found: lines {g:?}", g.len()),
        None => eprintln!("no generator set of size <= {} certified", r.certified_none_up_to),
    }
    let lower = s.dim() / 2 + s.dim();
    let violated = s.q() as usize >= lower && r.generator.as_ref().is_some_and(|g| g.len() < lower);
    let partial = r.partial.is_some();
    if let Some(p) = &r.partial {
        eprintln!("budget reached at size {}: first line index < {} certified", p.size, p.first_index_below);
    }
    emit_report(&a.output, Envelope::new("search-report", property::SEARCH, config, s.field(), result), start)?;
    Ok(if a.assert_bound && violated {
        EXIT_BOUND_VIOLATED
    } else if partial {
        EXIT_BUDGET
    } else {
        0
    })
}

fn selftest(a: SelftestArgs) -> Result<u8> {
    let cfg = AcceptanceConfig { budget: a.budget, seed: a.seed };
    let results = acceptance::run(&cfg, &a.only, |r| println!("{r}"));
    if results.is_empty() {
        bail!("no criteria selected");
    }
    let failed = results.iter().filter(|r| r.status == Status::Fail).count();
    let refused = results.iter().filter(|r| r.status == Status::BudgetRefused).count();
    println!("{} criteria: {} passed, {failed} failed, {refused} refused by budget", results.len(), results.len() - failed - refused);
    Ok(if failed > 0 {
        1
    } else if refused > 0 {
        EXIT_BUDGET
    } else {
        0
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify(a),
        Command::Design(a) => design(a),
        Command::Search(a) => search(a),
        Command::Selftest(a) => selftest(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = e
                .downcast_ref::<higgledy::Error>()
                .is_some_and(|e| matches!(e, higgledy::Error::BudgetExceeded { .. }));
            ExitCode::from(if budget { EXIT_BUDGET } else { 1 })
        }
    }
}
