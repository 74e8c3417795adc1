//! The `gowerslab` command line.
//!
//! Every subcommand writes one JSON report to `--out` (or stdout). Reports
//! carry the tool version, an echo of the inputs, the evaluation mode, the
//! seed and the caps in force; they never record timings or thread counts, so
//! identical inputs give identical bytes.

use crate::calculus::{degree_by_derivatives, DegreeMode};
use crate::config::Caps;
use crate::constraints::{cs_complexity, dependency_set, dependency_set_with, AffineConstraint, InducedConstraint};
use crate::degstruct::{hyperplane_locality_scan, is_structured, is_structured_brute, StructureKind, StructureSpec};
use crate::error::{Error, Result};
use crate::factor::{joint_distribution, uniformity_certify, PolynomialFactor, UniformityMetric};
use crate::field::{Fp, Point};
use crate::gowers::{gowers, EvalMode, TableFn};
use crate::io;
use crate::par;
use crate::poly::NCPoly;
use crate::tester::{
    affinity_family, collection_arity, distance_to_free, rejection_probability, subspace_test_trials, RFunction,
    RejectionMode,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(
    name = "gowerslab",
    version,
    about = "Gowers norms, non-classical polynomials and affine-invariant testing over F_p^n"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also print a short summary to stderr.
    #[arg(long, global = true)]
    pub human: bool,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Enumeration cap; overrides GOWERSLAB_CAP.
    #[arg(long, global = true)]
    pub cap: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
pub struct FnInput {
    /// Polynomial in JSON; the function is x ↦ e(P(x)).
    #[arg(long, conflicts_with = "table")]
    pub poly: Option<PathBuf>,
    /// Binary complex table.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct RInput {
    /// Binary table with one byte per point, values in 1..=R.
    #[arg(long = "fn", conflicts_with = "poly")]
    pub function: Option<PathBuf>,
    /// Classical polynomial; the function is x ↦ P(x) + 1 with R = p.
    #[arg(long)]
    pub poly: Option<PathBuf>,
    /// Alphabet size; defaults to the largest value present.
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long, value_enum, conflicts_with = "constraints")]
    pub family: Option<Family>,
    /// Induced constraints in JSON (one object or a list).
    #[arg(long)]
    pub constraints: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Affinity,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeModeArg {
    Basis,
    FullSweep,
    Randomized,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricArg {
    Gowers,
    Bias,
}

impl From<MetricArg> for UniformityMetric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Gowers => UniformityMetric::Gowers,
            MetricArg::Bias => UniformityMetric::Bias,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KindArg {
    DegreeAtMost,
    Splitting,
    Factorization,
    SumOfTwoProducts,
    SquareRoot,
    LowRank,
}

#[derive(Args, Debug, Serialize)]
pub struct SpecInput {
    /// Structure specs in JSON (one object or a list).
    #[arg(long, conflicts_with = "kind")]
    pub spec: Option<PathBuf>,
    #[arg(long, value_enum, requires = "d")]
    pub kind: Option<KindArg>,
    #[arg(long)]
    pub d: Option<u32>,
    /// Number of components for low-rank.
    #[arg(long, default_value_t = 1)]
    pub rank: usize,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Gowers U^d norm of a function.
    Gowers {
        #[command(flatten)]
        input: FnInput,
        #[arg(long)]
        order: u32,
        /// Monte Carlo samples instead of exhaustive evaluation.
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Bias E f(x).
    Bias {
        #[command(flatten)]
        input: FnInput,
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Iterated additive derivative of a polynomial.
    Deriv {
        #[arg(long)]
        poly: PathBuf,
        /// Direction as comma-separated coordinates; repeat to iterate.
        #[arg(long = "h", required = true)]
        directions: Vec<String>,
    },
    /// Degree and depth, from the representation and from derivatives.
    Degree {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, default_value_t = 8)]
        d_max: u32,
        #[arg(long, value_enum, default_value = "basis")]
        mode: DegreeModeArg,
        #[arg(long, default_value_t = 256)]
        trials: u64,
    },
    /// Cauchy-Schwarz complexity of a constraint.
    Complexity {
        #[arg(long)]
        constraint: PathBuf,
        #[arg(long)]
        p: u32,
    },
    /// (d, k)-dependency set of a constraint.
    Depset {
        #[arg(long)]
        constraint: PathBuf,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        witness_dim: Option<usize>,
        /// Also write the sorted tuples as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Atom histogram of a factor.
    Atoms {
        #[arg(long)]
        factor: PathBuf,
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Uniformity certificate for a factor.
    Certify {
        #[arg(long)]
        factor: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, value_enum, default_value = "gowers")]
        metric: MetricArg,
    },
    /// Joint atom distribution along a constraint against the prediction.
    Equidist {
        #[arg(long)]
        factor: PathBuf,
        #[arg(long)]
        constraint: PathBuf,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long, value_enum, default_value = "gowers")]
        metric: MetricArg,
    },
    /// Membership of a polynomial in degree-structural properties.
    Degstruct {
        #[arg(long)]
        poly: PathBuf,
        #[command(flatten)]
        spec: SpecInput,
        /// Use the generic exhaustive decomposition search.
        #[arg(long)]
        brute: bool,
    },
    /// Membership of every hyperplane restriction.
    ScanLocality {
        #[arg(long)]
        poly: PathBuf,
        #[command(flatten)]
        spec: SpecInput,
    },
    /// Runs the subspace tester.
    Test {
        #[command(flatten)]
        input: RInput,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Number of random points spanning the tested subspace.
        #[arg(long)]
        ell: Option<usize>,
        /// Also compute the exact rejection probability.
        #[arg(long)]
        exact: bool,
    },
    /// Distance to the free functions.
    Distance {
        #[command(flatten)]
        input: RInput,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Gowers { .. } => "gowers",
            Command::Bias { .. } => "bias",
            Command::Deriv { .. } => "deriv",
            Command::Degree { .. } => "degree",
            Command::Complexity { .. } => "complexity",
            Command::Depset { .. } => "depset",
            Command::Atoms { .. } => "atoms",
            Command::Certify { .. } => "certify",
            Command::Equidist { .. } => "equidist",
            Command::Degstruct { .. } => "degstruct",
            Command::ScanLocality { .. } => "scan-locality",
            Command::Test { .. } => "test",
            Command::Distance { .. } => "distance",
        }
    }
}

/// What a subcommand produces: the result body, whether it was exact, and a
/// one-line summary.
struct Outcome {
    result: Value,
    exact: bool,
    summary: String,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn read_poly(path: &Path) -> Result<NCPoly> {
    io::read_json(path)
}

fn load_table(input: &FnInput, caps: &Caps) -> Result<TableFn> {
    match (&input.poly, &input.table) {
        (Some(p), None) => TableFn::phase_of(&read_poly(p)?, caps),
        (None, Some(t)) => io::read_complex_table(t),
        _ => Err(Error::invalid("give exactly one of --poly or --table")),
    }
}

fn load_rfunction(input: &RInput) -> Result<RFunction> {
    match (&input.function, &input.poly) {
        (Some(f), None) => io::read_rfunction(f, input.r),
        (None, Some(p)) => {
            let poly = read_poly(p)?;
            if !poly.is_classical() {
                return Err(Error::invalid("--poly needs a classical polynomial"));
            }
            RFunction::from_classical(&poly)
        }
        _ => Err(Error::invalid("give exactly one of --fn or --poly")),
    }
}

fn load_collection(input: &RInput, f: &RFunction, caps: &Caps) -> Result<Vec<InducedConstraint>> {
    match (&input.family, &input.constraints) {
        (Some(Family::Affinity), None) => affinity_family(f.p(), caps),
        (None, Some(path)) => io::read_json_list(path),
        _ => Err(Error::invalid("give exactly one of --family or --constraints")),
    }
}

fn load_specs(input: &SpecInput, p: u32) -> Result<Vec<StructureSpec>> {
    if let Some(path) = &input.spec {
        let raw: Vec<StructureSpec> = io::read_json_list(path)?;
        return raw
            .into_iter()
            .map(|s| {
                io::same_field(&[("polynomial", p), ("spec", s.p)])?;
                StructureSpec::new(s.kind, s.p, s.d, s.degrees, s.gamma)
            })
            .collect();
    }
    let (Some(kind), Some(d)) = (input.kind, input.d) else {
        return Err(Error::invalid("give --spec or --kind with --d"));
    };
    let spec = match kind {
        KindArg::DegreeAtMost => StructureSpec::degree_at_most(p, d),
        KindArg::Splitting => StructureSpec::splitting(p, d),
        KindArg::Factorization => StructureSpec::factorization(p, d),
        KindArg::SumOfTwoProducts => StructureSpec::sum_of_two_products(p, d),
        KindArg::SquareRoot => StructureSpec::square_root(p, d),
        KindArg::LowRank => StructureSpec::low_rank(p, d, input.rank),
    }?;
    Ok(vec![spec])
}

fn parse_direction(s: &str, n: usize) -> Result<Point> {
    let coords: Vec<u32> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad direction coordinate {t:?}")))
        })
        .collect::<Result<_>>()?;
    if coords.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: coords.len(),
        });
    }
    Ok(Point(coords))
}

fn sampled_bias(f: &TableFn, samples: u64, seed: u64) -> (Complex64, f64) {
    let size = f.domain().size();
    let draw = |i: u64| f.at(par::rng(seed, i).gen_range(0..size));
    let mean = par::sum_complex(samples, draw) / samples as f64;
    let var = par::sum_f64(samples, |i| (draw(i) - mean).norm_sqr()) / (samples.max(2) - 1) as f64;
    (mean, (var / samples as f64).sqrt())
}

fn execute(cmd: &Command, seed: u64, caps: &Caps) -> Result<Outcome> {
    match cmd {
        Command::Gowers { input, order, samples } => {
            let f = load_table(input, caps)?;
            let mode = match samples {
                Some(s) => EvalMode::MonteCarlo { samples: *s, seed },
                None => EvalMode::Exhaustive,
            };
            let est = gowers(&f, *order, mode, caps)?;
            Ok(Outcome {
                summary: format!("‖f‖_U^{order} = {:.12}", est.value),
                exact: est.exact,
                result: json!({ "p": f.p(), "n": f.n(), "order": order, "norm": to_value(&est) }),
            })
        }
        Command::Bias { input, samples } => {
            let f = load_table(input, caps)?;
            let (b, se) = match samples {
                Some(s) if *s > 0 => {
                    let (m, se) = sampled_bias(&f, *s, seed);
                    (m, Some(se))
                }
                Some(_) => return Err(Error::invalid("need at least one sample")),
                None => {
                    caps.check("bias", f.domain().size() as u128)?;
                    (f.bias(), None)
                }
            };
            Ok(Outcome {
                summary: format!("|E f| = {:.12}", b.norm()),
                exact: se.is_none(),
                result: json!({ "p": f.p(), "n": f.n(), "re": b.re, "im": b.im, "abs": b.norm(), "std_error": se }),
            })
        }
        Command::Deriv { poly, directions } => {
            let mut q = read_poly(poly)?;
            let mut hs = Vec::new();
            for s in directions {
                let h = parse_direction(s, q.n())?;
                q = q.additive_derivative(&h)?;
                hs.push(h);
            }
            Ok(Outcome {
                summary: format!("D P = {q}"),
                exact: true,
                result: json!({ "directions": to_value(&hs), "derivative": to_value(&q), "rendered": q.to_string(), "degree": q.degree(), "depth": q.depth() }),
            })
        }
        Command::Degree {
            poly,
            d_max,
            mode,
            trials,
        } => {
            let q = read_poly(poly)?;
            let mode = match mode {
                DegreeModeArg::Basis => DegreeMode::Basis,
                DegreeModeArg::FullSweep => DegreeMode::FullSweep,
                DegreeModeArg::Randomized => DegreeMode::Randomized { trials: *trials, seed },
            };
            let report = degree_by_derivatives(&q, *d_max, mode, caps)?;
            Ok(Outcome {
                summary: format!(
                    "representation degree {}, derivative degree {:?}, depth {}",
                    q.degree(),
                    report.degree,
                    q.depth()
                ),
                exact: report.exact,
                result: json!({ "representation_degree": q.degree(), "depth": q.depth(), "derivatives": to_value(&report) }),
            })
        }
        Command::Complexity { constraint, p } => {
            let a: AffineConstraint = io::read_json(constraint)?;
            let field = Fp::new(*p)?;
            a.check_field(field)?;
            let c = cs_complexity(field, &a.linear_forms())?;
            Ok(Outcome {
                summary: match c.0 {
                    Some(d) => format!("Cauchy-Schwarz complexity {d}"),
                    None => "infinite Cauchy-Schwarz complexity".into(),
                },
                exact: true,
                result: json!({ "constraint": to_value(&a), "complexity": c.0 }),
            })
        }
        Command::Depset {
            constraint,
            d,
            k,
            p,
            witness_dim,
            csv,
        } => {
            let a: AffineConstraint = io::read_json(constraint)?;
            let field = Fp::new(*p)?;
            let set = match witness_dim {
                Some(w) => dependency_set_with(field, &a, *d, *k, *w, caps)?,
                None => dependency_set(field, &a, *d, *k, caps)?,
            };
            if let Some(path) = csv {
                std::fs::write(path, set.to_csv())?;
            }
            Ok(Outcome {
                summary: format!("|Λ| = {}", set.size()),
                exact: true,
                result: json!({ "constraint": to_value(&a), "size": set.size(), "subgroup": set.is_subgroup(), "set": to_value(&set) }),
            })
        }
        Command::Atoms { factor, samples } => {
            let b: PolynomialFactor = io::read_json(factor)?;
            let h = match samples {
                Some(s) => b.atom_histogram_sampled(*s, seed)?,
                None => b.atom_histogram(caps)?,
            };
            Ok(Outcome {
                summary: format!(
                    "{} of {} atoms realized, max deviation {:.3e}",
                    h.realized, h.order, h.max_deviation
                ),
                exact: h.exact,
                result: to_value(&h),
            })
        }
        Command::Certify {
            factor,
            epsilon,
            metric,
        } => {
            let b: PolynomialFactor = io::read_json(factor)?;
            let r = uniformity_certify(&b, *epsilon, (*metric).into(), caps)?;
            Ok(Outcome {
                summary: format!(
                    "{} at ε = {} (achieved {:.6})",
                    if r.passed { "certified" } else { "not certified" },
                    epsilon,
                    r.epsilon_achieved
                ),
                exact: true,
                result: to_value(&r),
            })
        }
        Command::Equidist {
            factor,
            constraint,
            samples,
            epsilon,
            metric,
        } => {
            let b: PolynomialFactor = io::read_json(factor)?;
            let a: AffineConstraint = io::read_json(constraint)?;
            let mode = match samples {
                Some(s) => EvalMode::MonteCarlo { samples: *s, seed },
                None => EvalMode::Exhaustive,
            };
            let cert = uniformity_certify(&b, *epsilon, (*metric).into(), caps)?;
            let joint = joint_distribution(&b, &a, mode, caps)?;
            Ok(Outcome {
                summary: format!(
                    "prediction {:.6e}, max deviation {:.3e}, certified ε {:.6}",
                    joint.prediction, joint.max_deviation, cert.epsilon_achieved
                ),
                exact: joint.exact,
                result: json!({
                    "prediction": joint.prediction,
                    "max_deviation": joint.max_deviation,
                    "epsilon_certified": cert.epsilon_achieved,
                    "certified": cert.passed,
                    "witness": to_value(&cert.witness),
                    "joint": to_value(&joint),
                }),
            })
        }
        Command::Degstruct { poly, spec, brute } => {
            let f = read_poly(poly)?;
            let specs = load_specs(spec, f.p())?;
            let mut rows = Vec::new();
            let mut summary = Vec::new();
            for s in &specs {
                let m = if *brute {
                    is_structured_brute(&f, s, caps)?
                } else {
                    is_structured(&f, s, caps)?
                };
                summary.push(format!(
                    "{}: {}",
                    s.label(),
                    if m.is_member() {
                        "member"
                    } else if m.is_decided() {
                        "non-member"
                    } else {
                        "refused"
                    }
                ));
                rows.push(json!({ "spec": to_value(s), "label": s.label(), "membership": to_value(&m) }));
            }
            Ok(Outcome {
                summary: summary.join("; "),
                exact: true,
                result: json!({ "polynomial": to_value(&f), "results": rows }),
            })
        }
        Command::ScanLocality { poly, spec } => {
            let f = read_poly(poly)?;
            let specs = load_specs(spec, f.p())?;
            if specs
                .iter()
                .any(|s| s.kind == StructureKind::Custom && s.gamma.is_none())
            {
                return Err(Error::invalid("custom specs need a Γ table"));
            }
            let reports = hyperplane_locality_scan(&f, &specs, caps)?;
            Ok(Outcome {
                summary: format!("scanned {} spec(s)", reports.len()),
                exact: true,
                result: json!({ "polynomial": to_value(&f), "reports": to_value(&reports) }),
            })
        }
        Command::Test {
            input,
            trials,
            ell,
            exact,
        } => {
            let f = load_rfunction(input)?;
            let collection = load_collection(input, &f, caps)?;
            let ell = ell.unwrap_or_else(|| collection_arity(&collection));
            let rejections = subspace_test_trials(&f, &collection, ell, *trials, seed)?;
            let exact_report = if *exact {
                Some(rejection_probability(&f, &collection, RejectionMode::Exact, caps)?)
            } else {
                None
            };
            let rate = if *trials == 0 {
                0.0
            } else {
                rejections as f64 / *trials as f64
            };
            Ok(Outcome {
                summary: format!("{rejections} of {trials} runs rejected"),
                exact: false,
                result: json!({
                    "p": f.p(),
                    "n": f.n(),
                    "r": f.r(),
                    "constraints": collection.len(),
                    "ell": ell,
                    "queries_per_run": (f.p() as u64).pow(ell.saturating_sub(1) as u32),
                    "trials": trials,
                    "rejections": rejections,
                    "rejection_rate": rate,
                    "exact_rejection_probability": exact_report.map(|r| to_value(&r)),
                }),
            })
        }
        Command::Distance { input } => {
            let f = load_rfunction(input)?;
            let collection = load_collection(input, &f, caps)?;
            let d = distance_to_free(&f, &collection, caps)?;
            Ok(Outcome {
                summary: match d.exact {
                    Some(x) => format!("distance {x}"),
                    None => format!("distance in [{}, {:?}]", d.lower, d.upper),
                },
                exact: d.exact.is_some(),
                result: to_value(&d),
            })
        }
    }
}

fn report(cli: &Cli, caps: &Caps, outcome: &Outcome) -> String {
    let doc = json!({
        "tool": "gowerslab",
        "version": env!("CARGO_PKG_VERSION"),
        "command": cli.command.name(),
        "config": to_value(&cli.command),
        "seed": cli.seed,
        "mode": if outcome.exact { "exact" } else { "sampled" },
        "caps": { "enumeration": caps.enumeration, "search_budget": caps.search_budget },
        "result": outcome.result,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("json");
    s.push('\n');
    s
}

/// Runs a parsed command; returns the report text.
pub fn run_cli(cli: &Cli) -> Result<String> {
    let mut caps = Caps::from_env()?;
    if let Some(c) = cli.cap {
        if c == 0 {
            return Err(Error::invalid("--cap must be positive"));
        }
        caps.enumeration = c;
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(Error::invalid("--threads must be positive"));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    let outcome = pool.install(|| execute(&cli.command, cli.seed, &caps))?;
    let text = report(cli, &caps, &outcome);
    match &cli.out {
        Some(path) => std::fs::write(path, &text)?,
        None => print!("{text}"),
    }
    if cli.human {
        eprintln!("{}: {}", cli.command.name(), outcome.summary);
    }
    Ok(text)
}

/// Parses `argv`, runs, and returns the process exit code: 0 on success, 2
/// for usage, input or cap errors, 1 for internal failures.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run_cli(&cli) {
        Ok(_) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_precondition() {
                2
            } else {
                1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_names_match_subcommands() {
        use clap::CommandFactory;
        let names: Vec<String> = Cli::command()
            .get_subcommands()
            .map(|c| c.get_name().to_string())
            .collect();
        for want in [
            "gowers",
            "bias",
            "deriv",
            "degree",
            "complexity",
            "depset",
            "atoms",
            "certify",
            "equidist",
            "degstruct",
            "scan-locality",
            "test",
            "distance",
        ] {
            assert!(names.iter().any(|n| n == want), "{want}");
        }
    }

    #[test]
    fn usage_errors_are_not_help() {
        for argv in [vec!["gowerslab", "frobnicate"], vec!["gowerslab", "gowers", "--order"]] {
            let err = Cli::try_parse_from(argv).unwrap_err();
            assert!(err.use_stderr());
        }
        assert!(!Cli::try_parse_from(["gowerslab", "--help"]).unwrap_err().use_stderr());
    }

    #[test]
    fn unreadable_inputs_are_preconditions() {
        let cli = Cli::try_parse_from([
            "gowerslab",
            "depset",
            "--constraint",
            "/nonexistent.json",
            "--d",
            "1",
            "--p",
            "2",
        ])
        .unwrap();
        assert!(run_cli(&cli).unwrap_err().is_precondition());
    }

    #[test]
    fn direction_parsing() {
        assert_eq!(parse_direction("1, 0,2", 3).unwrap(), Point(vec![1, 0, 2]));
        assert!(parse_direction("1,0", 3).is_err());
        assert!(parse_direction("a", 1).is_err());
    }
}
