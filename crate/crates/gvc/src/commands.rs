//! Command-line front end: argument types and command implementations.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gvc_core::lp::{
    build, check_half_integral, clique_cuts, solve_lp, with_cuts, HALF_INTEGRAL_TOL,
};
use gvc_core::oracle::{
    brute_force, brute_force_bqp01_small_side, brute_force_ubqp, generate, Family, Generated,
    GeneratorConfig, OracleResult,
};
use gvc_core::reductions::{
    bipartite_gvc_to_bqp01, complement, gvc1_complement_gvc2, gvc1_to_ubqp, gvc2_to_ubqp,
    gvc_to_gvc1, gvc_to_gvc2, gvc_to_ubqp, ispnew_complement_vcpnew, ispnew_normalize,
    ispnew_to_mwisp, ubqp_to_gvc2, vcpnew_normalize, vcpnew_to_mwvcp, AffineReduction, BackMap,
    BqpVariant, GvcProblem, Orientation,
};
use gvc_core::solvers::{
    branch_on_vertices, gvc2_mincut_leaf, round_gvc, solve_bipartite_flow, solve_mincut_case,
};
use gvc_core::{BipartitePartition, GvcInstance, ProblemKind, VertexSet};

use crate::format::{self, format_number, FormatError, InstanceFile, Problem};
use crate::lpfile;
use crate::report::{objective, RunReport};
use crate::verify::{run_suite, Suite, VerifyConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(#[from] FormatError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Check(_) => 4,
        }
    }
}

impl From<gvc_core::Error> for CliError {
    fn from(e: gvc_core::Error) -> Self {
        CliError::Precondition(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "gvc", version, about = "Generalized vertex cover solvers, reductions and checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance file.
    Solve(SolveArgs),
    /// Rewrite an instance as an equivalent problem.
    Reduce(ReduceArgs),
    /// Solve an LP relaxation.
    Lp(LpArgs),
    /// Generate a random instance.
    Gen(GenArgs),
    /// Run a seeded property suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Mincut,
    BipartiteFlow,
    Branch,
    Round,
    Lp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Leaf {
    Oracle,
    Mincut,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub method: Method,
    /// Vertices to branch on (branch method).
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    /// Solver for the branching leaves.
    #[arg(long, value_enum, default_value_t = Leaf::Oracle)]
    pub leaf: Leaf,
    /// Also run the exact oracle and report the ratio.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Gvc1,
    Gvc2,
    Ubqp,
    Bqp01,
    Mwvcp,
    Mwisp,
    Complement,
    Vcop,
    Vcup,
    Isop,
    Isup,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub to: Target,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LpArgs {
    pub file: PathBuf,
    /// Formulation tag; defaults to the file's kind.
    #[arg(long)]
    pub formulation: Option<String>,
    /// Add clique inequalities (GVC2 only).
    #[arg(long)]
    pub cuts: bool,
    #[arg(long, default_value_t = 3)]
    pub clique_size: usize,
    #[arg(long)]
    pub check_half_integral: bool,
    /// Write the model in CPLEX LP format.
    #[arg(long)]
    pub export_lp: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, default_value = "general")]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub density: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<i64>,
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 2.0)]
    pub beta: f64,
    /// Lower end of the weight band.
    #[arg(long, default_value_t = 1)]
    pub k: i64,
    /// Rows of a BQP01 instance.
    #[arg(long, default_value_t = 4)]
    pub m: usize,
    /// Bipartite only: keep q2 - 2 q1 + q0 >= 0.
    #[arg(long)]
    pub lifted_nonneg: bool,
    /// Cost range `lo:hi`.
    #[arg(long, allow_hyphen_values = true)]
    pub costs: Option<String>,
    /// Edge weight range `lo:hi`.
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name or `all`.
    #[arg(long)]
    pub suite: String,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Where failing instances are written.
    #[arg(long, default_value = "verify-failures")]
    pub dump_dir: PathBuf,
}

pub fn read_file(path: &Path) -> Result<InstanceFile> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(format::parse(&text)?)
}

fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn precondition(msg: impl Into<String>) -> CliError {
    CliError::Precondition(msg.into())
}

/// GVC-family instance whose objective agrees with the general one.
fn general_view(file: &InstanceFile, method: &str) -> Result<(GvcInstance, ProblemKind)> {
    match &file.problem {
        Problem::Gvc { instance, kind, .. }
            if matches!(kind, ProblemKind::Gvc | ProblemKind::Gvc1 | ProblemKind::Gvc2) =>
        {
            Ok((instance.clone(), *kind))
        }
        Problem::Gvc { kind, .. } => Err(precondition(format!(
            "{method} solves GVC, GVC1 and GVC2 instances, not {kind}"
        ))),
        _ => Err(precondition(format!("{method} needs a GVC-family file"))),
    }
}

fn partition_of(file: &InstanceFile) -> Option<BipartitePartition> {
    match &file.problem {
        Problem::Gvc {
            instance,
            partition,
            ..
        } => partition
            .clone()
            .or_else(|| BipartitePartition::two_color(instance)),
        _ => None,
    }
}

fn exact(file: &InstanceFile) -> Result<OracleResult> {
    Ok(match &file.problem {
        Problem::Gvc { instance, kind, .. } => brute_force(instance, *kind)?,
        Problem::Ubqp(q) => brute_force_ubqp(q)?,
        Problem::Bqp01(q) => brute_force_bqp01_small_side(q)?,
    })
}

pub fn solve(args: &SolveArgs, file: &InstanceFile) -> Result<RunReport> {
    let start = Instant::now();
    let name = args.method.to_possible_value().map_or("?".to_owned(), |v| v.get_name().to_owned());
    let subset_report = |set: VertexSet, value: f64| {
        RunReport::for_subset(&name, file, set, value, start.elapsed()).map_err(CliError::Check)
    };
    let mut report = match args.method {
        Method::Brute => {
            let r = exact(file)?;
            let mut rep = subset_report(r.members, r.value)?;
            if let Some(c) = r.optimal_count {
                rep.push("optima", c.to_string());
            }
            rep
        }
        Method::Mincut => match &file.problem {
            Problem::Ubqp(q) => {
                let r = solve_mincut_case(q)?;
                subset_report(r.members, r.value)?
            }
            _ => {
                let (g, kind) = general_view(file, "mincut")?;
                let red = match kind {
                    ProblemKind::Gvc1 => gvc1_to_ubqp(&g)?,
                    ProblemKind::Gvc2 => gvc2_to_ubqp(&g)?,
                    _ => gvc_to_ubqp(&g)?,
                };
                let r = solve_mincut_case(&red.target)?;
                subset_report(red.map_back(&r.members), red.source_value(r.value))?
            }
        },
        Method::BipartiteFlow => {
            let (g, _) = general_view(file, "bipartite-flow")?;
            let p = partition_of(file).ok_or_else(|| precondition("the support graph is not bipartite"))?;
            let r = solve_bipartite_flow(&g, &p)?;
            subset_report(r.members, r.value)?
        }
        Method::Branch => {
            let (g, _) = general_view(file, "branch")?;
            ProblemKind::Gvc2
                .check(&g)
                .map_err(|e| precondition(format!("branch needs a GVC2 instance: {e}")))?;
            let depth = args.depth.min(g.n());
            let r = match args.leaf {
                Leaf::Oracle => branch_on_vertices(&g, depth, &|h: &GvcInstance| brute_force(h, ProblemKind::Gvc2))?,
                Leaf::Mincut => branch_on_vertices(&g, depth, &gvc2_mincut_leaf)?,
            };
            let mut rep = subset_report(r.members, r.value)?;
            rep.push("depth", depth.to_string());
            rep
        }
        Method::Round => {
            let (g, _) = general_view(file, "round")?;
            let r = round_gvc(&g)?;
            let mut rep = subset_report(r.members, r.value)?;
            rep.push("lp", format_number(r.lp.reported_objective));
            rep
        }
        Method::Lp => {
            let Problem::Gvc { instance, kind, .. } = &file.problem else {
                return Err(precondition("lp needs a GVC-family file"));
            };
            let sol = solve_lp(&build(instance, *kind)?)?;
            let integral = sol.x.iter().all(|&x| x.abs() <= 1e-9 || (x - 1.0).abs() <= 1e-9);
            let mut rep = if integral {
                let set = VertexSet::from_bools(sol.x.iter().map(|&x| x > 0.5).collect());
                let v = objective(file, &set)?;
                subset_report(set, v).map(|mut r| {
                    r.value = v;
                    r
                })?
            } else {
                RunReport::for_value(&name, file, sol.reported_objective, start.elapsed())
            };
            rep.push("lp", format_number(sol.reported_objective));
            rep.push("x", format_vector(&sol.x));
            rep
        }
    };
    if args.oracle {
        let opt = exact(file)?.value;
        report = report.with_oracle(opt);
    }
    Ok(report)
}

fn format_vector(x: &[f64]) -> String {
    let items: Vec<String> = x.iter().map(|&v| format_number(clean(v))).collect();
    items.join(",")
}

/// Snaps values within 1e-9 of a multiple of 1/2.
fn clean(v: f64) -> f64 {
    let h = (v * 2.0).round() / 2.0;
    if (v - h).abs() <= 1e-9 {
        h
    } else {
        v
    }
}

fn gvc_output<T>(red: AffineReduction<T>, wrap: impl FnOnce(T) -> Problem) -> (InstanceFile, BackMap) {
    let file = InstanceFile {
        problem: wrap(red.target),
        offset: Some(red.offset),
        negated: red.orientation == Orientation::Negated,
    };
    (file, red.back)
}

fn gvc_problem(t: GvcProblem) -> Problem {
    Problem::Gvc {
        instance: t.instance,
        kind: t.kind,
        partition: None,
    }
}

pub fn reduce(target: Target, file: &InstanceFile) -> Result<(InstanceFile, BackMap)> {
    let unsupported = |what: &str| {
        precondition(format!(
            "cannot reduce a {} file to {what}",
            crate::report::kind_label(file)
        ))
    };
    let q_ubqp = |q| Problem::Ubqp(q);
    match (&file.problem, target) {
        (Problem::Ubqp(q), Target::Gvc2) => Ok(gvc_output(ubqp_to_gvc2(q)?, gvc_problem)),
        (Problem::Gvc { instance: g, kind, .. }, _) => {
            use ProblemKind as K;
            Ok(match (kind, target) {
                (K::Gvc, Target::Gvc1) => gvc_output(gvc_to_gvc1(g)?, gvc_problem),
                (K::Gvc, Target::Gvc2) => gvc_output(gvc_to_gvc2(g)?, gvc_problem),
                (K::Gvc1, Target::Gvc2) => gvc_output(gvc1_complement_gvc2(g)?, gvc_problem),
                (K::Gvc, Target::Ubqp) => gvc_output(gvc_to_ubqp(g)?, q_ubqp),
                (K::Gvc1, Target::Ubqp) => gvc_output(gvc1_to_ubqp(g)?, q_ubqp),
                (K::Gvc2, Target::Ubqp) => gvc_output(gvc2_to_ubqp(g)?, q_ubqp),
                (K::Gvc | K::Gvc1 | K::Gvc2, Target::Bqp01) => {
                    let variant = match kind {
                        K::Gvc1 => BqpVariant::Gvc1,
                        K::Gvc2 => BqpVariant::Gvc2,
                        _ => BqpVariant::Gvc,
                    };
                    let p = partition_of(file)
                        .ok_or_else(|| precondition("the support graph is not bipartite"))?;
                    gvc_output(bipartite_gvc_to_bqp01(g, &p, variant)?, Problem::Bqp01)
                }
                (K::Gvc | K::Gvc2, Target::Complement) => gvc_output(complement(g)?, gvc_problem),
                (K::Gvc1, Target::Complement) => gvc_output(gvc1_complement_gvc2(g)?, gvc_problem),
                (K::Ispnew, Target::Complement) => gvc_output(ispnew_complement_vcpnew(g)?, gvc_problem),
                (K::Vcpnew, Target::Mwvcp) => gvc_output(vcpnew_to_mwvcp(g)?, gvc_problem),
                (K::Vcpnew, Target::Vcop) => gvc_output(vcpnew_normalize(g, K::Vcop)?, gvc_problem),
                (K::Vcpnew, Target::Vcup) => gvc_output(vcpnew_normalize(g, K::Vcup)?, gvc_problem),
                (K::Ispnew, Target::Mwisp) => gvc_output(ispnew_to_mwisp(g)?, gvc_problem),
                (K::Ispnew, Target::Isop) => gvc_output(ispnew_normalize(g, K::Isop)?, gvc_problem),
                (K::Ispnew, Target::Isup) => gvc_output(ispnew_normalize(g, K::Isup)?, gvc_problem),
                _ => return Err(unsupported(target.to_possible_value().unwrap().get_name())),
            })
        }
        _ => Err(unsupported(target.to_possible_value().unwrap().get_name())),
    }
}

fn back_map_comment(back: &BackMap) -> String {
    match back {
        BackMap::Identity => "# back-map: identity\n".to_owned(),
        BackMap::Complement => "# back-map: complement\n".to_owned(),
        BackMap::Relabel { vertices, .. } => {
            let v: Vec<String> = vertices.iter().map(|i| (i + 1).to_string()).collect();
            format!("# back-map: variables are vertices {}\n", v.join(" "))
        }
    }
}

pub struct LpOutcome {
    pub report: RunReport,
    pub half_integral: Option<bool>,
}

pub fn lp(args: &LpArgs, file: &InstanceFile) -> Result<LpOutcome> {
    let start = Instant::now();
    let Problem::Gvc { instance, kind, .. } = &file.problem else {
        return Err(precondition("lp needs a GVC-family file"));
    };
    let formulation = match &args.formulation {
        Some(tag) => ProblemKind::from_tag(tag)
            .ok_or_else(|| precondition(format!("unknown formulation `{tag}`")))?,
        None => *kind,
    };
    let mut model = build(instance, formulation)?;
    let plain = solve_lp(&model)?;
    let mut cut_count = None;
    if args.cuts {
        let pool = clique_cuts(instance, args.clique_size)?;
        cut_count = Some(pool.len());
        model = with_cuts(&model, &pool)?;
    }
    let sol = if args.cuts { solve_lp(&model)? } else { plain.clone() };
    if let Some(path) = &args.export_lp {
        fs::write(path, lpfile::export(&model, instance))
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    let mut report = RunReport::for_value("lp", file, sol.reported_objective, start.elapsed());
    report.kind = formulation.tag().to_owned();
    report.value = clean(sol.reported_objective);
    report.push("x", format_vector(&sol.x));
    report.push("basic", sol.basic.to_string());
    report.push("iterations", sol.iterations.to_string());
    if let Some(c) = cut_count {
        report.push("plain", format_number(clean(plain.reported_objective)));
        report.push("cuts", c.to_string());
    }
    let mut half_integral = None;
    if args.check_half_integral {
        let hi = check_half_integral(&sol, HALF_INTEGRAL_TOL)?;
        half_integral = Some(hi.passed());
        report.push("half_integral", if hi.passed() { "pass" } else { "fail" });
        report.push("max_distance", format!("{:e}", hi.max_distance()));
    }
    Ok(LpOutcome {
        report,
        half_integral,
    })
}

fn parse_range(s: &str) -> Result<(i64, i64)> {
    let bad = || precondition(format!("range `{s}` is not `lo:hi`"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let lo = a.trim().parse().map_err(|_| bad())?;
    let hi = b.trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

pub fn family_from_args(args: &GenArgs) -> Result<Family> {
    Ok(match args.family.as_str() {
        "general" => Family::General,
        "gvc1" => Family::Gvc1,
        "gvc2" => Family::Gvc2,
        "vcpnew-feasible" | "vcpnew" => Family::VcpnewFeasible,
        "ispnew-feasible" | "ispnew" => Family::IspnewFeasible,
        "bipartite" => Family::Bipartite {
            lifted_nonneg: args.lifted_nonneg,
        },
        "hl-monotone" => Family::HlMonotone,
        "ratio-bounded" => Family::RatioBounded {
            alpha: args.alpha,
            beta: args.beta,
        },
        "band" => Family::Band {
            k: args.k,
            alpha: args.alpha,
        },
        "nonpositive-lifted" => Family::NonpositiveLifted,
        "uniform" => {
            let delta = args.delta.or(args.gamma.map(|g| -g)).unwrap_or(1);
            Family::Uniform {
                gamma: args.gamma.unwrap_or(-delta),
                delta,
            }
        }
        "bqp01" => Family::Bqp01 { m: args.m },
        other => return Err(precondition(format!("unknown family `{other}`"))),
    })
}

pub fn gen(args: &GenArgs) -> Result<InstanceFile> {
    let mut config = GeneratorConfig::new(args.n, family_from_args(args)?, args.seed);
    if let Some(d) = args.density {
        config = config.density(d);
    }
    if let Some(r) = &args.costs {
        let (lo, hi) = parse_range(r)?;
        config = config.costs(lo, hi);
    }
    if let Some(r) = &args.weights {
        let (lo, hi) = parse_range(r)?;
        config = config.weights(lo, hi);
    }
    Ok(match generate(&config)? {
        Generated::Gvc {
            instance,
            kind,
            partition,
        } => InstanceFile::new(Problem::Gvc {
            instance,
            kind,
            partition,
        }),
        Generated::Bqp01(q) => InstanceFile::new(Problem::Bqp01(q)),
    })
}

pub fn verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![Suite::from_name(&args.suite).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            precondition(format!("unknown suite `{}`; one of {} or all", args.suite, names.join(", ")))
        })?]
    };
    let config = VerifyConfig {
        trials: args.trials,
        seed: args.seed,
        dump_dir: Some(args.dump_dir.clone()),
    };
    let mut failed = Vec::new();
    for suite in suites {
        let outcome = run_suite(suite, &config);
        for w in &outcome.warnings {
            let _ = writeln!(err, "warning: {w}");
        }
        let mut text = outcome.to_string();
        text = text
            .lines()
            .filter(|l| !l.starts_with("warning: "))
            .map(|l| format!("{l}\n"))
            .collect();
        let _ = out.write_all(text.as_bytes());
        if !outcome.passed() {
            failed.push(suite.name());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Check(format!("suite failed: {}", failed.join(", "))))
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match &cli.command {
        Command::Solve(args) => {
            let file = read_file(&args.file)?;
            let report = solve(args, &file)?;
            write!(out, "{report}").map_err(io)
        }
        Command::Reduce(args) => {
            let file = read_file(&args.file)?;
            let (target, back) = reduce(args.to, &file)?;
            let text = format!("{}{}", back_map_comment(&back), format::serialize(&target));
            write_output(args.output.as_deref(), &text, out)
        }
        Command::Lp(args) => {
            let file = read_file(&args.file)?;
            let outcome = lp(args, &file)?;
            write!(out, "{}", outcome.report).map_err(io)?;
            if outcome.half_integral == Some(false) {
                return Err(CliError::Check("LP solution is not half-integral".to_owned()));
            }
            Ok(())
        }
        Command::Gen(args) => {
            let file = gen(args)?;
            write_output(args.output.as_deref(), &format::serialize(&file), out)
        }
        Command::Verify(args) => verify(args, out, err),
    }
}
