//! Seeded property suites. Every trial derives its own seed from the suite
//! seed, so a failing trial replays on its own; the offending instance is
//! dumped next to the report.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use gvc_core::lp::{
    build, check_half_integral, clique_cuts, lp_equivalence_check, solve_lp, with_cuts, CutPool,
    HALF_INTEGRAL_TOL,
};
use gvc_core::oracle::{
    brute_force, brute_force_bqp01_full, brute_force_bqp01_small_side, brute_force_ubqp, generate,
    restrict_to, Family, Generated, GeneratorConfig,
};
use gvc_core::reductions::{
    bipartite_gvc_to_bqp01, complement, gvc1_complement_gvc2, gvc1_to_ubqp, gvc2_to_ubqp,
    gvc_to_gvc1, gvc_to_gvc2, gvc_to_ubqp, ispnew_complement_vcpnew, ispnew_normalize,
    ispnew_to_mwisp, ubqp_to_gvc2, vcpnew_normalize, vcpnew_to_mwvcp, AffineReduction, BqpVariant,
    GvcProblem, Objective,
};
use gvc_core::solvers::{
    branch_on_vertices, solve_bipartite_flow, solve_mincut_case, ugvc2_structure, verify_ratio,
    vcpnew_epsilon_transfer, LpRoundingCover, RoundingGuarantee,
};
use gvc_core::{
    evaluate, Bqp01Instance, GvcInstance, ProblemKind, Sense, UbqpInstance,
    VertexSet,
};

use crate::format::{format_number, serialize, InstanceFile, Problem};

/// Formulations whose relaxations are checked for half-integrality.
pub const LP_KINDS: [ProblemKind; 9] = [
    ProblemKind::Gvc,
    ProblemKind::Gvc1,
    ProblemKind::Gvc2,
    ProblemKind::Vcpnew,
    ProblemKind::Vcop,
    ProblemKind::Vcup,
    ProblemKind::Ispnew,
    ProblemKind::Isop,
    ProblemKind::Isup,
];

/// Reduction operations exercised by [`check_reductions`].
pub const REDUCTIONS: [&str; 10] = [
    "gvc-to-gvc1",
    "gvc-to-gvc2",
    "to-ubqp",
    "ubqp-to-gvc2",
    "complement",
    "bipartite-to-bqp01",
    "vcpnew-normalize",
    "vcpnew-to-mwvcp",
    "ispnew-normalize",
    "ispnew-to-mwisp-and-vcpnew",
];

const MAX_DUMPS: usize = 20;

#[derive(Clone, Debug)]
pub struct TrialFailure {
    pub message: String,
    pub instance: Option<Box<InstanceFile>>,
}

impl TrialFailure {
    fn new(message: impl Into<String>, instance: Option<InstanceFile>) -> Self {
        TrialFailure {
            message: message.into(),
            instance: instance.map(Box::new),
        }
    }
}

/// What a passing trial contributes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TrialPass {
    /// Instances (or reduction applications) actually checked.
    pub checked: usize,
}

pub type TrialResult = Result<TrialPass, TrialFailure>;

/// A single property check: trial index and derived seed in, verdict out.
pub type CheckFn = fn(usize, u64) -> TrialResult;

#[derive(Clone, Debug)]
pub struct Failure {
    pub check: &'static str,
    pub trial: usize,
    pub seed: u64,
    pub message: String,
    pub dump: Option<PathBuf>,
}

#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub name: String,
    pub trials: usize,
    pub checked: usize,
    pub failures: Vec<Failure>,
    pub warnings: Vec<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn absorb(&mut self, other: Outcome) {
        self.trials += other.trials;
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.warnings.extend(other.warnings);
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        for fail in self.failures.iter().take(MAX_DUMPS) {
            write!(
                f,
                "FAIL {} trial {} (seed {}): {}",
                fail.check, fail.trial, fail.seed, fail.message
            )?;
            match &fail.dump {
                Some(p) => writeln!(f, " [{}]", p.display())?,
                None => writeln!(f)?,
            }
        }
        if self.failures.len() > MAX_DUMPS {
            writeln!(f, "... {} more failures", self.failures.len() - MAX_DUMPS)?;
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{verdict} {}: {} trials, {} checked, {} failed",
            self.name,
            self.trials,
            self.checked,
            self.failures.len()
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Reductions,
    Halfint,
    Rounding,
    Flow,
    Branch,
    Transfer,
    Ugvc2,
    Cuts,
    Equivalence,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Reductions,
        Suite::Halfint,
        Suite::Rounding,
        Suite::Flow,
        Suite::Branch,
        Suite::Transfer,
        Suite::Ugvc2,
        Suite::Cuts,
        Suite::Equivalence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Reductions => "reductions",
            Suite::Halfint => "halfint",
            Suite::Rounding => "rounding",
            Suite::Flow => "flow",
            Suite::Branch => "branch",
            Suite::Transfer => "transfer",
            Suite::Ugvc2 => "ugvc2",
            Suite::Cuts => "cuts",
            Suite::Equivalence => "equivalence",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    pub fn checks(self) -> Vec<(&'static str, CheckFn)> {
        match self {
            Suite::Reductions => vec![("reductions", check_reductions as CheckFn)],
            Suite::Halfint => vec![("halfint", check_half_integrality)],
            Suite::Rounding => vec![("rounding-ratio", check_rounding_ratio), ("rounding-band", check_rounding_band)],
            Suite::Flow => vec![
                ("mincut", check_mincut),
                ("bipartite-flow", check_bipartite_flow),
                ("bqp01-small-side", check_bqp01_small_side),
            ],
            Suite::Branch => vec![("branch", check_branching)],
            Suite::Transfer => vec![("transfer", check_transfer)],
            Suite::Ugvc2 => vec![("ugvc2-positive", check_ugvc2_positive), ("ugvc2-negative", check_ugvc2_negative)],
            Suite::Cuts => vec![("cuts", check_cuts)],
            Suite::Equivalence => vec![("equivalence", check_equivalence)],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub trials: usize,
    pub seed: u64,
    pub dump_dir: Option<PathBuf>,
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of trial `t` of check `name`.
pub fn trial_seed(seed: u64, name: &str, t: usize) -> u64 {
    let salt = name
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    splitmix(splitmix(seed ^ salt).wrapping_add(t as u64))
}

fn dump(dir: &Path, check: &str, trial: usize, file: &InstanceFile, message: &str) -> Option<PathBuf> {
    fs::create_dir_all(dir).ok()?;
    let path = dir.join(format!("{check}-trial{trial}.gvc"));
    let text = format!("# {check} trial {trial}: {message}\n{}", serialize(file));
    fs::write(&path, text).ok()?;
    Some(path)
}

/// Runs `trials` trials of one check, spread over the available cores.
pub fn run_check(name: &'static str, check: CheckFn, config: &VerifyConfig) -> Outcome {
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(config.trials.max(1));
    let results = Mutex::new(Vec::with_capacity(config.trials));
    std::thread::scope(|scope| {
        for w in 0..workers {
            let results = &results;
            scope.spawn(move || {
                let mine: Vec<(usize, u64, TrialResult)> = (w..config.trials)
                    .step_by(workers)
                    .map(|t| {
                        let seed = trial_seed(config.seed, name, t);
                        (t, seed, check(t, seed))
                    })
                    .collect();
                results.lock().unwrap().extend(mine);
            });
        }
    });
    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|r| r.0);

    let mut out = Outcome {
        name: name.to_owned(),
        trials: config.trials,
        ..Outcome::default()
    };
    for (t, seed, r) in results {
        match r {
            Ok(pass) => out.checked += pass.checked,
            Err(fail) => {
                let dump = match (&config.dump_dir, &fail.instance) {
                    (Some(dir), Some(file)) if out.failures.len() < MAX_DUMPS => {
                        dump(dir, name, t, file, &fail.message)
                    }
                    _ => None,
                };
                out.failures.push(Failure {
                    check: name,
                    trial: t,
                    seed,
                    message: fail.message,
                    dump,
                });
            }
        }
    }
    out
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Outcome {
    let mut out = Outcome {
        name: suite.name().to_owned(),
        ..Outcome::default()
    };
    if config.trials == 0 {
        out.warnings
            .push(format!("suite {suite} ran 0 trials; passing vacuously"));
        return out;
    }
    for (name, check) in suite.checks() {
        let mut sub = run_check(name, check, config);
        sub.trials = config.trials;
        out.absorb(sub);
    }
    out.trials = config.trials;
    out
}

// ---------------------------------------------------------------------------
// helpers

fn gen(n: usize, family: Family, seed: u64) -> Result<Generated, TrialFailure> {
    generate(&GeneratorConfig::new(n, family, seed))
        .map_err(|e| TrialFailure::new(format!("generator: {e}"), None))
}

fn gvc_file(g: &GvcInstance, kind: ProblemKind) -> Option<InstanceFile> {
    Some(InstanceFile::gvc(g.clone(), kind))
}

fn core<T>(r: gvc_core::Result<T>, what: &str, file: &Option<InstanceFile>) -> Result<T, TrialFailure> {
    r.map_err(|e| TrialFailure::new(format!("{what}: {e}"), file.clone()))
}

fn ensure(cond: bool, file: &Option<InstanceFile>, msg: impl FnOnce() -> String) -> Result<(), TrialFailure> {
    if cond {
        Ok(())
    } else {
        Err(TrialFailure::new(msg(), file.clone()))
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

/// A random instance on which `kind` is defined.
pub fn instance_for(kind: ProblemKind, n: usize, seed: u64) -> gvc_core::Result<GvcInstance> {
    let family = match kind {
        ProblemKind::Gvc | ProblemKind::Mwvcp | ProblemKind::Mwisp => Family::General,
        ProblemKind::Gvc1 => Family::Gvc1,
        ProblemKind::Gvc2 => Family::Gvc2,
        ProblemKind::Vcpnew | ProblemKind::Vcop | ProblemKind::Vcup => Family::VcpnewFeasible,
        ProblemKind::Ispnew | ProblemKind::Isop | ProblemKind::Isup => Family::IspnewFeasible,
    };
    Ok(restrict_to(&generate(&GeneratorConfig::new(n, family, seed))?.into_gvc(), kind))
}

trait Exact: Objective {
    fn optimum(&self) -> gvc_core::Result<f64>;
    fn file(&self) -> InstanceFile;
}

impl Exact for GvcProblem {
    fn optimum(&self) -> gvc_core::Result<f64> {
        Ok(brute_force(&self.instance, self.kind)?.value)
    }

    fn file(&self) -> InstanceFile {
        InstanceFile::gvc(self.instance.clone(), self.kind)
    }
}

impl Exact for UbqpInstance {
    fn optimum(&self) -> gvc_core::Result<f64> {
        Ok(brute_force_ubqp(self)?.value)
    }

    fn file(&self) -> InstanceFile {
        InstanceFile::new(Problem::Ubqp(self.clone()))
    }
}

impl Exact for Bqp01Instance {
    fn optimum(&self) -> gvc_core::Result<f64> {
        Ok(brute_force_bqp01_full(self)?.value)
    }

    fn file(&self) -> InstanceFile {
        InstanceFile::new(Problem::Bqp01(self.clone()))
    }
}

#[derive(Clone, Copy)]
struct Parts {
    identity: bool,
    transport: bool,
}

/// Exhaustive offset identity and/or optimum transport for one reduction.
fn check_one<S: Exact, T: Exact>(
    parts: Parts,
    name: &str,
    source: &S,
    red: gvc_core::Result<AffineReduction<T>>,
) -> Result<(), TrialFailure> {
    let file = Some(source.file());
    let red = core(red, name, &file)?;
    let n = red.target.universe();
    let masks = if parts.identity { 1u64 << n } else { 0 };
    for mask in 0..masks {
        let set = VertexSet::from_mask(n, mask);
        let target = match red.target.value(&set) {
            Some(v) => v,
            None => continue,
        };
        let back = red.map_back(&set);
        let Some(src) = source.value(&back) else {
            return Err(TrialFailure::new(
                format!("{name}: back-map of target subset {mask:#b} is source-infeasible"),
                file,
            ));
        };
        let expect = red.source_value(target);
        ensure(src == expect, &file, || {
            format!("{name}: subset {mask:#b}: source {src} != offset {} ± target {target}", red.offset)
        })?;
    }
    if !parts.transport {
        return Ok(());
    }
    let s = core(source.optimum(), name, &file)?;
    let t = core(red.target.optimum(), name, &file)?;
    ensure(s == red.source_value(t), &file, || {
        format!("{name}: source optimum {s}, transported target optimum {}", red.source_value(t))
    })?;
    ensure(red.target_sense() == red.target.sense(), &file, || format!("{name}: sense mismatch"))
}

fn problem(g: &GvcInstance, kind: ProblemKind) -> Result<GvcProblem, TrialFailure> {
    GvcProblem::new(g.clone(), kind).map_err(|e| TrialFailure::new(e.to_string(), gvc_file(g, kind)))
}

// ---------------------------------------------------------------------------
// checks

/// Every reduction on random integer instances with `n <= 10`: offset
/// identity on all subsets and optimum transport.
pub fn check_reductions(t: usize, seed: u64) -> TrialResult {
    reductions_trial(t, seed, Parts { identity: true, transport: true })
}

/// Offset identity only.
pub fn check_reduction_identities(t: usize, seed: u64) -> TrialResult {
    reductions_trial(t, seed, Parts { identity: true, transport: false })
}

/// Optimum transport only.
pub fn check_optimum_transport(t: usize, seed: u64) -> TrialResult {
    reductions_trial(t, seed, Parts { identity: false, transport: true })
}

fn reductions_trial(t: usize, seed: u64, parts: Parts) -> TrialResult {
    let n = t % 11;
    let general = gen(n, Family::General, seed)?.into_gvc();
    let src = problem(&general, ProblemKind::Gvc)?;
    check_one(parts, "gvc-to-gvc1", &src, gvc_to_gvc1(&general))?;
    check_one(parts, "gvc-to-gvc2", &src, gvc_to_gvc2(&general))?;
    check_one(parts, "gvc-to-ubqp", &src, gvc_to_ubqp(&general))?;
    check_one(parts, "complement", &src, complement(&general))?;

    let g1 = gen(n, Family::Gvc1, seed ^ 1)?.into_gvc();
    let g2 = gen(n, Family::Gvc2, seed ^ 2)?.into_gvc();
    let p1 = problem(&g1, ProblemKind::Gvc1)?;
    let p2 = problem(&g2, ProblemKind::Gvc2)?;
    check_one(parts, "gvc1-to-ubqp", &p1, gvc1_to_ubqp(&g1))?;
    check_one(parts, "gvc1-complement-gvc2", &p1, gvc1_complement_gvc2(&g1))?;
    check_one(parts, "gvc2-to-ubqp", &p2, gvc2_to_ubqp(&g2))?;
    check_one(parts, "complement", &p2, complement(&g2))?;

    // a random UBQP, taken from the GVC reduction of an independent instance
    let q = core(gvc_to_ubqp(&gen(n, Family::General, seed ^ 3)?.into_gvc()), "ubqp", &None)?.target;
    check_one(parts, "ubqp-to-gvc2", &q, ubqp_to_gvc2(&q))?;

    if let Generated::Gvc { instance, partition: Some(p), .. } =
        gen(n, Family::Bipartite { lifted_nonneg: false }, seed ^ 4)?
    {
        for variant in [BqpVariant::Gvc, BqpVariant::Gvc1, BqpVariant::Gvc2] {
            let g = restrict_to(&instance, variant.kind());
            check_one(parts, "bipartite-to-bqp01", &problem(&g, variant.kind())?, bipartite_gvc_to_bqp01(&g, &p, variant))?;
        }
    }

    let vc = gen(n, Family::VcpnewFeasible, seed ^ 5)?.into_gvc();
    let pvc = problem(&vc, ProblemKind::Vcpnew)?;
    check_one(parts, "vcpnew-to-vcop", &pvc, vcpnew_normalize(&vc, ProblemKind::Vcop))?;
    check_one(parts, "vcpnew-to-vcup", &pvc, vcpnew_normalize(&vc, ProblemKind::Vcup))?;
    check_one(parts, "vcpnew-to-mwvcp", &pvc, vcpnew_to_mwvcp(&vc))?;

    let is = gen(n, Family::IspnewFeasible, seed ^ 6)?.into_gvc();
    let pis = problem(&is, ProblemKind::Ispnew)?;
    check_one(parts, "ispnew-to-isop", &pis, ispnew_normalize(&is, ProblemKind::Isop))?;
    check_one(parts, "ispnew-to-isup", &pis, ispnew_normalize(&is, ProblemKind::Isup))?;
    check_one(parts, "ispnew-to-mwisp", &pis, ispnew_to_mwisp(&is))?;
    check_one(parts, "ispnew-complement-vcpnew", &pis, ispnew_complement_vcpnew(&is))?;
    Ok(TrialPass { checked: 19 })
}

/// Basic optimal LP solutions of every formulation are half-integral, bound
/// the IP optimum, and integral ones evaluate to the LP value.
pub fn check_half_integrality(t: usize, seed: u64) -> TrialResult {
    let n = 1 + t % 12;
    for (k, kind) in LP_KINDS.into_iter().enumerate() {
        let g = core(instance_for(kind, n, seed.wrapping_add(k as u64)), "generator", &None)?;
        let file = gvc_file(&g, kind);
        let model = core(build(&g, kind), "build", &file)?;
        let sol = core(solve_lp(&model), "solve_lp", &file)?;
        ensure(sol.basic, &file, || format!("{kind}: solution is not basic"))?;
        let report = core(check_half_integral(&sol, HALF_INTEGRAL_TOL), "half-integrality", &file)?;
        ensure(report.passed(), &file, || {
            format!("{kind}: x = {:?} is not half-integral", sol.x)
        })?;
        let ip = core(brute_force(&g, kind), "oracle", &file)?.value;
        let lp = sol.reported_objective;
        let slack = 1e-7 * (1.0 + ip.abs());
        let bounded = match kind.sense() {
            Sense::Minimize => lp <= ip + slack,
            Sense::Maximize => lp >= ip - slack,
        };
        ensure(bounded, &file, || format!("{kind}: LP {lp} on the wrong side of IP {ip}"))?;
        if sol.x.iter().all(|&x| x.abs() <= 1e-9 || (x - 1.0).abs() <= 1e-9) {
            let set = VertexSet::from_bools(sol.x.iter().map(|&x| x > 0.5).collect());
            let v = core(evaluate(&g, kind, &set), "evaluate", &file)?.value;
            ensure(close(v, lp, 1e-7), &file, || {
                format!("{kind}: integral LP point evaluates to {v}, LP reports {lp}")
            })?;
        }
    }
    Ok(TrialPass { checked: LP_KINDS.len() })
}

const RATIO_PARAMS: [f64; 4] = [1.0, 1.5, 2.0, 3.0];
const RETRIES: u64 = 64;

/// Draws instances until one has a positive optimum.
fn positive_instance(n: usize, family: Family, seed: u64) -> Result<GvcInstance, TrialFailure> {
    for r in 0..RETRIES {
        let g = gen(n, family.clone(), seed.wrapping_add(r))?.into_gvc();
        let opt = core(brute_force(&g, ProblemKind::Gvc), "oracle", &gvc_file(&g, ProblemKind::Gvc))?;
        if opt.value > 0.0 {
            return Ok(g);
        }
    }
    Err(TrialFailure::new("no instance with positive optimum drawn", None))
}

fn ratio_trial(g: GvcInstance, guarantee: RoundingGuarantee) -> TrialResult {
    let file = gvc_file(&g, ProblemKind::Gvc);
    let report = core(verify_ratio(&g, guarantee), "verify_ratio", &file)?;
    ensure(report.precondition.is_none(), &file, || {
        format!("generated instance violates {guarantee:?}: {:?}", report.precondition)
    })?;
    ensure(report.ratio.is_some(), &file, || "optimum is not positive".to_owned())?;
    ensure(report.holds(), &file, || {
        format!(
            "ratio {} = {} / {} exceeds {}",
            report.ratio.unwrap_or(f64::NAN),
            report.heuristic,
            report.optimum,
            report.bound.unwrap_or(f64::NAN)
        )
    })?;
    Ok(TrialPass { checked: 1 })
}

/// Rounding ratio against `max{2, alpha, alpha beta}`, positive optima only.
pub fn check_rounding_ratio(t: usize, seed: u64) -> TrialResult {
    let alpha = RATIO_PARAMS[t % 4];
    let beta = RATIO_PARAMS[(t / 4) % 4];
    let n = 2 + t % 9;
    let g = positive_instance(n, Family::RatioBounded { alpha, beta }, seed)?;
    ratio_trial(g, RoundingGuarantee::Ratio { alpha, beta })
}

/// Rounding ratio against `max{2, alpha}` for weights in `[K, alpha K]`.
pub fn check_rounding_band(t: usize, seed: u64) -> TrialResult {
    let k = 1 + (t % 3) as i64;
    let alpha = [1.5, 2.0, 3.0, 4.0][(t / 3) % 4];
    let n = 2 + t % 9;
    let g = positive_instance(n, Family::Band { k, alpha }, seed)?;
    ratio_trial(g, RoundingGuarantee::Band { k: k as f64, alpha })
}

/// Min-cut on UBQP instances from nonpositive-lifted GVC, against enumeration.
pub fn check_mincut(t: usize, seed: u64) -> TrialResult {
    let n = t % 13;
    let g = gen(n, Family::NonpositiveLifted, seed)?.into_gvc();
    let file = gvc_file(&g, ProblemKind::Gvc);
    let red = core(gvc_to_ubqp(&g), "gvc_to_ubqp", &file)?;
    let q = &red.target;
    let qfile = Some(InstanceFile::new(Problem::Ubqp(q.clone())));
    let flow = core(solve_mincut_case(q), "mincut", &qfile)?;
    let exact = core(brute_force_ubqp(q), "oracle", &qfile)?;
    ensure(flow.value == exact.value, &qfile, || {
        format!("min-cut {} vs enumeration {}", flow.value, exact.value)
    })?;
    ensure(q.objective(&flow.members) == flow.value, &qfile, || "cut subset does not attain its value".to_owned())?;
    let back = red.map_back(&flow.members);
    let gv = core(evaluate(&g, ProblemKind::Gvc, &back), "evaluate", &file)?.value;
    let opt = core(brute_force(&g, ProblemKind::Gvc), "oracle", &file)?.value;
    ensure(gv == opt, &file, || format!("mapped back subset has value {gv}, optimum {opt}"))?;
    Ok(TrialPass { checked: 1 })
}

/// Bipartite flow solver on lifted-nonnegative bipartite instances.
pub fn check_bipartite_flow(t: usize, seed: u64) -> TrialResult {
    let n = t % 13;
    let Generated::Gvc { instance: g, partition: Some(p), .. } = gen(n, Family::Bipartite { lifted_nonneg: true }, seed)?
    else {
        return Err(TrialFailure::new("bipartite generator returned no partition", None));
    };
    let file = Some(InstanceFile::new(Problem::Gvc {
        instance: g.clone(),
        kind: ProblemKind::Gvc,
        partition: Some(p.clone()),
    }));
    let r = core(solve_bipartite_flow(&g, &p), "bipartite flow", &file)?;
    let exact = core(brute_force(&g, ProblemKind::Gvc), "oracle", &file)?.value;
    ensure(r.value == exact, &file, || format!("flow {} vs enumeration {exact}", r.value))?;
    let v = core(evaluate(&g, ProblemKind::Gvc, &r.members), "evaluate", &file)?.value;
    ensure(v == r.value, &file, || format!("flow subset evaluates to {v}, reported {}", r.value))?;
    Ok(TrialPass { checked: 1 })
}

/// Small-side BQP01 enumeration against full enumeration, `m + n <= 16`.
pub fn check_bqp01_small_side(t: usize, seed: u64) -> TrialResult {
    let m = t % 9;
    let n = (t / 9) % (17 - m);
    let Generated::Bqp01(q) = gen(n, Family::Bqp01 { m }, seed)? else {
        return Err(TrialFailure::new("bqp01 generator returned a GVC instance", None));
    };
    let file = Some(InstanceFile::new(Problem::Bqp01(q.clone())));
    let small = core(brute_force_bqp01_small_side(&q), "small side", &file)?;
    let full = core(brute_force_bqp01_full(&q), "full", &file)?;
    ensure(small.value == full.value, &file, || {
        format!("small side {} vs full {}", small.value, full.value)
    })?;
    ensure(q.objective(&small.members) == small.value, &file, || "small-side subset does not attain its value".to_owned())?;
    Ok(TrialPass { checked: 1 })
}

/// Branching on up to four vertices with exact leaves is exact.
pub fn check_branching(t: usize, seed: u64) -> TrialResult {
    let n = 1 + t % 10;
    let k = t % 5;
    let g = gen(n, Family::Gvc2, seed)?.into_gvc();
    let file = gvc_file(&g, ProblemKind::Gvc2);
    let leaf = |h: &GvcInstance| brute_force(h, ProblemKind::Gvc2);
    let r = core(branch_on_vertices(&g, k, &leaf), "branch", &file)?;
    let exact = core(brute_force(&g, ProblemKind::Gvc2), "oracle", &file)?.value;
    ensure(r.value == exact, &file, || format!("branching {} vs enumeration {exact} (k = {k})", r.value))?;
    let v = core(evaluate(&g, ProblemKind::Gvc2, &r.members), "evaluate", &file)?.value;
    ensure(v == r.value, &file, || format!("branch subset evaluates to {v}"))?;
    Ok(TrialPass { checked: 1 })
}

/// The VCPNEW ratio of LP-rounded MWVCP covers stays within `(2 + delta)/(1 + delta)`.
pub fn check_transfer(t: usize, seed: u64) -> TrialResult {
    let n = 2 + t % 9;
    for r in 0..RETRIES {
        let g = gen(n, Family::VcpnewFeasible, seed.wrapping_add(r))?.into_gvc();
        let file = gvc_file(&g, ProblemKind::Vcpnew);
        let report = match vcpnew_epsilon_transfer(&g, &LpRoundingCover) {
            Ok(rep) => rep,
            Err(gvc_core::Error::Precondition(_)) => continue,
            Err(e) => return Err(TrialFailure::new(format!("transfer: {e}"), file)),
        };
        if report.delta.is_none() {
            continue;
        }
        let opt = core(brute_force(&g, ProblemKind::Vcpnew), "oracle", &file)?.value;
        ensure(report.optimum == opt, &file, || {
            format!("transfer optimum {} vs enumeration {opt}", report.optimum)
        })?;
        ensure(report.holds(), &file, || {
            format!(
                "ratio {:?} exceeds (2 + delta)/(1 + delta) = {:?} (delta = {:?})",
                report.ratio, report.epsilon_prime, report.delta
            )
        })?;
        return Ok(TrialPass { checked: 1 });
    }
    Err(TrialFailure::new("no hypothesis-satisfying instance drawn", None))
}

fn uniform(t: usize, seed: u64, delta: i64) -> Result<GvcInstance, TrialFailure> {
    let n = t % 11;
    let density = [0.2, 0.4, 0.6, 0.8][(t / 11) % 4];
    generate(&GeneratorConfig::new(n, Family::Uniform { gamma: -delta, delta }, seed).density(density))
        .map(Generated::into_gvc)
        .map_err(|e| TrialFailure::new(format!("generator: {e}"), None))
}

fn ugvc2_trial(g: GvcInstance, delta: i64) -> TrialResult {
    let file = gvc_file(&g, ProblemKind::Gvc2);
    let r = core(ugvc2_structure(&g, -delta as f64, delta as f64), "ugvc2", &file)?;
    ensure(r.holds, &file, || {
        let what = if delta > 0 { "-delta * alpha(G)" } else { "the best vertex cover" };
        format!(
            "delta = {delta}: optimum {} differs from {what} = {}",
            format_number(r.optimum),
            format_number(r.restricted_optimum)
        )
    })?;
    Ok(TrialPass { checked: 1 })
}

/// Uniform GVC2 with `delta > 0`: optimum is `-delta alpha(G)`.
pub fn check_ugvc2_positive(t: usize, seed: u64) -> TrialResult {
    let delta = 1 + (t % 3) as i64;
    ugvc2_trial(uniform(t, seed, delta)?, delta)
}

/// Uniform GVC2 with `delta < 0`: some optimum is a vertex cover.
pub fn check_ugvc2_negative(t: usize, seed: u64) -> TrialResult {
    let delta = -1 - (t % 3) as i64;
    ugvc2_trial(uniform(t, seed, delta)?, delta)
}

/// No cut is violated by an integral GVC2 point.
fn cuts_are_valid(g: &GvcInstance, pool: &CutPool) -> Option<String> {
    let n = g.n();
    for mask in 0..(1u64 << n) {
        let x = |i: usize| (mask >> i) & 1;
        for cut in &pool.cuts {
            let xs: u64 = cut.clique.iter().map(|&i| x(i)).sum();
            let ys: u64 = cut
                .edges
                .iter()
                .map(|&e| x(g.edge(e).u) * x(g.edge(e).v))
                .sum();
            if xs as f64 - ys as f64 > cut.rhs {
                return Some(format!("subset {mask:#b} violates the cut on {:?}", cut.clique));
            }
        }
    }
    None
}

/// Clique cuts tighten the GVC2 relaxation without cutting off integral points.
pub fn check_cuts(t: usize, seed: u64) -> TrialResult {
    let n = 3 + t % 8;
    let size = 3 + t % 2;
    for r in 0..RETRIES {
        let g = generate(&GeneratorConfig::new(n, Family::Gvc2, seed.wrapping_add(r)).density(0.6))
            .map_err(|e| TrialFailure::new(format!("generator: {e}"), None))?
            .into_gvc();
        let file = gvc_file(&g, ProblemKind::Gvc2);
        let pool = core(clique_cuts(&g, size), "clique_cuts", &file)?;
        if pool.is_empty() {
            continue;
        }
        let model = core(build(&g, ProblemKind::Gvc2), "build", &file)?;
        let plain = core(solve_lp(&model), "plain LP", &file)?.reported_objective;
        let cut_model = core(with_cuts(&model, &pool), "with_cuts", &file)?;
        let cut = core(solve_lp(&cut_model), "cut LP", &file)?.reported_objective;
        let ip = core(brute_force(&g, ProblemKind::Gvc2), "oracle", &file)?.value;
        ensure(plain <= cut + 1e-7 && cut <= ip + 1e-7, &file, || {
            format!("expected plain {plain} <= cut {cut} <= IP {ip}")
        })?;
        if let Some(msg) = cuts_are_valid(&g, &pool) {
            return Err(TrialFailure::new(msg, file));
        }
        return Ok(TrialPass { checked: 1 });
    }
    Err(TrialFailure::new("no instance with a triangle drawn", None))
}

/// GVC-LP and its two substituted forms share the optimum.
pub fn check_equivalence(t: usize, seed: u64) -> TrialResult {
    let n = 1 + t % 8;
    let g = gen(n, Family::General, seed)?.into_gvc();
    let file = gvc_file(&g, ProblemKind::Gvc);
    let r = core(lp_equivalence_check(&g), "equivalence", &file)?;
    ensure(r.agrees(1e-7), &file, || format!("optima differ: {r:?}"))?;
    Ok(TrialPass { checked: 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(trials: usize) -> VerifyConfig {
        VerifyConfig {
            trials,
            seed: 1,
            dump_dir: None,
        }
    }

    #[test]
    fn zero_trials_pass_with_a_warning() {
        let out = run_suite(Suite::Halfint, &config(0));
        assert!(out.passed());
        assert_eq!(out.warnings.len(), 1);
    }

    #[test]
    fn seeds_differ_per_check_and_trial() {
        assert_ne!(trial_seed(1, "a", 0), trial_seed(1, "b", 0));
        assert_ne!(trial_seed(1, "a", 0), trial_seed(1, "a", 1));
        assert_eq!(trial_seed(7, "a", 3), trial_seed(7, "a", 3));
    }

    #[test]
    fn small_suites_pass() {
        for suite in Suite::ALL {
            if suite == Suite::Ugvc2 {
                continue;
            }
            let out = run_suite(suite, &config(6));
            assert!(out.passed(), "{out}");
        }
    }

    #[test]
    fn failures_are_dumped() {
        let dir = std::env::temp_dir().join(format!("gvc-verify-{}", std::process::id()));
        let out = run_check(
            "ugvc2-negative",
            check_ugvc2_negative,
            &VerifyConfig {
                trials: 12,
                seed: 3,
                dump_dir: Some(dir.clone()),
            },
        );
        assert!(!out.passed());
        let path = out.failures[0].dump.clone().unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(crate::format::parse(&text).is_ok());
        let _ = std::fs::remove_dir_all(dir);
    }
}
