//! Exhaustive solvers and seeded instance generators.
//!
//! Everything here is ground truth for the rest of the crate, so it is kept
//! deliberately simple: a Gray-code walk over all subsets with O(deg) work per
//! step, and generators that emit integer weights only.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{
    evaluate, BipartitePartition, Bqp01Instance, EdgeWeights, Feasibility, GvcInstance,
    ProblemKind, Sense, Side, UbqpInstance, VertexSet, INF,
};

/// Largest universe the enumerators accept.
pub const MAX_ENUMERATION: usize = 26;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub value: f64,
    /// The optimal subset with the numerically smallest bitmask.
    pub members: VertexSet,
    /// Number of optimal subsets (saturating); `None` when the solver
    /// cannot count them.
    pub optimal_count: Option<u64>,
}

fn check_capacity(size: usize) -> Result<()> {
    if size > MAX_ENUMERATION {
        Err(Error::Capacity {
            size,
            max: MAX_ENUMERATION,
        })
    } else {
        Ok(())
    }
}

/// Values closer than this (relative) are treated as ties. On integer data
/// every partial sum is exact and the tolerance never matters.
fn same_value(a: f64, b: f64) -> bool {
    a == b
        || (a.is_finite() && b.is_finite() && (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs())))
}

struct Incumbent {
    sense: Sense,
    best: Option<(f64, u64)>,
    count: u64,
}

impl Incumbent {
    fn new(sense: Sense) -> Self {
        Incumbent {
            sense,
            best: None,
            count: 0,
        }
    }

    fn offer(&mut self, value: f64, mask: u64) {
        match self.best {
            None => {
                self.best = Some((value, mask));
                self.count = 1;
            }
            Some((b, m)) => {
                if same_value(value, b) {
                    self.count = self.count.saturating_add(1);
                    if mask < m {
                        self.best = Some((b, mask));
                    }
                } else if self.sense.better(value, b) {
                    self.best = Some((value, mask));
                    self.count = 1;
                }
            }
        }
    }
}

/// Exact optimum of `instance` under `kind` by enumerating every subset
/// (restricted kinds only count their feasible subsets).
pub fn brute_force(instance: &GvcInstance, kind: ProblemKind) -> Result<OracleResult> {
    let n = instance.n();
    check_capacity(n)?;
    let reads = kind.reads();
    let contribution = |w: &EdgeWeights, class: usize| -> f64 {
        if reads[class] {
            w.by_class(class)
        } else {
            0.0
        }
    };

    let mut inside = vec![false; n];
    let mut finite = 0.0;
    let mut infinite = 0usize;
    let mut classes = [instance.m(), 0, 0];
    let account = |w: f64, sign: f64, finite: &mut f64, infinite: &mut usize| {
        if w.is_infinite() {
            if sign > 0.0 {
                *infinite += 1;
            } else {
                *infinite -= 1;
            }
        } else {
            *finite += sign * w;
        }
    };
    for e in instance.edges() {
        account(contribution(&e.weights, 0), 1.0, &mut finite, &mut infinite);
    }

    let feasible = |classes: &[usize; 3]| match kind.feasibility() {
        Feasibility::Any => true,
        Feasibility::VertexCover => classes[0] == 0,
        Feasibility::IndependentSet => classes[2] == 0,
    };
    let mut incumbent = Incumbent::new(kind.sense());
    let mut mask = 0u64;
    if feasible(&classes) {
        incumbent.offer(if infinite > 0 { INF } else { finite }, 0);
    }
    for k in 1..(1u64 << n) {
        let v = k.trailing_zeros() as usize;
        mask ^= 1 << v;
        let adding = !inside[v];
        for &e in instance.incident(v) {
            let edge = instance.edge(e);
            let old = inside[edge.u] as usize + inside[edge.v] as usize;
            let new = if adding { old + 1 } else { old - 1 };
            account(contribution(&edge.weights, old), -1.0, &mut finite, &mut infinite);
            account(contribution(&edge.weights, new), 1.0, &mut finite, &mut infinite);
            classes[old] -= 1;
            classes[new] += 1;
        }
        finite += if adding { instance.cost(v) } else { -instance.cost(v) };
        inside[v] = adding;
        if feasible(&classes) {
            incumbent.offer(if infinite > 0 { INF } else { finite }, mask);
        }
    }

    let (_, best_mask) = incumbent.best.expect("V is a cover and the empty set is independent");
    let members = VertexSet::from_mask(n, best_mask);
    let value = evaluate(instance, kind, &members)?.value;
    Ok(OracleResult {
        value,
        members,
        optimal_count: Some(incumbent.count),
    })
}

/// Exact minimum of `sum a_i x_i + sum_{i<j} 2 Q_ij x_i x_j`.
pub fn brute_force_ubqp(q: &UbqpInstance) -> Result<OracleResult> {
    let n = q.n();
    check_capacity(n)?;
    let mut adjacent: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for &(i, j, w) in q.pairs() {
        adjacent[i].push((j, 2.0 * w));
        adjacent[j].push((i, 2.0 * w));
    }
    let mut inside = vec![false; n];
    let mut value = 0.0;
    let mut incumbent = Incumbent::new(Sense::Minimize);
    incumbent.offer(0.0, 0);
    let mut mask = 0u64;
    for k in 1..(1u64 << n) {
        let v = k.trailing_zeros() as usize;
        mask ^= 1 << v;
        let delta = q.linear()[v]
            + adjacent[v]
                .iter()
                .filter(|&&(j, _)| inside[j])
                .map(|&(_, w)| w)
                .sum::<f64>();
        if inside[v] {
            value -= delta;
        } else {
            value += delta;
        }
        inside[v] = !inside[v];
        incumbent.offer(value, mask);
    }
    let (_, best_mask) = incumbent.best.unwrap();
    let members = VertexSet::from_mask(n, best_mask);
    Ok(OracleResult {
        value: q.objective(&members),
        members,
        optimal_count: Some(incumbent.count),
    })
}

/// Exact minimum of a BQP01 instance by enumerating the smaller side only.
///
/// For a fixed subset of the enumerated side, the other side decomposes: item
/// `j` is taken iff its reduced cost is negative. Items with reduced cost
/// exactly zero are left out of the returned set but multiply the optimal
/// count by two.
pub fn brute_force_bqp01_small_side(q: &Bqp01Instance) -> Result<OracleResult> {
    let (m, n) = (q.m(), q.n());
    check_capacity(m.min(n))?;
    // Enumerate the rows when they are the small side, otherwise the columns.
    let rows_small = m <= n;
    let (small, large) = if rows_small { (m, n) } else { (n, m) };
    let (small_cost, large_cost) = if rows_small { (q.a(), q.b()) } else { (q.b(), q.a()) };
    let mut coupling: Vec<Vec<(usize, f64)>> = vec![Vec::new(); small];
    for &(i, j, w) in q.entries() {
        if rows_small {
            coupling[i].push((j, w));
        } else {
            coupling[j].push((i, w));
        }
    }
    let to_combined = |small_idx: usize, is_small: bool| -> usize {
        match (rows_small, is_small) {
            (true, true) | (false, false) => small_idx,
            _ => m + small_idx,
        }
    };

    let mut reduced: Vec<f64> = large_cost.to_vec();
    let mut inside = vec![false; small];
    let mut linear = 0.0;
    let mut best: Option<(f64, VertexSet)> = None;
    let mut count = 0u64;
    let mut visit = |inside: &[bool], linear: f64, reduced: &[f64]| {
        let value = linear + reduced.iter().filter(|&&r| r < 0.0).sum::<f64>();
        let zeros = reduced.iter().filter(|&&r| r == 0.0).count();
        let ways = if zeros >= 64 { u64::MAX } else { 1u64 << zeros };
        let set = || {
            let mut s = VertexSet::empty(m + n);
            for (i, _) in inside.iter().enumerate().filter(|(_, &b)| b) {
                s.insert(to_combined(i, true));
            }
            for (j, _) in reduced.iter().enumerate().filter(|(_, &r)| r < 0.0) {
                s.insert(to_combined(j, false));
            }
            s
        };
        match &best {
            Some((b, _)) if same_value(value, *b) => {
                count = count.saturating_add(ways);
                let candidate = set();
                if candidate < best.as_ref().unwrap().1 {
                    best = Some((*b, candidate));
                }
            }
            Some((b, _)) if value >= *b => {}
            _ => {
                best = Some((value, set()));
                count = ways;
            }
        }
    };
    visit(&inside, linear, &reduced);
    for k in 1..(1u64 << small) {
        let i = k.trailing_zeros() as usize;
        let sign = if inside[i] { -1.0 } else { 1.0 };
        linear += sign * small_cost[i];
        for &(j, w) in &coupling[i] {
            reduced[j] += sign * w;
        }
        inside[i] = !inside[i];
        visit(&inside, linear, &reduced);
    }
    debug_assert_eq!(reduced.len(), large);
    let (_, members) = best.unwrap();
    Ok(OracleResult {
        value: q.objective(&members),
        members,
        optimal_count: Some(count),
    })
}

/// Exact minimum of a BQP01 instance by plain enumeration of all
/// `2^(m+n)` assignments. Independent of [`brute_force_bqp01_small_side`].
pub fn brute_force_bqp01_full(q: &Bqp01Instance) -> Result<OracleResult> {
    let total = q.m() + q.n();
    check_capacity(total)?;
    let mut incumbent = Incumbent::new(Sense::Minimize);
    for mask in 0..(1u64 << total) {
        incumbent.offer(q.objective(&VertexSet::from_mask(total, mask)), mask);
    }
    let (_, best_mask) = incumbent.best.unwrap();
    let members = VertexSet::from_mask(total, best_mask);
    Ok(OracleResult {
        value: q.objective(&members),
        members,
        optimal_count: Some(incumbent.count),
    })
}

/// `alpha(G)`, the size of a maximum independent set, by enumeration.
pub fn independence_number(instance: &GvcInstance) -> Result<usize> {
    let unit = GvcInstance::new(
        vec![1.0; instance.n()],
        instance
            .edges()
            .iter()
            .map(|e| (e.u, e.v, EdgeWeights::ZERO)),
    )?;
    Ok(brute_force(&unit, ProblemKind::Mwisp)?.members.len())
}

/// A copy of `instance` with every field `kind` forces to zero set to zero.
pub fn restrict_to(instance: &GvcInstance, kind: ProblemKind) -> GvcInstance {
    let zero = kind.forced_zero();
    instance
        .with_weights(|e| {
            let w = e.weights;
            EdgeWeights::new(
                if zero[0] { 0.0 } else { w.q0 },
                if zero[1] { 0.0 } else { w.q1 },
                if zero[2] { 0.0 } else { w.q2 },
            )
        })
        .expect("zeroing fields keeps an instance valid")
}

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    General,
    Gvc1,
    Gvc2,
    /// `q0 = inf`, `q2 <= 2 q1` per edge, and every reduced MWVCP weight
    /// `c_i + sum (q2 - q1)` made nonnegative by flipping its sign.
    VcpnewFeasible,
    /// `q2 = inf`; only independent sets have finite value.
    IspnewFeasible,
    /// Random sides, edges only across. With `lifted_nonneg` every edge also
    /// has `q2 - 2 q1 + q0 >= 0`.
    Bipartite { lifted_nonneg: bool },
    /// `q0 >= q1 >= q2 >= 0` and `c >= 0`.
    HlMonotone,
    /// `0 <= q2 <= alpha q1`, `0 <= q1 <= beta q0` and `c >= 0`.
    RatioBounded { alpha: f64, beta: f64 },
    /// Every `q` in `[k, alpha k]` and `c >= 0`. The per-field ranges are ignored.
    Band { k: i64, alpha: f64 },
    /// `q2 - 2 q1 + q0 <= 0` on every edge.
    NonpositiveLifted,
    /// `c_i = gamma`, `q2 = delta`, `q0 = q1 = 0`.
    Uniform { gamma: i64, delta: i64 },
    /// A BQP01 instance with `m` rows and `n` columns. Linear costs use the
    /// `c` range, matrix entries the `q2` range.
    Bqp01 { m: usize },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::General => "general",
            Family::Gvc1 => "gvc1",
            Family::Gvc2 => "gvc2",
            Family::VcpnewFeasible => "vcpnew-feasible",
            Family::IspnewFeasible => "ispnew-feasible",
            Family::Bipartite { .. } => "bipartite",
            Family::HlMonotone => "hl-monotone",
            Family::RatioBounded { .. } => "ratio-bounded",
            Family::Band { .. } => "band",
            Family::NonpositiveLifted => "nonpositive-lifted",
            Family::Uniform { .. } => "uniform",
            Family::Bqp01 { .. } => "bqp01",
        }
    }

    pub fn kind(&self) -> ProblemKind {
        match self {
            Family::Gvc1 => ProblemKind::Gvc1,
            Family::Gvc2 | Family::Uniform { .. } => ProblemKind::Gvc2,
            Family::VcpnewFeasible => ProblemKind::Vcpnew,
            Family::IspnewFeasible => ProblemKind::Ispnew,
            _ => ProblemKind::Gvc,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub density: f64,
    pub c: (i64, i64),
    pub q0: (i64, i64),
    pub q1: (i64, i64),
    pub q2: (i64, i64),
    pub family: Family,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn new(n: usize, family: Family, seed: u64) -> Self {
        GeneratorConfig {
            n,
            density: 0.5,
            c: (-5, 5),
            q0: (-5, 5),
            q1: (-5, 5),
            q2: (-5, 5),
            family,
            seed,
        }
    }

    pub fn density(mut self, density: f64) -> Self {
        self.density = density;
        self
    }

    pub fn costs(mut self, lo: i64, hi: i64) -> Self {
        self.c = (lo, hi);
        self
    }

    /// Sets the same range for all three edge weights.
    pub fn weights(mut self, lo: i64, hi: i64) -> Self {
        self.q0 = (lo, hi);
        self.q1 = (lo, hi);
        self.q2 = (lo, hi);
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Generated {
    Gvc {
        instance: GvcInstance,
        kind: ProblemKind,
        partition: Option<BipartitePartition>,
    },
    Bqp01(Bqp01Instance),
}

impl Generated {
    /// The GVC instance, or `None` for a BQP01 instance.
    pub fn gvc(&self) -> Option<&GvcInstance> {
        match self {
            Generated::Gvc { instance, .. } => Some(instance),
            Generated::Bqp01(_) => None,
        }
    }

    /// # Panics
    /// On a BQP01 instance.
    pub fn into_gvc(self) -> GvcInstance {
        match self {
            Generated::Gvc { instance, .. } => instance,
            Generated::Bqp01(_) => panic!("generated a BQP01 instance, not a GVC instance"),
        }
    }

    pub fn kind(&self) -> Option<ProblemKind> {
        match self {
            Generated::Gvc { kind, .. } => Some(*kind),
            Generated::Bqp01(_) => None,
        }
    }
}

fn config_error(msg: String) -> Error {
    Error::Config(msg)
}

fn check_range(name: &str, (lo, hi): (i64, i64)) -> Result<()> {
    if lo > hi {
        Err(config_error(format!("empty {name} range [{lo}, {hi}]")))
    } else {
        Ok(())
    }
}

fn draw(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> f64 {
    rng.gen_range(lo..=hi) as f64
}

/// Largest integer `<= x` for finite `x` (no `libm` in `core`).
fn floor(x: f64) -> i64 {
    let t = x as i64;
    if (t as f64) > x {
        t - 1
    } else {
        t
    }
}

const REJECTION_TRIES: usize = 1000;

/// Draws an instance. Deterministic for a fixed configuration; the output is
/// re-checked against the family's constraints before it is returned.
pub fn generate(config: &GeneratorConfig) -> Result<Generated> {
    if !(0.0..=1.0).contains(&config.density) {
        return Err(config_error(format!(
            "density {} outside [0, 1]",
            config.density
        )));
    }
    check_range("c", config.c)?;
    check_range("q0", config.q0)?;
    check_range("q1", config.q1)?;
    check_range("q2", config.q2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = config.n;

    if let Family::Bqp01 { m } = config.family {
        let a = (0..m).map(|_| draw(&mut rng, config.c.0, config.c.1)).collect();
        let b = (0..n).map(|_| draw(&mut rng, config.c.0, config.c.1)).collect();
        let mut entries = Vec::new();
        for i in 0..m {
            for j in 0..n {
                if rng.gen::<f64>() < config.density {
                    entries.push((i, j, draw(&mut rng, config.q2.0, config.q2.1)));
                }
            }
        }
        return Ok(Generated::Bqp01(Bqp01Instance::new(a, b, entries)?));
    }

    let c_range = match config.family {
        Family::HlMonotone | Family::RatioBounded { .. } | Family::Band { .. } => {
            let lo = config.c.0.max(0);
            if lo > config.c.1 {
                return Err(config_error(format!(
                    "{} needs c >= 0 but the c range is [{}, {}]",
                    config.family.name(),
                    config.c.0,
                    config.c.1
                )));
            }
            (lo, config.c.1)
        }
        _ => config.c,
    };
    if let Family::Uniform { .. } = config.family {
        // no ranges involved
    } else {
        validate_family(config)?;
    }

    let mut costs: Vec<f64> = match config.family {
        Family::Uniform { gamma, .. } => vec![gamma as f64; n],
        _ => (0..n).map(|_| draw(&mut rng, c_range.0, c_range.1)).collect(),
    };
    let partition = match config.family {
        Family::Bipartite { .. } => Some(BipartitePartition::new(
            (0..n)
                .map(|_| if rng.gen::<bool>() { Side::Left } else { Side::Right })
                .collect(),
        )),
        _ => None,
    };

    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if let Some(p) = &partition {
                if p.side(u) == p.side(v) {
                    continue;
                }
            }
            if rng.gen::<f64>() < config.density {
                edges.push((u, v, draw_weights(config, &mut rng)?));
            }
        }
    }

    if config.family == Family::VcpnewFeasible {
        let mut shift = vec![0.0; n];
        for &(u, v, w) in &edges {
            shift[u] += w.q2 - w.q1;
            shift[v] += w.q2 - w.q1;
        }
        for (c, s) in costs.iter_mut().zip(shift) {
            // reflect a negative reduced weight instead of clamping it to 0
            if *c + s < 0.0 {
                *c = -2.0 * s - *c;
            }
        }
    }

    let instance = GvcInstance::new(costs, edges)?;
    check_family(&config.family, &instance, partition.as_ref())?;
    Ok(Generated::Gvc {
        instance,
        kind: config.family.kind(),
        partition,
    })
}

/// Rejects configurations whose ranges cannot produce any admissible edge.
fn validate_family(config: &GeneratorConfig) -> Result<()> {
    let (q0, q1, q2) = (config.q0, config.q1, config.q2);
    match config.family {
        Family::HlMonotone => {
            let a = q2.0.max(0);
            let b = q1.0.max(a);
            let c = q0.0.max(b);
            if a > q2.1 || b > q1.1 || c > q0.1 {
                return Err(config_error(format!(
                    "ranges q0 {q0:?}, q1 {q1:?}, q2 {q2:?} admit no q0 >= q1 >= q2 >= 0"
                )));
            }
        }
        Family::Band { k, alpha } => {
            if k < 0 || !(alpha > 1.0) || floor(alpha * k as f64) < k {
                return Err(config_error(format!(
                    "band [{k}, {alpha} * {k}] is empty or K < 0"
                )));
            }
        }
        Family::RatioBounded { alpha, beta } => {
            if !(alpha >= 1.0 && beta >= 1.0) {
                return Err(config_error(format!(
                    "ratio bounds need alpha, beta >= 1, got {alpha}, {beta}"
                )));
            }
            if q0.1 < 0 || q1.1 < 0 || q2.1 < 0 {
                return Err(config_error(String::from(
                    "ratio-bounded weights are nonnegative but a range is entirely negative",
                )));
            }
        }
        _ => {}
    }
    Ok(())
}

fn draw_weights(config: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Result<EdgeWeights> {
    let (r0, r1, r2) = (config.q0, config.q1, config.q2);
    let general = |rng: &mut ChaCha8Rng| {
        EdgeWeights::new(draw(rng, r0.0, r0.1), draw(rng, r1.0, r1.1), draw(rng, r2.0, r2.1))
    };
    let w = match config.family {
        Family::General => general(rng),
        Family::Gvc1 => EdgeWeights::new(draw(rng, r0.0, r0.1), 0.0, 0.0),
        Family::Gvc2 => EdgeWeights::new(0.0, 0.0, draw(rng, r2.0, r2.1)),
        Family::Uniform { delta, .. } => EdgeWeights::new(0.0, 0.0, delta as f64),
        Family::IspnewFeasible => {
            EdgeWeights::new(draw(rng, r0.0, r0.1), draw(rng, r1.0, r1.1), INF)
        }
        Family::VcpnewFeasible => {
            let mut found = None;
            for _ in 0..REJECTION_TRIES {
                let q1 = rng.gen_range(r1.0..=r1.1);
                let hi = r2.1.min(2 * q1);
                if r2.0 <= hi {
                    found = Some(EdgeWeights::new(INF, q1 as f64, draw(rng, r2.0, hi)));
                    break;
                }
            }
            found.ok_or_else(|| {
                config_error(format!("ranges q1 {r1:?}, q2 {r2:?} admit no q2 <= 2 q1"))
            })?
        }
        Family::HlMonotone => {
            let q2 = rng.gen_range(r2.0.max(0)..=r2.1.min(r1.1).min(r0.1));
            let q1 = rng.gen_range(r1.0.max(q2)..=r1.1.min(r0.1));
            let q0 = rng.gen_range(r0.0.max(q1)..=r0.1);
            EdgeWeights::new(q0 as f64, q1 as f64, q2 as f64)
        }
        Family::RatioBounded { alpha, beta } => {
            let mut found = None;
            for _ in 0..REJECTION_TRIES {
                let q0 = rng.gen_range(r0.0.max(0)..=r0.1);
                let hi1 = r1.1.min(floor(beta * q0 as f64));
                if r1.0.max(0) > hi1 {
                    continue;
                }
                let q1 = rng.gen_range(r1.0.max(0)..=hi1);
                let hi2 = r2.1.min(floor(alpha * q1 as f64));
                if r2.0.max(0) > hi2 {
                    continue;
                }
                let q2 = rng.gen_range(r2.0.max(0)..=hi2);
                found = Some(EdgeWeights::new(q0 as f64, q1 as f64, q2 as f64));
                break;
            }
            found.ok_or_else(|| {
                config_error(format!(
                    "ranges admit no q2 <= {alpha} q1, q1 <= {beta} q0 with q >= 0"
                ))
            })?
        }
        Family::Band { k, alpha } => {
            let hi = floor(alpha * k as f64);
            EdgeWeights::new(draw(rng, k, hi), draw(rng, k, hi), draw(rng, k, hi))
        }
        Family::Bipartite { lifted_nonneg: false } => general(rng),
        Family::Bipartite { lifted_nonneg: true } | Family::NonpositiveLifted => {
            let want_nonneg = matches!(config.family, Family::Bipartite { .. });
            let mut found = None;
            for _ in 0..REJECTION_TRIES {
                let w = general(rng);
                if (w.lifted() >= 0.0) == want_nonneg || w.lifted() == 0.0 {
                    found = Some(w);
                    break;
                }
            }
            found.ok_or_else(|| {
                config_error(format!(
                    "no sign-admissible lifted weight found in {REJECTION_TRIES} draws"
                ))
            })?
        }
        Family::Bqp01 { .. } => unreachable!("handled before edge sampling"),
    };
    Ok(w)
}

/// Checks that `instance` satisfies every constraint of `family`.
pub fn check_family(
    family: &Family,
    instance: &GvcInstance,
    partition: Option<&BipartitePartition>,
) -> Result<()> {
    let fail = |what: &str, u: usize, v: usize| {
        Err(config_error(format!(
            "{} instance violates {what} on edge ({u}, {v})",
            family.name()
        )))
    };
    let nonneg_costs = || instance.costs().iter().all(|&c| c >= 0.0);
    family.kind().check(instance)?;
    match family {
        Family::VcpnewFeasible => {
            let w = instance.incident_sums(|w| w.q2 - w.q1);
            if (0..instance.n()).any(|i| instance.cost(i) + w[i] < 0.0) {
                return Err(config_error(String::from("negative reduced MWVCP weight")));
            }
        }
        Family::Bipartite { .. } => {
            let p = partition.ok_or_else(|| config_error(String::from("missing partition")))?;
            p.validate(instance)?;
        }
        Family::HlMonotone | Family::RatioBounded { .. } | Family::Band { .. } => {
            if !nonneg_costs() {
                return Err(config_error(format!("{} needs c >= 0", family.name())));
            }
        }
        Family::Uniform { gamma, .. } => {
            if instance.costs().iter().any(|&c| c != *gamma as f64) {
                return Err(config_error(String::from("non-uniform vertex cost")));
            }
        }
        _ => {}
    }
    for e in instance.edges() {
        let w = e.weights;
        let ok = match family {
            Family::VcpnewFeasible => w.q0 == INF && w.q2 <= 2.0 * w.q1,
            Family::IspnewFeasible => w.q2 == INF,
            Family::Bipartite { lifted_nonneg } => !lifted_nonneg || w.lifted() >= 0.0,
            Family::HlMonotone => w.q0 >= w.q1 && w.q1 >= w.q2 && w.q2 >= 0.0,
            Family::RatioBounded { alpha, beta } => {
                w.q0 >= 0.0 && w.q1 >= 0.0 && w.q2 >= 0.0 && w.q2 <= alpha * w.q1 && w.q1 <= beta * w.q0
            }
            Family::Band { k, alpha } => {
                let (lo, hi) = (*k as f64, alpha * *k as f64);
                [w.q0, w.q1, w.q2].iter().all(|&q| lo <= q && q <= hi)
            }
            Family::NonpositiveLifted => w.lifted() <= 0.0,
            Family::Uniform { delta, .. } => w == EdgeWeights::new(0.0, 0.0, *delta as f64),
            _ => true,
        };
        if !ok {
            return fail("the family constraint", e.u, e.v);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(q0: f64, q1: f64, q2: f64) -> EdgeWeights {
        EdgeWeights::new(q0, q1, q2)
    }

    fn triangle(delta: f64) -> GvcInstance {
        GvcInstance::new(
            vec![1.0; 3],
            [
                (0, 1, w(INF, 0.0, 2.0)),
                (1, 2, w(INF, 0.0, 3.0)),
                (0, 2, w(INF, 0.0, 4.0 * delta)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn triangle_optimum() {
        // {0, 1} costs 4, {0, 2} costs 2 + 4 delta: the first pair wins only for delta >= 1/2
        let r = brute_force(&triangle(1.0), ProblemKind::Gvc).unwrap();
        assert_eq!(r.value, 4.0);
        assert_eq!(r.members, VertexSet::from_members(3, [0, 1]));
        let r = brute_force(&triangle(0.5), ProblemKind::Gvc).unwrap();
        assert_eq!((r.value, r.optimal_count), (4.0, Some(2)));
        assert_eq!(r.members, VertexSet::from_members(3, [0, 1]));
        let r = brute_force(&triangle(0.25), ProblemKind::Gvc).unwrap();
        assert_eq!(r.value, 3.0);
        assert_eq!(r.members, VertexSet::from_members(3, [0, 2]));
    }

    #[test]
    fn edgeless_picks_negative_costs() {
        let g = GvcInstance::edgeless(vec![1.0, -2.0, 3.0]).unwrap();
        let r = brute_force(&g, ProblemKind::Gvc).unwrap();
        assert_eq!(r.value, -2.0);
        assert_eq!(r.members, VertexSet::from_members(3, [1]));
        assert_eq!(r.optimal_count, Some(1));
    }

    #[test]
    fn single_edge_enumeration() {
        let g = GvcInstance::new(vec![0.0, 0.0], [(0, 1, w(5.0, 3.0, 2.0))]).unwrap();
        let r = brute_force(&g, ProblemKind::Gvc).unwrap();
        assert_eq!(r.value, 2.0);
        assert_eq!(r.members, VertexSet::full(2));
    }

    #[test]
    fn ties_break_on_smallest_mask() {
        let g = GvcInstance::edgeless(vec![0.0, 0.0]).unwrap();
        let r = brute_force(&g, ProblemKind::Gvc).unwrap();
        assert!(r.members.is_empty());
        assert_eq!(r.optimal_count, Some(4));
    }

    #[test]
    fn capacity_is_enforced() {
        let g = GvcInstance::edgeless(vec![0.0; 27]).unwrap();
        assert_eq!(
            brute_force(&g, ProblemKind::Gvc),
            Err(Error::Capacity { size: 27, max: 26 })
        );
    }

    #[test]
    fn ubqp_examples() {
        let q = UbqpInstance::new(vec![-2.0, -2.0], [(0, 1, 0.5)]).unwrap();
        let r = brute_force_ubqp(&q).unwrap();
        assert_eq!((r.value, r.members.len()), (-3.0, 2));
        let q = UbqpInstance::new(vec![1.0, 1.0], []).unwrap();
        let r = brute_force_ubqp(&q).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.members.is_empty());
        let q = UbqpInstance::new(vec![-1.0, -1.0], [(0, 1, -2.0)]).unwrap();
        assert_eq!(brute_force_ubqp(&q).unwrap().value, -6.0);
    }

    #[test]
    fn bqp01_small_side_examples() {
        let q = Bqp01Instance::new(vec![0.0], vec![1.0, -1.0], [(0, 0, 3.0), (0, 1, -2.0)]).unwrap();
        let r = brute_force_bqp01_small_side(&q).unwrap();
        assert_eq!(r.value, -3.0);
        assert_eq!(r.members, VertexSet::from_members(3, [0, 2]));
        assert_eq!(brute_force_bqp01_full(&q).unwrap().value, -3.0);

        let q = Bqp01Instance::new(vec![2.0, 1.0], vec![1.0], [(0, 0, 4.0)]).unwrap();
        let r = brute_force_bqp01_small_side(&q).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.members.is_empty());

        let q = Bqp01Instance::new(vec![-5.0], vec![-5.0], [(0, 0, 20.0)]).unwrap();
        let r = brute_force_bqp01_small_side(&q).unwrap();
        assert_eq!(r.value, -5.0);
        assert_eq!(r.optimal_count, Some(2));
        // rows {0} is mask 0b01, columns {0} is 0b10
        assert_eq!(r.members, VertexSet::from_members(2, [0]));
    }

    #[test]
    fn bqp01_enumerates_columns_when_smaller() {
        let q = Bqp01Instance::new(vec![1.0, -1.0], vec![0.0], [(0, 0, 3.0), (1, 0, -2.0)]).unwrap();
        let r = brute_force_bqp01_small_side(&q).unwrap();
        let full = brute_force_bqp01_full(&q).unwrap();
        assert_eq!(r, full);
    }

    #[test]
    fn duality_example() {
        let g = GvcInstance::new(
            vec![2.0, 1.0, 2.0],
            [(0, 1, EdgeWeights::ZERO), (1, 2, EdgeWeights::ZERO)],
        )
        .unwrap();
        let cover = brute_force(&g, ProblemKind::Mwvcp).unwrap();
        let independent = brute_force(&g, ProblemKind::Mwisp).unwrap();
        assert_eq!(cover.value, 1.0);
        assert_eq!(independent.value, 4.0);
        assert_eq!(cover.members.complement(), independent.members);
    }

    #[test]
    fn independence_number_of_path() {
        let p3 = GvcInstance::new(vec![0.0; 3], [(0, 1, EdgeWeights::ZERO), (1, 2, EdgeWeights::ZERO)])
            .unwrap();
        assert_eq!(independence_number(&p3).unwrap(), 2);
        assert_eq!(independence_number(&triangle(1.0)).unwrap(), 1);
    }

    #[test]
    fn generator_examples() {
        let g = generate(&GeneratorConfig::new(5, Family::General, 7).density(0.0))
            .unwrap()
            .into_gvc();
        assert_eq!((g.n(), g.m()), (5, 0));

        let g = generate(&GeneratorConfig::new(6, Family::HlMonotone, 1).weights(0, 9))
            .unwrap()
            .into_gvc();
        for e in g.edges() {
            let w = e.weights;
            assert!(w.q0 >= w.q1 && w.q1 >= w.q2 && w.q2 >= 0.0);
        }

        let g = generate(&GeneratorConfig::new(4, Family::Uniform { gamma: -2, delta: 2 }, 3))
            .unwrap()
            .into_gvc();
        assert!(g.costs().iter().all(|&c| c == -2.0));
        assert!(g.edges().iter().all(|e| e.weights == w(0.0, 0.0, 2.0)));
    }

    #[test]
    fn generator_is_deterministic() {
        let config = GeneratorConfig::new(9, Family::General, 42);
        assert_eq!(generate(&config).unwrap(), generate(&config).unwrap());
        let other = GeneratorConfig::new(9, Family::General, 43);
        assert_ne!(generate(&config).unwrap(), generate(&other).unwrap());
    }

    #[test]
    fn infeasible_ranges_are_config_errors() {
        let config = GeneratorConfig::new(4, Family::HlMonotone, 1).weights(-5, -1);
        assert!(matches!(generate(&config), Err(Error::Config(_))));
        let config = GeneratorConfig::new(4, Family::General, 1).costs(3, 1);
        assert!(matches!(generate(&config), Err(Error::Config(_))));
    }

    #[test]
    fn every_family_satisfies_its_constraints() {
        let families = [
            Family::General,
            Family::Gvc1,
            Family::Gvc2,
            Family::VcpnewFeasible,
            Family::IspnewFeasible,
            Family::Bipartite { lifted_nonneg: true },
            Family::HlMonotone,
            Family::RatioBounded { alpha: 1.5, beta: 2.0 },
            Family::Band { k: 2, alpha: 3.0 },
            Family::NonpositiveLifted,
            Family::Uniform { gamma: 1, delta: -1 },
        ];
        for family in families {
            for seed in 0..20 {
                let config = GeneratorConfig::new(8, family.clone(), seed).weights(0, 6);
                let generated = generate(&config).unwrap();
                assert_eq!(generated.kind(), Some(family.kind()));
            }
        }
    }
}
