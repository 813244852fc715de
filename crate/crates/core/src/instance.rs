//! Problem instances and exact objective evaluation.
//!
//! A [`GvcInstance`] is a simple graph with a cost `c_i` on every vertex and a
//! weight triple `(q0, q1, q2)` on every edge. For a subset `U` each edge falls
//! into exactly one class by the number of endpoints it has in `U`:
//!
//! * `E0(U)`: no endpoint selected, pays `q0`
//! * `E1(U)`: exactly one endpoint selected, pays `q1`
//! * `E2(U)`: both endpoints selected, pays `q2`
//!
//! The objective is `f(U) = sum_{i in U} c_i + sum_k sum_{E_k(U)} q^k`. The
//! named special cases ([`ProblemKind`]) differ in which weights are forced to
//! zero, which subsets are feasible and the optimization sense.
//!
//! Edge weights may be `+inf` ([`INF`]). Infinite weights are kept symbolic:
//! evaluation returns `f64::INFINITY` and only the LP layer replaces them with
//! a finite Big-M (see [`big_m`]).

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// The symbolic infinite weight.
pub const INF: f64 = f64::INFINITY;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeWeights {
    pub q0: f64,
    pub q1: f64,
    pub q2: f64,
}

impl EdgeWeights {
    pub const ZERO: EdgeWeights = EdgeWeights::new(0.0, 0.0, 0.0);

    pub const fn new(q0: f64, q1: f64, q2: f64) -> Self {
        EdgeWeights { q0, q1, q2 }
    }

    /// Weight paid when the edge has `class` endpoints in the subset.
    pub fn by_class(&self, class: usize) -> f64 {
        match class {
            0 => self.q0,
            1 => self.q1,
            2 => self.q2,
            _ => panic!("edge class {class} out of range"),
        }
    }

    /// `q2 - 2 q1 + q0`, the quadratic coefficient of every reduction to a
    /// quadratic program.
    pub fn lifted(&self) -> f64 {
        self.q2 - 2.0 * self.q1 + self.q0
    }

    pub fn is_finite(&self) -> bool {
        self.q0.is_finite() && self.q1.is_finite() && self.q2.is_finite()
    }

    fn as_array(&self) -> [f64; 3] {
        [self.q0, self.q1, self.q2]
    }
}

/// An undirected edge, stored with `u < v`.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weights: EdgeWeights,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            debug_assert_eq!(x, self.v);
            self.u
        }
    }
}

/// A generalized vertex cover instance. Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct GvcInstance {
    costs: Vec<f64>,
    edges: Vec<Edge>,
    incident: Vec<Vec<usize>>,
}

impl GvcInstance {
    /// Builds an instance with `costs.len()` vertices.
    ///
    /// Endpoints are normalized to `u < v`. Self-loops, duplicate edges,
    /// out-of-range endpoints, non-finite costs and weights that are NaN or
    /// `-inf` are rejected.
    pub fn new<I>(costs: Vec<f64>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, EdgeWeights)>,
    {
        let n = costs.len();
        for (i, &c) in costs.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::InvalidWeight {
                    what: format!("c_{i}"),
                    value: c,
                });
            }
        }
        let mut seen = BTreeSet::new();
        let mut stored = Vec::new();
        let mut incident = vec![Vec::new(); n];
        for (a, b, weights) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop { vertex: a });
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if !seen.insert((u, v)) {
                return Err(Error::DuplicateEdge { u, v });
            }
            for (name, q) in ["q0", "q1", "q2"].iter().zip(weights.as_array()) {
                if q.is_nan() || q == f64::NEG_INFINITY {
                    return Err(Error::InvalidWeight {
                        what: format!("{name} on edge ({u}, {v})"),
                        value: q,
                    });
                }
            }
            incident[u].push(stored.len());
            incident[v].push(stored.len());
            stored.push(Edge { u, v, weights });
        }
        Ok(GvcInstance {
            costs,
            edges: stored,
            incident,
        })
    }

    pub fn edgeless(costs: Vec<f64>) -> Result<Self> {
        Self::new(costs, core::iter::empty())
    }

    pub fn n(&self) -> usize {
        self.costs.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    pub fn cost(&self, i: usize) -> f64 {
        self.costs[i]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    /// Indices of the edges incident to `i`.
    pub fn incident(&self, i: usize) -> &[usize] {
        &self.incident[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.incident[i].len()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.incident[i].iter().map(move |&e| self.edges[e].other(i))
    }

    pub fn find_edge(&self, a: usize, b: usize) -> Option<usize> {
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        let probe = if self.degree(u) <= self.degree(v) { u } else { v };
        self.incident[probe]
            .iter()
            .copied()
            .find(|&e| self.edges[e].u == u && self.edges[e].v == v)
    }

    /// First edge carrying an infinite weight, if any.
    pub fn first_infinite_edge(&self) -> Option<&Edge> {
        self.edges.iter().find(|e| !e.weights.is_finite())
    }

    pub fn require_finite(&self) -> Result<()> {
        match self.first_infinite_edge() {
            Some(e) => Err(Error::InfiniteWeight { u: e.u, v: e.v }),
            None => Ok(()),
        }
    }

    /// Same graph with new vertex costs.
    pub fn with_costs(&self, costs: Vec<f64>) -> Result<Self> {
        assert_eq!(costs.len(), self.n());
        Self::new(costs, self.edges.iter().map(|e| (e.u, e.v, e.weights)))
    }

    /// Same graph with every edge's weights replaced by `f(edge)`.
    pub fn with_weights<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&Edge) -> EdgeWeights,
    {
        Self::new(
            self.costs.clone(),
            self.edges.iter().map(|e| (e.u, e.v, f(e))),
        )
    }

    /// `G - v`: the instance induced on every vertex except `v`. The second
    /// component maps new vertex indices to indices of `self`.
    pub fn without_vertex(&self, v: usize) -> (GvcInstance, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n()).filter(|&i| i != v).collect();
        let mut new_index = vec![usize::MAX; self.n()];
        for (k, &i) in keep.iter().enumerate() {
            new_index[i] = k;
        }
        let costs = keep.iter().map(|&i| self.costs[i]).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| e.u != v && e.v != v)
            .map(|e| (new_index[e.u], new_index[e.v], e.weights));
        let sub = GvcInstance::new(costs, edges).expect("induced subgraph of a valid instance");
        (sub, keep)
    }

    /// The same instance with edges sorted by `(u, v)`. Two instances describe
    /// the same problem iff their canonical forms are equal.
    pub fn canonical(&self) -> GvcInstance {
        let mut edges: Vec<&Edge> = self.edges.iter().collect();
        edges.sort_by_key(|e| (e.u, e.v));
        GvcInstance::new(self.costs.clone(), edges.into_iter().map(|e| (e.u, e.v, e.weights)))
            .expect("reordering keeps an instance valid")
    }

    /// `sum_{e in E} f(e)`.
    pub fn edge_sum<F: Fn(&EdgeWeights) -> f64>(&self, f: F) -> f64 {
        self.edges.iter().map(|e| f(&e.weights)).sum()
    }

    /// For every vertex `i`, `sum_{e incident to i} f(e)`. O(m).
    pub fn incident_sums<F: Fn(&EdgeWeights) -> f64>(&self, f: F) -> Vec<f64> {
        let mut sums = vec![0.0; self.n()];
        for e in &self.edges {
            let w = f(&e.weights);
            sums[e.u] += w;
            sums[e.v] += w;
        }
        sums
    }
}

/// Big-M used when `+inf` weights have to become finite:
/// `1 + sum |c_i| + sum over finite edge weights of |q|`.
///
/// Any two subsets' finite objective parts differ by less than this value, so
/// a subset paying one materialized infinity is never preferred to one
/// paying none.
pub fn big_m(instance: &GvcInstance) -> f64 {
    let costs: f64 = instance.costs().iter().map(|c| c.abs()).sum();
    let weights: f64 = instance
        .edges()
        .iter()
        .flat_map(|e| e.weights.as_array())
        .filter(|q| q.is_finite())
        .map(f64::abs)
        .sum();
    1.0 + costs + weights
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

impl Sense {
    /// Whether `a` is strictly better than `b` under this sense.
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Minimize => a < b,
            Sense::Maximize => a > b,
        }
    }

    pub fn flipped(self) -> Sense {
        match self {
            Sense::Minimize => Sense::Maximize,
            Sense::Maximize => Sense::Minimize,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Any,
    VertexCover,
    IndependentSet,
}

/// Which of `(q0, q1, q2)` a problem kind uses.
pub type FieldMask = [bool; 3];

const FIELD_NAMES: [&str; 3] = ["q0", "q1", "q2"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemKind {
    Gvc,
    Gvc1,
    Gvc2,
    Vcpnew,
    Vcop,
    Vcup,
    Ispnew,
    Isop,
    Isup,
    Mwvcp,
    Mwisp,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 11] = [
        ProblemKind::Gvc,
        ProblemKind::Gvc1,
        ProblemKind::Gvc2,
        ProblemKind::Vcpnew,
        ProblemKind::Vcop,
        ProblemKind::Vcup,
        ProblemKind::Ispnew,
        ProblemKind::Isop,
        ProblemKind::Isup,
        ProblemKind::Mwvcp,
        ProblemKind::Mwisp,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            ProblemKind::Gvc => "GVC",
            ProblemKind::Gvc1 => "GVC1",
            ProblemKind::Gvc2 => "GVC2",
            ProblemKind::Vcpnew => "VCPNEW",
            ProblemKind::Vcop => "VCOP",
            ProblemKind::Vcup => "VCUP",
            ProblemKind::Ispnew => "ISPNEW",
            ProblemKind::Isop => "ISOP",
            ProblemKind::Isup => "ISUP",
            ProblemKind::Mwvcp => "MWVCP",
            ProblemKind::Mwisp => "MWISP",
        }
    }

    /// Case-insensitive inverse of [`tag`](Self::tag).
    pub fn from_tag(s: &str) -> Option<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|k| k.tag().eq_ignore_ascii_case(s))
    }

    pub fn sense(self) -> Sense {
        match self {
            ProblemKind::Ispnew | ProblemKind::Isop | ProblemKind::Isup | ProblemKind::Mwisp => {
                Sense::Maximize
            }
            _ => Sense::Minimize,
        }
    }

    pub fn feasibility(self) -> Feasibility {
        use ProblemKind::*;
        match self {
            Gvc | Gvc1 | Gvc2 => Feasibility::Any,
            Vcpnew | Vcop | Vcup | Mwvcp => Feasibility::VertexCover,
            Ispnew | Isop | Isup | Mwisp => Feasibility::IndependentSet,
        }
    }

    /// Edge weights that enter the objective of this kind.
    pub fn reads(self) -> FieldMask {
        use ProblemKind::*;
        match self {
            Gvc => [true, true, true],
            Gvc1 => [true, false, false],
            Gvc2 => [false, false, true],
            Vcpnew => [false, true, true],
            Vcop => [false, false, true],
            Vcup => [false, true, false],
            Ispnew => [true, true, false],
            Isop => [true, false, false],
            Isup => [false, true, false],
            Mwvcp | Mwisp => [false, false, false],
        }
    }

    /// Edge weights this kind requires to be zero.
    pub fn forced_zero(self) -> FieldMask {
        use ProblemKind::*;
        match self {
            Gvc | Vcpnew | Ispnew => [false, false, false],
            Gvc1 => [false, true, true],
            Gvc2 => [true, true, false],
            Vcop | Isop => [false, true, false],
            Vcup => [false, false, true],
            Isup => [true, false, false],
            Mwvcp | Mwisp => [true, true, true],
        }
    }

    /// Checks the forced-zero fields of `instance`.
    pub fn check(self, instance: &GvcInstance) -> Result<()> {
        let zero = self.forced_zero();
        for e in instance.edges() {
            for (k, q) in e.weights.as_array().into_iter().enumerate() {
                if zero[k] && q != 0.0 {
                    return Err(Error::KindMismatch {
                        kind: self,
                        field: FIELD_NAMES[k],
                        u: e.u,
                        v: e.v,
                        value: q,
                    });
                }
            }
        }
        Ok(())
    }

    /// First edge (by index) that makes `set` infeasible for this kind.
    pub fn violated_edge(self, instance: &GvcInstance, set: &VertexSet) -> Option<usize> {
        let forbidden = match self.feasibility() {
            Feasibility::Any => return None,
            Feasibility::VertexCover => 0,
            Feasibility::IndependentSet => 2,
        };
        instance
            .edges()
            .iter()
            .position(|e| set.contains(e.u) as usize + set.contains(e.v) as usize == forbidden)
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A vertex subset over a fixed universe `0..n`.
///
/// The ordering compares subsets as binary numbers in which vertex `i`
/// contributes bit `i`; ties in the oracles are broken towards the smaller
/// set under this order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    member: Vec<bool>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            member: vec![false; n],
        }
    }

    pub fn full(n: usize) -> Self {
        VertexSet {
            member: vec![true; n],
        }
    }

    /// # Panics
    /// If a member is `>= n`.
    pub fn from_members<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Self {
        let mut set = Self::empty(n);
        for i in members {
            assert!(i < n, "vertex {i} out of range 0..{n}");
            set.member[i] = true;
        }
        set
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64);
        VertexSet {
            member: (0..n).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn from_bools(member: Vec<bool>) -> Self {
        VertexSet { member }
    }

    /// The set as a bitmask, when the universe fits in 64 bits.
    pub fn mask(&self) -> Option<u64> {
        (self.universe() <= 64).then(|| {
            self.member
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
    }

    pub fn universe(&self) -> usize {
        self.member.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.member[i]
    }

    pub fn insert(&mut self, i: usize) {
        self.member[i] = true;
    }

    pub fn remove(&mut self, i: usize) {
        self.member[i] = false;
    }

    pub fn len(&self) -> usize {
        self.member.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.member.iter().any(|&b| b)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.member
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
    }

    pub fn complement(&self) -> Self {
        VertexSet {
            member: self.member.iter().map(|&b| !b).collect(),
        }
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.member
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe().cmp(&other.universe()).then_with(|| {
            self.member
                .iter()
                .rev()
                .zip(other.member.iter().rev())
                .map(|(a, b)| a.cmp(b))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PartitionCounts {
    pub e0: usize,
    pub e1: usize,
    pub e2: usize,
}

impl PartitionCounts {
    pub fn total(&self) -> usize {
        self.e0 + self.e1 + self.e2
    }
}

/// `(E0(U), E1(U), E2(U))` as lists of edge indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgePartition {
    pub e0: Vec<usize>,
    pub e1: Vec<usize>,
    pub e2: Vec<usize>,
}

/// Classifies every edge by `|{u, v} ∩ U|`.
///
/// # Panics
/// If `set` is not over the instance's vertex set.
pub fn edge_partition(instance: &GvcInstance, set: &VertexSet) -> EdgePartition {
    assert_eq!(set.universe(), instance.n(), "subset universe mismatch");
    let mut p = EdgePartition::default();
    for (k, e) in instance.edges().iter().enumerate() {
        match set.contains(e.u) as usize + set.contains(e.v) as usize {
            0 => p.e0.push(k),
            1 => p.e1.push(k),
            _ => p.e2.push(k),
        }
    }
    p
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubsetSolution {
    pub members: VertexSet,
    /// Objective value; `f64::INFINITY` when an infinite weight is paid.
    pub value: f64,
    pub counts: PartitionCounts,
}

/// Objective of `set` under `kind`.
///
/// Only the weights `kind` reads enter the sum, so fields a kind ignores
/// (for instance `q0` of a vertex-cover kind) may hold anything. The sum is
/// the same for minimizing and maximizing kinds.
pub fn evaluate(instance: &GvcInstance, kind: ProblemKind, set: &VertexSet) -> Result<SubsetSolution> {
    if set.universe() != instance.n() {
        return Err(Error::UniverseMismatch {
            expected: instance.n(),
            found: set.universe(),
        });
    }
    if let Some(e) = kind.violated_edge(instance, set) {
        let e = instance.edge(e);
        return Err(Error::Infeasible {
            kind,
            u: e.u,
            v: e.v,
        });
    }
    let reads = kind.reads();
    let mut value: f64 = set.iter().map(|i| instance.cost(i)).sum();
    let mut counts = PartitionCounts::default();
    for e in instance.edges() {
        let class = set.contains(e.u) as usize + set.contains(e.v) as usize;
        match class {
            0 => counts.e0 += 1,
            1 => counts.e1 += 1,
            _ => counts.e2 += 1,
        }
        if reads[class] {
            value += e.weights.by_class(class);
        }
    }
    Ok(SubsetSolution {
        members: set.clone(),
        value,
        counts,
    })
}

/// Unconstrained binary quadratic program
/// `min sum a_i x_i + sum_{i,j} Q_ij x_i x_j` with `Q` symmetric and a zero
/// diagonal.
///
/// Only the strict upper triangle is stored, as sorted nonzero `(i, j, Q_ij)`
/// triples with `i < j`; in subset form the objective is
/// `sum_{i in U} a_i + sum_{i<j, both in U} 2 Q_ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct UbqpInstance {
    linear: Vec<f64>,
    pairs: Vec<(usize, usize, f64)>,
}

impl UbqpInstance {
    /// Builds from the linear vector and upper-triangle entries `(i, j, Q_ij)`.
    /// Entries may be given in either orientation; zeros are dropped.
    pub fn new<I>(linear: Vec<f64>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let n = linear.len();
        for (i, &a) in linear.iter().enumerate() {
            if !a.is_finite() {
                return Err(Error::InvalidWeight {
                    what: format!("a_{i}"),
                    value: a,
                });
            }
        }
        let mut pairs = Vec::new();
        for (a, b, q) in entries {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if !q.is_finite() {
                return Err(Error::InvalidWeight {
                    what: format!("Q_({a},{b})"),
                    value: q,
                });
            }
            if a == b {
                if q != 0.0 {
                    return Err(Error::NonzeroDiagonal { i: a });
                }
                continue;
            }
            if q != 0.0 {
                pairs.push((a.min(b), a.max(b), q));
            }
        }
        pairs.sort_by_key(|x| (x.0, x.1));
        if let Some(w) = pairs.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::DuplicateEdge { u: w[0].0, v: w[0].1 });
        }
        Ok(UbqpInstance { linear, pairs })
    }

    /// Builds from a dense row-major `n x n` matrix, which must be symmetric
    /// with a zero diagonal.
    pub fn from_dense(linear: Vec<f64>, matrix: &[f64]) -> Result<Self> {
        let n = linear.len();
        if matrix.len() != n * n {
            return Err(Error::Dimension(format!(
                "matrix has {} entries, expected {}",
                matrix.len(),
                n * n
            )));
        }
        let mut entries = Vec::new();
        for i in 0..n {
            if matrix[i * n + i] != 0.0 {
                return Err(Error::NonzeroDiagonal { i });
            }
            for j in i + 1..n {
                if matrix[i * n + j] != matrix[j * n + i] {
                    return Err(Error::NotSymmetric { i, j });
                }
                entries.push((i, j, matrix[i * n + j]));
            }
        }
        Self::new(linear, entries)
    }

    pub fn n(&self) -> usize {
        self.linear.len()
    }

    pub fn linear(&self) -> &[f64] {
        &self.linear
    }

    /// Nonzero strict-upper-triangle entries `(i, j, Q_ij)`, sorted.
    pub fn pairs(&self) -> &[(usize, usize, f64)] {
        &self.pairs
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let key = (i.min(j), i.max(j));
        self.pairs
            .binary_search_by(|p| (p.0, p.1).cmp(&key))
            .map(|k| self.pairs[k].2)
            .unwrap_or(0.0)
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.n();
        let mut m = vec![0.0; n * n];
        for &(i, j, q) in &self.pairs {
            m[i * n + j] = q;
            m[j * n + i] = q;
        }
        m
    }

    pub fn objective(&self, set: &VertexSet) -> f64 {
        assert_eq!(set.universe(), self.n(), "subset universe mismatch");
        let linear: f64 = set.iter().map(|i| self.linear[i]).sum();
        let quadratic: f64 = self
            .pairs
            .iter()
            .filter(|&&(i, j, _)| set.contains(i) && set.contains(j))
            .map(|&(_, _, q)| 2.0 * q)
            .sum();
        linear + quadratic
    }

    /// The support graph `{(i, j) : Q_ij != 0, i < j}`.
    pub fn support_graph(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().map(|&(i, j, _)| (i, j)).collect()
    }
}

/// Free-function form of [`UbqpInstance::support_graph`].
pub fn support_graph(q: &UbqpInstance) -> Vec<(usize, usize)> {
    q.support_graph()
}

/// Bipartite 0-1 quadratic program
/// `min x^T Q y + a x + b y` with `x in {0,1}^m`, `y in {0,1}^n`.
///
/// Solutions are [`VertexSet`]s over `m + n` variables: indices `0..m` are the
/// rows (`x`), indices `m..m+n` the columns (`y`).
#[derive(Clone, Debug, PartialEq)]
pub struct Bqp01Instance {
    a: Vec<f64>,
    b: Vec<f64>,
    entries: Vec<(usize, usize, f64)>,
}

impl Bqp01Instance {
    pub fn new<I>(a: Vec<f64>, b: Vec<f64>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let (m, n) = (a.len(), b.len());
        for (name, v) in [("a", &a), ("b", &b)] {
            if let Some((i, &x)) = v.iter().enumerate().find(|(_, x)| !x.is_finite()) {
                return Err(Error::InvalidWeight {
                    what: format!("{name}_{i}"),
                    value: x,
                });
            }
        }
        let mut stored = Vec::new();
        for (i, j, q) in entries {
            if i >= m || j >= n {
                return Err(Error::Dimension(format!(
                    "entry ({i}, {j}) outside a {m} x {n} matrix"
                )));
            }
            if !q.is_finite() {
                return Err(Error::InvalidWeight {
                    what: format!("Q_({i},{j})"),
                    value: q,
                });
            }
            if q != 0.0 {
                stored.push((i, j, q));
            }
        }
        stored.sort_by_key(|x| (x.0, x.1));
        if let Some(w) = stored.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::DuplicateEdge { u: w[0].0, v: w[0].1 });
        }
        Ok(Bqp01Instance { a, b, entries: stored })
    }

    pub fn m(&self) -> usize {
        self.a.len()
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// Nonzero entries `(i, j, Q_ij)` sorted by `(i, j)`.
    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries
            .binary_search_by(|p| (p.0, p.1).cmp(&(i, j)))
            .map(|k| self.entries[k].2)
            .unwrap_or(0.0)
    }

    /// `phi(U1, U2)` for a set over `m + n` variables.
    pub fn objective(&self, set: &VertexSet) -> f64 {
        let m = self.m();
        assert_eq!(set.universe(), m + self.n(), "subset universe mismatch");
        let rows: f64 = (0..m).filter(|&i| set.contains(i)).map(|i| self.a[i]).sum();
        let cols: f64 = (0..self.n())
            .filter(|&j| set.contains(m + j))
            .map(|j| self.b[j])
            .sum();
        let quad: f64 = self
            .entries
            .iter()
            .filter(|&&(i, j, _)| set.contains(i) && set.contains(m + j))
            .map(|&(_, _, q)| q)
            .sum();
        rows + cols + quad
    }

    /// The same problem with the roles of rows and columns exchanged.
    pub fn transpose(&self) -> Bqp01Instance {
        Bqp01Instance::new(
            self.b.clone(),
            self.a.clone(),
            self.entries.iter().map(|&(i, j, q)| (j, i, q)),
        )
        .expect("transpose of a valid instance")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A bipartition `V = V1 ∪ V2` of an instance's vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartitePartition {
    sides: Vec<Side>,
}

impl BipartitePartition {
    pub fn new(sides: Vec<Side>) -> Self {
        BipartitePartition { sides }
    }

    pub fn from_left<I: IntoIterator<Item = usize>>(n: usize, left: I) -> Self {
        let mut sides = vec![Side::Right; n];
        for i in left {
            sides[i] = Side::Left;
        }
        BipartitePartition { sides }
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn side(&self, i: usize) -> Side {
        self.sides[i]
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    /// `V1` in increasing vertex order.
    pub fn left(&self) -> Vec<usize> {
        self.of(Side::Left)
    }

    /// `V2` in increasing vertex order.
    pub fn right(&self) -> Vec<usize> {
        self.of(Side::Right)
    }

    fn of(&self, side: Side) -> Vec<usize> {
        (0..self.sides.len())
            .filter(|&i| self.sides[i] == side)
            .collect()
    }

    /// The right-side costs `d_j`, in the order of [`right`](Self::right).
    pub fn right_costs(&self, instance: &GvcInstance) -> Vec<f64> {
        self.right().into_iter().map(|j| instance.cost(j)).collect()
    }

    /// Checks that the partition covers the vertex set and every edge crosses it.
    pub fn validate(&self, instance: &GvcInstance) -> Result<()> {
        if self.sides.len() != instance.n() {
            return Err(Error::Dimension(format!(
                "partition has {} vertices, instance has {}",
                self.sides.len(),
                instance.n()
            )));
        }
        match instance
            .edges()
            .iter()
            .find(|e| self.sides[e.u] == self.sides[e.v])
        {
            Some(e) => Err(Error::NotBipartite { u: e.u, v: e.v }),
            None => Ok(()),
        }
    }

    /// A 2-coloring by breadth-first search, with the smallest vertex of each
    /// component on the left. `None` if the graph has an odd cycle.
    pub fn two_color(instance: &GvcInstance) -> Option<Self> {
        let n = instance.n();
        let mut sides: Vec<Option<Side>> = vec![None; n];
        let mut queue = alloc::collections::VecDeque::new();
        for start in 0..n {
            if sides[start].is_some() {
                continue;
            }
            sides[start] = Some(Side::Left);
            queue.push_back(start);
            while let Some(x) = queue.pop_front() {
                let opposite = match sides[x] {
                    Some(Side::Left) => Side::Right,
                    _ => Side::Left,
                };
                for y in instance.neighbors(x) {
                    match sides[y] {
                        None => {
                            sides[y] = Some(opposite);
                            queue.push_back(y);
                        }
                        Some(s) if s != opposite => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(BipartitePartition {
            sides: sides.into_iter().map(|s| s.unwrap()).collect(),
        })
    }
}
