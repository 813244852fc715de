//! Max-flow / min-cut and the pseudo-boolean network construction.
//!
//! A quadratic pseudo-boolean function
//! `constant + sum l_i x_i + sum w_ij x_i x_j` with every `w_ij <= 0` is
//! rewritten as an s-t cut function. A vertex on the source side of the cut
//! has `x_i = 1`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::VertexSet;

/// Residual capacities at or below this are treated as saturated.
const EPS: f64 = 1e-12;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    cap: f64,
}

/// A directed network on vertices `0..n` plus a source and a sink. Arcs are
/// stored in pairs: arc `2k` and its residual twin `2k + 1`.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    n: usize,
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    /// Constant term collected while building the network.
    pub constant: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinCut {
    /// Capacity of the minimum cut.
    pub capacity: f64,
    /// `capacity + constant`, the minimum of the encoded function.
    pub value: f64,
    /// Vertices reachable from the source in the final residual network.
    pub source_side: VertexSet,
}

impl FlowNetwork {
    /// A network with inner vertices `0..n`; the source is `n`, the sink `n + 1`.
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            n,
            arcs: Vec::new(),
            out: vec![Vec::new(); n + 2],
            constant: 0.0,
        }
    }

    pub fn source(&self) -> usize {
        self.n
    }

    pub fn sink(&self) -> usize {
        self.n + 1
    }

    pub fn inner(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len() / 2
    }

    /// # Panics
    /// On a negative or non-finite capacity.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: f64) {
        assert!(cap >= 0.0 && cap.is_finite(), "arc capacity {cap} is not a nonnegative real");
        if cap == 0.0 {
            return;
        }
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0.0 });
    }

    fn levels(&self) -> Option<Vec<usize>> {
        let mut level = vec![usize::MAX; self.n + 2];
        level[self.source()] = 0;
        let mut queue = VecDeque::from([self.source()]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.out[x] {
                let arc = &self.arcs[a];
                if arc.cap > EPS && level[arc.to] == usize::MAX {
                    level[arc.to] = level[x] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        (level[self.sink()] != usize::MAX).then_some(level)
    }

    fn augment(&mut self, x: usize, limit: f64, level: &[usize], next: &mut [usize]) -> f64 {
        if x == self.sink() {
            return limit;
        }
        while next[x] < self.out[x].len() {
            let a = self.out[x][next[x]];
            let Arc { to, cap } = self.arcs[a];
            if cap > EPS && level[to] == level[x] + 1 {
                let pushed = self.augment(to, limit.min(cap), level, next);
                if pushed > EPS {
                    self.arcs[a].cap -= pushed;
                    self.arcs[a ^ 1].cap += pushed;
                    return pushed;
                }
            }
            next[x] += 1;
        }
        0.0
    }

    /// Runs Dinic's algorithm to completion and returns the minimum cut.
    /// Consumes the residual capacities; clone first to reuse the network.
    pub fn min_cut(&mut self) -> MinCut {
        let mut flow = 0.0;
        while let Some(level) = self.levels() {
            let mut next = vec![0usize; self.n + 2];
            loop {
                let pushed = self.augment(self.source(), f64::INFINITY, &level, &mut next);
                if pushed <= EPS {
                    break;
                }
                flow += pushed;
            }
        }
        let mut reach = vec![false; self.n + 2];
        reach[self.source()] = true;
        let mut queue = VecDeque::from([self.source()]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.out[x] {
                let arc = &self.arcs[a];
                if arc.cap > EPS && !reach[arc.to] {
                    reach[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        reach.truncate(self.n);
        MinCut {
            capacity: flow,
            value: flow + self.constant,
            source_side: VertexSet::from_bools(reach),
        }
    }
}

/// `constant + sum l_i x_i + sum w_ij x_i x_j` over `x in {0,1}^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoBoolean {
    pub constant: f64,
    pub linear: Vec<f64>,
    pub pairs: Vec<(usize, usize, f64)>,
}

impl PseudoBoolean {
    pub fn value(&self, set: &VertexSet) -> f64 {
        let linear: f64 = set.iter().map(|i| self.linear[i]).sum();
        let pairs: f64 = self
            .pairs
            .iter()
            .filter(|&&(i, j, _)| set.contains(i) && set.contains(j))
            .map(|&(_, _, w)| w)
            .sum();
        self.constant + linear + pairs
    }

    /// The cut network of the function. Every pair coefficient must be `<= 0`.
    ///
    /// `w x_i x_j = w x_i + (-w) x_i (1 - x_j)` becomes an arc `i -> j`;
    /// a linear `l x_i` with `l >= 0` becomes an arc `i -> t`, and with `l < 0`
    /// it is `l + (-l)(1 - x_i)`, an arc `s -> i`.
    pub fn network(&self) -> Result<FlowNetwork> {
        let n = self.linear.len();
        let mut net = FlowNetwork::new(n);
        net.constant = self.constant;
        let mut linear = self.linear.clone();
        for &(i, j, w) in &self.pairs {
            if w > 0.0 {
                return Err(Error::Precondition(format!(
                    "pair ({i}, {j}) has positive coefficient {w}; the cut construction needs <= 0"
                )));
            }
            linear[i] += w;
            net.add_arc(i, j, -w);
        }
        let (s, t) = (net.source(), net.sink());
        for (i, &l) in linear.iter().enumerate() {
            if l >= 0.0 {
                net.add_arc(i, t, l);
            } else {
                net.constant += l;
                net.add_arc(s, i, -l);
            }
        }
        Ok(net)
    }

    /// Exact minimizer via min-cut.
    pub fn minimize(&self) -> Result<MinCut> {
        Ok(self.network()?.min_cut())
    }
}
