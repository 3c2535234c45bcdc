//! Abstract GKM graphs: vertices, edges, flags and their axial weights.

mod betti;
pub mod construct;
pub mod io;

use std::collections::HashMap;
use std::fmt;

use crate::algebra::linalg::rank_int;
use crate::error::{Error, Result};

pub use betti::{betti_numbers, betti_numbers_with, generic_direction};

/// Weight vector in the character lattice Z^r.
pub type Weight = Vec<i64>;

/// Index of a flag. Edge `e` owns flags `2e` (at its source) and `2e + 1`
/// (at its target); extra, non-compact flags follow.
pub type FlagId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmGraph {
    rank: usize,
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
    weights: Vec<Weight>,
    extra_vertex: Vec<usize>,
    flags_at: Vec<Vec<FlagId>>,
    edge_index: HashMap<(usize, usize), usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Loop { edge: usize },
    MultiEdge { edge: usize },
    Disconnected,
    NonConstantValency { vertex: usize, valency: usize, expected: usize },
    ZeroWeight { flag: FlagId },
    OppositeFlag { edge: usize },
    Dependent { vertex: usize, flags: (FlagId, FlagId) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Loop { edge } => write!(f, "edge {edge} is a loop"),
            Violation::MultiEdge { edge } => write!(f, "edge {edge} duplicates another edge"),
            Violation::Disconnected => write!(f, "graph is not connected"),
            Violation::NonConstantValency { vertex, valency, expected } => {
                write!(f, "vertex {vertex} has valency {valency}, expected {expected}")
            }
            Violation::ZeroWeight { flag } => write!(f, "flag {flag} has zero weight"),
            Violation::OppositeFlag { edge } => {
                write!(f, "weights at the two ends of edge {edge} are not opposite")
            }
            Violation::Dependent { vertex, flags } => {
                write!(f, "flags {} and {} at vertex {vertex} have dependent weights", flags.0, flags.1)
            }
        }
    }
}

impl GkmGraph {
    /// Build a graph from edges `(src, dst, weight at src)`; the weight at `dst` is the negative.
    pub fn new(
        rank: usize,
        labels: Vec<String>,
        edges: Vec<(usize, usize, Weight)>,
        extra: Vec<(usize, Weight)>,
    ) -> Result<Self> {
        let mut weights = Vec::with_capacity(2 * edges.len() + extra.len());
        let mut pairs = Vec::with_capacity(edges.len());
        for (s, d, w) in edges {
            let neg: Weight = w.iter().map(|x| -x).collect();
            weights.push(w);
            weights.push(neg);
            pairs.push((s, d));
        }
        let (ev, ew): (Vec<usize>, Vec<Weight>) = extra.into_iter().unzip();
        weights.extend(ew);
        Self::from_flag_weights(rank, labels, pairs, weights, ev)
    }

    /// Build from explicit weights on every flag (edge flags first, then extras).
    pub fn from_flag_weights(
        rank: usize,
        labels: Vec<String>,
        edges: Vec<(usize, usize)>,
        weights: Vec<Weight>,
        extra_vertex: Vec<usize>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidGraph("no vertices".into()));
        }
        if weights.len() != 2 * edges.len() + extra_vertex.len() {
            return Err(Error::InvalidGraph("flag count mismatch".into()));
        }
        if let Some(w) = weights.iter().find(|w| w.len() != rank) {
            return Err(Error::InvalidGraph(format!("weight {w:?} does not have length {rank}")));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(l) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::InvalidGraph(format!("duplicate vertex label {l}")));
        }
        for &(s, d) in &edges {
            if s >= n || d >= n {
                return Err(Error::InvalidGraph(format!("edge ({s}, {d}) out of range")));
            }
        }
        if let Some(&v) = extra_vertex.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidGraph(format!("extra flag at {v} out of range")));
        }
        let mut g = GkmGraph {
            rank,
            labels,
            edges,
            weights,
            extra_vertex,
            flags_at: Vec::new(),
            edge_index: HashMap::new(),
        };
        g.index();
        Ok(g)
    }

    fn index(&mut self) {
        let n = self.labels.len();
        let mut flags_at: Vec<Vec<FlagId>> = vec![Vec::new(); n];
        for (e, &(s, d)) in self.edges.iter().enumerate() {
            flags_at[s].push(2 * e);
            flags_at[d].push(2 * e + 1);
            self.edge_index.entry((s.min(d), s.max(d))).or_insert(e);
        }
        for v in 0..n {
            flags_at[v].sort_by_key(|&f| (self.flag_target_raw(f), f));
        }
        for (i, &v) in self.extra_vertex.iter().enumerate() {
            flags_at[v].push(2 * self.edges.len() + i);
        }
        self.flags_at = flags_at;
    }

    fn flag_target_raw(&self, f: FlagId) -> usize {
        let (s, d) = self.edges[f / 2];
        if f % 2 == 0 {
            d
        } else {
            s
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_flags(&self) -> usize {
        self.weights.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn is_compact(&self) -> bool {
        self.extra_vertex.is_empty()
    }

    pub fn valency(&self) -> usize {
        self.flags_at.first().map_or(0, |f| f.len())
    }

    pub fn flags_at(&self, v: usize) -> &[FlagId] {
        &self.flags_at[v]
    }

    pub fn extra_flags(&self) -> impl Iterator<Item = (usize, &Weight)> {
        let base = 2 * self.edges.len();
        self.extra_vertex.iter().enumerate().map(move |(i, &v)| (v, &self.weights[base + i]))
    }

    pub fn weight(&self, f: FlagId) -> &Weight {
        &self.weights[f]
    }

    pub fn flag_vertex(&self, f: FlagId) -> usize {
        if f < 2 * self.edges.len() {
            let (s, d) = self.edges[f / 2];
            if f % 2 == 0 {
                s
            } else {
                d
            }
        } else {
            self.extra_vertex[f - 2 * self.edges.len()]
        }
    }

    pub fn flag_edge(&self, f: FlagId) -> Option<usize> {
        (f < 2 * self.edges.len()).then_some(f / 2)
    }

    /// Other endpoint of an edge flag.
    pub fn flag_target(&self, f: FlagId) -> Option<usize> {
        (f < 2 * self.edges.len()).then(|| self.flag_target_raw(f))
    }

    /// Flag of the same edge at the other endpoint.
    pub fn opposite(&self, f: FlagId) -> Option<FlagId> {
        (f < 2 * self.edges.len()).then_some(f ^ 1)
    }

    /// The flag of edge `e` based at `v`.
    pub fn edge_flag(&self, e: usize, v: usize) -> FlagId {
        let (s, d) = self.edges[e];
        if v == s {
            2 * e
        } else {
            assert_eq!(v, d, "vertex is not an endpoint of the edge");
            2 * e + 1
        }
    }

    /// Flag from `u` towards its neighbour `v`.
    pub fn flag_towards(&self, u: usize, v: usize) -> Option<FlagId> {
        self.edge_between(u, v).map(|e| self.edge_flag(e, u))
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = (usize, FlagId)> + '_ {
        self.flags_at[v].iter().filter_map(move |&f| self.flag_target(f).map(|t| (t, f)))
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (e, &(s, d)) in self.edges.iter().enumerate() {
            if s == d {
                out.push(Violation::Loop { edge: e });
            } else if !seen.insert((s.min(d), s.max(d))) {
                out.push(Violation::MultiEdge { edge: e });
            }
        }
        if !self.is_connected() {
            out.push(Violation::Disconnected);
        }
        let expected = self.flags_at[0].len();
        for (v, fl) in self.flags_at.iter().enumerate() {
            if fl.len() != expected {
                out.push(Violation::NonConstantValency { vertex: v, valency: fl.len(), expected });
            }
        }
        for (f, w) in self.weights.iter().enumerate() {
            if w.iter().all(|&x| x == 0) {
                out.push(Violation::ZeroWeight { flag: f });
            }
        }
        for e in 0..self.edges.len() {
            let (a, b) = (&self.weights[2 * e], &self.weights[2 * e + 1]);
            if a.iter().zip(b).any(|(x, y)| x + y != 0) {
                out.push(Violation::OppositeFlag { edge: e });
            }
        }
        for (v, fl) in self.flags_at.iter().enumerate() {
            for i in 0..fl.len() {
                for j in i + 1..fl.len() {
                    let (wi, wj) = (&self.weights[fl[i]], &self.weights[fl[j]]);
                    if wi.iter().all(|&x| x == 0) || wj.iter().all(|&x| x == 0) {
                        continue;
                    }
                    if rank_int(&[wi.clone(), wj.clone()]) < 2 {
                        out.push(Violation::Dependent { vertex: v, flags: (fl[i], fl[j]) });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn check(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidGraph(v.to_string())),
        }
    }

    fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (u, _) in self.neighbours(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Largest k such that the weights at each vertex are k-wise linearly independent.
    pub fn k_independence(&self) -> usize {
        let val = self.valency();
        let mut best = val;
        for fl in &self.flags_at {
            let ws: Vec<&Weight> = fl.iter().map(|&f| &self.weights[f]).collect();
            let mut k = 1;
            while k < best.min(ws.len()) {
                if !subsets_independent(&ws, k + 1) {
                    break;
                }
                k += 1;
            }
            best = best.min(k);
        }
        best
    }

    /// Sum of all flag weights at `v`, as the weight of the top exterior power.
    pub fn weight_sum(&self, v: usize) -> Weight {
        let mut s = vec![0; self.rank];
        for &f in &self.flags_at[v] {
            for (a, b) in s.iter_mut().zip(&self.weights[f]) {
                *a += b;
            }
        }
        s
    }

    /// One summary line and one line per edge `src -> dst => (weight at src)`,
    /// with edges oriented from larger to smaller vertex index.
    pub fn describe(&self) -> String {
        let mut lines: Vec<(usize, usize, &Weight)> = self
            .edges
            .iter()
            .enumerate()
            .map(|(e, &(s, d))| {
                if s > d {
                    (s, d, &self.weights[2 * e])
                } else {
                    (d, s, &self.weights[2 * e + 1])
                }
            })
            .collect();
        lines.sort_by_key(|&(s, d, _)| (s, d));
        let mut out = format!(
            "GKM graph with {} nodes, valency {} and axial function:\n",
            self.num_vertices(),
            self.valency()
        );
        for (s, d, w) in lines {
            out.push_str(&format!("{} -> {} => {}\n", self.labels[s], self.labels[d], fmt_weight(w)));
        }
        for (v, w) in self.extra_flags() {
            out.push_str(&format!("{} -> * => {}\n", self.labels[v], fmt_weight(w)));
        }
        out
    }
}

pub fn fmt_weight(w: &[i64]) -> String {
    let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn subsets_independent(ws: &[&Weight], k: usize) -> bool {
    fn rec(ws: &[&Weight], k: usize, start: usize, cur: &mut Vec<Weight>) -> bool {
        if cur.len() == k {
            return rank_int(cur) == k;
        }
        for i in start..ws.len() {
            cur.push(ws[i].clone());
            let ok = rec(ws, k, i + 1, cur);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    rec(ws, k, 0, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn broken_opposite_axiom_is_reported() {
        let g = GkmGraph::from_flag_weights(
            1,
            vec!["p".into(), "q".into()],
            vec![(0, 1)],
            vec![vec![1], vec![1]],
            vec![],
        )
        .unwrap();
        assert_eq!(g.validate(), vec![Violation::OppositeFlag { edge: 0 }]);
    }

    #[test]
    fn dependent_weights_are_reported() {
        let g = GkmGraph::new(
            2,
            vec!["a".into(), "b".into(), "c".into()],
            vec![(0, 1, vec![1, 0]), (0, 2, vec![2, 0]), (1, 2, vec![1, 1])],
            vec![],
        )
        .unwrap();
        assert!(g.validate().iter().any(|v| matches!(v, Violation::Dependent { vertex: 0, .. })));
    }
}
