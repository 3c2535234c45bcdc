//! Enumeration of decorated trees (T-fixed loci of the moduli of stable maps).
//!
//! A decorated tree maps tree vertices to graph vertices and tree edges to graph
//! edges with positive degrees. Unmarked trees are generated once per
//! isomorphism class by rooting them at their centre (a vertex) or bicentre
//! (an edge), and enumerating rooted trees canonically: the children of a node
//! form a sorted multiset of (degree, subtree) branches.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::curves::{CurveClass, CurveLattice};
use crate::error::Result;
use crate::graph::GkmGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub a: usize,
    pub b: usize,
    pub degree: u32,
    pub graph_edge: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedTree {
    pub vertex_image: Vec<usize>,
    pub edges: Vec<TreeEdge>,
    /// Order of the automorphism group of the unmarked tree.
    pub aut: u64,
}

impl DecoratedTree {
    pub fn num_vertices(&self) -> usize {
        self.vertex_image.len()
    }

    /// Edge multiplicities sum of degrees per graph edge.
    pub fn multiplicities(&self, num_edges: usize) -> Vec<u32> {
        let mut m = vec![0; num_edges];
        for e in &self.edges {
            m[e.graph_edge] += e.degree;
        }
        m
    }

    /// Tree edges incident to each vertex, as (edge index, other end).
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.a].push((i, e.b));
            adj[e.b].push((i, e.a));
        }
        adj
    }

    /// Canonical code of the tree with marking counts per vertex; equal codes
    /// mean isomorphic marked trees.
    pub fn canonical_code(&self, marks: &[Vec<usize>]) -> Vec<u64> {
        let adj = self.adjacency();
        let n = self.num_vertices();
        if n == 1 {
            return rooted_code(self, &adj, marks, 0, usize::MAX);
        }
        // Centre by repeated leaf removal.
        let mut deg: Vec<usize> = adj.iter().map(|a| a.len()).collect();
        let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
        let mut removed = layer.len();
        let mut alive = vec![true; n];
        while removed < n {
            let mut next = Vec::new();
            for &v in &layer {
                alive[v] = false;
                for &(_, u) in &adj[v] {
                    if alive[u] {
                        deg[u] -= 1;
                        if deg[u] == 1 {
                            next.push(u);
                        }
                    }
                }
            }
            removed += next.len();
            layer = next;
        }
        if layer.len() == 1 {
            let mut c = vec![0];
            c.extend(rooted_code(self, &adj, marks, layer[0], usize::MAX));
            c
        } else {
            let (mut x, mut y) = (layer[0], layer[1]);
            if self.vertex_image[x] > self.vertex_image[y] {
                std::mem::swap(&mut x, &mut y);
            }
            let (ei, _) = adj[x].iter().copied().find(|&(_, u)| u == y).expect("bicentre is an edge");
            let mut c = vec![1, self.edges[ei].degree as u64];
            c.extend(rooted_code(self, &adj, marks, x, y));
            c.extend(rooted_code(self, &adj, marks, y, x));
            c
        }
    }
}

fn rooted_code(t: &DecoratedTree, adj: &[Vec<(usize, usize)>], marks: &[Vec<usize>], v: usize, parent: usize) -> Vec<u64> {
    let mut kids: Vec<Vec<u64>> = adj[v]
        .iter()
        .filter(|&&(_, u)| u != parent)
        .map(|&(ei, u)| {
            let mut c = vec![t.edges[ei].degree as u64];
            c.extend(rooted_code(t, adj, marks, u, v));
            c
        })
        .collect();
    kids.sort();
    let mut m = marks[v].clone();
    m.sort();
    let mut code = vec![t.vertex_image[v] as u64, m.len() as u64];
    code.extend(m.iter().map(|&x| x as u64));
    code.push(kids.len() as u64);
    for k in kids {
        code.extend(k);
    }
    code
}

struct Node {
    v: usize,
    children: Vec<(u32, usize, Arc<Node>)>,
    height: u32,
    code: Vec<u32>,
    class: CurveClass,
    aut: u64,
}

type Branch = (u32, usize, Arc<Node>);

struct Generator<'a> {
    g: &'a GkmGraph,
    allowed: &'a HashSet<CurveClass>,
    edge_class: Vec<CurveClass>,
    memo: HashMap<(usize, u32), Arc<Vec<Arc<Node>>>>,
}

fn add(a: &[i64], b: &[i64], k: i64) -> CurveClass {
    a.iter().zip(b).map(|(x, y)| x + k * y).collect()
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

impl<'a> Generator<'a> {
    fn rooted(&mut self, v: usize, h: u32) -> Arc<Vec<Arc<Node>>> {
        if let Some(r) = self.memo.get(&(v, h)) {
            return r.clone();
        }
        let zero = vec![0; self.edge_class.first().map_or(0, |c| c.len())];
        let mut out = Vec::new();
        if h == 0 {
            out.push(Arc::new(Node { v, children: Vec::new(), height: 0, code: vec![v as u32, 0], class: zero, aut: 1 }));
        } else {
            let mut branches: Vec<(CurveClass, Branch)> = Vec::new();
            let nbrs: Vec<(usize, usize)> = self.g.neighbours(v).map(|(u, f)| (u, f / 2)).collect();
            for (u, e) in nbrs {
                let sub = self.rooted(u, h - 1);
                let ce = self.edge_class[e].clone();
                let mut d = 1u32;
                loop {
                    let base = add(&zero, &ce, d as i64);
                    if !self.allowed.contains(&base) {
                        break;
                    }
                    for t in sub.iter() {
                        let c = add(&base, &t.class, 1);
                        if self.allowed.contains(&c) {
                            branches.push((c, (d, e, t.clone())));
                        }
                    }
                    d += 1;
                }
            }
            branches.sort_by(|x, y| (x.1 .0, &x.1 .2.code).cmp(&(y.1 .0, &y.1 .2.code)));
            let mut chosen: Vec<usize> = Vec::new();
            self.multisets(v, &branches, 0, &zero, &mut chosen, &mut out);
        }
        let r = Arc::new(out);
        self.memo.insert((v, h), r.clone());
        r
    }

    fn multisets(
        &self,
        v: usize,
        branches: &[(CurveClass, Branch)],
        start: usize,
        class: &CurveClass,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Arc<Node>>,
    ) {
        out.push(Arc::new(self.make_node(v, branches, chosen, class.clone())));
        for i in start..branches.len() {
            let c = add(class, &branches[i].0, 1);
            if !self.allowed.contains(&c) {
                continue;
            }
            chosen.push(i);
            self.multisets(v, branches, i, &c, chosen, out);
            chosen.pop();
        }
    }

    fn make_node(&self, v: usize, branches: &[(CurveClass, Branch)], chosen: &[usize], class: CurveClass) -> Node {
        let children: Vec<Branch> = chosen.iter().map(|&i| branches[i].1.clone()).collect();
        let mut code = vec![v as u32, children.len() as u32];
        let mut aut = 1u64;
        let mut height = 0;
        let mut run = 1u64;
        for (k, (d, _, t)) in children.iter().enumerate() {
            code.push(*d);
            code.extend_from_slice(&t.code);
            aut *= t.aut;
            height = height.max(t.height + 1);
            if k > 0 && chosen[k] == chosen[k - 1] {
                run += 1;
            } else {
                aut *= factorial(run);
                run = 1;
            }
        }
        aut *= factorial(run);
        Node { v, children, height, code, class, aut }
    }
}

fn flatten(roots: &[(&Arc<Node>, Option<(u32, usize)>)], aut: u64) -> DecoratedTree {
    let mut t = DecoratedTree { vertex_image: Vec::new(), edges: Vec::new(), aut };
    fn walk(n: &Node, t: &mut DecoratedTree) -> usize {
        let id = t.vertex_image.len();
        t.vertex_image.push(n.v);
        for (d, e, c) in &n.children {
            let cid = walk(c, t);
            t.edges.push(TreeEdge { a: id, b: cid, degree: *d, graph_edge: *e });
        }
        id
    }
    let a = walk(roots[0].0, &mut t);
    if let Some((_, Some((d, e)))) = roots.get(1).map(|r| (r.0, r.1)) {
        let b = walk(roots[1].0, &mut t);
        t.edges.push(TreeEdge { a, b, degree: d, graph_edge: e });
    }
    t
}

/// All decorated trees of class `beta`, each isomorphism class once.
pub fn enumerate_trees(lat: &CurveLattice, beta: &[i64]) -> Result<Vec<DecoratedTree>> {
    let g = lat.graph().as_ref();
    let allowed = lat.sub_classes(beta)?;
    if !allowed.contains(beta) || beta.iter().all(|&x| x == 0) {
        return Ok(Vec::new());
    }
    let decomps = lat.effective_decompositions(beta)?;
    let max_edges = decomps.iter().map(|d| d.iter().sum::<u32>()).max().unwrap_or(0);
    let hmax = max_edges / 2;
    let edge_class: Vec<CurveClass> = (0..g.num_edges()).map(|e| lat.class_of_edge(e)).collect();
    let mut gen = Generator { g, allowed: &allowed, edge_class: edge_class.clone(), memo: HashMap::new() };
    let mut out = Vec::new();
    // Trees with a central vertex.
    for v in 0..g.num_vertices() {
        let all = gen.rooted(v, hmax);
        for t in all.iter() {
            if t.class.as_slice() != beta || t.height == 0 {
                continue;
            }
            let tall = t.children.iter().filter(|c| c.2.height + 1 == t.height).count();
            if tall >= 2 {
                out.push(flatten(&[(t, None)], t.aut));
            }
        }
    }
    // Trees with a central edge, oriented from its source to its target.
    let hb = max_edges.saturating_sub(1) / 2;
    for (e, &(x, y)) in g.edges().iter().enumerate() {
        let ce = &edge_class[e];
        let left = gen.rooted(x, hb);
        let right = gen.rooted(y, hb);
        let mut index: HashMap<(u32, &CurveClass), Vec<&Arc<Node>>> = HashMap::new();
        for b in right.iter() {
            index.entry((b.height, &b.class)).or_default().push(b);
        }
        let mut d = 1u32;
        loop {
            let base = add(&vec![0; ce.len()], ce, d as i64);
            if !allowed.contains(&base) {
                break;
            }
            for a in left.iter() {
                let need: CurveClass = beta.iter().zip(&base).zip(&a.class).map(|((p, q), r)| p - q - r).collect();
                if let Some(bs) = index.get(&(a.height, &need)) {
                    for b in bs {
                        out.push(flatten(&[(a, None), (b, Some((d, e)))], a.aut * b.aut));
                    }
                }
            }
            d += 1;
        }
    }
    Ok(out)
}
