//! The lattice of curve classes of a GKM graph and effective decompositions.

pub mod fm;
pub mod lattice;

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::linalg::solve_any;
use crate::algebra::rat;
use crate::connection::chern_numbers;
use crate::error::{Error, Result};
use crate::graph::GkmGraph;
use lattice::{columns_generate, hermite, integer_kernel, to_big, to_small};

/// Coordinates of a curve class in the lattice basis.
pub type CurveClass = Vec<i64>;

#[derive(Clone, Debug)]
pub struct CurveLattice {
    graph: Arc<GkmGraph>,
    relations: Vec<Vec<i64>>,
    /// b × |E|; column e is the class of edge e.
    proj: Vec<Vec<i64>>,
    chern: Vec<i64>,
}

/// Relations sum over a cycle of α(flag)_j 1_edge, one per cycle and coordinate j.
fn cycle_relations(g: &GkmGraph) -> Vec<Vec<i64>> {
    let n = g.num_vertices();
    let m = g.num_edges();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree = vec![false; m];
    depth[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for (u, f) in g.neighbours(v) {
            if depth[u] == usize::MAX {
                depth[u] = depth[v] + 1;
                parent[u] = Some((v, f ^ 1));
                tree[f / 2] = true;
                queue.push_back(u);
            }
        }
    }
    let r = g.rank();
    let mut rows = Vec::new();
    for e in 0..m {
        if tree[e] {
            continue;
        }
        // Closed walk: s -> d along e, then the tree path d -> s.
        let (s, d) = g.edge(e);
        let mut walk = vec![2 * e];
        let (mut a, mut b) = (d, s);
        let mut up = Vec::new();
        let mut down = Vec::new();
        while a != b {
            if depth[a] >= depth[b] {
                let (p, f) = parent[a].unwrap();
                up.push(f);
                a = p;
            } else {
                let (p, f) = parent[b].unwrap();
                down.push(f ^ 1);
                b = p;
            }
        }
        walk.extend(up);
        walk.extend(down.into_iter().rev());
        for j in 0..r {
            let mut row = vec![0; m];
            for &f in &walk {
                row[f / 2] += g.weight(f)[j];
            }
            rows.push(row);
        }
    }
    rows
}

fn dot(a: &[BigRational], b: &[i64]) -> BigRational {
    a.iter().zip(b).filter(|(_, &y)| y != 0).map(|(x, &y)| x * rat(y)).fold(BigRational::zero(), |s, t| s + t)
}

impl CurveLattice {
    pub fn new(graph: Arc<GkmGraph>) -> Result<Self> {
        let m = graph.num_edges();
        let relations = cycle_relations(&graph);
        let kernel = integer_kernel(&to_big(&relations), m);
        let proj_big = hermite(&kernel);
        let b = proj_big.len();
        if !columns_generate(&proj_big, b) {
            return Err(Error::Torsion);
        }
        let proj = to_small(&proj_big).ok_or_else(|| Error::Unsupported("curve lattice entries overflow".into()))?;
        let chern = chern_numbers(&graph)?;
        Ok(CurveLattice { graph, relations, proj, chern })
    }

    pub fn graph(&self) -> &Arc<GkmGraph> {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.proj.len()
    }

    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    pub fn class_of_edge(&self, e: usize) -> CurveClass {
        self.proj.iter().map(|row| row[e]).collect()
    }

    /// Class of a vector of edge multiplicities.
    pub fn class_of(&self, mult: &[u32]) -> CurveClass {
        self.proj
            .iter()
            .map(|row| row.iter().zip(mult).map(|(&a, &k)| a * k as i64).sum())
            .collect()
    }

    pub fn zero_class(&self) -> CurveClass {
        vec![0; self.rank()]
    }

    /// Re-express classes in the basis given by the classes of `edges`.
    pub fn with_basis(&self, edges: &[usize]) -> Result<Self> {
        let b = self.rank();
        if edges.len() != b {
            return Err(Error::Precondition(format!("basis needs {b} edges")));
        }
        // Columns of m are the chosen classes; new coordinates are m^{-1} x.
        let m: Vec<Vec<BigRational>> = (0..b).map(|i| edges.iter().map(|&e| rat(self.proj[i][e])).collect()).collect();
        let mut inv_cols = Vec::new();
        for k in 0..b {
            let unit: Vec<BigRational> = (0..b).map(|i| if i == k { BigRational::one() } else { BigRational::zero() }).collect();
            let col = crate::algebra::linalg::solve_unique(&m, &unit)
                .ok_or_else(|| Error::Precondition("edge classes are not a basis".into()))?;
            inv_cols.push(col);
        }
        let mut proj = vec![vec![0i64; self.graph.num_edges()]; b];
        for e in 0..self.graph.num_edges() {
            for i in 0..b {
                let v: BigRational = (0..b).map(|k| &inv_cols[k][i] * rat(self.proj[k][e])).fold(BigRational::zero(), |s, t| s + t);
                if !v.is_integer() {
                    return Err(Error::Precondition("edge classes are not a Z-basis".into()));
                }
                proj[i][e] = v.to_integer().to_i64().unwrap();
            }
        }
        Ok(CurveLattice { graph: self.graph.clone(), relations: self.relations.clone(), proj, chern: self.chern.clone() })
    }

    pub fn edge_chern_numbers(&self) -> &[i64] {
        &self.chern
    }

    /// Linear functional c with c(class of e) = C1(e).
    fn chern_functional(&self) -> Result<Vec<BigRational>> {
        let m = self.graph.num_edges();
        let a: Vec<Vec<BigRational>> = (0..m).map(|e| self.proj.iter().map(|row| rat(row[e])).collect()).collect();
        let y: Vec<BigRational> = self.chern.iter().map(|&c| rat(c)).collect();
        solve_any(&a, &y).ok_or_else(|| Error::Precondition("first Chern class is not well defined on curve classes".into()))
    }

    pub fn chern_of_class(&self, beta: &[i64]) -> Result<i64> {
        let c = self.chern_functional()?;
        let v = dot(&c, beta);
        v.to_integer().to_i64().filter(|_| v.is_integer()).ok_or_else(|| Error::Precondition("non-integral Chern number".into()))
    }

    /// Integer functional, strictly positive on every edge class.
    pub fn height(&self) -> Result<Vec<i64>> {
        let m = self.graph.num_edges();
        let b = self.rank();
        let candidate: Option<Vec<BigRational>> = if self.chern.iter().all(|&c| c > 0) { self.chern_functional().ok() } else { None };
        let w = match candidate {
            Some(w) => w,
            None => {
                let a: Vec<Vec<BigRational>> = (0..m).map(|e| (0..b).map(|i| rat(self.proj[i][e])).collect()).collect();
                let rhs = vec![BigRational::one(); m];
                match fm::solve(&a, &rhs) {
                    fm::Feasibility::Feasible(w) => w,
                    fm::Feasibility::Infeasible(l) => {
                        let lcm = l.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                        let v: Vec<i64> = l
                            .iter()
                            .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer().to_i64().unwrap_or(i64::MAX))
                            .collect();
                        let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x)).max(1);
                        return Err(Error::Unbounded(v.into_iter().map(|x| x / g).collect()));
                    }
                }
            }
        };
        let lcm = w.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        Ok(w.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer().to_i64().unwrap()).collect())
    }

    fn edge_heights(&self, h: &[i64]) -> Vec<i64> {
        (0..self.graph.num_edges()).map(|e| self.class_of_edge(e).iter().zip(h).map(|(a, b)| a * b).sum()).collect()
    }

    /// All multiplicity vectors d in N^E whose class is `beta`, in lexicographic order.
    pub fn effective_decompositions(&self, beta: &[i64]) -> Result<Vec<Vec<u32>>> {
        let h = self.height()?;
        let eh = self.edge_heights(&h);
        let budget: i64 = beta.iter().zip(&h).map(|(a, b)| a * b).sum();
        let mut out = Vec::new();
        if budget < 0 {
            return Ok(out);
        }
        let m = self.graph.num_edges();
        let classes: Vec<CurveClass> = (0..m).map(|e| self.class_of_edge(e)).collect();
        let mut cur = vec![0u32; m];
        let mut rem = beta.to_vec();
        fn dfs(
            e: usize,
            budget: i64,
            rem: &mut Vec<i64>,
            cur: &mut Vec<u32>,
            classes: &[CurveClass],
            eh: &[i64],
            out: &mut Vec<Vec<u32>>,
        ) {
            if e == classes.len() {
                if rem.iter().all(|&x| x == 0) {
                    out.push(cur.clone());
                }
                return;
            }
            if budget == 0 {
                if rem.iter().all(|&x| x == 0) {
                    out.push(cur.clone());
                }
                return;
            }
            let kmax = budget / eh[e];
            for k in 0..=kmax {
                cur[e] = k as u32;
                dfs(e + 1, budget - k * eh[e], rem, cur, classes, eh, out);
                for (r, c) in rem.iter_mut().zip(&classes[e]) {
                    *r -= c;
                }
            }
            for (r, c) in rem.iter_mut().zip(&classes[e]) {
                *r += c * (kmax + 1);
            }
            cur[e] = 0;
        }
        dfs(0, budget, &mut rem, &mut cur, &classes, &eh, &mut out);
        out.sort();
        Ok(out)
    }

    /// Effective classes c (sums of edge classes) with height(c) <= height(beta)
    /// and beta - c also effective.
    pub fn sub_classes(&self, beta: &[i64]) -> Result<HashSet<CurveClass>> {
        let h = self.height()?;
        let budget: i64 = beta.iter().zip(&h).map(|(a, b)| a * b).sum();
        let reach = self.classes_up_to_height(&h, budget);
        Ok(reach
            .iter()
            .filter(|c| {
                let d: CurveClass = beta.iter().zip(c.iter()).map(|(a, b)| a - b).collect();
                reach.contains(&d)
            })
            .cloned()
            .collect())
    }

    fn classes_up_to_height(&self, h: &[i64], budget: i64) -> HashSet<CurveClass> {
        let mut steps: Vec<CurveClass> = (0..self.graph.num_edges()).map(|e| self.class_of_edge(e)).collect();
        steps.sort();
        steps.dedup();
        let height = |c: &CurveClass| -> i64 { c.iter().zip(h).map(|(a, b)| a * b).sum() };
        let zero = self.zero_class();
        let mut seen = HashSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some(c) = queue.pop_front() {
            for s in &steps {
                let n: CurveClass = c.iter().zip(s).map(|(a, b)| a + b).collect();
                if height(&n) <= budget && !seen.contains(&n) {
                    seen.insert(n.clone());
                    queue.push_back(n);
                }
            }
        }
        seen
    }

    /// Nonzero effective classes with C1 <= `bound`; requires C1 > 0 on all edges
    /// except the listed `exceptional` ones, whose multiples are added up to `exceptional_max`.
    pub fn effective_classes(&self, bound: i64, exceptional: &[usize], exceptional_max: u32) -> Result<Vec<CurveClass>> {
        let m = self.graph.num_edges();
        let mut steps: Vec<CurveClass> = Vec::new();
        for e in 0..m {
            if exceptional.contains(&e) {
                continue;
            }
            if self.chern[e] <= 0 {
                return Err(Error::Precondition(format!("edge {e} has non-positive Chern number")));
            }
            steps.push(self.class_of_edge(e));
        }
        steps.sort();
        steps.dedup();
        let zero = self.zero_class();
        let mut seen = HashSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero.clone()]);
        while let Some(c) = queue.pop_front() {
            for s in &steps {
                let n: CurveClass = c.iter().zip(s).map(|(a, b)| a + b).collect();
                if self.chern_of_class(&n)? <= bound && seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
        let mut out: HashSet<CurveClass> = HashSet::new();
        for c in &seen {
            for &e in exceptional {
                let ce = self.class_of_edge(e);
                for k in 0..=exceptional_max as i64 {
                    out.insert(c.iter().zip(&ce).map(|(a, b)| a + k * b).collect());
                }
            }
            out.insert(c.clone());
        }
        out.remove(&zero);
        let mut out: Vec<CurveClass> = out.into_iter().filter(|c| self.chern_of_class(c).map_or(false, |x| x <= bound)).collect();
        out.sort();
        Ok(out)
    }

    /// Whether `target` lies in the rational cone spanned by the classes of `edges`.
    pub fn in_cone(&self, target: &[i64], edges: &[usize]) -> bool {
        // Farkas: target is outside iff some w has w.c >= 0 on the generators and w.target <= -1.
        let b = self.rank();
        let mut a: Vec<Vec<BigRational>> = edges.iter().map(|&e| self.class_of_edge(e).iter().map(|&x| rat(x)).collect()).collect();
        let mut rhs = vec![BigRational::zero(); edges.len()];
        a.push(target.iter().map(|&x| -rat(x)).collect());
        rhs.push(BigRational::one());
        debug_assert!(a.iter().all(|r| r.len() == b));
        matches!(fm::solve(&a, &rhs), fm::Feasibility::Infeasible(_))
    }
}

pub fn is_nonneg(v: &[BigRational]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::construct;

    #[test]
    fn projective_space_has_rank_one() {
        let g = Arc::new(construct::projective_space(3));
        let l = CurveLattice::new(g.clone()).unwrap();
        assert_eq!(l.rank(), 1);
        assert_eq!(l.relations().len(), 4 * (6 - 4 + 1));
        for e in 0..g.num_edges() {
            assert_eq!(l.class_of_edge(e), vec![1]);
        }
        assert_eq!(l.chern_of_class(&[2]).unwrap(), 8);
        assert_eq!(l.effective_decompositions(&[2]).unwrap().len(), 21);
    }

    #[test]
    fn product_lattice() {
        let p = construct::projective_space(1);
        let g = Arc::new(construct::product(&p, &p));
        let l = CurveLattice::new(g).unwrap();
        assert_eq!(l.rank(), 2);
        assert!(l.in_cone(&[1, 1], &[0, 3]) || l.in_cone(&[1, 1], &[0, 1, 2, 3]));
    }
}
