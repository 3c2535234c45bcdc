//! Equivariant cohomology classes as vertex-wise tuples of rational functions.

use std::sync::Arc;

use num_rational::BigRational;

use crate::algebra::{Factored, FormProduct, MultiPoly, RatForm, RationalFunction};
use crate::error::{Error, Result};
use crate::graph::GkmGraph;

#[derive(Clone, Debug)]
pub struct EquivariantClass {
    graph: Arc<GkmGraph>,
    values: Vec<RationalFunction>,
}

impl PartialEq for EquivariantClass {
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.graph, &other.graph) && self.values == other.values
    }
}

fn same_graph(a: &Arc<GkmGraph>, b: &Arc<GkmGraph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Product of all flag weights at `v` (the equivariant Euler class of the tangent space).
pub fn euler_at(g: &GkmGraph, v: usize) -> FormProduct {
    let mut p = FormProduct::one();
    for &f in g.flags_at(v) {
        p.mul_form(&RatForm::from_weight(g.weight(f)).expect("nonzero weight"), 1);
    }
    p
}

impl EquivariantClass {
    pub fn new(graph: Arc<GkmGraph>, values: Vec<RationalFunction>) -> Result<Self> {
        if values.len() != graph.num_vertices() {
            return Err(Error::Precondition("one value per vertex required".into()));
        }
        if values.iter().any(|v| v.nvars() != graph.rank()) {
            return Err(Error::Precondition("values must be functions of the torus weights".into()));
        }
        Ok(EquivariantClass { graph, values })
    }

    pub fn from_polys(graph: Arc<GkmGraph>, values: Vec<MultiPoly>) -> Result<Self> {
        Self::new(graph, values.into_iter().map(RationalFunction::from_poly).collect())
    }

    pub fn graph(&self) -> &Arc<GkmGraph> {
        &self.graph
    }

    pub fn values(&self) -> &[RationalFunction] {
        &self.values
    }

    pub fn value(&self, v: usize) -> &RationalFunction {
        &self.values[v]
    }

    pub fn zero(graph: Arc<GkmGraph>) -> Self {
        let r = graph.rank();
        let values = vec![RationalFunction::zero(r); graph.num_vertices()];
        EquivariantClass { graph, values }
    }

    pub fn one(graph: Arc<GkmGraph>) -> Self {
        let r = graph.rank();
        let values = vec![RationalFunction::one(r); graph.num_vertices()];
        EquivariantClass { graph, values }
    }

    /// Class restricting to the tangent Euler class at `v` and to zero elsewhere.
    pub fn point_class(graph: Arc<GkmGraph>, v: usize) -> Self {
        let r = graph.rank();
        let e = euler_at(&graph, v).to_factored(r).to_rational_function();
        let mut values = vec![RationalFunction::zero(r); graph.num_vertices()];
        values[v] = e;
        EquivariantClass { graph, values }
    }

    pub fn first_chern_class(graph: Arc<GkmGraph>) -> Self {
        let values = (0..graph.num_vertices())
            .map(|v| RationalFunction::from_poly(MultiPoly::linear(&graph.weight_sum(v))))
            .collect();
        EquivariantClass { graph, values }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_graph(&self.graph, &other.graph) {
            Ok(())
        } else {
            Err(Error::Precondition("classes live on different graphs".into()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect();
        Ok(EquivariantClass { graph: self.graph.clone(), values })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.mul(b)).collect();
        Ok(EquivariantClass { graph: self.graph.clone(), values })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        EquivariantClass { graph: self.graph.clone(), values: self.values.iter().map(|v| v.scale(c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = EquivariantClass::one(self.graph.clone());
        for _ in 0..k {
            r = r.mul(self).expect("same graph");
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Polynomial values with f_p - f_q divisible by the weight of every edge pq.
    pub fn is_gkm_class(&self) -> bool {
        let polys: Option<Vec<MultiPoly>> = self.values.iter().map(|v| v.as_polynomial()).collect();
        let Some(polys) = polys else { return false };
        self.graph.edges().iter().enumerate().all(|(e, &(s, d))| {
            let diff = polys[s].sub(&polys[d]);
            diff.is_zero() || diff.divides_linear(self.graph.weight(2 * e))
        })
    }

    /// Common degree of the values, if they are homogeneous polynomials (zero values ignored).
    pub fn degree(&self) -> Option<u32> {
        let mut deg = None;
        for v in &self.values {
            let p = v.as_polynomial()?;
            if p.is_zero() {
                continue;
            }
            let d = p.homogeneous_degree()?;
            match deg {
                None => deg = Some(d),
                Some(x) if x != d => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    /// Localization sum of f_v / e(T_v X) over the vertices.
    pub fn integrate(&self) -> RationalFunction {
        let r = self.graph.rank();
        if self.values.iter().all(|v| v.is_polynomial()) {
            let mut total = Factored::zero(r);
            for (v, f) in self.values.iter().enumerate() {
                if f.is_zero() {
                    continue;
                }
                let inv = euler_at(&self.graph, v).inv();
                let term = Factored::from_poly(f.as_polynomial().unwrap()).mul_product(&inv);
                total = total.add(&term);
            }
            return total.to_rational_function();
        }
        let mut total = RationalFunction::zero(r);
        for (v, f) in self.values.iter().enumerate() {
            let e = euler_at(&self.graph, v).to_factored(r).to_rational_function();
            total = total.add(&f.div(&e).expect("nonzero Euler class"));
        }
        total
    }
}

/// Equivariant Poincaré dual of the GKM subgraph induced on `vertices`.
pub fn poincare_dual_subgraph(graph: Arc<GkmGraph>, vertices: &[usize]) -> Result<EquivariantClass> {
    let inside: std::collections::HashSet<usize> = vertices.iter().copied().collect();
    if inside.is_empty() {
        return Err(Error::Precondition("empty subgraph".into()));
    }
    let mut val = None;
    for &v in &inside {
        let k = graph.neighbours(v).filter(|(u, _)| inside.contains(u)).count();
        if *val.get_or_insert(k) != k {
            return Err(Error::Precondition("subgraph does not have constant valency".into()));
        }
    }
    let start = *inside.iter().next().unwrap();
    let mut seen = std::collections::HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for (u, _) in graph.neighbours(v) {
            if inside.contains(&u) && seen.insert(u) {
                stack.push(u);
            }
        }
    }
    if seen.len() != inside.len() {
        return Err(Error::Precondition("subgraph is not connected".into()));
    }
    let r = graph.rank();
    let mut values = vec![RationalFunction::zero(r); graph.num_vertices()];
    for &v in &inside {
        let mut p = FormProduct::one();
        for &f in graph.flags_at(v) {
            let internal = graph.flag_target(f).map_or(false, |u| inside.contains(&u));
            if !internal {
                p.mul_form(&RatForm::from_weight(graph.weight(f)).unwrap(), 1);
            }
        }
        values[v] = p.to_factored(r).to_rational_function();
    }
    let c = EquivariantClass::new(graph, values)?;
    if !c.is_gkm_class() {
        return Err(Error::Precondition("subgraph is not a GKM subgraph".into()));
    }
    Ok(c)
}

/// Pull-back of the hyperplane class of P^n along a map sending vertex v to the
/// coordinate point `point[v]`: the value at v is -t_{point[v]}.
pub fn hyperplane_pullback(graph: Arc<GkmGraph>, point: &[usize]) -> Result<EquivariantClass> {
    let r = graph.rank();
    if point.len() != graph.num_vertices() || point.iter().any(|&i| i >= r) {
        return Err(Error::Precondition("one coordinate index per vertex required".into()));
    }
    let values = point.iter().map(|&i| MultiPoly::var(r, i).neg()).collect();
    let c = EquivariantClass::from_polys(graph, values)?;
    if !c.is_gkm_class() {
        return Err(Error::Precondition("coordinates do not define a GKM class".into()));
    }
    Ok(c)
}
