//! Standard GKM graphs: projective spaces, Grassmannians, flag varieties,
//! products and the non-compact local models.

use super::{GkmGraph, Weight};
use crate::error::{Error, Result};

fn unit_diff(rank: usize, plus: usize, minus: usize) -> Weight {
    let mut w = vec![0; rank];
    w[plus] += 1;
    w[minus] -= 1;
    w
}

fn digits(elems: &[usize], n: usize) -> String {
    let parts: Vec<String> = elems.iter().map(|e| (e + 1).to_string()).collect();
    if n <= 9 {
        parts.concat()
    } else {
        parts.join(".")
    }
}

/// P^n with the standard torus of rank n + 1: weight t_j - t_i on the flag from i to j.
pub fn projective_space(n: usize) -> GkmGraph {
    let labels = (0..=n).map(|i| i.to_string()).collect();
    let mut edges = Vec::new();
    for j in 0..=n {
        for i in 0..j {
            edges.push((j, i, unit_diff(n + 1, i, j)));
        }
    }
    GkmGraph::new(n + 1, labels, edges, vec![]).expect("well-formed")
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// G(k, n): weight t_i - t_j on the flag S -> S' with S \ S' = {i}, S' \ S = {j}.
pub fn grassmannian(k: usize, n: usize) -> Result<GkmGraph> {
    if k == 0 || k >= n {
        return Err(Error::Precondition(format!("need 0 < k < n, got k = {k}, n = {n}")));
    }
    let verts = subsets(n, k);
    let labels = verts.iter().map(|s| digits(s, n)).collect();
    let mut edges = Vec::new();
    for a in 0..verts.len() {
        for b in 0..a {
            let out: Vec<usize> = verts[a].iter().filter(|x| !verts[b].contains(x)).copied().collect();
            let inn: Vec<usize> = verts[b].iter().filter(|x| !verts[a].contains(x)).copied().collect();
            if out.len() == 1 {
                edges.push((a, b, unit_diff(n, out[0], inn[0])));
            }
        }
    }
    GkmGraph::new(n, labels, edges, vec![])
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Complete flags in C^n: vertices are permutations w, joined to w(i j),
/// with weight t_{w(j)} - t_{w(i)} at w for positions i < j.
pub fn full_flag(n: usize) -> Result<GkmGraph> {
    if n < 2 {
        return Err(Error::Precondition("full flag variety needs n >= 2".into()));
    }
    let perms = permutations(n);
    let labels = perms.iter().map(|p| digits(p, n)).collect();
    let index: std::collections::HashMap<&Vec<usize>, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut edges = Vec::new();
    for (a, w) in perms.iter().enumerate() {
        for i in 0..n {
            for j in i + 1..n {
                let mut u = w.clone();
                u.swap(i, j);
                let b = index[&u];
                if b < a {
                    edges.push((a, b, unit_diff(n, w[j], w[i])));
                }
            }
        }
    }
    GkmGraph::new(n, labels, edges, vec![])
}

/// Partial flags V_1 ⊂ ... ⊂ V_k ⊂ C^n of the given dimensions. A fixed point
/// assigns every basis vector to a block; swapping i (earlier block) with
/// j (later block) has weight t_j - t_i, matching `full_flag` and `projective_space`.
pub fn partial_flag(dims: &[usize], n: usize) -> Result<GkmGraph> {
    if dims.is_empty() || dims.windows(2).any(|w| w[0] >= w[1]) || dims[0] == 0 || *dims.last().unwrap() >= n {
        return Err(Error::Precondition(format!("invalid flag type {dims:?} in C^{n}")));
    }
    let mut sizes = vec![dims[0]];
    for w in dims.windows(2) {
        sizes.push(w[1] - w[0]);
    }
    sizes.push(n - dims.last().unwrap());
    let mut verts: Vec<Vec<usize>> = Vec::new();
    fn rec(sizes: &[usize], used: &mut Vec<usize>, cur: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..sizes.len() {
            if used[b] < sizes[b] {
                used[b] += 1;
                cur.push(b);
                rec(sizes, used, cur, n, out);
                cur.pop();
                used[b] -= 1;
            }
        }
    }
    rec(&sizes, &mut vec![0; sizes.len()], &mut Vec::new(), n, &mut verts);
    // For each vertex, blk[i] is the block of basis vector i.
    let label = |blk: &[usize]| -> String {
        let parts: Vec<String> = (0..sizes.len())
            .map(|b| {
                let els: Vec<usize> = (0..n).filter(|&i| blk[i] == b).collect();
                digits(&els, n)
            })
            .collect();
        parts.join("|")
    };
    verts.sort_by_key(|blk| {
        (0..sizes.len()).map(|b| (0..n).filter(|&i| blk[i] == b).collect::<Vec<_>>()).collect::<Vec<_>>()
    });
    let labels: Vec<String> = verts.iter().map(|v| label(v)).collect();
    let index: std::collections::HashMap<&Vec<usize>, usize> = verts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut edges = Vec::new();
    for (a, blk) in verts.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                if blk[i] < blk[j] {
                    let mut u = blk.clone();
                    u.swap(i, j);
                    let b = index[&u];
                    if b < a {
                        edges.push((a, b, unit_diff(n, j, i)));
                    }
                }
            }
        }
    }
    GkmGraph::new(n, labels, edges, vec![])
}

/// G × H with the product torus; vertex (g, h) is labelled "g,h" and ordered with g fastest.
pub fn product(g: &GkmGraph, h: &GkmGraph) -> GkmGraph {
    let (ng, nh) = (g.num_vertices(), h.num_vertices());
    let (rg, rh) = (g.rank(), h.rank());
    let idx = |a: usize, b: usize| a + ng * b;
    let mut labels = Vec::with_capacity(ng * nh);
    for b in 0..nh {
        for a in 0..ng {
            labels.push(format!("{},{}", g.label(a), h.label(b)));
        }
    }
    let lift_g = |w: &Weight| -> Weight {
        let mut v = w.clone();
        v.resize(rg + rh, 0);
        v
    };
    let lift_h = |w: &Weight| -> Weight {
        let mut v = vec![0; rg];
        v.extend_from_slice(w);
        v
    };
    let mut edges = Vec::new();
    for b in 0..nh {
        for (e, &(s, d)) in g.edges().iter().enumerate() {
            edges.push((idx(s, b), idx(d, b), lift_g(g.weight(2 * e))));
        }
    }
    for a in 0..ng {
        for (e, &(s, d)) in h.edges().iter().enumerate() {
            edges.push((idx(a, s), idx(a, d), lift_h(h.weight(2 * e))));
        }
    }
    let mut extra = Vec::new();
    for b in 0..nh {
        for (v, w) in g.extra_flags() {
            extra.push((idx(v, b), lift_g(w)));
        }
    }
    for a in 0..ng {
        for (v, w) in h.extra_flags() {
            extra.push((idx(a, v), lift_h(w)));
        }
    }
    GkmGraph::new(rg + rh, labels, edges, extra).expect("product of well-formed graphs")
}

/// Total space of O(a1) ⊕ O(a2) over P^1, torus rank 3.
pub fn local_model(a1: i64, a2: i64) -> GkmGraph {
    GkmGraph::new(
        3,
        vec!["[1:0]".into(), "[0:1]".into()],
        vec![(0, 1, vec![1, 0, 0])],
        vec![
            (0, vec![0, 1, 0]),
            (0, vec![0, 0, 1]),
            (1, vec![-a1, 1, 0]),
            (1, vec![-a2, 0, 1]),
        ],
    )
    .expect("well-formed")
}

/// The local model with the Calabi-Yau specialisation t3 = -t1 - t2 built in (torus rank 2).
pub fn local_model_cy(a1: i64, a2: i64) -> GkmGraph {
    GkmGraph::new(
        2,
        vec!["[1:0]".into(), "[0:1]".into()],
        vec![(0, 1, vec![1, 0])],
        vec![
            (0, vec![0, 1]),
            (0, vec![-1, -1]),
            (1, vec![-a1, 1]),
            (1, vec![-a2 - 1, -1]),
        ],
    )
    .expect("well-formed")
}

/// S = {(x, h) ∈ P^n × G(k+1, n+1) : x ∈ h} as a partial flag variety.
pub struct Incidence {
    pub graph: GkmGraph,
    /// Coordinate line of x at each vertex.
    pub point: Vec<usize>,
    /// An edge moving x inside a fixed h: its class maps to a line in P^n and a point in G(k+1, n+1).
    pub fiber_edge: usize,
}

pub fn incidence_variety(n: usize, k: usize) -> Result<Incidence> {
    if k == 0 || k >= n {
        return Err(Error::Precondition("need 0 < k < n".into()));
    }
    let graph = partial_flag(&[1, k + 1], n + 1)?;
    let blocks = |v: usize| -> Vec<String> { graph.label(v).split('|').map(str::to_string).collect() };
    let point: Vec<usize> = (0..graph.num_vertices())
        .map(|v| blocks(v)[0].parse::<usize>().expect("single basis vector") - 1)
        .collect();
    let fiber_edge = (0..graph.num_edges())
        .find(|&e| {
            let (s, d) = graph.edge(e);
            blocks(s)[2] == blocks(d)[2]
        })
        .expect("fibres are projective spaces");
    Ok(Incidence { graph, point, fiber_edge })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(projective_space(3).num_vertices(), 4);
        assert_eq!(grassmannian(2, 4).unwrap().num_edges(), 12);
        assert_eq!(full_flag(3).unwrap().num_edges(), 9);
        let f = partial_flag(&[1, 3], 5).unwrap();
        assert_eq!(f.num_vertices(), 30);
        assert_eq!(f.valency(), 8);
        assert!(f.is_valid());
    }

    #[test]
    fn partial_flag_of_single_step_is_projective_space() {
        let a = partial_flag(&[1], 3).unwrap();
        let b = projective_space(2);
        let mut wa: Vec<_> = (0..a.num_flags()).map(|f| a.weight(f).clone()).collect();
        let mut wb: Vec<_> = (0..b.num_flags()).map(|f| b.weight(f).clone()).collect();
        wa.sort();
        wb.sort();
        assert_eq!(wa, wb);
    }
}
