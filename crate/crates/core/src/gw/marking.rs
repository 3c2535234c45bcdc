//! Summation over the placements of markings on a decorated tree.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{factorial, Backend, Eval, EvalError, TreeData, UnstablePsi};
use crate::algebra::FormProduct;
use crate::error::Error;

/// Vertex integral for a vertex with `n` markings carrying total ψ-exponent
/// `k`, relative to the factors already in the tree base. `None` means zero.
fn vertex_factor<B: Backend>(b: &B, t: &TreeData, v: usize, n: u32, k: u32, unstable: UnstablePsi) -> Eval<Option<B::V>> {
    let flags = &t.flags[v];
    let val = flags.len() as u32;
    let big_n = n + val;
    if big_n >= 3 {
        let room = big_n as i64 - 3 - k as i64;
        if room < 0 {
            return Ok(None);
        }
        let m = room as u32;
        let c = BigRational::new(factorial(big_n - 3), factorial(m));
        let s = b.recip_sum(flags)?;
        return Ok(Some(b.mul(&b.rational(&c), &b.pow(&s, m))));
    }
    let mut p = FormProduct::one();
    match (val, n) {
        (1, 0) => p.mul_form(&flags[0], 2),
        (1, 1) => {
            if k > 0 {
                if unstable == UnstablePsi::Reject {
                    return Err(EvalError::Fatal(Error::Unsupported(
                        "psi class at a marking on a vertex with fewer than three special points".into(),
                    )));
                }
                // ψ restricts to the cotangent weight of the edge curve; undo the 1/k! of the table.
                let sign = if k % 2 == 0 { 1 } else { -1 };
                p.scale(&BigRational::from_integer(factorial(k) * sign));
                p.mul_form(&flags[0], k as i32 + 1);
            } else {
                p.mul_form(&flags[0], 1);
            }
        }
        (2, 0) => {
            let sum = crate::algebra::factored::ratvec_form(&flags[0].add_vec(&flags[1]))
                .ok_or_else(|| EvalError::Fatal(Error::InvalidGraph("opposite flags at a bivalent vertex".into())))?;
            p.mul_form(&flags[0], 1);
            p.mul_form(&flags[1], 1);
            p.mul_form(&sum, -1);
        }
        _ => return Err(EvalError::Fatal(Error::Precondition("isolated tree vertex".into()))),
    }
    b.product(&p).map(Some)
}

type State = Vec<(u32, u32)>;

struct VertexCache<'a, B: Backend> {
    b: &'a B,
    t: &'a TreeData,
    unstable: UnstablePsi,
    cache: HashMap<(usize, u32, u32), Option<B::V>>,
}

impl<'a, B: Backend> VertexCache<'a, B> {
    fn get(&mut self, v: usize, n: u32, k: u32) -> Eval<Option<B::V>> {
        if let Some(x) = self.cache.get(&(v, n, k)) {
            return Ok(x.clone());
        }
        let x = vertex_factor(self.b, self.t, v, n, k, self.unstable)?;
        self.cache.insert((v, n, k), x.clone());
        Ok(x)
    }

    /// ∏_v vertex factor for a state of per-vertex (markings, ψ-exponent).
    fn product(&mut self, state: &[(u32, u32)]) -> Eval<Option<B::V>> {
        let mut acc: Option<B::V> = None;
        for (v, &(n, k)) in state.iter().enumerate() {
            match self.get(v, n, k)? {
                None => return Ok(None),
                Some(x) => acc = Some(match acc {
                    None => x,
                    Some(a) => self.b.mul(&a, &x),
                }),
            }
        }
        Ok(Some(acc.unwrap_or_else(|| self.b.rational(&BigRational::one()))))
    }
}

/// Sum over all maps {markings} -> tree vertices, divided by |Aut| of the unmarked tree.
pub(crate) fn grouped<B: Backend>(b: &B, t: &TreeData, table: &[Vec<B::V>], psi: &[u32], unstable: UnstablePsi) -> Eval<B::V> {
    let nv = t.flags.len();
    let images = &t.tree.vertex_image;
    let one = b.rational(&BigRational::one());
    let mut states: HashMap<State, B::V> = HashMap::new();
    states.insert(vec![(0, 0); nv], one);
    for (i, row) in table.iter().enumerate() {
        let mut next: HashMap<State, B::V> = HashMap::new();
        for (st, val) in &states {
            for v in 0..nv {
                let c = &row[images[v]];
                if b.is_zero(c) {
                    continue;
                }
                let mut s2 = st.clone();
                s2[v].0 += 1;
                s2[v].1 += psi[i];
                let x = b.mul(val, c);
                match next.entry(s2) {
                    Entry::Occupied(mut o) => {
                        let y = b.add(o.get(), &x);
                        *o.get_mut() = y;
                    }
                    Entry::Vacant(e) => {
                        e.insert(x);
                    }
                }
            }
        }
        states = next;
        if states.is_empty() {
            return Ok(b.zero());
        }
    }
    let mut vc = VertexCache { b, t, unstable, cache: HashMap::new() };
    let mut total = b.zero();
    for (st, val) in &states {
        if let Some(f) = vc.product(st)? {
            total = b.add(&total, &b.mul(val, &f));
        }
    }
    if b.is_zero(&total) {
        return Ok(total);
    }
    let mut base = t.base.clone();
    base.scale(&BigRational::new(BigInt::one(), BigInt::from(t.tree.aut)));
    Ok(b.mul(&b.product(&base)?, &total))
}

/// Order of the automorphism group of the tree with marking sets, by direct search.
pub(crate) fn marked_automorphisms(t: &TreeData, marks: &[Vec<usize>]) -> u64 {
    let tree = &t.tree;
    let n = tree.num_vertices();
    let mut edge_deg: HashMap<(usize, usize), u32> = HashMap::new();
    for e in &tree.edges {
        edge_deg.insert((e.a, e.b), e.degree);
        edge_deg.insert((e.b, e.a), e.degree);
    }
    let adj = tree.adjacency();
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        v: usize,
        n: usize,
        tree: &super::DecoratedTree,
        marks: &[Vec<usize>],
        adj: &[Vec<(usize, usize)>],
        edge_deg: &HashMap<(usize, usize), u32>,
        sigma: &mut [usize],
        used: &mut [bool],
    ) -> u64 {
        if v == n {
            return 1;
        }
        let mut count = 0;
        for w in 0..n {
            if used[w] || tree.vertex_image[w] != tree.vertex_image[v] || marks[w] != marks[v] || adj[w].len() != adj[v].len() {
                continue;
            }
            let ok = adj[v].iter().all(|&(_, u)| {
                u > v || edge_deg.get(&(w, sigma[u])) == edge_deg.get(&(v, u))
            });
            if !ok {
                continue;
            }
            sigma[v] = w;
            used[w] = true;
            count += go(v + 1, n, tree, marks, adj, edge_deg, sigma, used);
            used[w] = false;
            sigma[v] = usize::MAX;
        }
        count
    }
    go(0, n, tree, marks, &adj, &edge_deg, &mut sigma, &mut used)
}

/// Sum over isomorphism classes of marked trees, each weighted by its own automorphisms.
pub(crate) fn per_class<B: Backend>(b: &B, t: &TreeData, table: &[Vec<B::V>], psi: &[u32], unstable: UnstablePsi) -> Eval<B::V> {
    let nv = t.flags.len();
    let n = table.len();
    let images = &t.tree.vertex_image;
    if (nv as f64).powi(n as i32) > 5.0e6 {
        return Err(EvalError::Fatal(Error::Unsupported("too many marking placements".into())));
    }
    let mut vc = VertexCache { b, t, unstable, cache: HashMap::new() };
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut total = b.zero();
    let mut s = vec![0usize; n];
    loop {
        if (0..n).all(|i| !b.is_zero(&table[i][images[s[i]]])) {
            let mut marks = vec![Vec::new(); nv];
            for (i, &v) in s.iter().enumerate() {
                marks[v].push(i);
            }
            if seen.insert(t.tree.canonical_code(&marks)) {
                let mut state = vec![(0u32, 0u32); nv];
                let mut val = b.rational(&BigRational::one());
                for (i, &v) in s.iter().enumerate() {
                    state[v].0 += 1;
                    state[v].1 += psi[i];
                    val = b.mul(&val, &table[i][images[v]]);
                }
                if let Some(f) = vc.product(&state)? {
                    let aut = marked_automorphisms(t, &marks);
                    let w = BigRational::new(BigInt::one(), BigInt::from(aut));
                    total = b.add(&total, &b.mul(&b.mul(&val, &f), &b.rational(&w)));
                }
            }
        }
        // next placement
        let mut i = 0;
        while i < n {
            s[i] += 1;
            if s[i] < nv {
                break;
            }
            s[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    if b.is_zero(&total) {
        return Ok(total);
    }
    Ok(b.mul(&b.product(&t.base)?, &total))
}
