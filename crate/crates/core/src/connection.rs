//! Compatible connections, first Chern numbers of edges and the
//! connection-free edge partitions.

use crate::error::{Error, Result};
use crate::graph::{FlagId, GkmGraph};

/// `c` with `a - b = c * alpha`, if such an integer exists.
pub fn congruence_multiple(a: &[i64], b: &[i64], alpha: &[i64]) -> Option<i64> {
    let k = alpha.iter().position(|&x| x != 0)?;
    let dk = a[k] - b[k];
    if dk % alpha[k] != 0 {
        return None;
    }
    let c = dk / alpha[k];
    a.iter()
        .zip(b)
        .zip(alpha)
        .all(|((x, y), z)| x - y == c * z)
        .then_some(c)
}

/// First Chern number of the edge: (sum of weights at src - sum at dst) / weight at src.
pub fn chern_number(g: &GkmGraph, e: usize) -> Result<i64> {
    let (s, d) = g.edge(e);
    let (ws, wd) = (g.weight_sum(s), g.weight_sum(d));
    congruence_multiple(&ws, &wd, g.weight(2 * e))
        .ok_or_else(|| Error::Precondition(format!("edge {e}: weight sums do not differ by a multiple of the edge weight")))
}

pub fn chern_numbers(g: &GkmGraph) -> Result<Vec<i64>> {
    (0..g.num_edges()).map(|e| chern_number(g, e)).collect()
}

/// For every edge flag (p -> q), a bijection from the flags at p to the flags at q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    maps: Vec<Vec<FlagId>>,
}

impl Connection {
    /// Image of `flag` (based at the source of `along`) under transport along `along`.
    pub fn transport(&self, g: &GkmGraph, along: FlagId, flag: FlagId) -> FlagId {
        let p = g.flag_vertex(along);
        let i = g.flags_at(p).iter().position(|&f| f == flag).expect("flag based at the source");
        self.maps[along][i]
    }

    pub fn map(&self, along: FlagId) -> &[FlagId] {
        &self.maps[along]
    }

    /// Triples (source flag, target flag, a) with α(target) = α(source) - a α(along).
    pub fn a_values(&self, g: &GkmGraph, along: FlagId) -> Vec<(FlagId, FlagId, i64)> {
        let p = g.flag_vertex(along);
        g.flags_at(p)
            .iter()
            .zip(&self.maps[along])
            .map(|(&f, &t)| {
                let a = congruence_multiple(g.weight(f), g.weight(t), g.weight(along)).expect("compatible connection");
                (f, t, a)
            })
            .collect()
    }

    /// Replace the bijection along the edge flag `along` (and its reverse) by `map`.
    pub fn with_map(&self, g: &GkmGraph, along: FlagId, map: Vec<FlagId>) -> Connection {
        let mut c = self.clone();
        let back = g.opposite(along).expect("edge flag");
        let q = g.flag_vertex(back);
        let src = g.flags_at(g.flag_vertex(along)).to_vec();
        let mut inv = vec![usize::MAX; src.len()];
        for (i, &t) in map.iter().enumerate() {
            let j = g.flags_at(q).iter().position(|&f| f == t).expect("flag at target");
            inv[j] = src[i];
        }
        c.maps[along] = map;
        c.maps[back] = inv;
        c
    }

    /// All bijections along `along` satisfying the connection axioms there.
    pub fn candidate_maps(g: &GkmGraph, along: FlagId) -> Vec<Vec<FlagId>> {
        let mut out = Vec::new();
        let opts = options(g, along);
        let dst = g.flags_at(g.flag_vertex(g.opposite(along).unwrap()));
        let mut used = vec![false; dst.len()];
        enumerate(&opts, 0, &mut used, &mut Vec::new(), &mut out, usize::MAX);
        out.into_iter().map(|m| m.into_iter().map(|j| dst[j]).collect()).collect()
    }
}

/// Candidate target positions for each flag at the source of `along`.
fn options(g: &GkmGraph, along: FlagId) -> Vec<Vec<usize>> {
    let back = g.opposite(along).expect("edge flag");
    let alpha = g.weight(along);
    let src = g.flags_at(g.flag_vertex(along));
    let dst = g.flags_at(g.flag_vertex(back));
    src.iter()
        .map(|&f| {
            if f == along {
                vec![dst.iter().position(|&t| t == back).unwrap()]
            } else {
                dst.iter()
                    .enumerate()
                    .filter(|&(_, &t)| t != back && congruence_multiple(g.weight(f), g.weight(t), alpha).is_some())
                    .map(|(j, _)| j)
                    .collect()
            }
        })
        .collect()
}

fn enumerate(
    opts: &[Vec<usize>],
    i: usize,
    used: &mut Vec<bool>,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if i == opts.len() {
        out.push(cur.clone());
        return;
    }
    for &j in &opts[i] {
        if !used[j] {
            used[j] = true;
            cur.push(j);
            enumerate(opts, i + 1, used, cur, out, limit);
            cur.pop();
            used[j] = false;
        }
    }
}

/// A compatible connection; where several exist, the lexicographically smallest
/// bijection (in the vertex flag order) is taken along each edge.
pub fn build_connection(g: &GkmGraph) -> Result<Connection> {
    let mut maps = vec![Vec::new(); 2 * g.num_edges()];
    for e in 0..g.num_edges() {
        let along = 2 * e;
        let back = along + 1;
        let opts = options(g, along);
        let mut used = vec![false; g.flags_at(g.flag_vertex(back)).len()];
        let mut found = Vec::new();
        enumerate(&opts, 0, &mut used, &mut Vec::new(), &mut found, 1);
        let Some(pos) = found.pop() else {
            return Err(Error::Precondition(format!("no compatible connection along edge {e}")));
        };
        let src = g.flags_at(g.flag_vertex(along));
        let dst = g.flags_at(g.flag_vertex(back));
        let fwd: Vec<FlagId> = pos.iter().map(|&j| dst[j]).collect();
        let mut inv = vec![0; dst.len()];
        for (i, &j) in pos.iter().enumerate() {
            inv[j] = src[i];
        }
        maps[along] = fwd;
        maps[back] = inv;
    }
    Ok(Connection { maps })
}

pub fn is_compatible(g: &GkmGraph, c: &Connection) -> bool {
    if c.maps.len() != 2 * g.num_edges() {
        return false;
    }
    for along in 0..2 * g.num_edges() {
        let back = along ^ 1;
        let src = g.flags_at(g.flag_vertex(along));
        let dst = g.flags_at(g.flag_vertex(back));
        let m = &c.maps[along];
        if m.len() != src.len() {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        for (&f, &t) in src.iter().zip(m) {
            if !dst.contains(&t) || !seen.insert(t) {
                return false;
            }
            if (f == along) != (t == back) {
                return false;
            }
            if congruence_multiple(g.weight(f), g.weight(t), g.weight(along)).is_none() {
                return false;
            }
            let j = dst.iter().position(|&x| x == t).unwrap();
            if c.maps[back][j] != f {
                return false;
            }
        }
    }
    true
}

/// Minimal partition of the flags at both ends of the edge (other than the
/// edge itself) into classes congruent modulo Z·α. Each part pairs the flags
/// at the source with the flags at the target.
pub fn edge_partition(g: &GkmGraph, along: FlagId) -> Result<Vec<(Vec<FlagId>, Vec<FlagId>)>> {
    let back = g.opposite(along).ok_or_else(|| Error::Precondition("not an edge flag".into()))?;
    let alpha = g.weight(along);
    let src: Vec<FlagId> = g.flags_at(g.flag_vertex(along)).iter().copied().filter(|&f| f != along).collect();
    let dst: Vec<FlagId> = g.flags_at(g.flag_vertex(back)).iter().copied().filter(|&f| f != back).collect();
    let all: Vec<(bool, FlagId)> = src.iter().map(|&f| (true, f)).chain(dst.iter().map(|&f| (false, f))).collect();
    let mut class: Vec<Option<usize>> = vec![None; all.len()];
    let mut parts: Vec<(Vec<FlagId>, Vec<FlagId>)> = Vec::new();
    for i in 0..all.len() {
        if class[i].is_some() {
            continue;
        }
        let id = parts.len();
        parts.push((Vec::new(), Vec::new()));
        for j in i..all.len() {
            if class[j].is_none() && congruence_multiple(g.weight(all[i].1), g.weight(all[j].1), alpha).is_some() {
                class[j] = Some(id);
                let (at_src, f) = all[j];
                if at_src {
                    parts[id].0.push(f);
                } else {
                    parts[id].1.push(f);
                }
            }
        }
    }
    for (a, b) in &parts {
        if a.len() != b.len() {
            return Err(Error::Precondition(format!(
                "edge {}: congruence classes of unequal size at the two ends",
                along / 2
            )));
        }
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::construct;

    #[test]
    fn projective_chern_numbers() {
        let g = construct::projective_space(3);
        assert!(chern_numbers(&g).unwrap().iter().all(|&c| c == 4));
        let c = build_connection(&g).unwrap();
        assert!(is_compatible(&g, &c));
    }

    #[test]
    fn local_model_chern_number() {
        let g = construct::local_model(1, -3);
        assert_eq!(chern_number(&g, 0).unwrap(), 0);
        let g = construct::local_model(-1, -1);
        assert_eq!(chern_number(&g, 0).unwrap(), 0);
        assert_eq!(chern_number(&construct::local_model(0, 0), 0).unwrap(), 2);
    }
}
