use super::GkmGraph;
use crate::error::{Error, Result};

const SEARCH_BOUND: i128 = 1000;

fn pairing(w: &[i64], xi: &[i128]) -> i128 {
    w.iter().zip(xi).map(|(&a, &b)| a as i128 * b).sum()
}

/// First direction (1, N, N^2, ...) pairing nonzero with every edge weight.
pub fn generic_direction(g: &GkmGraph) -> Result<Vec<i128>> {
    let edge_flags = 2 * g.num_edges();
    for n in 2..=SEARCH_BOUND {
        let xi: Vec<i128> = (0..g.rank() as u32).map(|i| n.pow(i)).collect();
        if (0..edge_flags).all(|f| pairing(g.weight(f), &xi) != 0) {
            return Ok(xi);
        }
    }
    Err(Error::NoGenericDirection)
}

/// Even Betti numbers b_0, b_2, ..., counted by the index of a generic direction.
pub fn betti_numbers(g: &GkmGraph) -> Result<Vec<usize>> {
    let xi = generic_direction(g)?;
    betti_numbers_with(g, &xi)
}

pub fn betti_numbers_with(g: &GkmGraph, xi: &[i128]) -> Result<Vec<usize>> {
    let mut b = vec![0; g.valency() + 1];
    for v in 0..g.num_vertices() {
        let mut index = 0;
        for (_, f) in g.neighbours(v) {
            match pairing(g.weight(f), xi) {
                0 => return Err(Error::Precondition("direction is not generic".into())),
                p if p < 0 => index += 1,
                _ => {}
            }
        }
        b[index] += 1;
    }
    Ok(b)
}
