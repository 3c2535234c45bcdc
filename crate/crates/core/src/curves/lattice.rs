//! Integer row reduction: echelon forms, integer kernels, Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn to_small(m: &IntMatrix) -> Option<Vec<Vec<i64>>> {
    m.iter().map(|r| r.iter().map(|x| x.to_i64()).collect()).collect()
}

/// Unimodular row operations bringing `m` to row echelon form; `track` receives the same operations.
/// Returns the pivot columns.
fn echelon(m: &mut IntMatrix, track: &mut Option<&mut IntMatrix>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| m[i][c].abs());
            let Some(p) = best else { break };
            m.swap(r, p);
            if let Some(t) = track.as_deref_mut() {
                t.swap(r, p);
            }
            let mut done = true;
            for i in r + 1..rows {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                row_sub(m, i, r, &q);
                if let Some(t) = track.as_deref_mut() {
                    row_sub(t, i, r, &q);
                }
                if !m[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if (r..rows).any(|i| !m[i][c].is_zero()) {
            pivots.push(c);
            r += 1;
        }
    }
    pivots
}

fn row_sub(m: &mut IntMatrix, i: usize, r: usize, q: &BigInt) {
    let src = m[r].clone();
    for (x, y) in m[i].iter_mut().zip(&src) {
        *x -= q * y;
    }
}

/// A Z-basis of { x in Z^m : a x = 0 }.
pub fn integer_kernel(a: &IntMatrix, m: usize) -> IntMatrix {
    // Row-reduce a^T tracking the operations; zero rows of the result give the kernel.
    let mut at: IntMatrix = (0..m).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect();
    let mut u: IntMatrix = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() }).collect())
        .collect();
    if a.is_empty() {
        return u;
    }
    let piv = echelon(&mut at, &mut Some(&mut u));
    u.split_off(piv.len())
}

/// Hermite normal form of the row lattice (nonzero rows only).
pub fn hermite(m: &IntMatrix) -> IntMatrix {
    let mut h = m.clone();
    let piv = echelon(&mut h, &mut None);
    h.truncate(piv.len());
    for (r, &c) in piv.iter().enumerate() {
        if h[r][c].is_negative() {
            for x in h[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            if !q.is_zero() {
                row_sub(&mut h, i, r, &q);
            }
        }
    }
    h
}

/// Whether the columns of `m` (b rows) generate Z^b.
pub fn columns_generate(m: &IntMatrix, b: usize) -> bool {
    if b == 0 {
        return true;
    }
    let cols = m.first().map_or(0, |r| r.len());
    let t: IntMatrix = (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect();
    let h = hermite(&t);
    h.len() == b && (0..b).all(|i| h[i][i] == BigInt::from(1))
}
