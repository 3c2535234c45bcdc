use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::rat;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_int(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    rref(&mut m).len()
}

/// Solve `a x = b` when the solution is unique; `None` if singular or inconsistent.
pub fn solve_unique(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.first()?.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, y)| {
            let mut r = row.clone();
            r.push(y.clone());
            r
        })
        .collect();
    let piv = rref(&mut m);
    if piv.len() != n || piv.contains(&n) {
        return None;
    }
    Some((0..n).map(|i| m[i][n].clone()).collect())
}

/// Some solution of `a x = b`, or `None` if inconsistent.
pub fn solve_any(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, y)| {
            let mut r = row.clone();
            r.push(y.clone());
            r
        })
        .collect();
    let piv = rref(&mut m);
    if piv.contains(&n) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &c) in piv.iter().enumerate() {
        x[c] = m[i][n].clone();
    }
    Some(x)
}

pub fn identity(n: usize) -> Vec<Vec<BigRational>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(rank_int(&[vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]), 2);
        assert_eq!(rank_int(&[vec![1, 0], vec![0, 1]]), 2);
    }

    #[test]
    fn unique_solution() {
        let a = vec![vec![rat(2), rat(1)], vec![rat(1), rat(3)]];
        let x = solve_unique(&a, &[rat(3), rat(4)]).unwrap();
        assert_eq!(x, vec![rat(1), rat(1)]);
    }
}
