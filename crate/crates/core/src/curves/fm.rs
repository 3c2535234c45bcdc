//! Exact Fourier–Motzkin elimination for systems `a x >= b`, with Farkas
//! certificates on infeasibility.

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub enum Feasibility {
    Feasible(Vec<BigRational>),
    /// Multipliers `l >= 0` with `l^T a = 0` and `l^T b > 0`.
    Infeasible(Vec<BigRational>),
}

#[derive(Clone)]
struct Row {
    a: Vec<BigRational>,
    b: BigRational,
    mult: Vec<BigRational>,
}

impl Row {
    fn key(&self) -> Vec<BigRational> {
        let scale = self.a.iter().chain(std::iter::once(&self.b)).map(|x| x.abs()).max().unwrap_or_else(BigRational::zero);
        if scale.is_zero() {
            return self.a.clone();
        }
        self.a.iter().chain(std::iter::once(&self.b)).map(|x| x / &scale).collect()
    }
}

pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Feasibility {
    let n = a.first().map_or(0, |r| r.len());
    let m = a.len();
    let mut rows: Vec<Row> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (ai, bi))| {
            let mut mult = vec![BigRational::zero(); m];
            mult[i] = BigRational::from_integer(1.into());
            Row { a: ai.clone(), b: bi.clone(), mult }
        })
        .collect();
    let mut stages: Vec<Vec<Row>> = Vec::with_capacity(n);
    for j in (0..n).rev() {
        stages.push(rows.clone());
        let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.a[j].is_positive() {
                pos.push(r);
            } else if r.a[j].is_negative() {
                neg.push(r);
            } else {
                keep.push(r);
            }
        }
        let mut seen: HashSet<Vec<BigRational>> = keep.iter().map(|r| r.key()).collect();
        for p in &pos {
            for q in &neg {
                let (cp, cq) = (-&q.a[j], p.a[j].clone());
                let r = Row {
                    a: p.a.iter().zip(&q.a).map(|(x, y)| x * &cp + y * &cq).collect(),
                    b: &p.b * &cp + &q.b * &cq,
                    mult: p.mult.iter().zip(&q.mult).map(|(x, y)| x * &cp + y * &cq).collect(),
                };
                if seen.insert(r.key()) {
                    keep.push(r);
                }
            }
        }
        rows = keep;
    }
    if let Some(bad) = rows.iter().find(|r| r.b.is_positive()) {
        return Feasibility::Infeasible(bad.mult.clone());
    }
    // Back-substitute: stage k holds the rows in variables 0..=n-1-k.
    let mut x = vec![BigRational::zero(); n];
    for j in 0..n {
        let stage = &stages[n - 1 - j];
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for r in stage {
            if r.a[j].is_zero() {
                continue;
            }
            let rest: BigRational = (0..j).map(|k| &r.a[k] * &x[k]).fold(BigRational::zero(), |s, t| s + t);
            let bound = (&r.b - rest) / &r.a[j];
            if r.a[j].is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            }
        }
        x[j] = match (lo, hi) {
            (Some(l), _) => l,
            (None, Some(h)) => h.min(BigRational::zero()),
            (None, None) => BigRational::zero(),
        };
    }
    Feasibility::Feasible(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn feasible_point_satisfies_system() {
        // x + y >= 1, x - y >= 0, -x >= -3
        let a = vec![vec![rat(1), rat(1)], vec![rat(1), rat(-1)], vec![rat(-1), rat(0)]];
        let b = vec![rat(1), rat(0), rat(-3)];
        match solve(&a, &b) {
            Feasibility::Feasible(x) => {
                for (ai, bi) in a.iter().zip(&b) {
                    let s: BigRational = ai.iter().zip(&x).map(|(p, q)| p * q).sum();
                    assert!(&s >= bi);
                }
            }
            Feasibility::Infeasible(_) => panic!("system is feasible"),
        }
    }

    #[test]
    fn infeasible_gives_certificate() {
        // x >= 1, -x >= 0
        let a = vec![vec![rat(1)], vec![rat(-1)]];
        let b = vec![rat(1), rat(0)];
        match solve(&a, &b) {
            Feasibility::Infeasible(l) => {
                assert!(l.iter().all(|x| !x.is_negative()));
                assert_eq!(&l[0] * rat(1) - &l[1], rat(0));
            }
            Feasibility::Feasible(_) => panic!("system is infeasible"),
        }
    }
}
