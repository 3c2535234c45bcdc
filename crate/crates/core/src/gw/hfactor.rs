//! The edge factor h(ε, d) of the localization formula.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{FormProduct, RatForm, RationalFunction};
use crate::connection::{congruence_multiple, edge_partition, Connection};
use crate::error::{Error, Result};
use crate::graph::{FlagId, GkmGraph};

#[derive(Clone, Debug)]
pub enum HMode {
    /// Products over the congruence classes of flags; needs no connection.
    ConnectionFree,
    /// Products over the flags transported by the given connection.
    Connection(Arc<Connection>),
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// The linear form w + (m/d) α, as a rational form.
fn shifted(w: &[i64], alpha: &[i64], m: i64, d: u32) -> RatForm {
    let v: Vec<i64> = w.iter().zip(alpha).map(|(&x, &a)| d as i64 * x + m * a).collect();
    RatForm::new(&v, BigRational::new(1.into(), BigInt::from(d))).expect("flag weights are independent of the edge weight")
}

/// h(ε, d) as a product of linear forms, for the flag `along` and degree `d`.
pub fn h_factor_product(g: &GkmGraph, along: FlagId, d: u32, mode: &HMode) -> Result<FormProduct> {
    if d == 0 {
        return Err(Error::Precondition("edge degree must be positive".into()));
    }
    let alpha = g.weight(along);
    let sign = if d % 2 == 0 { 1 } else { -1 };
    let dd = BigInt::from(d).pow(2 * d);
    let fact = factorial(d);
    let mut p = FormProduct::constant(BigRational::new(dd * sign, &fact * &fact));
    p.mul_form(&RatForm::from_weight(alpha).unwrap(), -2 * d as i32);
    match mode {
        HMode::Connection(conn) => {
            for (f, _, a) in conn.a_values(g, along) {
                if f == along {
                    continue;
                }
                let w = g.weight(f);
                let a = d as i64 * a;
                // b(α/d, w, a)
                if a >= 0 {
                    for j in 0..=a {
                        p.mul_form(&shifted(w, alpha, -j, d), -1);
                    }
                } else {
                    for j in 1..=(-a - 1) {
                        p.mul_form(&shifted(w, alpha, j, d), 1);
                    }
                }
            }
        }
        HMode::ConnectionFree => {
            for (src, dst) in edge_partition(g, along)? {
                let base = g.weight(src[0]);
                let pos = |f: FlagId| congruence_multiple(g.weight(f), base, alpha).expect("same class");
                let s: Vec<i64> = src.iter().map(|&f| d as i64 * pos(f)).collect();
                let t: Vec<i64> = dst.iter().map(|&f| d as i64 * pos(f)).collect();
                let lo = s.iter().chain(&t).min().copied().unwrap();
                let hi = s.iter().chain(&t).max().copied().unwrap();
                let k = s.len() as i64;
                for m in lo..=hi {
                    let left = s.iter().filter(|&&x| x < m).count() as i64;
                    let right = t.iter().filter(|&&x| x > m).count() as i64;
                    let e = left + right - k;
                    if e != 0 {
                        p.mul_form(&shifted(base, alpha, m, d), e as i32);
                    }
                }
            }
        }
    }
    Ok(p)
}

/// h(ε, d) for the flag of edge `e` at its source.
pub fn h_factor(g: &GkmGraph, e: usize, d: u32, mode: &HMode) -> Result<RationalFunction> {
    Ok(h_factor_product(g, 2 * e, d, mode)?.to_factored(g.rank()).to_rational_function())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::build_connection;
    use crate::graph::construct;

    #[test]
    fn modes_agree_on_flag_variety() {
        let g = construct::full_flag(3).unwrap();
        let conn = Arc::new(build_connection(&g).unwrap());
        for e in 0..g.num_edges() {
            for d in 1..=3 {
                let a = h_factor(&g, e, d, &HMode::ConnectionFree).unwrap();
                let b = h_factor(&g, e, d, &HMode::Connection(conn.clone())).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn p1_degree_one() {
        // P^1: h = -1/α^2 with no other flags.
        let g = construct::projective_space(1);
        let h = h_factor(&g, 0, 1, &HMode::ConnectionFree).unwrap();
        assert_eq!(h.to_string(), "-1/(t1^2 - 2*t1*t2 + t2^2)");
    }
}
