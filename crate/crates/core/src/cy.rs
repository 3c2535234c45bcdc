//! Local Calabi–Yau models X_k = O(k-1) ⊕ O(-k-1) over P^1: closed forms,
//! genus-zero BPS numbers, the partition-sum identity and a realizability test
//! for 3-valent graphs with an isolated Chern-zero edge.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::linalg::solve_any;
use crate::algebra::{rat, MultiPoly};
use crate::connection::{chern_number, Connection};
use crate::curves::CurveLattice;
use crate::error::{Error, Result};
use crate::graph::{FlagId, GkmGraph};
use crate::gw::{gromov_witten, GwOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalSpec {
    /// t3 = -t1 - t2.
    EquivariantlyCy { k: u32 },
    /// t3 = t2 - k t1.
    Twisted { k: u32 },
    /// k = 1 and t3 = -t1 + y t2.
    K1Family { y: i64 },
    /// Generic weights.
    Generic { k: u32 },
}

impl LocalSpec {
    pub fn k(&self) -> u32 {
        match *self {
            LocalSpec::EquivariantlyCy { k } | LocalSpec::Twisted { k } | LocalSpec::Generic { k } => k,
            LocalSpec::K1Family { .. } => 1,
        }
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// C(x, d) for rational x.
pub fn binomial_rat(x: &BigRational, d: u32) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..d {
        acc = acc * (x - rat(i as i64)) / rat(i as i64 + 1);
    }
    acc
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

fn cube(d: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(d).pow(3))
}

/// GW_{0,0} of X_k in class d·[P^1] for the specializations where it is constant.
pub fn gw_local_closed_form(spec: LocalSpec, d: u64) -> Result<BigRational> {
    if d == 0 {
        return Err(Error::Precondition("degree must be positive".into()));
    }
    Ok(match spec {
        LocalSpec::EquivariantlyCy { k: 0 } | LocalSpec::Twisted { .. } => cube(d).recip(),
        LocalSpec::EquivariantlyCy { k } => {
            let k = k as u64;
            let sign = if (d * (k + 1) - 1) % 2 == 0 { 1 } else { -1 };
            BigRational::new(binomial(k * k * d, d) * sign, BigInt::from(d).pow(3) * BigInt::from(k * k))
        }
        LocalSpec::K1Family { y } => {
            if y == 0 {
                return Err(Error::Precondition("y must be nonzero".into()));
            }
            rat(y) / cube(d)
        }
        LocalSpec::Generic { k: 0 } => cube(d).recip(),
        LocalSpec::Generic { .. } => {
            return Err(Error::Unsupported("the invariant is not constant for generic weights".into()))
        }
    })
}

/// n_d = Σ_{m | d} μ(m) GW_{d/m} / m^3, for gw[i] = GW in degree i + 1.
pub fn bps_from_gw(gw: &[BigRational]) -> Vec<BigRational> {
    (1..=gw.len() as u64)
        .map(|d| {
            let mut s = BigRational::zero();
            for m in 1..=d {
                if d % m == 0 {
                    let mu = mobius(m);
                    if mu != 0 {
                        s += &gw[(d / m - 1) as usize] * rat(mu) / cube(m);
                    }
                }
            }
            s
        })
        .collect()
}

/// Genus-zero BPS numbers n_{0,d} of the equivariantly CY X_k for d = 1..=d_max.
pub fn bps_genus_zero(k: u32, d_max: u64) -> Vec<BigRational> {
    (1..=d_max)
        .into_par_iter()
        .map(|d| {
            if k == 0 {
                return if d == 1 { BigRational::one() } else { BigRational::zero() };
            }
            let k = k as u64;
            let mut s = BigInt::zero();
            for e in 1..=d {
                if d % e != 0 {
                    continue;
                }
                let mu = mobius(d / e);
                if mu == 0 {
                    continue;
                }
                let sign = if ((k + 1) * e + 1) % 2 == 0 { 1 } else { -1 };
                s += binomial(k * k * e, e) * (mu * sign);
            }
            BigRational::new(s, BigInt::from(d).pow(3) * BigInt::from(k * k))
        })
        .collect()
}

/// BPS numbers for any of the constant specializations.
pub fn bps_for(spec: LocalSpec, d_max: u64) -> Result<Vec<BigRational>> {
    match spec {
        LocalSpec::EquivariantlyCy { k } => Ok(bps_genus_zero(k, d_max)),
        _ => {
            let gw: Result<Vec<_>> = (1..=d_max).map(|d| gw_local_closed_form(spec, d)).collect();
            Ok(bps_from_gw(&gw?))
        }
    }
}

/// n_{0,d} · d · (k + 1), the diagonal Kronecker-quiver DT invariant D(d, d, k + 1).
pub fn quiver_dt_diagonal(k: u32, d: u64) -> BigRational {
    &bps_genus_zero(k, d)[d as usize - 1] * rat(d as i64 * (k as i64 + 1))
}

fn partitions(d: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if d == 0 {
        out.push(cur.clone());
        return;
    }
    for p in (1..=max_part.min(d)).rev() {
        cur.push(p);
        partitions(d - p, p, cur, out);
        cur.pop();
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n as u64).map(BigInt::from).product()
}

/// Σ over (a_1..a_d) with Σ j a_j = d of ∏_j (t/j · C(kj, j))^{a_j} / a_j!, as a polynomial in t.
pub fn partition_sum_lhs(k: u32, d: u32) -> MultiPoly {
    let mut parts = Vec::new();
    partitions(d as usize, d as usize, &mut Vec::new(), &mut parts);
    let t = MultiPoly::var(1, 0);
    let mut total = MultiPoly::zero(1);
    for p in parts {
        let mut mult = vec![0usize; d as usize + 1];
        for &j in &p {
            mult[j] += 1;
        }
        let mut c = BigRational::one();
        for (j, &a) in mult.iter().enumerate().skip(1) {
            if a == 0 {
                continue;
            }
            let base = BigRational::new(binomial(k as u64 * j as u64, j as u64), BigInt::from(j));
            c *= num_traits::pow(base, a) / BigRational::from_integer(factorial(a));
        }
        total = total.add(&t.pow(p.len() as u32).scale(&c));
    }
    total
}

/// partition_sum_lhs evaluated at a rational t.
pub fn partition_sum_at(k: u32, d: u32, t: &BigRational) -> BigRational {
    partition_sum_lhs(k, d).eval(std::slice::from_ref(t))
}

/// A_d(n, k) = n / (n - k d) · C(n - k d, d), the coefficients of G_{-k}(x)^n.
pub fn fuss_catalan_power(d: u32, n: i64, k: i64) -> BigRational {
    if d == 0 {
        return BigRational::one();
    }
    let top = n - k * d as i64;
    if top == 0 {
        // n/(n-kd) C(n-kd, d) = n/d · C(n-kd-1, d-1)
        return rat(n) / rat(d as i64) * binomial_rat(&rat(top - 1), d - 1);
    }
    rat(n) / rat(top) * binomial_rat(&rat(top), d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalParameters {
    pub edge: usize,
    pub vertex: usize,
    pub k: i64,
    /// t1 = α(e, p); t2, t3 the flags with a-values k - 1 and -k - 1.
    pub t1: Vec<i64>,
    pub t2: Vec<i64>,
    pub t3: Vec<i64>,
    /// t3 = a t1 + b t2, when t3 lies in the span of t1, t2.
    pub relation: Option<(BigRational, BigRational)>,
}

impl LocalParameters {
    /// The case of the polynomiality list that applies, if any.
    pub fn case(&self) -> Option<&'static str> {
        if self.k == 0 {
            return Some("k = 0");
        }
        let (a, b) = self.relation.as_ref()?;
        let m1 = -BigRational::one();
        if *a == m1 && *b == m1 {
            return Some("t3 = -t1 - t2");
        }
        if *a == rat(-self.k) && b.is_one() {
            return Some("t3 = -k t1 + t2");
        }
        if self.k == 1 && *a == m1 && b.is_integer() && !b.is_zero() {
            return Some("k = 1 and t3 = -t1 + y t2");
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass { edge: usize, case: &'static str },
    Fail { edge: usize, reason: String },
    NotApplicable(String),
}

/// Local parameters at both candidate bijections along `along` (the edge flag at p).
pub fn local_parameters(g: &GkmGraph, along: FlagId) -> Result<Vec<LocalParameters>> {
    let p = g.flag_vertex(along);
    let t1 = g.weight(along).to_vec();
    let mut out = Vec::new();
    for map in Connection::candidate_maps(g, along) {
        let src = g.flags_at(p);
        let mut others: Vec<(Vec<i64>, i64)> = Vec::new();
        for (i, &f) in src.iter().enumerate() {
            if f == along {
                continue;
            }
            let w = g.weight(f);
            let a = crate::connection::congruence_multiple(w, g.weight(map[i]), &t1)
                .ok_or_else(|| Error::InvalidGraph("incompatible candidate bijection".into()))?;
            others.push((w.to_vec(), a));
        }
        if others.len() != 2 {
            return Err(Error::Precondition("local parameters need a 3-valent graph".into()));
        }
        others.sort_by_key(|o| -o.1);
        let (t2, a2) = others[0].clone();
        let (t3, _) = others[1].clone();
        let k = a2 + 1;
        let cols: Vec<Vec<BigRational>> = (0..g.rank()).map(|i| vec![rat(t1[i]), rat(t2[i])]).collect();
        let rhs: Vec<BigRational> = t3.iter().map(|&x| rat(x)).collect();
        let relation = solve_any(&cols, &rhs).map(|x| (x[0].clone(), x[1].clone()));
        let lp = LocalParameters { edge: along / 2, vertex: p, k, t1: t1.clone(), t2, t3, relation };
        if !out.contains(&lp) {
            out.push(lp);
        }
    }
    Ok(out)
}

/// Edges with C1 = 0 whose class is not a non-negative combination of the other edge classes.
pub fn isolated_chern_zero_edges(lattice: &CurveLattice) -> Result<Vec<usize>> {
    let g = lattice.graph();
    let mut out = Vec::new();
    for e in 0..g.num_edges() {
        if chern_number(g, e)? != 0 {
            continue;
        }
        let others: Vec<usize> = (0..g.num_edges()).filter(|&f| f != e).collect();
        if !lattice.in_cone(&lattice.class_of_edge(e), &others) {
            out.push(e);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct RealizabilityReport {
    pub edge: usize,
    pub parameters: Vec<LocalParameters>,
    /// GW_{0,0} in the class of the edge, and whether it is a polynomial.
    pub invariant: String,
    pub polynomial: bool,
    pub verdict: Verdict,
}

/// Necessary condition for realizability by a compact Hamiltonian or projective GKM space.
pub fn realizability_check(g: Arc<GkmGraph>) -> Result<Vec<RealizabilityReport>> {
    if !g.is_compact() || g.valency() != 3 {
        return Err(Error::Precondition("not applicable: needs a compact 3-valent graph".into()));
    }
    let lattice = CurveLattice::new(g.clone())?;
    let edges = isolated_chern_zero_edges(&lattice)?;
    let mut out = Vec::new();
    for e in edges {
        let params = local_parameters(&g, 2 * e)?;
        let gw = gromov_witten(&lattice, &lattice.class_of_edge(e), &[], &GwOptions::symbolic())?;
        let polynomial = gw.is_polynomial();
        let verdict = classify(e, &params, polynomial, &gw.to_string());
        out.push(RealizabilityReport { edge: e, parameters: params, invariant: gw.to_string(), polynomial, verdict });
    }
    Ok(out)
}

/// Verdict for an isolated C1 = 0 edge from its local parameters and the
/// polynomiality of GW_{0,0} in its class.
pub fn classify(edge: usize, params: &[LocalParameters], polynomial: bool, gw: &str) -> Verdict {
    match (params.iter().find_map(|p| p.case()), polynomial) {
        (Some(c), true) => Verdict::Pass { edge, case: c },
        (None, _) => Verdict::Fail {
            edge,
            reason: format!(
                "local parameters {} match none of the polynomial cases",
                params.iter().map(describe).collect::<Vec<_>>().join("; ")
            ),
        },
        (Some(_), false) => Verdict::Fail { edge, reason: format!("GW in the edge class is not polynomial: {gw}") },
    }
}

fn describe(p: &LocalParameters) -> String {
    let rel = match &p.relation {
        Some((a, b)) => format!("t3 = {a}*t1 + {b}*t2"),
        None => "t3 independent of t1, t2".to_string(),
    };
    format!("k = {}, {rel}", p.k)
}

impl std::fmt::Display for LocalParameters {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", describe(self))
    }
}

/// Integral value of a rational, if it is one.
pub fn as_integer(q: &BigRational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

pub fn small(q: &BigRational) -> Option<i64> {
    as_integer(q)?.to_i64()
}
