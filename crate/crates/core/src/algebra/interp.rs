use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::linalg::solve_unique;
use super::poly::{rat, Monomial, MultiPoly};

/// All exponent vectors of total degree `d` in `n` variables, in graded-lex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

pub fn count_monomials(n: usize, d: u32) -> u128 {
    // C(d + n - 1, n - 1)
    let mut c: u128 = 1;
    for i in 0..(n as u128).saturating_sub(1) {
        c = c * (d as u128 + 1 + i) / (i + 1);
    }
    c
}

/// Random integer points, reproducible from `seed`.
pub struct PointStream {
    rng: ChaCha8Rng,
    nvars: usize,
}

impl PointStream {
    pub fn new(nvars: usize, seed: u64) -> Self {
        PointStream { rng: ChaCha8Rng::seed_from_u64(seed), nvars }
    }

    pub fn next_point(&mut self) -> Vec<BigRational> {
        (0..self.nvars).map(|_| rat(self.rng.gen_range(-(1i64 << 20)..=(1i64 << 20)))).collect()
    }
}

fn mono_eval(m: &Monomial, p: &[BigRational]) -> BigRational {
    let mut v = rat(1);
    for (x, &e) in p.iter().zip(&m.0) {
        if e > 0 {
            v *= num_traits::pow(x.clone(), e as usize);
        }
    }
    v
}

/// Recover a homogeneous polynomial of degree `d` from exact point values.
///
/// `eval` returns `None` at points where the computation is singular; such points
/// are skipped. The fit is checked at `checks` further points; `None` if any
/// check fails (the function is not such a polynomial).
pub fn interpolate_homogeneous(
    nvars: usize,
    d: u32,
    checks: usize,
    seed: u64,
    mut eval: impl FnMut(&[BigRational]) -> Option<BigRational>,
) -> Option<MultiPoly> {
    let monos = monomials_of_degree(nvars, d);
    let mut points = PointStream::new(nvars, seed);
    let mut rows = Vec::new();
    let mut vals = Vec::new();
    let mut attempts = 0;
    let coeffs = loop {
        while rows.len() < monos.len() {
            attempts += 1;
            if attempts > 4 * monos.len() + 64 {
                return None;
            }
            let p = points.next_point();
            if let Some(v) = eval(&p) {
                rows.push(monos.iter().map(|m| mono_eval(m, &p)).collect::<Vec<_>>());
                vals.push(v);
            }
        }
        if let Some(c) = solve_unique(&rows, &vals) {
            break c;
        }
        rows.clear();
        vals.clear();
    };
    let poly = MultiPoly::from_terms(nvars, monos.into_iter().zip(coeffs).filter(|(_, c)| !c.is_zero()));
    let mut done = 0;
    let mut tries = 0;
    while done < checks {
        tries += 1;
        if tries > 16 * checks + 16 {
            return None;
        }
        let p = points.next_point();
        if let Some(v) = eval(&p) {
            if poly.eval(&p) != v {
                return None;
            }
            done += 1;
        }
    }
    Some(poly)
}
