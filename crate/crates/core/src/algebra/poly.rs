use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector, ordered graded-lexicographically with t1 > t2 > ...
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over Q in `nvars` variables t1..tr.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, i), BigRational::one());
        p
    }

    /// The linear form sum c_i t_i.
    pub fn linear(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                p.terms.insert(Monomial::var(n, i), rat(c));
            }
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial has wrong number of variables");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Common degree of all terms, if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coefficient();
        self.scale(&lc.recip())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        MultiPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        total
    }

    /// Replace t_i by `images[i]` where given; all images live in `nvars_out` variables.
    pub fn substitute(&self, images: &[Option<MultiPoly>], nvars_out: usize) -> MultiPoly {
        assert_eq!(images.len(), self.nvars);
        let mut powers: Vec<Vec<MultiPoly>> = vec![Vec::new(); self.nvars];
        let mut out = MultiPoly::zero(nvars_out);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(nvars_out, c.clone());
            let mut keep = Monomial::one(nvars_out);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &images[i] {
                    Some(img) => {
                        let cache = &mut powers[i];
                        while cache.len() <= e as usize {
                            let next = match cache.last() {
                                None => MultiPoly::one(nvars_out),
                                Some(p) => p.mul(img),
                            };
                            cache.push(next);
                        }
                        term = term.mul(&cache[e as usize]);
                    }
                    None => {
                        assert!(i < nvars_out, "unsubstituted variable out of range");
                        keep.0[i] += e;
                    }
                }
            }
            out = out.add(&term.mul_monomial(&keep));
        }
        out
    }

    fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Exact division; `None` if `other` does not divide `self`.
    pub fn exact_div(&self, other: &MultiPoly) -> Option<MultiPoly> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if let Some(c) = other.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = other.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = c * &lc_inv;
            let mut t = MultiPoly::zero(self.nvars);
            t.terms.insert(qm, qc);
            rem = rem.sub(&other.mul(&t));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Coefficients with respect to `var`, lowest power first.
    pub fn to_univariate(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let mut coeffs = vec![MultiPoly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut mm = m.clone();
            mm.0[var] = 0;
            coeffs[k].add_term(mm, c.clone());
        }
        coeffs
    }

    pub fn from_univariate(coeffs: &[MultiPoly], var: usize, nvars: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut mm = m.clone();
                mm.0[var] += k as u32;
                out.add_term(mm, a.clone());
            }
        }
        out
    }

    fn first_var(&self) -> Option<usize> {
        (0..self.nvars).find(|&i| self.degree_in(i) > 0)
    }

    /// Greatest common divisor, normalized to leading coefficient 1.
    pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        assert_eq!(a.nvars, b.nvars);
        let n = a.nvars;
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return MultiPoly::one(n);
        }
        let var = match (a.first_var(), b.first_var()) {
            (Some(x), Some(y)) => x.min(y),
            _ => return MultiPoly::one(n),
        };
        if a.degree_in(var) == 0 {
            return MultiPoly::gcd(a, &b.content(var));
        }
        if b.degree_in(var) == 0 {
            return MultiPoly::gcd(&a.content(var), b);
        }
        let ca = a.content(var);
        let cb = b.content(var);
        let c = MultiPoly::gcd(&ca, &cb);
        let mut f = a.exact_div(&ca).expect("content divides");
        let mut g = b.exact_div(&cb).expect("content divides");
        if f.degree_in(var) < g.degree_in(var) {
            std::mem::swap(&mut f, &mut g);
        }
        loop {
            if g.is_zero() {
                break;
            }
            if g.degree_in(var) == 0 {
                f = MultiPoly::one(n);
                break;
            }
            let r = f.pseudo_rem(&g, var);
            f = g;
            g = if r.is_zero() { r } else { r.primitive_part(var) };
        }
        let h = if f.degree_in(var) > 0 { f.primitive_part(var) } else { MultiPoly::one(n) };
        c.mul(&h).monic()
    }

    /// Gcd of coefficients with respect to `var`.
    pub fn content(&self, var: usize) -> MultiPoly {
        let coeffs = self.to_univariate(var);
        let mut g = MultiPoly::zero(self.nvars);
        for c in coeffs.iter().rev() {
            if c.is_zero() {
                continue;
            }
            g = MultiPoly::gcd(&g, c);
            if g.is_constant() {
                break;
            }
        }
        g
    }

    pub fn primitive_part(&self, var: usize) -> MultiPoly {
        let c = self.content(var);
        self.exact_div(&c).expect("content divides").monic()
    }

    fn pseudo_rem(&self, g: &MultiPoly, var: usize) -> MultiPoly {
        fn trim(r: &mut Vec<MultiPoly>) {
            while r.last().map_or(false, |c| c.is_zero()) {
                r.pop();
            }
        }
        let mut r = self.to_univariate(var);
        trim(&mut r);
        let gv = g.to_univariate(var);
        let dg = gv.len() - 1;
        let lcg = &gv[dg];
        while !r.is_empty() && r.len() - 1 >= dg {
            let dr = r.len() - 1;
            let lcr = r[dr].clone();
            for c in r.iter_mut() {
                *c = c.mul(lcg);
            }
            for (j, gc) in gv.iter().enumerate() {
                let idx = dr - dg + j;
                r[idx] = r[idx].sub(&lcr.mul(gc));
            }
            debug_assert!(r[dr].is_zero());
            r.pop();
            trim(&mut r);
        }
        MultiPoly::from_univariate(&r, var, self.nvars)
    }

    /// Divide by the linear form sum c_i t_i, if exact.
    pub fn div_linear(&self, form: &[i64]) -> Option<MultiPoly> {
        let k = form.iter().position(|&c| c != 0).expect("zero linear form");
        if self.is_zero() {
            return Some(self.clone());
        }
        // p = sum p_j x^j, form = c x + r, with x = t_k.
        let c = rat(form[k]);
        let mut rest = form.to_vec();
        rest[k] = 0;
        let r = MultiPoly::linear(&rest);
        let mut p = self.to_univariate(k);
        if p.len() == 1 {
            return None;
        }
        let c_inv = c.recip();
        let mut q = vec![MultiPoly::zero(self.nvars); p.len() - 1];
        for j in (1..p.len()).rev() {
            let qj = p[j].scale(&c_inv);
            p[j - 1] = p[j - 1].sub(&qj.mul(&r));
            q[j - 1] = qj;
        }
        if !p[0].is_zero() {
            return None;
        }
        Some(MultiPoly::from_univariate(&q, k, self.nvars))
    }

    pub fn divides_linear(&self, form: &[i64]) -> bool {
        // Restrict to the hyperplane form = 0 by eliminating one variable.
        let k = form.iter().position(|&c| c != 0).expect("zero linear form");
        let c = rat(form[k]);
        let mut img = MultiPoly::zero(self.nvars);
        for (i, &a) in form.iter().enumerate() {
            if i != k && a != 0 {
                img = img.add(&MultiPoly::var(self.nvars, i).scale(&(-rat(a) / &c)));
            }
        }
        let mut images = vec![None; self.nvars];
        images[k] = Some(img);
        self.substitute(&images, self.nvars).is_zero()
    }

    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>, names: &dyn Fn(usize) -> String) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.degree() == 0 {
                factors.push(a.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names(i)),
                    _ => factors.push(format!("{}^{}", names(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|i| format!("t{}", i + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn printing_is_grlex() {
        let p = t(2, 0).mul(&t(2, 0)).sub(&t(2, 1).mul(&t(2, 1)));
        assert_eq!(p.to_string(), "t1^2 - t2^2");
        let q = t(3, 2).add(&t(3, 0).mul(&t(3, 1)).scale(&rat(-3))).add(&MultiPoly::constant(3, rat(1) / rat(2)));
        assert_eq!(q.to_string(), "-3*t1*t2 + t3 + 1/2");
    }

    #[test]
    fn gcd_of_products() {
        let a = MultiPoly::linear(&[1, -1]);
        let b = MultiPoly::linear(&[1, 1]);
        let c = MultiPoly::linear(&[2, 3]);
        let g = MultiPoly::gcd(&a.mul(&b).mul(&b), &b.mul(&c).scale(&rat(7)));
        assert_eq!(g, b.monic());
        let g = MultiPoly::gcd(&a.mul(&c), &b);
        assert!(g.is_constant());
    }

    #[test]
    fn linear_division() {
        let a = MultiPoly::linear(&[1, -2, 1]);
        let p = a.mul(&MultiPoly::linear(&[0, 1, 1])).mul(&MultiPoly::linear(&[3, 0, 1]));
        assert!(p.divides_linear(&[1, -2, 1]));
        assert!(!p.divides_linear(&[1, 1, 1]));
        let q = p.div_linear(&[1, -2, 1]).unwrap();
        assert_eq!(q.mul(&a), p);
        assert!(p.div_linear(&[1, 1, 1]).is_none());
    }

    #[test]
    fn exact_division() {
        let a = MultiPoly::linear(&[1, 1]).pow(3);
        let b = MultiPoly::linear(&[1, 1]);
        assert_eq!(a.exact_div(&b).unwrap(), b.pow(2));
        assert!(b.exact_div(&a).is_none());
    }
}
