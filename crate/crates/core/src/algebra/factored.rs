use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{rat, MultiPoly};
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

/// Integer linear form, primitive with positive leading (first nonzero) coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntForm(pub Vec<i64>);

impl IntForm {
    /// Split `v` as `g * form` with `form` primitive; `None` for the zero vector.
    pub fn primitive(v: &[i64]) -> Option<(i64, IntForm)> {
        let first = *v.iter().find(|&&c| c != 0)?;
        let mut g = v.iter().fold(0i64, |acc, &c| acc.gcd(&c));
        if first < 0 {
            g = -g;
        }
        Some((g, IntForm(v.iter().map(|&c| c / g).collect())))
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        self.0
            .iter()
            .zip(point)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, x)| rat(c) * x)
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn to_poly(&self) -> MultiPoly {
        MultiPoly::linear(&self.0)
    }
}

/// A rational multiple of an integer linear form, `scale * form`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatForm {
    pub scale: BigRational,
    pub form: IntForm,
}

impl RatForm {
    pub fn new(v: &[i64], scale: BigRational) -> Option<RatForm> {
        let (g, form) = IntForm::primitive(v)?;
        Some(RatForm { scale: scale * rat(g), form })
    }

    pub fn from_weight(v: &[i64]) -> Option<RatForm> {
        Self::new(v, BigRational::one())
    }

    /// Coefficient vector of `self + other`.
    pub fn add_vec(&self, other: &RatForm) -> Vec<BigRational> {
        self.form
            .0
            .iter()
            .zip(&other.form.0)
            .map(|(&a, &b)| &self.scale * rat(a) + &other.scale * rat(b))
            .collect()
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        &self.scale * self.form.eval(point)
    }
}

/// Primitive form and scale for a vector with rational entries.
pub fn ratvec_form(v: &[BigRational]) -> Option<RatForm> {
    let lcm = v.iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let small: Option<Vec<i64>> = ints.iter().map(|c| i64::try_from(c).ok()).collect();
    let small = small?;
    RatForm::new(&small, BigRational::new(num_bigint::BigInt::one(), lcm))
}

/// Product `coeff * prod form^exp` of linear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormProduct {
    pub coeff: BigRational,
    pub factors: BTreeMap<IntForm, i32>,
}

impl FormProduct {
    pub fn one() -> Self {
        FormProduct { coeff: BigRational::one(), factors: BTreeMap::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        FormProduct { coeff: c, factors: BTreeMap::new() }
    }

    pub fn mul_form(&mut self, f: &RatForm, exp: i32) {
        if exp == 0 {
            return;
        }
        self.coeff *= pow_rat(&f.scale, exp);
        let e = self.factors.entry(f.form.clone()).or_insert(0);
        *e += exp;
        if *e == 0 {
            self.factors.remove(&f.form);
        }
    }

    pub fn mul(&self, other: &FormProduct) -> FormProduct {
        let mut r = self.clone();
        r.coeff *= &other.coeff;
        for (f, &e) in &other.factors {
            let x = r.factors.entry(f.clone()).or_insert(0);
            *x += e;
            if *x == 0 {
                r.factors.remove(f);
            }
        }
        r
    }

    pub fn scale(&mut self, c: &BigRational) {
        self.coeff *= c;
    }

    pub fn inv(&self) -> FormProduct {
        FormProduct {
            coeff: self.coeff.recip(),
            factors: self.factors.iter().map(|(f, &e)| (f.clone(), -e)).collect(),
        }
    }

    /// Exact evaluation; `None` if a denominator vanishes.
    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        let mut v = self.coeff.clone();
        for (f, &e) in &self.factors {
            let x = f.eval(point);
            if x.is_zero() && e < 0 {
                return None;
            }
            v *= pow_rat(&x, e);
        }
        Some(v)
    }

    pub fn to_factored(&self, nvars: usize) -> Factored {
        Factored {
            poly: MultiPoly::constant(nvars, self.coeff.clone()),
            factors: self.factors.clone(),
        }
        .cancel()
    }
}

pub fn pow_rat(x: &BigRational, e: i32) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), e.unsigned_abs() as usize)
    }
}

/// Polynomial times a product of powers of linear forms: `poly * prod form^exp`.
///
/// Sums only expand the factors that differ between the summands, so sums of
/// localization contributions (whose denominators are linear) stay cheap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    pub poly: MultiPoly,
    pub factors: BTreeMap<IntForm, i32>,
}

impl Factored {
    pub fn zero(nvars: usize) -> Self {
        Factored { poly: MultiPoly::zero(nvars), factors: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::one(nvars))
    }

    pub fn from_poly(poly: MultiPoly) -> Self {
        Factored { poly, factors: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn mul(&self, other: &Factored) -> Factored {
        if self.is_zero() || other.is_zero() {
            return Factored::zero(self.nvars());
        }
        let mut factors = self.factors.clone();
        for (f, &e) in &other.factors {
            let x = factors.entry(f.clone()).or_insert(0);
            *x += e;
            if *x == 0 {
                factors.remove(f);
            }
        }
        Factored { poly: self.poly.mul(&other.poly), factors }.cancel()
    }

    pub fn mul_product(&self, p: &FormProduct) -> Factored {
        self.mul(&p.to_factored(self.nvars()))
    }

    pub fn pow(&self, k: u32) -> Factored {
        Factored {
            poly: self.poly.pow(k),
            factors: self.factors.iter().map(|(f, &e)| (f.clone(), e * k as i32)).collect(),
        }
    }

    pub fn add(&self, other: &Factored) -> Factored {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let n = self.nvars();
        let mut common = BTreeMap::new();
        let mut pa = self.poly.clone();
        let mut pb = other.poly.clone();
        let keys: std::collections::BTreeSet<&IntForm> = self.factors.keys().chain(other.factors.keys()).collect();
        for f in keys {
            let ea = *self.factors.get(f).unwrap_or(&0);
            let eb = *other.factors.get(f).unwrap_or(&0);
            let m = ea.min(eb);
            if m != 0 {
                common.insert(f.clone(), m);
            }
            let lp = f.to_poly();
            if ea > m {
                pa = pa.mul(&lp.pow((ea - m) as u32));
            }
            if eb > m {
                pb = pb.mul(&lp.pow((eb - m) as u32));
            }
        }
        let poly = pa.add(&pb);
        if poly.is_zero() {
            return Factored::zero(n);
        }
        Factored { poly, factors: common }.cancel()
    }

    pub fn neg(&self) -> Factored {
        Factored { poly: self.poly.neg(), factors: self.factors.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Factored {
        if c.is_zero() {
            return Factored::zero(self.nvars());
        }
        Factored { poly: self.poly.scale(c), factors: self.factors.clone() }
    }

    /// Cancel denominator forms dividing the polynomial part.
    pub fn cancel(mut self) -> Factored {
        if self.poly.is_zero() {
            self.factors.clear();
            return self;
        }
        let negs: Vec<IntForm> = self.factors.iter().filter(|(_, &e)| e < 0).map(|(f, _)| f.clone()).collect();
        for f in negs {
            if self.poly.is_constant() {
                break;
            }
            let mut e = self.factors[&f];
            while e < 0 {
                match self.poly.div_linear(&f.0) {
                    Some(q) => {
                        self.poly = q;
                        e += 1;
                    }
                    None => break,
                }
            }
            if e == 0 {
                self.factors.remove(&f);
            } else {
                self.factors.insert(f, e);
            }
        }
        self
    }

    pub fn is_polynomial(&self) -> bool {
        self.is_zero() || self.factors.values().all(|&e| e > 0)
    }

    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        let fp = FormProduct { coeff: BigRational::one(), factors: self.factors.clone() };
        let v = fp.eval(point).ok_or(Error::DivisionByZero)?;
        Ok(self.poly.eval(point) * v)
    }

    pub fn to_rational_function(&self) -> RationalFunction {
        let n = self.nvars();
        let c = self.clone().cancel();
        let mut num = c.poly.clone();
        let mut den = MultiPoly::one(n);
        for (f, &e) in &c.factors {
            let lp = f.to_poly();
            if e > 0 {
                num = num.mul(&lp.pow(e as u32));
            } else {
                den = den.mul(&lp.pow((-e) as u32));
            }
        }
        RationalFunction::from_coprime(num, den)
    }

    /// Substitute linear images for the variables (`None` keeps t_i).
    pub fn substitute(&self, images: &[Option<MultiPoly>], nvars_out: usize) -> Result<Factored> {
        let mut out = Factored::from_poly(self.poly.substitute(images, nvars_out));
        for (f, &e) in &self.factors {
            let img = f.to_poly().substitute(images, nvars_out);
            if img.is_zero() {
                if e < 0 {
                    return Err(Error::DivisionByZero);
                }
                return Ok(Factored::zero(nvars_out));
            }
            let factor = match linear_coeffs(&img) {
                Some(v) => {
                    let rf = ratvec_form(&v).expect("nonzero form");
                    let mut p = FormProduct::one();
                    p.mul_form(&rf, e);
                    p.to_factored(nvars_out)
                }
                None if e > 0 => Factored::from_poly(img.pow(e as u32)),
                None => return Err(Error::Unsupported("non-linear image of a denominator form".into())),
            };
            out = out.mul(&factor);
        }
        Ok(out)
    }
}

fn linear_coeffs(p: &MultiPoly) -> Option<Vec<BigRational>> {
    if p.homogeneous_degree() != Some(1) {
        return None;
    }
    let mut v = vec![BigRational::zero(); p.nvars()];
    for (m, c) in p.terms() {
        let i = m.0.iter().position(|&e| e == 1)?;
        v[i] = c.clone();
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(v: &[i64], e: i32) -> Factored {
        let mut p = FormProduct::one();
        p.mul_form(&RatForm::from_weight(v).unwrap(), e);
        p.to_factored(v.len())
    }

    #[test]
    fn primitive_forms() {
        assert_eq!(IntForm::primitive(&[-2, 4]), Some((-2, IntForm(vec![1, -2]))));
        assert_eq!(IntForm::primitive(&[0, 0]), None);
    }

    #[test]
    fn sum_cancels_to_polynomial() {
        // 1/(t1 (t1 - t2)) + 1/(t2 (t2 - t1)) = -1/(t1 t2)
        let a = form(&[1, 0], -1).mul(&form(&[1, -1], -1));
        let b = form(&[0, 1], -1).mul(&form(&[1, -1], -1)).neg();
        let s = a.add(&b);
        assert_eq!(s.to_rational_function().to_string(), "-1/(t1*t2)");
    }

    #[test]
    fn agrees_with_rational_functions() {
        let a = form(&[1, 2], -2).mul(&Factored::from_poly(MultiPoly::linear(&[3, -1])));
        let b = form(&[1, -1], 1).mul(&form(&[1, 2], -1));
        let s = a.add(&b).to_rational_function();
        let r = a.to_rational_function().add(&b.to_rational_function());
        assert_eq!(s, r);
    }
}
