use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// Reduced quotient of polynomials; the denominator is monic in graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            let n = num.nvars();
            return RationalFunction { num, den: MultiPoly::one(n) };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = MultiPoly::gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
            }
        };
        let lc = den.leading_coefficient().recip();
        RationalFunction { num: num.scale(&lc), den: den.scale(&lc) }
    }

    /// Build from parts already known to be coprime.
    pub(crate) fn from_coprime(num: MultiPoly, den: MultiPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            let n = num.nvars();
            return RationalFunction { num, den: MultiPoly::one(n) };
        }
        let lc = den.leading_coefficient().recip();
        RationalFunction { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let n = p.nvars();
        RationalFunction { num: p, den: MultiPoly::one(n) }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::from_poly(MultiPoly::constant(nvars, c))
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::one(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_polynomial(&self) -> Option<MultiPoly> {
        let c = self.den.constant_value()?;
        Some(self.num.scale(&c.recip()))
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        self.as_polynomial()?.constant_value()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs();
        Ok(RationalFunction::from_coprime(base.num.pow(e), base.den.pow(e)))
    }

    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Substitute polynomial images for variables; fails if the denominator vanishes.
    pub fn substitute(&self, images: &[Option<MultiPoly>], nvars_out: usize) -> Result<Self> {
        let num = self.num.substitute(images, nvars_out);
        let den = self.den.substitute(images, nvars_out);
        Self::new(num, den)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one_poly() && self.num.is_one_poly()
    }
}

impl MultiPoly {
    fn is_one_poly(&self) -> bool {
        self.constant_value().map_or(false, |c| c.is_one())
    }
}

fn wrap(p: &MultiPoly) -> String {
    let s = p.to_string();
    if s.contains([' ', '*', '/']) {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            return write!(f, "{}", self.num);
        }
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::rat;

    #[test]
    fn reduces_common_factors() {
        let a = MultiPoly::linear(&[1, -1]);
        let b = MultiPoly::linear(&[1, 1]);
        let f = RationalFunction::new(a.mul(&b).scale(&rat(2)), b.mul(&b).scale(&rat(4))).unwrap();
        assert_eq!(f.numerator(), &a.scale(&(rat(1) / rat(2))));
        assert_eq!(f.denominator(), &b);
        assert_eq!(f.to_string(), "(1/2*t1 - 1/2*t2)/(t1 + t2)");
    }

    #[test]
    fn sum_becomes_polynomial() {
        // t1^2/(t1 - t2) + t2^2/(t2 - t1) = t1 + t2
        let d = MultiPoly::linear(&[1, -1]);
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let f = RationalFunction::new(x.mul(&x), d.clone()).unwrap();
        let g = RationalFunction::new(y.mul(&y), d.neg()).unwrap();
        let s = f.add(&g);
        assert!(s.is_polynomial());
        assert_eq!(s.to_string(), "t1 + t2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RationalFunction::new(MultiPoly::one(1), MultiPoly::zero(1)).is_err());
        let f = RationalFunction::new(MultiPoly::one(2), MultiPoly::linear(&[1, 1])).unwrap();
        let img = vec![None, Some(MultiPoly::var(2, 0).neg())];
        assert!(f.substitute(&img, 2).is_err());
    }
}
