use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::poly::{MultiPoly, Point, Shift, Var};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Unreduced quotient of two polynomials. No GCD is ever taken; equality
/// is decided by cross-multiplication.
#[derive(Clone, Serialize, Deserialize)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DenominatorZero);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: MultiPoly) -> RatFunc {
        RatFunc {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn constant(c: impl Into<Rational>) -> RatFunc {
        RatFunc::from_poly(MultiPoly::constant(c))
    }

    pub fn zero() -> RatFunc {
        RatFunc::from_poly(MultiPoly::zero())
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `self == other` as rational functions: `num1*den2 == num2*den1`.
    pub fn equivalent(&self, other: &RatFunc) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn eval(&self, point: &Point) -> Result<Rational> {
        let den = self.den.eval(point)?;
        if den.is_zero() {
            return Err(Error::DenominatorZero);
        }
        Ok(self.num.eval(point)? / den)
    }

    pub fn specialize(&self, point: &Point) -> Result<RatFunc> {
        RatFunc::new(self.num.specialize(point), self.den.specialize(point))
    }

    pub fn shift(&self, shift: &Shift) -> RatFunc {
        RatFunc {
            num: self.num.shift(shift),
            den: self.den.shift(shift),
        }
    }

    pub fn scale(&self, k: &Rational) -> RatFunc {
        RatFunc {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        if rhs.num.is_zero() {
            return Err(Error::DenominatorZero);
        }
        Ok(self * &rhs.recip()?)
    }
}

/// Substitute `var := value` into a polynomial, clearing denominators by
/// `den(value)^deg`.
pub fn substitute(p: &MultiPoly, var: Var, value: &RatFunc) -> RatFunc {
    let deg = p.degree_in(var);
    let mut num = MultiPoly::zero();
    let mut num_pow = MultiPoly::one();
    let den_powers: Vec<MultiPoly> = {
        let mut v = vec![MultiPoly::one()];
        for i in 1..=deg as usize {
            let next = &v[i - 1] * value.den();
            v.push(next);
        }
        v
    };
    for k in 0..=deg {
        let coeff = p.coefficient_of(var, k);
        if !coeff.is_zero() {
            num = num + &(&coeff * &num_pow) * &den_powers[(deg - k) as usize];
        }
        if k < deg {
            num_pow = &num_pow * value.num();
        }
    }
    RatFunc {
        num,
        den: den_powers[deg as usize].clone(),
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.equivalent(other)
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::constant(c)
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            };
        }
        RatFunc {
            num: &self.num * &rhs.den + &rhs.num * &self.den,
            den: &self.den * &rhs.den,
        }
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == MultiPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    fn rf(n: &str, d: &str) -> RatFunc {
        RatFunc::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFunc::new(p("r"), MultiPoly::zero()).is_err());
    }

    #[test]
    fn eval_slope_condition_bound() {
        let f = rf("r^2+1", "3*r-1");
        let at = |r: i64| f.eval(&Point::new().with(Var::R, r)).unwrap();
        assert_eq!(at(4), Rational::new(17, 11));
        assert_eq!(at(5), Rational::new(13, 7));
    }

    #[test]
    fn eval_at_pole_is_an_error() {
        let f = rf("r", "3*r-1");
        let pole = Point::new().with(Var::R, Rational::new(1, 3));
        assert!(matches!(f.eval(&pole), Err(Error::DenominatorZero)));
    }

    #[test]
    fn equality_by_cross_multiplication() {
        assert!(rf("s^2-1", "s-1").equivalent(&rf("s+1", "1")));
        let f = rf("m*r+s", "r^2+3");
        assert!(f.equivalent(&f));
        assert!(!rf("r*s+s-1", "1").equivalent(&rf("r*s+s-2", "1")));
    }

    #[test]
    fn field_operations() {
        let a = rf("1", "r");
        let b = rf("1", "s");
        assert_eq!(&a + &b, rf("r+s", "r*s"));
        assert_eq!(&a - &a, RatFunc::zero());
        assert_eq!(&a * &b, rf("1", "r*s"));
        assert_eq!(a.checked_div(&b).unwrap(), rf("s", "r"));
        assert!(a.checked_div(&RatFunc::zero()).is_err());
    }

    #[test]
    fn substitute_rational_value() {
        // 11 + 15r + 4r^2 - 11s - rs + r^2 s at s = r/2
        let q = p("11+15*r+4*r^2-11*s-r*s+r^2*s");
        let out = substitute(&q, Var::S, &rf("r", "2"));
        assert_eq!(out, rf("22+19*r+7*r^2+r^3", "2"));
        // Substituting a polynomial of degree 0 leaves the denominator 1.
        let out = substitute(&q, Var::S, &RatFunc::constant(0));
        assert_eq!(out, rf("11+15*r+4*r^2", "1"));
    }
}
