use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::{MultiPoly, Point, Shift};
use super::ratfunc::RatFunc;
use super::rational::{Rational, Sign};
use crate::error::{Error, Result};

/// A polynomial raised to a nonzero integer power; negative exponents are
/// denominator factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub poly: MultiPoly,
    pub exponent: i32,
}

impl Factor {
    pub fn num(poly: MultiPoly) -> Factor {
        Factor { poly, exponent: 1 }
    }

    pub fn den(poly: MultiPoly) -> Factor {
        Factor { poly, exponent: -1 }
    }

    pub fn is_denominator(&self) -> bool {
        self.exponent < 0
    }
}

/// Product of factors, kept exactly as transcribed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorList {
    pub factors: Vec<Factor>,
}

impl FactorList {
    pub fn new(factors: Vec<Factor>) -> FactorList {
        FactorList { factors }
    }

    pub fn push(&mut self, f: Factor) {
        self.factors.push(f);
    }

    pub fn numerators(&self) -> impl Iterator<Item = &Factor> {
        self.factors.iter().filter(|f| !f.is_denominator())
    }

    pub fn denominators(&self) -> impl Iterator<Item = &Factor> {
        self.factors.iter().filter(|f| f.is_denominator())
    }

    /// Expand into a single numerator/denominator pair.
    pub fn expand(&self) -> Result<RatFunc> {
        let mut num = MultiPoly::one();
        let mut den = MultiPoly::one();
        for f in &self.factors {
            let power = f.poly.pow(f.exponent.unsigned_abs());
            if f.is_denominator() {
                den = &den * &power;
            } else {
                num = &num * &power;
            }
        }
        RatFunc::new(num, den)
    }

    /// Product with `other`, cancelling factors that appear literally in
    /// both a numerator and a denominator position. No GCD is involved.
    pub fn times(&self, other: &FactorList) -> FactorList {
        let mut out: Vec<Factor> = Vec::new();
        for f in self.factors.iter().chain(&other.factors) {
            if let Some(existing) = out.iter_mut().find(|g| g.poly == f.poly) {
                existing.exponent += f.exponent;
            } else {
                out.push(f.clone());
            }
        }
        out.retain(|f| f.exponent != 0);
        FactorList { factors: out }
    }

    pub fn recip(&self) -> FactorList {
        FactorList {
            factors: self
                .factors
                .iter()
                .map(|f| Factor {
                    poly: f.poly.clone(),
                    exponent: -f.exponent,
                })
                .collect(),
        }
    }

    pub fn shift(&self, shift: &Shift) -> FactorList {
        FactorList {
            factors: self
                .factors
                .iter()
                .map(|f| Factor {
                    poly: f.poly.shift(shift),
                    exponent: f.exponent,
                })
                .collect(),
        }
    }

    pub fn specialize(&self, point: &Point) -> FactorList {
        FactorList {
            factors: self
                .factors
                .iter()
                .map(|f| Factor {
                    poly: f.poly.specialize(point),
                    exponent: f.exponent,
                })
                .collect(),
        }
    }

    /// Exact value at a point.
    pub fn eval(&self, point: &Point) -> Result<Rational> {
        let mut value = Rational::one();
        for f in &self.factors {
            let x = f.poly.eval(point)?;
            if f.is_denominator() {
                if x.is_zero() {
                    return Err(Error::DenominatorZero);
                }
                value = value / x.pow(f.exponent.unsigned_abs());
            } else {
                value *= &x.pow(f.exponent as u32);
            }
        }
        Ok(value)
    }

    /// Exact value at an integer point, using the fast path of
    /// [`MultiPoly::eval_integer`] for each factor.
    pub fn eval_integer(&self, at: [i64; 3]) -> Result<Rational> {
        let mut num = Rational::one();
        let mut den = Rational::one();
        for f in &self.factors {
            let x = f.poly.eval_integer(at).pow(f.exponent.unsigned_abs());
            if f.is_denominator() {
                if x.is_zero() {
                    return Err(Error::DenominatorZero);
                }
                den *= &x;
            } else {
                num *= &x;
            }
        }
        Ok(num / den)
    }

    /// Per-factor signs at `point`, in factor order.
    pub fn factor_signs(&self, point: &Point) -> Result<Vec<Sign>> {
        self.factors
            .iter()
            .map(|f| f.poly.eval(point).map(|x| x.sign()))
            .collect()
    }
}

/// Sign of a product of factors at `point`, computed factor by factor.
/// A vanishing denominator factor is an error; otherwise any vanishing
/// numerator factor gives `Zero`.
pub fn factor_sign_eval(factors: &FactorList, point: &Point) -> Result<Sign> {
    let mut sign = Sign::Positive;
    let mut zero = false;
    for f in &factors.factors {
        let s = f.poly.eval(point)?.sign();
        if s == Sign::Zero {
            if f.is_denominator() {
                return Err(Error::DenominatorZero);
            }
            zero = true;
        }
        sign = sign * s.pow(f.exponent.unsigned_abs());
    }
    Ok(if zero { Sign::Zero } else { sign })
}

impl fmt::Display for FactorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let render = |it: &mut dyn Iterator<Item = &Factor>| -> String {
            let parts: Vec<String> = it
                .map(|x| match x.exponent.unsigned_abs() {
                    1 => format!("({})", x.poly),
                    e => format!("({})^{e}", x.poly),
                })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        };
        let num = render(&mut self.numerators());
        let mut dens = self.denominators().peekable();
        if dens.peek().is_none() {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/({})", render(&mut dens))
        }
    }
}
