use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rational;
use crate::error::{Error, Result};

/// One of the three variables every polynomial in this crate lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    M,
    R,
    S,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::M, Var::R, Var::S];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::M => "m",
            Var::R => "r",
            Var::S => "s",
        }
    }

    fn from_name(c: char) -> Option<Var> {
        match c {
            'm' => Some(Var::M),
            'r' => Some(Var::R),
            's' => Some(Var::S),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over (m, r, s), ordered graded-lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn var(v: Var) -> Monomial {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
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

/// A (possibly partial) assignment of rational values to variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Point {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<Rational>,
}

impl Point {
    pub fn new() -> Point {
        Point::default()
    }

    pub fn mrs(m: i64, r: i64, s: i64) -> Point {
        Point::new().with(Var::M, m).with(Var::R, r).with(Var::S, s)
    }

    pub fn with(mut self, v: Var, value: impl Into<Rational>) -> Point {
        *self.slot(v) = Some(value.into());
        self
    }

    pub fn get(&self, v: Var) -> Option<&Rational> {
        match v {
            Var::M => self.m.as_ref(),
            Var::R => self.r.as_ref(),
            Var::S => self.s.as_ref(),
        }
    }

    fn slot(&mut self, v: Var) -> &mut Option<Rational> {
        match v {
            Var::M => &mut self.m,
            Var::R => &mut self.r,
            Var::S => &mut self.s,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Var::ALL
            .iter()
            .filter_map(|&v| self.get(v).map(|x| format!("{v}={x}")))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Nonnegative integer translation `x -> x + k` per variable.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shift {
    #[serde(default)]
    pub m: u32,
    #[serde(default)]
    pub r: u32,
    #[serde(default)]
    pub s: u32,
}

impl Shift {
    pub fn new(m: u32, r: u32, s: u32) -> Shift {
        Shift { m, r, s }
    }

    pub fn by(&self, v: Var) -> u32 {
        match v {
            Var::M => self.m,
            Var::R => self.r,
            Var::S => self.s,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.m == 0 && self.r == 0 && self.s == 0
    }
}

/// Sparse polynomial in (m, r, s) with exact rational coefficients.
/// No stored coefficient is ever zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: impl Into<Rational>) -> MultiPoly {
        MultiPoly::term(c, Monomial::ONE)
    }

    pub fn var(v: Var) -> MultiPoly {
        MultiPoly::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: impl Into<Rational>, mono: Monomial) -> MultiPoly {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, Rational)>) -> MultiPoly {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (mono, c) in iter {
            *acc.entry(mono).or_default() += &c;
        }
        MultiPoly::from_accumulator(acc)
    }

    fn from_accumulator(acc: HashMap<Monomial, Rational>) -> MultiPoly {
        MultiPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::ONE)
    }

    /// The constant value, if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// Leading term under graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|&v| self.degree_in(v) > 0)
            .collect()
    }

    /// True iff every stored coefficient is >= 0 (vacuously true for 0).
    pub fn coeffs_all_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn scale(&self, k: &Rational) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, v: Var, k: u32) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(v) == k)
                .map(|(m, c)| {
                    let mut e = m.0;
                    e[v.index()] = 0;
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Exact evaluation. Every variable that occurs must be assigned.
    pub fn eval(&self, point: &Point) -> Result<Rational> {
        let mut powers: [Vec<Rational>; 3] = Default::default();
        for v in Var::ALL {
            let deg = self.degree_in(v);
            if deg == 0 {
                continue;
            }
            let x = point.get(v).ok_or(Error::UnassignedVariable(v.name()))?;
            let mut table = Vec::with_capacity(deg as usize + 1);
            table.push(Rational::one());
            for i in 1..=deg as usize {
                let next = &table[i - 1] * x;
                table.push(next);
            }
            powers[v.index()] = table;
        }
        let mut total = Rational::zero();
        for (mono, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let e = mono.exponent(v) as usize;
                if e > 0 {
                    t *= &powers[v.index()][e];
                }
            }
            total += &t;
        }
        Ok(total)
    }

    /// Evaluation at an integer point. Uses checked `i128` arithmetic when
    /// all coefficients are integers and falls back to [`MultiPoly::eval`].
    pub fn eval_integer(&self, at: [i64; 3]) -> Rational {
        if let Some(v) = self.eval_i128(at) {
            return Rational::from(v);
        }
        self.eval(&Point::mrs(at[0], at[1], at[2]))
            .expect("all variables assigned")
    }

    fn eval_i128(&self, at: [i64; 3]) -> Option<i128> {
        let mut total: i128 = 0;
        for (mono, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            let mut t = i128::try_from(c.numer()).ok()?;
            for (x, e) in at.iter().zip(mono.0) {
                t = t.checked_mul((*x as i128).checked_pow(e)?)?;
            }
            total = total.checked_add(t)?;
        }
        Some(total)
    }

    /// Substitute the assigned variables, leaving the rest symbolic.
    pub fn specialize(&self, point: &Point) -> MultiPoly {
        let terms = self.terms.iter().map(|(mono, c)| {
            let mut e = mono.0;
            let mut coeff = c.clone();
            for v in Var::ALL {
                if let Some(x) = point.get(v) {
                    coeff *= &x.pow(e[v.index()]);
                    e[v.index()] = 0;
                }
            }
            (Monomial(e), coeff)
        });
        MultiPoly::from_terms(terms)
    }

    /// Replace each shifted variable `x` by `x + k`, fully expanded.
    pub fn shift(&self, shift: &Shift) -> MultiPoly {
        if shift.is_identity() {
            return self.clone();
        }
        let mut out: HashMap<Monomial, Rational> = HashMap::new();
        let mut cache: HashMap<(Var, u32), Vec<(u32, BigInt)>> = HashMap::new();
        for (mono, c) in &self.terms {
            let mut partial: Vec<(Monomial, Rational)> = vec![(Monomial::ONE, c.clone())];
            for v in Var::ALL {
                let e = mono.exponent(v);
                let k = shift.by(v);
                let expansion = cache
                    .entry((v, e))
                    .or_insert_with(|| binomial_expansion(e, k))
                    .clone();
                let mut next = Vec::with_capacity(partial.len() * expansion.len());
                for (pm, pc) in &partial {
                    for (j, coeff) in &expansion {
                        let mut ex = pm.0;
                        ex[v.index()] += j;
                        next.push((Monomial(ex), pc * Rational::from_integer(coeff.clone())));
                    }
                }
                partial = next;
            }
            for (m, c) in partial {
                *out.entry(m).or_default() += &c;
            }
        }
        MultiPoly::from_accumulator(out)
    }
}

/// Terms `(j, C(e, j) k^(e-j))` of `(x + k)^e`.
fn binomial_expansion(e: u32, k: u32) -> Vec<(u32, BigInt)> {
    if k == 0 {
        return vec![(e, BigInt::from(1))];
    }
    let mut out = Vec::with_capacity(e as usize + 1);
    let mut binom = BigInt::from(1);
    for j in (0..=e).rev() {
        let i = e - j;
        out.push((j, &binom * num_traits::pow(BigInt::from(k), i as usize)));
        binom = binom * BigInt::from(j) / BigInt::from(i + 1);
    }
    out
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            let entry = terms.entry(*m).or_default();
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        MultiPoly { terms }
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            let entry = terms.entry(*m).or_default();
            *entry -= c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        MultiPoly { terms }
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.times(mb)).or_default() += &(ca * cb);
            }
        }
        MultiPoly::from_accumulator(acc)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// `coeff*m^a*r^b*s^c` terms joined by `+`/`-`, leading (graded-lex
/// largest) term first. Unit coefficients and unit exponents are elided.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (mono, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if *mono == Monomial::ONE || !abs.is_one() {
                factors.push(abs.to_string());
            }
            for v in Var::ALL {
                match mono.exponent(v) {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    e => factors.push(format!("{}^{}", v.name(), e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    /// Accepts the `Display` format and, more loosely, any sum of
    /// monomial terms in any order, e.g. `6+5*r+r^2-11*s-3*r*s`.
    fn from_str(input: &str) -> Result<MultiPoly> {
        let text: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut rest = text.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'+' => (false, &rest[1..]),
                b'-' => (true, &rest[1..]),
                _ if first => (false, rest),
                _ => return Err(Error::Parse(format!("expected sign in {input:?}"))),
            };
            first = false;
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term, tail) = body.split_at(end);
            let (mono, mut coeff) = parse_term(term, input)?;
            if negative {
                coeff = -coeff;
            }
            terms.push((mono, coeff));
            rest = tail;
        }
        Ok(MultiPoly::from_terms(terms))
    }
}

fn parse_term(term: &str, input: &str) -> Result<(Monomial, Rational)> {
    let bad = || Error::Parse(format!("malformed term {term:?} in {input:?}"));
    if term.is_empty() {
        return Err(bad());
    }
    let mut coeff = Rational::one();
    let mut exps = [0u32; 3];
    let mut seen_coeff = false;
    for factor in term.split('*') {
        let first = factor.chars().next().ok_or_else(bad)?;
        if let Some(v) = Var::from_name(first) {
            let exp = match factor[1..].strip_prefix('^') {
                Some(e) => e.parse::<u32>().map_err(|_| bad())?,
                None if factor.len() == 1 => 1,
                None => return Err(bad()),
            };
            exps[v.index()] += exp;
        } else if first.is_ascii_digit() && !seen_coeff {
            coeff = factor.parse::<Rational>().map_err(|_| bad())?;
            seen_coeff = true;
        } else {
            return Err(bad());
        }
    }
    Ok((Monomial(exps), coeff))
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
