//! The virtual divisor class `a*lambda + b0*delta_0 + c*psi` on the moduli
//! space of 1-pointed irreducible curves, computed two independent ways:
//!
//! * **assembly**: push forward `(r+1) c_1(pi_* L^m) - m e c_1(V)` using
//!   the pushforward formulas for alpha, beta, gamma;
//! * **closed form**: the transcribed expressions for a and b0.
//!
//! Both are only defined up to a positive multiple; slopes are compared,
//! never raw coefficients, except where the scale is known to agree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::appendix::{Appendix, Target};
use crate::brill_noether::BNParams;
use crate::error::{Error, Result};
use crate::exactalg::{Factor, FactorList, MultiPoly, Point, RatFunc, Rational, Var};

/// Scalars a divisor class can have as coefficients.
pub trait Coefficient: Clone + fmt::Display {
    fn from_int(n: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// `rhs` must be nonzero.
    fn div(&self, rhs: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Coefficient for Rational {
    fn from_int(n: i64) -> Self {
        Rational::from(n)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self.checked_div(rhs).expect("nonzero divisor")
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl Coefficient for RatFunc {
    fn from_int(n: i64) -> Self {
        RatFunc::constant(n)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self.checked_div(rhs).expect("nonzero divisor")
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

/// Coefficients on the basis (lambda, delta_0, psi).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisorClass<C> {
    /// lambda
    pub a: C,
    /// delta_0
    pub b0: C,
    /// psi
    pub c: C,
}

impl<C: Coefficient> DivisorClass<C> {
    pub fn new(a: C, b0: C, c: C) -> Self {
        DivisorClass { a, b0, c }
    }

    pub fn lambda() -> Self {
        DivisorClass::new(C::from_int(1), C::from_int(0), C::from_int(0))
    }

    pub fn scale(&self, k: &C) -> Self {
        DivisorClass::new(self.a.mul(k), self.b0.mul(k), self.c.mul(k))
    }

    pub fn plus(&self, other: &Self) -> Self {
        DivisorClass::new(
            self.a.add(&other.a),
            self.b0.add(&other.b0),
            self.c.add(&other.c),
        )
    }

    pub fn minus(&self, other: &Self) -> Self {
        DivisorClass::new(
            self.a.sub(&other.a),
            self.b0.sub(&other.b0),
            self.c.sub(&other.c),
        )
    }
}

impl<C: fmt::Display> fmt::Display for DivisorClass<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) lambda + ({}) delta_0 + ({}) psi", self.a, self.b0, self.c)
    }
}

/// Pushforwards of alpha, beta, gamma along the forgetful map from the
/// space of linear series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PushforwardTriple<C> {
    pub alpha: DivisorClass<C>,
    pub beta: DivisorClass<C>,
    pub gamma: DivisorClass<C>,
}

/// Inputs to the pushforward formulas, in any coefficient type.
struct Numerics<C> {
    m: C,
    r: C,
    g: C,
    d: C,
    xi: C,
    n: C,
}

fn int<C: Coefficient>(n: i64) -> C {
    C::from_int(n)
}

fn pushforward_generic<C: Coefficient>(x: &Numerics<C>) -> PushforwardTriple<C> {
    let (g, d, r, xi, n) = (&x.g, &x.d, &x.r, &x.xi, &x.n);
    let g1 = g.sub(&int(1));
    let g2 = g.sub(&int(2));

    // alpha: (dN / (6(g-1)(g-2))) * [6(gd - 2g^2 + 8d - 8g + 4), 2g^2 - gd + 3g - 4d - 2, -6d(g-2)]
    let pre_alpha = d.mul(n).div(&int::<C>(6).mul(&g1).mul(&g2));
    let gd = g.mul(d);
    let gg = g.mul(g);
    let alpha_lambda = int::<C>(6).mul(
        &gd.sub(&int::<C>(2).mul(&gg))
            .add(&int::<C>(8).mul(d))
            .sub(&int::<C>(8).mul(g))
            .add(&int(4)),
    );
    let alpha_delta = int::<C>(2)
        .mul(&gg)
        .sub(&gd)
        .add(&int::<C>(3).mul(g))
        .sub(&int::<C>(4).mul(d))
        .sub(&int(2));
    let alpha_psi = int::<C>(-6).mul(d).mul(&g2);
    let alpha = DivisorClass::new(alpha_lambda, alpha_delta, alpha_psi).scale(&pre_alpha);

    // beta: (Nd / (2(g-1))) * [12, -1, -2(g-1)]
    let pre_beta = n.mul(d).div(&int::<C>(2).mul(&g1));
    let beta =
        DivisorClass::new(int(12), int(-1), int::<C>(-2).mul(&g1)).scale(&pre_beta);

    // gamma: (N / (2(g-1)(g-2))) * [-(g+3)xi + 5r(r+2), ((g+1)xi - 3r(r+2))/6, -d(r+1)(g-2)]
    let pre_gamma = n.div(&int::<C>(2).mul(&g1).mul(&g2));
    let rr2 = r.mul(&r.add(&int(2)));
    let gamma_lambda = int::<C>(5)
        .mul(&rr2)
        .sub(&g.add(&int(3)).mul(xi));
    let gamma_delta = g
        .add(&int(1))
        .mul(xi)
        .sub(&int::<C>(3).mul(&rr2))
        .div(&int(6));
    let gamma_psi = int::<C>(0)
        .sub(d)
        .mul(&r.add(&int(1)))
        .mul(&g2);
    let gamma = DivisorClass::new(gamma_lambda, gamma_delta, gamma_psi).scale(&pre_gamma);

    PushforwardTriple { alpha, beta, gamma }
}

/// `(r+1)(m^2/2 alpha - m/2 beta + N lambda) - m e gamma`, e = md - g + 1.
fn assemble_generic<C: Coefficient>(x: &Numerics<C>, push: &PushforwardTriple<C>) -> DivisorClass<C> {
    let m = &x.m;
    let half_m2 = m.mul(m).div(&int(2));
    let half_m = m.div(&int(2));
    let pullback_lambda = DivisorClass::<C>::lambda().scale(&x.n);
    let bracket = push
        .alpha
        .scale(&half_m2)
        .minus(&push.beta.scale(&half_m))
        .plus(&pullback_lambda);
    let e = m.mul(&x.d).sub(&x.g).add(&int(1));
    bracket
        .scale(&x.r.add(&int(1)))
        .minus(&push.gamma.scale(&m.mul(&e)))
}

fn numerics_per_unit_n(p: &BNParams) -> Numerics<Rational> {
    Numerics {
        m: Rational::from(p.m),
        r: Rational::from(p.r),
        g: Rational::from(p.g),
        d: Rational::from(p.d),
        xi: p.xi.clone(),
        n: Rational::one(),
    }
}

/// Exact pushforwards at an admissible triple, including the factor N.
pub fn pushforward_classes(p: &BNParams) -> PushforwardTriple<Rational> {
    let unit = pushforward_generic(&numerics_per_unit_n(p));
    let n = Rational::from(p.castelnuovo());
    PushforwardTriple {
        alpha: unit.alpha.scale(&n),
        beta: unit.beta.scale(&n),
        gamma: unit.gamma.scale(&n),
    }
}

/// The class at `p` divided by N. Every term is linear in N.
pub fn assemble_class_per_unit_n(p: &BNParams) -> Result<DivisorClass<Rational>> {
    let x = numerics_per_unit_n(p);
    let class = assemble_generic(&x, &pushforward_generic(&x));
    if !class.c.is_zero() {
        return Err(Error::AssemblyInvariantViolation {
            m: p.m,
            r: p.r,
            s: p.s,
            psi: class.c.to_string(),
        });
    }
    Ok(class)
}

/// The assembled class at `p`, with N as an exact integer. Its
/// psi-coefficient must vanish.
pub fn assemble_class(p: &BNParams) -> Result<DivisorClass<Rational>> {
    let unit = assemble_class_per_unit_n(p)?;
    Ok(unit.scale(&Rational::from(p.castelnuovo())))
}

fn symbolic_numerics() -> Numerics<RatFunc> {
    let m = MultiPoly::var(Var::M);
    let r = MultiPoly::var(Var::R);
    let s = MultiPoly::var(Var::S);
    let one = MultiPoly::one();
    let g = (&r + &one) * &s;
    let d = &r * (&s + &one);
    let rf = |p: MultiPoly| RatFunc::from_poly(p);
    let (g, d, r) = (rf(g), rf(d), rf(r));
    // xi = 3(g-1) + (r-1)(g+r+1)(3g-2d+r-3)/(g-d+2r+1)
    let xi = int::<RatFunc>(3).mul(&g.sub(&int(1))).add(
        &r.sub(&int(1))
            .mul(&g.add(&r).add(&int(1)))
            .mul(&int::<RatFunc>(3).mul(&g).sub(&int::<RatFunc>(2).mul(&d)).add(&r).sub(&int(3)))
            .div(&g.sub(&d).add(&int::<RatFunc>(2).mul(&r)).add(&int(1))),
    );
    Numerics {
        m: rf(m),
        r,
        g,
        d,
        xi,
        n: RatFunc::constant(1),
    }
}

/// The pushforward triple as rational functions of (m, r, s), per unit N.
pub fn symbolic_pushforward() -> PushforwardTriple<RatFunc> {
    pushforward_generic(&symbolic_numerics())
}

/// The assembled class as rational functions of (m, r, s), per unit N.
pub fn symbolic_class() -> DivisorClass<RatFunc> {
    let x = symbolic_numerics();
    assemble_generic(&x, &pushforward_generic(&x))
}

/// Slope `-a/b0`, or infinity when a <= 0 or b0 >= 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slope {
    Finite(Rational),
    Infinite,
}

impl Slope {
    pub fn of(a: &Rational, b0: &Rational) -> Slope {
        if a.is_positive() && b0.is_negative() {
            Slope::Finite(-(a / b0))
        } else {
            Slope::Infinite
        }
    }

    pub fn of_class(class: &DivisorClass<Rational>) -> Slope {
        Slope::of(&class.a, &class.b0)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Slope::Finite(q) => Some(q),
            Slope::Infinite => None,
        }
    }

    /// `self - t`, infinite when the slope is.
    pub fn gap(&self, t: &Rational) -> Slope {
        match self {
            Slope::Finite(q) => Slope::Finite(q - t),
            Slope::Infinite => Slope::Infinite,
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(q) => write!(f, "{q}"),
            Slope::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Slope of the assembled class at `p`.
pub fn slope_s0(p: &BNParams) -> Result<Slope> {
    Ok(Slope::of_class(&assemble_class_per_unit_n(p)?))
}

/// The threshold `6 + k/(g+1)` with k = 12 (Slope Conjecture) or k = 8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Threshold {
    Twelve,
    Eight,
}

impl Threshold {
    pub fn numerator(self) -> i64 {
        match self {
            Threshold::Twelve => 12,
            Threshold::Eight => 8,
        }
    }

    pub fn at_genus(self, g: u64) -> Rational {
        Rational::from(6) + Rational::new(self.numerator(), g + 1)
    }
}

/// Transcribed closed forms of a/N and b0/N.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    a: FactorList,
    b0: FactorList,
    slope: FactorList,
}

impl ClosedForm {
    pub fn new(appendix: &Appendix) -> Result<ClosedForm> {
        let a = appendix.get("a")?;
        let b0 = appendix.get("b0")?;
        for (t, want) in [(a, Target::A), (b0, Target::B0)] {
            if t.target != want {
                return Err(Error::Transcription {
                    name: t.name.clone(),
                    reason: format!("expected target {want:?}"),
                });
            }
        }
        let mut slope = a.factors.times(&b0.factors.recip());
        slope.push(Factor::num(MultiPoly::constant(-1)));
        Ok(ClosedForm {
            a: a.factors.clone(),
            b0: b0.factors.clone(),
            slope,
        })
    }

    pub fn a(&self) -> RatFunc {
        self.a.expand().expect("nonzero denominators")
    }

    pub fn b0(&self) -> RatFunc {
        self.b0.expand().expect("nonzero denominators")
    }

    pub fn a_factors(&self) -> &FactorList {
        &self.a
    }

    pub fn b0_factors(&self) -> &FactorList {
        &self.b0
    }

    /// `F = -a/b0`, with the shared prefactor cancelled literally.
    pub fn slope_factors(&self) -> &FactorList {
        &self.slope
    }

    pub fn slope_function(&self) -> RatFunc {
        self.slope.expand().expect("nonzero denominators")
    }

    /// `F - (6 + k/(g+1))` with g = (r+1)s.
    pub fn gap_function(&self, threshold: Threshold) -> RatFunc {
        let g_plus_1: MultiPoly = "r*s+s+1".parse().expect("valid literal");
        let t = RatFunc::new(
            &g_plus_1.scale(&Rational::from(6)) + &MultiPoly::constant(threshold.numerator()),
            g_plus_1,
        )
        .expect("nonzero");
        &self.slope_function() - &t
    }

    /// (a/N, b0/N) at the triple.
    pub fn eval(&self, m: u32, r: u32, s: u32) -> Result<(Rational, Rational)> {
        let pt = [m as i64, r as i64, s as i64];
        Ok((self.a.eval_integer(pt)?, self.b0.eval_integer(pt)?))
    }

    pub fn slope_at(&self, m: u32, r: u32, s: u32) -> Result<Slope> {
        let (a, b0) = self.eval(m, r, s)?;
        Ok(Slope::of(&a, &b0))
    }

    /// The closed-form class at `p`, including N; c = 0 by construction.
    pub fn class_at(&self, p: &BNParams) -> Result<DivisorClass<Rational>> {
        let (a, b0) = self.eval(p.m, p.r, p.s)?;
        let n = Rational::from(p.castelnuovo());
        Ok(DivisorClass::new(a * &n, b0 * &n, Rational::zero()))
    }

    pub fn gap_at(&self, m: u32, r: u32, s: u32, threshold: Threshold) -> Result<Slope> {
        let g = (r as u64 + 1) * s as u64;
        Ok(self.slope_at(m, r, s)?.gap(&threshold.at_genus(g)))
    }
}

/// Serializable record of a class at a triple.
#[derive(Clone, Debug, Serialize)]
pub struct ClassRecord {
    pub m: u32,
    pub r: u32,
    pub s: u32,
    pub g: u64,
    pub d: u64,
    pub a: Rational,
    pub b0: Rational,
    pub c: Rational,
    pub slope: Slope,
}

impl ClassRecord {
    pub fn new(p: &BNParams, class: &DivisorClass<Rational>) -> ClassRecord {
        ClassRecord {
            m: p.m,
            r: p.r,
            s: p.s,
            g: p.g,
            d: p.d,
            a: class.a.clone(),
            b0: class.b0.clone(),
            c: class.c.clone(),
            slope: Slope::of_class(class),
        }
    }
}

/// Point for a triple, as used by rational-function evaluation.
pub fn triple_point(m: u32, r: u32, s: u32) -> Point {
    Point::mrs(m as i64, r as i64, s as i64)
}
