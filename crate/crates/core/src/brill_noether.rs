//! Numerical data of a triple (m, r, s): genus g = (r+1)s, degree
//! d = r(s+1), e = md - g + 1, the Castelnuovo count N and the constant xi
//! entering the pushforward of c_1 of the linear series bundle.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::Rational;

/// Binomial coefficient `C(n, k)`, zero for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// `C(r+m, m) >= m*d - g + 1` with g = (r+1)s, d = r(s+1).
pub fn nh_holds(m: u32, r: u32, s: u32) -> bool {
    let (m, r, s) = (m as i128, r as i128, s as i128);
    let e = m * r * (s + 1) - (r + 1) * s + 1;
    if e <= 0 {
        return true;
    }
    binomial((r + m) as u64, m as u64) >= BigUint::from(e as u128)
}

/// Number of g^r_d's on a general curve of genus g when rho = 0:
/// `g! * prod_{i=0}^{r} i! / prod_{i=0}^{r} (g-d+r+i)!`.
pub fn castelnuovo_n(g: u64, r: u64, d: u64) -> Result<BigUint> {
    let (gi, ri, di) = (g as i128, r as i128, d as i128);
    let k = gi - di + ri;
    let rho = gi - (ri + 1) * k;
    if rho != 0 || k < 0 {
        return Err(Error::Domain(format!(
            "Castelnuovo count needs rho = 0, got rho = {rho} for (g,r,d)=({g},{r},{d})"
        )));
    }
    let k = k as u64;
    let mut numerator = factorial(g);
    let mut denominator = BigUint::one();
    let mut lower = BigUint::one(); // i!
    let mut upper = factorial(k); // (k+i)!
    for i in 0..=r {
        if i > 0 {
            lower *= BigUint::from(i);
            upper *= BigUint::from(k + i);
        }
        numerator *= &lower;
        denominator *= &upper;
    }
    let (n, rem) = numerator.div_rem(&denominator);
    if !rem.is_zero() || n.is_zero() {
        return Err(Error::Domain(format!(
            "Castelnuovo count for (g,r,d)=({g},{r},{d}) is not a positive integer"
        )));
    }
    Ok(n)
}

/// `xi = 3(g-1) + (r-1)(g+r+1)(3g-2d+r-3)/(g-d+2r+1)`.
pub fn xi_value(g: u64, r: u64, d: u64) -> Result<Rational> {
    let (g, r, d) = (g as i128, r as i128, d as i128);
    let den = g - d + 2 * r + 1;
    if den == 0 {
        return Err(Error::Domain("xi denominator g-d+2r+1 vanishes".into()));
    }
    let frac = Rational::new(
        BigInt::from((r - 1) * (g + r + 1) * (3 * g - 2 * d + r - 3)),
        BigInt::from(den),
    );
    Ok(Rational::from(3 * (g - 1)) + frac)
}

/// An admissible triple with its derived quantities.
#[derive(Clone, Serialize)]
pub struct BNParams {
    pub m: u32,
    pub r: u32,
    pub s: u32,
    pub g: u64,
    pub d: u64,
    pub e: u64,
    pub xi: Rational,
    #[serde(skip)]
    n: OnceLock<BigUint>,
}

impl BNParams {
    /// The Castelnuovo count, computed on first use.
    pub fn castelnuovo(&self) -> &BigUint {
        self.n.get_or_init(|| {
            castelnuovo_n(self.g, self.r as u64, self.d)
                .expect("rho = 0 holds for every admissible triple")
        })
    }

    /// `C(r+m, m)`, the dimension of degree-m forms on P^r.
    pub fn hypersurface_dim(&self) -> BigUint {
        binomial((self.r + self.m) as u64, self.m as u64)
    }

    pub fn triple(&self) -> (u32, u32, u32) {
        (self.m, self.r, self.s)
    }
}

impl fmt::Debug for BNParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BNParams")
            .field("m", &self.m)
            .field("r", &self.r)
            .field("s", &self.s)
            .field("g", &self.g)
            .field("d", &self.d)
            .field("e", &self.e)
            .field("xi", &self.xi)
            .finish_non_exhaustive()
    }
}

impl PartialEq for BNParams {
    fn eq(&self, other: &Self) -> bool {
        self.triple() == other.triple()
    }
}

impl Eq for BNParams {}

/// Validate (m, r, s) and derive g, d, e, xi.
pub fn make_params(m: u32, r: u32, s: u32) -> Result<BNParams> {
    if m < 2 || r < 3 || s < 1 {
        return Err(Error::Domain(format!(
            "need m >= 2, r >= 3, s >= 1; got (m,r,s)=({m},{r},{s})"
        )));
    }
    let (m64, r64, s64) = (m as u64, r as u64, s as u64);
    let overflow = || Error::Domain(format!("(m,r,s)=({m},{r},{s}) is too large"));
    let g = (r64 + 1).checked_mul(s64).ok_or_else(overflow)?;
    let d = r64.checked_mul(s64 + 1).ok_or_else(overflow)?;
    let e = m64
        .checked_mul(d)
        .and_then(|md| (md + 1).checked_sub(g))
        .ok_or_else(overflow)?;

    let rho = g as i128 - (r64 as i128 + 1) * (g as i128 - d as i128 + r64 as i128);
    assert_eq!(rho, 0, "rho vanishes identically for g=(r+1)s, d=r(s+1)");
    assert_eq!(g + r64 - d, s64, "g - d + r = s");
    if !nh_holds(m, r, s) {
        return Err(Error::ConstraintViolation { m, r, s });
    }
    let xi = xi_value(g, r64, d)?;
    Ok(BNParams {
        m,
        r,
        s,
        g,
        d,
        e,
        xi,
        n: OnceLock::new(),
    })
}
