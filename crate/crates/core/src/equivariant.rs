//! Torus weights of explicit invariant equations on spaces of maps between
//! symmetric powers, and degrees of corank loci of symmetric forms.
//!
//! The torus of `GL_e` acts on `C^e` by characters `alpha_1..alpha_e`, the
//! torus of `GL_f` on `C^f` by `beta_1..beta_f`. A weight is an integer
//! combination of these characters.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::brill_noether::binomial;
use crate::error::{Error, Result};
use crate::exactalg::Rational;

/// Largest e, f and m accepted by the multiset enumerations.
pub const MAX_ENUMERATION: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightVector {
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
}

impl WeightVector {
    pub fn zero(e: usize, f: usize) -> WeightVector {
        WeightVector {
            alpha: vec![0; e],
            beta: vec![0; f],
        }
    }

    /// `b * sum(beta) - a * sum(alpha)`.
    pub fn uniform(e: usize, f: usize, a: i64, b: i64) -> WeightVector {
        WeightVector {
            alpha: vec![-a; e],
            beta: vec![b; f],
        }
    }

    fn components(&self) -> impl Iterator<Item = i64> + '_ {
        self.alpha.iter().chain(&self.beta).copied()
    }

    pub fn add(&mut self, other: &WeightVector) {
        for (x, y) in self.alpha.iter_mut().zip(&other.alpha) {
            *x += y;
        }
        for (x, y) in self.beta.iter_mut().zip(&other.beta) {
            *x += y;
        }
    }

    /// `k` with `self = k * other`, checked by integer cross-multiplication.
    pub fn proportionality(&self, other: &WeightVector) -> Option<Rational> {
        if self.alpha.len() != other.alpha.len() || self.beta.len() != other.beta.len() {
            return None;
        }
        let (i, pivot) = other.components().enumerate().find(|(_, y)| *y != 0)?;
        let x0 = self.components().nth(i)?;
        let cross_ok = self
            .components()
            .zip(other.components())
            .all(|(x, y)| x as i128 * pivot as i128 == y as i128 * x0 as i128);
        cross_ok.then(|| Rational::new(x0, pivot))
    }

    /// All alpha components equal and all beta components equal.
    pub fn is_symmetric(&self) -> bool {
        self.alpha.windows(2).all(|w| w[0] == w[1]) && self.beta.windows(2).all(|w| w[0] == w[1])
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, coeffs) in [("b", &self.beta), ("a", &self.alpha)] {
            for (i, c) in coeffs.iter().enumerate() {
                match *c {
                    0 => {}
                    1 => parts.push(format!("{name}{}", i + 1)),
                    -1 => parts.push(format!("-{name}{}", i + 1)),
                    _ => parts.push(format!("{c}*{name}{}", i + 1)),
                }
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + ").replace("+ -", "- "))
        }
    }
}

/// Size-m multisets of `{0..n}`, as sorted index vectors, in lexicographic order.
pub fn multisets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    fn rec(n: usize, m: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == m {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(n, m, i, current, out);
            current.pop();
        }
    }
    rec(n, m, 0, &mut current, &mut out);
    out
}

fn check_bounds(name: &str, n: u32, m: u32) -> Result<()> {
    if n == 0 || m == 0 || n > MAX_ENUMERATION || m > MAX_ENUMERATION {
        return Err(Error::Domain(format!(
            "{name} and m must lie in 1..={MAX_ENUMERATION}, got {name}={n}, m={m}"
        )));
    }
    Ok(())
}

/// Square matrix of entry weights of a generic map between two spaces of
/// the same dimension.
#[derive(Clone, Debug)]
pub struct WeightMatrix {
    pub entries: Vec<Vec<WeightVector>>,
}

impl WeightMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Weight of the determinant monomial `prod_i x_{i, perm(i)}`.
    pub fn matching_weight(&self, perm: &[usize]) -> WeightVector {
        let e = self.entries[0][0].alpha.len();
        let f = self.entries[0][0].beta.len();
        let mut w = WeightVector::zero(e, f);
        for (i, &j) in perm.iter().enumerate() {
            w.add(&self.entries[i][j]);
        }
        w
    }
}

/// Entry weights of a map `Sym^m C^e -> C^f`, `f = C(e+m-1, m)`: the entry
/// in row i, column S is `beta_i - sum_{j in S} alpha_j`.
pub fn quot_weight_matrix(e: u32, m: u32) -> Result<WeightMatrix> {
    check_bounds("e", e, m)?;
    let cols = multisets(e as usize, m as usize);
    let f = cols.len();
    let entries = (0..f)
        .map(|i| {
            cols.iter()
                .map(|set| {
                    let mut w = WeightVector::zero(e as usize, f);
                    w.beta[i] = 1;
                    for &j in set {
                        w.alpha[j] -= 1;
                    }
                    w
                })
                .collect()
        })
        .collect();
    Ok(WeightMatrix { entries })
}

/// Entry weights of a map `C^e -> Sym^m C^f`, `e = C(f+m-1, m)`: the entry
/// in row S, column j is `sum_{i in S} beta_i - alpha_j`.
pub fn sub_weight_matrix(f: u32, m: u32) -> Result<WeightMatrix> {
    check_bounds("f", f, m)?;
    let rows = multisets(f as usize, m as usize);
    let e = rows.len();
    let entries = rows
        .iter()
        .map(|set| {
            (0..e)
                .map(|j| {
                    let mut w = WeightVector::zero(e, f as usize);
                    w.alpha[j] = -1;
                    for &i in set {
                        w.beta[i] += 1;
                    }
                    w
                })
                .collect()
        })
        .collect();
    Ok(WeightMatrix { entries })
}

#[derive(Clone, Debug, Serialize)]
pub struct DeterminantWeight {
    pub e: usize,
    pub f: usize,
    pub m: u32,
    pub weight: WeightVector,
    /// The class the weight must be a positive multiple of.
    pub expected: WeightVector,
    /// weight = factor * expected
    pub factor: Rational,
}

fn determinant_weight(
    matrix: &WeightMatrix,
    m: u32,
    expected: WeightVector,
) -> Result<DeterminantWeight> {
    let n = matrix.size();
    let identity: Vec<usize> = (0..n).collect();
    let reversed: Vec<usize> = (0..n).rev().collect();
    let weight = matrix.matching_weight(&identity);
    // Every monomial of the determinant has the same weight.
    if matrix.matching_weight(&reversed) != weight {
        return Err(Error::ProportionalityFailed(
            "determinant monomials of different weights".into(),
        ));
    }
    let factor = weight
        .proportionality(&expected)
        .filter(Rational::is_positive)
        .ok_or_else(|| {
            Error::ProportionalityFailed(format!("{weight} is not a positive multiple of {expected}"))
        })?;
    Ok(DeterminantWeight {
        e: weight.alpha.len(),
        f: weight.beta.len(),
        m,
        weight,
        expected,
        factor,
    })
}

/// Weight of the determinant on `Hom(Sym^m C^e, C^f)`, checked to be a
/// positive multiple of `e sum(beta) - m f sum(alpha)`.
pub fn determinant_weight_quot(e: u32, m: u32) -> Result<DeterminantWeight> {
    let matrix = quot_weight_matrix(e, m)?;
    let f = matrix.size();
    let expected = WeightVector::uniform(e as usize, f, (m as usize * f) as i64, e as i64);
    determinant_weight(&matrix, m, expected)
}

/// Weight of the determinant on `Hom(C^e, Sym^m C^f)`, checked to be a
/// positive multiple of `m e sum(beta) - f sum(alpha)`.
pub fn determinant_weight_sub(f: u32, m: u32) -> Result<DeterminantWeight> {
    let matrix = sub_weight_matrix(f, m)?;
    let e = matrix.size();
    let expected = WeightVector::uniform(e, f as usize, f as i64, (m as usize * e) as i64);
    determinant_weight(&matrix, m, expected)
}

/// A monomial in the coefficients (a, b, c) of `a x^2 + b xy + c y^2`.
#[derive(Clone, Debug, Serialize)]
pub struct DiscriminantTerm {
    pub monomial: &'static str,
    pub coefficient: i64,
    pub weight: WeightVector,
}

/// Weights of the monomials of `b^2 - 4ac` on `Hom(C^1, Sym^2 C^2)`.
pub fn discriminant_weights() -> Vec<DiscriminantTerm> {
    // coefficient of x^i y^j has weight i beta_1 + j beta_2 - alpha_1
    let coeff = |i: i64, j: i64| WeightVector {
        alpha: vec![-1],
        beta: vec![i, j],
    };
    let (a, b, c) = (coeff(2, 0), coeff(1, 1), coeff(0, 2));
    let product = |x: &WeightVector, y: &WeightVector| {
        let mut w = x.clone();
        w.add(y);
        w
    };
    vec![
        DiscriminantTerm {
            monomial: "b^2",
            coefficient: 1,
            weight: product(&b, &b),
        },
        DiscriminantTerm {
            monomial: "a*c",
            coefficient: -4,
            weight: product(&a, &c),
        },
    ]
}

/// `prod_{k=0}^{c-1} C(n+k, c-k) / C(2k+1, k)`, the degree of the locus
/// of n x n symmetric forms of corank at least c.
pub fn corank_locus_degree(n: u32, c: u32) -> Result<Rational> {
    if c == 0 || c > n {
        return Err(Error::Domain(format!("corank degree needs 1 <= c <= n, got n={n}, c={c}")));
    }
    let (n, c) = (n as u64, c as u64);
    let degree = (0..c)
        .map(|k| {
            Rational::new(
                BigInt::from(binomial(n + k, c - k)),
                BigInt::from(binomial(2 * k + 1, k)),
            )
        })
        .product::<Rational>();
    if !degree.is_integer() {
        return Err(Error::Domain(format!(
            "corank degree for n={n}, c={c} is not an integer: {degree}"
        )));
    }
    Ok(degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(multisets(4, 3).len(), 20);
    }

    #[test]
    fn quot_examples() {
        let w = determinant_weight_quot(2, 1).unwrap();
        assert_eq!(w.weight, WeightVector::uniform(2, 2, 1, 1));
        assert_eq!(w.factor, Rational::new(1, 2));
        let w = determinant_weight_quot(2, 2).unwrap();
        assert_eq!(w.weight, WeightVector::uniform(2, 3, 3, 1));
        assert_eq!(w.factor, Rational::new(1, 2));
        let w = determinant_weight_quot(3, 2).unwrap();
        assert_eq!(w.weight, WeightVector::uniform(3, 6, 4, 1));
    }

    #[test]
    fn sub_examples() {
        let w = determinant_weight_sub(2, 2).unwrap();
        assert_eq!(w.weight, WeightVector::uniform(3, 2, 1, 3));
        assert_eq!(w.factor, Rational::new(1, 2));
        let w = determinant_weight_sub(1, 1).unwrap();
        assert_eq!(w.weight, WeightVector::uniform(1, 1, 1, 1));
    }

    #[test]
    fn discriminant_monomials_share_a_weight() {
        let terms = discriminant_weights();
        assert_eq!(terms[0].weight, terms[1].weight);
        assert_eq!(terms[0].weight, WeightVector::uniform(1, 2, 2, 2));
    }

    #[test]
    fn enumeration_bounds() {
        assert!(determinant_weight_quot(7, 1).is_err());
        assert!(determinant_weight_sub(2, 0).is_err());
    }

    #[test]
    fn corank_examples() {
        assert_eq!(corank_locus_degree(9, 3).unwrap(), Rational::from(1386));
        assert_eq!(corank_locus_degree(3, 2).unwrap(), Rational::from(4));
        assert_eq!(corank_locus_degree(7, 1).unwrap(), Rational::from(7));
        assert!(corank_locus_degree(2, 3).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(WeightVector::uniform(1, 2, 2, 2).to_string(), "2*b1 + 2*b2 - 2*a1");
    }
}
