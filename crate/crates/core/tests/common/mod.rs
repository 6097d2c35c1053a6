//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Standard Young tableaux of a shape, by the hook length formula.
pub fn syt_hook(shape: &[usize]) -> BigUint {
    let n: usize = shape.iter().sum();
    let mut hooks = BigUint::one();
    for (i, &row) in shape.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = shape[i + 1..].iter().filter(|&&l| l > j).count();
            hooks *= BigUint::from(arm + leg + 1);
        }
    }
    factorial(n as u64) / hooks
}

/// Standard Young tableaux by Aitken's determinant
/// `n! det[1/(lambda_i - i + j)!]`.
pub fn syt_aitken(shape: &[usize]) -> BigUint {
    let k = shape.len();
    let n: usize = shape.iter().sum();
    let inv_fact = |x: i64| -> BigRational {
        if x < 0 {
            BigRational::zero()
        } else {
            BigRational::new(BigInt::one(), BigInt::from(factorial(x as u64)))
        }
    };
    let mut a: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| inv_fact(shape[i] as i64 - i as i64 + j as i64))
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..k {
        let Some(pivot) = (col..k).find(|&r| !a[r][col].is_zero()) else {
            return BigUint::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..k {
            let factor = &a[r][col] / &p;
            if factor.is_zero() {
                continue;
            }
            for c in col..k {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    let value = det * BigRational::from_integer(BigInt::from(factorial(n as u64)));
    assert!(value.is_integer());
    value.to_integer().try_into().expect("nonnegative")
}

/// Standard Young tableaux by counting lattice words (ballot sequences)
/// with memoisation over partial shapes.
pub fn syt_lattice_words(shape: &[usize]) -> BigUint {
    fn go(filled: &mut Vec<usize>, shape: &[usize], memo: &mut HashMap<Vec<usize>, BigUint>) -> BigUint {
        if filled.as_slice() == shape {
            return BigUint::one();
        }
        if let Some(v) = memo.get(filled) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for i in 0..shape.len() {
            let can_grow = filled[i] < shape[i] && (i == 0 || filled[i - 1] > filled[i]);
            if can_grow {
                filled[i] += 1;
                total += go(filled, shape, memo);
                filled[i] -= 1;
            }
        }
        memo.insert(filled.clone(), total.clone());
        total
    }
    go(&mut vec![0; shape.len()], shape, &mut HashMap::new())
}

/// The (r+1) x s rectangle.
pub fn rectangle(r: usize, s: usize) -> Vec<usize> {
    vec![s; r + 1]
}

/// Candidate genera up to `g_max`, one divisor pair (r+1, s) at a time.
pub fn candidate_genera_oracle(g_max: u64) -> Vec<u64> {
    let mut hit = vec![false; g_max as usize + 1];
    for k in 2..=g_max {
        let r = (k - 1) as u128;
        let mut g = k;
        while g <= g_max {
            let s = (g / k) as u128;
            if r * r + 1 < s * (3 * r - 1) && 2 * s <= r {
                hit[g as usize] = true;
            }
            g += k;
        }
    }
    (0..=g_max).filter(|&g| hit[g as usize]).collect()
}

/// Every (r, s) with g = (r+1)s passing the candidate inequalities, as
/// exact rational comparisons.
pub fn witnesses_oracle(g: u64) -> Vec<(u64, u64)> {
    (2..=g)
        .filter(|k| g % k == 0)
        .map(|k| (k - 1, g / k))
        .filter(|&(r, s)| {
            let lower = BigRational::new(BigInt::from(r * r + 1), BigInt::from(3 * r - 1));
            let upper = BigRational::new(BigInt::from(r), BigInt::from(2u32));
            let s = BigRational::from_integer(BigInt::from(s));
            lower < s && s <= upper
        })
        .collect()
}
