//! Exact Bernoulli numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `B_0 … B_nmax` from w/(eʷ−1) = Σ Bₖ wᵏ/k!, via Σ_{k≤m} C(m+1,k)Bₖ = 0.
pub fn bernoulli_table(nmax: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(nmax + 1);
    b.push(Rational::one());
    for m in 1..=nmax {
        // binomials C(m+1, k) for k = 0..m
        let mut binom = BigInt::one();
        let mut acc = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// B_n for even n ≥ 2.
pub fn bernoulli(n: usize) -> Result<Rational> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::Domain(format!("bernoulli({n}): n must be even and at least 2")));
    }
    Ok(bernoulli_table(n).pop().expect("table is non-empty"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn first_values() {
        assert_eq!(bernoulli(2).unwrap(), q(1, 6));
        assert_eq!(bernoulli(4).unwrap(), q(-1, 30));
        assert_eq!(bernoulli(6).unwrap(), q(1, 42));
        assert_eq!(bernoulli(12).unwrap(), q(-691, 2730));
        let t = bernoulli_table(9);
        assert_eq!(t[1], q(-1, 2));
        assert!(t[3].is_zero() && t[9].is_zero());
    }

    #[test]
    fn odd_or_small_rejected() {
        assert!(bernoulli(3).is_err());
        assert!(bernoulli(0).is_err());
    }
}
