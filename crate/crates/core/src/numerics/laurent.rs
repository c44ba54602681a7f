//! Exact-rational Laurent series at z = ∞.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::bernoulli::Rational;

/// Σ a_p zᵖ with finitely many nonzero rational coefficients, truncated
/// below at z^{−depth}: every coefficient of a power ≥ −depth is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentAtInfinity {
    depth: i64,
    coeffs: BTreeMap<i64, Rational>,
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl LaurentAtInfinity {
    pub fn zero(depth: i64) -> Self {
        LaurentAtInfinity { depth, coeffs: BTreeMap::new() }
    }

    /// The single term `a·zᵖ`.
    pub fn monomial(a: Rational, p: i64, depth: i64) -> Self {
        let mut s = Self::zero(depth);
        s.add_term(p, a);
        s
    }

    pub fn constant(a: Rational, depth: i64) -> Self {
        Self::monomial(a, 0, depth)
    }

    pub fn depth(&self) -> i64 {
        self.depth
    }

    pub fn coeff(&self, p: i64) -> Rational {
        self.coeffs.get(&p).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in increasing power.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(p, a)| (*p, a))
    }

    pub fn add_term(&mut self, p: i64, a: Rational) {
        if p < -self.depth || a.is_zero() {
            return;
        }
        let e = self.coeffs.entry(p).or_insert_with(Rational::zero);
        *e += a;
        if e.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = Self::zero(self.depth);
        for (p, a) in self.terms() {
            out.add_term(p, a * k);
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.depth.min(o.depth));
        for (p, a) in self.terms().chain(o.terms()) {
            out.add_term(p, a.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    /// Product truncated at the smaller depth. Exact only when both factors
    /// have bounded-above powers, which all series here do.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.depth.min(o.depth));
        for (p, a) in self.terms() {
            for (q, b) in o.terms() {
                out.add_term(p + q, a * b);
            }
        }
        out
    }

    /// Rescale the variable: z ↦ k·z, i.e. coefficient a_p ↦ a_p·kᵖ.
    pub fn rescale_variable(&self, k: &Rational) -> Self {
        let mut out = Self::zero(self.depth);
        for (p, a) in self.terms() {
            out.add_term(p, a * pow(k, p));
        }
        out
    }

    /// Substitute z ↦ z + h and re-expand at ∞ down to z^{−depth}.
    pub fn shift(&self, h: &Rational) -> Self {
        let mut out = Self::zero(self.depth);
        for (p, a) in self.terms() {
            // zᵖ(1 + h/z)ᵖ = Σ_k C(p,k) hᵏ z^{p−k}
            let mut binom = Rational::one();
            let mut hk = Rational::one();
            let mut k = 0i64;
            while p - k >= -self.depth {
                out.add_term(p - k, a * &binom * &hk);
                binom = binom * rat(p - k) / rat(k + 1);
                if binom.is_zero() {
                    break;
                }
                hk *= h;
                k += 1;
            }
        }
        out
    }

    /// log(1 + h/z) expanded at ∞.
    pub fn log1p_over_z(h: &Rational, depth: i64) -> Self {
        let mut out = Self::zero(depth);
        let mut hk = h.clone();
        for k in 1..=depth {
            let sign = if k % 2 == 1 { rat(1) } else { rat(-1) };
            out.add_term(-k, sign * &hk / rat(k));
            hk *= h;
        }
        out
    }

    /// The first power (scanning from the top down to −depth) where `self`
    /// and `o` differ, or `None` if they agree throughout.
    pub fn first_mismatch(&self, o: &Self) -> Option<i64> {
        let depth = self.depth.min(o.depth);
        let top = self.coeffs.keys().chain(o.coeffs.keys()).copied().max().unwrap_or(0);
        (-depth..=top).rev().find(|&p| self.coeff(p) != o.coeff(p))
    }
}

fn pow(k: &Rational, p: i64) -> Rational {
    let mut out = Rational::one();
    for _ in 0..p.abs() {
        out *= k;
    }
    if p < 0 {
        out.recip()
    } else {
        out
    }
}

impl fmt::Display for LaurentAtInfinity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, a) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " {} ", if a.is_negative() { '-' } else { '+' })?;
                write!(f, "{}", a.abs())?;
            } else {
                write!(f, "{a}")?;
            }
            first = false;
            if *p != 0 {
                write!(f, "·z^{p}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", -self.depth - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn shift_of_inverse() {
        // 1/(z+1) = z⁻¹ − z⁻² + z⁻³ − …
        let s = LaurentAtInfinity::monomial(q(1, 1), -1, 5).shift(&q(1, 1));
        for k in 1..=5 {
            assert_eq!(s.coeff(-k), q(if k % 2 == 1 { 1 } else { -1 }, 1));
        }
        // (z + 1)² = z² + 2z + 1 is a finite expansion.
        let p = LaurentAtInfinity::monomial(q(1, 1), 2, 5).shift(&q(1, 1));
        assert_eq!(p.coeff(2), q(1, 1));
        assert_eq!(p.coeff(1), q(2, 1));
        assert_eq!(p.coeff(0), q(1, 1));
        assert_eq!(p.terms().count(), 3);
    }

    #[test]
    fn log_expansion() {
        let l = LaurentAtInfinity::log1p_over_z(&q(1, 2), 3);
        assert_eq!(l.coeff(-1), q(1, 2));
        assert_eq!(l.coeff(-2), q(-1, 8));
        assert_eq!(l.coeff(-3), q(1, 24));
    }
}
