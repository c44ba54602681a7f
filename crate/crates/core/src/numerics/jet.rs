//! Truncated Taylor series ("jets") over complex coefficients.
//!
//! A [`Jet`] of order `K` stores `K + 1` Taylor coefficients of a function
//! in the local variable `s = x − x₀`. Binary operations truncate to the
//! smaller of the two orders, and [`Jet::derive`] drops one order, so the
//! order of a result is an honest record of how many coefficients are exact.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    base: C64,
    c: Vec<C64>,
}

impl Jet {
    /// Jet from raw coefficients; order is `coeffs.len() - 1`.
    pub fn new(base: C64, coeffs: Vec<C64>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least one coefficient");
        Jet { base, c: coeffs }
    }

    pub fn constant(base: C64, v: C64, order: usize) -> Self {
        let mut c = vec![C64::new(0.0, 0.0); order + 1];
        c[0] = v;
        Jet { base, c }
    }

    /// The identity function `x ↦ x` expanded at `base`.
    pub fn variable(base: C64, order: usize) -> Self {
        let mut c = vec![C64::new(0.0, 0.0); order + 1];
        c[0] = base;
        if order >= 1 {
            c[1] = C64::new(1.0, 0.0);
        }
        Jet { base, c }
    }

    pub fn base(&self) -> C64 {
        self.base
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> C64 {
        self.c.get(k).copied().unwrap_or_default()
    }

    /// Constant term, i.e. the value at the base point.
    pub fn value(&self) -> C64 {
        self.c[0]
    }

    /// k-th derivative at the base point (k! times the coefficient).
    pub fn derivative_at_base(&self, k: usize) -> C64 {
        let mut f = 1.0;
        for j in 2..=k {
            f *= j as f64;
        }
        self.coeff(k) * f
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = (order + 1).min(self.c.len());
        Jet { base: self.base, c: self.c[..n].to_vec() }
    }

    /// Evaluate the truncated polynomial at `s` (offset from the base point).
    pub fn eval(&self, s: C64) -> C64 {
        self.c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &a| acc * s + a)
    }

    /// d/ds; the result has one order less. An order-0 jet stays order 0
    /// with a zero coefficient, which callers detect via [`Jet::order`].
    pub fn derive(&self) -> Self {
        if self.c.len() == 1 {
            return Jet::constant(self.base, C64::new(0.0, 0.0), 0);
        }
        let c = self.c[1..].iter().enumerate().map(|(k, &a)| a * (k + 1) as f64).collect();
        Jet { base: self.base, c }
    }

    /// Checked derivative: errors instead of silently reaching order 0.
    pub fn try_derive(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::Order("cannot differentiate an order-0 jet".into()));
        }
        Ok(self.derive())
    }

    pub fn scale(&self, k: C64) -> Self {
        Jet { base: self.base, c: self.c.iter().map(|&a| a * k).collect() }
    }

    pub fn add_scalar(&self, k: C64) -> Self {
        let mut out = self.clone();
        out.c[0] += k;
        out
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|a| *a == C64::new(0.0, 0.0))
    }

    fn check_invertible(&self, what: &str) -> Result<()> {
        let a0 = self.c[0];
        if a0 == C64::new(0.0, 0.0) || !a0.is_finite() {
            return Err(Error::Singular(format!("{what} of a jet with constant term {a0}")));
        }
        Ok(())
    }

    pub fn recip(&self) -> Result<Self> {
        self.check_invertible("reciprocal")?;
        let n = self.c.len();
        let inv0 = 1.0 / self.c[0];
        let mut r = vec![C64::new(0.0, 0.0); n];
        r[0] = inv0;
        for k in 1..n {
            let mut acc = C64::new(0.0, 0.0);
            for j in 1..=k {
                acc += self.c[j] * r[k - j];
            }
            r[k] = -acc * inv0;
        }
        Ok(Jet { base: self.base, c: r })
    }

    pub fn try_div(&self, other: &Jet) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    /// Square root whose constant term is the principal root of `value()`.
    pub fn sqrt(&self) -> Result<Self> {
        self.check_invertible("square root")?;
        self.sqrt_with(self.c[0].sqrt())
    }

    /// Square root with a prescribed constant term `r0` (`r0² = value()`).
    pub fn sqrt_with(&self, r0: C64) -> Result<Self> {
        self.check_invertible("square root")?;
        let n = self.c.len();
        let mut r = vec![C64::new(0.0, 0.0); n];
        r[0] = r0;
        let two_r0 = r0 * 2.0;
        for k in 1..n {
            let mut acc = self.c[k];
            for j in 1..k {
                acc -= r[j] * r[k - j];
            }
            r[k] = acc / two_r0;
        }
        Ok(Jet { base: self.base, c: r })
    }

    /// Logarithm; the constant term is the principal log of `value()`.
    pub fn ln(&self) -> Result<Self> {
        self.check_invertible("logarithm")?;
        let n = self.c.len();
        let mut r = vec![C64::new(0.0, 0.0); n];
        r[0] = self.c[0].ln();
        let inv0 = 1.0 / self.c[0];
        // r' = a'/a, solved coefficientwise: k a0 r_k = k a_k − Σ j r_j a_{k−j}
        for k in 1..n {
            let mut acc = self.c[k] * k as f64;
            for j in 1..k {
                acc -= r[j] * self.c[k - j] * j as f64;
            }
            r[k] = acc * inv0 / k as f64;
        }
        Ok(Jet { base: self.base, c: r })
    }

    pub fn exp(&self) -> Self {
        let n = self.c.len();
        let mut r = vec![C64::new(0.0, 0.0); n];
        r[0] = self.c[0].exp();
        // k r_k = Σ j a_j r_{k−j}
        for k in 1..n {
            let mut acc = C64::new(0.0, 0.0);
            for j in 1..=k {
                acc += self.c[j] * r[k - j] * j as f64;
            }
            r[k] = acc / k as f64;
        }
        Jet { base: self.base, c: r }
    }

    pub fn powi(&self, n: i32) -> Result<Self> {
        if n < 0 {
            return self.recip()?.powi(-n);
        }
        let mut acc = Jet::constant(self.base, C64::new(1.0, 0.0), self.order());
        let mut b = self.clone();
        let mut e = n as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Re-expand at `base + h` using the stored (truncated) polynomial.
    /// The result keeps the same order; accuracy degrades with |h|.
    pub fn shift(&self, h: C64) -> Self {
        let n = self.c.len();
        let mut out = vec![C64::new(0.0, 0.0); n];
        // Coefficient k of p(s+h) = Σ_{j≥k} C(j,k) a_j h^{j−k}.
        for k in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            let mut binom = 1.0;
            let mut hp = C64::new(1.0, 0.0);
            for j in k..n {
                acc += self.c[j] * binom * hp;
                binom = binom * (j + 1) as f64 / (j + 1 - k) as f64;
                hp *= h;
            }
            out[k] = acc;
        }
        Jet { base: self.base + h, c: out }
    }

    /// Largest coefficient modulus; handy for relative comparisons.
    pub fn norm_inf(&self) -> f64 {
        self.c.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// max_k |a_k − b_k| over the common order.
    pub fn max_diff(&self, other: &Jet) -> f64 {
        self.c.iter().zip(&other.c).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

impl Add<&Jet> for &Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        let n = self.c.len().min(o.c.len());
        Jet { base: self.base, c: (0..n).map(|k| self.c[k] + o.c[k]).collect() }
    }
}

impl Sub<&Jet> for &Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        let n = self.c.len().min(o.c.len());
        Jet { base: self.base, c: (0..n).map(|k| self.c[k] - o.c[k]).collect() }
    }
}

impl Mul<&Jet> for &Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        let n = self.c.len().min(o.c.len());
        let mut c = vec![C64::new(0.0, 0.0); n];
        for (i, &a) in self.c.iter().take(n).enumerate() {
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in o.c.iter().take(n - i).enumerate() {
                c[i + j] += a * b;
            }
        }
        Jet { base: self.base, c }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { base: self.base, c: self.c.iter().map(|a| -a).collect() }
    }
}

impl Mul<C64> for &Jet {
    type Output = Jet;
    fn mul(self, k: C64) -> Jet {
        self.scale(k)
    }
}

impl Mul<f64> for &Jet {
    type Output = Jet;
    fn mul(self, k: f64) -> Jet {
        self.scale(C64::new(k, 0.0))
    }
}

impl Add<C64> for &Jet {
    type Output = Jet;
    fn add(self, k: C64) -> Jet {
        self.add_scalar(k)
    }
}

impl Div<C64> for &Jet {
    type Output = Jet;
    fn div(self, k: C64) -> Jet {
        self.scale(1.0 / k)
    }
}

impl AddAssign<&Jet> for Jet {
    fn add_assign(&mut self, o: &Jet) {
        let n = self.c.len().min(o.c.len());
        self.c.truncate(n);
        for k in 0..n {
            self.c[k] += o.c[k];
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Jet> for Jet {
            type Output = Jet;
            fn $f(self, o: Jet) -> Jet {
                (&self).$f(&o)
            }
        }
        impl $tr<&Jet> for Jet {
            type Output = Jet;
            fn $f(self, o: &Jet) -> Jet {
                (&self).$f(o)
            }
        }
        impl $tr<Jet> for &Jet {
            type Output = Jet;
            fn $f(self, o: Jet) -> Jet {
                self.$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        -&self
    }
}
