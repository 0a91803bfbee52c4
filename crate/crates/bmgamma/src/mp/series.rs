//! Truncated formal power series over exact rationals.
//!
//! A series of order n carries coefficients for degrees 0..=n and nothing
//! else; no operation reads or fabricates coefficients beyond the order, and
//! binary operations demand equal orders so truncation stays explicit at the
//! call site. All arithmetic is exact.

use num_traits::{One, Zero};

use super::rational::{rat_int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// Series from explicit coefficients, degree 0 first.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        PowerSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[(i64, i64)]) -> Self {
        Self::new(coeffs.iter().map(|&(n, d)| super::rational::rat(n, d)).collect())
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = c;
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(Rational::zero(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    /// The series t.
    pub fn identity(order: usize) -> Self {
        assert!(order >= 1);
        let mut s = Self::zero(order);
        s.coeffs[1] = Rational::one();
        s
    }

    /// Highest retained degree.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "truncation cannot raise the order");
        Self::new(self.coeffs[..=order].to_vec())
    }

    /// a(t)/t for a series with zero constant term; order drops by one.
    pub fn shift_down(&self) -> Self {
        assert!(self.coeffs[0].is_zero(), "shift_down needs a zero constant term");
        assert!(self.order() >= 1);
        Self::new(self.coeffs[1..].to_vec())
    }

    fn check_order(&self, other: &Self, what: &str) {
        assert_eq!(self.order(), other.order(), "{what}: order mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_order(other, "add");
        Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_order(other, "sub");
        Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Substitute t -> c*t.
    pub fn scale_var(&self, c: &Rational) -> Self {
        let mut pow = Rational::one();
        Self::new(
            self.coeffs
                .iter()
                .map(|a| {
                    let r = a * &pow;
                    pow = &pow * c;
                    r
                })
                .collect(),
        )
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_order(other, "mul");
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + a * b;
                }
            }
        }
        Self::new(out)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Self {
        assert!(!self.coeffs[0].is_zero(), "inv: zero constant term is singular");
        let n = self.order();
        let a0_inv = self.coeffs[0].recip();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = a0_inv.clone();
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc + &self.coeffs[j] * &out[k - j];
                }
            }
            out[k] = -(acc * &a0_inv);
        }
        Self::new(out)
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// a(b(t)); b must have zero constant term so the result truncates cleanly.
    pub fn compose(&self, inner: &Self) -> Self {
        assert!(
            inner.coeffs[0].is_zero(),
            "compose: inner series must have zero constant term"
        );
        self.check_order(inner, "compose");
        let n = self.order();
        // Horner from the top coefficient down
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul(inner);
            acc.coeffs[0] = &acc.coeffs[0] + &self.coeffs[k];
        }
        acc
    }

    /// Compositional inverse of t + a_2 t^2 + ...; requires a unit linear
    /// coefficient (rescale the variable first otherwise). Lagrange
    /// inversion: b_m = (1/m) [t^{m-1}] (t/a(t))^m.
    pub fn reverse(&self) -> Self {
        assert!(self.coeffs[0].is_zero(), "reverse: constant term must vanish");
        assert!(
            !self.coeffs[1].is_zero(),
            "reverse: zero linear coefficient is not invertible"
        );
        assert!(
            self.coeffs[1].is_one(),
            "reverse: normalize to a unit linear coefficient first"
        );
        let n = self.order();
        let u = self.shift_down().inv();
        let mut out = vec![Rational::zero(); n + 1];
        let mut pow = Self::one(n - 1);
        for m in 1..=n {
            pow = pow.mul(&u);
            out[m] = pow.coeff(m - 1) / rat_int(m as i64);
        }
        Self::new(out)
    }

    /// exp(a) for a with zero constant term, by the y' = a'y recurrence.
    pub fn exp(&self) -> Self {
        assert!(self.coeffs[0].is_zero(), "exp: constant term must vanish");
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = Rational::one();
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc + &self.coeffs[j] * rat_int(j as i64) * &out[k - j];
                }
            }
            out[k] = acc / rat_int(k as i64);
        }
        Self::new(out)
    }

    /// log(a) for a with unit constant term, by the z'a = a' recurrence.
    pub fn log(&self) -> Self {
        assert!(self.coeffs[0].is_one(), "log: constant term must be 1");
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..k {
                if !out[j].is_zero() && !self.coeffs[k - j].is_zero() {
                    acc = acc + &out[j] * rat_int(j as i64) * &self.coeffs[k - j];
                }
            }
            out[k] = &self.coeffs[k] - acc / rat_int(k as i64);
        }
        Self::new(out)
    }

    /// Square root with unit constant term (the branch with b(0) = 1).
    pub fn sqrt(&self) -> Self {
        assert!(self.coeffs[0].is_one(), "sqrt: constant term must be 1");
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = Rational::one();
        let half = super::rational::rat(1, 2);
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..k {
                acc = acc + &out[j] * &out[k - j];
            }
            out[k] = (&self.coeffs[k] - acc) * &half;
        }
        Self::new(out)
    }

    /// Formal derivative; the order drops by one.
    pub fn derive(&self) -> Self {
        assert!(self.order() >= 1);
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, a)| a * rat_int(i as i64 + 1))
                .collect(),
        )
    }
}

/// A series with exactly one singular order, w^{-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    pub principal: Rational,
    pub regular: PowerSeries,
}

impl LaurentSeries {
    /// num/den where den has a simple zero at the origin; the quotient has a
    /// simple pole whose residue lands in `principal`. Two orders are spent:
    /// one cancelling the zero of den, one reading the pole off the quotient.
    pub fn from_pole_quotient(num: &PowerSeries, den: &PowerSeries) -> Self {
        assert!(den.coeffs[0].is_zero(), "denominator must vanish at the origin");
        assert!(
            !den.coeffs[1].is_zero(),
            "denominator must have a simple zero at the origin"
        );
        num.check_order(den, "laurent quotient");
        let den_shift = den.shift_down();
        let q = num.truncate(num.order() - 1).div(&den_shift);
        LaurentSeries {
            principal: q.coeff(0).clone(),
            regular: q.shift_up_drop(),
        }
    }
}

impl PowerSeries {
    /// q(t)/t keeping only the regular part: drops the constant coefficient
    /// and reindexes, order drops by one.
    fn shift_up_drop(&self) -> Self {
        assert!(self.order() >= 1);
        Self::new(self.coeffs[1..].to_vec())
    }
}
