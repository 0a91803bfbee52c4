//! Arbitrary-precision binary floating point. A `Real` is sign * mant * 2^exp
//! with the mantissa normalized to exactly `prec` bits, so one ulp is 2^exp
//! and every rounded primitive lands within 0.5 ulp of the exact value
//! (round-to-nearest, ties to even). Precision is carried on the value and
//! passed explicitly to each operation; there is no ambient default.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

#[derive(Clone, Debug)]
pub struct Real {
    sign: i8,
    mant: BigUint,
    exp: i64,
    prec: u32,
}

impl Real {
    pub fn zero(prec: u32) -> Self {
        Real { sign: 0, mant: BigUint::zero(), exp: 0, prec }
    }

    pub fn one(prec: u32) -> Self {
        Real::from_u64(1, prec)
    }

    pub fn from_u64(v: u64, prec: u32) -> Self {
        Real::from_biguint_raw(1, BigUint::from(v), 0, prec, false)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        let sign = if v > 0 { 1 } else if v < 0 { -1 } else { 0 };
        Real::from_biguint_raw(sign, BigUint::from(v.unsigned_abs()), 0, prec, false)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        let sign = match v.sign() {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::NoSign => 0,
        };
        Real::from_biguint_raw(sign, v.magnitude().clone(), 0, prec, false)
    }

    /// Nearest `prec`-bit value to num/den; the single rounding is <= 0.5 ulp.
    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        if q.is_zero() {
            return Real::zero(prec);
        }
        let sign = if q.is_positive() { 1 } else { -1 };
        let num = q.numer().magnitude().clone();
        let den = q.denom().magnitude().clone();
        let shift = prec as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let (quot, rem, exp) = if shift >= 0 {
            let (quot, rem) = (num << shift as u64).div_rem(&den);
            (quot, rem, -shift)
        } else {
            let (quot, rem) = num.div_rem(&(den << (-shift) as u64));
            (quot, rem, -shift)
        };
        Real::from_biguint_raw(sign, quot, exp, prec, !rem.is_zero())
    }

    /// Core normalizer: rounds `mant * 2^exp` to `prec` bits, half to even.
    /// `sticky` records nonzero value strictly below the mantissa's last bit.
    fn from_biguint_raw(sign: i8, mant: BigUint, exp: i64, prec: u32, sticky: bool) -> Self {
        if mant.is_zero() {
            debug_assert!(!sticky, "sticky bit with zero mantissa is unrepresentable");
            return Real::zero(prec);
        }
        let bits = mant.bits();
        let prec_b = prec as u64;
        if bits <= prec_b {
            debug_assert!(!sticky || bits > prec_b, "upward shift would lose the sticky scale");
            let up = prec_b - bits;
            return Real { sign, mant: mant << up, exp: exp - up as i64, prec };
        }
        let drop = bits - prec_b;
        let keep = &mant >> drop;
        let tail = mant - (&keep << drop);
        let half = BigUint::one() << (drop - 1);
        let round_up = match tail.cmp(&half) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => sticky || keep.is_odd(),
        };
        let mut m = keep;
        let mut e = exp + drop as i64;
        if round_up {
            m += 1u32;
            if m.bits() > prec_b {
                m >>= 1;
                e += 1;
            }
        }
        Real { sign, mant: m, exp: e, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn signum(&self) -> i8 {
        self.sign
    }

    /// Exponent e with 2^{e-1} <= |v| < 2^e; meaningless for zero.
    pub fn msb_exp(&self) -> i64 {
        self.exp + self.prec as i64
    }

    pub fn neg(&self) -> Self {
        let mut r = self.clone();
        r.sign = -r.sign;
        r
    }

    pub fn abs(&self) -> Self {
        let mut r = self.clone();
        r.sign = r.sign.abs();
        r
    }

    /// Exact scaling by 2^k.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut r = self.clone();
        r.exp += k;
        r
    }

    /// Re-round to a (usually lower) precision.
    pub fn round_to(&self, prec: u32) -> Self {
        if self.is_zero() {
            return Real::zero(prec);
        }
        Real::from_biguint_raw(self.sign, self.mant.clone(), self.exp, prec, false)
    }

    pub fn add(a: &Real, b: &Real, prec: u32) -> Real {
        if a.is_zero() {
            return b.round_to(prec);
        }
        if b.is_zero() {
            return a.round_to(prec);
        }
        let e0 = a.exp.min(b.exp);
        let ia = BigInt::from_biguint(int_sign(a.sign), &a.mant << (a.exp - e0) as u64);
        let ib = BigInt::from_biguint(int_sign(b.sign), &b.mant << (b.exp - e0) as u64);
        let sum = ia + ib;
        let sign = match sum.sign() {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::NoSign => 0,
        };
        Real::from_biguint_raw(sign, sum.magnitude().clone(), e0, prec, false)
    }

    pub fn sub(a: &Real, b: &Real, prec: u32) -> Real {
        Real::add(a, &b.neg(), prec)
    }

    pub fn mul(a: &Real, b: &Real, prec: u32) -> Real {
        if a.is_zero() || b.is_zero() {
            return Real::zero(prec);
        }
        Real::from_biguint_raw(a.sign * b.sign, &a.mant * &b.mant, a.exp + b.exp, prec, false)
    }

    pub fn div(a: &Real, b: &Real, prec: u32) -> Real {
        assert!(!b.is_zero(), "division by zero Real");
        if a.is_zero() {
            return Real::zero(prec);
        }
        let shift = (prec as i64 + 2 + b.prec as i64 - a.prec as i64).max(0) as u64;
        let (quot, rem) = (&a.mant << shift).div_rem(&b.mant);
        Real::from_biguint_raw(
            a.sign * b.sign,
            quot,
            a.exp - b.exp - shift as i64,
            prec,
            !rem.is_zero(),
        )
    }

    pub fn sqrt(a: &Real, prec: u32) -> Real {
        assert!(a.sign >= 0, "sqrt of negative Real");
        if a.is_zero() {
            return Real::zero(prec);
        }
        let mut shift = (2 * (prec as i64 + 2) - a.prec as i64).max(0) as u64;
        if (a.exp - shift as i64) & 1 != 0 {
            shift += 1;
        }
        let m2 = &a.mant << shift;
        let root = num_integer::Roots::sqrt(&m2);
        let sticky = &root * &root != m2;
        Real::from_biguint_raw(1, root, (a.exp - shift as i64) / 2, prec, sticky)
    }

    pub fn mul_u64(a: &Real, k: u64, prec: u32) -> Real {
        Real::mul(a, &Real::from_u64(k, 64), prec)
    }

    pub fn div_u64(a: &Real, k: u64, prec: u32) -> Real {
        assert!(k != 0, "division by zero");
        if a.is_zero() {
            return Real::zero(prec);
        }
        let shift = prec as u64 + 2 + 64;
        let (quot, rem) = (&a.mant << shift).div_rem(&BigUint::from(k));
        Real::from_biguint_raw(a.sign, quot, a.exp - shift as i64, prec, !rem.is_zero())
    }

    /// Exact value as a rational (every Real is a dyadic rational).
    pub fn to_rational(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let m = BigInt::from_biguint(int_sign(self.sign), self.mant.clone());
        if self.exp >= 0 {
            Rational::from_integer(m << self.exp as u64)
        } else {
            Rational::new(m, BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Exact comparison of values (representation precision does not matter).
    pub fn cmp_value(&self, other: &Real) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => {}
            ord => return ord,
        }
        if self.sign == 0 {
            return Ordering::Equal;
        }
        let mag = self.cmp_mag(other);
        if self.sign > 0 {
            mag
        } else {
            mag.reverse()
        }
    }

    fn cmp_mag(&self, other: &Real) -> Ordering {
        match self.msb_exp().cmp(&other.msb_exp()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let e0 = self.exp.min(other.exp);
        let ma = &self.mant << (self.exp - e0) as u64;
        let mb = &other.mant << (other.exp - e0) as u64;
        ma.cmp(&mb)
    }

    /// Integer power by binary exponentiation; each multiply rounds once at
    /// `prec`, so the relative error stays below 2*log2(n)+1 ulp.
    pub fn powu(a: &Real, n: u64, prec: u32) -> Real {
        if n == 0 {
            return Real::one(prec);
        }
        let mut base = a.round_to(prec);
        let mut acc: Option<Real> = None;
        let mut n = n;
        loop {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(r) => Real::mul(&r, &base, prec),
                });
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            base = Real::mul(&base, &base, prec);
        }
        acc.unwrap()
    }

    /// Fixed-point decimal string with `digits` fractional digits,
    /// rounded half to even on the last digit.
    pub fn to_fixed(&self, digits: usize) -> String {
        super::rational::fixed_decimal(&self.to_rational(), digits)
    }

    /// Scientific notation with `sig` significant digits, e.g. "7.100e-3".
    pub fn to_sci(&self, sig: usize) -> String {
        super::rational::sci_decimal(&self.to_rational(), sig)
    }
}

fn int_sign(s: i8) -> Sign {
    match s.cmp(&0) {
        Ordering::Greater => Sign::Plus,
        Ordering::Less => Sign::Minus,
        Ordering::Equal => Sign::NoSign,
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl Eq for Real {}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl std::fmt::Display for Real {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_sci(20))
    }
}
