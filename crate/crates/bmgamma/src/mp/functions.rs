//! Logarithms, the exponential at integer arguments, and pi.
//!
//! Every routine works at an inflated internal precision and rounds once at
//! the end, so results land within 2 ulp of the exact value at the requested
//! precision. Constants are cached per requested precision, which keeps
//! results bit-identical regardless of call order.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{rat, Rational};
use super::real::Real;
use super::MpError;

static LN2_CACHE: Mutex<Option<HashMap<u32, Real>>> = Mutex::new(None);
static PI_CACHE: Mutex<Option<HashMap<u32, Real>>> = Mutex::new(None);

fn cached(cache: &Mutex<Option<HashMap<u32, Real>>>, prec: u32, build: impl Fn(u32) -> Real) -> Real {
    let mut guard = cache.lock().unwrap();
    let map = guard.get_or_insert_with(HashMap::new);
    if let Some(v) = map.get(&prec) {
        return v.clone();
    }
    drop(guard);
    let v = build(prec);
    let mut guard = cache.lock().unwrap();
    guard.get_or_insert_with(HashMap::new).insert(prec, v.clone());
    v
}

/// atanh(z) for rational |z| < 1/3 by the odd power series; all terms share
/// the sign of z, so the sum has no cancellation. Internal precision `work`.
fn atanh_small(z: &Rational, work: u32) -> Real {
    let zr = Real::from_rational(z, work);
    let z2 = Real::from_rational(&(z * z), work);
    let mut pow = zr.clone();
    let mut sum = zr;
    let mut k = 1u64;
    loop {
        pow = Real::mul(&pow, &z2, work);
        let term = Real::div_u64(&pow, 2 * k + 1, work);
        if term.is_zero() || term.msb_exp() < sum.msb_exp() - work as i64 - 2 {
            break;
        }
        sum = Real::add(&sum, &term, work);
        k += 1;
    }
    sum
}

/// ln 2 = 2 atanh(1/3), rounded to `prec` bits.
pub fn ln2(prec: u32) -> Real {
    cached(&LN2_CACHE, prec, |p| {
        let work = p + 32;
        atanh_small(&rat(1, 3), work).mul_pow2(1).round_to(p)
    })
}

/// Natural log of a positive rational. Argument is reduced to m in [2/3, 4/3)
/// by an exact power of two, then ln m = 2 atanh((m-1)/(m+1)) with |z| <= 1/5.
/// The k*ln2 + ln m recombination cannot cancel catastrophically: a small
/// result forces k = 0.
pub fn ln_rational(q: &Rational, prec: u32) -> Result<Real, MpError> {
    if q.is_zero() || q.is_negative() {
        return Err(MpError::LogDomain(q.to_string()));
    }
    if q.is_one() {
        return Ok(Real::zero(prec));
    }
    let work = prec + 32;
    let num = q.numer().clone();
    let den = q.denom().clone();
    let mut k = num.bits() as i64 - den.bits() as i64;
    // scaled denominator den * 2^k without negative shifts
    let scaled = |k: i64| -> (BigInt, BigInt) {
        if k >= 0 {
            (num.clone(), den.clone() << k as u64)
        } else {
            (num.clone() << (-k) as u64, den.clone())
        }
    };
    // m = q / 2^k lies in [1/2, 2); push it into [2/3, 4/3)
    let (n0, d0) = scaled(k);
    if &n0 * 3 >= &d0 * 4 {
        k += 1;
    }
    let (n1, d1) = scaled(k);
    let z = Rational::new(&n1 - &d1, n1 + d1); // (m-1)/(m+1), |z| <= 1/5
    let series = if z.is_zero() {
        Real::zero(work)
    } else {
        atanh_small(&z, work).mul_pow2(1)
    };
    let result = if k == 0 {
        series
    } else {
        let kln2 = Real::mul(&ln2(work), &Real::from_i64(k, work), work);
        Real::add(&kln2, &series, work)
    };
    Ok(result.round_to(prec))
}

pub fn ln_u64(x: u64, prec: u32) -> Result<Real, MpError> {
    ln_rational(&Rational::from_integer(BigInt::from(x)), prec)
}

/// e = sum 1/k! as an exact rational partial sum (numerator by the
/// a_k = k*a_{k-1} + 1 recurrence), rounded once. Tail < 2/(K+1)!.
fn exp1(prec: u32) -> Real {
    let mut fact = BigInt::one();
    let mut k = 0u64;
    let limit = BigInt::one() << (prec + 4) as u64;
    while fact <= limit {
        k += 1;
        fact *= k;
    }
    let mut num = BigInt::one();
    for j in 1..=k {
        num = num * j + 1;
    }
    Real::from_rational(&Rational::new(num, fact), prec)
}

/// e^n for integer n (n may be negative), within 2 ulp at `prec`.
pub fn exp_int(n: i64, prec: u32) -> Real {
    if n == 0 {
        return Real::one(prec);
    }
    let bits_n = 64 - (n.unsigned_abs()).leading_zeros();
    let work = prec + 32 + 2 * bits_n;
    let e = exp1(work);
    let pos = Real::powu(&e, n.unsigned_abs(), work);
    let r = if n > 0 { pos } else { Real::div(&Real::one(work), &pos, work) };
    r.round_to(prec)
}

/// arctan(1/x) for integer x >= 2 by the alternating odd series; the tail is
/// bounded by the first omitted term.
fn atan_recip(x: u64, work: u32) -> Real {
    let z = Rational::new(BigInt::one(), BigInt::from(x));
    let zr = Real::from_rational(&z, work);
    let z2 = Real::from_rational(&(&z * &z), work);
    let mut pow = zr.clone();
    let mut sum = zr;
    let mut k = 1u64;
    loop {
        pow = Real::mul(&pow, &z2, work);
        let term = Real::div_u64(&pow, 2 * k + 1, work);
        if term.is_zero() || term.msb_exp() < sum.msb_exp() - work as i64 - 2 {
            break;
        }
        if k % 2 == 1 {
            sum = Real::sub(&sum, &term, work);
        } else {
            sum = Real::add(&sum, &term, work);
        }
        k += 1;
    }
    sum
}

/// pi = 16 atan(1/5) - 4 atan(1/239).
pub fn pi(prec: u32) -> Real {
    cached(&PI_CACHE, prec, |p| {
        let work = p + 32;
        let a = atan_recip(5, work).mul_pow2(2);
        let b = atan_recip(239, work);
        Real::sub(&a, &b, work).mul_pow2(2).round_to(p)
    })
}

pub fn sqrt_pi(prec: u32) -> Real {
    Real::sqrt(&pi(prec + 8), prec)
}

pub fn sqrt_2pi(prec: u32) -> Real {
    Real::sqrt(&pi(prec + 8).mul_pow2(1), prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::rational::rational_from_decimal;

    fn assert_close_dec(v: &Real, want: &str, slack_bits: i64) {
        let w = rational_from_decimal(want).unwrap();
        let err = (v.to_rational() - &w).abs();
        // reference strings carry enough digits that their own truncation
        // error is far below the allowed slack
        let scale = Real::from_rational(&w, 64).msb_exp();
        let bound_exp = scale - v.prec() as i64 + slack_bits;
        let bound = if bound_exp >= 0 {
            Rational::from_integer(BigInt::one() << bound_exp as u64)
        } else {
            Rational::new(BigInt::one(), BigInt::one() << (-bound_exp) as u64)
        };
        assert!(err < bound, "value {} vs {} (err {:?})", v.to_sci(30), want, err);
    }

    #[test]
    fn ln2_reference_digits() {
        let v = ln2(128);
        assert_close_dec(&v, "0.693147180559945309417232121458176568075500134", 3);
    }

    #[test]
    fn ln_rational_reference_values() {
        let v = ln_u64(50, 128).unwrap();
        assert_close_dec(&v, "3.91202300542814605861875078791055184712670284", 3);
        let v = ln_u64(3, 96).unwrap();
        assert_close_dec(&v, "1.09861228866810969139524523692252570464749056", 3);
        let v = ln_rational(&rat(1, 2), 80).unwrap();
        assert_close_dec(&v, "-0.693147180559945309417232121458176568075500134", 3);
        assert!(ln_rational(&rat(0, 1), 64).is_err());
        assert!(ln_rational(&rat(-3, 1), 64).is_err());
        assert!(ln_rational(&rat(1, 1), 64).unwrap().is_zero());
        // exact power of two: series leg vanishes
        let v = ln_rational(&rat(8, 1), 64).unwrap();
        assert_close_dec(&v, "2.0794415416798359282516963643745297042265", 3);
    }

    #[test]
    fn ln_additivity_spot() {
        let p = 192;
        let a = ln_u64(6, p).unwrap();
        let b = Real::add(&ln_u64(2, p).unwrap(), &ln_u64(3, p).unwrap(), p);
        let diff = Real::sub(&a, &b, p).abs();
        assert!(diff.is_zero() || diff.msb_exp() < a.msb_exp() - p as i64 + 4);
    }

    #[test]
    fn exp_int_reference_values() {
        assert_close_dec(&exp_int(1, 128), "2.71828182845904523536028747135266249775724709", 3);
        assert_close_dec(&exp_int(-2, 128), "0.135335283236612691893999494972484403407631545", 3);
        // e^{-8} * e^{8} == 1 within budget
        let p = 160;
        let prod = Real::mul(&exp_int(8, p), &exp_int(-8, p), p);
        let err = (prod.to_rational() - Rational::one()).abs();
        assert!(err < Rational::new(BigInt::one(), BigInt::one() << 150));
    }

    #[test]
    fn pi_reference_digits() {
        assert_close_dec(
            &pi(160),
            "3.1415926535897932384626433832795028841971693993751058209749445923078164",
            3,
        );
        let s = sqrt_2pi(128);
        assert_close_dec(&s, "2.50662827463100050241576528481104525300698674", 4);
    }

    #[test]
    fn doubling_precision_agrees() {
        for p in [64u32, 128, 256] {
            let lo = ln_u64(50, p).unwrap();
            let hi = ln_u64(50, 2 * p).unwrap();
            let diff = Real::sub(&lo, &hi, 2 * p).abs();
            assert!(diff.is_zero() || diff.msb_exp() <= lo.msb_exp() - p as i64 + 4);
        }
    }
}
