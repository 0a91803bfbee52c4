//! Exact rational scalars and the small number-theoretic helpers the
//! coefficient machinery leans on. `Rational` is `num_rational::BigRational`,
//! which keeps values in lowest terms with a positive denominator.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Shorthand for n/d. Panics if d == 0.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u64) -> BigInt {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= k;
    }
    f
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    for i in 0..k {
        num *= n - i;
        num /= i + 1; // exact: product of j consecutive integers is divisible by j!
    }
    num
}

/// Rising factorial (1/2)_k = (1/2)(3/2)...((2k-1)/2).
pub fn pochhammer_half(k: u32) -> Rational {
    let mut r = Rational::one();
    for i in 0..k {
        r *= rat(2 * i as i64 + 1, 2);
    }
    r
}

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Bernoulli number B_n with the B_1 = -1/2 convention.
/// Computed by the defining recurrence sum_{k<=n} C(n+1,k) B_k = 0 and
/// memoized process-wide; lookups after the first are O(1).
pub fn bernoulli(n: u32) -> Rational {
    let mut memo = BERNOULLI.lock().unwrap();
    if memo.is_empty() {
        memo.push(Rational::one());
    }
    while memo.len() <= n as usize {
        let m = memo.len() as u64;
        let mut s = Rational::zero();
        for (k, b) in memo.iter().enumerate() {
            s += Rational::from_integer(binomial(m + 1, k as u64)) * b;
        }
        let next = -s / rat_int(m as i64 + 1);
        memo.push(next);
    }
    memo[n as usize].clone()
}

/// Bernoulli polynomial value B_n(a) = sum_k C(n,k) B_k a^{n-k}.
pub fn bernoulli_poly(n: u32, a: &Rational) -> Rational {
    let mut s = Rational::zero();
    let mut apow = Rational::one(); // a^{n-k}, built from k = n downward
    for k in (0..=n).rev() {
        s += Rational::from_integer(binomial(n as u64, k as u64)) * bernoulli(k) * &apow;
        apow *= a;
    }
    s
}

/// Parse a plain decimal string ("-12.345", "0.5772...") into an exact rational.
pub fn rational_from_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (mantissa, exp10) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let s = mantissa;
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s),
    };
    let mut int_part = String::new();
    let mut frac_part = String::new();
    let mut seen_dot = false;
    for ch in digits.chars() {
        match ch {
            '.' if !seen_dot => seen_dot = true,
            '0'..='9' => {
                if seen_dot {
                    frac_part.push(ch)
                } else {
                    int_part.push(ch)
                }
            }
            _ => return None,
        }
    }
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let num: BigInt = format!("{}{}", int_part, frac_part).parse().ok()?;
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    let mut q = Rational::new(num, den);
    if exp10 > 0 {
        q *= Rational::from_integer(BigInt::from(10u32).pow(exp10 as u32));
    } else if exp10 < 0 {
        q /= Rational::from_integer(BigInt::from(10u32).pow(exp10.unsigned_abs()));
    }
    if sign < 0 {
        q = -q;
    }
    Some(q)
}

/// True if q == 0; avoids importing Zero at call sites.
pub fn is_zero(q: &Rational) -> bool {
    q.is_zero()
}

/// abs value of a rational.
pub fn rational_abs(q: &Rational) -> Rational {
    q.abs()
}

/// Nearest integer to num/den (both exact), ties to even.
fn round_half_even(num: &BigInt, den: &BigInt) -> BigInt {
    use num_integer::Integer;
    debug_assert!(den.is_positive());
    let (mut q, r) = num.div_mod_floor(den); // r in [0, den)
    let twice: BigInt = &r << 1;
    match twice.cmp(den) {
        std::cmp::Ordering::Greater => q += 1,
        std::cmp::Ordering::Equal => {
            if q.is_odd() {
                q += 1
            }
        }
        std::cmp::Ordering::Less => {}
    }
    q
}

/// Fixed-point decimal string of q with exactly `digits` fractional digits,
/// rounded half to even. "0.577...", "-12.50", "3" (digits = 0).
pub fn fixed_decimal(q: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = round_half_even(&(q.numer() * &scale), q.denom());
    let neg = scaled.is_negative();
    let mag = scaled.magnitude().to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if digits == 0 {
        out.push_str(&mag);
        return out;
    }
    if mag.len() > digits {
        let (int_part, frac_part) = mag.split_at(mag.len() - digits);
        out.push_str(int_part);
        out.push('.');
        out.push_str(frac_part);
    } else {
        out.push_str("0.");
        for _ in 0..(digits - mag.len()) {
            out.push('0');
        }
        out.push_str(&mag);
    }
    out
}

/// Scientific notation with `sig` significant digits, half-even rounding:
/// "7.100e-3", "1.020e-9", "2.37e5". Zero prints as "0".
pub fn sci_decimal(q: &Rational, sig: usize) -> String {
    assert!(sig >= 1);
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let mag = q.abs();
    // first guess at the decimal exponent from bit lengths, then correct exactly
    let bits = mag.numer().bits() as i64 - mag.denom().bits() as i64;
    let mut e10 = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64 - 1;
    loop {
        // mantissa = round(mag * 10^{sig-1-e10}); want it in [10^{sig-1}, 10^sig)
        let k = sig as i64 - 1 - e10;
        let (num, den) = if k >= 0 {
            (mag.numer() * BigInt::from(10u32).pow(k as u32), mag.denom().clone())
        } else {
            (mag.numer().clone(), mag.denom() * BigInt::from(10u32).pow((-k) as u32))
        };
        let m = round_half_even(&num, &den);
        let lo = BigInt::from(10u32).pow(sig as u32 - 1);
        let hi = BigInt::from(10u32).pow(sig as u32);
        if m < lo {
            e10 -= 1;
            continue;
        }
        if m >= hi {
            e10 += 1;
            continue;
        }
        let digits = m.to_string();
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(&digits[..1]);
        if sig > 1 {
            out.push('.');
            out.push_str(&digits[1..]);
        }
        out.push('e');
        out.push_str(&e10.to_string());
        return out;
    }
}
