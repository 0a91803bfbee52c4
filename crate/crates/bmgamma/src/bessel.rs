//! Convergent series for S0, I0 and the K0 identity route, the truncated
//! asymptotic sum for I0(x)K0(x), and the exact remainder that serves as
//! ground truth for every error-expansion comparison.
//!
//! Arguments are integers throughout: each caller in this crate evaluates at
//! an integer (usually even) argument, and integer arguments keep every term
//! of every series an exact rational.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::mp::rational::{rat_int, Rational};
use crate::mp::{ln_rational, MpError, Real};

#[derive(Debug, thiserror::Error)]
pub enum BesselError {
    #[error("gamma reference fixture holds {max} usable bits, {requested} requested")]
    FixtureExhausted { requested: u32, max: u32 },
    #[error("gamma reference carries {got} bits, {needed} required at this argument")]
    GammaRefPrecision { got: u32, needed: u32 },
    #[error("precision {got} below the policy minimum {needed} for argument {arg}")]
    PrecisionPolicy { got: u32, needed: u32, arg: u64 },
    #[error("cannot read gamma reference override {path}: {source}")]
    FixtureRead {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("gamma reference must be a single line of decimal digits")]
    FixtureFormat,
    #[error(transparent)]
    Mp(#[from] MpError),
}

/// A rounded series sum together with a rigorous bound on the neglected tail.
#[derive(Debug, Clone)]
pub struct SeriesValue {
    pub value: Real,
    pub tail_bound: Real,
    pub terms_used: usize,
}

/// Exact remainder of the truncated asymptotic product series.
#[derive(Debug, Clone)]
pub struct RemainderRecord {
    pub x: u64,
    pub n: u64,
    pub partial_sum: Real,
    pub product_exact: Real,
    pub remainder: Real,
}

/// Shared summation loop for S0/I0-type series: term_n = h_n * q_n with
/// q_n = (y/2)^{2n}/(n!)^2 kept as an exact rational. `harmonic` switches the
/// H_n factor on (S0) or off (I0). Stops once n > y and the term has fallen
/// below 2^{-(p+32)} of the running sum; past that point the term ratio is
/// under (1+1/n)/4, so the neglected tail is below half the last term.
fn bessel_series(y: u64, p: u32, harmonic: bool, min_terms: usize) -> SeriesValue {
    let pw = p + 32;
    let y2 = rat_int((y * y) as i64);
    let mut q = Rational::one();
    let mut h = Rational::zero();
    let mut sum = Real::zero(pw);
    let mut last_term;
    let mut n: u64 = 0;
    loop {
        n += 1;
        q = &q * &y2 / rat_int((4 * n * n) as i64);
        let term_rat = if harmonic {
            h = h + Rational::new(BigInt::one(), BigInt::from(n));
            &h * &q
        } else {
            q.clone()
        };
        let term = Real::from_rational(&term_rat, pw);
        sum = Real::add(&sum, &term, pw);
        last_term = term;
        if n > y && (n as usize) >= min_terms {
            if last_term.is_zero()
                || last_term.msb_exp() + (p as i64 + 32) < sum.msb_exp()
            {
                break;
            }
        }
    }
    let terms_used = if harmonic { n as usize } else { n as usize + 1 };
    SeriesValue {
        value: sum.round_to(p),
        tail_bound: last_term.round_to(32).mul_pow2(1).abs(),
        terms_used,
    }
}

/// S0(y) = sum_{n>=1} H_n (y/2)^{2n}/(n!)^2.
pub fn s0(y: u64, p: u32) -> SeriesValue {
    assert!(y > 0, "S0 needs a positive argument");
    bessel_series(y, p, true, 0)
}

/// I0(y) = sum_{n>=0} (y/2)^{2n}/(n!)^2; the loop starts at the n=1 term, so
/// the leading 1 is added here.
pub fn i0(y: u64, p: u32) -> SeriesValue {
    assert!(y > 0, "I0 needs a positive argument");
    let mut sv = bessel_series(y, p, false, 0);
    let pw = p + 32;
    sv.value = Real::add(&Real::one(pw), &sv.value.round_to(pw), pw).round_to(p);
    sv
}

#[cfg(test)]
pub(crate) fn series_with_min_terms(y: u64, p: u32, harmonic: bool, min_terms: usize) -> SeriesValue {
    bessel_series(y, p, harmonic, min_terms)
}

const GAMMA_FIXTURE: &str = include_str!("fixtures/gamma-digits.txt");
pub const GAMMA_REF_ENV: &str = "GAMMA_REF_PATH";

fn gamma_digits() -> Result<String, BesselError> {
    match std::env::var(GAMMA_REF_ENV) {
        Ok(path) if !path.is_empty() => std::fs::read_to_string(&path)
            .map_err(|source| BesselError::FixtureRead { path, source }),
        _ => Ok(GAMMA_FIXTURE.to_string()),
    }
}

/// Euler's constant from the reference digit fixture (fractional digits of
/// gamma, one line). Errors out rather than padding when more bits are
/// requested than the fixture can certify.
pub fn gamma_ref(p: u32) -> Result<Real, BesselError> {
    let raw = gamma_digits()?;
    let digits = raw.trim();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(BesselError::FixtureFormat);
    }
    // 10^k > 2^(3.32 k); keep a one-digit safety margin
    let max_bits = ((digits.len() - 1) as f64 * std::f64::consts::LOG2_10).floor() as u32;
    if p > max_bits {
        return Err(BesselError::FixtureExhausted {
            requested: p,
            max: max_bits,
        });
    }
    let num: BigInt = digits.parse().expect("digit string");
    let den = BigInt::from(10u32).pow(digits.len() as u32);
    Ok(Real::from_rational(&Rational::new(num, den), p))
}

/// Working precision needed to absorb the e^y-scale cancellation in the K0
/// identity at argument y, for a p-bit result.
pub fn k0_working_precision(y: u64, p: u32) -> u32 {
    // S0 and (gamma + log(y/2)) I0 agree to ~2y log2(e) bits before K0 ~ e^{-y}
    // emerges; 2.9 > 2 log2(e) with margin
    p + (29 * y as u32).div_ceil(10) + 64
}

/// K0(y) = S0(y) - (gamma + log(y/2)) I0(y), the identity route. gamma_ref
/// must carry at least the full working precision.
pub fn k0_from_identity(y: u64, p: u32, gamma_ref: &Real) -> Result<Real, BesselError> {
    assert!(y > 0);
    let pw = k0_working_precision(y, p);
    if gamma_ref.prec() < pw {
        return Err(BesselError::GammaRefPrecision {
            got: gamma_ref.prec(),
            needed: pw,
        });
    }
    let s = s0(y, pw).value;
    let i = i0(y, pw).value;
    let half_arg = rat_int(y as i64) / rat_int(2);
    let log_half = ln_rational(&half_arg, pw)?;
    let factor = Real::add(&gamma_ref.round_to(pw), &log_half, pw);
    Ok(Real::sub(&s, &Real::mul(&factor, &i, pw), pw).round_to(p))
}

/// I0(y) K0(y) through the convergent-series route, the exact-product oracle.
pub fn i0k0_oracle(y: u64, p: u32) -> Result<Real, BesselError> {
    let pw = p + 8;
    let gref = gamma_ref(k0_working_precision(y, pw))?;
    let k = k0_from_identity(y, pw, &gref)?;
    let i = i0(y, pw).value;
    Ok(Real::mul(&i, &k, pw).round_to(p))
}

/// Exact rational value of the truncated asymptotic sum
/// (1/2x) sum_{k<N} ((2k)!)^3 / ((k!)^4 (8x)^{2k}).
pub fn asym_partial_sum_exact(x: u64, n_terms: u64) -> Rational {
    assert!(x > 0 && n_terms >= 1);
    let mut term = Rational::one();
    let mut sum = Rational::one();
    for k in 0..n_terms - 1 {
        // t_{k+1}/t_k = (2k+1)^3 / (8 (k+1) x^2)
        let num = rat_int(((2 * k + 1) * (2 * k + 1) * (2 * k + 1)) as i64);
        let den = rat_int((8 * (k + 1)) as i64) * rat_int((x * x) as i64);
        term = term * num / den;
        sum = sum + &term;
    }
    sum / rat_int(2 * x as i64)
}

pub fn asym_partial_sum(x: u64, n_terms: u64, p: u32) -> Real {
    Real::from_rational(&asym_partial_sum_exact(x, n_terms), p)
}

/// The k-th series term (1/2x) ((2k)!)^3/((k!)^4 (8x)^{2k}) exactly.
pub fn asym_term_exact(x: u64, k: u64) -> Rational {
    let mut term = Rational::one();
    for i in 0..k {
        let num = rat_int(((2 * i + 1) * (2 * i + 1) * (2 * i + 1)) as i64);
        let den = rat_int((8 * (i + 1)) as i64) * rat_int((x * x) as i64);
        term = term * num / den;
    }
    term / rat_int(2 * x as i64)
}

/// Minimum precision accepted by exact_remainder at argument x: the result
/// lives at the e^{-2x} scale underneath O(1) operands.
pub fn remainder_min_precision(x: u64) -> u32 {
    (58 * x as u32).div_ceil(10) + 128
}

/// I0(x)K0(x) minus the truncated sum: the Table-1 ground truth when N = x.
pub fn exact_remainder(x: u64, n_terms: u64, p: u32) -> Result<RemainderRecord, BesselError> {
    let needed = remainder_min_precision(x);
    if p < needed {
        return Err(BesselError::PrecisionPolicy {
            got: p,
            needed,
            arg: x,
        });
    }
    let product = i0k0_oracle(x, p)?;
    let partial = asym_partial_sum(x, n_terms, p);
    let remainder = Real::sub(&product, &partial, p);
    Ok(RemainderRecord {
        x,
        n: n_terms,
        partial_sum: partial,
        product_exact: product,
        remainder,
    })
}

/// Optimal truncation index of the argument-x series.
pub fn optimal_index(x: u64) -> u64 {
    x
}

/// Argmin of the term magnitude |t_k|: the first k where the term ratio
/// (2k+1)^3 / (8(k+1)x^2) reaches 1.
pub fn term_argmin(x: u64) -> u64 {
    let mut k: u64 = 0;
    loop {
        let num = (2 * k + 1) as u128;
        let ratio_num = num * num * num;
        let ratio_den = 8 * (k + 1) as u128 * (x as u128) * (x as u128);
        if ratio_num >= ratio_den {
            return k;
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::rational::{rat, rational_from_decimal};
    use num_traits::Signed;

    fn assert_digits(v: &Real, want: &str, slack_bits: i64) {
        let w = rational_from_decimal(want).unwrap();
        let err = (v.to_rational() - &w).abs();
        let scale = Real::from_rational(&w, 64).msb_exp();
        let bound_exp = scale - v.prec() as i64 + slack_bits;
        let bound = if bound_exp >= 0 {
            Rational::from_integer(BigInt::one() << bound_exp as u64)
        } else {
            Rational::new(BigInt::one(), BigInt::one() << (-bound_exp) as u64)
        };
        assert!(err < bound, "got {} want {}", v.to_sci(40), want);
    }

    #[test]
    fn s0_reference_digits() {
        let v = s0(2, 128);
        assert_digits(
            &v.value,
            "1.4297062187372083131867465655452809577372779",
            4,
        );
        let v = s0(4, 128);
        assert_digits(
            &v.value,
            "14.3687014063853059217042153331405048917342786",
            4,
        );
    }

    #[test]
    fn i0_reference_digits() {
        let v = i0(2, 128);
        assert_digits(
            &v.value,
            "2.2795853023360672674372044408115333532858411",
            4,
        );
        let v = i0(4, 128);
        assert_digits(
            &v.value,
            "11.3019219521363304963562701832171024974126166",
            4,
        );
    }

    #[test]
    fn i0_large_argument_matches_leading_asymptotics() {
        // I0(100) e^{-100} sqrt(200 pi) = 1 + O(1/x)
        let p = 256;
        let v = i0(100, p).value;
        let two_pi_x = Real::mul_u64(&crate::mp::pi(p).mul_pow2(1), 100, p);
        let scale = Real::mul(&crate::mp::exp_int(-100, p), &Real::sqrt(&two_pi_x, p), p);
        let ratio = Real::mul(&v, &scale, p);
        let dev = Real::sub(&ratio, &Real::one(p), p).abs();
        assert!(dev.to_rational() < rat(1, 100));
    }

    #[test]
    fn k0_reference_digits() {
        let pw = k0_working_precision(2, 96);
        let gref = gamma_ref(pw).unwrap();
        let v = k0_from_identity(2, 96, &gref).unwrap();
        assert_digits(&v, "0.113893872749533435652719574932481832998326624", 4);
        assert!(v.signum() > 0);
    }

    #[test]
    fn k0_large_argument_asymptotics() {
        // e^x K0(x) sqrt(x) -> sqrt(pi/2) within 1% at x = 100
        let p = 96;
        let pw = k0_working_precision(100, p);
        let gref = gamma_ref(pw).unwrap();
        let v = k0_from_identity(100, p, &gref).unwrap();
        let lhs = Real::mul(
            &Real::mul(&v, &crate::mp::exp_int(100, p), p),
            &Real::sqrt(&Real::from_u64(100, p), p),
            p,
        );
        let want = Real::sqrt(&Real::div(&crate::mp::pi(p), &Real::from_u64(2, p), p), p);
        let dev = Real::div(&Real::sub(&lhs, &want, p), &want, p).abs();
        assert!(dev.to_rational() < rat(1, 100));
    }

    #[test]
    fn k0_rejects_short_gamma_ref() {
        let gref = gamma_ref(80).unwrap();
        assert!(matches!(
            k0_from_identity(2, 96, &gref),
            Err(BesselError::GammaRefPrecision { .. })
        ));
    }

    #[test]
    fn i0k0_reference_digits() {
        let v = i0k0_oracle(2, 128).unwrap();
        assert_digits(
            &v,
            "0.259630798345970749864278703536022760016927887",
            5,
        );
    }

    #[test]
    fn i0k0_leading_asymptotics() {
        // 4x I0(2x) K0(2x) -> 1, within 1% at x = 50
        let p = 700;
        let v = i0k0_oracle(100, p).unwrap();
        let dev = Real::sub(&Real::mul_u64(&v, 200, p), &Real::one(p), p).abs();
        assert!(dev.to_rational() < rat(1, 100));
    }

    #[test]
    fn i0k0_doubling_precision() {
        for p in [256u32, 400] {
            let lo = i0k0_oracle(50, p).unwrap();
            let hi = i0k0_oracle(50, 2 * p).unwrap();
            let diff = Real::sub(&lo, &hi, 2 * p).abs();
            assert!(
                diff.is_zero() || diff.msb_exp() < -(p as i64) + 8,
                "p={p}: diff msb {}",
                diff.msb_exp()
            );
        }
    }

    #[test]
    fn asym_small_closed_forms() {
        assert_eq!(asym_partial_sum_exact(7, 1), rat(1, 14));
        assert_eq!(asym_partial_sum_exact(1, 2), rat(9, 16));
        assert_eq!(asym_term_exact(1, 1), rat(1, 16));
    }

    #[test]
    fn tail_bounds_hold_against_forced_extra_terms() {
        for harmonic in [false, true] {
            let base = series_with_min_terms(6, 128, harmonic, 0);
            let long = series_with_min_terms(6, 128, harmonic, base.terms_used * 4);
            let diff = Real::sub(&long.value, &base.value, 160).abs();
            assert!(
                diff.cmp_value(&base.tail_bound) <= std::cmp::Ordering::Equal,
                "tail bound violated (harmonic={harmonic})"
            );
        }
    }

    #[test]
    fn remainder_below_first_omitted_term_and_e2x_scaled() {
        for x in [25u64, 50] {
            let p = remainder_min_precision(x);
            let rec = exact_remainder(x, x, p).unwrap();
            let omitted = Real::from_rational(&asym_term_exact(x, x), 64);
            assert!(rec.remainder.abs().cmp_value(&omitted) == std::cmp::Ordering::Less);
            // |R| tracks e^{-2x}: msb within a fixed window of -2x log2 e
            let msb = rec.remainder.msb_exp();
            let expected = -((2885 * x as i64) / 1000);
            assert!(
                (msb - expected) >= -25 && (msb - expected) <= 0,
                "x={x} msb={msb} expected near {expected}"
            );
        }
    }

    #[test]
    fn remainder_requires_policy_precision() {
        assert!(matches!(
            exact_remainder(50, 50, 128),
            Err(BesselError::PrecisionPolicy { .. })
        ));
    }

    #[test]
    fn argmin_lands_at_argument() {
        for x in [10u64, 25, 50, 100] {
            let k = term_argmin(x);
            assert!(
                k >= x - 1 && k <= x + 1,
                "argmin {k} far from x={x}"
            );
            assert_eq!(optimal_index(x), x);
        }
    }

    #[test]
    fn gamma_ref_fixture_limits() {
        let g = gamma_ref(1000).unwrap();
        assert_eq!(g.prec(), 1000);
        // leading digits, compared at the resolution the reference string has
        assert_digits(
            &g.round_to(128),
            "0.57721566490153286060651209008240243104215933593992",
            4,
        );
        assert!(matches!(
            gamma_ref(10000),
            Err(BesselError::FixtureExhausted { .. })
        ));
    }
}
