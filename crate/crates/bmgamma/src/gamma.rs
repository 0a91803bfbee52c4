//! The gamma computation itself: parameter selection, the Brent-McMillan
//! evaluation at argument 2x, and a certified absolute error bound assembled
//! from exact-rational envelopes of every contribution.
//!
//! This pipeline never touches the reference digit fixture; that one exists
//! only for tests and the K0 identity oracle.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::bessel::{asym_partial_sum_exact, i0, s0, SeriesValue};
use crate::mp::rational::{fixed_decimal, rat_int, Rational};
use crate::mp::{exp_int, ln_u64, MpError, Real};

#[derive(Debug, thiserror::Error)]
pub enum GammaError {
    #[error("certified error {cert} cannot support {digits} digits at x = {x}")]
    Certification {
        digits: usize,
        x: u64,
        cert: String,
    },
    #[error(transparent)]
    Mp(#[from] MpError),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Extra mantissa bits beyond the digit target; floor 32.
    pub guard_bits: u32,
    /// Force the series argument instead of selecting from the digit count.
    pub override_x: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            guard_bits: 96,
            override_x: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GammaResult {
    pub digits: usize,
    pub x: u64,
    pub precision_bits: u32,
    /// "0." followed by exactly `digits` certified digits.
    pub value: String,
    /// Rigorous upper bound on |value_real - gamma|.
    pub certified_abs_error: Rational,
    pub wall_ms: u64,
}

fn pow2_rat(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(BigInt::from(1) << e as u64)
    } else {
        Rational::new(BigInt::from(1), BigInt::from(1) << (-e) as u64)
    }
}

/// Upper bound on 24 e^{-8x}, the certified envelope for the truncation
/// error of the asymptotic product series before division by I0^2.
fn trunc_bound_upper(x: u64) -> Rational {
    let b = exp_int(-8 * (x as i64), 96).to_rational() * rat_int(24);
    b * (pow2_rat(0) + pow2_rat(-88))
}

/// Smallest x whose certified envelope fits d digits with a factor-4 margin,
/// together with the working precision in bits.
pub fn select_parameters(d: usize, guard_bits: u32) -> (u64, u32) {
    assert!(d >= 1);
    let target = Rational::new(BigInt::from(1), BigInt::from(10u32).pow(d as u32) * 4);
    // 24 e^{-8x} < 10^{-d}/4  <=>  x > (d ln 10 + ln 96) / 8; start two below
    // the float estimate and walk up so the result is the exact threshold
    let est = ((d as f64 * std::f64::consts::LN_10 + 96f64.ln()) / 8.0).floor() as i64;
    let mut x = est.max(1).saturating_sub(2).max(1) as u64;
    while trunc_bound_upper(x) >= target {
        x += 1;
    }
    let guard = guard_bits.max(32);
    // headroom for the length of every summation loop at this size
    let term_count = 8 * x + 4 * d as u64 + 64;
    let prec = (d as f64 * std::f64::consts::LOG2_10).ceil() as u32
        + (64 - term_count.leading_zeros() as i32).max(1) as u32
        + guard;
    (x, prec)
}

/// Relative-error envelope for a summed series value: reported tail bound
/// plus accumulated per-term rounding at working precision pw.
fn series_rel_bound(v: &SeriesValue, pw: u32) -> Rational {
    let val = v.value.to_rational();
    let tail = v.tail_bound.to_rational();
    tail / val + pow2_rat(-(pw as i64) + 12)
}

fn eval_at(x: u64, pw: u32) -> Result<(Real, Rational), GammaError> {
    let y = 2 * x;
    let s = s0(y, pw);
    let i = i0(y, pw);
    let lnx = ln_u64(x, pw)?;
    let p_exact = asym_partial_sum_exact(y, y);
    let p_real = Real::from_rational(&p_exact, pw);
    let i_sq = Real::mul(&i.value, &i.value, pw);
    let s_over_i = Real::div(&s.value, &i.value, pw);
    let ratio = Real::div(&p_real, &i_sq, pw);
    let g = Real::sub(&Real::sub(&s_over_i, &lnx, pw), &ratio, pw);

    // rigorous error assembly, all exact rationals
    let rel_s = series_rel_bound(&s, pw);
    let rel_i = series_rel_bound(&i, pw);
    let i_q = i.value.to_rational();
    let i_lo = &i_q * (pow2_rat(0) - &rel_i);
    // truncation of the asymptotic series, shrunk by the I0^2 division
    let e_trunc = trunc_bound_upper(x) / (&i_lo * &i_lo);
    // S0/I0: quotient magnifies nothing, value ~ gamma + ln x
    let q_sq = s.value.to_rational() / &i_q;
    let e_quot = q_sq * (&rel_s + &rel_i + pow2_rat(-(pw as i64) + 4));
    let e_ln = lnx.to_rational().abs() * pow2_rat(-(pw as i64) + 4);
    let e_ratio = (p_exact / (&i_lo * &i_lo))
        * (rel_i * rat_int(2) + pow2_rat(-(pw as i64) + 8));
    let cert = e_trunc + e_quot + e_ln + e_ratio + pow2_rat(-(pw as i64) + 4);
    Ok((g, cert))
}

/// Compute gamma to `digits` certified decimal digits.
pub fn compute_gamma(digits: usize, cfg: &RunConfig) -> Result<GammaResult, GammaError> {
    assert!(digits >= 1);
    let start = std::time::Instant::now();
    let (x_sel, prec) = select_parameters(digits, cfg.guard_bits);
    let mut x = cfg.override_x.unwrap_or(x_sel);
    assert!(x >= 1, "series argument must be positive");
    let mut pw = prec;
    let target = Rational::new(BigInt::from(1), BigInt::from(10u32).pow(digits as u32));

    let mut last_cert = Rational::from_integer(1.into());
    for attempt in 0..2 {
        let (g, cert) = eval_at(x, pw)?;
        if cert >= target {
            return Err(GammaError::Certification {
                digits,
                x,
                cert: crate::mp::rational::sci_decimal(&cert, 3),
            });
        }
        // the printed digits are certified only if the whole uncertainty
        // interval rounds to the same string
        let gq = g.to_rational();
        let lo = fixed_decimal(&(&gq - &cert), digits);
        let hi = fixed_decimal(&(&gq + &cert), digits);
        if lo == hi {
            return Ok(GammaResult {
                digits,
                x,
                precision_bits: pw,
                value: lo,
                certified_abs_error: cert,
                wall_ms: start.elapsed().as_millis() as u64,
            });
        }
        // rounding-boundary straddle: sharpen once and retry
        last_cert = cert;
        if attempt == 0 {
            x += 2;
            pw += 32;
        }
    }
    Err(GammaError::Certification {
        digits,
        x,
        cert: crate::mp::rational::sci_decimal(&last_cert, 3),
    })
}
