//! Evaluators for the asymptotic error expansions, the Demailly-style bound
//! on the discrete-vs-smooth truncation gap, and an incomplete-gamma
//! terminant oracle used to validate the A_k expansion numerically.
//!
//! Everything here is diagnostic: the gamma computation itself only consumes
//! the certified 24 e^{-8x} remainder bound.


use crate::bessel::{self, BesselError};
use crate::coeffs::{a_coeff, b_coeffs, CoeffError};
use crate::mp::rational::{factorial, rat, rat_int, sci_decimal, Rational};
use crate::mp::{exp_int, ln_u64, pi, sqrt_2pi, sqrt_pi, MpError, Real};

#[derive(Debug, thiserror::Error)]
pub enum ErrorModelError {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Bessel(#[from] BesselError),
    #[error(transparent)]
    Mp(#[from] MpError),
    #[error("precision {got} below the policy minimum {needed} for {what}")]
    Precision {
        got: u32,
        needed: u32,
        what: &'static str,
    },
}

/// x^{3/2} as a Real.
fn x_pow_3_2(x: u64, p: u32) -> Real {
    let xr = Real::from_u64(x, p);
    Real::mul(&xr, &Real::sqrt(&xr, p), p)
}

/// Horner evaluation of sum_{j<M} coeffs[j] t^{-j} at integer t, exact.
fn bracket_at(coeffs: &[Rational], t: u64) -> Rational {
    let inv = rat(1, t as i64);
    let mut acc = Rational::from_integer(0.into());
    for c in coeffs.iter().rev() {
        acc = acc * &inv + c;
    }
    acc
}

/// Asymptotic prediction for the optimally truncated remainder R_N(x), N = x:
/// e^{-2x}/(4 sqrt(pi) x^{3/2}) * sum_{j<M} B_j (2x)^{-j}.
pub fn r_expansion_eval(x: u64, m: usize, p: u32) -> Result<Real, ErrorModelError> {
    assert!(x > 0);
    let b = b_coeffs(m)?;
    let pw = p + 32;
    let bracket = Real::from_rational(&bracket_at(&b, 2 * x), pw);
    let denom = Real::mul_u64(&Real::mul(&sqrt_pi(pw), &x_pow_3_2(x, pw), pw), 4, pw);
    let pre = Real::div(&exp_int(-2 * (x as i64), pw), &denom, pw);
    Ok(Real::mul(&pre, &bracket, pw).round_to(p))
}

/// Same expansion for R_{2N}(2x), the remainder the gamma pipeline actually
/// discards when it truncates the argument-2x series at N = x... 2N = 2x.
pub fn r2n_eval(x: u64, m: usize, p: u32) -> Result<Real, ErrorModelError> {
    r_expansion_eval(2 * x, m, p)
}

/// Error of the K0/I0 ratio step: 7 sqrt(2 pi) e^{-8x}/(12 sqrt(x)) times the
/// ratio bracket in powers of 1/x.
pub fn ratio_error_eval(x: u64, m: usize, p: u32) -> Result<Real, ErrorModelError> {
    assert!(x > 0);
    let coeffs = crate::coeffs::expansions::ratio_error_coeffs(m)?;
    let pw = p + 32;
    let bracket = Real::from_rational(&bracket_at(&coeffs.terms, x), pw);
    let num = Real::mul_u64(
        &Real::mul(&sqrt_2pi(pw), &exp_int(-8 * (x as i64), pw), pw),
        7,
        pw,
    );
    let den = Real::mul_u64(&Real::sqrt(&Real::from_u64(x, pw), pw), 12, pw);
    Ok(Real::mul(&Real::div(&num, &den, pw), &bracket, pw).round_to(p))
}

/// Certified envelope 24 e^{-8x} for the total asymptotic-step error.
pub fn bj_bound(x: u64, p: u32) -> Real {
    Real::mul_u64(&exp_int(-8 * (x as i64), p), 24, p)
}

/// Exact gap Delta(x) = R_{2N}(2x) - central term: the optimally truncated
/// remainder of the argument-2x series minus its smallest (k = 2x) term.
pub fn delta_exact(x: u64, p: u32) -> Result<Real, ErrorModelError> {
    let rec = bessel::exact_remainder(2 * x, 2 * x, p)?;
    let central = bessel::asym_term_exact(2 * x, 2 * x);
    Ok(Real::sub(
        &rec.remainder,
        &Real::from_rational(&central, p),
        p,
    ))
}

/// eps(x) = -Delta(x) e^{4x} - 5 x^{-3/2} / (24 sqrt(2 pi)); the bound under
/// test is |eps(x)| < 0.863 / x^2.
pub fn demailly_epsilon(x: u64, p: u32) -> Result<Real, ErrorModelError> {
    let delta = delta_exact(x, p)?;
    let lead = Real::mul(&delta, &exp_int(4 * x as i64, p), p).neg();
    let den = Real::mul_u64(&Real::mul(&sqrt_2pi(p), &x_pow_3_2(x, p), p), 24, p);
    let tail = Real::div(&Real::from_u64(5, p), &den, p);
    Ok(Real::sub(&lead, &tail, p))
}

#[derive(Debug, Clone)]
pub struct DemaillyRow {
    pub x: u64,
    pub delta: Real,
    pub epsilon: Real,
    pub bound: Rational,
    pub pass: bool,
}

/// One row of the bound table at its policy precision.
pub fn demailly_check(x: u64) -> Result<DemaillyRow, ErrorModelError> {
    let p = bessel::remainder_min_precision(2 * x) + 64;
    let delta = delta_exact(x, p)?;
    let epsilon = demailly_epsilon(x, p)?;
    let bound = rat(863, 1000) / rat_int((x * x) as i64);
    let pass = epsilon.abs().to_rational() < bound;
    Ok(DemaillyRow {
        x,
        delta,
        epsilon,
        bound,
        pass,
    })
}

/// Working precision for E1's alternating series: the partial sums peak near
/// e^z before collapsing to e^{-z} scale, so ~2 z log2(e) bits cancel.
fn e1_working_precision(z: u64, p: u32) -> u32 {
    p + (29 * z as u32).div_ceil(10) + 64
}

/// E1(z) = -gamma - log z + sum_{k>=1} (-1)^{k+1} z^k / (k k!), all terms
/// exact rationals, accumulated at full working precision.
fn e1_at(z: u64, pw: u32, gref: &Real) -> Result<Real, ErrorModelError> {
    assert!(z > 0);
    let mut u = Rational::from_integer(1.into()); // z^k / k!
    let mut sum = Real::zero(pw);
    let mut k: u64 = 0;
    loop {
        k += 1;
        u = u * rat_int(z as i64) / rat_int(k as i64);
        let term_rat = &u / rat_int(k as i64);
        let term = Real::from_rational(&term_rat, pw);
        sum = if k % 2 == 1 {
            Real::add(&sum, &term, pw)
        } else {
            Real::sub(&sum, &term, pw)
        };
        if k > z && (term.is_zero() || term.msb_exp() < -(pw as i64 + 8)) {
            break;
        }
    }
    let lnz = ln_u64(z, pw)?;
    let head = Real::add(&gref.round_to(pw), &lnz, pw);
    Ok(Real::sub(&sum, &head, pw))
}

/// E1 at integer argument, p-bit relative target.
pub fn e1(z: u64, p: u32) -> Result<Real, ErrorModelError> {
    let pw = e1_working_precision(z, p);
    let gref = bessel::gamma_ref(pw)?;
    Ok(e1_at(z, pw, &gref)?.round_to(p))
}

/// Minimum accepted output precision for the terminant oracle at argument z.
pub fn terminant_min_precision(z: u64) -> u32 {
    (15 * z as u32).div_ceil(10) + 64
}

/// T_nu(z) = Gamma(nu) Gamma(1-nu, z) / (2 pi) for integer nu >= 1, via the
/// downward recurrence g_m = (z^{-m} e^{-z} - g_{m-1}) / m from g_0 = E1(z).
/// Each step divides by a near-cancellation, amplifying relative error by
/// roughly z/m, about nu log2(e) bits over the whole sweep; 1.5 nu covers it.
pub fn terminant_oracle(nu: u64, z: u64, p: u32) -> Result<Real, ErrorModelError> {
    assert!(nu >= 1 && z > 0);
    let needed = terminant_min_precision(z);
    if p < needed {
        return Err(ErrorModelError::Precision {
            got: p,
            needed,
            what: "terminant oracle",
        });
    }
    let pw = e1_working_precision(z, p) + (15 * nu as u32).div_ceil(10);
    let gref = bessel::gamma_ref(pw)?;
    let mut g = e1_at(z, pw, &gref)?;
    let mut w = exp_int(-(z as i64), pw);
    for m in 1..nu {
        w = Real::div_u64(&w, z, pw);
        g = Real::div_u64(&Real::sub(&w, &g, pw), m, pw);
    }
    let gamma_nu = Real::from_rational(&Rational::from_integer(factorial(nu - 1)), pw);
    let two_pi = pi(pw).mul_pow2(1);
    Ok(Real::div(&Real::mul(&gamma_nu, &g, pw), &two_pi, pw).round_to(p))
}

/// Truncated asymptotic prediction for the terminant at gamma = -j:
/// e^{-2 mu} / (2 sqrt(2 pi mu)) * sum_{k<K} A_k(-j) mu^{-k}.
pub fn terminant_expansion_eval(
    mu: u64,
    j: usize,
    k_terms: usize,
    p: u32,
) -> Result<Real, ErrorModelError> {
    assert!(mu > 0 && k_terms >= 1);
    let mut bracket = Rational::from_integer(0.into());
    let inv = rat(1, mu as i64);
    for k in (0..k_terms).rev() {
        bracket = bracket * &inv + a_coeff(k, j)?;
    }
    let pw = p + 32;
    let den = Real::sqrt(&Real::mul_u64(&pi(pw).mul_pow2(1), mu, pw), pw).mul_pow2(1);
    let pre = Real::div(&exp_int(-2 * (mu as i64), pw), &den, pw);
    Ok(Real::mul(&pre, &Real::from_rational(&bracket, pw), pw).round_to(p))
}

#[derive(Debug, Clone)]
pub struct RemainderReport {
    pub x: u64,
    pub m: usize,
    pub exact: Real,
    pub predicted: Real,
    pub rel_deviation: Real,
}

/// Exact remainder vs the M-term expansion at argument x, N = x.
pub fn remainder_report(x: u64, m: usize) -> Result<RemainderReport, ErrorModelError> {
    let p = bessel::remainder_min_precision(x);
    let rec = bessel::exact_remainder(x, x, p)?;
    let predicted = r_expansion_eval(x, m, p)?;
    let rel = Real::div(
        &Real::sub(&predicted, &rec.remainder, p),
        &rec.remainder,
        p,
    )
    .abs();
    Ok(RemainderReport {
        x,
        m,
        exact: rec.remainder,
        predicted,
        rel_deviation: rel.round_to(64),
    })
}

/// Relative deviations of the M = 1..=m_max expansions from the exact
/// remainder at argument x, formatted to 4 significant figures.
pub fn table1_column(x: u64, m_max: usize) -> Result<Vec<String>, ErrorModelError> {
    let p = bessel::remainder_min_precision(x);
    let rec = bessel::exact_remainder(x, x, p)?;
    let mut out = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let e = r_expansion_eval(x, m, p)?;
        let dev = Real::div(&Real::sub(&e, &rec.remainder, p), &rec.remainder, p).abs();
        out.push(sci_decimal(&dev.to_rational(), 4));
    }
    Ok(out)
}
