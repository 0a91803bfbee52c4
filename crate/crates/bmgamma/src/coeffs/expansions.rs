//! Bracketed 1/x expansion coefficient lists derived from the primary
//! families: the optimally truncated remainder at argument x and 2x, the
//! squared-I0 expansion, their quotient (the K0/I0 ratio error), the central
//! factorial term, and the reconciliation expansion Delta(x). Terms are
//! exact; each list is normalized so term 0 is 1 and the scale lives in a
//! printable prefactor tag.

use super::{b_coeffs, c_coeffs, stirling_series, CoeffError};
use crate::mp::rational::{rat, rat_int, Rational};
use crate::mp::series::PowerSeries;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionCoeffs {
    /// Human-readable scale in front of the bracket, e.g. the leading
    /// exponential and power of x. Fixed per family, never parsed.
    pub prefactor: &'static str,
    /// Coefficients of x^{-j} (term 0 first) inside the bracket.
    pub terms: Vec<Rational>,
}

fn cap(family: &'static str, requested: usize, max: usize) -> Result<(), CoeffError> {
    if requested > max || requested == 0 {
        return Err(CoeffError::UnsupportedOrder {
            family,
            requested,
            max,
        });
    }
    Ok(())
}

/// Remainder bracket at argument x: terms B_j/(B_0 2^j), scale
/// 7e^{-2x}/(12 sqrt(pi) x^{3/2}).
pub fn e35_coeffs(terms: usize) -> Result<ExpansionCoeffs, CoeffError> {
    cap("remainder bracket", terms, super::MAX_ORDER)?;
    let b = b_coeffs(terms)?;
    let b0 = b[0].clone();
    Ok(ExpansionCoeffs {
        prefactor: "7 e^{-2x} / (12 sqrt(pi) x^{3/2})",
        terms: b
            .into_iter()
            .enumerate()
            .map(|(j, bj)| bj / (&b0 * rat_int(1i64 << j)))
            .collect(),
    })
}

/// Remainder bracket at argument 2x: terms B_j/(B_0 4^j), scale
/// 7e^{-4x}/(24 sqrt(2 pi) x^{3/2}).
pub fn r2n_coeffs(terms: usize) -> Result<ExpansionCoeffs, CoeffError> {
    cap("doubled-argument remainder bracket", terms, super::MAX_ORDER)?;
    let b = b_coeffs(terms)?;
    let b0 = b[0].clone();
    Ok(ExpansionCoeffs {
        prefactor: "7 e^{-4x} / (24 sqrt(2 pi) x^{3/2})",
        terms: b
            .into_iter()
            .enumerate()
            .map(|(j, bj)| bj / (&b0 * rat_int(1i64 << (2 * j))))
            .collect(),
    })
}

/// (I0(2x))^2 bracket: terms c_k/4^k, scale e^{4x}/(4 pi x).
pub fn i0sq_coeffs(terms: usize) -> Result<ExpansionCoeffs, CoeffError> {
    cap("squared-I0 bracket", terms, super::MAX_ORDER)?;
    Ok(ExpansionCoeffs {
        prefactor: "e^{4x} / (4 pi x)",
        terms: c_coeffs(terms)
            .into_iter()
            .enumerate()
            .map(|(k, ck)| ck / rat_int(1i64 << (2 * k)))
            .collect(),
    })
}

/// K0/I0 ratio error bracket: series quotient of the doubled-argument
/// remainder bracket by the squared-I0 bracket, scale
/// 7 sqrt(2 pi) e^{-8x}/(12 x^{1/2}).
pub fn ratio_error_coeffs(terms: usize) -> Result<ExpansionCoeffs, CoeffError> {
    cap("ratio error bracket", terms, super::MAX_ORDER)?;
    let num = PowerSeries::new(r2n_coeffs(terms)?.terms);
    let den = PowerSeries::new(i0sq_coeffs(terms)?.terms);
    Ok(ExpansionCoeffs {
        prefactor: "7 sqrt(2 pi) e^{-8x} / (12 x^{1/2})",
        terms: num.div(&den).into_coeffs(),
    })
}

const CENTRAL_MAX: usize = 4;

/// Central-term bracket of (1/2s)((2s)!)^3/((s!)^4 (8s)^{2s}): the product of
/// the Stirling bracket at 2s with the a2 series, scale
/// e^{-2s}/(sqrt(pi) s^{3/2}).
pub fn central_term_coeffs(terms: usize) -> Result<ExpansionCoeffs, CoeffError> {
    cap("central-term bracket", terms, CENTRAL_MAX)?;
    let stirling_2s = stirling_series(terms).scale_var(&rat(1, 2));
    let a2 = super::a2_series(terms);
    Ok(ExpansionCoeffs {
        prefactor: "e^{-2s} / (sqrt(pi) s^{3/2})",
        terms: stirling_2s.mul(&a2).into_coeffs(),
    })
}

/// Delta(x) bracket: the doubled-argument remainder minus the central term
/// at s = 2x, renormalized to a unit leading term; the subtraction turns the
/// leading 7 into -5, scale -5e^{-4x}/(24 sqrt(2 pi) x^{3/2}).
pub fn delta_coeffs(terms: usize) -> Result<ExpansionCoeffs, CoeffError> {
    cap("Delta bracket", terms, CENTRAL_MAX)?;
    let r2n = r2n_coeffs(terms)?.terms;
    let central = central_term_coeffs(terms)?.terms;
    let raw: Vec<Rational> = r2n
        .iter()
        .zip(central.iter())
        .enumerate()
        .map(|(j, (r, c))| r * rat_int(7) - c * rat(12, 1i64 << j))
        .collect();
    let lead = raw[0].clone();
    debug_assert_eq!(lead, rat_int(-5));
    Ok(ExpansionCoeffs {
        prefactor: "-5 e^{-4x} / (24 sqrt(2 pi) x^{3/2})",
        terms: raw.into_iter().map(|t| t / &lead).collect(),
    })
}
