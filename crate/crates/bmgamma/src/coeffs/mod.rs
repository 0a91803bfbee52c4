//! Exact generation of every coefficient family entering the optimal
//! truncation error of the I0*K0 asymptotic series: the inverse-factorial
//! coefficients c_j, the terminant coefficients A_{k,j}, the saddle
//! coefficients G_{2k,j}, their combination D_{k,j}, and the remainder
//! coefficients B_j. Everything downstream of the printed A polynomials is
//! regenerated from scratch in rational arithmetic; nothing is evaluated in
//! floating point here.

pub mod expansions;
pub mod families;

use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::mp::rational::{pochhammer_half, rat, rat_int, Rational};
use crate::mp::series::{LaurentSeries, PowerSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("{family}: order {requested} unsupported, data stops at {max}")]
    UnsupportedOrder {
        family: &'static str,
        requested: usize,
        max: usize,
    },
}

/// Printed polynomials for A_{k,j} in the variable g = gamma_j, stored as
/// (denominator-of-prefactor pairs, ascending integer coefficients). These
/// come from the saddle-point analysis of the terminant integral; uniform
/// asymptotics beyond k = 4 is out of scope, so the list is a hard cap.
const A_POLY: [(i64, i64, &[i64]); 5] = [
    (1, 1, &[1]),
    (1, 6, &[2, -6, 3]),
    (1, 288, &[-11, -120, 300, -192, 36]),
    (2, 51840, &[-587, 3510, 9765, -26280, 18900, -5400, 540]),
    (
        1,
        2448320,
        &[
            120341, -44592, -521736, -722880, 2336040, -1826496, 635040, -103680, 6480,
        ],
    ),
];

pub const MAX_ORDER: usize = 5;

fn eval_poly_at_int(coeffs: &[i64], g: i64) -> Rational {
    let mut acc = Rational::from_integer(0.into());
    for &c in coeffs.iter().rev() {
        acc = acc * rat_int(g) + rat_int(c);
    }
    acc
}

/// A_{k,j} for k <= 4, evaluated at gamma_j = -j.
pub fn a_coeff(k: usize, j: usize) -> Result<Rational, CoeffError> {
    let (num, den, poly) = *A_POLY.get(k).ok_or(CoeffError::UnsupportedOrder {
        family: "A",
        requested: k,
        max: A_POLY.len() - 1,
    })?;
    Ok(rat(num, den) * eval_poly_at_int(poly, -(j as i64)))
}

/// Log of s^{-1/2} Gamma(s+1/2)/Gamma(s) as a series in t = 1/s, from the
/// Bernoulli-polynomial form of the log-gamma asymptotics.
fn gamma_ratio_log_series(terms: usize) -> PowerSeries {
    let mut coeffs = vec![Rational::zero(); terms];
    for n in 2..=terms {
        // (-1)^n (B_n(1/2) - B_n) / (n(n-1)), coefficient of t^{n-1}
        let bn = crate::mp::rational::bernoulli(n as u32);
        let bn_half = crate::mp::rational::bernoulli_poly(n as u32, &rat(1, 2));
        let mut c = (bn_half - bn) / rat_int((n * (n - 1)) as i64);
        if n % 2 == 1 {
            c = -c;
        }
        coeffs[n - 1] = c;
    }
    PowerSeries::new(coeffs)
}

/// Coefficients of s^{-k} in s^{-1/2} Gamma(s+1/2)/Gamma(s), `terms` of them.
pub fn gamma_ratio_series(terms: usize) -> PowerSeries {
    assert!(terms >= 1);
    gamma_ratio_log_series(terms).exp()
}

/// Coefficients of (1/s)(Gamma(s+1/2)/Gamma(s))^2: square of the ratio series.
pub fn a2_series(terms: usize) -> PowerSeries {
    let r = gamma_ratio_series(terms);
    r.mul(&r)
}

/// Braced Stirling series of Gamma(z): 1 + 1/(12z) + 1/(288z^2) - ..., via
/// exponentiating the Bernoulli log-gamma tail.
pub fn stirling_series(terms: usize) -> PowerSeries {
    assert!(terms >= 1);
    let mut coeffs = vec![Rational::zero(); terms];
    for n in 2..=terms {
        coeffs[n - 1] = crate::mp::rational::bernoulli(n as u32) / rat_int((n * (n - 1)) as i64);
    }
    PowerSeries::new(coeffs).exp()
}

/// 1/(1-2s)_j as a series in t = 1/s: (-1)^j (t/2)^j prod_{m=1..j} (1 - mt/2)^{-1}.
fn inverse_pochhammer_series(j: usize, terms: usize) -> PowerSeries {
    let order = terms - 1;
    let mut prod = PowerSeries::one(order);
    for m in 1..=j {
        let mut c = vec![Rational::zero(); order + 1];
        c[0] = Rational::one();
        if order >= 1 {
            c[1] = rat(-(m as i64), 2);
        }
        prod = prod.mul(&PowerSeries::new(c).inv());
    }
    // shift up by t^j and scale by (-1/2)^j
    let scale = rat(-1, 2).pow(j as i32);
    let mut out = vec![Rational::zero(); order + 1];
    for k in j..=order {
        out[k] = &scale * prod.coeff(k - j);
    }
    PowerSeries::new(out)
}

/// c_0..c_{terms-1} of the inverse factorial expansion, by triangular
/// matching of the a2 series against sum c_j/(1-2s)_j in powers of 1/s.
pub fn c_coeffs(terms: usize) -> Vec<Rational> {
    assert!(terms >= 1);
    let a2 = a2_series(terms);
    let u: Vec<PowerSeries> = (0..terms).map(|j| inverse_pochhammer_series(j, terms)).collect();
    let mut c = Vec::with_capacity(terms);
    for k in 0..terms {
        let mut rhs = a2.coeff(k).clone();
        for (j, cj) in c.iter().enumerate().take(k) {
            rhs = rhs - cj * u[j].coeff(k);
        }
        // u_k has leading coefficient (-1/2)^k at t^k
        c.push(rhs / rat(-1, 2).pow(k as i32));
    }
    c
}

/// tau(w) - 1 where w^2/2 = tau - log tau - 1 on the branch w ~ tau - 1,
/// as a series in w of the given order. The reversal is the one expensive
/// step of the whole engine and is independent of j, so it is memoized.
fn tau_minus_one(order: usize) -> PowerSeries {
    use std::collections::HashMap;
    use std::sync::Mutex;
    static CACHE: Mutex<Option<HashMap<usize, PowerSeries>>> = Mutex::new(None);
    let mut guard = CACHE.lock().unwrap();
    let map = guard.get_or_insert_with(HashMap::new);
    if let Some(s) = map.get(&order) {
        return s.clone();
    }
    // phi(v) = v - log(1+v) built in v = tau - 1 two orders higher, since
    // forming w(v) = v sqrt(2 phi / v^2) spends them
    let n = order + 2;
    let v = PowerSeries::identity(n);
    let phi2 = v.sub(&v.add(&PowerSeries::one(n)).log()).scale(&rat(2, 1));
    let inner = phi2.shift_down().shift_down();
    let mut w_coeffs = vec![Rational::zero()];
    w_coeffs.extend(inner.sqrt().into_coeffs());
    let s = PowerSeries::new(w_coeffs).truncate(order).reverse();
    map.insert(order, s.clone());
    s
}

/// G_{k,j} for k = 0..=kmax at gamma_j = -j, from the Laurent expansion of
/// tau^{-j-1}/(1-tau) dtau/dw about w = 0, whose pole carries residue -1.
pub fn g_coeffs(kmax: usize, j: usize) -> Vec<Rational> {
    let work = 2 * kmax + 4;
    let tau_m1 = tau_minus_one(work);
    let tau = tau_m1.add(&PowerSeries::one(work));
    let dtau = tau.derive(); // order work-1
    let tau_pow = tau.inv().pow(j as u32 + 1).truncate(work - 1);
    let num = tau_pow.mul(&dtau);
    let den = tau_m1.neg().truncate(work - 1);
    let f = LaurentSeries::from_pole_quotient(&num, &den);
    assert!(
        f.principal == rat(-1, 1),
        "G expansion must have residue -1 at the saddle"
    );
    f.regular.into_coeffs().into_iter().take(kmax + 1).collect()
}

/// D_{k,j} = A_{k,j} + 2^{k+1} (1/2)_k G_{2k,j}.
pub fn d_coeff(k: usize, j: usize) -> Result<Rational, CoeffError> {
    let a = a_coeff(k, j)?;
    let g2k = g_coeffs(2 * k, j).pop().expect("g_coeffs returns 2k+1 entries");
    let two_pow = rat_int(1i64 << (k + 1));
    Ok(a + two_pow * pochhammer_half(k as u32) * g2k)
}

/// B_0..B_{terms-1} with B_j = sum_{k<=j} (-1)^k c_k D_{j-k,k}.
pub fn b_coeffs(terms: usize) -> Result<Vec<Rational>, CoeffError> {
    if terms > MAX_ORDER {
        return Err(CoeffError::UnsupportedOrder {
            family: "B",
            requested: terms,
            max: MAX_ORDER,
        });
    }
    assert!(terms >= 1);
    let c = c_coeffs(terms);
    let mut b = Vec::with_capacity(terms);
    for j in 0..terms {
        let mut acc = Rational::zero();
        for k in 0..=j {
            let term = &c[k] * d_coeff(j - k, k)?;
            acc = if k % 2 == 0 { acc + term } else { acc - term };
        }
        b.push(acc);
    }
    Ok(b)
}

/// Every family at its full supported order, built once.
pub struct CoeffTables {
    pub c: Vec<Rational>,
    /// a[k][j], k, j = 0..=4
    pub a: Vec<Vec<Rational>>,
    /// ghat[k][j] = 6^{2k} G_{2k,j}
    pub ghat: Vec<Vec<Rational>>,
    /// d[k][j]
    pub d: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub max_order: usize,
}

pub fn tables() -> &'static CoeffTables {
    static TABLES: OnceLock<CoeffTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let dim = MAX_ORDER;
        let mut a = vec![vec![Rational::zero(); dim]; dim];
        let mut ghat = vec![vec![Rational::zero(); dim]; dim];
        let mut d = vec![vec![Rational::zero(); dim]; dim];
        for j in 0..dim {
            let g = g_coeffs(2 * (dim - 1), j);
            for k in 0..dim {
                a[k][j] = a_coeff(k, j).expect("k <= 4");
                ghat[k][j] = &g[2 * k] * rat_int(36).pow(k as i32);
                d[k][j] = d_coeff(k, j).expect("k <= 4");
            }
        }
        CoeffTables {
            c: c_coeffs(6),
            a,
            ghat,
            d,
            b: b_coeffs(dim).expect("within cap"),
            max_order: dim,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        rat(n, d)
    }

    #[test]
    fn gamma_ratio_printed_terms() {
        let s = gamma_ratio_series(6);
        let want = [
            r(1, 1),
            r(-1, 8),
            r(1, 128),
            r(5, 1024),
            r(-21, 32768),
            r(-399, 262144),
        ];
        assert_eq!(s.coeffs(), &want);
    }

    #[test]
    fn a2_printed_terms() {
        let s = a2_series(6);
        let want = [
            r(1, 1),
            r(-1, 4),
            r(1, 32),
            r(1, 128),
            r(-5, 2048),
            r(-23, 8192),
        ];
        assert_eq!(s.coeffs(), &want);
    }

    #[test]
    fn stirling_printed_terms() {
        let s = stirling_series(6);
        let want = [
            r(1, 1),
            r(1, 12),
            r(1, 288),
            r(-139, 51840),
            r(-571, 2488320),
            r(163879, 209018880),
        ];
        assert_eq!(s.coeffs(), &want);
    }

    #[test]
    fn c_printed_values() {
        let c = c_coeffs(6);
        let want = [
            r(1, 1),
            r(1, 2),
            r(5, 8),
            r(21, 16),
            r(507, 128),
            r(4035, 256),
        ];
        assert_eq!(c, want);
    }

    #[test]
    fn a_coeff_spot_values() {
        assert_eq!(a_coeff(0, 3).unwrap(), r(1, 1));
        assert_eq!(a_coeff(1, 0).unwrap(), r(1, 3));
        assert_eq!(a_coeff(2, 1).unwrap(), r(637, 288));
        assert_eq!(a_coeff(3, 0).unwrap(), r(-587, 25920));
        assert_eq!(a_coeff(4, 4).unwrap(), r(1033009091, 349760));
        assert!(matches!(
            a_coeff(5, 0),
            Err(CoeffError::UnsupportedOrder { requested: 5, .. })
        ));
    }

    // printed hat-G polynomials, used here only as fixtures against the
    // regenerated saddle expansion
    const GHAT_POLY: [(i64, i64, &[i64]); 5] = [
        (1, 3, &[2, -3]),
        (1, 15, &[46, -225, 270, -90]),
        (1, 70, &[230, -3969, 11340, -11760, 5040, -756]),
        (
            1,
            350,
            &[-3626, -17781, 183330, -397530, 370440, -170100, 37800, -3240],
        ),
        (
            1,
            231000,
            &[
                -4032746, 43924815, 88280280, -743046480, 1353607200, -1160830440, 541870560,
                -141134400, 19245600, -1069200,
            ],
        ),
    ];

    #[test]
    fn g_matches_printed_polynomials() {
        for j in 0..=4usize {
            let g = g_coeffs(8, j);
            for (k, &(num, den, poly)) in GHAT_POLY.iter().enumerate() {
                let ghat = r(num, den) * eval_poly_at_int(poly, -(j as i64));
                let scaled = &g[2 * k] * rat_int(36).pow(k as i32);
                assert_eq!(scaled, ghat, "hat-G mismatch at 2k={} j={}", 2 * k, j);
            }
        }
    }

    #[test]
    fn g_low_order_values() {
        let g = g_coeffs(2, 0);
        assert_eq!(g[0], r(2, 3));
        assert_eq!(g[2], r(23, 270));
        let g = g_coeffs(0, 1);
        assert_eq!(g[0], r(5, 3));
    }

    #[test]
    fn saddle_map_defining_equation_residual() {
        // substituting tau(w) back into tau - log tau - 1 - w^2/2 must give
        // the zero series to the working order
        let n = 12;
        let tau_m1 = tau_minus_one(n);
        let tau = tau_m1.add(&PowerSeries::one(n));
        let mut half_w2 = PowerSeries::zero(n).into_coeffs();
        half_w2[2] = r(1, 2);
        let resid = tau_m1.sub(&tau.log()).sub(&PowerSeries::new(half_w2));
        assert_eq!(resid, PowerSeries::zero(n));
    }

    #[test]
    fn d_spot_values() {
        assert_eq!(d_coeff(0, 0).unwrap(), r(7, 3));
        for j in 0..5usize {
            assert_eq!(d_coeff(0, j).unwrap(), r(7, 3) + rat_int(2 * j as i64));
        }
        assert_eq!(d_coeff(1, 0).unwrap(), r(68, 135));
    }

    #[test]
    fn b_values_exact() {
        let b = b_coeffs(5).unwrap();
        let want = [
            r(7, 3),
            r(-449, 270),
            r(55949, 30240),
            r(-87499, 17010),
            Rational::new(137885143760267i64.into(), 7067908108800i64.into()),
        ];
        assert_eq!(b, want);
        assert!(matches!(
            b_coeffs(6),
            Err(CoeffError::UnsupportedOrder { requested: 6, .. })
        ));
    }

    #[test]
    fn tables_consistent_with_generators() {
        let t = tables();
        assert_eq!(t.c[0], Rational::one());
        assert_eq!(t.b[0], r(7, 3));
        assert_eq!(t.a[0].iter().filter(|v| v.is_one()).count(), 5);
        assert_eq!(t.d[1][0], r(68, 135));
        assert_eq!(t.ghat[1][0], r(46, 15));
        assert_eq!(t.max_order, 5);
    }
}
