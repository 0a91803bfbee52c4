//! Name-addressable registry over the coefficient families, so the CLI and
//! tests can enumerate or look up a family without matching on an enum at
//! every call site. Each entry renders its values as exact rational strings.

use super::expansions::{
    central_term_coeffs, delta_coeffs, ratio_error_coeffs, ExpansionCoeffs,
};
use super::{a_coeff, b_coeffs, c_coeffs, d_coeff, g_coeffs, CoeffError, MAX_ORDER};
use crate::mp::rational::rat_int;

/// One labeled exact value, e.g. ("B_2", "55949/30240").
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffRow {
    pub label: String,
    pub value: String,
}

/// A generatable coefficient family addressable by CLI key. `count` always
/// means the number of orders requested along the family's primary index.
pub trait CoeffFamily: Sync {
    fn key(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    /// Largest supported `count`, or None when the generator is unbounded.
    fn cap(&self) -> Option<usize>;
    /// Prefactor tag for bracket families, None for bare coefficient lists.
    fn prefactor(&self) -> Option<&'static str> {
        None
    }
    fn rows(&self, count: usize) -> Result<Vec<CoeffRow>, CoeffError>;
}

fn bracket_rows(e: ExpansionCoeffs) -> Vec<CoeffRow> {
    e.terms
        .iter()
        .enumerate()
        .map(|(j, t)| CoeffRow {
            label: format!("term_{j}"),
            value: t.to_string(),
        })
        .collect()
}

struct CFamily;

impl CoeffFamily for CFamily {
    fn key(&self) -> &'static str {
        "c"
    }
    fn describe(&self) -> &'static str {
        "inverse factorial expansion coefficients c_k"
    }
    fn cap(&self) -> Option<usize> {
        None
    }
    fn rows(&self, count: usize) -> Result<Vec<CoeffRow>, CoeffError> {
        Ok(c_coeffs(count)
            .iter()
            .enumerate()
            .map(|(k, v)| CoeffRow {
                label: format!("c_{k}"),
                value: v.to_string(),
            })
            .collect())
    }
}

struct AFamily;

impl CoeffFamily for AFamily {
    fn key(&self) -> &'static str {
        "a"
    }
    fn describe(&self) -> &'static str {
        "terminant expansion coefficients A_{k,j} at gamma_j = -j"
    }
    fn cap(&self) -> Option<usize> {
        Some(MAX_ORDER)
    }
    fn rows(&self, count: usize) -> Result<Vec<CoeffRow>, CoeffError> {
        let mut rows = Vec::new();
        for k in 0..count {
            for j in 0..MAX_ORDER {
                rows.push(CoeffRow {
                    label: format!("A[{k},{j}]"),
                    value: a_coeff(k, j)?.to_string(),
                });
            }
        }
        Ok(rows)
    }
}

struct GFamily;

impl CoeffFamily for GFamily {
    fn key(&self) -> &'static str {
        "g"
    }
    fn describe(&self) -> &'static str {
        "saddle coefficients Ghat_{2k,j} = 6^{2k} G_{2k,j} at gamma_j = -j"
    }
    fn cap(&self) -> Option<usize> {
        None
    }
    fn rows(&self, count: usize) -> Result<Vec<CoeffRow>, CoeffError> {
        if count == 0 {
            return Err(CoeffError::UnsupportedOrder {
                family: "Ghat",
                requested: 0,
                max: usize::MAX,
            });
        }
        let mut rows = Vec::new();
        for j in 0..MAX_ORDER {
            let g = g_coeffs(2 * (count - 1), j);
            for k in 0..count {
                let ghat = &g[2 * k] * rat_int(36).pow(k as i32);
                rows.push(CoeffRow {
                    label: format!("Ghat[{},{j}]", 2 * k),
                    value: ghat.to_string(),
                });
            }
        }
        Ok(rows)
    }
}

struct DFamily;

impl CoeffFamily for DFamily {
    fn key(&self) -> &'static str {
        "d"
    }
    fn describe(&self) -> &'static str {
        "combined coefficients D_{k,j} = A_{k,j} + 2^{k+1} (1/2)_k G_{2k,j}"
    }
    fn cap(&self) -> Option<usize> {
        Some(MAX_ORDER)
    }
    fn rows(&self, count: usize) -> Result<Vec<CoeffRow>, CoeffError> {
        let mut rows = Vec::new();
        for k in 0..count {
            for j in 0..MAX_ORDER {
                rows.push(CoeffRow {
                    label: format!("D[{k},{j}]"),
                    value: d_coeff(k, j)?.to_string(),
                });
            }
        }
        Ok(rows)
    }
}

struct BFamily;

impl CoeffFamily for BFamily {
    fn key(&self) -> &'static str {
        "b"
    }
    fn describe(&self) -> &'static str {
        "remainder expansion coefficients B_j"
    }
    fn cap(&self) -> Option<usize> {
        Some(MAX_ORDER)
    }
    fn rows(&self, count: usize) -> Result<Vec<CoeffRow>, CoeffError> {
        Ok(b_coeffs(count)?
            .iter()
            .enumerate()
            .map(|(j, v)| CoeffRow {
                label: format!("B_{j}"),
                value: v.to_string(),
            })
            .collect())
    }
}

struct RatioFamily;

impl CoeffFamily for RatioFamily {
    fn key(&self) -> &'static str {
        "ratio"
    }
    fn describe(&self) -> &'static str {
        "K0/I0 ratio error bracket terms"
    }
    fn cap(&self) -> Option<usize> {
        Some(MAX_ORDER)
    }
    fn prefactor(&self) -> Option<&'static str> {
        Some("7 sqrt(2 pi) e^{-8x} / (12 x^{1/2})")
    }
    fn rows(&self, count: usize) -> Result<Vec<CoeffRow>, CoeffError> {
        Ok(bracket_rows(ratio_error_coeffs(count)?))
    }
}

struct DeltaFamily;

impl CoeffFamily for DeltaFamily {
    fn key(&self) -> &'static str {
        "delta"
    }
    fn describe(&self) -> &'static str {
        "Delta(x) reconciliation bracket terms"
    }
    fn cap(&self) -> Option<usize> {
        Some(4)
    }
    fn prefactor(&self) -> Option<&'static str> {
        Some("-5 e^{-4x} / (24 sqrt(2 pi) x^{3/2})")
    }
    fn rows(&self, count: usize) -> Result<Vec<CoeffRow>, CoeffError> {
        Ok(bracket_rows(delta_coeffs(count)?))
    }
}

struct CentralFamily;

impl CoeffFamily for CentralFamily {
    fn key(&self) -> &'static str {
        "central"
    }
    fn describe(&self) -> &'static str {
        "central factorial term bracket (Stirling at 2s times a2 series)"
    }
    fn cap(&self) -> Option<usize> {
        Some(4)
    }
    fn prefactor(&self) -> Option<&'static str> {
        Some("e^{-2s} / (sqrt(pi) s^{3/2})")
    }
    fn rows(&self, count: usize) -> Result<Vec<CoeffRow>, CoeffError> {
        Ok(bracket_rows(central_term_coeffs(count)?))
    }
}

static REGISTRY: [&dyn CoeffFamily; 8] = [
    &CFamily,
    &AFamily,
    &GFamily,
    &DFamily,
    &BFamily,
    &RatioFamily,
    &DeltaFamily,
    &CentralFamily,
];

pub fn registry() -> &'static [&'static dyn CoeffFamily] {
    &REGISTRY
}

pub fn find(key: &str) -> Option<&'static dyn CoeffFamily> {
    REGISTRY.iter().copied().find(|f| f.key() == key)
}
