//! Euler's constant by the Brent-McMillan algorithm, with exact-rational
//! generation of the coefficient families governing its optimal-truncation
//! error term.
//!
//! Layers, bottom up:
//!
//! * [`mp`] - arbitrary-precision binary floats with half-even rounding,
//!   exact rationals, elementary constants and functions, and dense power
//!   series over the rationals (including reversion and Laurent quotients).
//! * [`coeffs`] - every coefficient family of the error analysis, generated
//!   exactly: the c_k of the I0^2 expansion, the saddle-point A and G
//!   polynomials, the D and B combinations, and the bracket series of each
//!   remainder expansion, plus a registry that names them for the CLI.
//! * [`bessel`] - the convergent S0/I0 sums, K0 through the defining
//!   identity, the truncated asymptotic product series, and the exact
//!   remainder it leaves.
//! * [`error_model`] - numerical evaluators for the remainder expansions,
//!   the Demailly-style gap bound, and an incomplete-gamma terminant oracle
//!   validating the A_k data.
//! * [`gamma`] - parameter selection and the certified digit computation.

pub mod bessel;
pub mod coeffs;
pub mod error_model;
pub mod gamma;
pub mod mp;
