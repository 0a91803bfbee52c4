//! Multiprecision kernel: exact rationals, binary floating point with an
//! explicit precision, elementary transcendentals, and truncated power
//! series over the rationals.

pub mod functions;
pub mod rational;
pub mod real;
pub mod series;

pub use functions::{exp_int, ln2, ln_rational, ln_u64, pi, sqrt_2pi, sqrt_pi};
pub use rational::{bernoulli, fixed_decimal, rat, rat_int, sci_decimal, Rational};
pub use real::Real;
pub use series::{LaurentSeries, PowerSeries};

#[derive(Debug, thiserror::Error)]
pub enum MpError {
    #[error("logarithm domain: argument {0} is not positive")]
    LogDomain(String),
    #[error("precision {0} is below the supported minimum of {1} bits")]
    PrecisionTooLow(u32, u32),
}
