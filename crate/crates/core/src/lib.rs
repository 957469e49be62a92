//! Exact computations in the tautological ring of the moduli of principally
//! polarized abelian varieties.
//!
//! The crate is organised bottom-up:
//!
//! * [`rational`] – exact scalars, Bernoulli numbers, `zeta(1 - 2g)`;
//! * [`graded`] – weighted-graded polynomials and univariate series;
//! * [`charclass`] – Chern character, Todd classes, exterior powers;
//! * [`taut`] – the ring `R_g`, its normal forms and Gorenstein pairing;
//! * [`boundary`] – the boundary pushforward and the `lambda_g` coefficient;
//! * [`satake`] – stratum constants on the Satake compactification.

pub mod boundary;
pub mod charclass;
pub mod error;
pub mod graded;
pub mod linalg;
pub mod rational;
pub mod satake;
pub mod taut;

pub use boundary::{
    binomial_expansion_check, grr_coefficient, grr_derivation, pushforward, sum_powers_quotient, verify_main_theorem,
    BoundaryClass, MainTheoremReport, PushforwardResult,
};
pub use charclass::{
    borel_serre_check, borel_serre_check_with_bound, chern_character, dual_bundle, exterior_alternating_sum_dual, newton_power_sums,
    symmetric_to_elementary, todd, todd_dual, BorelSerreReport, BundleClasses, Representation,
};
pub use error::{Error, Result};
pub use graded::{
    graded_exp, graded_log, named_series, substitute_power_sums, Alphabet, ExponentVector, GradedPolynomial, NamedSeries,
    UnivariateSeries,
};
pub use linalg::Matrix;
pub use rational::{bernoulli, main_constant, zeta_negative_odd, Rational};
pub use satake::{
    consistency_report, p_rank_constant, recursion_check, stratum_constant, theorem34_constants, SatakeClassExpression,
};
pub use taut::{RingReport, Subset, TautRing, TautRingElement};
