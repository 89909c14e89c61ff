//! Numerical laboratory for moment Hankel matrices on Hardy spaces.
//!
//! A positive radial measure μ on [0, 1) has moments μ_n = ∫ t^n dμ(t).
//! The Hankel matrix (μ_{n+k}) with rows weighted by (n+1) induces the
//! derivative-Hilbert operator DH_μ on analytic functions of the disk,
//! which (for tame μ) coincides with the kernel integral
//! ∫ f(t)/(1-tz)² dμ(t). Whether DH_μ is bounded or compact on H^p is
//! governed by Carleson-type tail conditions μ([t,1)) ≲ (1-t)^s.
//!
//! The crate builds all of these objects at desk scale and checks the
//! identities and dichotomies numerically:
//!
//! * [`measure`] — radial measures (atoms + Beta/log densities), moments,
//!   tail masses, singular integrals, Carleson classifiers.
//! * [`analytic`] — truncated power series, circle means, H^p/B_q/Bloch/
//!   BMOA norm estimates, reproducing-kernel test families.
//! * [`operator`] — weighted Hankel truncations, naive and FFT applies,
//!   the integral form, spectral-norm profiles and tail-block diagnostics.
//! * [`verify`] — named scenarios with pass/fail verdicts: the pairing
//!   identity, the Hilbert inequality, boundedness/compactness dichotomies,
//!   necessity functionals.
//!
//! Core math is generic over the scalar via [`scalar::Real`] (`f32` or
//! `f64`); the aliases below fix the `f64` instantiation the CLI uses.

pub mod analytic;
pub mod linalg;
pub mod measure;
pub mod operator;
pub mod quad;
pub mod scalar;
pub mod special;
pub mod verify;

pub use scalar::Real;

/// `f64` instantiations of the main types.
pub type RadialMeasure64 = measure::RadialMeasure<f64>;
pub type MomentSequence64 = measure::MomentSequence<f64>;
pub type CarlesonReport64 = measure::CarlesonReport<f64>;
pub type PowerSeries64 = analytic::PowerSeries<f64>;
pub type NormEstimate64 = analytic::NormEstimate<f64>;
pub type HankelMatrix64 = operator::WeightedHankelMatrix<f64>;
pub type NormProfile64 = operator::NormProfile<f64>;
pub type SpectralEstimate64 = operator::SpectralEstimate<f64>;
pub type VerificationOutcome64 = verify::VerificationOutcome<f64>;
pub type ScenarioParams64 = verify::ScenarioParams<f64>;
