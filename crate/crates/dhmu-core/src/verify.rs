//! Named verification scenarios with pass/fail verdicts.
//!
//! Each scenario binds one of the operator-theoretic statements to a
//! reproducible numerical check:
//!
//! * `repr-identity` — the series and kernel-integral forms of the
//!   derivative operator agree on polynomials.
//! * `pairing-identity` — the boundary pairing of DH_μ(f) against g equals
//!   the measure-side integral ∫ conj(f(t)) (g(rt) + rt g'(rt)) dμ(t).
//! * `hilbert-ineq` — Σ_n |Σ_k a_k/(n+k+1)|² ≤ π² Σ |a_k|², swept over
//!   seeded random vectors through the fast Hankel apply. A violation
//!   fails the build; this inequality is the engine of the H² boundedness
//!   proof.
//! * `h2-bounded-dichotomy` / `h2-compact-dichotomy` — norm profiles and
//!   tail-block norms against the measure-side Carleson classification.
//!   Decaying tail norms are reported as *consistent with* compactness,
//!   never as a proof of it.
//! * `necessity-4.1-i/ii/iii` — the pointwise lower-bound chains from the
//!   kernel test families: ∫_{[a,1)} f_a (g_a + t g_a') dμ against
//!   μ([a,1))/(1-a²)^E, with the analytically derived ratio floor.
//! * `embedding-hastings` — the (∫|f_a|^q dμ)^{1/q} ≤ C ||f_a||_{H^p}
//!   embedding probe: plateau for Carleson measures, growth otherwise.
//! * `lemma-4.1-integrability` — ∫ (1-t)^{-α} dμ diverges exactly when
//!   some density exponent β ≤ α.
//! * `conjecture-4.1-probe` — informational test-ratio evidence for the
//!   H^p, p > 2 question; no pass/fail ground truth exists.
//!
//! Scenarios are pure functions of their configuration: identical
//! parameters (including seeds and grids) reproduce identical metrics.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::analytic::{kernel_truncation_order, test_function_f, PowerSeries};
use crate::measure::{dyadic_grid, standard_corpus, MeasureError, RadialMeasure, TrendVerdict};
use crate::operator::{
    self, norm_profile, tail_block_norm, GrowthVerdict, OperatorError, WeightScheme,
    WeightedHankelMatrix,
};
use crate::scalar::Real;

/// Outcome of one scenario run. `passed` is a pure function of the
/// metrics and tolerance; `labels` carry non-numeric verdict text.
#[derive(Debug, Clone)]
pub struct VerificationOutcome<F> {
    pub scenario_id: String,
    pub passed: bool,
    pub tolerance: F,
    pub metrics: Vec<(String, F)>,
    pub labels: Vec<(String, String)>,
    pub inputs_digest: String,
}

/// Scenario configuration. `None` fields take the per-scenario defaults
/// that the acceptance criteria pin down.
#[derive(Debug, Clone)]
pub struct ScenarioParams<F: Real> {
    pub seed: u64,
    pub trials: Option<usize>,
    pub truncation: Option<usize>,
    pub grid_j: Option<u32>,
    pub p: Option<F>,
    pub q: Option<F>,
    pub s: Option<F>,
    pub alpha: Option<F>,
    pub measure: Option<(String, RadialMeasure<F>)>,
}

impl<F: Real> Default for ScenarioParams<F> {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: None,
            truncation: None,
            grid_j: None,
            p: None,
            q: None,
            s: None,
            alpha: None,
            measure: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown scenario id '{0}'")]
    UnknownScenario(String),
    #[error("{0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

pub const SCENARIO_IDS: [&str; 11] = [
    "repr-identity",
    "pairing-identity",
    "hilbert-ineq",
    "h2-bounded-dichotomy",
    "h2-compact-dichotomy",
    "necessity-4.1-i",
    "necessity-4.1-ii",
    "necessity-4.1-iii",
    "embedding-hastings",
    "lemma-4.1-integrability",
    "conjecture-4.1-probe",
];

// ---------------------------------------------------------------------------
// Pairing identity
// ---------------------------------------------------------------------------

const PAIRING_TRUNCATION: usize = 512;

/// Image coefficients b_n = (n+1) Σ_k μ_{n+k} a_k for n < trunc.
fn dh_image_series<F: Real>(
    moment_values: &[F],
    f: &PowerSeries<F>,
    trunc: usize,
) -> PowerSeries<F> {
    let coeffs = f.coeffs();
    assert!(moment_values.len() >= trunc + coeffs.len() - 1);
    let image: Vec<Complex<F>> = (0..trunc)
        .map(|n| {
            let mut acc = Complex::new(F::zero(), F::zero());
            for (k, &ak) in coeffs.iter().enumerate() {
                acc += ak.scale(moment_values[n + k]);
            }
            acc.scale(F::of_usize(n + 1))
        })
        .collect();
    PowerSeries::new(image)
}

/// (1/2π) ∫ conj(DH_μ(f)(r e^{iθ})) g(e^{iθ}) dθ by K-point sampling, with
/// DH_μ(f) evaluated through its truncated series (512 terms; exact for
/// the degree ≤ 32 inputs the scenarios sweep since K exceeds every
/// aliasing offset).
pub fn duality_pairing_lhs<F: Real>(
    m: &RadialMeasure<F>,
    f: &PowerSeries<F>,
    g: &PowerSeries<F>,
    r: F,
    k: usize,
) -> Result<Complex<F>, MeasureError> {
    let moments = m.moments(PAIRING_TRUNCATION + f.coeffs().len() - 1)?;
    Ok(pairing_lhs_from_moments(&moments.values, f, g, r, k))
}

fn pairing_lhs_from_moments<F: Real>(
    moment_values: &[F],
    f: &PowerSeries<F>,
    g: &PowerSeries<F>,
    r: F,
    k: usize,
) -> Complex<F> {
    assert!(k.is_power_of_two(), "sample count must be a power of two");
    let image = dh_image_series(moment_values, f, PAIRING_TRUNCATION);
    let a = image.circle_samples(r, k);
    let b = g.circle_samples(F::one(), k);
    let mut acc = Complex::new(F::zero(), F::zero());
    for (x, y) in a.iter().zip(&b) {
        acc += x.conj() * y;
    }
    acc.scale(F::of_usize(k).recip())
}

/// The measure side of the pairing: ∫ conj(f(t)) (g(rt) + rt g'(rt)) dμ(t).
pub fn duality_pairing_rhs<F: Real>(
    m: &RadialMeasure<F>,
    f: &PowerSeries<F>,
    g: &PowerSeries<F>,
    r: F,
) -> Result<Complex<F>, MeasureError> {
    let g_prime = g.derivative();
    m.integrate_complex(|t: F| {
        let rt = r * t;
        let gv = g.eval_real(rt) + g_prime.eval_real(rt).scale(rt);
        f.eval_real(t).conj() * gv
    })
}

// ---------------------------------------------------------------------------
// Hilbert inequality
// ---------------------------------------------------------------------------

/// Classical Hilbert inequality on a finite vector:
/// lhs = Σ_{n<N} |Σ_k a_k/(n+k+1)|², rhs = Σ |a_k|²; passes when
/// lhs ≤ π² rhs (1 + 1e-12). The lhs goes through the fast Hankel apply
/// on the moments 1/(n+1).
pub fn hilbert_inequality_check<F: Real>(a: &[Complex<F>]) -> (F, F, bool) {
    let n = a.len();
    let moments: Vec<F> = (0..2 * n - 1).map(|i| F::of_usize(i + 1).recip()).collect();
    let seq = crate::measure::MomentSequence {
        values: moments,
        source: "1/(n+1)".into(),
    };
    let h = WeightedHankelMatrix::build(&seq, n, WeightScheme::Unit).unwrap();
    let image = h.apply(a);
    let lhs: F = image.iter().map(|c| c.norm_sqr()).sum();
    let rhs: F = a.iter().map(|c| c.norm_sqr()).sum();
    let bound = F::PI() * F::PI() * rhs * (F::one() + F::of(1e-12));
    (lhs, rhs, lhs <= bound)
}

// ---------------------------------------------------------------------------
// Necessity functionals
// ---------------------------------------------------------------------------

/// Pairing target for the necessity lower bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NecessityTarget<F> {
    /// Into H^q with q > 1, via the conjugate exponent q'.
    Hq { q_prime: F },
    /// Into H^1 (log-kernel dual family).
    H1,
    /// Into B_q for 0 < q < 1 (Cauchy-kernel dual family).
    Bq,
}

impl<F: Real> NecessityTarget<F> {
    pub fn exponent(&self, p: F) -> F {
        match self {
            NecessityTarget::Hq { q_prime } => p.recip() + q_prime.recip() + F::one(),
            NecessityTarget::H1 | NecessityTarget::Bq => p.recip() + F::one(),
        }
    }

    /// Analytic lower bound for lhs/rhs at probe point a, derived from the
    /// pointwise chain on [a, 1); used with a 1/2 safety factor.
    fn ratio_floor(&self, a: F) -> F {
        let a3 = a * a * a;
        match self {
            NecessityTarget::Hq { q_prime } => F::of(2.0) * a * a / *q_prime,
            NecessityTarget::H1 => a3 * (F::one() - a * a) / (F::one() - a3),
            NecessityTarget::Bq => {
                let u = (F::one() - a * a) / (F::one() - a3);
                a3 * u * u
            }
        }
    }
}

/// Both sides of the necessity comparison at probe point a:
/// lhs = ∫_{[a,1)} f_a(t) G_a(t) dμ(t) with the matching dual family
/// (evaluated at t for the H^q target, at rt with r = a for H^1 and B_q),
/// rhs = μ([a,1)) / (1-a²)^E.
pub fn necessity_functional<F: Real>(
    m: &RadialMeasure<F>,
    p: F,
    target: NecessityTarget<F>,
    a: F,
) -> Result<(F, F), MeasureError> {
    assert!(a > F::zero() && a < F::one());
    let one = F::one();
    let two = F::of(2.0);
    let one_minus_a2 = one - a * a;
    let inv_p = p.recip();

    let lhs = match target {
        NecessityTarget::Hq { q_prime } => {
            let inv_qp = q_prime.recip();
            m.integrate_tail(a, move |t: F| {
                let log_core = one_minus_a2.ln() - two * (one - a * t).ln();
                let fa = (inv_p * log_core).exp();
                let ga = (inv_qp * log_core).exp();
                let g_part = ga * (one + two * a * t / (q_prime * (one - a * t)));
                fa * g_part
            })?
        }
        NecessityTarget::H1 => {
            // r = a: g(rt) + rt g'(rt) = log(e/(1-a²t)) + a²t/(1-a²t)
            m.integrate_tail(a, move |t: F| {
                let fa = (inv_p * (one_minus_a2.ln() - two * (one - a * t).ln())).exp();
                let art = a * a * t;
                let g_part = one - (one - art).ln() + art / (one - art);
                fa * g_part
            })?
        }
        NecessityTarget::Bq => {
            // r = a: g(rt) + rt g'(rt) = (1-a²)/(1-a²t) + a²t(1-a²)/(1-a²t)²
            m.integrate_tail(a, move |t: F| {
                let fa = (inv_p * (one_minus_a2.ln() - two * (one - a * t).ln())).exp();
                let art = a * a * t;
                let d = one - art;
                let g_part = one_minus_a2 / d + art * one_minus_a2 / (d * d);
                fa * g_part
            })?
        }
    };

    let rhs = m.tail_mass(a) / one_minus_a2.powf(target.exponent(p));
    Ok((lhs, rhs))
}

// ---------------------------------------------------------------------------
// Coefficient decay (well-definedness checks)
// ---------------------------------------------------------------------------

/// Returns (max_n |a_n|/(n+1)^{1/p-1}, Σ_n (n+1)^{p-2} |a_n|^p): the
/// scaled-coefficient bound and the summability quantity behind the
/// well-definedness of the operator on H^p.
pub fn coefficient_decay_check<F: Real>(f: &PowerSeries<F>, p: F) -> (F, F) {
    assert!(p > F::zero() && p <= F::of(2.0));
    let scale_expo = p.recip() - F::one();
    let sum_expo = p - F::of(2.0);
    let mut max_scaled = F::zero();
    let mut sum = F::zero();
    for (n, c) in f.coeffs().iter().enumerate() {
        let nf = F::of_usize(n + 1);
        let mag = c.norm();
        let scaled = mag / nf.powf(scale_expo);
        if scaled > max_scaled {
            max_scaled = scaled;
        }
        sum += nf.powf(sum_expo) * mag.powf(p);
    }
    (max_scaled, sum)
}

// ---------------------------------------------------------------------------
// Scenario runner
// ---------------------------------------------------------------------------

pub fn run_scenario<F: Real>(
    id: &str,
    params: &ScenarioParams<F>,
) -> Result<VerificationOutcome<F>, VerifyError> {
    match id {
        "repr-identity" => scenario_repr_identity(params),
        "pairing-identity" => scenario_pairing_identity(params),
        "hilbert-ineq" => Ok(scenario_hilbert(params)),
        "h2-bounded-dichotomy" => scenario_bounded_dichotomy(params),
        "h2-compact-dichotomy" => scenario_compact_dichotomy(params),
        "necessity-4.1-i" => scenario_necessity(params, NecessityKind::HigherHq),
        "necessity-4.1-ii" => scenario_necessity(params, NecessityKind::HardyOne),
        "necessity-4.1-iii" => scenario_necessity(params, NecessityKind::ContainingBq),
        "embedding-hastings" => scenario_embedding(params),
        "lemma-4.1-integrability" => scenario_integrability(params),
        "conjecture-4.1-probe" => scenario_conjecture_probe(params),
        other => Err(VerifyError::UnknownScenario(other.to_string())),
    }
}

fn chosen_measures<F: Real>(
    params: &ScenarioParams<F>,
    defaults: &[&str],
) -> Vec<(String, RadialMeasure<F>)> {
    if let Some((name, m)) = &params.measure {
        return vec![(name.clone(), m.clone())];
    }
    standard_corpus::<F>()
        .into_iter()
        .filter(|(name, _)| defaults.is_empty() || defaults.contains(&name.as_str()))
        .collect()
}

fn scenario_repr_identity<F: Real>(
    params: &ScenarioParams<F>,
) -> Result<VerificationOutcome<F>, VerifyError> {
    let order = params.truncation.unwrap_or(400);
    let tol = F::of(1e-6);
    let measures = chosen_measures(params, &["dirac-0.5", "beta-2"]);

    // polynomial inputs up to degree 8: canonical plus seeded random
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut inputs: Vec<PowerSeries<F>> = vec![
        PowerSeries::from_real(&[F::one()]),
        PowerSeries::from_real(&[F::zero(), F::one()]),
    ];
    for _ in 0..3 {
        let coeffs: Vec<Complex<F>> = (0..=8)
            .map(|_| {
                Complex::new(
                    F::of(rng.gen_range(-1.0..1.0)),
                    F::of(rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        inputs.push(PowerSeries::new(coeffs));
    }

    let mut z_grid: Vec<Complex<F>> = (0..16)
        .map(|k| Complex::from_polar(F::of(0.9), F::TAU() * F::of_usize(k) / F::of(16.0)))
        .collect();
    z_grid.extend(
        (0..8).map(|k| Complex::from_polar(F::of(0.5), F::TAU() * F::of_usize(k) / F::of(8.0))),
    );
    z_grid.push(Complex::new(F::zero(), F::zero()));

    let mut metrics = Vec::new();
    let mut worst = F::zero();
    for (name, m) in &measures {
        let mut gap_max = F::zero();
        for f in &inputs {
            let gap = operator::representation_gap(m, f, &z_grid, order)?;
            if gap > gap_max {
                gap_max = gap;
            }
        }
        metrics.push((format!("max-gap[{name}]"), gap_max));
        if gap_max > worst {
            worst = gap_max;
        }
    }
    metrics.push(("max-gap".into(), worst));
    Ok(VerificationOutcome {
        scenario_id: "repr-identity".into(),
        passed: worst <= tol,
        tolerance: tol,
        metrics,
        labels: Vec::new(),
        inputs_digest: format!(
            "measures={:?}; N={order}; degree<=8; |z|<=0.9; seed={}",
            measures.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>(),
            params.seed
        ),
    })
}

fn scenario_pairing_identity<F: Real>(
    params: &ScenarioParams<F>,
) -> Result<VerificationOutcome<F>, VerifyError> {
    let trials = params.trials.unwrap_or(50);
    let k = 4096usize;
    let radii = [F::of(0.3), F::of(0.6), F::of(0.9)];
    let measures = chosen_measures(params, &[]);
    let tol = F::of(1e-8);
    let max_degree = 32usize;

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut pairs = Vec::with_capacity(trials);
    for _ in 0..trials {
        let df = rng.gen_range(1..=max_degree);
        let dg = rng.gen_range(1..=max_degree);
        let rand_poly = |rng: &mut ChaCha8Rng, d: usize| {
            PowerSeries::new(
                (0..=d)
                    .map(|_| {
                        Complex::new(
                            F::of(rng.gen_range(-1.0..1.0)),
                            F::of(rng.gen_range(-1.0..1.0)),
                        )
                    })
                    .collect(),
            )
        };
        let f = rand_poly(&mut rng, df);
        let g = rand_poly(&mut rng, dg);
        pairs.push((f, g));
    }

    let mut worst = F::zero();
    let mut metrics = Vec::new();
    for (name, m) in &measures {
        let moments = m.moments(PAIRING_TRUNCATION + max_degree)?;
        let mut measure_worst = F::zero();
        for (f, g) in &pairs {
            for &r in &radii {
                let lhs = pairing_lhs_from_moments(&moments.values, f, g, r, k);
                let rhs = duality_pairing_rhs(m, f, g, r)?;
                let scaled = (lhs - rhs).norm() / (F::one() + lhs.norm());
                if scaled > measure_worst {
                    measure_worst = scaled;
                }
            }
        }
        metrics.push((format!("max-scaled-err[{name}]"), measure_worst));
        if measure_worst > worst {
            worst = measure_worst;
        }
    }
    metrics.push(("max-scaled-err".into(), worst));
    Ok(VerificationOutcome {
        scenario_id: "pairing-identity".into(),
        passed: worst <= tol,
        tolerance: tol,
        metrics,
        labels: Vec::new(),
        inputs_digest: format!(
            "trials={trials}; degree<=32; r={{0.3,0.6,0.9}}; K={k}; truncation={PAIRING_TRUNCATION}; seed={}",
            params.seed
        ),
    })
}

fn scenario_hilbert<F: Real>(params: &ScenarioParams<F>) -> VerificationOutcome<F> {
    let trials = params.trials.unwrap_or(1000);
    let n = params.truncation.unwrap_or(512);
    let moments: Vec<F> = (0..2 * n - 1).map(|i| F::of_usize(i + 1).recip()).collect();
    let seq = crate::measure::MomentSequence {
        values: moments,
        source: "1/(n+1)".into(),
    };
    let h = WeightedHankelMatrix::build(&seq, n, WeightScheme::Unit).unwrap();
    let mut applier = h.fast_applier();

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let pi2 = F::PI() * F::PI();
    let mut max_ratio = F::zero();
    let mut violations = 0usize;
    for _ in 0..trials {
        let mut a: Vec<Complex<F>> = (0..n)
            .map(|_| {
                Complex::new(
                    F::of(rng.gen_range(-1.0..1.0)),
                    F::of(rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        let norm: F = a.iter().map(|c| c.norm_sqr()).sum::<F>().sqrt();
        for c in &mut a {
            *c = c.scale(norm.recip());
        }
        let image = applier.apply(&a);
        let lhs: F = image.iter().map(|c| c.norm_sqr()).sum();
        let rhs: F = a.iter().map(|c| c.norm_sqr()).sum();
        let ratio = lhs / (pi2 * rhs);
        if ratio > max_ratio {
            max_ratio = ratio;
        }
        if lhs > pi2 * rhs * (F::one() + F::of(1e-12)) {
            violations += 1;
        }
    }
    VerificationOutcome {
        scenario_id: "hilbert-ineq".into(),
        passed: violations == 0,
        tolerance: F::of(1e-12),
        metrics: vec![
            ("max-lhs-over-pi2-rhs".into(), max_ratio),
            ("violations".into(), F::of_usize(violations)),
            ("trials".into(), F::of_usize(trials)),
        ],
        labels: Vec::new(),
        inputs_digest: format!("trials={trials}; N={n}; seed={}", params.seed),
    }
}

/// Expected profile shape from the measure side of the dichotomy:
/// 2-Carleson (bounded or decaying tail ratios at s = 2) predicts a
/// plateau; anything growing predicts growth.
fn expected_growth<F: Real>(m: &RadialMeasure<F>, grid_j: u32) -> (TrendVerdict, GrowthVerdict) {
    let grid = dyadic_grid::<F>(1, grid_j);
    let report = m.carleson_constant(F::of(2.0), &grid);
    let expect = match report.vanishing {
        TrendVerdict::Growing => GrowthVerdict::Growing,
        _ => GrowthVerdict::Plateau,
    };
    (report.vanishing, expect)
}

fn scenario_bounded_dichotomy<F: Real>(
    params: &ScenarioParams<F>,
) -> Result<VerificationOutcome<F>, VerifyError> {
    let max_order = params.truncation.unwrap_or(4096).max(128);
    let mut orders = vec![64usize];
    while *orders.last().unwrap() < max_order {
        orders.push(orders.last().unwrap() * 2);
    }
    let grid_j = params.grid_j.unwrap_or(20);
    let measures = chosen_measures(
        params,
        &["lebesgue", "beta-1.5", "beta-2", "beta-2.5", "beta-3"],
    );

    let mut metrics = Vec::new();
    let mut labels = Vec::new();
    let mut all_match = true;
    for (name, m) in &measures {
        let (classification, expect) = expected_growth(m, grid_j);
        let profile = norm_profile(m, WeightScheme::Derivative, &orders, F::of(1e-8))?;
        let got = profile.growth_verdict;
        metrics.push((
            format!("final-norm[{name}]"),
            *profile.norms.last().unwrap(),
        ));
        metrics.push((
            format!("final-ratio[{name}]"),
            *profile.ratios.last().unwrap(),
        ));
        labels.push((format!("carleson-s2[{name}]"), classification.to_string()));
        labels.push((format!("profile[{name}]"), got.to_string()));
        labels.push((format!("expected[{name}]"), expect.to_string()));
        if got != expect {
            all_match = false;
        }
    }
    Ok(VerificationOutcome {
        scenario_id: "h2-bounded-dichotomy".into(),
        passed: all_match,
        tolerance: F::of(1.02),
        metrics,
        labels,
        inputs_digest: format!(
            "measures={:?}; orders={orders:?}; thresholds=1.02/1.05",
            measures.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>()
        ),
    })
}

fn scenario_compact_dichotomy<F: Real>(
    params: &ScenarioParams<F>,
) -> Result<VerificationOutcome<F>, VerifyError> {
    let order = params.truncation.unwrap_or(1024);
    let max_j = params.grid_j.unwrap_or(8);
    let r_list = dyadic_grid::<F>(1, max_j);
    let measures = chosen_measures(params, &["beta-3", "beta-2"]);

    let mut metrics = Vec::new();
    let mut labels = Vec::new();
    let mut all_ok = true;
    for (name, m) in &measures {
        let (classification, _) = expected_growth(m, max_j.max(12));
        let blocks = tail_block_norm(m, WeightScheme::Derivative, order, &r_list, F::of(1e-8))?;
        let norms: Vec<F> = blocks.iter().map(|&(_, v)| v).collect();
        let initial = norms[0];
        let final_v = *norms.last().unwrap();
        metrics.push((format!("initial-tail-norm[{name}]"), initial));
        metrics.push((format!("final-tail-norm[{name}]"), final_v));
        labels.push((format!("carleson-s2[{name}]"), classification.to_string()));

        let ok = match classification {
            TrendVerdict::Decaying => {
                // consistent-with-compactness signature
                let decreasing = norms.windows(2).all(|w| w[1] < w[0]);
                let vanished = initial == F::zero() || final_v < F::of(0.2) * initial;
                labels.push((
                    format!("signature[{name}]"),
                    if decreasing && vanished {
                        "consistent-with-compactness".into()
                    } else {
                        "tail-norms-not-vanishing".into()
                    },
                ));
                decreasing && vanished
            }
            TrendVerdict::Bounded => {
                let min = norms.iter().cloned().fold(F::infinity(), F::min);
                let held = min >= F::of(0.5) * initial;
                labels.push((
                    format!("signature[{name}]"),
                    if held {
                        "tail-norms-bounded-below".into()
                    } else {
                        "tail-norms-unexpectedly-small".into()
                    },
                ));
                held
            }
            TrendVerdict::Growing => {
                // not 2-Carleson: no compactness prediction attaches
                labels.push((format!("signature[{name}]"), "not-2-carleson".into()));
                true
            }
        };
        if !ok {
            all_ok = false;
        }
    }
    Ok(VerificationOutcome {
        scenario_id: "h2-compact-dichotomy".into(),
        passed: all_ok,
        tolerance: F::of(0.2),
        metrics,
        labels,
        inputs_digest: format!(
            "measures={:?}; N={order}; r=1-2^-j, j=1..{max_j}",
            measures.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>()
        ),
    })
}

enum NecessityKind {
    HigherHq,
    HardyOne,
    ContainingBq,
}

fn scenario_necessity<F: Real>(
    params: &ScenarioParams<F>,
    kind: NecessityKind,
) -> Result<VerificationOutcome<F>, VerifyError> {
    let p = params.p.unwrap_or(F::one());
    if !(p > F::zero() && p <= F::one()) {
        return Err(VerifyError::InvalidParameter(
            "necessity scenarios need 0 < p <= 1".into(),
        ));
    }
    let (id, target) = match kind {
        NecessityKind::HigherHq => {
            let q = params.q.unwrap_or(F::of(2.0));
            if q <= F::one() {
                return Err(VerifyError::InvalidParameter(
                    "necessity-4.1-i needs q > 1".into(),
                ));
            }
            let q_prime = q / (q - F::one());
            ("necessity-4.1-i", NecessityTarget::Hq { q_prime })
        }
        NecessityKind::HardyOne => ("necessity-4.1-ii", NecessityTarget::H1),
        NecessityKind::ContainingBq => ("necessity-4.1-iii", NecessityTarget::Bq),
    };
    let exponent = target.exponent(p);

    // default measure: the density at the critical Carleson exponent, where
    // both sides scale identically and the ratio must stay in a band
    let (name, m, critical) = match &params.measure {
        Some((n, m)) => (n.clone(), m.clone(), false),
        None => (
            format!("beta-{}", exponent.as_f64()),
            RadialMeasure::density(F::one(), exponent, 0),
            true,
        ),
    };

    let max_j = params.grid_j.unwrap_or(10);
    let a_grid = dyadic_grid::<F>(1, max_j);

    let mut ratios: Vec<(F, F)> = Vec::new(); // (a, lhs/rhs)
    let mut floor_ok = true;
    for &a in &a_grid {
        let (lhs, rhs) = necessity_functional(&m, p, target, a)?;
        if lhs < F::zero() {
            floor_ok = false;
        }
        if rhs == F::zero() {
            // empty tail: both sides must vanish
            if lhs.abs() > F::of(1e-12) {
                floor_ok = false;
            }
            continue;
        }
        let ratio = lhs / rhs;
        if ratio < target.ratio_floor(a) * F::of(0.5) {
            floor_ok = false;
        }
        ratios.push((a, ratio));
    }

    let mut metrics = Vec::new();
    let mut stable = true;
    if !ratios.is_empty() {
        let min = ratios.iter().map(|&(_, r)| r).fold(F::infinity(), F::min);
        let max = ratios.iter().map(|&(_, r)| r).fold(F::zero(), F::max);
        metrics.push(("min-ratio".into(), min));
        metrics.push(("max-ratio".into(), max));
        if critical && max > F::of(10.0) * min {
            stable = false;
        }
    }
    metrics.push(("exponent".into(), exponent));

    // The H^1 proof bounds the dual factor through the Bloch norm while
    // pairing against BMOA; report both norms of a representative g_a and
    // leave open which one the comparison constant absorbs.
    if matches!(target, NecessityTarget::H1) {
        let a_repr = F::of(0.9);
        let g = crate::analytic::test_function_g(
            crate::analytic::GKind::Log,
            a_repr,
            kernel_truncation_order(F::one(), a_repr),
        );
        metrics.push(("g-bloch-norm[a=0.9]".into(), g.bloch_norm()));
        let probe: Vec<F> = dyadic_grid(1, 8);
        metrics.push(("g-bmoa-seminorm[a=0.9]".into(), g.bmoa_seminorm(&probe)));
    }

    Ok(VerificationOutcome {
        scenario_id: id.into(),
        passed: floor_ok && stable,
        tolerance: F::of(0.5),
        metrics,
        labels: vec![("measure".into(), name.clone())],
        inputs_digest: format!(
            "measure={name}; p={}; E={}; a=1-2^-j, j=1..{max_j}; critical={critical}",
            p.as_f64(),
            exponent.as_f64()
        ),
    })
}

fn scenario_embedding<F: Real>(
    params: &ScenarioParams<F>,
) -> Result<VerificationOutcome<F>, VerifyError> {
    let p = params.p.unwrap_or(F::of(2.0));
    let q = params.q.unwrap_or(F::of(2.0));
    if !(p > F::zero() && q >= p) {
        return Err(VerifyError::InvalidParameter(
            "embedding-hastings needs p > 0 and q >= p".into(),
        ));
    }
    let half_grid: Vec<F> = dyadic_grid(1, 8);
    let full_grid: Vec<F> = dyadic_grid(1, 15);

    // measure + whether the q/p-Carleson condition holds (plateau expected)
    let cases: Vec<(String, RadialMeasure<F>, bool)> = match &params.measure {
        Some((name, m)) => {
            let s = q / p;
            let grid = dyadic_grid::<F>(1, 20);
            let verdict = m.carleson_constant(s, &grid).vanishing;
            vec![(name.clone(), m.clone(), verdict != TrendVerdict::Growing)]
        }
        None => vec![
            ("lebesgue".into(), RadialMeasure::lebesgue(), true),
            (
                "beta-0.5".into(),
                RadialMeasure::density(F::one(), F::of(0.5), 0),
                false,
            ),
        ],
    };

    let mut metrics = Vec::new();
    let mut labels = Vec::new();
    let mut all_ok = true;
    for (name, m, carleson) in &cases {
        let v_half = m.embedding_constant(p, q, &half_grid)?;
        let v_full = m.embedding_constant(p, q, &full_grid)?;
        metrics.push((format!("constant-halfgrid[{name}]"), v_half));
        metrics.push((format!("constant-fullgrid[{name}]"), v_full));
        let ok = if *carleson {
            labels.push((format!("expected[{name}]"), "plateau".into()));
            v_full <= F::of(1.1) * v_half
        } else {
            labels.push((format!("expected[{name}]"), "growing".into()));
            v_full >= F::of(1.5) * v_half
        };
        if !ok {
            all_ok = false;
        }
    }
    Ok(VerificationOutcome {
        scenario_id: "embedding-hastings".into(),
        passed: all_ok,
        tolerance: F::of(1.1),
        metrics,
        labels,
        inputs_digest: format!(
            "p={}; q={}; a-grids j=1..8 vs j=1..15",
            p.as_f64(),
            q.as_f64()
        ),
    })
}

fn scenario_integrability<F: Real>(
    params: &ScenarioParams<F>,
) -> Result<VerificationOutcome<F>, VerifyError> {
    let measures = chosen_measures(params, &[]);
    let alphas: Vec<F> = (1..=14).map(|i| F::of_usize(i) * F::of(0.25)).collect();
    let mut mismatches = 0usize;
    let mut checks = 0usize;
    for (_, m) in &measures {
        let min_beta = m
            .densities
            .iter()
            .map(|d| d.beta)
            .fold(F::infinity(), F::min);
        for &alpha in &alphas {
            let diverges = m.singular_integral(alpha).is_divergent();
            let expect = !m.densities.is_empty() && min_beta <= alpha;
            checks += 1;
            if diverges != expect {
                mismatches += 1;
            }
        }
    }
    Ok(VerificationOutcome {
        scenario_id: "lemma-4.1-integrability".into(),
        passed: mismatches == 0,
        tolerance: F::zero(),
        metrics: vec![
            ("checks".into(), F::of_usize(checks)),
            ("mismatches".into(), F::of_usize(mismatches)),
        ],
        labels: Vec::new(),
        inputs_digest: format!(
            "measures={:?}; alpha=0.25..3.5",
            measures.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>()
        ),
    })
}

fn scenario_conjecture_probe<F: Real>(
    params: &ScenarioParams<F>,
) -> Result<VerificationOutcome<F>, VerifyError> {
    let p = params.p.unwrap_or(F::of(4.0));
    if p <= F::of(2.0) {
        return Err(VerifyError::InvalidParameter(
            "conjecture-4.1-probe concerns p > 2".into(),
        ));
    }
    let (name, m) = params.measure.clone().unwrap_or_else(|| {
        (
            "beta-2".into(),
            RadialMeasure::density(F::one(), F::of(2.0), 0),
        )
    });
    let trunc = params.truncation.unwrap_or(512);
    let max_j = params.grid_j.unwrap_or(8);

    let mut metrics = Vec::new();
    let mut max_ratio = F::zero();
    for j in 1..=max_j {
        let a = F::one() - F::of(0.5f64.powi(j as i32));
        let mf = kernel_truncation_order(p, a);
        let f = test_function_f(p, a, mf);
        let moments = m.moments(trunc + mf)?;
        let image = dh_image_series(&moments.values, &f, trunc);
        let norm = image
            .hardy_norm(p, &PowerSeries::<F>::default_radius_grid())
            .value;
        metrics.push((format!("ratio[a=1-2^-{j}]"), norm));
        if norm > max_ratio {
            max_ratio = norm;
        }
    }
    metrics.push(("max-ratio".into(), max_ratio));
    Ok(VerificationOutcome {
        scenario_id: "conjecture-4.1-probe".into(),
        passed: true,
        tolerance: F::zero(),
        metrics,
        labels: vec![("status".into(), "informational".into())],
        inputs_digest: format!(
            "measure={name}; p={}; N={trunc}; a=1-2^-j, j=1..{max_j}",
            p.as_f64()
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::RadialMeasure;

    type M = RadialMeasure<f64>;
    fn cx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn pairing_trivial_constant_pair() {
        let m = M::atom(0.5, 1.0);
        let one = PowerSeries::from_real(&[1.0]);
        for &r in &[0.2, 0.5, 0.8] {
            let lhs = duality_pairing_lhs(&m, &one, &one, r, 1024).unwrap();
            assert!((lhs - cx(1.0, 0.0)).norm() < 1e-12, "r = {r}");
            let rhs = duality_pairing_rhs(&m, &one, &one, r).unwrap();
            assert!((rhs - cx(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn pairing_trivial_linear_g() {
        // f = 1, g = z, μ = δ_{0.5}, r = 0.5: both sides 0.5.
        let m = M::atom(0.5, 1.0);
        let f = PowerSeries::from_real(&[1.0]);
        let g = PowerSeries::from_real(&[0.0, 1.0]);
        let lhs = duality_pairing_lhs(&m, &f, &g, 0.5, 1024).unwrap();
        assert!((lhs - cx(0.5, 0.0)).norm() < 1e-12);
        let rhs = duality_pairing_rhs(&m, &f, &g, 0.5).unwrap();
        assert!((rhs - cx(0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn pairing_identity_on_a_density() {
        let m = M::density(1.0, 2.0, 0);
        let f = PowerSeries::new(vec![cx(0.5, -0.3), cx(0.0, 1.0), cx(0.25, 0.0)]);
        let g = PowerSeries::new(vec![cx(-1.0, 0.2), cx(0.7, 0.7), cx(0.0, -0.5)]);
        for &r in &[0.3, 0.6, 0.9] {
            let lhs = duality_pairing_lhs(&m, &f, &g, r, 4096).unwrap();
            let rhs = duality_pairing_rhs(&m, &f, &g, r).unwrap();
            assert!(
                (lhs - rhs).norm() <= 1e-8 * (1.0 + lhs.norm()),
                "r = {r}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn hilbert_basis_vector_and_zero() {
        let mut a = vec![cx(0.0, 0.0); 512];
        a[0] = cx(1.0, 0.0);
        let (lhs, rhs, ok) = hilbert_inequality_check(&a);
        assert!(ok);
        assert!((rhs - 1.0).abs() < 1e-15);
        // Σ 1/(n+1)² truncated stays below π²/6
        assert!(lhs < std::f64::consts::PI.powi(2) / 6.0);

        let zero = vec![cx(0.0, 0.0); 16];
        let (lhs, rhs, ok) = hilbert_inequality_check(&zero);
        assert!(ok && lhs == 0.0 && rhs == 0.0);
    }

    #[test]
    fn necessity_empty_tail_is_zero_zero() {
        let m = M::atom(0.5, 1.0);
        let (lhs, rhs) =
            necessity_functional(&m, 1.0, NecessityTarget::Hq { q_prime: 2.0 }, 0.9).unwrap();
        assert_eq!(lhs, 0.0);
        assert_eq!(rhs, 0.0);
    }

    #[test]
    fn necessity_lebesgue_h1_grows_comparably() {
        // Lebesgue, p = 1, H¹ target (E = 2): rhs grows; lhs keeps pace.
        let m = M::lebesgue();
        let mut prev_ratio: Option<f64> = None;
        for j in 1..=8u32 {
            let a = 1.0 - 0.5f64.powi(j as i32);
            let (lhs, rhs) = necessity_functional(&m, 1.0, NecessityTarget::H1, a).unwrap();
            assert!(lhs >= 0.0);
            assert!(rhs > 0.0);
            let ratio = lhs / rhs;
            assert!(ratio > 0.05, "j = {j}: ratio {ratio}");
            if let Some(p) = prev_ratio {
                assert!(ratio < 20.0 * p, "ratio wandering at j = {j}");
            }
            prev_ratio = Some(ratio);
        }
    }

    #[test]
    fn coefficient_decay_trivials() {
        let one = PowerSeries::from_real(&[1.0f64]);
        let (max_scaled, sum) = coefficient_decay_check(&one, 1.0);
        assert!((max_scaled - 1.0).abs() < 1e-15);
        assert!((sum - 1.0).abs() < 1e-15);

        // f_a with p = 2: Σ (1-a²) a^{2n} = 1 up to truncation.
        let a = 0.5f64;
        let f = test_function_f(2.0, a, kernel_truncation_order(2.0, a));
        let (_, sum) = coefficient_decay_check(&f, 2.0);
        assert!((sum - 1.0).abs() < 1e-10, "sum {sum}");
    }

    #[test]
    fn coefficient_decay_kernel_family_uniformly_bounded() {
        // p = 1 family: max |a_n| stays bounded by a constant in a.
        for &a in &[0.5f64, 0.9, 0.99] {
            let f = test_function_f(1.0, a, kernel_truncation_order(1.0, a));
            let (max_scaled, _) = coefficient_decay_check(&f, 1.0);
            assert!(max_scaled <= 1.0, "a = {a}: {max_scaled}");
        }
    }

    #[test]
    fn coefficient_decay_stable_under_doubled_truncation() {
        let a = 0.8f64;
        for &p in &[1.0f64, 2.0] {
            let m = kernel_truncation_order(p, a);
            let (s1, sum1) = coefficient_decay_check(&test_function_f(p, a, m), p);
            let (s2, sum2) = coefficient_decay_check(&test_function_f(p, a, 2 * m), p);
            assert!((s1 - s2).abs() <= 1e-10 * (1.0 + s1));
            assert!(
                (sum1 - sum2).abs() <= 1e-9 * (1.0 + sum1),
                "p={p}: {sum1} vs {sum2}"
            );
        }
    }

    #[test]
    fn unknown_scenario_is_an_error() {
        let r = run_scenario::<f64>("no-such-check", &ScenarioParams::default());
        assert!(matches!(r, Err(VerifyError::UnknownScenario(_))));
    }

    #[test]
    fn scenario_determinism() {
        let params = ScenarioParams::<f64> {
            trials: Some(25),
            truncation: Some(64),
            ..Default::default()
        };
        let a = run_scenario("hilbert-ineq", &params).unwrap();
        let b = run_scenario("hilbert-ineq", &params).unwrap();
        assert_eq!(a.passed, b.passed);
        for ((na, va), (nb, vb)) in a.metrics.iter().zip(&b.metrics) {
            assert_eq!(na, nb);
            assert_eq!(va.to_bits(), vb.to_bits(), "metric {na} not bit-identical");
        }
    }

    #[test]
    fn integrability_scenario_passes_on_corpus() {
        let out =
            run_scenario::<f64>("lemma-4.1-integrability", &ScenarioParams::default()).unwrap();
        assert!(out.passed, "{:?}", out.metrics);
    }

    #[test]
    fn necessity_scenarios_pass_at_critical_exponent() {
        for id in ["necessity-4.1-i", "necessity-4.1-ii", "necessity-4.1-iii"] {
            let out = run_scenario::<f64>(id, &ScenarioParams::default()).unwrap();
            assert!(out.passed, "{id}: {:?}", out.metrics);
        }
    }

    #[test]
    fn embedding_scenario_passes() {
        let out = run_scenario::<f64>("embedding-hastings", &ScenarioParams::default()).unwrap();
        assert!(out.passed, "{:?}", out.metrics);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(12))]

        #[test]
        fn pairing_identity_random_measures_and_polys(
            beta in 0.5f64..4.0,
            c in 0.2f64..2.0,
            atom_t in 0.0f64..0.95,
            seed in 0u64..1000,
            r_pick in 0usize..3,
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let rand_poly = |rng: &mut rand_chacha::ChaCha8Rng| {
                let d = rng.gen_range(1..=8usize);
                PowerSeries::new(
                    (0..=d)
                        .map(|_| cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                        .collect(),
                )
            };
            let f = rand_poly(&mut rng);
            let g = rand_poly(&mut rng);
            let m = M::density(c, beta, 0).with_atom(atom_t, 0.7);
            let r = [0.3, 0.6, 0.9][r_pick];
            let lhs = duality_pairing_lhs(&m, &f, &g, r, 1024).unwrap();
            let rhs = duality_pairing_rhs(&m, &f, &g, r).unwrap();
            proptest::prop_assert!(
                (lhs - rhs).norm() <= 1e-8 * (1.0 + lhs.norm()),
                "beta {} r {}: {} vs {}", beta, r, lhs, rhs
            );
        }
    }
}
