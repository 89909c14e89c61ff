//! Weighted Hankel truncations of the moment operators.
//!
//! With μ_n the moments of a radial measure, the N x N block
//! (w_n μ_{n+k}) is H_μ for unit weights and the derivative variant for
//! w_n = n+1. On H² the coefficient map is an isometry, so spectral norms
//! of nested truncations increase monotonically to the operator norm —
//! finite exactly when the operator is bounded. That turns the
//! boundedness/compactness dichotomies into two observable signatures:
//!
//! * norm profiles over doubling N: plateau vs growth;
//! * tail-block norms built from the restricted measure μ_r: decay to 0
//!   as r → 1 is the vanishing-Carleson (compactness-consistent) signature.
//!
//! Applying the matrix is a Hankel correlation b_n = Σ_k μ_{n+k} a_k, which
//! embeds into a circular convolution against the reversed input: with ã
//! the reversal of a, (μ * ã)[n + N - 1] = b_n. One FFT of the padded
//! moment vector is cached per matrix, giving the O(N log N) apply that the
//! N = 4096 profiles and the power iteration need. Weights are applied
//! after the correlation.

use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use thiserror::Error;

use crate::analytic::PowerSeries;
use crate::measure::{MeasureError, MomentSequence, RadialMeasure};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightScheme {
    /// w_n = 1: the plain Hankel operator H_μ.
    Unit,
    /// w_n = n + 1: the derivative variant.
    Derivative,
}

impl WeightScheme {
    pub fn weight<F: Real>(&self, n: usize) -> F {
        match self {
            WeightScheme::Unit => F::one(),
            WeightScheme::Derivative => F::of_usize(n + 1),
        }
    }
}

impl std::fmt::Display for WeightScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WeightScheme::Unit => write!(f, "unit"),
            WeightScheme::Derivative => write!(f, "derivative"),
        }
    }
}

#[derive(Debug, Error)]
pub enum OperatorError {
    #[error("need {need} moments for truncation order {order}, have {have}")]
    InsufficientMoments {
        order: usize,
        need: usize,
        have: usize,
    },
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

/// N x N truncation of (w_n μ_{n+k}).
#[derive(Debug, Clone)]
pub struct WeightedHankelMatrix<F: Real> {
    order: usize,
    scheme: WeightScheme,
    moments: Vec<F>,
}

impl<F: Real> WeightedHankelMatrix<F> {
    pub fn build(
        moments: &MomentSequence<F>,
        order: usize,
        scheme: WeightScheme,
    ) -> Result<Self, OperatorError> {
        assert!(order >= 1);
        let need = 2 * order - 1;
        if moments.len() < need {
            return Err(OperatorError::InsufficientMoments {
                order,
                need,
                have: moments.len(),
            });
        }
        Ok(Self {
            order,
            scheme,
            moments: moments.values[..need].to_vec(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn scheme(&self) -> WeightScheme {
        self.scheme
    }

    pub fn entry(&self, n: usize, k: usize) -> F {
        self.scheme.weight::<F>(n) * self.moments[n + k]
    }

    /// b_n = w_n Σ_k μ_{n+k} a_k, the O(N²) reference path.
    pub fn apply_naive(&self, a: &[Complex<F>]) -> Vec<Complex<F>> {
        assert_eq!(a.len(), self.order);
        (0..self.order)
            .map(|n| {
                let mut acc = Complex::new(F::zero(), F::zero());
                for (k, &ak) in a.iter().enumerate() {
                    acc += ak.scale(self.moments[n + k]);
                }
                acc.scale(self.scheme.weight::<F>(n))
            })
            .collect()
    }

    /// Fast path through the cached-FFT applier. Agrees with
    /// [`Self::apply_naive`] to ~1e-10 relative.
    pub fn apply(&self, a: &[Complex<F>]) -> Vec<Complex<F>> {
        self.fast_applier().apply(a)
    }

    pub fn fast_applier(&self) -> HankelApplier<F> {
        HankelApplier::new(self)
    }

    /// Largest singular value by power iteration on the Gram operator,
    /// using the fast apply. Every iterate is a certified lower bound;
    /// `converged` reports whether successive Rayleigh estimates settled
    /// within `tol` relative before the 10^4-iteration cap.
    pub fn spectral_norm(&self, tol: F) -> SpectralEstimate<F> {
        assert!(tol > F::zero());
        let n = self.order;
        let mut applier = self.fast_applier();
        let weights: Vec<F> = (0..n).map(|i| self.scheme.weight::<F>(i)).collect();

        // entrywise-nonnegative matrix: the all-ones direction has positive
        // overlap with the top singular vector
        let mut v: Vec<F> = vec![F::of_usize(n).sqrt().recip(); n];
        let mut estimate = F::zero();
        let max_iters = 10_000usize;
        for it in 1..=max_iters {
            // A v = W (H v)
            let mut av = applier.correlate_real(&v);
            for (x, w) in av.iter_mut().zip(&weights) {
                *x *= *w;
            }
            let norm_av = l2_norm(&av);
            if norm_av == F::zero() {
                return SpectralEstimate {
                    value: F::zero(),
                    iterations: it,
                    converged: true,
                };
            }
            // Aᵀ(Av) = H (W Av)
            for (x, w) in av.iter_mut().zip(&weights) {
                *x *= *w;
            }
            let z = applier.correlate_real(&av);

            let prev = estimate;
            estimate = norm_av; // ||A v|| with ||v|| = 1
            if it > 1 && (estimate - prev).abs() <= tol * estimate {
                return SpectralEstimate {
                    value: estimate,
                    iterations: it,
                    converged: true,
                };
            }
            let norm_z = l2_norm(&z);
            if norm_z == F::zero() {
                return SpectralEstimate {
                    value: estimate,
                    iterations: it,
                    converged: true,
                };
            }
            v = z;
            let inv = norm_z.recip();
            for x in &mut v {
                *x *= inv;
            }
        }
        SpectralEstimate {
            value: estimate,
            iterations: max_iters,
            converged: false,
        }
    }
}

fn l2_norm<F: Real>(v: &[F]) -> F {
    v.iter().map(|&x| x * x).sum::<F>().sqrt()
}

/// Reusable FFT state for one matrix: the padded moment spectrum plus
/// forward/inverse plans and scratch.
pub struct HankelApplier<F: Real> {
    order: usize,
    len: usize,
    spectrum: Vec<Complex<F>>,
    weights: Vec<F>,
    fft: Arc<dyn Fft<F>>,
    ifft: Arc<dyn Fft<F>>,
    scratch: Vec<Complex<F>>,
}

impl<F: Real> HankelApplier<F> {
    fn new(matrix: &WeightedHankelMatrix<F>) -> Self {
        let order = matrix.order;
        let len = (3 * order - 2).next_power_of_two();
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(len);
        let ifft = planner.plan_fft_inverse(len);

        let mut spectrum = vec![Complex::new(F::zero(), F::zero()); len];
        for (i, &m) in matrix.moments.iter().enumerate() {
            spectrum[i] = Complex::new(m, F::zero());
        }
        let scratch_len = fft
            .get_inplace_scratch_len()
            .max(ifft.get_inplace_scratch_len());
        let mut scratch = vec![Complex::new(F::zero(), F::zero()); scratch_len];
        fft.process_with_scratch(&mut spectrum, &mut scratch);

        let weights = (0..order).map(|i| matrix.scheme.weight::<F>(i)).collect();
        Self {
            order,
            len,
            spectrum,
            weights,
            fft,
            ifft,
            scratch,
        }
    }

    /// Hankel correlation only: out_n = Σ_k μ_{n+k} a_k (no weights).
    pub fn correlate(&mut self, a: &[Complex<F>]) -> Vec<Complex<F>> {
        assert_eq!(a.len(), self.order);
        let n = self.order;
        let mut buf = vec![Complex::new(F::zero(), F::zero()); self.len];
        for (i, &c) in a.iter().enumerate() {
            buf[n - 1 - i] = c; // reversed input
        }
        self.fft.process_with_scratch(&mut buf, &mut self.scratch);
        for (b, s) in buf.iter_mut().zip(&self.spectrum) {
            *b *= *s;
        }
        self.ifft.process_with_scratch(&mut buf, &mut self.scratch);
        let inv_len = F::of_usize(self.len).recip();
        buf[n - 1..2 * n - 1]
            .iter()
            .map(|c| c.scale(inv_len))
            .collect()
    }

    /// Real-vector correlation (power-iteration path).
    pub fn correlate_real(&mut self, a: &[F]) -> Vec<F> {
        let complex: Vec<Complex<F>> = a.iter().map(|&x| Complex::new(x, F::zero())).collect();
        self.correlate(&complex).iter().map(|c| c.re).collect()
    }

    /// Full weighted apply b = W (H a).
    pub fn apply(&mut self, a: &[Complex<F>]) -> Vec<Complex<F>> {
        let mut out = self.correlate(a);
        for (x, w) in out.iter_mut().zip(&self.weights) {
            *x = x.scale(*w);
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SpectralEstimate<F> {
    pub value: F,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthVerdict {
    Plateau,
    Growing,
    Inconclusive,
}

impl std::fmt::Display for GrowthVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GrowthVerdict::Plateau => write!(f, "plateau"),
            GrowthVerdict::Growing => write!(f, "growing"),
            GrowthVerdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Spectral norms of nested truncations and the growth classification.
#[derive(Debug, Clone)]
pub struct NormProfile<F> {
    pub orders: Vec<usize>,
    pub norms: Vec<F>,
    pub ratios: Vec<F>,
    pub growth_verdict: GrowthVerdict,
}

/// Spectral norms over increasing truncation orders (typically doubling).
/// Plateau means the final ratio fell below 1.02; growing means each of
/// the last three ratios exceeded 1.05; the gap zone is inconclusive.
pub fn norm_profile<F: Real>(
    m: &RadialMeasure<F>,
    scheme: WeightScheme,
    orders: &[usize],
    tol: F,
) -> Result<NormProfile<F>, OperatorError> {
    assert!(!orders.is_empty());
    assert!(
        orders.windows(2).all(|w| w[0] < w[1]),
        "orders must increase"
    );
    let max_order = *orders.last().unwrap();
    let moments = m.moments(2 * max_order - 1)?;
    let mut norms = Vec::with_capacity(orders.len());
    for &order in orders {
        let matrix = WeightedHankelMatrix::build(&moments, order, scheme)?;
        norms.push(matrix.spectral_norm(tol).value);
    }
    let ratios: Vec<F> = norms.windows(2).map(|w| w[1] / w[0]).collect();
    let growth_verdict = classify_growth(&ratios);
    Ok(NormProfile {
        orders: orders.to_vec(),
        norms,
        ratios,
        growth_verdict,
    })
}

fn classify_growth<F: Real>(ratios: &[F]) -> GrowthVerdict {
    if ratios.is_empty() {
        return GrowthVerdict::Inconclusive;
    }
    let last = *ratios.last().unwrap();
    let tail = &ratios[ratios.len().saturating_sub(3)..];
    if last < F::of(1.02) {
        GrowthVerdict::Plateau
    } else if tail.iter().all(|&r| r > F::of(1.05)) {
        GrowthVerdict::Growing
    } else {
        GrowthVerdict::Inconclusive
    }
}

/// Spectral norms of the N-truncation built from μ_r for each r. A decay
/// to 0 as r → 1 is the numerical signature of vanishing-Carleson
/// (compactness-consistent) behaviour.
pub fn tail_block_norm<F: Real>(
    m: &RadialMeasure<F>,
    scheme: WeightScheme,
    order: usize,
    r_list: &[F],
    tol: F,
) -> Result<Vec<(F, F)>, OperatorError> {
    let mut out = Vec::with_capacity(r_list.len());
    for &r in r_list {
        let restricted = m.restrict_tail(r);
        if restricted.is_empty() || restricted.total_mass() == F::zero() {
            out.push((r, F::zero()));
            continue;
        }
        let moments = restricted.moments(2 * order - 1)?;
        let matrix = WeightedHankelMatrix::build(&moments, order, scheme)?;
        out.push((r, matrix.spectral_norm(tol).value));
    }
    Ok(out)
}

/// The kernel-integral form: ∫ f(t) / (1 - t z)^alpha dμ(t), |z| < 1.
/// Atoms sum exactly; densities go through the graded quadrature.
pub fn apply_integral<F: Real>(
    m: &RadialMeasure<F>,
    f: &PowerSeries<F>,
    z: Complex<F>,
    alpha: u32,
) -> Result<Complex<F>, MeasureError> {
    assert!(alpha >= 1);
    assert!(z.norm() < F::one());
    let phi = |t: F| {
        let denom = (Complex::new(F::one(), F::zero()) - z.scale(t)).powu(alpha);
        f.eval_real(t) / denom
    };
    m.integrate_complex(phi)
}

/// Max over the z grid of |Σ_{n<N} (n+1)(Σ_k μ_{n+k} a_k) z^n - I_2(f)(z)|.
/// A small gap certifies the series and kernel forms of the derivative
/// operator agree on f.
pub fn representation_gap<F: Real>(
    m: &RadialMeasure<F>,
    f: &PowerSeries<F>,
    z_grid: &[Complex<F>],
    order: usize,
) -> Result<F, OperatorError> {
    if m.is_empty() {
        return Ok(F::zero());
    }
    let coeffs = f.coeffs();
    let moments = m.moments(order + coeffs.len() - 1)?;
    let series: Vec<Complex<F>> = (0..order)
        .map(|n| {
            let mut acc = Complex::new(F::zero(), F::zero());
            for (k, &ak) in coeffs.iter().enumerate() {
                acc += ak.scale(moments.values[n + k]);
            }
            acc.scale(F::of_usize(n + 1))
        })
        .collect();
    let truncated = PowerSeries::new(series);
    let mut gap = F::zero();
    for &z in z_grid {
        let lhs = truncated.eval(z);
        let rhs = apply_integral(m, f, z, 2)?;
        let d = (lhs - rhs).norm();
        if d > gap {
            gap = d;
        }
    }
    Ok(gap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::measure::standard_corpus;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type M = RadialMeasure<f64>;

    fn cx(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn build_hilbert_block() {
        // Lebesgue moments go through log-gamma, exact to ~1e-15 relative.
        let moments = M::lebesgue().moments(3).unwrap();
        let h = WeightedHankelMatrix::build(&moments, 2, WeightScheme::Unit).unwrap();
        assert!((h.entry(0, 0) - 1.0).abs() < 1e-14);
        assert!((h.entry(0, 1) - 0.5).abs() < 1e-14);
        assert!((h.entry(1, 0) - 0.5).abs() < 1e-14);
        assert!((h.entry(1, 1) - 1.0 / 3.0).abs() < 1e-14);

        let d = WeightedHankelMatrix::build(&moments, 2, WeightScheme::Derivative).unwrap();
        assert!((d.entry(1, 0) - 1.0).abs() < 1e-14);
        assert!((d.entry(1, 1) - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn build_atom_block_and_insufficient_moments() {
        let moments = M::atom(0.5, 1.0).moments(3).unwrap();
        let h = WeightedHankelMatrix::build(&moments, 2, WeightScheme::Unit).unwrap();
        assert_eq!(h.entry(0, 1), 0.5);
        assert_eq!(h.entry(1, 1), 0.25);
        assert!(matches!(
            WeightedHankelMatrix::build(&moments, 3, WeightScheme::Unit),
            Err(OperatorError::InsufficientMoments { .. })
        ));
    }

    #[test]
    fn apply_unit_vector_reads_column() {
        let moments = M::atom(0.5, 1.0).moments(5).unwrap();
        let d = WeightedHankelMatrix::build(&moments, 3, WeightScheme::Derivative).unwrap();
        let e0 = vec![cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0)];
        let b = d.apply_naive(&e0);
        // (1, 2·0.5, 3·0.25)
        assert!((b[0].re - 1.0).abs() < 1e-15);
        assert!((b[1].re - 1.0).abs() < 1e-15);
        assert!((b[2].re - 0.75).abs() < 1e-15);
    }

    #[test]
    fn hankel_structure_depends_on_index_sum() {
        let moments = M::density(1.0, 1.5, 0).moments(31).unwrap();
        let h = WeightedHankelMatrix::build(&moments, 16, WeightScheme::Derivative).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.gen_range(0..16usize);
            let k = rng.gen_range(0..16usize);
            let n2 = rng.gen_range(0..=(n + k).min(15));
            let k2 = n + k - n2;
            if k2 > 15 {
                continue;
            }
            let lhs = h.entry(n, k) / (n as f64 + 1.0);
            let rhs = h.entry(n2, k2) / (n2 as f64 + 1.0);
            assert!((lhs - rhs).abs() < 1e-15);
        }
    }

    #[test]
    fn fast_apply_matches_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for &n in &[16usize, 256, 1024] {
            let moments = M::density(1.0, 2.0, 0).moments(2 * n - 1).unwrap();
            for scheme in [WeightScheme::Unit, WeightScheme::Derivative] {
                let h = WeightedHankelMatrix::build(&moments, n, scheme).unwrap();
                let a: Vec<Complex<f64>> = (0..n)
                    .map(|_| cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                let naive = h.apply_naive(&a);
                let fast = h.apply(&a);
                let scale = naive.iter().map(|c| c.norm()).fold(1e-300, f64::max);
                let err = naive
                    .iter()
                    .zip(&fast)
                    .map(|(x, y)| (x - y).norm())
                    .fold(0.0, f64::max);
                assert!(
                    err / scale < 1e-10,
                    "N = {n} {scheme}: rel err {}",
                    err / scale
                );
            }
        }
    }

    #[test]
    fn spectral_norm_scalar_and_rank_one() {
        let moments = M::lebesgue().moments(1).unwrap();
        let h = WeightedHankelMatrix::build(&moments, 1, WeightScheme::Unit).unwrap();
        let est = h.spectral_norm(1e-10);
        assert!((est.value - 1.0).abs() < 1e-10);

        // δ_0: μ_0 = 1, μ_n = 0 → one-corner matrix, norm 1.
        let moments = M::atom(0.0, 1.0).moments(15).unwrap();
        let h = WeightedHankelMatrix::build(&moments, 8, WeightScheme::Unit).unwrap();
        let est = h.spectral_norm(1e-10);
        assert!((est.value - 1.0).abs() < 1e-9, "{}", est.value);
    }

    #[test]
    fn hilbert_matrix_norm_approaches_pi() {
        // Classical Hilbert matrix: truncation norms increase with N and
        // stay below the operator norm π, which they approach only
        // logarithmically. Brute-force eigenvalues freeze the N = 64
        // value at 2.11608...; N = 512 sits near 2.38.
        let moments = M::lebesgue().moments(1023).unwrap();
        let mut prev = 0.0f64;
        let mut last = 0.0f64;
        for &n in &[64usize, 256, 512] {
            let h = WeightedHankelMatrix::build(&moments, n, WeightScheme::Unit).unwrap();
            let est = h.spectral_norm(1e-8);
            assert!(est.value > prev - 1e-9, "monotone in N");
            assert!(est.value < std::f64::consts::PI);
            prev = est.value;
            if n == 64 {
                assert!(
                    (est.value - 2.116_080_858_571).abs() < 1e-6,
                    "N = 64: {}",
                    est.value
                );
            }
            last = est.value;
        }
        assert!(last > 2.3, "N = 512 estimate {last}");
    }

    #[test]
    fn spectral_norm_matches_jacobi_at_small_order() {
        // Cross-check the power iteration against dense symmetric
        // eigenvalues of the Gram matrix AᵀA at N = 64.
        let n = 64usize;
        for (name, m) in standard_corpus::<f64>() {
            let moments = m.moments(2 * n - 1).unwrap();
            let h = WeightedHankelMatrix::build(&moments, n, WeightScheme::Derivative).unwrap();
            let mut gram = vec![0.0f64; n * n];
            for i in 0..n {
                for j in 0..n {
                    let mut acc = 0.0;
                    for r in 0..n {
                        acc += h.entry(r, i) * h.entry(r, j);
                    }
                    gram[i * n + j] = acc;
                }
            }
            let eig = linalg::symmetric_eigenvalues(&gram, n);
            let sigma = eig.last().unwrap().max(0.0).sqrt();
            let est = h.spectral_norm(1e-10);
            assert!(
                (est.value - sigma).abs() <= 1e-6 * sigma.max(1.0),
                "{name}: power {} vs jacobi {sigma}",
                est.value
            );
        }
    }

    #[test]
    fn apply_integral_examples() {
        let one = PowerSeries::from_real(&[1.0]);
        // δ_{0.5}, α = 2: 1/(1 - z/2)².
        let m = M::atom(0.5, 1.0);
        let v = apply_integral(&m, &one, cx(0.0, 0.0), 2).unwrap();
        assert!((v.re - 1.0).abs() < 1e-14);
        let z = cx(0.3, 0.4);
        let expect = (cx(1.0, 0.0) - z.scale(0.5)).powu(2).inv();
        assert!((apply_integral(&m, &one, z, 2).unwrap() - expect).norm() < 1e-13);

        // Lebesgue, α = 1, z = 0 → total mass 1.
        let v = apply_integral(&M::lebesgue(), &one, cx(0.0, 0.0), 1).unwrap();
        assert!((v.re - 1.0).abs() < 1e-11);
    }

    #[test]
    fn apply_integral_matches_riemann_oracle() {
        // Lebesgue, α = 2, z = 0.5: ∫ (1 - t/2)^{-2} dt, frozen against a
        // 10^6-point midpoint sum (= 2 analytically).
        let steps = 1_000_000usize;
        let h = 1.0 / steps as f64;
        let mut oracle = 0.0f64;
        for i in 0..steps {
            let t = (i as f64 + 0.5) * h;
            oracle += (1.0 - 0.5 * t).powi(-2);
        }
        oracle *= h;
        let one = PowerSeries::from_real(&[1.0]);
        let v = apply_integral(&M::lebesgue(), &one, cx(0.5, 0.0), 2).unwrap();
        assert!((v.re - oracle).abs() < 1e-8, "{} vs {}", v.re, oracle);
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn representation_gap_examples() {
        let z_grid: Vec<Complex<f64>> = (0..8)
            .map(|k| Complex::from_polar(0.9, std::f64::consts::TAU * k as f64 / 8.0))
            .collect();
        let one = PowerSeries::from_real(&[1.0]);
        let gap = representation_gap(&M::atom(0.5, 1.0), &one, &z_grid, 200).unwrap();
        assert!(gap <= 1e-8, "atom gap {gap}");

        let id = PowerSeries::from_real(&[0.0, 1.0]);
        let gap = representation_gap(&M::lebesgue(), &id, &z_grid, 400).unwrap();
        assert!(gap <= 1e-6, "lebesgue gap {gap}");

        let gap = representation_gap(&M::empty(), &one, &z_grid, 100).unwrap();
        assert_eq!(gap, 0.0);
    }

    #[test]
    fn representation_gap_halves_with_doubled_order() {
        let z_grid = [cx(0.9, 0.0)];
        let f = PowerSeries::from_real(&[1.0, 0.5]);
        let m = M::atom(0.9, 1.0);
        let g1 = representation_gap(&m, &f, &z_grid, 50).unwrap();
        let g2 = representation_gap(&m, &f, &z_grid, 100).unwrap();
        assert!(g2 < 0.5 * g1, "{g2} vs {g1}");
    }

    #[test]
    fn norm_profile_verdicts_small() {
        let orders = [32usize, 64, 128, 256];
        // beta = 3: vanishing 2-Carleson, norms plateau.
        let p = norm_profile(
            &M::density(1.0, 3.0, 0),
            WeightScheme::Derivative,
            &orders,
            1e-8,
        )
        .unwrap();
        assert_eq!(p.growth_verdict, GrowthVerdict::Plateau, "{:?}", p.norms);
        assert!(p.norms.windows(2).all(|w| w[1] >= w[0] - 1e-9));
    }

    #[test]
    fn tail_block_empty_measure_is_zero() {
        let blocks = tail_block_norm(
            &M::atom(0.5, 1.0),
            WeightScheme::Derivative,
            64,
            &[0.9],
            1e-8,
        )
        .unwrap();
        assert_eq!(blocks[0].1, 0.0);
    }

    #[test]
    fn derivative_norms_respect_hilbert_ceiling() {
        // For 2-Carleson μ the entrywise bound μ_n ≤ K/(n+1)² composed with
        // the Hilbert inequality caps the spectral norm by π·K.
        let m = M::density(1.0, 2.0, 0);
        for &n in &[64usize, 256] {
            let moments = m.moments(2 * n - 1).unwrap();
            let k = moments.max_weighted_square();
            let h = WeightedHankelMatrix::build(&moments, n, WeightScheme::Derivative).unwrap();
            let est = h.spectral_norm(1e-9);
            assert!(
                est.value <= std::f64::consts::PI * k * (1.0 + 1e-9),
                "N = {n}: {} vs ceiling {}",
                est.value,
                std::f64::consts::PI * k
            );
        }
    }
}
