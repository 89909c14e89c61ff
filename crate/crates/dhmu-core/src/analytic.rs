//! Truncated analytic functions on the unit disk.
//!
//! [`PowerSeries`] is a finite coefficient list a_0..a_M. Everything the
//! verification layer needs reduces to evaluating such polynomials on
//! circles |z| = r and averaging |f|^p:
//!
//! * integral means M_p(r, f) and Hardy norms sup_r M_p(r, f),
//! * the B_q integral ∫ (1-r)^{1/q-2} M_1(r, f) dr for 0 < q < 1,
//! * Bloch and BMOA-type seminorms built from f' and Möbius compositions,
//! * the reproducing-kernel test families used to witness Carleson
//!   necessity: f_a = ((1-a²)/(1-az)²)^{1/p} and its companions.
//!
//! Circle sampling folds the coefficients modulo the sample count and runs
//! one FFT, which evaluates the polynomial exactly (up to roundoff) on the
//! whole equispaced grid regardless of degree. Means over that grid are
//! trapezoidal means of a periodic function, so they converge spectrally.

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::quad::{self, Tolerance};
use crate::scalar::Real;

/// A truncated power series Σ a_k z^k with complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<F: Real> {
    coeffs: Vec<Complex<F>>,
}

/// Result of a Hardy-norm estimate over a radius grid.
///
/// For p = 2 the value is the coefficient form at the r → 1 limit (the
/// true sup for a polynomial); for other p it is the sampled mean at the
/// largest grid radius. `monotone_ok` records whether M_p(r, f) was
/// nondecreasing across the grid up to 1e-9 slack (Hardy convexity).
#[derive(Debug, Clone)]
pub struct NormEstimate<F: Real> {
    pub value: F,
    pub p_or_q: F,
    pub r_grid: Vec<F>,
    pub monotone_ok: bool,
}

/// The dual-side test families g_a.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GKind<F> {
    /// g_a(z) = log(e / (1 - a z))
    Log,
    /// g_a(z) = (1 - a²) / (1 - a z)
    Cauchy,
    /// g_a(z) = ((1 - a²) / (1 - a z)²)^{1/q'}
    Power { q_prime: F },
}

impl<F: Real> PowerSeries<F> {
    pub fn new(coeffs: Vec<Complex<F>>) -> Self {
        let coeffs = if coeffs.is_empty() {
            vec![Complex::new(F::zero(), F::zero())]
        } else {
            coeffs
        };
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[F]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, F::zero())).collect())
    }

    pub fn monomial(degree: usize) -> Self {
        let mut coeffs = vec![Complex::new(F::zero(), F::zero()); degree + 1];
        coeffs[degree] = Complex::new(F::one(), F::zero());
        Self { coeffs }
    }

    /// Geometric coefficients a_k = ratio^k, k = 0..=order.
    pub fn geometric(ratio: F, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = F::one();
        for _ in 0..=order {
            coeffs.push(Complex::new(c, F::zero()));
            c *= ratio;
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex<F>] {
        &self.coeffs
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation of the truncated sum.
    pub fn eval(&self, z: Complex<F>) -> Complex<F> {
        let mut acc = Complex::new(F::zero(), F::zero());
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn eval_real(&self, t: F) -> Complex<F> {
        self.eval(Complex::new(t, F::zero()))
    }

    /// Coefficients (k+1) a_{k+1}.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::new(vec![Complex::new(F::zero(), F::zero())]);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * Complex::new(F::of_usize(k), F::zero()))
            .collect();
        Self { coeffs }
    }

    pub fn add_constant(&self, c: Complex<F>) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += c;
        Self { coeffs }
    }

    /// Values of f on the equispaced grid of the circle |z| = r.
    ///
    /// Returns the multiset { f(r e^{-2πi j/k}) }, which is the same point
    /// set as the +θ grid; means of |f|^p over it equal the grid means.
    pub fn circle_samples(&self, r: F, k: usize) -> Vec<Complex<F>> {
        assert!(k >= 1);
        let mut buf = vec![Complex::new(F::zero(), F::zero()); k];
        let mut rp = F::one();
        for (j, &c) in self.coeffs.iter().enumerate() {
            buf[j % k] += c * Complex::new(rp, F::zero());
            rp *= r;
        }
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(k);
        fft.process(&mut buf);
        buf
    }

    /// Trapezoidal estimate of M_p(r, f) from `k` equispaced samples.
    pub fn circle_mean(&self, p: F, r: F, k: usize) -> F {
        assert!(p > F::zero());
        let samples = self.circle_samples(r, k);
        let half_p = p * F::of(0.5);
        let mean = samples.iter().map(|s| s.norm_sqr().powf(half_p)).sum::<F>() / F::of_usize(k);
        mean.powf(p.recip())
    }

    /// The exact p = 2 mean (Σ |a_k|² r^{2k})^{1/2}.
    pub fn circle_mean_l2_coeff(&self, r: F) -> F {
        let r2 = r * r;
        let mut rp = F::one();
        let mut acc = F::zero();
        for c in &self.coeffs {
            acc += c.norm_sqr() * rp;
            rp *= r2;
        }
        acc.sqrt()
    }

    /// Doubles the sample count from 4096 until two successive estimates
    /// agree to 1e-9 (cap 2^16).
    pub fn circle_mean_adaptive(&self, p: F, r: F) -> F {
        let mut k = 4096usize;
        let mut prev = self.circle_mean(p, r, k);
        while k < (1 << 16) {
            k *= 2;
            let next = self.circle_mean(p, r, k);
            if (next - prev).abs() < F::of(1e-9) * (F::one() + next.abs()) {
                return next;
            }
            prev = next;
        }
        prev
    }

    /// Default radius grid 1 - 2^{-j}, j = 1..=12.
    pub fn default_radius_grid() -> Vec<F> {
        (1..=12u32)
            .map(|j| F::one() - F::of(0.5f64.powi(j as i32)))
            .collect()
    }

    /// Hardy-norm estimate over the radius grid.
    pub fn hardy_norm(&self, p: F, r_grid: &[F]) -> NormEstimate<F> {
        assert!(p > F::zero());
        assert!(!r_grid.is_empty());
        let two = F::of(2.0);
        let means: Vec<F> = if p == two {
            r_grid
                .iter()
                .map(|&r| self.circle_mean_l2_coeff(r))
                .collect()
        } else {
            r_grid
                .iter()
                .map(|&r| self.circle_mean(p, r, 4096))
                .collect()
        };
        let slack = F::of(1e-9);
        let monotone_ok = means
            .windows(2)
            .all(|w| w[1] >= w[0] - slack * (F::one() + w[0].abs()));
        let value = if p == two {
            // The sup over r < 1 of a polynomial's mean is its limit at the
            // boundary, which for p = 2 is the plain coefficient l2 norm.
            self.circle_mean_l2_coeff(F::one())
        } else {
            let r_max = r_grid.iter().cloned().fold(F::neg_infinity(), F::max);
            self.circle_mean_adaptive(p, r_max)
        };
        NormEstimate {
            value,
            p_or_q: p,
            r_grid: r_grid.to_vec(),
            monotone_ok,
        }
    }

    /// ||f||_{B_q} = ∫_0^1 (1-r)^{1/q-2} M_1(r, f) dr for 0 < q < 1.
    ///
    /// Substituting r = 1 - e^{-u} gives ∫_0^∞ e^{-(1/q-1)u} M_1(...) du,
    /// integrable since 1/q - 1 > 0.
    pub fn bq_norm(&self, q: F) -> Result<F, quad::QuadError> {
        assert!(q > F::zero() && q < F::one(), "bq_norm needs 0 < q < 1");
        let decay = q.recip() - F::one();
        let upper = F::of(45.0) / decay;
        quad::adaptive(
            |u: F| {
                let r = F::one() - (-u).exp();
                (-decay * u).exp() * self.circle_mean(F::one(), r, 1024)
            },
            F::zero(),
            upper,
            Tolerance::sampled(),
        )
    }

    /// |f(0)| + sup (1-r²)|f'(z)| over a radius/angle grid.
    ///
    /// The dyadic radii alone miss suprema attained at moderate radii
    /// (f = z peaks at r = 0), so the grid is augmented with k/16.
    pub fn bloch_norm(&self) -> F {
        let deriv = self.derivative();
        let mut radii: Vec<F> = (0..16).map(|k| F::of_usize(k) / F::of(16.0)).collect();
        radii.extend(Self::default_radius_grid());
        let angles = 64.max((deriv.coeffs.len() + 1).next_power_of_two());
        let mut sup = F::zero();
        for &r in &radii {
            let factor = F::one() - r * r;
            for s in deriv.circle_samples(r, angles) {
                let v = factor * s.norm();
                if v > sup {
                    sup = v;
                }
            }
        }
        self.coeffs[0].norm() + sup
    }

    /// sup over the real probe grid of || f∘φ_a - f(a) ||_{H²}, with
    /// φ_a(z) = (a - z)/(1 - a z), sampled on the circle of radius
    /// 1 - 2^{-10}.
    pub fn bmoa_seminorm(&self, a_grid: &[F]) -> F {
        let rho = F::one() - F::of(0.5f64.powi(10));
        let k = 2048usize;
        let mut sup = F::zero();
        for &a in a_grid {
            let fa = self.eval_real(a);
            let mut acc = F::zero();
            for j in 0..k {
                let theta = F::TAU() * F::of_usize(j) / F::of_usize(k);
                let z = Complex::from_polar(rho, theta);
                let w = (Complex::new(a, F::zero()) - z)
                    / (Complex::new(F::one(), F::zero()) - z.scale(a));
                acc += (self.eval(w) - fa).norm_sqr();
            }
            let h2 = (acc / F::of_usize(k)).sqrt();
            if h2 > sup {
                sup = h2;
            }
        }
        sup
    }
}

/// Truncation order that drops coefficient mass below ~1e-13 for the
/// kernel families generated by `a`: smallest M with (M+1)^g a^M < 1e-13,
/// g the polynomial growth exponent max(2/p - 1, 0).
pub fn kernel_truncation_order<F: Real>(p: F, a: F) -> usize {
    let growth = (F::of(2.0) / p - F::one()).max(F::zero());
    let tiny = F::of(1e-13);
    let mut m = 8usize;
    while m < (1 << 16) {
        let bound = F::of_usize(m + 1).powf(growth) * a.powi(m as i32);
        if bound < tiny {
            return m;
        }
        m += m / 4 + 1;
    }
    1 << 16
}

/// The normalized kernel family f_a = ((1-a²)/(1-az)²)^{1/p}, truncated at
/// order `m`. Coefficients come from the binomial recurrence
/// c_{k+1} = c_k (k + 2/p)/(k+1) · a, never from pointwise fractional
/// powers, so there is no branch-cut ambiguity.
pub fn test_function_f<F: Real>(p: F, a: F, m: usize) -> PowerSeries<F> {
    assert!(p > F::zero());
    assert!(a > F::zero() && a < F::one());
    let s = F::of(2.0) / p;
    let norm = (F::one() - a * a).powf(p.recip());
    let mut coeffs = Vec::with_capacity(m + 1);
    let mut c = norm;
    for k in 0..=m {
        coeffs.push(Complex::new(c, F::zero()));
        let kf = F::of_usize(k);
        c = c * (kf + s) / (kf + F::one()) * a;
    }
    PowerSeries::new(coeffs)
}

/// The dual-side families g_a used in the pairing lower bounds.
pub fn test_function_g<F: Real>(kind: GKind<F>, a: F, m: usize) -> PowerSeries<F> {
    assert!(a > F::zero() && a < F::one());
    match kind {
        GKind::Log => {
            // log(e/(1-az)) = 1 + Σ_{k≥1} (a^k / k) z^k
            let mut coeffs = Vec::with_capacity(m + 1);
            coeffs.push(Complex::new(F::one(), F::zero()));
            let mut ap = F::one();
            for k in 1..=m {
                ap *= a;
                coeffs.push(Complex::new(ap / F::of_usize(k), F::zero()));
            }
            PowerSeries::new(coeffs)
        }
        GKind::Cauchy => {
            let norm = F::one() - a * a;
            let mut coeffs = Vec::with_capacity(m + 1);
            let mut c = norm;
            for _ in 0..=m {
                coeffs.push(Complex::new(c, F::zero()));
                c *= a;
            }
            PowerSeries::new(coeffs)
        }
        GKind::Power { q_prime } => test_function_f(q_prime, a, m),
    }
}
