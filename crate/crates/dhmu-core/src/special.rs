//! Special functions: log-gamma, the Beta function and the regularized
//! incomplete Beta integral.
//!
//! `ln_gamma` uses the Stirling series with Bernoulli coefficients through
//! B14 after shifting the argument above 15, which keeps every coefficient
//! an exact rational and the relative error at machine level. That matters:
//! closed-form moments are Beta-function differences of log-gammas up to
//! arguments of order 10^4, and they are cross-checked against quadrature
//! at 1e-10 relative.

use crate::scalar::Real;

/// Natural log of the Gamma function for `x > 0`.
pub fn ln_gamma<F: Real>(x: F) -> F {
    assert!(x > F::zero(), "ln_gamma requires a positive argument");
    let threshold = F::of(15.0);
    let mut shift = F::zero();
    let mut y = x;
    while y < threshold {
        shift += y.ln();
        y += F::one();
    }
    // Stirling: (y - 1/2) ln y - y + ln(2π)/2 + Σ B_{2n} / (2n(2n-1) y^{2n-1}).
    let half_ln_two_pi = F::of(0.918_938_533_204_672_7);
    let inv = y.recip();
    let inv2 = inv * inv;
    let series = inv
        * (F::of(1.0 / 12.0)
            + inv2
                * (F::of(-1.0 / 360.0)
                    + inv2
                        * (F::of(1.0 / 1260.0)
                            + inv2
                                * (F::of(-1.0 / 1680.0)
                                    + inv2
                                        * (F::of(1.0 / 1188.0)
                                            + inv2
                                                * (F::of(-691.0 / 360_360.0)
                                                    + inv2 * F::of(1.0 / 156.0)))))));
    (y - F::of(0.5)) * y.ln() - y + half_ln_two_pi + series - shift
}

/// Beta function B(a, b) = Γ(a)Γ(b)/Γ(a+b), for positive arguments.
pub fn beta_fn<F: Real>(a: F, b: F) -> F {
    ln_beta(a, b).exp()
}

pub fn ln_beta<F: Real>(a: F, b: F) -> F {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// Regularized incomplete Beta integral I_x(a, b).
///
/// Continued-fraction evaluation (modified Lentz), switching to the
/// symmetric form `1 - I_{1-x}(b, a)` past the crossover point so the
/// fraction always converges quickly.
pub fn reg_inc_beta<F: Real>(a: F, b: F, x: F) -> F {
    assert!(
        a > F::zero() && b > F::zero(),
        "reg_inc_beta needs a, b > 0"
    );
    assert!(
        x >= F::zero() && x <= F::one(),
        "reg_inc_beta needs x in [0, 1]"
    );
    if x == F::zero() {
        return F::zero();
    }
    if x == F::one() {
        return F::one();
    }
    let one = F::one();
    let ln_bt = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (one - x).ln();
    let bt = ln_bt.exp();
    if x < (a + one) / (a + b + F::of(2.0)) {
        bt * beta_cf(a, b, x) / a
    } else {
        one - bt * beta_cf(b, a, one - x) / b
    }
}

fn beta_cf<F: Real>(a: F, b: F, x: F) -> F {
    let one = F::one();
    let fpmin = F::min_positive_value() / F::epsilon();
    let qab = a + b;
    let qap = a + one;
    let qam = a - one;
    let mut c = one;
    let mut d = one - qab * x / qap;
    if d.abs() < fpmin {
        d = fpmin;
    }
    d = d.recip();
    let mut h = d;
    for m in 1..=300usize {
        let mf = F::of_usize(m);
        let m2 = F::of_usize(2 * m);
        let aa = mf * (b - mf) * x / ((qam + m2) * (a + m2));
        d = one + aa * d;
        if d.abs() < fpmin {
            d = fpmin;
        }
        c = one + aa / c;
        if c.abs() < fpmin {
            c = fpmin;
        }
        d = d.recip();
        h *= d * c;
        let aa = -(a + mf) * (qab + mf) * x / ((a + m2) * (qap + m2));
        d = one + aa * d;
        if d.abs() < fpmin {
            d = fpmin;
        }
        c = one + aa / c;
        if c.abs() < fpmin {
            c = fpmin;
        }
        d = d.recip();
        let del = d * c;
        h *= del;
        if (del - one).abs() < F::epsilon() {
            break;
        }
    }
    h
}
