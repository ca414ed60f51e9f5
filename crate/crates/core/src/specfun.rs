//! Special functions and closed-form constants.
//!
//! Gamma via the Lanczos approximation (g = 7, n = 9 coefficient set, the
//! same one GSL ships) with reflection for the left half-line, a natively
//! regularized Gauss hypergeometric ₂F₁ (series + Pfaff map, arguments
//! restricted to z ≤ 0), and the handful of constants the spectral criteria
//! are built from: the Riesz-potential constant, the sharp Hardy/Herbst
//! constant, sphere areas and the radial moment `i_alpha`.

use crate::quad;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecFunError {
    #[error("gamma pole at nonpositive integer x = {0}")]
    PoleAtNonpositiveInteger(f64),
    #[error("argument out of domain: {0}")]
    ArgumentOutOfDomain(String),
    #[error("hypergeometric series did not converge within {0} terms")]
    NonConvergence(usize),
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// sin(πx) without catastrophic argument reduction error.
fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let s = (std::f64::consts::PI * r).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn lanczos_gamma_positive(x: f64) -> f64 {
    // Valid for x >= 0.5.
    let xm1 = x - 1.0;
    let mut t = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        t += c / (xm1 + i as f64);
    }
    let w = xm1 + LANCZOS_G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * w.powf(xm1 + 0.5) * (-w).exp() * t
}

/// Γ(x) for real x, to ~1e-13 relative accuracy.
pub fn gamma_real(x: f64) -> Result<f64, SpecFunError> {
    if !x.is_finite() {
        return Err(SpecFunError::ArgumentOutOfDomain(format!(
            "gamma of non-finite {x}"
        )));
    }
    if is_nonpositive_integer(x) {
        return Err(SpecFunError::PoleAtNonpositiveInteger(x));
    }
    if x >= 0.5 {
        Ok(lanczos_gamma_positive(x))
    } else {
        // Reflection: Γ(x) = π / (sin(πx) Γ(1-x)).
        Ok(std::f64::consts::PI / (sin_pi(x) * lanczos_gamma_positive(1.0 - x)))
    }
}

/// 1/Γ(x), entire: returns 0 at the poles instead of an error.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x >= 0.5 {
        1.0 / lanczos_gamma_positive(x)
    } else {
        sin_pi(x) * lanczos_gamma_positive(1.0 - x) / std::f64::consts::PI
    }
}

/// Euler beta B(a, b) = Γ(a)Γ(b)/Γ(a+b).
pub fn beta(a: f64, b: f64) -> Result<f64, SpecFunError> {
    Ok(gamma_real(a)? * gamma_real(b)? / gamma_real(a + b)?)
}

/// Parameters of the regularized Gauss hypergeometric ₂F₁(a, b; c; z)/Γ(c).
///
/// Only z ≤ 0 is supported; after the Pfaff map the transformed argument
/// z/(z-1) must stay ≤ 0.99, which bounds z above -99.
#[derive(Debug, Clone, Copy)]
pub struct Hyp2F1Params {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
}

/// Largest admissible |z| for [`hyp2f1_reg`].
pub const HYP2F1_Z_MAX: f64 = 99.0;

const HYP2F1_MAX_TERMS: usize = 10_000;

/// Regularized series Σ (a)_k (b)_k / Γ(c+k) · z^k/k!, |z| < 1 expected.
///
/// The first terms (while c+k may be near a pole of Γ) use `rgamma`
/// directly; after c+k ≥ 0.5 the term ratio recurrence takes over.
fn hyp_series_reg(a: f64, b: f64, c: f64, z: f64) -> Result<f64, SpecFunError> {
    let k0 = if c >= 0.5 {
        0
    } else {
        (0.5 - c).ceil() as usize
    };

    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64; // Kahan compensation
    let mut kahan_add = |s: &mut f64, x: f64| {
        let y = x - comp;
        let t = *s + y;
        comp = (t - *s) - y;
        *s = t;
    };

    // Head terms, evaluated directly (handles c at or below its poles).
    let mut poch_a = 1.0_f64;
    let mut poch_b = 1.0_f64;
    let mut zk_over_fact = 1.0_f64;
    for k in 0..k0 {
        kahan_add(&mut sum, poch_a * poch_b * rgamma(c + k as f64) * zk_over_fact);
        poch_a *= a + k as f64;
        poch_b *= b + k as f64;
        zk_over_fact *= z / (k as f64 + 1.0);
    }

    // Recurrence tail from k0 with c + k bounded away from the poles.
    let mut term = poch_a * poch_b * rgamma(c + k0 as f64) * zk_over_fact;
    kahan_add(&mut sum, term);
    let mut small_streak = 0;
    for k in k0..HYP2F1_MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) * z / ((c + kf) * (kf + 1.0));
        kahan_add(&mut sum, term);
        if term.abs() <= 1e-16 * sum.abs().max(f64::MIN_POSITIVE) {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(sum);
            }
        } else {
            small_streak = 0;
        }
    }
    Err(SpecFunError::NonConvergence(HYP2F1_MAX_TERMS))
}

/// Regularized Gauss hypergeometric ₂F₁(a, b; c; z)/Γ(c) for z ≤ 0.
///
/// Direct series for |z| ≤ 1/2, otherwise the Pfaff transformation
/// ₂F₁(a,b;c;z) = (1-z)^{-a} ₂F₁(a, c-b; c; z/(z-1)), which maps
/// z ∈ (-99, -1/2] onto a positive argument in (1/3, 0.99].
pub fn hyp2f1_reg(p: &Hyp2F1Params) -> Result<f64, SpecFunError> {
    let Hyp2F1Params { a, b, c, z } = *p;
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(SpecFunError::ArgumentOutOfDomain(
            "non-finite hypergeometric parameter".into(),
        ));
    }
    if z > 0.0 {
        return Err(SpecFunError::ArgumentOutOfDomain(format!(
            "hyp2f1_reg requires z <= 0, got {z}"
        )));
    }
    if z < -HYP2F1_Z_MAX {
        return Err(SpecFunError::ArgumentOutOfDomain(format!(
            "hyp2f1_reg argument z = {z} below supported -{HYP2F1_Z_MAX}"
        )));
    }
    if z == 0.0 {
        return Ok(rgamma(c));
    }
    if z >= -0.5 {
        hyp_series_reg(a, b, c, z)
    } else {
        let w = z / (z - 1.0);
        Ok((1.0 - z).powf(-a) * hyp_series_reg(a, c - b, c, w)?)
    }
}

/// Riesz-potential constant C_{d,α} = Γ((d-α)/2) / (π^{d/2} 2^α Γ(α/2)).
pub fn riesz_constant(d: u32, alpha: f64) -> Result<f64, SpecFunError> {
    if d == 0 {
        return Err(SpecFunError::ArgumentOutOfDomain("d must be >= 1".into()));
    }
    let df = d as f64;
    if !(alpha > 0.0 && alpha < df) {
        return Err(SpecFunError::ArgumentOutOfDomain(format!(
            "riesz_constant requires 0 < alpha < d, got alpha = {alpha}, d = {d}"
        )));
    }
    let num = gamma_real((df - alpha) / 2.0)?;
    let den = std::f64::consts::PI.powf(df / 2.0) * 2f64.powf(alpha) * gamma_real(alpha / 2.0)?;
    Ok(num / den)
}

/// Sharp Hardy (Herbst) constant: (-Δ)^{α/2} ≥ C |x|^{-α} with
/// C = 2^α Γ²((d+α)/4) / Γ²((d-α)/4).
pub fn hardy_constant(d: u32, alpha: f64) -> Result<f64, SpecFunError> {
    let df = d as f64;
    if d == 0 || !(alpha > 0.0 && alpha <= 2.0 && alpha < df) {
        return Err(SpecFunError::ArgumentOutOfDomain(format!(
            "hardy_constant requires 0 < alpha <= 2 and alpha < d, got alpha = {alpha}, d = {d}"
        )));
    }
    let g_plus = gamma_real((df + alpha) / 4.0)?;
    let g_minus = gamma_real((df - alpha) / 4.0)?;
    Ok(2f64.powf(alpha) * (g_plus / g_minus).powi(2))
}

/// Surface area of the unit sphere in ℝ^d: ω_d = 2 π^{d/2} / Γ(d/2).
pub fn sphere_area(d: u32) -> f64 {
    let df = d as f64;
    2.0 * std::f64::consts::PI.powf(df / 2.0) * rgamma(df / 2.0)
}

/// Radial moment I_α = ∫_0^∞ r² (1+r²)^{-2α} dr = B(3/2, 2α - 3/2)/2.
///
/// Defined for α > 3/2, matching where the coupling-threshold formulas that
/// consume it are stated.
pub fn i_alpha(alpha: f64) -> Result<f64, SpecFunError> {
    if !(alpha > 1.5) {
        return Err(SpecFunError::ArgumentOutOfDomain(format!(
            "i_alpha requires alpha > 3/2, got {alpha}"
        )));
    }
    Ok(0.5 * beta(1.5, 2.0 * alpha - 1.5)?)
}

/// Quadrature companion to [`i_alpha`], used to cross-check the closed form.
pub fn i_alpha_quadrature(alpha: f64) -> Result<f64, SpecFunError> {
    if !(alpha > 1.5) {
        return Err(SpecFunError::ArgumentOutOfDomain(format!(
            "i_alpha requires alpha > 3/2, got {alpha}"
        )));
    }
    let q = quad::integrate_to_inf(
        |r| r * r * (1.0 + r * r).powf(-2.0 * alpha),
        1e-13,
        1e-13,
        4000,
    );
    Ok(q.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn gamma_anchor_values() {
        assert_relative_eq!(gamma_real(1.0).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(gamma_real(0.5).unwrap(), PI.sqrt(), max_relative = 1e-13);
        // Γ(7/2) = (5/2)(3/2)(1/2)Γ(1/2) = 15√π/8
        assert_relative_eq!(
            gamma_real(3.5).unwrap(),
            15.0 * PI.sqrt() / 8.0,
            max_relative = 1e-13
        );
        assert_relative_eq!(gamma_real(6.0).unwrap(), 120.0, max_relative = 1e-13);
    }

    #[test]
    fn gamma_poles_error() {
        for x in [0.0, -1.0, -2.0, -7.0] {
            assert!(matches!(
                gamma_real(x),
                Err(SpecFunError::PoleAtNonpositiveInteger(_))
            ));
            assert_eq!(rgamma(x), 0.0);
        }
    }

    #[test]
    fn gamma_reflection_negative_axis() {
        // Γ(-1/2) = -2√π
        assert_relative_eq!(
            gamma_real(-0.5).unwrap(),
            -2.0 * PI.sqrt(),
            max_relative = 1e-12
        );
        // Γ(-3/2) = 4√π/3
        assert_relative_eq!(
            gamma_real(-1.5).unwrap(),
            4.0 * PI.sqrt() / 3.0,
            max_relative = 1e-12
        );
    }

    proptest! {
        // Γ(x+1) = xΓ(x) across the positive range the thresholds use.
        #[test]
        fn gamma_recurrence(x in 0.1f64..30.0) {
            let lhs = gamma_real(x + 1.0).unwrap();
            let rhs = x * gamma_real(x).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
        }

        // c = b collapses the regularized series to (1-z)^{-a}/Γ(b).
        #[test]
        fn hyp_c_equals_b_identity(a in -3.0f64..5.0, b in 0.3f64..8.0, z in -50.0f64..0.0) {
            let v = hyp2f1_reg(&Hyp2F1Params { a, b, c: b, z }).unwrap();
            let expect = (1.0 - z).powf(-a) * rgamma(b);
            prop_assert!((v - expect).abs() <= 1e-10 * expect.abs().max(1e-300));
        }
    }

    #[test]
    fn hyp_at_zero_is_rgamma_c() {
        for c in [2.5, 1.0, 0.25, -0.5, -2.0] {
            let v = hyp2f1_reg(&Hyp2F1Params {
                a: 1.2,
                b: 0.7,
                c,
                z: 0.0,
            })
            .unwrap();
            assert_relative_eq!(v, rgamma(c), max_relative = 1e-14);
        }
    }

    #[test]
    fn hyp_quoted_identity_point() {
        // a=1, b=c=2, z=-1: (1-z)^{-a}/Γ(b) = 1/2.
        let v = hyp2f1_reg(&Hyp2F1Params {
            a: 1.0,
            b: 2.0,
            c: 2.0,
            z: -1.0,
        })
        .unwrap();
        assert_relative_eq!(v, 0.5, max_relative = 1e-13);
    }

    /// Double-double helpers for the high-precision series oracle.
    mod dd {
        #[derive(Clone, Copy, Debug)]
        pub struct Dd {
            pub hi: f64,
            pub lo: f64,
        }

        pub fn from(x: f64) -> Dd {
            Dd { hi: x, lo: 0.0 }
        }

        fn two_sum(a: f64, b: f64) -> (f64, f64) {
            let s = a + b;
            let bb = s - a;
            let err = (a - (s - bb)) + (b - bb);
            (s, err)
        }

        fn two_prod(a: f64, b: f64) -> (f64, f64) {
            let p = a * b;
            let err = a.mul_add(b, -p);
            (p, err)
        }

        pub fn add(a: Dd, b: Dd) -> Dd {
            let (s, e) = two_sum(a.hi, b.hi);
            let e = e + a.lo + b.lo;
            let (hi, lo) = two_sum(s, e);
            Dd { hi, lo }
        }

        pub fn mul(a: Dd, b: Dd) -> Dd {
            let (p, e) = two_prod(a.hi, b.hi);
            let e = e + a.hi * b.lo + a.lo * b.hi;
            let (hi, lo) = two_sum(p, e);
            Dd { hi, lo }
        }

        pub fn div(a: Dd, b: Dd) -> Dd {
            let q1 = a.hi / b.hi;
            let r = add(a, mul(from(-q1), b));
            let q2 = r.hi / b.hi;
            let r2 = add(r, mul(from(-q2), b));
            let q3 = r2.hi / b.hi;
            let (hi, lo) = two_sum(q1, q2 + q3);
            Dd { hi, lo }
        }
    }

    /// Oracle: regularized series in double-double arithmetic (c > 0 only),
    /// applying the same Pfaff map for z < -1/2.
    fn hyp_reg_oracle(a: f64, b: f64, c: f64, z: f64) -> f64 {
        use dd::*;
        assert!(c > 0.0);
        let (a, b, z, pref) = if z >= -0.5 {
            (a, b, z, 1.0)
        } else {
            (a, c - b, z / (z - 1.0), (1.0 - z).powf(-a))
        };
        // term_k+1 = term_k * (a+k)(b+k) z / ((c+k)(k+1)); term_0 = 1/Γ(c).
        let mut term = from(rgamma(c));
        let mut sum = term;
        for k in 0..4000 {
            let kf = k as f64;
            let num = mul(mul(from(a + kf), from(b + kf)), from(z));
            let den = mul(from(c + kf), from(kf + 1.0));
            term = div(mul(term, num), den);
            sum = add(sum, term);
            if term.hi.abs() < 1e-30 * sum.hi.abs() {
                break;
            }
        }
        pref * (sum.hi + sum.lo)
    }

    #[test]
    fn hyp_against_high_precision_series() {
        // Frozen from the double-double oracle; the oracle runs alongside
        // to keep the pin honest.
        let v = hyp2f1_reg(&Hyp2F1Params {
            a: 1.5,
            b: 0.75,
            c: 2.5,
            z: -0.25,
        })
        .unwrap();
        let oracle = hyp_reg_oracle(1.5, 0.75, 2.5, -0.25);
        assert_relative_eq!(oracle, 0.678_867_319_849_499_7, max_relative = 1e-13);
        assert_relative_eq!(v, oracle, max_relative = 1e-13);

        // Far-field point through the Pfaff map.
        let v2 = hyp2f1_reg(&Hyp2F1Params {
            a: 2.0,
            b: 1.7,
            c: 1.5,
            z: -4.0,
        })
        .unwrap();
        let oracle2 = hyp_reg_oracle(2.0, 1.7, 1.5, -4.0);
        assert_relative_eq!(v2, oracle2, max_relative = 1e-12);
    }

    #[test]
    fn hyp_domain_errors() {
        assert!(matches!(
            hyp2f1_reg(&Hyp2F1Params {
                a: 1.0,
                b: 1.0,
                c: 1.0,
                z: 0.5
            }),
            Err(SpecFunError::ArgumentOutOfDomain(_))
        ));
        assert!(matches!(
            hyp2f1_reg(&Hyp2F1Params {
                a: 1.0,
                b: 1.0,
                c: 1.0,
                z: -1e4
            }),
            Err(SpecFunError::ArgumentOutOfDomain(_))
        ));
    }

    #[test]
    fn riesz_values() {
        // d=3, α=1: 1/(2π²)
        assert_relative_eq!(
            riesz_constant(3, 1.0).unwrap(),
            1.0 / (2.0 * PI * PI),
            max_relative = 1e-13
        );
        // d=3, α=2: Newton kernel constant 1/(4π)
        assert_relative_eq!(
            riesz_constant(3, 2.0).unwrap(),
            1.0 / (4.0 * PI),
            max_relative = 1e-13
        );
        assert!(riesz_constant(3, 3.0).is_err());
        // Divergence as α ↑ d.
        assert!(riesz_constant(3, 3.0 - 1e-8).unwrap() > 1e6);
    }

    #[test]
    fn riesz_positive_on_open_interval() {
        let mut last = 0.0;
        for i in 1..60 {
            let alpha = 3.0 * i as f64 / 60.0;
            let c = riesz_constant(3, alpha).unwrap();
            assert!(c > 0.0 && c.is_finite());
            if i > 1 {
                // Continuity probe: no jumps of more than a factor 2 on this grid.
                assert!(c / last < 2.0 && last / c < 2.0, "jump at alpha={alpha}");
            }
            last = c;
        }
    }

    #[test]
    fn hardy_values() {
        assert_relative_eq!(
            hardy_constant(3, 1.0).unwrap(),
            2.0 / PI,
            max_relative = 1e-13
        );
        // α = 2 recovers classical Hardy (d-2)²/4 = 1/4.
        assert_relative_eq!(hardy_constant(3, 2.0).unwrap(), 0.25, max_relative = 1e-12);
        // α → 0⁺ limit is 1.
        assert_relative_eq!(hardy_constant(3, 1e-9).unwrap(), 1.0, epsilon = 1e-6);
        assert!(hardy_constant(1, 1.5).is_err());
    }

    #[test]
    fn sphere_areas() {
        assert_relative_eq!(sphere_area(3), 4.0 * PI, max_relative = 1e-14);
        assert_relative_eq!(sphere_area(2), 2.0 * PI, max_relative = 1e-14);
        assert_relative_eq!(sphere_area(1), 2.0, max_relative = 1e-14);
    }

    #[test]
    fn i_alpha_values() {
        // α = 7/4: B(3/2, 2)/2 = 2/15.
        assert_relative_eq!(i_alpha(1.75).unwrap(), 2.0 / 15.0, max_relative = 1e-13);
        // α = 2: B(3/2, 5/2)/2 = π/32.
        assert_relative_eq!(i_alpha(2.0).unwrap(), PI / 32.0, max_relative = 1e-13);
        assert!(i_alpha(1.5).is_err());
    }

    #[test]
    fn i_alpha_matches_quadrature() {
        for alpha in [1.6, 1.75, 1.9, 2.0] {
            let closed = i_alpha(alpha).unwrap();
            let quad = i_alpha_quadrature(alpha).unwrap();
            assert!(
                (closed - quad).abs() <= 1e-10 * closed.abs(),
                "alpha={alpha}: {closed} vs {quad}"
            );
        }
    }
}
