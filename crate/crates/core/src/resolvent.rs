//! Weighted free resolvent of the massive relativistic operator in d = 3.
//!
//! For Ψ(u) = (2u+m^{2/α})^{α/2} - m with 1 < α < 2, m > 0, the weighted
//! resolvent ⟨x⟩^{-s} R(z) ⟨x⟩^{-s} has the explicit kernel
//!
//! ```text
//! 𝒦(x,y;z) = ⟨x⟩^{-s} e^{i√ζ(z)|x-y|} / (2απ (ζ(z)+m^{2/α})^{α/2-1} |x-y|) ⟨y⟩^{-s}
//! ```
//!
//! with ζ(z) = (z+m)^{2/α} - m^{2/α} on the branch 0 < arg(z+m) < 2π and
//! Im√ζ > 0. Its Hilbert–Schmidt norm reduces, in bipolar coordinates, to
//! nested 1-D quadratures with the kernel ln((ρ+r)/|ρ-r|) at z = 0 (and an
//! exponential-integral difference for Im z ≠ 0). The HS norm dominates the
//! operator norm, so threshold verdicts built on it stay on the safe side.

use crate::criteria::{FormulaId, ThresholdReport};
use crate::potentials::{Potential, PotentialError, PotentialFamily};
use crate::quad;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ResolventError {
    #[error("branch violation: computed √ζ has Im ≤ 0")]
    BranchViolation,
    #[error("kernel evaluated at coincident points")]
    CoincidentPoints,
    #[error("argument out of domain: {0}")]
    ArgumentOutOfDomain(String),
    #[error("quadrature failed to converge: {0}")]
    QuadratureFailure(String),
    #[error(transparent)]
    Potential(#[from] PotentialError),
}

/// Parameters of the weighted resolvent: order α ∈ (1,2), mass m > 0 and
/// weight exponent s > 1.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ResolventParams {
    pub alpha: f64,
    pub mass: f64,
    pub weight_s: f64,
}

impl ResolventParams {
    pub fn new(alpha: f64, mass: f64, weight_s: f64) -> Result<Self, ResolventError> {
        if !(alpha > 1.0 && alpha < 2.0) {
            return Err(ResolventError::ArgumentOutOfDomain(format!(
                "resolvent kernel needs 1 < alpha < 2, got {alpha}"
            )));
        }
        if !(mass > 0.0) {
            return Err(ResolventError::ArgumentOutOfDomain(format!(
                "resolvent kernel needs mass > 0, got {mass}"
            )));
        }
        if !(weight_s > 1.0) {
            return Err(ResolventError::ArgumentOutOfDomain(format!(
                "weight exponent must satisfy s > 1, got {weight_s}"
            )));
        }
        Ok(ResolventParams {
            alpha,
            mass,
            weight_s,
        })
    }

    /// Bypasses the α ∈ (1,2) and s > 1 checks so the α = 2 classical
    /// kernel can be compared against the Newton kernel in tests.
    pub fn new_unchecked(alpha: f64, mass: f64, weight_s: f64) -> Self {
        ResolventParams {
            alpha,
            mass,
            weight_s,
        }
    }
}

/// ζ(z) = (z+m)^{2/α} - m^{2/α} and its square root with Im√ζ > 0.
///
/// The power uses the polar form with 0 ≤ θ = arg(z+m) < 2π; z must avoid
/// the positive real axis (z = 0 itself maps to ζ = 0).
pub fn zeta_branch(
    z: Complex64,
    alpha: f64,
    mass: f64,
) -> Result<(Complex64, Complex64), ResolventError> {
    if !(alpha > 1.0 && alpha <= 2.0) || !(mass > 0.0) {
        return Err(ResolventError::ArgumentOutOfDomain(format!(
            "zeta_branch needs 1 < alpha <= 2 and mass > 0, got alpha={alpha}, m={mass}"
        )));
    }
    if z == Complex64::ZERO {
        return Ok((Complex64::ZERO, Complex64::ZERO));
    }
    if z.im == 0.0 && z.re > 0.0 {
        return Err(ResolventError::ArgumentOutOfDomain(
            "spectral parameter on the positive real axis".into(),
        ));
    }
    let w = z + mass;
    let r = w.norm();
    let mut theta = w.im.atan2(w.re);
    if theta < 0.0 {
        theta += 2.0 * std::f64::consts::PI;
    }
    let p = 2.0 / alpha;
    let zeta = Complex64::from_polar(r.powf(p), p * theta) - mass.powf(p);
    let mut root = zeta.sqrt();
    if root.im < 0.0 {
        root = -root;
    }
    if root.im < 0.0 || (root.im == 0.0 && zeta != Complex64::ZERO) {
        return Err(ResolventError::BranchViolation);
    }
    Ok((zeta, root))
}

/// (z+m)^{1-2/α} on the same branch — the kernel's denominator factor
/// (ζ+m^{2/α})^{α/2-1} evaluated without leaving the sheet.
fn denominator_factor(z: Complex64, alpha: f64, mass: f64) -> Complex64 {
    if z == Complex64::ZERO {
        return Complex64::new(mass.powf(1.0 - 2.0 / alpha), 0.0);
    }
    let w = z + mass;
    let r = w.norm();
    let mut theta = w.im.atan2(w.re);
    if theta < 0.0 {
        theta += 2.0 * std::f64::consts::PI;
    }
    let p = 1.0 - 2.0 / alpha;
    Complex64::from_polar(r.powf(p), p * theta)
}

/// The weighted kernel 𝒦(x, y; z), including both ⟨·⟩^{-s} factors.
pub fn resolvent_kernel(
    x: &[f64; 3],
    y: &[f64; 3],
    p: &ResolventParams,
    z: Complex64,
) -> Result<Complex64, ResolventError> {
    let dist = x
        .iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    if dist == 0.0 {
        return Err(ResolventError::CoincidentPoints);
    }
    let (_, root) = zeta_branch(z, p.alpha, p.mass)?;
    let denom = denominator_factor(z, p.alpha, p.mass);
    let wx = (1.0 + x.iter().map(|v| v * v).sum::<f64>()).powf(-p.weight_s / 2.0);
    let wy = (1.0 + y.iter().map(|v| v * v).sum::<f64>()).powf(-p.weight_s / 2.0);
    let phase = (Complex64::i() * root * dist).exp();
    Ok(wx * wy * phase / (2.0 * p.alpha * std::f64::consts::PI * denom * dist))
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Exponential integral E₁(x), x > 0.
fn expint_e1(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x <= 1.0 {
        // Power series around 0.
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..60 {
            term *= -x / k as f64;
            let add = -term / k as f64;
            sum += add;
            if add.abs() < 1e-18 * sum.abs().max(1.0) {
                break;
            }
        }
        -EULER_GAMMA - x.ln() + sum
    } else {
        // Continued fraction x+1 - 1²/(x+3 - 2²/(x+5 - ...)), Lentz form.
        let tiny = 1e-300;
        let mut f = x + 1.0;
        let mut c = f;
        let mut d = 0.0;
        for k in 1..200 {
            let a = -((k * k) as f64);
            let b = x + (2 * k + 1) as f64;
            d = b + a * d;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + a / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = c * d;
            f *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        (-x).exp() / f
    }
}

/// ∫_{lo}^{hi} e^{-2κu}/u du: the log kernel at κ = 0, otherwise the E₁
/// difference. `lo` must be strictly positive.
fn chord_from_bounds(lo: f64, hi: f64, kappa: f64) -> f64 {
    if kappa == 0.0 {
        (hi / lo).ln()
    } else {
        expint_e1(2.0 * kappa * lo) - expint_e1(2.0 * kappa * hi)
    }
}

/// Same chord through the radii: lo = |ρ-r|, hi = ρ+r (off-singularity use).
fn chord_integral(rho: f64, r: f64, kappa: f64) -> f64 {
    chord_from_bounds((rho - r).abs(), rho + r, kappa)
}

/// Inner bipolar integral ∫_0^∞ r ⟨r⟩^{-2s} ∫ e^{-2κu}/u du dr, split at
/// the logarithmic singularity r = ρ via r = ρ(1 ∓ e^{-t}). The chord
/// bounds are formed from e^{-t} analytically: near the singularity ρ - r
/// cancels to zero in f64 while ρ e^{-t} stays exact.
fn inner_integral(rho: f64, s: f64, kappa: f64) -> Result<f64, ResolventError> {
    let weight = |r: f64| (1.0 + r * r).powf(-s);
    let t_cut = 45.0;

    // [0, ρ): r = ρ(1 - e^{-t}).
    let below = quad::integrate(
        |t| {
            let e = (-t).exp();
            let r = rho * (1.0 - e);
            if r <= 0.0 {
                return 0.0;
            }
            let chord = chord_from_bounds(rho * e, rho * (2.0 - e), kappa);
            r * weight(r) * chord * rho * e
        },
        0.0,
        t_cut,
        1e-15,
        1e-11,
        2000,
    );
    // (ρ, 2ρ]: r = ρ(1 + e^{-t}).
    let above = quad::integrate(
        |t| {
            let e = (-t).exp();
            let r = rho * (1.0 + e);
            let chord = chord_from_bounds(rho * e, rho * (2.0 + e), kappa);
            r * weight(r) * chord * rho * e
        },
        0.0,
        t_cut,
        1e-15,
        1e-11,
        2000,
    );
    // [2ρ, ∞): smooth algebraic tail.
    let far = quad::integrate_from(
        |r| r * weight(r) * chord_integral(rho, r, kappa),
        2.0 * rho,
        1e-15,
        1e-11,
        2000,
    );
    if !(below.converged && above.converged && far.converged) {
        return Err(ResolventError::QuadratureFailure(format!(
            "inner bipolar integral at rho = {rho}"
        )));
    }
    Ok(below.value + above.value + far.value)
}

/// The geometric double integral ∬ ⟨x⟩^{-2s}⟨y⟩^{-2s} e^{-2κ|x-y|} |x-y|^{-2} dx dy
/// in bipolar form: 8π² ∫ ρ ⟨ρ⟩^{-2s} (inner) dρ. The far field decays only
/// algebraically (~ρ^{2-4s}·ρ), so the tail is integrated in log-radius
/// where it is exponential.
fn geometric_double_integral(s: f64, kappa: f64) -> Result<f64, ResolventError> {
    let integrand = |rho: f64| {
        if rho <= 0.0 {
            return 0.0;
        }
        let inner = inner_integral(rho, s, kappa).unwrap_or(f64::NAN);
        rho * (1.0 + rho * rho).powf(-s) * inner
    };
    let near = quad::integrate(integrand, 0.0, 1.0, 1e-14, 1e-9, 2000);
    let far = quad::integrate(
        |y| {
            let rho = y.exp();
            integrand(rho) * rho
        },
        0.0,
        60.0,
        1e-14,
        1e-9,
        2000,
    );
    if !(near.converged && far.converged) || !(near.value + far.value).is_finite() {
        return Err(ResolventError::QuadratureFailure(
            "outer radial quadrature".into(),
        ));
    }
    let pi = std::f64::consts::PI;
    Ok(8.0 * pi * pi * (near.value + far.value))
}

/// Weighted inner integral G(ρ) = ∫ |x-y|^{-2} ⟨y⟩^{-2s} dy at z = 0,
/// exposed for the |x|^{1-2s} + |x|^{1-2s'} tail-bound checks.
pub fn weighted_inner_integral(rho: f64, s: f64) -> Result<f64, ResolventError> {
    if !(s > 1.0) || !(rho > 0.0) {
        return Err(ResolventError::ArgumentOutOfDomain(
            "weighted_inner_integral needs s > 1, rho > 0".into(),
        ));
    }
    Ok(2.0 * std::f64::consts::PI / rho * inner_integral(rho, s, 0.0)?)
}

/// Hilbert–Schmidt norm of the weighted resolvent kernel at spectral
/// parameter z (z = 0 or Im z ≠ 0), to ~1e-8 relative.
pub fn hs_norm(p: &ResolventParams, z: Complex64) -> Result<f64, ResolventError> {
    if !(p.weight_s > 1.0) {
        return Err(ResolventError::ArgumentOutOfDomain(format!(
            "hs_norm needs s > 1, got {}",
            p.weight_s
        )));
    }
    let (_, root) = zeta_branch(z, p.alpha, p.mass)?;
    let kappa = root.im;
    let prefactor =
        1.0 / (2.0 * p.alpha * std::f64::consts::PI * denominator_factor(z, p.alpha, p.mass).norm());
    let geom = geometric_double_integral(p.weight_s, kappa)?;
    Ok(prefactor * geom.sqrt())
}

/// Verdict for the weighted-resolvent smallness criterion: no non-positive
/// eigenvalue of H = H₀ + V when
/// ‖⟨x⟩^s |V|^{1/2}‖_∞² · ‖⟨x⟩^{-s} R(±i0) ⟨x⟩^{-s}‖ < 1,
/// with the operator norm replaced by its HS upper bound.
pub fn thm5_verdict(v: &Potential, p: &ResolventParams) -> Result<ThresholdReport, ResolventError> {
    match &v.family {
        PotentialFamily::PositiveBump { coupling, .. } if *coupling > 0.0 => {
            return Err(ResolventError::ArgumentOutOfDomain(
                "criterion requires an attractive potential (V ≤ 0)".into(),
            ));
        }
        PotentialFamily::TabulatedRadial(spline) => {
            for i in 0..=512 {
                let r = spline.x_min() + (spline.x_max() - spline.x_min()) * i as f64 / 512.0;
                if spline.eval(r).map(|(val, _)| val > 1e-12).unwrap_or(false) {
                    return Err(ResolventError::ArgumentOutOfDomain(
                        "criterion requires an attractive potential (V ≤ 0)".into(),
                    ));
                }
            }
        }
        _ => {}
    }

    let weighted = v.weighted_sup(p.weight_s)?;
    let hs = hs_norm(p, Complex64::ZERO)?;
    let threshold = hs.powf(-0.5);

    let mut report = ThresholdReport {
        formula_id: FormulaId::Thm5,
        threshold_value: threshold,
        intermediates: Default::default(),
        coupling: None,
        verdict: None,
        notes: vec![
            "operator norm replaced by its Hilbert–Schmidt upper bound; Holds verdicts remain valid"
                .into(),
            "the criterion is the proof-side product ‖⟨x⟩^s|V|^{1/2}‖²·‖R_w‖ < 1, i.e. the \
             resolvent norm enters with exponent -1/2; the displayed inequality with exponent \
             +1/2 is inconsistent with that chain and is not used"
                .into(),
        ],
    };
    report.intermediates.insert("hs_norm".into(), hs);
    report.intermediates.insert("weighted_sup".into(), weighted);
    report
        .intermediates
        .insert("product".into(), weighted * weighted * hs);
    report.intermediates.insert("alpha".into(), p.alpha);
    report.intermediates.insert("mass".into(), p.mass);
    report.intermediates.insert("weight_s".into(), p.weight_s);
    Ok(report.judge(weighted))
}
