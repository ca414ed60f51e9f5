//! Decaying radial potential families, their virial derivatives, and the
//! hypergeometric family with exact zero-energy eigenfunctions.
//!
//! Sign convention: potentials are stored signed, attractive families carry
//! the minus sign themselves. Criteria never flip signs.
//!
//! - `InversePower(C, β)`:      V = -C (1+r²)^{-β/2}
//! - `HomogeneousCoulomb(C, γ)`: V = -C r^{-γ}, singular at the origin
//! - `PositiveBump(C, ν)`:      V = +C (1+r²)^{-ν}
//! - `Hypergeometric(κ, α, l)`: the zero-mode family below
//! - `TabulatedRadial`:         monotone cubic spline of (r, V) samples,
//!   extended by 0 outside its node span
//!
//! The hypergeometric family with δ = d + 2l is
//!
//! ```text
//! V_{κ,α}(x) = -(2^α/Γ(κ)) Γ((δ+α)/2) Γ(α/2+κ) (1+|x|²)^κ
//!              · ₂F₁reg((δ+α)/2, α/2+κ; δ/2; -|x|²)
//! ```
//!
//! and `φ_κ(x) = P(x)(1+|x|²)^{-κ}` solves `(-Δ)^{α/2}φ + V φ = 0` in the
//! distributional sense. At κ = (δ-α)/2 the series collapses to the closed
//! form `-2^α Γ((δ+α)/2)/Γ((δ-α)/2) · (1+|x|²)^{-α}`.

use crate::pchip::Pchip;
use crate::quad;
use crate::specfun::{self, Hyp2F1Params, SpecFunError};
use serde::Serialize;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PotentialError {
    #[error("potential singular at the origin")]
    SingularPoint,
    #[error("harmonic degree l = {0} unsupported (only l = 0, 1)")]
    UnsupportedHarmonicDegree(u32),
    #[error("divergent norm: {0}")]
    DivergentNorm(String),
    #[error("invalid potential parameter: {0}")]
    InvalidParameter(String),
    #[error("potential csv: {0}")]
    Csv(String),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

#[derive(Debug, Clone, Serialize)]
pub enum PotentialFamily {
    InversePower { coupling: f64, beta: f64 },
    HomogeneousCoulomb { coupling: f64, gamma: f64 },
    PositiveBump { coupling: f64, nu: f64 },
    Hypergeometric { kappa: f64, alpha: f64, degree: u32 },
    TabulatedRadial(Pchip),
}

/// A radial potential on ℝ^d.
#[derive(Debug, Clone, Serialize)]
pub struct Potential {
    pub family: PotentialFamily,
    pub dim: u32,
}

impl Potential {
    /// V = -C(1+|x|²)^{-β/2}, C ≥ 0 (C = 0 is the zero potential).
    pub fn inverse_power(coupling: f64, beta: f64, dim: u32) -> Result<Self, PotentialError> {
        if !(coupling >= 0.0) || !(beta > 0.0) || dim == 0 {
            return Err(PotentialError::InvalidParameter(format!(
                "inverse_power needs C >= 0, beta > 0, d >= 1; got C={coupling}, beta={beta}, d={dim}"
            )));
        }
        Ok(Potential {
            family: PotentialFamily::InversePower { coupling, beta },
            dim,
        })
    }

    /// V = -C|x|^{-γ} with C > 0 and 0 < γ < 1.
    pub fn homogeneous_coulomb(coupling: f64, gamma: f64, dim: u32) -> Result<Self, PotentialError> {
        if !(coupling > 0.0) || !(gamma > 0.0 && gamma < 1.0) || dim == 0 {
            return Err(PotentialError::InvalidParameter(format!(
                "homogeneous_coulomb needs C > 0, 0 < gamma < 1; got C={coupling}, gamma={gamma}"
            )));
        }
        Ok(Potential {
            family: PotentialFamily::HomogeneousCoulomb { coupling, gamma },
            dim,
        })
    }

    /// V = +C(1+|x|²)^{-ν}, a repulsive bump.
    pub fn positive_bump(coupling: f64, nu: f64, dim: u32) -> Result<Self, PotentialError> {
        if !(coupling >= 0.0) || !(nu > 0.0) || dim == 0 {
            return Err(PotentialError::InvalidParameter(format!(
                "positive_bump needs C >= 0, nu > 0; got C={coupling}, nu={nu}"
            )));
        }
        Ok(Potential {
            family: PotentialFamily::PositiveBump { coupling, nu },
            dim,
        })
    }

    /// The hypergeometric zero-mode family V_{κ,α} with δ = d + 2l.
    pub fn hypergeometric(kappa: f64, alpha: f64, dim: u32, degree: u32) -> Result<Self, PotentialError> {
        if !(kappa > 0.0) || !(alpha > 0.0 && alpha < 2.0) || dim == 0 {
            return Err(PotentialError::InvalidParameter(format!(
                "hypergeometric needs kappa > 0, 0 < alpha < 2; got kappa={kappa}, alpha={alpha}"
            )));
        }
        Ok(Potential {
            family: PotentialFamily::Hypergeometric { kappa, alpha, degree },
            dim,
        })
    }

    /// Radial samples (r, V(r)); V is taken as 0 outside the node span.
    pub fn tabulated_radial(samples: Vec<(f64, f64)>, dim: u32) -> Result<Self, PotentialError> {
        let (r, v): (Vec<f64>, Vec<f64>) = samples.into_iter().unzip();
        let spline = Pchip::new(r, v).map_err(PotentialError::InvalidParameter)?;
        Ok(Potential {
            family: PotentialFamily::TabulatedRadial(spline),
            dim,
        })
    }

    /// Loads a tabulated radial potential from two-column CSV `r,V(r)`.
    pub fn tabulated_from_csv(path: &Path, dim: u32) -> Result<Self, PotentialError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PotentialError::Csv(format!("{}: {e}", path.display())))?;
        let rows = crate::symbols::parse_two_column_csv(&text).map_err(PotentialError::Csv)?;
        Self::tabulated_radial(rows, dim)
    }

    /// δ = d + 2l for the hypergeometric family.
    fn delta(&self) -> Option<f64> {
        match &self.family {
            PotentialFamily::Hypergeometric { degree, .. } => {
                Some(self.dim as f64 + 2.0 * *degree as f64)
            }
            _ => None,
        }
    }

    /// True when the hypergeometric parameters sit at κ = (δ-α)/2, where
    /// the potential has the closed inverse-power form.
    pub fn is_closed_form_hypergeometric(&self) -> bool {
        match (&self.family, self.delta()) {
            (PotentialFamily::Hypergeometric { kappa, alpha, .. }, Some(delta)) => {
                (kappa - (delta - alpha) / 2.0).abs() <= 1e-12 * kappa.max(1.0)
            }
            _ => false,
        }
    }

    /// V(r) on the radial profile.
    pub fn eval_radial(&self, r: f64) -> Result<f64, PotentialError> {
        if r < 0.0 || r.is_nan() {
            return Err(PotentialError::InvalidParameter(format!("radius {r}")));
        }
        match &self.family {
            PotentialFamily::InversePower { coupling, beta } => {
                Ok(-coupling * (1.0 + r * r).powf(-beta / 2.0))
            }
            PotentialFamily::HomogeneousCoulomb { coupling, gamma } => {
                if r == 0.0 {
                    Err(PotentialError::SingularPoint)
                } else {
                    Ok(-coupling * r.powf(-gamma))
                }
            }
            PotentialFamily::PositiveBump { coupling, nu } => {
                Ok(coupling * (1.0 + r * r).powf(-nu))
            }
            PotentialFamily::Hypergeometric { kappa, alpha, degree } => {
                let delta = self.delta().unwrap();
                if self.is_closed_form_hypergeometric() {
                    let c = closed_form_coupling(delta, *alpha)?;
                    Ok(-c * (1.0 + r * r).powf(-*alpha))
                } else {
                    neumann_wigner_potential(*kappa, *alpha, self.dim, *degree, r)
                }
            }
            PotentialFamily::TabulatedRadial(spline) => {
                Ok(spline.eval(r).map(|(v, _)| v).unwrap_or(0.0))
            }
        }
    }

    /// V(x) at a point; only the norm of x enters for these radial families.
    pub fn eval(&self, x: &[f64]) -> Result<f64, PotentialError> {
        self.eval_radial(norm(x))
    }

    /// The virial derivative W(x) = x·∇V(x) = r V'(r), in closed form per
    /// family.
    pub fn virial_w(&self, r: f64) -> Result<f64, PotentialError> {
        if r < 0.0 || r.is_nan() {
            return Err(PotentialError::InvalidParameter(format!("radius {r}")));
        }
        match &self.family {
            PotentialFamily::InversePower { coupling, beta } => {
                Ok(coupling * beta * r * r * (1.0 + r * r).powf(-(beta + 2.0) / 2.0))
            }
            PotentialFamily::HomogeneousCoulomb { coupling, gamma } => {
                if r == 0.0 {
                    Err(PotentialError::SingularPoint)
                } else {
                    Ok(gamma * coupling * r.powf(-gamma))
                }
            }
            PotentialFamily::PositiveBump { coupling, nu } => {
                Ok(-2.0 * nu * coupling * r * r * (1.0 + r * r).powf(-nu - 1.0))
            }
            PotentialFamily::Hypergeometric { kappa, alpha, degree } => {
                let delta = self.delta().unwrap();
                if self.is_closed_form_hypergeometric() {
                    let c = closed_form_coupling(delta, *alpha)?;
                    Ok(2.0 * alpha * c * r * r * (1.0 + r * r).powf(-alpha - 1.0))
                } else {
                    neumann_wigner_virial(*kappa, *alpha, self.dim, *degree, r)
                }
            }
            PotentialFamily::TabulatedRadial(spline) => {
                Ok(spline.eval(r).map(|(_, dv)| r * dv).unwrap_or(0.0))
            }
        }
    }

    /// Sup and L¹ norms (d = 3 radial): ‖V‖_∞ and 4π∫r²|V(r)|dr.
    pub fn norms(&self) -> Result<PotentialNorms, PotentialError> {
        if self.dim != 3 {
            return Err(PotentialError::InvalidParameter(
                "norms are computed for d = 3 only".into(),
            ));
        }
        match &self.family {
            PotentialFamily::InversePower { coupling, beta } => {
                if *coupling == 0.0 {
                    return Ok(PotentialNorms { sup: 0.0, l1: 0.0 });
                }
                if *beta <= 3.0 {
                    return Err(PotentialError::DivergentNorm(format!(
                        "L¹ tail r^(2-{beta}) not integrable (needs beta > 3)"
                    )));
                }
                Ok(PotentialNorms {
                    sup: *coupling,
                    l1: self.l1_quadrature()?,
                })
            }
            PotentialFamily::PositiveBump { coupling, nu } => {
                if *coupling == 0.0 {
                    return Ok(PotentialNorms { sup: 0.0, l1: 0.0 });
                }
                if 2.0 * nu <= 3.0 {
                    return Err(PotentialError::DivergentNorm(format!(
                        "L¹ tail r^(2-2·{nu}) not integrable (needs nu > 3/2)"
                    )));
                }
                Ok(PotentialNorms {
                    sup: *coupling,
                    l1: self.l1_quadrature()?,
                })
            }
            PotentialFamily::HomogeneousCoulomb { .. } => Err(PotentialError::DivergentNorm(
                "sup norm unbounded at the origin and L¹ tail divergent".into(),
            )),
            PotentialFamily::Hypergeometric { alpha, .. } => {
                if self.is_closed_form_hypergeometric() {
                    let c = closed_form_coupling(self.delta().unwrap(), *alpha)?;
                    Potential::inverse_power(c, 2.0 * alpha, 3)?.norms()
                } else {
                    // Away from κ = (δ-α)/2 the tail is ~ r^{-α}, never L¹ in d=3.
                    Err(PotentialError::DivergentNorm(format!(
                        "general-κ tail ~ r^(-{alpha}) is not integrable in d = 3"
                    )))
                }
            }
            PotentialFamily::TabulatedRadial(spline) => {
                let mut sup: f64 = 0.0;
                let n = 4096;
                for i in 0..=n {
                    let r = spline.x_min()
                        + (spline.x_max() - spline.x_min()) * i as f64 / n as f64;
                    sup = sup.max(spline.eval(r).map(|(v, _)| v.abs()).unwrap_or(0.0));
                }
                Ok(PotentialNorms {
                    sup,
                    l1: self.l1_quadrature()?,
                })
            }
        }
    }

    fn l1_quadrature(&self) -> Result<f64, PotentialError> {
        let f = |r: f64| {
            4.0 * std::f64::consts::PI
                * r
                * r
                * self.eval_radial(r).map(f64::abs).unwrap_or(0.0)
        };
        let q = quad::integrate_to_inf(f, 1e-10, 1e-10, 8000);
        if !q.converged {
            return Err(PotentialError::DivergentNorm(
                "radial quadrature did not converge".into(),
            ));
        }
        Ok(q.value)
    }

    /// sup_x ⟨x⟩^s |V(x)|^{1/2} by 1-D maximization, with the analytic
    /// divergence checks per family.
    pub fn weighted_sup(&self, s: f64) -> Result<f64, PotentialError> {
        let decay_exponent = match &self.family {
            PotentialFamily::InversePower { beta, .. } => Some(*beta),
            PotentialFamily::PositiveBump { nu, .. } => Some(2.0 * nu),
            PotentialFamily::Hypergeometric { alpha, .. } => {
                if self.is_closed_form_hypergeometric() {
                    Some(2.0 * alpha)
                } else {
                    Some(*alpha)
                }
            }
            PotentialFamily::HomogeneousCoulomb { .. } => {
                return Err(PotentialError::DivergentNorm(
                    "⟨x⟩^s |V|^{1/2} unbounded at the origin".into(),
                ))
            }
            PotentialFamily::TabulatedRadial(_) => None,
        };
        if let Some(beta) = decay_exponent {
            if s > beta / 2.0 {
                return Err(PotentialError::DivergentNorm(format!(
                    "⟨x⟩^{s} |V|^(1/2) grows like r^({})",
                    s - beta / 2.0
                )));
            }
        }
        let r_max = match &self.family {
            PotentialFamily::TabulatedRadial(spline) => spline.x_max(),
            PotentialFamily::Hypergeometric { .. } if !self.is_closed_form_hypergeometric() => 9.9,
            _ => 1e8,
        };
        let mut sup: f64 = 0.0;
        let n = 8192;
        for i in 0..=n {
            // log-spaced from 1e-8 plus the origin itself
            let r = if i == 0 {
                0.0
            } else {
                1e-8 * (r_max / 1e-8f64).powf((i - 1) as f64 / (n - 1) as f64)
            };
            let v = self.eval_radial(r).map(f64::abs).unwrap_or(0.0);
            sup = sup.max((1.0 + r * r).powf(s / 2.0) * v.sqrt());
        }
        Ok(sup)
    }
}

/// ‖V‖_∞ and ‖V‖_1 for d = 3.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PotentialNorms {
    pub sup: f64,
    pub l1: f64,
}

/// The closed-form coupling 2^α Γ((δ+α)/2)/Γ((δ-α)/2).
pub fn closed_form_coupling(delta: f64, alpha: f64) -> Result<f64, SpecFunError> {
    Ok(2f64.powf(alpha) * specfun::gamma_real((delta + alpha) / 2.0)?
        / specfun::gamma_real((delta - alpha) / 2.0)?)
}

/// V_{κ,α}(r) via the regularized hypergeometric series (δ = d + 2l).
///
/// Limited to the hypergeometric argument domain (r² ≤ 99); at
/// κ = (δ-α)/2 this reproduces the closed form to roundoff, which is what
/// the identity tests pin down.
pub fn neumann_wigner_potential(
    kappa: f64,
    alpha: f64,
    dim: u32,
    degree: u32,
    r: f64,
) -> Result<f64, PotentialError> {
    if !(kappa > 0.0) || !(alpha > 0.0 && alpha < 2.0) || dim == 0 {
        return Err(PotentialError::InvalidParameter(format!(
            "neumann_wigner_potential: kappa={kappa}, alpha={alpha}, d={dim}"
        )));
    }
    let delta = dim as f64 + 2.0 * degree as f64;
    let prefactor = 2f64.powf(alpha) / specfun::gamma_real(kappa)?
        * specfun::gamma_real((delta + alpha) / 2.0)?
        * specfun::gamma_real(alpha / 2.0 + kappa)?;
    let radial = (1.0 + r * r).powf(kappa);
    let f = specfun::hyp2f1_reg(&Hyp2F1Params {
        a: (delta + alpha) / 2.0,
        b: alpha / 2.0 + kappa,
        c: delta / 2.0,
        z: -r * r,
    })?;
    Ok(-prefactor * radial * f)
}

/// x·∇V for the hypergeometric family, via
/// d/dz ₂F₁reg(a,b;c;z) = ab ₂F₁reg(a+1,b+1;c+1;z).
fn neumann_wigner_virial(
    kappa: f64,
    alpha: f64,
    dim: u32,
    degree: u32,
    r: f64,
) -> Result<f64, PotentialError> {
    let delta = dim as f64 + 2.0 * degree as f64;
    let a = (delta + alpha) / 2.0;
    let b = alpha / 2.0 + kappa;
    let c = delta / 2.0;
    let z = -r * r;
    let prefactor = 2f64.powf(alpha) / specfun::gamma_real(kappa)?
        * specfun::gamma_real(a)?
        * specfun::gamma_real(b)?;
    let f = specfun::hyp2f1_reg(&Hyp2F1Params { a, b, c, z })?;
    let fp = specfun::hyp2f1_reg(&Hyp2F1Params {
        a: a + 1.0,
        b: b + 1.0,
        c: c + 1.0,
        z,
    })?;
    let base = 1.0 + r * r;
    // r d/dr [-(pref)(1+r²)^κ F(-r²)]
    Ok(-prefactor * 2.0 * r * r * (kappa * base.powf(kappa - 1.0) * f - a * b * base.powf(kappa) * fp))
}

/// The zero-mode φ_κ(x) = P(x)(1+|x|²)^{-κ} with P ≡ 1 (l = 0) or
/// P(x) = x₁ (l = 1).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ZeroMode {
    pub kappa: f64,
    pub degree: u32,
    pub dim: u32,
}

impl ZeroMode {
    pub fn new(kappa: f64, degree: u32, dim: u32) -> Result<Self, PotentialError> {
        if degree > 1 {
            return Err(PotentialError::UnsupportedHarmonicDegree(degree));
        }
        if !(kappa > 0.0) || dim == 0 {
            return Err(PotentialError::InvalidParameter(format!(
                "zero mode needs kappa > 0, d >= 1; got kappa={kappa}, d={dim}"
            )));
        }
        Ok(ZeroMode { kappa, degree, dim })
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let r2 = x.iter().map(|xi| xi * xi).sum::<f64>();
        let p = if self.degree == 0 { 1.0 } else { x[0] };
        p * (1.0 + r2).powf(-self.kappa)
    }

    /// True iff ∫ r^{d-1} φ² dr < ∞, i.e. 4κ - 2l > d.
    pub fn square_integrable(&self) -> bool {
        4.0 * self.kappa - 2.0 * self.degree as f64 > self.dim as f64
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn eval_examples() {
        let ip = Potential::inverse_power(1.0, 2.0, 3).unwrap();
        assert_relative_eq!(ip.eval_radial(1.0).unwrap(), -0.5, max_relative = 1e-14);

        let cb = Potential::homogeneous_coulomb(1.0, 0.5, 3).unwrap();
        assert_relative_eq!(cb.eval_radial(4.0).unwrap(), -0.5, max_relative = 1e-14);
        assert!(matches!(
            cb.eval_radial(0.0),
            Err(PotentialError::SingularPoint)
        ));

        // κ = (δ-α)/2, d=3, l=0, α=1 has coupling 2 and value -2 at x = 0.
        let hyp = Potential::hypergeometric(1.0, 1.0, 3, 0).unwrap();
        assert!(hyp.is_closed_form_hypergeometric());
        assert_relative_eq!(hyp.eval_radial(0.0).unwrap(), -2.0, max_relative = 1e-12);
        assert_relative_eq!(hyp.eval_radial(1.0).unwrap(), -1.0, max_relative = 1e-12);
    }

    #[test]
    fn virial_examples() {
        let ip = Potential::inverse_power(1.0, 2.0, 3).unwrap();
        assert_relative_eq!(ip.virial_w(1.0).unwrap(), 0.5, max_relative = 1e-14);
        assert_eq!(ip.virial_w(0.0).unwrap(), 0.0);

        let cb = Potential::homogeneous_coulomb(1.0, 0.5, 3).unwrap();
        // W = -γV
        assert_relative_eq!(cb.virial_w(4.0).unwrap(), 0.25, max_relative = 1e-14);

        let pb = Potential::positive_bump(1.0, 1.0, 3).unwrap();
        assert_eq!(pb.virial_w(0.0).unwrap(), 0.0);
    }

    #[test]
    fn virial_matches_finite_differences() {
        let pots = vec![
            Potential::inverse_power(1.3, 2.5, 3).unwrap(),
            Potential::positive_bump(0.7, 1.25, 3).unwrap(),
            Potential::homogeneous_coulomb(1.0, 0.5, 3).unwrap(),
            Potential::hypergeometric(1.0, 1.0, 3, 0).unwrap(),
            Potential::hypergeometric(1.2, 1.0, 3, 0).unwrap(), // general κ
            Potential::hypergeometric(1.7, 0.5, 3, 1).unwrap(), // l = 1
        ];
        for p in pots {
            for i in 0..50 {
                let r = 10f64.powf(-2.0 + 2.9 * i as f64 / 49.0); // up to ~8
                let h = r * 1e-5;
                let w = p.virial_w(r).unwrap();
                let vp = p.eval_radial(r + h).unwrap();
                let vm = p.eval_radial(r - h).unwrap();
                let fd = r * (vp - vm) / (2.0 * h);
                assert!(
                    (w - fd).abs() <= 1e-6 * w.abs().max(1e-10),
                    "{:?} at r={r}: {w} vs {fd}",
                    p.family
                );
            }
        }
    }

    #[test]
    fn closed_form_identity_on_radii() {
        for degree in [0u32, 1] {
            for alpha in [0.5, 1.0, 1.5] {
                let delta = 3.0 + 2.0 * degree as f64;
                let kappa = (delta - alpha) / 2.0;
                let c = closed_form_coupling(delta, alpha).unwrap();
                for i in 0..30 {
                    let r = 9.0 * i as f64 / 29.0;
                    let v = neumann_wigner_potential(kappa, alpha, 3, degree, r).unwrap();
                    let closed = -c * (1.0 + r * r).powf(-alpha);
                    assert!(
                        (v - closed).abs() <= 1e-9 * closed.abs(),
                        "l={degree}, alpha={alpha}, r={r}: {v} vs {closed}"
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_family_decays() {
        for alpha in [0.75, 1.0, 1.5] {
            let p = Potential::hypergeometric((3.0 - alpha) / 2.0, alpha, 3, 0).unwrap();
            let v0 = p.eval_radial(0.0).unwrap().abs();
            let v9 = p.eval_radial(9.0).unwrap().abs();
            assert!(v9 < v0 / 10.0, "alpha={alpha}: {v9} vs {v0}");
        }
    }

    #[test]
    fn general_kappa_against_series_value() {
        // κ=1.2, d=3, l=0, α=1, r=2 goes through the Pfaff-mapped series.
        let v = neumann_wigner_potential(1.2, 1.0, 3, 0, 2.0).unwrap();
        assert!(v.is_finite() && v < 0.0, "got {v}");
        // Cross-checked against the double-double series oracle in the
        // specfun tests; the prefactor here is 2Γ(2)Γ(1.7)/Γ(1.2).
        let pref = 2.0 * specfun::gamma_real(2.0).unwrap() * specfun::gamma_real(1.7).unwrap()
            / specfun::gamma_real(1.2).unwrap();
        let f = specfun::hyp2f1_reg(&Hyp2F1Params {
            a: 2.0,
            b: 1.7,
            c: 1.5,
            z: -4.0,
        })
        .unwrap();
        assert_relative_eq!(v, -pref * 5f64.powf(1.2) * f, max_relative = 1e-13);
    }

    #[test]
    fn zero_mode_values_and_flag() {
        let zm = ZeroMode::new(1.0, 0, 3).unwrap();
        assert_eq!(zm.eval(&[0.0, 0.0, 0.0]), 1.0);
        assert_relative_eq!(zm.eval(&[3.0, 0.0, 0.0]), 0.1, max_relative = 1e-14);
        assert!(zm.square_integrable()); // 4·1 > 3

        let zm1 = ZeroMode::new(2.0, 1, 3).unwrap();
        assert_relative_eq!(zm1.eval(&[1.0, 0.0, 0.0]), 0.25, max_relative = 1e-14);
        assert!(zm1.square_integrable()); // 8 - 2 > 3

        assert!(!ZeroMode::new(0.25, 0, 1).unwrap().square_integrable()); // 1 > 1 fails

        assert!(matches!(
            ZeroMode::new(1.0, 2, 3),
            Err(PotentialError::UnsupportedHarmonicDegree(2))
        ));
    }

    #[test]
    fn zero_mode_flag_matches_quadrature_growth() {
        for (kappa, degree, dim) in [(1.0, 0u32, 3u32), (0.625, 0, 3), (2.0, 1, 3), (0.25, 0, 1)] {
            let zm = ZeroMode::new(kappa, degree, dim).unwrap();
            let integrand = |r: f64| {
                let phi = if degree == 0 {
                    (1.0 + r * r).powf(-kappa)
                } else {
                    r * (1.0 + r * r).powf(-kappa)
                };
                r.powi(dim as i32 - 1) * phi * phi
            };
            let i3 = quad::integrate(integrand, 0.0, 1e3, 1e-12, 1e-10, 6000).value;
            let i4 = quad::integrate(integrand, 0.0, 1e4, 1e-12, 1e-10, 6000).value;
            let grew = (i4 - i3) / i4.max(1e-300) > 0.05;
            assert_eq!(
                zm.square_integrable(),
                !grew,
                "kappa={kappa}, l={degree}, d={dim}: {i3} -> {i4}"
            );
        }
    }

    #[test]
    fn norms_inverse_power() {
        let p = Potential::inverse_power(1.0, 4.0, 3).unwrap();
        let n = p.norms().unwrap();
        assert_relative_eq!(n.sup, 1.0, max_relative = 1e-14);
        // 4π ∫ r²(1+r²)^{-2} dr = 4π · π/4 = π²
        assert_relative_eq!(n.l1, PI * PI, max_relative = 1e-8);

        assert!(matches!(
            Potential::inverse_power(1.0, 2.0, 3).unwrap().norms(),
            Err(PotentialError::DivergentNorm(_))
        ));
    }

    #[test]
    fn weighted_sup_behaviour() {
        let p = Potential::inverse_power(4.0, 4.0, 3).unwrap();
        // s = β/2: ⟨x⟩²·√(4)⟨x⟩^{-2} ≡ 2.
        assert_relative_eq!(p.weighted_sup(2.0).unwrap(), 2.0, max_relative = 1e-10);
        // s below β/2: sup at the origin.
        assert_relative_eq!(p.weighted_sup(1.0).unwrap(), 2.0, max_relative = 1e-10);
        assert!(p.weighted_sup(2.5).is_err());
    }
}
