//! Closed-form constants: the sharp semiclassical constant, the κ pairs
//! linking one-bound-state constants to Gagliardo–Nirenberg constants, and
//! the interpolation constants 𝒦.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::gamma_ln;

const FOUR_PI: f64 = 4.0 * std::f64::consts::PI;

/// Physical parameters of the Schrödinger operator −(ħ²/2m)Δ + V.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SemiclassicalParams {
    pub gamma: f64,
    pub d: u32,
    pub hbar: f64,
    pub mass: f64,
}

impl SemiclassicalParams {
    /// Units in which the operator is −Δ + V (ħ = 1, m = 1/2).
    pub fn unit(gamma: f64, d: u32) -> Self {
        Self {
            gamma,
            d,
            hbar: 1.0,
            mass: 0.5,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_dim(self.d)?;
        if !(self.hbar > 0.0 && self.hbar.is_finite()) {
            return Err(Error::domain(format!("hbar must be positive, got {}", self.hbar)));
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(Error::domain(format!("mass must be positive, got {}", self.mass)));
        }
        if !self.gamma.is_finite() {
            return Err(Error::domain("gamma must be finite"));
        }
        Ok(())
    }
}

/// Which Gagliardo–Nirenberg family a constant belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Negative potentials, q > 1.
    Standard,
    /// Positive confining potentials, q ∈ (0, 1).
    Dual,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Family::Standard),
            "dual" => Ok(Family::Dual),
            other => Err(Error::input(format!("unknown family `{other}` (expected standard|dual)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KappaPair {
    pub kappa1: f64,
    pub kappa2: f64,
    /// Lebesgue half-exponent of the associated Gagliardo–Nirenberg inequality.
    pub q: f64,
}

pub(crate) fn check_dim(d: u32) -> Result<()> {
    if d == 0 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    Ok(())
}

fn check_standard(gamma: f64, d: u32) -> Result<()> {
    check_dim(d)?;
    let floor = (1.0 - 0.5 * d as f64).max(0.0);
    if !(gamma > floor) || !gamma.is_finite() {
        return Err(Error::domain(format!(
            "standard family needs gamma > {floor} in d={d}, got {gamma}"
        )));
    }
    Ok(())
}

fn check_dual(gamma: f64, d: u32) -> Result<()> {
    check_dim(d)?;
    if !(gamma > 0.5 * d as f64) || !gamma.is_finite() {
        return Err(Error::domain(format!(
            "gamma must exceed d/2 = {} (pole of Γ(γ−d/2)), got {gamma}",
            0.5 * d as f64
        )));
    }
    Ok(())
}

/// 𝒞(γ) = (m/(2πħ²))^{d/2} Γ(γ−d/2)/Γ(γ).
pub fn sharp_constant(p: &SemiclassicalParams) -> Result<f64> {
    p.validate()?;
    check_dual(p.gamma, p.d)?;
    let half = 0.5 * p.d as f64;
    let scale = half * (p.mass / (2.0 * std::f64::consts::PI * p.hbar * p.hbar)).ln();
    Ok((scale + gamma_ln(p.gamma - half)? - gamma_ln(p.gamma)?).exp())
}

/// 𝒞(γ) in units ħ = 1, m = 1/2.
pub fn sharp_constant_unit(gamma: f64, d: u32) -> Result<f64> {
    sharp_constant(&SemiclassicalParams::unit(gamma, d))
}

/// Semiclassical value of the standard Lieb–Thirring constant,
/// Γ(γ+1)/((4π)^{d/2} Γ(γ+1+d/2)). A lower bound for the sharp constant and
/// a documented preset for the caller-supplied C_LT(γ).
pub fn semiclassical_lt_constant(gamma: f64, d: u32) -> Result<f64> {
    check_standard(gamma, d)?;
    let half = 0.5 * d as f64;
    Ok((gamma_ln(gamma + 1.0)? - gamma_ln(gamma + 1.0 + half)? - half * FOUR_PI.ln()).exp())
}

/// q = (2γ+d)/(2γ+d−2) for the standard family.
pub fn q_standard(gamma: f64, d: u32) -> Result<f64> {
    check_standard(gamma, d)?;
    let s = 2.0 * gamma + d as f64;
    Ok(s / (s - 2.0))
}

/// q = (2γ−d)/(2γ+2−d) for the dual family.
pub fn q_dual(gamma: f64, d: u32) -> Result<f64> {
    check_dual(gamma, d)?;
    let s = 2.0 * gamma - d as f64;
    Ok(s / (s + 2.0))
}

/// κ₁ = (2γ/d)(d/(2γ+d))^{1+d/(2γ)}, κ₂ = 2 + d/γ.
pub fn kappa_standard(gamma: f64, d: u32) -> Result<KappaPair> {
    check_standard(gamma, d)?;
    let df = d as f64;
    let kappa1 = 2.0 * gamma / df * (df / (2.0 * gamma + df)).powf(1.0 + df / (2.0 * gamma));
    Ok(KappaPair {
        kappa1,
        kappa2: 2.0 + df / gamma,
        q: q_standard(gamma, d)?,
    })
}

/// κ₁ = (2q)^{γ−d/2}(d(1−q))^{d/2}/(d(1−q)+2q)^γ, κ₂ = 2γ.
pub fn kappa_dual(gamma: f64, d: u32) -> Result<KappaPair> {
    let q = q_dual(gamma, d)?;
    let df = d as f64;
    let a = 2.0 * q;
    let b = df * (1.0 - q);
    let ln_k1 = (gamma - 0.5 * df) * a.ln() + 0.5 * df * b.ln() - gamma * (a + b).ln();
    Ok(KappaPair {
        kappa1: ln_k1.exp(),
        kappa2: 2.0 * gamma,
        q,
    })
}

/// Both sides of 2q/(d(1−q)+2q) = 1 − d/(2γ) for the dual family.
pub fn dual_exponent_identity(gamma: f64, d: u32) -> Result<(f64, f64)> {
    let q = q_dual(gamma, d)?;
    let df = d as f64;
    Ok((2.0 * q / (df * (1.0 - q) + 2.0 * q), 1.0 - df / (2.0 * gamma)))
}

/// The two readings of the relation between the standard one-bound-state
/// constant and C_GN.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KappaRelation {
    /// (κ₁ C_GN^{−κ₂})^γ: the power the variational argument produces.
    pub proof_consistent: f64,
    /// κ₁ C_GN^{−κ₂} taken verbatim.
    pub literal: f64,
}

/// One-bound-state constant predicted from C_GN for the standard family.
pub fn standard_relation(gamma: f64, d: u32, c_gn: f64) -> Result<KappaRelation> {
    if !(c_gn > 0.0) {
        return Err(Error::domain("C_GN must be positive"));
    }
    let k = kappa_standard(gamma, d)?;
    let literal = k.kappa1 * c_gn.powf(-k.kappa2);
    Ok(KappaRelation {
        proof_consistent: literal.powf(gamma),
        literal,
    })
}

/// 𝒞^{(1)}(γ) = κ₁ C*_GN^{−2γ} for the dual family.
pub fn dual_relation(gamma: f64, d: u32, c_star: f64) -> Result<f64> {
    if !(c_star > 0.0) {
        return Err(Error::domain("C*_GN must be positive"));
    }
    let k = kappa_dual(gamma, d)?;
    Ok(k.kappa1 * c_star.powf(-k.kappa2))
}

/// Interpolation constant 𝒦 with 𝒦^{−1} = q[C(γ ± d/2)]^{q−1}, where C is the
/// supplied C_LT(γ) for the standard family and 𝒞(γ) for the dual family.
pub fn interp_constant(family: Family, gamma: f64, d: u32, c_lt: Option<f64>) -> Result<f64> {
    let half = 0.5 * d as f64;
    let (q, base) = match family {
        Family::Standard => {
            let q = q_standard(gamma, d)?;
            let c = c_lt.ok_or_else(|| {
                Error::MissingInput("the standard family needs a caller-supplied C_LT(γ)".into())
            })?;
            if !(c > 0.0) || !c.is_finite() {
                return Err(Error::domain(format!("C_LT must be positive, got {c}")));
            }
            (q, c * (gamma + half))
        }
        Family::Dual => {
            let q = q_dual(gamma, d)?;
            (q, sharp_constant_unit(gamma, d)? * (gamma - half))
        }
    };
    Ok(1.0 / (q * base.powf(q - 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sharp_constant_values() {
        assert!((sharp_constant_unit(1.0, 1).unwrap() - 0.5).abs() < 1e-14);
        assert!((sharp_constant_unit(1.5, 1).unwrap() - std::f64::consts::FRAC_1_PI).abs() < 1e-14);
        assert!((sharp_constant_unit(2.0, 1).unwrap() - 0.25).abs() < 1e-14);
        let p = SemiclassicalParams { gamma: 1.0, d: 1, hbar: 1.0, mass: 1.0 };
        assert!((sharp_constant(&p).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn sharp_constant_pole() {
        assert!(matches!(sharp_constant_unit(0.5, 1), Err(Error::Domain(_))));
        assert!(matches!(sharp_constant_unit(1.0, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn kappa_values() {
        let k = kappa_standard(1.5, 1).unwrap();
        assert!((k.kappa1 - 3.0 * 4f64.powf(-4.0 / 3.0)).abs() < 1e-14);
        assert!((k.kappa2 - 8.0 / 3.0).abs() < 1e-15);
        let k = kappa_standard(2.0, 2).unwrap();
        assert!((k.kappa1 - 2.0 * (1.0f64 / 3.0).powf(1.5)).abs() < 1e-14);
        assert_eq!(k.kappa2, 3.0);
        let k = kappa_dual(2.0, 1).unwrap();
        assert!((k.q - 0.6).abs() < 1e-15);
        assert!((k.kappa1 - 0.324_759_526_419_164).abs() < 1e-12);
        assert_eq!(k.kappa2, 4.0);
        let k = kappa_dual(2.5, 3).unwrap();
        assert!((k.q - 0.5).abs() < 1e-15);
        assert!((k.kappa1 - 1.5f64.powf(1.5) / 2.5f64.powf(2.5)).abs() < 1e-14);
    }

    #[test]
    fn exponent_identity() {
        let (l, r) = dual_exponent_identity(2.0, 1).unwrap();
        assert!((l - 0.75).abs() < 1e-15 && (r - 0.75).abs() < 1e-15);
    }

    #[test]
    fn interpolation_constants() {
        let k = interp_constant(Family::Dual, 2.0, 1, None).unwrap();
        assert!((k - 1.125_800_032_100_511).abs() < 1e-12);
        let c = semiclassical_lt_constant(1.5, 1).unwrap();
        assert!((c - 0.1875).abs() < 1e-14);
        let k = interp_constant(Family::Standard, 1.5, 1, Some(c)).unwrap();
        assert!((k - 4.0 / 3.0).abs() < 1e-14);
        assert!(matches!(
            interp_constant(Family::Standard, 1.5, 1, None),
            Err(Error::MissingInput(_))
        ));
    }

    #[test]
    fn soliton_chain_relation() {
        let c_gn = 1.147_202_690_439_877;
        let r = standard_relation(1.5, 1, c_gn).unwrap();
        assert!((r.proof_consistent - 0.1875).abs() < 1e-13);
        assert!((r.literal - 0.1875f64.powf(2.0 / 3.0)).abs() < 1e-13);
    }
}
