//! Thermal bath: Bose occupation, its temperature derivative, and the
//! detailed-balanced absorption/emission rates `Γ₊ = Γ₀ n̄`, `Γ₋ = Γ₀ (n̄ + 1)`.
//!
//! Units are natural (`ħ = k_B = 1`); `omega` and `temperature` share a unit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Above this `ω/T` the occupation is reported as zero.
pub const OCCUPATION_UNDERFLOW: f64 = 700.0;

/// How the base rate `Γ₀` is obtained from `(gamma, g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum RateModel {
    /// `Γ₀ = γ`; `g` is ignored.
    #[default]
    Markovian,
    /// `Γ₀ = 4g²/γ`, the weak-coupling rate of a probe coupled with
    /// strength `g` to a lossy mode of linewidth `γ`.
    Purcell,
}

impl RateModel {
    pub fn as_str(self) -> &'static str {
        match self {
            RateModel::Markovian => "markovian",
            RateModel::Purcell => "purcell",
        }
    }
}

impl std::fmt::Display for RateModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for RateModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "markovian" | "markov" => Ok(RateModel::Markovian),
            "purcell" => Ok(RateModel::Purcell),
            other => Err(Error::domain(format!(
                "rate_model must be 'markovian' or 'purcell', got '{other}'"
            ))),
        }
    }
}

fn check_domain(omega: f64, temperature: f64) -> Result<()> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::domain("omega must be > 0"));
    }
    if !(temperature > 0.0) || !temperature.is_finite() {
        return Err(Error::domain("T must be > 0"));
    }
    Ok(())
}

/// True when `ω/T` is large enough that the occupation is flushed to zero.
pub fn occupation_underflows(omega: f64, temperature: f64) -> bool {
    omega / temperature > OCCUPATION_UNDERFLOW
}

/// Mean thermal photon number `1/(e^{ω/T} − 1)`.
pub fn thermal_occupation(omega: f64, temperature: f64) -> Result<f64> {
    check_domain(omega, temperature)?;
    let x = omega / temperature;
    if x > OCCUPATION_UNDERFLOW {
        return Ok(0.0);
    }
    Ok(1.0 / x.exp_m1())
}

/// `∂_T n̄ = (ω/T²) e^{x} / (e^{x} − 1)²` with `x = ω/T`, evaluated as
/// `(x/T) / (expm1(x) · −expm1(−x))` so neither limit cancels.
pub fn thermal_occupation_dt(omega: f64, temperature: f64) -> Result<f64> {
    check_domain(omega, temperature)?;
    let x = omega / temperature;
    if x > OCCUPATION_UNDERFLOW {
        return Ok(0.0);
    }
    Ok((x / temperature) / (x.exp_m1() * -(-x).exp_m1()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BathParams {
    pub omega: f64,
    pub temperature: f64,
    pub gamma: f64,
    pub g: f64,
    pub rate_model: RateModel,
}

impl BathParams {
    pub fn new(omega: f64, temperature: f64, gamma: f64, g: f64, rate_model: RateModel) -> Result<Self> {
        let params = BathParams { omega, temperature, gamma, g, rate_model };
        params.validate()?;
        Ok(params)
    }

    pub fn markovian(omega: f64, temperature: f64, gamma: f64) -> Result<Self> {
        Self::new(omega, temperature, gamma, 0.0, RateModel::Markovian)
    }

    pub fn validate(&self) -> Result<()> {
        check_domain(self.omega, self.temperature)?;
        if !(self.gamma > 0.0) || !self.gamma.is_finite() {
            return Err(Error::domain("gamma must be > 0"));
        }
        if !(self.g >= 0.0) || !self.g.is_finite() {
            return Err(Error::domain("g must be >= 0"));
        }
        Ok(())
    }

    pub fn with_temperature(&self, temperature: f64) -> Self {
        BathParams { temperature, ..*self }
    }

    /// Temperature-independent base rate `Γ₀`.
    pub fn base_rate(&self) -> Result<f64> {
        match self.rate_model {
            RateModel::Markovian => Ok(self.gamma),
            RateModel::Purcell => {
                if !(self.gamma > 0.0) {
                    return Err(Error::domain("Purcell rate needs gamma > 0"));
                }
                Ok(4.0 * self.g * self.g / self.gamma)
            }
        }
    }

    pub fn occupation(&self) -> Result<f64> {
        thermal_occupation(self.omega, self.temperature)
    }

    pub fn occupation_dt(&self) -> Result<f64> {
        thermal_occupation_dt(self.omega, self.temperature)
    }
}

/// Absorption (`gamma_plus`) and emission (`gamma_minus`) rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rates {
    pub gamma_plus: f64,
    pub gamma_minus: f64,
    pub gamma0: f64,
}

impl Rates {
    pub fn from_base(gamma0: f64, nbar: f64) -> Self {
        Rates {
            gamma_plus: gamma0 * nbar,
            gamma_minus: gamma0 * (nbar + 1.0),
            gamma0,
        }
    }

    /// Occupation of the stationary thermal state, `Γ₊/(Γ₋ − Γ₊)`.
    pub fn steady_occupation(&self) -> f64 {
        self.gamma_plus / (self.gamma_minus - self.gamma_plus)
    }
}

pub fn rates(params: &BathParams) -> Result<Rates> {
    params.validate()?;
    let gamma0 = params.base_rate()?;
    Ok(Rates::from_base(gamma0, params.occupation()?))
}

/// `(∂_T Γ₊, ∂_T Γ₋)`; both equal `Γ₀ ∂_T n̄` because `Γ₀` carries no
/// temperature dependence.
pub fn rate_derivatives(params: &BathParams) -> Result<(f64, f64)> {
    let gamma0 = params.base_rate()?;
    let dn = params.occupation_dt()?;
    Ok((gamma0 * dn, gamma0 * dn))
}
