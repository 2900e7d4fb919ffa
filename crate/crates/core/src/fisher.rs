//! Temperature sensitivity of the evolved probe: finite-difference
//! derivatives `∂_T ρ(t; T)`, the classical Fisher information of photon
//! counting, and the SLD quantum Fisher information.
//!
//! The whole evolution is differentiated, never the rates, so every probe
//! shares one code path and the analytic short-time formulas stay
//! independent references.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bath::{rates, BathParams};
use crate::dynamics::{evolve, EvolutionConfig, EvolutionMethod, PopulationVector, SHORT_TIME_LIMIT};
use crate::error::{Error, Result};
use crate::fockspace::{hermitian_eigen, hermiticity_defect, CMatrix, DensityMatrix, FockDim, LEAKAGE_BUDGET};
use crate::probes::{default_dim, make_state, ProbeSpec};

/// Populations at or below this are left out of classical Fisher sums.
pub const P_FLOOR: f64 = 1e-14;

/// SLD terms with `λ_i + λ_j` at or below this are dropped.
pub const LAMBDA_FLOOR: f64 = 1e-12;

/// `dp²` above which an empty level makes the Fisher information diverge.
const SINGULAR_DP2: f64 = 1e-16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivativeConfig {
    pub h_rel: f64,
    pub richardson: bool,
    pub h_abs_floor: f64,
}

impl Default for DerivativeConfig {
    fn default() -> Self {
        DerivativeConfig { h_rel: 1e-4, richardson: true, h_abs_floor: 1e-7 }
    }
}

impl DerivativeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.h_rel > 0.0) || !self.h_rel.is_finite() {
            return Err(Error::domain("h_rel must be > 0"));
        }
        if !(self.h_abs_floor > 0.0) || !self.h_abs_floor.is_finite() {
            return Err(Error::domain("h_abs_floor must be > 0"));
        }
        Ok(())
    }

    /// Step `max(h_rel·T, h_abs_floor)`, halved until `T − h > 0`.
    pub fn step(&self, temperature: f64) -> Result<f64> {
        let mut h = (self.h_rel * temperature).max(self.h_abs_floor);
        while temperature - h <= 0.0 {
            h *= 0.5;
            if h <= temperature * f64::EPSILON * 16.0 || h == 0.0 {
                return Err(Error::StepUnderflow { temperature });
            }
        }
        Ok(h)
    }
}

/// Everything needed to turn a probe and bath into a Fisher value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalSettings {
    /// `None` picks [`default_dim`] for each probe.
    pub dim: Option<usize>,
    /// Upper cap applied to automatically chosen cutoffs.
    pub dim_max: Option<usize>,
    /// `None` picks the exact exponential for number-diagonal probes.
    pub evolution: Option<EvolutionMethod>,
    pub dt: Option<f64>,
    pub leakage_budget: f64,
    pub derivative: DerivativeConfig,
}

impl Default for EvalSettings {
    fn default() -> Self {
        EvalSettings {
            dim: None,
            dim_max: None,
            evolution: None,
            dt: None,
            leakage_budget: LEAKAGE_BUDGET,
            derivative: DerivativeConfig::default(),
        }
    }
}

impl EvalSettings {
    pub fn resolve_dim(&self, probe: &ProbeSpec, bath: &BathParams) -> Result<FockDim> {
        match self.dim {
            Some(d) => FockDim::new(d),
            None => {
                let auto = default_dim(probe, bath.occupation()?).get();
                FockDim::new(self.dim_max.map_or(auto, |cap| auto.min(cap)))
            }
        }
    }

    pub fn evolution_config(&self, probe: &ProbeSpec, t: f64) -> EvolutionConfig {
        EvolutionConfig {
            t_final: t,
            dt: self.dt,
            method: self.evolution.unwrap_or_else(|| EvolutionMethod::auto(probe.is_number_diagonal())),
            leakage_budget: self.leakage_budget,
        }
    }
}

/// `ρ(t;T)` and its temperature derivative.
#[derive(Debug, Clone, PartialEq)]
pub struct StateDerivative {
    pub state: DensityMatrix,
    pub derivative: CMatrix,
    pub h_used: f64,
    /// Largest top-level population over all evolutions involved.
    pub leakage: f64,
}

impl StateDerivative {
    pub fn cfi(&self) -> Result<f64> {
        let p = PopulationVector::from_state(&self.state)?;
        let dp: Vec<f64> = (0..self.derivative.nrows()).map(|m| self.derivative[(m, m)].re).collect();
        cfi_number_basis(&p, &dp)
    }

    pub fn qfi_sld(&self) -> Result<SldFisher> {
        qfi_sld(&self.state, &self.derivative)
    }
}

/// Central difference of the evolved state in `T`, optionally
/// Richardson-extrapolated as `(4 D_{h/2} − D_h)/3`.
pub fn state_derivative(
    probe: &ProbeSpec,
    bath: &BathParams,
    dim: FockDim,
    evo: &EvolutionConfig,
    diff: &DerivativeConfig,
) -> Result<StateDerivative> {
    bath.validate()?;
    diff.validate()?;
    let rho0 = make_state(probe, dim)?;
    let temperature = bath.temperature;
    let h = diff.step(temperature)?;
    let mut leakage: f64 = 0.0;

    let mut evolve_at = |temp: f64| -> Result<CMatrix> {
        let r = rates(&bath.with_temperature(temp))?;
        let out = evolve(&rho0, &r, evo)?;
        leakage = leakage.max(out.peak_leakage);
        Ok(out.state.into_matrix())
    };

    let center = evolve_at(temperature)?;
    let mut central = |step: f64| -> Result<CMatrix> {
        let plus = evolve_at(temperature + step)?;
        let minus = evolve_at(temperature - step)?;
        Ok((plus - minus) / Complex64::new(2.0 * step, 0.0))
    };
    let coarse = central(h)?;
    let mut derivative = if diff.richardson {
        let fine = central(0.5 * h)?;
        (fine * Complex64::new(4.0, 0.0) - coarse) / Complex64::new(3.0, 0.0)
    } else {
        coarse
    };
    derivative = (&derivative + derivative.adjoint()) * Complex64::new(0.5, 0.0);

    Ok(StateDerivative {
        state: DensityMatrix::from_matrix(center)?,
        derivative,
        h_used: h,
        leakage,
    })
}

/// `Σ_m (∂p_m)²/p_m` over levels with `p_m > P_FLOOR`.
pub fn cfi_number_basis(p: &PopulationVector, dp: &[f64]) -> Result<f64> {
    if p.len() != dp.len() {
        return Err(Error::DimensionMismatch { expected: p.len(), found: dp.len() });
    }
    let mut total = 0.0;
    for (level, (&pm, &dpm)) in p.as_slice().iter().zip(dp).enumerate() {
        if pm > P_FLOOR {
            total += dpm * dpm / pm;
        } else if pm <= 0.0 && dpm * dpm > SINGULAR_DP2 {
            return Err(Error::SingularSupport { level, p: pm, dp: dpm });
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SldFisher {
    pub value: f64,
    /// Eigenpairs with non-negligible `∂ρ` weight skipped by the `λ` floor.
    pub dropped_pairs: usize,
}

/// `2 Σ_{ij} |⟨i|∂ρ|j⟩|² / (λ_i + λ_j)` in the eigenbasis of `ρ`.
pub fn qfi_sld(rho: &DensityMatrix, drho: &CMatrix) -> Result<SldFisher> {
    let d = rho.dim().get();
    if drho.nrows() != d || drho.ncols() != d {
        return Err(Error::DimensionMismatch { expected: d, found: drho.nrows() });
    }
    let rho_defect = hermiticity_defect(rho.matrix());
    if rho_defect > 1e-10 {
        return Err(Error::NotHermitian { defect: rho_defect });
    }
    let scale = drho.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let d_defect = hermiticity_defect(drho);
    if d_defect > 1e-8 * scale {
        return Err(Error::NotHermitian { defect: d_defect });
    }

    let hermitised = (rho.matrix() + rho.matrix().adjoint()) * Complex64::new(0.5, 0.0);
    let (lambda, vectors) = hermitian_eigen(&hermitised);
    let lambda: Vec<f64> = lambda.into_iter().map(|l| l.max(0.0)).collect();
    let rotated: DMatrix<Complex64> = vectors.adjoint() * drho * &vectors;

    let mut value = 0.0;
    let mut dropped = 0;
    for i in 0..d {
        for j in 0..d {
            let weight = rotated[(i, j)].norm_sqr();
            let denom = lambda[i] + lambda[j];
            if denom > LAMBDA_FLOOR {
                value += 2.0 * weight / denom;
            } else if weight > SINGULAR_DP2 {
                dropped += 1;
            }
        }
    }
    Ok(SldFisher { value, dropped_pairs: dropped })
}

/// Which Fisher quantity a record holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    #[serde(rename = "cfi")]
    CfiNumber,
    #[serde(rename = "qfi")]
    QfiSld,
    BoundFockLinear,
    BoundFockQuadratic,
    BoundSqueezed,
    BoundCoherent,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::CfiNumber,
        Method::QfiSld,
        Method::BoundFockLinear,
        Method::BoundFockQuadratic,
        Method::BoundSqueezed,
        Method::BoundCoherent,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::CfiNumber => "cfi",
            Method::QfiSld => "qfi",
            Method::BoundFockLinear => "bound_fock_linear",
            Method::BoundFockQuadratic => "bound_fock_quadratic",
            Method::BoundSqueezed => "bound_squeezed",
            Method::BoundCoherent => "bound_coherent",
        }
    }

    pub fn is_numerical(self) -> bool {
        matches!(self, Method::CfiNumber | Method::QfiSld)
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        let method = match key.as_str() {
            "cfi" | "cfi_number" => Method::CfiNumber,
            "qfi" | "sld" | "qfi_sld" => Method::QfiSld,
            "bound_fock_linear" | "fock_linear" => Method::BoundFockLinear,
            "bound_fock_quadratic" | "fock_quadratic" => Method::BoundFockQuadratic,
            "bound_squeezed" | "squeezed" => Method::BoundSqueezed,
            "bound_coherent" | "coherent" => Method::BoundCoherent,
            _ => {
                let names: Vec<_> = Method::ALL.iter().map(|m| m.as_str()).collect();
                return Err(Error::domain(format!("method must be one of {}, got '{s}'", names.join(", "))));
            }
        };
        Ok(method)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Finite-difference step in `T`; zero for closed-form bounds.
    pub h_used: f64,
    pub dropped_pairs: usize,
    pub leakage: f64,
    pub valid_short_time: bool,
}

/// One evaluated Fisher-information point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QfiRecord {
    pub value: f64,
    pub method: Method,
    pub t: f64,
    pub probe: ProbeSpec,
    pub bath: BathParams,
    pub dim: usize,
    pub diagnostics: Diagnostics,
}

impl QfiRecord {
    /// Cramér–Rao limit `1/√F` on the temperature uncertainty.
    pub fn delta_t_min(&self) -> f64 {
        1.0 / self.value.sqrt()
    }
}

/// Clip roundoff negatives; anything below `-1e-12` is a bug upstream.
pub(crate) fn clip_fisher(value: f64) -> Result<f64> {
    if value < -1e-12 || value.is_nan() {
        return Err(Error::domain(format!("Fisher information {value:e} is negative")));
    }
    Ok(value.max(0.0))
}

/// `Γ₀ t (2n+1) ≤ 0.1` with `n` the probe's mean photon number.
pub fn short_time_valid(probe: &ProbeSpec, bath: &BathParams, t: f64) -> Result<bool> {
    let gamma0 = bath.base_rate()?;
    Ok(gamma0 * t * (2.0 * probe.mean_photon_number() + 1.0) <= SHORT_TIME_LIMIT)
}

/// Numerical Fisher information (CFI or SLD-QFI) at one time.
pub fn numerical_record(
    probe: &ProbeSpec,
    bath: &BathParams,
    t: f64,
    method: Method,
    settings: &EvalSettings,
) -> Result<QfiRecord> {
    if !method.is_numerical() {
        return Err(Error::domain(format!("{method} is a closed-form bound, not a numerical method")));
    }
    let dim = settings.resolve_dim(probe, bath)?;
    let evo = settings.evolution_config(probe, t);
    let sd = state_derivative(probe, bath, dim, &evo, &settings.derivative)?;
    let (value, dropped) = match method {
        Method::CfiNumber => (sd.cfi()?, 0),
        _ => {
            let sld = sd.qfi_sld()?;
            (sld.value, sld.dropped_pairs)
        }
    };
    Ok(QfiRecord {
        value: clip_fisher(value)?,
        method,
        t,
        probe: *probe,
        bath: *bath,
        dim: dim.get(),
        diagnostics: Diagnostics {
            h_used: sd.h_used,
            dropped_pairs: dropped,
            leakage: sd.leakage,
            valid_short_time: short_time_valid(probe, bath, t)?,
        },
    })
}

/// One numerical record per time in an ascending, nonnegative grid.
pub fn qfi_curve(
    probe: &ProbeSpec,
    bath: &BathParams,
    t_grid: &[f64],
    method: Method,
    settings: &EvalSettings,
) -> Result<Vec<QfiRecord>> {
    if t_grid.iter().any(|t| !(*t >= 0.0)) {
        return Err(Error::domain("time grid must be nonnegative"));
    }
    if t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("time grid must be strictly ascending"));
    }
    t_grid.iter().map(|&t| numerical_record(probe, bath, t, method, settings)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::{rate_derivatives, thermal_occupation, thermal_occupation_dt};
    use crate::probes::energy_match;
    use approx::assert_relative_eq;

    fn fig_bath() -> BathParams {
        BathParams::markovian(1.0, 0.5, 0.1).unwrap()
    }

    fn derivative(probe: ProbeSpec, t: f64) -> StateDerivative {
        let settings = EvalSettings::default();
        let bath = fig_bath();
        let d = settings.resolve_dim(&probe, &bath).unwrap();
        state_derivative(&probe, &bath, d, &settings.evolution_config(&probe, t), &settings.derivative).unwrap()
    }

    fn log_slope(xs: &[f64], ys: &[f64]) -> f64 {
        let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
        let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
        let n = lx.len() as f64;
        let mx = lx.iter().sum::<f64>() / n;
        let my = ly.iter().sum::<f64>() / n;
        let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
        sxy / sxx
    }

    #[test]
    fn step_selection() {
        let cfg = DerivativeConfig::default();
        assert_relative_eq!(cfg.step(0.5).unwrap(), 5e-5);
        assert_relative_eq!(cfg.step(1e-4).unwrap(), 1e-7);
        // floor larger than T: halved until T − h > 0
        let h = cfg.step(5e-8).unwrap();
        assert!(h < 5e-8 && h > 0.0);
        let coarse = DerivativeConfig { h_abs_floor: 1.0, ..cfg };
        let tiny = coarse.step(1e-300).unwrap();
        assert!(tiny < 1e-300 && tiny > 0.0);
        assert!(coarse.step(5e-324).is_err());
        assert!(DerivativeConfig { h_rel: 0.0, ..cfg }.validate().is_err());
    }

    #[test]
    fn zero_time_has_zero_derivative() {
        let sd = derivative(ProbeSpec::Fock { n: 2 }, 0.0);
        assert!(sd.derivative.iter().all(|z| z.norm() < 1e-10));
        let rec = numerical_record(&ProbeSpec::Fock { n: 2 }, &fig_bath(), 0.0, Method::QfiSld, &EvalSettings::default())
            .unwrap();
        assert!(rec.value.abs() < 1e-8);
    }

    #[test]
    fn thermal_probe_derivative_is_traceless() {
        let nbar = thermal_occupation(1.0, 0.5).unwrap();
        let sd = derivative(ProbeSpec::Thermal { nbar }, 0.7);
        assert!(sd.derivative.iter().any(|z| z.norm() > 1e-4));
        assert!(sd.derivative.trace().norm() < 1e-8);
        assert!(hermiticity_defect(&sd.derivative) < 1e-8);
    }

    #[test]
    fn fock_population_derivatives_match_first_order() {
        let t = 0.01;
        let bath = fig_bath();
        let (dgp, dgm) = rate_derivatives(&bath).unwrap();
        let sd = derivative(ProbeSpec::Fock { n: 1 }, t);
        let dp: Vec<f64> = (0..4).map(|m| sd.derivative[(m, m)].re).collect();
        let expect = [t * dgm, -t * (2.0 * dgp + dgm), t * 2.0 * dgp];
        for (got, want) in dp.iter().zip(expect) {
            // O(t²) corrections at Γ₀t = 1e-3
            assert_relative_eq!(*got, want, max_relative = 1e-2);
        }
    }

    #[test]
    fn two_outcome_cfi() {
        let p = PopulationVector::new(vec![0.5, 0.5]).unwrap();
        assert_relative_eq!(cfi_number_basis(&p, &[0.1, -0.1]).unwrap(), 0.04, max_relative = 1e-15);
        assert_eq!(cfi_number_basis(&p, &[0.0, 0.0]).unwrap(), 0.0);
        assert!(cfi_number_basis(&p, &[0.0]).is_err());
        let empty = PopulationVector::new(vec![1.0, 0.0]).unwrap();
        assert!(matches!(cfi_number_basis(&empty, &[-0.1, 0.1]), Err(Error::SingularSupport { level: 1, .. })));
    }

    #[test]
    fn sld_reduces_to_cfi_for_diagonal_families() {
        let p = [0.6, 0.3, 0.1, 0.0];
        let dp = [-0.2, 0.15, 0.05, 0.0];
        let rho = DensityMatrix::diagonal(&p).unwrap();
        let drho = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(4, dp.iter().map(|&x| Complex64::new(x, 0.0))));
        let sld = qfi_sld(&rho, &drho).unwrap();
        let cfi = cfi_number_basis(&PopulationVector::new(p.to_vec()).unwrap(), &dp).unwrap();
        assert_relative_eq!(sld.value, cfi, max_relative = 1e-10);
        assert_eq!(qfi_sld(&rho, &CMatrix::zeros(4, 4)).unwrap().value, 0.0);

        let mut skew = CMatrix::zeros(4, 4);
        skew[(0, 1)] = Complex64::new(0.1, 0.0);
        assert!(matches!(qfi_sld(&rho, &skew), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn sld_exceeds_cfi_for_coherent_probe() {
        let sd = derivative(ProbeSpec::Coherent { alpha: Complex64::new(1.0, 0.0) }, 0.01);
        let qfi = sd.qfi_sld().unwrap().value;
        let cfi = sd.cfi().unwrap();
        assert!(qfi >= cfi - 1e-9);
        assert!(qfi > 10.0 * cfi, "coherences carry most of the information: {qfi} vs {cfi}");
    }

    /// A coherent probe relaxes to a displaced thermal state whose
    /// displacement does not depend on T, so its QFI is that of a thermal
    /// state of occupation N(t) = n̄(1 − e^{−Γ₀t}): (∂_T N)²/(N(N+1)).
    fn displaced_thermal_qfi(t: f64) -> f64 {
        let nbar = thermal_occupation(1.0, 0.5).unwrap();
        let dnbar = thermal_occupation_dt(1.0, 0.5).unwrap();
        let w = -(-0.1 * t).exp_m1();
        let (n, dn) = (nbar * w, dnbar * w);
        dn * dn / (n * (n + 1.0))
    }

    #[test]
    fn coherent_qfi_matches_displaced_thermal_closed_form() {
        for (alpha, t) in [(1.0, 0.01), (1.0, 0.5), (1.7, 0.1)] {
            let sd = derivative(ProbeSpec::Coherent { alpha: Complex64::new(alpha, 0.0) }, t);
            let qfi = sd.qfi_sld().unwrap().value;
            assert_relative_eq!(qfi, displaced_thermal_qfi(t), max_relative = 1e-6);
        }
    }

    #[test]
    fn qfi_is_phase_covariant() {
        let bath = fig_bath();
        let s = EvalSettings::default();
        let a = ProbeSpec::Coherent { alpha: Complex64::new(1.2, 0.0) };
        let b = ProbeSpec::Coherent { alpha: Complex64::from_polar(1.2, 2.1) };
        for method in [Method::QfiSld, Method::CfiNumber] {
            let fa = numerical_record(&a, &bath, 0.2, method, &s).unwrap().value;
            let fb = numerical_record(&b, &bath, 0.2, method, &s).unwrap().value;
            assert_relative_eq!(fa, fb, max_relative = 1e-8);
        }
    }

    #[test]
    fn richardson_agrees_with_plain_difference() {
        let bath = fig_bath();
        let rich = EvalSettings::default();
        let plain = EvalSettings { derivative: DerivativeConfig { richardson: false, ..rich.derivative }, ..rich };
        for probe in [ProbeSpec::Fock { n: 2 }, energy_match(1.0).unwrap().squeezed()] {
            let fr = numerical_record(&probe, &bath, 0.3, Method::QfiSld, &rich).unwrap().value;
            let fp = numerical_record(&probe, &bath, 0.3, Method::QfiSld, &plain).unwrap().value;
            assert!(((fr - fp) / fr).abs() < 100.0 * 1e-8, "{probe}: {fr} vs {fp}");
        }
    }

    #[test]
    fn cramer_rao_limit_is_reciprocal_root() {
        let rec = numerical_record(&ProbeSpec::Fock { n: 1 }, &fig_bath(), 0.1, Method::CfiNumber, &EvalSettings::default())
            .unwrap();
        assert_relative_eq!(rec.delta_t_min().powi(2) * rec.value, 1.0, max_relative = 1e-14);
        assert!(rec.diagnostics.valid_short_time);
        assert_eq!(rec.dim, 40);
    }

    #[test]
    fn curve_slopes() {
        let bath = fig_bath();
        let s = EvalSettings::default();
        let ts: Vec<f64> = (0..5).map(|k| 0.01 * 10f64.powf(k as f64 / 4.0)).collect();
        let values = |probe: ProbeSpec, method| -> Vec<f64> {
            qfi_curve(&probe, &bath, &ts, method, &s).unwrap().iter().map(|r| r.value).collect()
        };
        let fock = log_slope(&ts, &values(ProbeSpec::Fock { n: 1 }, Method::QfiSld));
        assert!((fock - 1.0).abs() < 0.05, "{fock}");
        let coh = ProbeSpec::Coherent { alpha: Complex64::new(1.0, 0.0) };
        // photon counting on a coherent probe only sees O(t) shifts of O(1) populations
        let coh_cfi = log_slope(&ts, &values(coh, Method::CfiNumber));
        assert!((coh_cfi - 2.0).abs() < 0.05, "{coh_cfi}");
        // the optimal measurement resolves the O(t) thermal admixture
        let coh_qfi = log_slope(&ts, &values(coh, Method::QfiSld));
        assert!((coh_qfi - 1.0).abs() < 0.05, "{coh_qfi}");
    }

    #[test]
    fn curve_rejects_bad_grids_and_bound_methods() {
        let bath = fig_bath();
        let s = EvalSettings::default();
        let probe = ProbeSpec::Fock { n: 1 };
        assert!(qfi_curve(&probe, &bath, &[0.2, 0.1], Method::QfiSld, &s).is_err());
        assert!(qfi_curve(&probe, &bath, &[-0.1], Method::QfiSld, &s).is_err());
        assert!(qfi_curve(&probe, &bath, &[0.1], Method::BoundFockLinear, &s).is_err());
        let zero = qfi_curve(&probe, &bath, &[0.0], Method::CfiNumber, &s).unwrap();
        assert_eq!(zero.len(), 1);
        assert!(zero[0].value < 1e-8);
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert_eq!("QFI_SLD".parse::<Method>().unwrap(), Method::QfiSld);
        assert!("fisher".parse::<Method>().is_err());
    }
}
