//! Thermal Lindblad dynamics `dρ/dt = Γ₊ D[a†]ρ + Γ₋ D[a]ρ` with
//! `D[O]ρ = OρO† − ½{O†O, ρ}`.
//!
//! Two integrators are provided: a fixed-step RK4 over the full density
//! matrix, valid for any initial state, and the exact exponential of the
//! birth–death generator that governs number-diagonal states. Both use the
//! truncated ladder operators, so neither moves population above the top
//! retained level and both preserve the trace exactly.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bath::Rates;
use crate::error::{Error, Result};
use crate::fockspace::{CMatrix, DensityMatrix, LEAKAGE_BUDGET};

/// Off-diagonal modulus below which a state counts as number-diagonal.
pub const DIAGONAL_TOL: f64 = 1e-12;

/// Roundoff negatives above this are clipped to zero in population vectors.
pub const NEGATIVE_CLIP: f64 = 1e-12;

/// Short-time expansion is labelled valid while `Γ₀ t (2n+1)` stays below this.
pub const SHORT_TIME_LIMIT: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvolutionMethod {
    Rk4Full,
    BirthDeathExpm,
}

impl EvolutionMethod {
    /// Exact exponential for number-diagonal probes, RK4 otherwise.
    pub fn auto(number_diagonal: bool) -> Self {
        if number_diagonal {
            EvolutionMethod::BirthDeathExpm
        } else {
            EvolutionMethod::Rk4Full
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EvolutionMethod::Rk4Full => "rk4",
            EvolutionMethod::BirthDeathExpm => "expm",
        }
    }
}

impl std::fmt::Display for EvolutionMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for EvolutionMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rk4" | "rk4full" | "rk4_full" => Ok(EvolutionMethod::Rk4Full),
            "expm" | "birthdeath" | "birth_death_expm" => Ok(EvolutionMethod::BirthDeathExpm),
            other => Err(Error::domain(format!("evolution method must be 'rk4' or 'expm', got '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolutionConfig {
    pub t_final: f64,
    /// RK4 step; `None` selects `min(1e−3/Γ₋, t_final/100)`.
    pub dt: Option<f64>,
    pub method: EvolutionMethod,
    pub leakage_budget: f64,
}

impl EvolutionConfig {
    pub fn new(t_final: f64, method: EvolutionMethod) -> Self {
        EvolutionConfig { t_final, dt: None, method, leakage_budget: LEAKAGE_BUDGET }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_final >= 0.0) || !self.t_final.is_finite() {
            return Err(Error::domain("t must be >= 0"));
        }
        if let Some(dt) = self.dt {
            if !(dt > 0.0) || !dt.is_finite() {
                return Err(Error::domain("dt must be > 0"));
            }
            if self.t_final > 0.0 && dt > self.t_final {
                return Err(Error::domain("dt must not exceed t"));
            }
        }
        if !(self.leakage_budget > 0.0) {
            return Err(Error::domain("leakage budget must be > 0"));
        }
        Ok(())
    }

    pub fn step_size(&self, rates: &Rates) -> f64 {
        self.dt.unwrap_or_else(|| {
            let stiff = 1e-3 / rates.gamma_minus;
            stiff.min(self.t_final / 100.0)
        })
    }
}

/// Result of an evolution together with its truncation diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Evolved {
    pub state: DensityMatrix,
    /// Largest top-level population seen along the trajectory.
    pub peak_leakage: f64,
    pub steps: usize,
}

/// Writes the dissipator applied to `rho` into `out`.
fn dissipator_into(rho: &CMatrix, rates: &Rates, out: &mut CMatrix) {
    let d = rho.nrows();
    let (gp, gm) = (rates.gamma_plus, rates.gamma_minus);
    // diagonal of a a† in the truncated space
    let aad = |m: usize| if m + 1 < d { (m + 1) as f64 } else { 0.0 };
    for j in 0..d {
        for i in 0..d {
            let rho_ij = rho[(i, j)];
            let mut acc = rho_ij * (-0.5 * (gp * (aad(i) + aad(j)) + gm * (i + j) as f64));
            if i > 0 && j > 0 {
                acc += rho[(i - 1, j - 1)] * (gp * ((i * j) as f64).sqrt());
            }
            if i + 1 < d && j + 1 < d {
                acc += rho[(i + 1, j + 1)] * (gm * (((i + 1) * (j + 1)) as f64).sqrt());
            }
            out[(i, j)] = acc;
        }
    }
}

/// `Γ₊ D[a†]ρ + Γ₋ D[a]ρ` for a square matrix `rho`.
pub fn lindblad_rhs(rho: &CMatrix, rates: &Rates) -> Result<CMatrix> {
    if rho.nrows() != rho.ncols() {
        return Err(Error::DimensionMismatch { expected: rho.nrows(), found: rho.ncols() });
    }
    let mut out = CMatrix::zeros(rho.nrows(), rho.ncols());
    dissipator_into(rho, rates, &mut out);
    Ok(out)
}

/// Tridiagonal birth–death generator acting on populations.
pub fn birth_death_generator(dim: usize, rates: &Rates) -> DMatrix<f64> {
    let mut w = DMatrix::zeros(dim, dim);
    for m in 0..dim {
        let up = if m + 1 < dim { rates.gamma_plus * (m + 1) as f64 } else { 0.0 };
        let down = rates.gamma_minus * m as f64;
        w[(m, m)] = -(up + down);
        if m + 1 < dim {
            w[(m + 1, m)] = up;
        }
        if m > 0 {
            w[(m - 1, m)] = down;
        }
    }
    w
}

fn leakage_check(leakage: f64, dim: usize, budget: f64) -> Result<()> {
    if leakage > budget {
        return Err(Error::RaiseDim { dim, leakage, budget });
    }
    Ok(())
}

pub fn evolve(rho0: &DensityMatrix, rates: &Rates, cfg: &EvolutionConfig) -> Result<Evolved> {
    cfg.validate()?;
    let d = rho0.dim().get();
    let initial_leak = rho0.top_population();
    leakage_check(initial_leak, d, cfg.leakage_budget)?;
    if cfg.t_final == 0.0 {
        if cfg.method == EvolutionMethod::BirthDeathExpm && !rho0.is_number_diagonal(DIAGONAL_TOL) {
            return Err(Error::MethodMismatch { off_diagonal: rho0.max_off_diagonal() });
        }
        return Ok(Evolved { state: rho0.clone(), peak_leakage: initial_leak, steps: 0 });
    }
    match cfg.method {
        EvolutionMethod::Rk4Full => evolve_rk4(rho0, rates, cfg),
        EvolutionMethod::BirthDeathExpm => evolve_expm(rho0, rates, cfg),
    }
}

fn evolve_rk4(rho0: &DensityMatrix, rates: &Rates, cfg: &EvolutionConfig) -> Result<Evolved> {
    let d = rho0.dim().get();
    let dt_max = cfg.step_size(rates);
    let steps = ((cfg.t_final / dt_max) - 1e-9).ceil().max(1.0) as usize;
    let h = cfg.t_final / steps as f64;
    let half = Complex64::new(0.5 * h, 0.0);
    let full = Complex64::new(h, 0.0);
    let sixth = Complex64::new(h / 6.0, 0.0);

    let mut rho = rho0.matrix().clone();
    let mut k1 = CMatrix::zeros(d, d);
    let mut k2 = CMatrix::zeros(d, d);
    let mut k3 = CMatrix::zeros(d, d);
    let mut k4 = CMatrix::zeros(d, d);
    let mut stage = CMatrix::zeros(d, d);
    let mut peak = rho0.top_population();

    for _ in 0..steps {
        dissipator_into(&rho, rates, &mut k1);
        stage.copy_from(&rho);
        add_scaled(&mut stage, half, &k1);
        dissipator_into(&stage, rates, &mut k2);
        stage.copy_from(&rho);
        add_scaled(&mut stage, half, &k2);
        dissipator_into(&stage, rates, &mut k3);
        stage.copy_from(&rho);
        add_scaled(&mut stage, full, &k3);
        dissipator_into(&stage, rates, &mut k4);

        k2 *= Complex64::new(2.0, 0.0);
        k3 *= Complex64::new(2.0, 0.0);
        k1 += &k2;
        k1 += &k3;
        k1 += &k4;
        add_scaled(&mut rho, sixth, &k1);

        let top = rho[(d - 1, d - 1)].re;
        peak = peak.max(top);
        leakage_check(top, d, cfg.leakage_budget)?;
    }
    Ok(Evolved { state: DensityMatrix::from_matrix(rho)?, peak_leakage: peak, steps })
}

fn add_scaled(y: &mut CMatrix, a: Complex64, x: &CMatrix) {
    y.zip_apply(x, |yi, xi| *yi += a * xi);
}

fn evolve_expm(rho0: &DensityMatrix, rates: &Rates, cfg: &EvolutionConfig) -> Result<Evolved> {
    if !rho0.is_number_diagonal(DIAGONAL_TOL) {
        return Err(Error::MethodMismatch { off_diagonal: rho0.max_off_diagonal() });
    }
    let d = rho0.dim().get();
    let propagator = (birth_death_generator(d, rates) * cfg.t_final).exp();
    let p = propagator * DVector::from_vec(rho0.populations());
    let top = p[d - 1];
    leakage_check(top, d, cfg.leakage_budget)?;
    let state = DensityMatrix::diagonal(p.as_slice())?;
    Ok(Evolved { peak_leakage: top.max(rho0.top_population()), state, steps: 1 })
}

/// First-moment relaxation `⟨n⟩(t) = n₀ e^{−Γ₀t} + n̄ (1 − e^{−Γ₀t})` with
/// `Γ₀ = Γ₋ − Γ₊` and `n̄ = Γ₊/Γ₀`.
pub fn mean_photon_analytic(n0: f64, rates: &Rates, t: f64) -> f64 {
    let gamma0 = rates.gamma_minus - rates.gamma_plus;
    let nbar = rates.gamma_plus / gamma0;
    n0 * (-gamma0 * t).exp() - nbar * (-gamma0 * t).exp_m1()
}

/// First-order populations of a Fock state `|n⟩` after time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShortTimePopulations {
    pub below: f64,
    pub stay: f64,
    pub above: f64,
    /// `Γ₀ t (2n+1) ≤ 0.1`.
    pub valid: bool,
}

pub fn short_time_populations(n: usize, rates: &Rates, t: f64) -> ShortTimePopulations {
    let nf = n as f64;
    let above = rates.gamma_plus * t * (nf + 1.0);
    let below = rates.gamma_minus * t * nf;
    let stay = 1.0 - above - below;
    ShortTimePopulations {
        below: below.clamp(0.0, 1.0),
        stay: stay.clamp(0.0, 1.0),
        above: above.clamp(0.0, 1.0),
        valid: rates.gamma0 * t * (2.0 * nf + 1.0) <= SHORT_TIME_LIMIT,
    }
}

/// Photon-number distribution with roundoff negatives removed.
#[derive(Debug, Clone, PartialEq)]
pub struct PopulationVector(Vec<f64>);

impl PopulationVector {
    pub fn new(mut p: Vec<f64>) -> Result<Self> {
        for (level, x) in p.iter_mut().enumerate() {
            if *x < 0.0 {
                if *x < -NEGATIVE_CLIP {
                    return Err(Error::NegativePopulation { level, p: *x });
                }
                *x = 0.0;
            }
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::domain(format!("populations sum to {total}, expected 1")));
        }
        Ok(PopulationVector(p))
    }

    pub fn from_state(rho: &DensityMatrix) -> Result<Self> {
        Self::new(rho.populations())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::{rates, BathParams};
    use crate::fockspace::{annihilation, creation, number_operator, validate_density, FockDim, ToleranceProfile};
    use crate::probes::{energy_match, make_state, ProbeSpec};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn fig_rates() -> Rates {
        rates(&BathParams::markovian(1.0, 0.5, 0.1).unwrap()).unwrap()
    }

    fn dim(d: usize) -> FockDim {
        FockDim::new(d).unwrap()
    }

    fn dense_rhs(rho: &CMatrix, r: &Rates) -> CMatrix {
        let d = FockDim::new(rho.nrows()).unwrap();
        let a = annihilation(d);
        let ad = creation(d);
        let dissipate = |op: &CMatrix| {
            let opd = op.adjoint();
            let n = &opd * op;
            op * rho * &opd - (&n * rho + rho * &n) * Complex64::new(0.5, 0.0)
        };
        dissipate(&ad) * Complex64::new(r.gamma_plus, 0.0) + dissipate(&a) * Complex64::new(r.gamma_minus, 0.0)
    }

    fn sup_norm(m: &CMatrix) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn indexed_rhs_matches_dense_operators() {
        let r = fig_rates();
        let rho = make_state(&ProbeSpec::Coherent { alpha: Complex64::new(0.8, 0.4) }, dim(24)).unwrap();
        let fast = lindblad_rhs(rho.matrix(), &r).unwrap();
        let slow = dense_rhs(rho.matrix(), &r);
        assert!(sup_norm(&(fast - slow)) < 1e-15);
        assert!(lindblad_rhs(&CMatrix::zeros(3, 4), &r).is_err());
    }

    #[test]
    fn rhs_vanishes_on_thermal_state() {
        let r = fig_rates();
        let rho = make_state(&ProbeSpec::Thermal { nbar: r.steady_occupation() }, dim(40)).unwrap();
        let rhs = lindblad_rhs(rho.matrix(), &r).unwrap();
        assert!(sup_norm(&rhs) < 1e-10 * r.gamma0);
    }

    #[test]
    fn rhs_from_vacuum_and_single_photon() {
        let r = fig_rates();
        let vac = DensityMatrix::fock(0, dim(6)).unwrap();
        let rhs = lindblad_rhs(vac.matrix(), &r).unwrap();
        assert_relative_eq!(rhs[(1, 1)].re, r.gamma_plus, max_relative = 1e-15);

        let one = DensityMatrix::fock(1, dim(6)).unwrap();
        let rhs = lindblad_rhs(one.matrix(), &r).unwrap();
        let diag: Vec<f64> = (0..6).map(|m| rhs[(m, m)].re).collect();
        assert_relative_eq!(diag[0], 0.115651764274966565, max_relative = 1e-14);
        assert_relative_eq!(diag[1], -(2.0 * 0.0156517642749665652 + 0.115651764274966565), max_relative = 1e-14);
        assert_relative_eq!(diag[2], 2.0 * 0.0156517642749665652, max_relative = 1e-14);
        assert_eq!(&diag[3..], &[0.0, 0.0, 0.0]);
        assert_abs_diff_eq!(rhs.trace().norm(), 0.0, epsilon = 1e-16);
        assert!(crate::fockspace::hermiticity_defect(&rhs) < 1e-16);
    }

    #[test]
    fn zero_time_returns_input() {
        let r = fig_rates();
        let rho = make_state(&ProbeSpec::Coherent { alpha: Complex64::new(1.0, 0.0) }, dim(30)).unwrap();
        let out = evolve(&rho, &r, &EvolutionConfig::new(0.0, EvolutionMethod::Rk4Full)).unwrap();
        assert_eq!(out.state, rho);
        let err = evolve(&rho, &r, &EvolutionConfig::new(0.0, EvolutionMethod::BirthDeathExpm)).unwrap_err();
        assert!(matches!(err, Error::MethodMismatch { .. }));
    }

    #[test]
    fn expm_rejects_coherences() {
        let r = fig_rates();
        let rho = make_state(&ProbeSpec::SqueezedVacuum { r: 0.3 }, dim(30)).unwrap();
        let err = evolve(&rho, &r, &EvolutionConfig::new(0.1, EvolutionMethod::BirthDeathExpm)).unwrap_err();
        assert!(matches!(err, Error::MethodMismatch { .. }));
    }

    #[test]
    fn single_photon_short_time_populations() {
        let r = fig_rates();
        let rho = DensityMatrix::fock(1, dim(40)).unwrap();
        let out = evolve(&rho, &r, &EvolutionConfig::new(0.01, EvolutionMethod::BirthDeathExpm)).unwrap();
        let p = out.state.populations();
        let linear = short_time_populations(1, &r, 0.01);
        assert_relative_eq!(linear.above, 3.13035285499331304e-4, max_relative = 1e-12);
        assert_relative_eq!(linear.below, 1.15651764274966565e-3, max_relative = 1e-12);
        assert_relative_eq!(linear.stay, 0.998530447071751003, max_relative = 1e-12);
        assert!((p[2] / linear.above - 1.0).abs() < 0.02);
        assert!((p[0] / linear.below - 1.0).abs() < 0.02);
    }

    #[test]
    fn short_time_formula_edges() {
        let r = fig_rates();
        let vac = short_time_populations(0, &r, 0.3);
        assert_eq!(vac.below, 0.0);
        let s = short_time_populations(1, &r, 0.01);
        assert_eq!(s.below + s.stay + s.above, 1.0);
        assert!(s.valid);
        assert!(!short_time_populations(5, &r, 1.0).valid);
        let clipped = short_time_populations(50, &r, 10.0);
        assert_eq!(clipped.stay, 0.0);
        assert_eq!(clipped.below, 1.0);
    }

    #[test]
    fn mean_photon_relaxation() {
        let r = fig_rates();
        assert_relative_eq!(mean_photon_analytic(1.0, &r, 1.0), 0.919732041042943029, max_relative = 1e-13);
        assert_eq!(mean_photon_analytic(2.5, &r, 0.0), 2.5);
        assert_relative_eq!(mean_photon_analytic(3.0, &r, 1e4), r.steady_occupation(), max_relative = 1e-12);

        let rho = DensityMatrix::fock(1, dim(40)).unwrap();
        let out = evolve(&rho, &r, &EvolutionConfig::new(1.0, EvolutionMethod::Rk4Full)).unwrap();
        assert_abs_diff_eq!(out.state.mean_photon_number(), 0.919732041042943029, epsilon = 1e-9);
    }

    #[test]
    fn first_moment_law_for_all_probe_kinds() {
        let r = fig_rates();
        let n_op = number_operator(dim(80));
        let m = energy_match(1.0).unwrap();
        let probes = [
            ProbeSpec::Fock { n: 2 },
            m.coherent(),
            m.squeezed(),
            ProbeSpec::Thermal { nbar: 0.7 },
        ];
        for spec in probes {
            let rho = make_state(&spec, dim(80)).unwrap();
            let n0 = rho.expectation(&n_op).re;
            for t in [0.3, 2.0] {
                let out = evolve(&rho, &r, &EvolutionConfig::new(t, EvolutionMethod::Rk4Full)).unwrap();
                let got = out.state.expectation(&n_op).re;
                assert_abs_diff_eq!(got, mean_photon_analytic(n0, &r, t), epsilon = 1e-7);
                assert_abs_diff_eq!(out.state.trace().re, 1.0, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn rk4_keeps_diagonal_states_diagonal_and_matches_expm() {
        let r = fig_rates();
        for spec in [ProbeSpec::Fock { n: 3 }, ProbeSpec::Thermal { nbar: 0.4 }] {
            let rho = make_state(&spec, dim(40)).unwrap();
            let rk = evolve(&rho, &r, &EvolutionConfig::new(0.5, EvolutionMethod::Rk4Full)).unwrap();
            let ex = evolve(&rho, &r, &EvolutionConfig::new(0.5, EvolutionMethod::BirthDeathExpm)).unwrap();
            assert!(rk.state.max_off_diagonal() < 1e-12);
            let gap = rk
                .state
                .populations()
                .iter()
                .zip(ex.state.populations())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            assert!(gap < 1e-8, "{spec}: {gap}");
        }
    }

    #[test]
    fn thermal_state_is_stationary() {
        let r = fig_rates();
        let rho = make_state(&ProbeSpec::Thermal { nbar: r.steady_occupation() }, dim(40)).unwrap();
        for method in [EvolutionMethod::Rk4Full, EvolutionMethod::BirthDeathExpm] {
            let out = evolve(&rho, &r, &EvolutionConfig::new(1.0, method)).unwrap();
            assert!(sup_norm(&(out.state.matrix() - rho.matrix())) < 1e-8);
        }
    }

    #[test]
    fn evolved_states_stay_physical() {
        let r = fig_rates();
        let rho = make_state(&ProbeSpec::Coherent { alpha: Complex64::new(0.0, 1.5) }, dim(40)).unwrap();
        let out = evolve(&rho, &r, &EvolutionConfig::new(2.0, EvolutionMethod::Rk4Full)).unwrap();
        let report = validate_density(&out.state, &ToleranceProfile { hermiticity: 1e-14, ..Default::default() });
        assert!(report.passed(), "{report:?}");
        assert!(out.peak_leakage <= LEAKAGE_BUDGET);
    }

    #[test]
    fn leakage_budget_aborts() {
        let r = fig_rates();
        let rho = DensityMatrix::fock(4, dim(6)).unwrap();
        for method in [EvolutionMethod::Rk4Full, EvolutionMethod::BirthDeathExpm] {
            let err = evolve(&rho, &r, &EvolutionConfig::new(0.5, method)).unwrap_err();
            assert!(matches!(err, Error::RaiseDim { dim: 6, .. }), "{err:?}");
        }
    }

    #[test]
    fn short_time_consistency_with_exact_populations() {
        let r = fig_rates();
        for n in 0..4usize {
            for gt in [1e-4, 1e-3] {
                let t = gt / r.gamma0;
                let rho = DensityMatrix::fock(n, dim(40)).unwrap();
                let p = evolve(&rho, &r, &EvolutionConfig::new(t, EvolutionMethod::BirthDeathExpm))
                    .unwrap()
                    .state
                    .populations();
                let s = short_time_populations(n, &r, t);
                let ratio_up = p[n + 1] / s.above;
                assert!((ratio_up - 1.0).abs() <= 10.0 * gt, "n={n} up {ratio_up}");
                if n > 0 {
                    let ratio_down = p[n - 1] / s.below;
                    assert!((ratio_down - 1.0).abs() <= 10.0 * gt, "n={n} down {ratio_down}");
                }
            }
        }
    }

    #[test]
    fn config_validation() {
        let mut cfg = EvolutionConfig::new(0.5, EvolutionMethod::Rk4Full);
        assert!(cfg.validate().is_ok());
        cfg.dt = Some(1.0);
        assert!(cfg.validate().is_err());
        cfg.dt = Some(-0.1);
        assert!(cfg.validate().is_err());
        assert!(EvolutionConfig::new(-1.0, EvolutionMethod::Rk4Full).validate().is_err());
        let r = fig_rates();
        let auto = EvolutionConfig::new(0.5, EvolutionMethod::Rk4Full);
        assert_relative_eq!(auto.step_size(&r), 0.005);
        let long = EvolutionConfig::new(100.0, EvolutionMethod::Rk4Full);
        assert_relative_eq!(long.step_size(&r), 1e-3 / r.gamma_minus);
    }

    #[test]
    fn population_vector_clipping() {
        let p = PopulationVector::new(vec![0.5, 0.5, -1e-13]).unwrap();
        assert_eq!(p.as_slice()[2], 0.0);
        assert!(matches!(
            PopulationVector::new(vec![0.5, 0.5 + 1e-9, -1e-9]),
            Err(Error::NegativePopulation { level: 2, .. })
        ));
        assert!(PopulationVector::new(vec![0.5, 0.4]).is_err());
    }
}
