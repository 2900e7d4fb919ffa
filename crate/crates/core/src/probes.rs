//! Initial probe states and the equal-energy matching between Fock and
//! Gaussian probes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fockspace::{DensityMatrix, FockDim};

/// Largest top-level population tolerated when building a state.
pub const PREPARATION_TAIL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProbeSpec {
    Fock { n: usize },
    Coherent { alpha: Complex64 },
    SqueezedVacuum { r: f64 },
    Thermal { nbar: f64 },
}

impl ProbeSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ProbeSpec::Fock { .. } => Ok(()),
            ProbeSpec::Coherent { alpha } if alpha.re.is_finite() && alpha.im.is_finite() => Ok(()),
            ProbeSpec::Coherent { .. } => Err(Error::domain("coherent amplitude must be finite")),
            ProbeSpec::SqueezedVacuum { r } if r.is_finite() => Ok(()),
            ProbeSpec::SqueezedVacuum { .. } => Err(Error::domain("squeezing parameter must be finite")),
            ProbeSpec::Thermal { nbar } if nbar >= 0.0 && nbar.is_finite() => Ok(()),
            ProbeSpec::Thermal { .. } => Err(Error::domain("thermal nbar must be >= 0")),
        }
    }

    /// Nominal mean photon number of the untruncated state.
    pub fn mean_photon_number(&self) -> f64 {
        match *self {
            ProbeSpec::Fock { n } => n as f64,
            ProbeSpec::Coherent { alpha } => alpha.norm_sqr(),
            ProbeSpec::SqueezedVacuum { r } => r.sinh().powi(2),
            ProbeSpec::Thermal { nbar } => nbar,
        }
    }

    /// Fock and thermal states carry no coherences in the number basis.
    pub fn is_number_diagonal(&self) -> bool {
        matches!(self, ProbeSpec::Fock { .. } | ProbeSpec::Thermal { .. })
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ProbeSpec::Fock { .. } => "fock",
            ProbeSpec::Coherent { .. } => "coherent",
            ProbeSpec::SqueezedVacuum { .. } => "squeezed",
            ProbeSpec::Thermal { .. } => "thermal",
        }
    }
}

impl std::fmt::Display for ProbeSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            ProbeSpec::Fock { n } => write!(f, "fock:{n}"),
            ProbeSpec::Coherent { alpha } if alpha.im == 0.0 => write!(f, "coherent:{}", alpha.re),
            ProbeSpec::Coherent { alpha } => write!(f, "coherent:{alpha}"),
            ProbeSpec::SqueezedVacuum { r } => write!(f, "squeezed:{r}"),
            ProbeSpec::Thermal { nbar } => write!(f, "thermal:{nbar}"),
        }
    }
}

impl std::str::FromStr for ProbeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidProbe(s.to_string());
        let (kind, value) = s.trim().split_once(':').ok_or_else(bad)?;
        let value = value.trim();
        let real = || value.parse::<f64>().map_err(|_| bad());
        let spec = match kind.trim().to_ascii_lowercase().as_str() {
            "fock" => ProbeSpec::Fock { n: value.parse().map_err(|_| bad())? },
            "coherent" => ProbeSpec::Coherent {
                alpha: value.parse::<Complex64>().map_err(|_| bad())?,
            },
            "squeezed" => ProbeSpec::SqueezedVacuum { r: real()? },
            "thermal" => ProbeSpec::Thermal { nbar: real()? },
            _ => return Err(bad()),
        };
        spec.validate().map_err(|_| bad())?;
        Ok(spec)
    }
}

/// Gaussian parameters carrying the same mean energy as a Fock state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyMatch {
    pub n_target: f64,
    pub r: f64,
    pub alpha_mod: f64,
}

impl EnergyMatch {
    pub fn squeezed(&self) -> ProbeSpec {
        ProbeSpec::SqueezedVacuum { r: self.r }
    }

    pub fn coherent(&self) -> ProbeSpec {
        ProbeSpec::Coherent { alpha: Complex64::new(self.alpha_mod, 0.0) }
    }
}

pub fn energy_match(n_target: f64) -> Result<EnergyMatch> {
    if !(n_target >= 0.0) || !n_target.is_finite() {
        return Err(Error::domain("target photon number must be >= 0"));
    }
    let alpha_mod = n_target.sqrt();
    Ok(EnergyMatch { n_target, r: alpha_mod.asinh(), alpha_mod })
}

fn coherent_amplitudes(alpha: Complex64, d: usize) -> Vec<Complex64> {
    let mut amps = Vec::with_capacity(d);
    let mut c = Complex64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    amps.push(c);
    for n in 1..d {
        c = c * alpha / (n as f64).sqrt();
        amps.push(c);
    }
    amps
}

/// Even-level amplitudes `c_{2k} ∝ c_{2k−2} · (−tanh r) · √((2k−1)/(2k))`.
fn squeezed_amplitudes(r: f64, d: usize) -> Vec<Complex64> {
    let mut amps = vec![Complex64::new(0.0, 0.0); d];
    let ratio = -r.tanh();
    let mut c = 1.0 / r.cosh().sqrt();
    amps[0] = Complex64::new(c, 0.0);
    let mut k = 1;
    while 2 * k < d {
        let kf = k as f64;
        c *= ratio * ((2.0 * kf - 1.0) / (2.0 * kf)).sqrt();
        amps[2 * k] = Complex64::new(c, 0.0);
        k += 1;
    }
    amps
}

fn check_tail(top: f64, dim: FockDim) -> Result<()> {
    if top > PREPARATION_TAIL {
        return Err(Error::RaiseDim { dim: dim.get(), leakage: top, budget: PREPARATION_TAIL });
    }
    Ok(())
}

/// Populations below this mark the end of a probe's numerical support when
/// picking a default cutoff.
pub const SUPPORT_TAIL: f64 = 1e-14;

const MAX_AUTO_DIM: usize = 4096;

/// Untruncated photon-number distribution, first `len` entries.
fn untruncated_populations(spec: &ProbeSpec, len: usize) -> Vec<f64> {
    match *spec {
        ProbeSpec::Fock { n } => (0..len).map(|m| if m == n { 1.0 } else { 0.0 }).collect(),
        ProbeSpec::Coherent { alpha } => coherent_amplitudes(alpha, len).iter().map(|a| a.norm_sqr()).collect(),
        ProbeSpec::SqueezedVacuum { r } => squeezed_amplitudes(r, len).iter().map(|a| a.norm_sqr()).collect(),
        ProbeSpec::Thermal { nbar } => {
            let q = nbar / (nbar + 1.0);
            (0..len).map(|m| (1.0 - q) * q.powi(m as i32)).collect()
        }
    }
}

/// Default cutoff for evolving `spec` in a bath of occupation `bath_nbar`:
/// the [`FockDim::default_for`] rule, raised until the probe's top two
/// untruncated populations fall below [`SUPPORT_TAIL`].
pub fn default_dim(spec: &ProbeSpec, bath_nbar: f64) -> FockDim {
    let floor = FockDim::default_for(spec.mean_photon_number(), bath_nbar).get();
    let p = untruncated_populations(spec, MAX_AUTO_DIM);
    let mean = spec.mean_photon_number();
    let mut d = floor;
    while d < MAX_AUTO_DIM {
        let top = p[d - 1].max(p[d - 2]);
        if top <= SUPPORT_TAIL && (d - 1) as f64 > mean {
            break;
        }
        d += 1;
    }
    FockDim::new(d).expect("cutoff is at least 40")
}

/// Density matrix of the probe on `dim` levels. Truncated amplitude vectors
/// are renormalised to unit norm.
pub fn make_state(spec: &ProbeSpec, dim: FockDim) -> Result<DensityMatrix> {
    spec.validate()?;
    let d = dim.get();
    match *spec {
        ProbeSpec::Fock { n } => DensityMatrix::fock(n, dim),
        ProbeSpec::Coherent { alpha } => {
            let amps = coherent_amplitudes(alpha, d);
            check_tail(amps[d - 1].norm_sqr(), dim)?;
            DensityMatrix::pure(&amps)
        }
        ProbeSpec::SqueezedVacuum { r } => {
            let amps = squeezed_amplitudes(r, d);
            let top = amps[d - 1].norm_sqr().max(amps[d - 2].norm_sqr());
            check_tail(top, dim)?;
            DensityMatrix::pure(&amps)
        }
        ProbeSpec::Thermal { nbar } => {
            let q = nbar / (nbar + 1.0);
            let mut p: Vec<f64> = (0..d).map(|m| (1.0 - q) * q.powi(m as i32)).collect();
            check_tail(p[d - 1], dim)?;
            let total: f64 = p.iter().sum();
            p.iter_mut().for_each(|x| *x /= total);
            DensityMatrix::diagonal(&p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockspace::{validate_density, ToleranceProfile};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn dim(d: usize) -> FockDim {
        FockDim::new(d).unwrap()
    }

    fn factorial(n: u32) -> f64 {
        (1..=n).map(f64::from).product()
    }

    #[test]
    fn vacuum_from_fock_zero() {
        let rho = make_state(&ProbeSpec::Fock { n: 0 }, dim(5)).unwrap();
        assert_eq!(rho.populations(), vec![1.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(make_state(&ProbeSpec::Fock { n: 5 }, dim(5)).is_err());
    }

    #[test]
    fn coherent_mean_is_poisson_mean() {
        let alpha = Complex64::new(1.0, 0.0);
        let rho = make_state(&ProbeSpec::Coherent { alpha }, dim(40)).unwrap();
        // direct Poisson sum as the reference
        let direct: f64 = (0..40).map(|n| n as f64 * (-1.0f64).exp() / factorial(n)).sum();
        assert_abs_diff_eq!(rho.mean_photon_number(), direct, epsilon = 1e-12);
        assert_abs_diff_eq!(rho.mean_photon_number(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn squeezed_amplitudes_match_factorial_form() {
        let r = 0.6;
        let amps = squeezed_amplitudes(r, 24);
        for k in 0..12u32 {
            let expect = factorial(2 * k).sqrt() / (2f64.powi(k as i32) * factorial(k)) * (-r.tanh()).powi(k as i32)
                / r.cosh().sqrt();
            assert_relative_eq!(amps[2 * k as usize].re, expect, max_relative = 1e-12);
        }
    }

    #[test]
    fn squeezed_mean_matches_sinh_squared() {
        let spec = ProbeSpec::SqueezedVacuum { r: 0.881374 };
        // at 60 levels the top even population is 1.4e-10
        assert!(matches!(make_state(&spec, dim(60)), Err(Error::RaiseDim { .. })));
        let rho = make_state(&spec, dim(70)).unwrap();
        assert_abs_diff_eq!(rho.mean_photon_number(), 0.881374f64.sinh().powi(2), epsilon = 1e-9);
        assert_abs_diff_eq!(rho.mean_photon_number(), 1.0, epsilon = 1e-5);
        for (m, p) in rho.populations().iter().enumerate() {
            if m % 2 == 1 {
                assert_eq!(*p, 0.0);
            }
        }
    }

    #[test]
    fn insufficient_truncation_is_rejected() {
        let err = make_state(&ProbeSpec::Coherent { alpha: Complex64::new(3.0, 0.0) }, dim(10)).unwrap_err();
        assert!(matches!(err, Error::RaiseDim { .. }));
        assert!(make_state(&ProbeSpec::SqueezedVacuum { r: 1.5 }, dim(10)).is_err());
        assert!(make_state(&ProbeSpec::Thermal { nbar: 2.0 }, dim(10)).is_err());
    }

    #[test]
    fn energy_match_values() {
        let m0 = energy_match(0.0).unwrap();
        assert_eq!((m0.r, m0.alpha_mod), (0.0, 0.0));
        let m1 = energy_match(1.0).unwrap();
        assert_relative_eq!(m1.r, 0.881373587019543025, max_relative = 1e-14);
        assert_eq!(m1.alpha_mod, 1.0);
        let m3 = energy_match(3.0).unwrap();
        assert_relative_eq!(m3.r, 1.316957896924816709, max_relative = 1e-14);
        assert_abs_diff_eq!(m3.r.sinh().powi(2), 3.0, epsilon = 1e-12);
        assert!(energy_match(-0.5).is_err());
    }

    #[test]
    fn text_form_round_trips() {
        for text in ["fock:3", "coherent:1", "coherent:1.5+0.5i", "squeezed:0.8814", "thermal:0.5"] {
            let spec: ProbeSpec = text.parse().unwrap();
            assert_eq!(spec.to_string().parse::<ProbeSpec>().unwrap(), spec);
        }
        assert_eq!("fock:3".parse::<ProbeSpec>().unwrap(), ProbeSpec::Fock { n: 3 });
        assert_eq!(
            "coherent:1.0".parse::<ProbeSpec>().unwrap(),
            ProbeSpec::Coherent { alpha: Complex64::new(1.0, 0.0) }
        );
        for bad in ["fock", "fock:-1", "fock:1.5", "thermal:-2", "cat:1", "squeezed:x"] {
            assert!(bad.parse::<ProbeSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn default_dim_grows_with_squeezing() {
        let fock = default_dim(&ProbeSpec::Fock { n: 1 }, 0.16);
        assert_eq!(fock.get(), 40);
        let small = default_dim(&energy_match(1.0).unwrap().squeezed(), 0.16).get();
        let large = default_dim(&energy_match(5.0).unwrap().squeezed(), 0.16).get();
        assert!((70..90).contains(&small), "{small}");
        assert!((250..330).contains(&large), "{large}");
        let rho = make_state(&energy_match(5.0).unwrap().squeezed(), FockDim::new(large).unwrap()).unwrap();
        assert_abs_diff_eq!(rho.mean_photon_number(), 5.0, epsilon = 1e-9);
    }

    proptest! {
        #[test]
        fn constructed_states_validate(n in 0usize..8, alpha in 0.0f64..2.0, phase in 0.0f64..6.3, r in -0.88f64..0.88, nbar in 0.0f64..2.0) {
            let d = dim(70);
            let tol = ToleranceProfile { leakage: PREPARATION_TAIL, ..Default::default() };
            let specs = [
                ProbeSpec::Fock { n },
                ProbeSpec::Coherent { alpha: Complex64::from_polar(alpha, phase) },
                ProbeSpec::SqueezedVacuum { r },
                ProbeSpec::Thermal { nbar },
            ];
            for spec in specs {
                let rho = make_state(&spec, d).unwrap();
                let report = validate_density(&rho, &tol);
                prop_assert!(report.passed(), "{spec}: {report:?}");
            }
        }

        #[test]
        fn energy_matched_gaussians_share_mean(n in 0.0f64..4.0) {
            let m = energy_match(n).unwrap();
            let d = default_dim(&m.squeezed(), 0.0);
            let coh = make_state(&m.coherent(), d).unwrap();
            let sq = make_state(&m.squeezed(), d).unwrap();
            prop_assert!((coh.mean_photon_number() - n).abs() < 1e-9);
            prop_assert!((sq.mean_photon_number() - n).abs() < 1e-9);
        }

        #[test]
        fn thermal_populations_are_geometric(nbar in 0.01f64..3.0) {
            let rho = make_state(&ProbeSpec::Thermal { nbar }, dim(120)).unwrap();
            let p = rho.populations();
            let q = nbar / (nbar + 1.0);
            for m in 0..30 {
                prop_assert!((p[m + 1] / p[m] - q).abs() < 1e-12);
            }
        }
    }
}
