//! Closed-form short-time Fisher information for Fock, squeezed-vacuum and
//! coherent probes, their energy-normalised forms, and a side-by-side
//! scaling table.
//!
//! Rate derivatives are analytic, `∂_T Γ± = Γ₀ ∂_T n̄`, so these values
//! carry no finite-difference noise and can referee the numerics.
//!
//! Two Fock expressions ship. The linear-in-time law follows from the
//! first-order populations and is the reference; the quadratic form is
//! kept verbatim for comparison and does not agree with the numerics.
//! The squeezed-vacuum expression has no `Γ₀` dependence at all.

use serde::{Deserialize, Serialize};

use crate::bath::BathParams;
use crate::dynamics::SHORT_TIME_LIMIT;
use crate::error::{Error, Result};
use crate::fisher::{numerical_record, EvalSettings, Method};
use crate::probes::{energy_match, ProbeSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    FockLinear,
    FockQuadraticMainText,
    SqueezedVacuumQuadratic,
    CoherentQuadratic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub value: f64,
    pub kind: BoundKind,
    /// `Γ₀ t (2n+1) ≤ 0.1`.
    pub valid: bool,
    /// Set when `Γ₊` underflowed to zero and the value was forced to 0.
    pub rates_underflow: bool,
}

/// Bath quantities shared by every bound.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Kinetics {
    gamma0: f64,
    nbar: f64,
    dnbar: f64,
}

impl Kinetics {
    fn new(bath: &BathParams) -> Result<Self> {
        bath.validate()?;
        Ok(Kinetics { gamma0: bath.base_rate()?, nbar: bath.occupation()?, dnbar: bath.occupation_dt()? })
    }

    fn valid(&self, n: f64, t: f64) -> bool {
        self.gamma0 * t * (2.0 * n + 1.0) <= SHORT_TIME_LIMIT
    }

    /// `(∂_T ln n̄)²`, zero when the occupation underflows.
    fn dlog_sq(&self) -> f64 {
        if self.nbar > 0.0 {
            (self.dnbar / self.nbar).powi(2)
        } else {
            0.0
        }
    }
}

fn check_args(n: f64, t: f64) -> Result<()> {
    if !(n >= 0.0) || !n.is_finite() {
        return Err(Error::domain("photon number must be >= 0"));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain("t must be >= 0"));
    }
    Ok(())
}

/// `t Γ₀ (∂_T n̄)² [(n+1)/n̄ + n/(n̄+1)]`, linear in `t`.
pub fn bound_fock_linear(n: f64, bath: &BathParams, t: f64) -> Result<BoundResult> {
    check_args(n, t)?;
    let k = Kinetics::new(bath)?;
    let underflow = k.nbar == 0.0;
    let value = if underflow {
        0.0
    } else {
        t * k.gamma0 * k.dnbar.powi(2) * ((n + 1.0) / k.nbar + n / (k.nbar + 1.0))
    };
    Ok(BoundResult { value, kind: BoundKind::FockLinear, valid: k.valid(n, t), rates_underflow: underflow })
}

/// `t² [n (∂_TΓ₊/Γ₊)² + (n+1)(∂_TΓ₋/Γ₋)²] Γ₊Γ₋`.
pub fn bound_fock_quadratic_maintext(n: f64, bath: &BathParams, t: f64) -> Result<BoundResult> {
    check_args(n, t)?;
    let k = Kinetics::new(bath)?;
    let gp = k.gamma0 * k.nbar;
    let gm = k.gamma0 * (k.nbar + 1.0);
    let dg = k.gamma0 * k.dnbar;
    let underflow = gp == 0.0;
    let value = if underflow {
        0.0
    } else {
        t * t * (n * (dg / gp).powi(2) + (n + 1.0) * (dg / gm).powi(2)) * gp * gm
    };
    Ok(BoundResult { value, kind: BoundKind::FockQuadraticMainText, valid: k.valid(n, t), rates_underflow: underflow })
}

/// `4 n̄(n̄+1) (∂_T ln n̄_T)² t²`.
pub fn bound_squeezed(nbar: f64, bath: &BathParams, t: f64) -> Result<BoundResult> {
    check_args(nbar, t)?;
    let k = Kinetics::new(bath)?;
    Ok(BoundResult {
        value: 4.0 * nbar * (nbar + 1.0) * k.dlog_sq() * t * t,
        kind: BoundKind::SqueezedVacuumQuadratic,
        valid: k.valid(nbar, t),
        rates_underflow: k.nbar == 0.0,
    })
}

/// `n̄ (∂_T ln n̄_T)² t²`.
pub fn bound_coherent(nbar: f64, bath: &BathParams, t: f64) -> Result<BoundResult> {
    check_args(nbar, t)?;
    let k = Kinetics::new(bath)?;
    Ok(BoundResult {
        value: nbar * k.dlog_sq() * t * t,
        kind: BoundKind::CoherentQuadratic,
        valid: k.valid(nbar, t),
        rates_underflow: k.nbar == 0.0,
    })
}

/// Bound for `method` at photon number `n`. Non-bound methods are rejected.
pub fn bound_for(method: Method, n: f64, bath: &BathParams, t: f64) -> Result<BoundResult> {
    match method {
        Method::BoundFockLinear => bound_fock_linear(n, bath, t),
        Method::BoundFockQuadratic => bound_fock_quadratic_maintext(n, bath, t),
        Method::BoundSqueezed => bound_squeezed(n, bath, t),
        Method::BoundCoherent => bound_coherent(n, bath, t),
        other => Err(Error::domain(format!("{other} is not a closed-form bound"))),
    }
}

/// Fisher information per unit mean photon number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnqfiResult {
    pub value: f64,
    pub kind: BoundKind,
    pub nbar: f64,
}

pub fn enqfi(bound: &BoundResult, nbar: f64) -> Result<EnqfiResult> {
    if !(nbar > 0.0) || !nbar.is_finite() {
        return Err(Error::domain("energy normalisation needs nbar > 0"));
    }
    Ok(EnqfiResult { value: bound.value / nbar, kind: bound.kind, nbar })
}

/// Numerical companions to the closed forms, all at matched energy `n`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NumericColumns {
    pub fock_cfi: f64,
    pub fock_qfi: f64,
    pub squeezed_qfi: f64,
    pub coherent_qfi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub n: usize,
    pub fock_linear: f64,
    pub fock_quadratic: f64,
    pub squeezed: f64,
    pub coherent: f64,
    pub valid_short_time: bool,
    pub numeric: Option<NumericColumns>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingTable {
    pub t: f64,
    pub bath: BathParams,
    pub rows: Vec<ScalingRow>,
}

pub const SCALING_CSV_HEADER: &str =
    "n,t,fock_linear,fock_quadratic,squeezed,coherent,valid_short_time,fock_cfi,fock_qfi,squeezed_qfi,coherent_qfi";

/// Nine significant digits, or `NaN`.
pub fn format_sig9(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.8e}")
    } else if x.is_nan() {
        "NaN".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

impl ScalingTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(SCALING_CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            let numeric = row.numeric.map_or([f64::NAN; 4], |c| [c.fock_cfi, c.fock_qfi, c.squeezed_qfi, c.coherent_qfi]);
            let mut fields = vec![
                row.n.to_string(),
                format_sig9(self.t),
                format_sig9(row.fock_linear),
                format_sig9(row.fock_quadratic),
                format_sig9(row.squeezed),
                format_sig9(row.coherent),
                row.valid_short_time.to_string(),
            ];
            fields.extend(numeric.iter().map(|&x| format_sig9(x)));
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }
}

/// Every bound at matched energy `n̄ = n`, optionally with simulated
/// Fisher information for the three probes.
pub fn scaling_table(bath: &BathParams, n_list: &[usize], t: f64, numerics: Option<&EvalSettings>) -> Result<ScalingTable> {
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let nf = n as f64;
        let linear = bound_fock_linear(nf, bath, t)?;
        let numeric = match numerics {
            None => None,
            Some(settings) => {
                let fock = ProbeSpec::Fock { n };
                let matched = energy_match(nf)?;
                let qfi = |probe: &ProbeSpec| numerical_record(probe, bath, t, Method::QfiSld, settings).map(|r| r.value);
                Some(NumericColumns {
                    fock_cfi: numerical_record(&fock, bath, t, Method::CfiNumber, settings)?.value,
                    fock_qfi: qfi(&fock)?,
                    squeezed_qfi: qfi(&matched.squeezed())?,
                    coherent_qfi: qfi(&matched.coherent())?,
                })
            }
        };
        rows.push(ScalingRow {
            n,
            fock_linear: linear.value,
            fock_quadratic: bound_fock_quadratic_maintext(nf, bath, t)?.value,
            squeezed: bound_squeezed(nf, bath, t)?.value,
            coherent: bound_coherent(nf, bath, t)?.value,
            valid_short_time: linear.valid,
            numeric,
        });
    }
    Ok(ScalingTable { t, bath: *bath, rows })
}
