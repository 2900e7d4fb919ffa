//! Invariant suite behind `fockthermo validate`.
//!
//! [`MANIFEST`] lists the invariant groups per module; [`checks`] must
//! provide exactly one check for each entry.

use std::time::Instant;

use num_complex::Complex64;

use fockthermo::bath::{rates, thermal_occupation, thermal_occupation_dt, RateModel, Rates};
use fockthermo::bounds::{bound_coherent, bound_fock_linear, bound_fock_quadratic_maintext, bound_squeezed};
use fockthermo::dynamics::{self, evolve, mean_photon_analytic, EvolutionConfig, EvolutionMethod};
use fockthermo::fisher::{numerical_record, state_derivative, DerivativeConfig, EvalSettings, Method};
use fockthermo::fockspace::{annihilation, creation, hermitian_eigen, validate_density, CMatrix, ToleranceProfile};
use fockthermo::probes::{default_dim, energy_match, make_state, PREPARATION_TAIL};
use fockthermo::sweep::{log_grid, run_sweep, Axis, FixedParams, SweepSpec};
use fockthermo::{BathParams, DensityMatrix, FockDim, ProbeSpec};

use crate::config::RunConfig;

pub const MANIFEST: &[(&str, &str)] = &[
    ("fockspace", "creation_is_adjoint"),
    ("fockspace", "commutator_below_truncation"),
    ("fockspace", "spectrum_real_and_normalised"),
    ("bath", "detailed_balance"),
    ("bath", "rate_gap"),
    ("bath", "occupation_monotone"),
    ("bath", "occupation_derivative"),
    ("probes", "states_validate"),
    ("probes", "energy_matching"),
    ("probes", "squeezed_parity"),
    ("probes", "thermal_geometric"),
    ("dynamics", "trace_preservation"),
    ("dynamics", "diagonality_preservation"),
    ("dynamics", "oracle_agreement"),
    ("dynamics", "thermal_stationarity"),
    ("dynamics", "first_moment"),
    ("dynamics", "short_time_populations"),
    ("fisher", "qfi_equals_cfi"),
    ("fisher", "qfi_dominates_cfi"),
    ("fisher", "phase_invariance"),
    ("fisher", "richardson_consistency"),
    ("fisher", "cramer_rao"),
    ("bounds", "time_homogeneity"),
    ("bounds", "fock_linear_increasing"),
    ("bounds", "short_time_limit"),
    ("bounds", "nonnegative"),
    ("sweep", "determinism"),
    ("sweep", "time_monotone"),
    ("sweep", "energy_matching_n_axis"),
    ("cli", "config_round_trip"),
];

type CheckResult = Result<String, String>;

pub struct Check {
    pub module: &'static str,
    pub id: &'static str,
    pub run: fn() -> CheckResult,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub module: &'static str,
    pub id: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

pub fn checks() -> Vec<Check> {
    macro_rules! check {
        ($module:literal, $f:ident) => {
            Check { module: $module, id: stringify!($f), run: $f }
        };
    }
    vec![
        check!("fockspace", creation_is_adjoint),
        check!("fockspace", commutator_below_truncation),
        check!("fockspace", spectrum_real_and_normalised),
        check!("bath", detailed_balance),
        check!("bath", rate_gap),
        check!("bath", occupation_monotone),
        check!("bath", occupation_derivative),
        check!("probes", states_validate),
        check!("probes", energy_matching),
        check!("probes", squeezed_parity),
        check!("probes", thermal_geometric),
        check!("dynamics", trace_preservation),
        check!("dynamics", diagonality_preservation),
        check!("dynamics", oracle_agreement),
        check!("dynamics", thermal_stationarity),
        check!("dynamics", first_moment),
        check!("dynamics", short_time_populations),
        check!("fisher", qfi_equals_cfi),
        check!("fisher", qfi_dominates_cfi),
        check!("fisher", phase_invariance),
        check!("fisher", richardson_consistency),
        check!("fisher", cramer_rao),
        check!("bounds", time_homogeneity),
        check!("bounds", fock_linear_increasing),
        check!("bounds", short_time_limit),
        check!("bounds", nonnegative),
        check!("sweep", determinism),
        check!("sweep", time_monotone),
        check!("sweep", energy_matching_n_axis),
        check!("cli", config_round_trip),
    ]
}

/// Manifest entries without a check, then checks outside the manifest.
pub fn coverage_gaps() -> (Vec<String>, Vec<String>) {
    let ids: Vec<(String, String)> = checks()
        .iter()
        .map(|c| (c.module.to_string(), c.id.to_string()))
        .collect();
    let missing = MANIFEST
        .iter()
        .filter(|(m, i)| !ids.iter().any(|(cm, ci)| cm == m && ci == i))
        .map(|(m, i)| format!("{m}.{i}"))
        .collect();
    let extra = ids
        .iter()
        .filter(|(cm, ci)| !MANIFEST.iter().any(|(m, i)| cm == m && ci == i))
        .map(|(m, i)| format!("{m}.{i}"))
        .collect();
    (missing, extra)
}

pub fn run_suite() -> Vec<Outcome> {
    checks()
        .into_iter()
        .map(|c| {
            let start = Instant::now();
            let result = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("check panicked".to_string()));
            let (passed, detail) = match result {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Outcome { module: c.module, id: c.id, passed, detail, seconds: start.elapsed().as_secs_f64() }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: fockthermo::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn dim(d: usize) -> FockDim {
    FockDim::new(d).expect("dims used here are >= 2")
}

fn fig_bath() -> BathParams {
    BathParams::new(1.0, 0.5, 0.1, 0.05, RateModel::Markovian).expect("valid bath")
}

fn fig_rates() -> Rates {
    rates(&fig_bath()).expect("valid bath")
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn state(spec: &ProbeSpec, d: usize) -> Result<DensityMatrix, String> {
    core(make_state(spec, dim(d)))
}

fn evolved(spec: &ProbeSpec, d: usize, t: f64, method: EvolutionMethod) -> Result<DensityMatrix, String> {
    let rho = state(spec, d)?;
    Ok(core(evolve(&rho, &fig_rates(), &EvolutionConfig::new(t, method)))?.state)
}

fn creation_is_adjoint() -> CheckResult {
    for d in [2, 5, 40] {
        ensure(creation(dim(d)) == annihilation(dim(d)).adjoint(), || format!("mismatch at dim {d}"))?;
    }
    Ok("dims 2, 5, 40".into())
}

fn commutator_below_truncation() -> CheckResult {
    for d in [3, 10, 40] {
        let a = annihilation(dim(d));
        let ad = creation(dim(d));
        let comm = &a * &ad - &ad * &a;
        let block = comm.view((0, 0), (d - 1, d - 1)).into_owned();
        let defect = (block - CMatrix::identity(d - 1, d - 1)).norm();
        ensure(defect < 1e-12, || format!("block defect {defect:e} at dim {d}"))?;
        let corner = comm[(d - 1, d - 1)].re;
        ensure((corner - (1.0 - d as f64)).abs() < 1e-12, || format!("corner {corner} at dim {d}"))?;
    }
    Ok("identity on the leading block, corner 1-d".into())
}

fn spectrum_real_and_normalised() -> CheckResult {
    let specs = [
        ProbeSpec::Fock { n: 3 },
        ProbeSpec::Coherent { alpha: Complex64::new(0.8, -0.6) },
        ProbeSpec::SqueezedVacuum { r: 0.5 },
        ProbeSpec::Thermal { nbar: 0.7 },
    ];
    let mut worst: f64 = 0.0;
    for spec in specs {
        let rho = state(&spec, 60)?;
        let (vals, vecs) = hermitian_eigen(rho.matrix());
        let sum: f64 = vals.iter().sum();
        ensure((sum - 1.0).abs() < 1e-9, || format!("{spec}: eigenvalues sum to {sum}"))?;
        let lambda = CMatrix::from_fn(vals.len(), vals.len(), |i, j| if i == j { Complex64::new(vals[i], 0.0) } else { Complex64::new(0.0, 0.0) });
        let recon = (&vecs * lambda * vecs.adjoint() - rho.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        worst = worst.max(recon);
        ensure(recon < 1e-10, || format!("{spec}: real spectrum reconstructs to {recon:e}"))?;
    }
    Ok(format!("worst reconstruction {worst:.2e}"))
}

fn ratio_grid() -> Vec<f64> {
    log_grid(0.01, 100.0, 41)
}

fn detailed_balance() -> CheckResult {
    let mut worst: f64 = 0.0;
    for omega in [0.5, 1.0, 3.0] {
        for x in ratio_grid() {
            let r = core(rates(&core(BathParams::markovian(omega, omega / x, 0.1))?))?;
            let err = rel(r.gamma_plus / r.gamma_minus, (-x).exp());
            worst = worst.max(err);
        }
    }
    ensure(worst < 1e-12, || format!("worst relative error {worst:e}"))?;
    Ok(format!("worst relative error {worst:.2e}"))
}

fn rate_gap() -> CheckResult {
    for gamma in [1e-3, 0.1, 2.0] {
        for x in ratio_grid() {
            let r = core(rates(&core(BathParams::markovian(1.0, 1.0 / x, gamma))?))?;
            let gap = r.gamma_minus - r.gamma_plus;
            ensure((gap - gamma).abs() <= 4.0 * f64::EPSILON * r.gamma_minus.max(1.0), || {
                format!("gap {gap} vs {gamma} at omega/T={x}")
            })?;
        }
    }
    Ok("to rounding".into())
}

fn occupation_monotone() -> CheckResult {
    let temps = log_grid(0.01, 100.0, 81);
    let mut prev = 0.0;
    for &t in &temps {
        let dn = core(thermal_occupation_dt(1.0, t))?;
        ensure(dn > 0.0, || format!("derivative {dn} at T={t}"))?;
        let n = core(thermal_occupation(1.0, t))?;
        ensure(n > prev || n == 0.0, || format!("occupation not increasing at T={t}"))?;
        prev = n;
    }
    Ok("T in [0.01, 100]".into())
}

fn occupation_derivative() -> CheckResult {
    let mut worst: f64 = 0.0;
    for x in ratio_grid() {
        let t = 1.0 / x;
        let h = 1e-4 * t / (1.0 + x);
        let fd = (core(thermal_occupation(1.0, t + h))? - core(thermal_occupation(1.0, t - h))?) / (2.0 * h);
        worst = worst.max(rel(fd, core(thermal_occupation_dt(1.0, t))?));
    }
    ensure(worst < 1e-7, || format!("worst relative error {worst:e}"))?;
    Ok(format!("worst relative error {worst:.2e}"))
}

fn states_validate() -> CheckResult {
    let tol = ToleranceProfile { leakage: PREPARATION_TAIL, ..Default::default() };
    let specs = [
        ProbeSpec::Fock { n: 0 },
        ProbeSpec::Fock { n: 7 },
        ProbeSpec::Coherent { alpha: Complex64::from_polar(1.5, 2.0) },
        ProbeSpec::SqueezedVacuum { r: -0.9 },
        ProbeSpec::Thermal { nbar: 1.5 },
    ];
    for spec in specs {
        let rho = state(&spec, default_dim(&spec, 0.0).get())?;
        let report = validate_density(&rho, &tol);
        ensure(report.passed(), || format!("{spec}: {report:?}"))?;
    }
    Ok(format!("{} probes at default truncation", specs.len()))
}

fn energy_matching() -> CheckResult {
    for n in [0.5, 1.0, 2.0, 5.0] {
        let m = core(energy_match(n))?;
        for spec in [m.coherent(), m.squeezed()] {
            let mean = state(&spec, default_dim(&spec, 0.0).get())?.mean_photon_number();
            ensure((mean - n).abs() < 1e-9, || format!("{spec}: mean {mean} vs {n}"))?;
        }
    }
    Ok("n in {0.5, 1, 2, 5}".into())
}

fn squeezed_parity() -> CheckResult {
    for r in [0.3, -0.8, 0.88] {
        let p = state(&ProbeSpec::SqueezedVacuum { r }, 80)?.populations();
        ensure(p.iter().skip(1).step_by(2).all(|&x| x == 0.0), || format!("odd population at r={r}"))?;
    }
    Ok("odd levels exactly empty".into())
}

fn thermal_geometric() -> CheckResult {
    for nbar in [0.1, 0.5, 2.0] {
        let p = state(&ProbeSpec::Thermal { nbar }, default_dim(&ProbeSpec::Thermal { nbar }, 0.0).get())?.populations();
        let q = nbar / (nbar + 1.0);
        for m in 0..p.len() - 1 {
            if p[m + 1] < 1e-10 {
                break;
            }
            ensure(rel(p[m + 1] / p[m], q) < 1e-12, || format!("ratio at m={m}, nbar={nbar}"))?;
        }
    }
    Ok("ratio nbar/(nbar+1)".into())
}

fn trace_preservation() -> CheckResult {
    let cases = [
        (ProbeSpec::Fock { n: 2 }, EvolutionMethod::Rk4Full),
        (ProbeSpec::Fock { n: 2 }, EvolutionMethod::BirthDeathExpm),
        (ProbeSpec::Coherent { alpha: Complex64::new(1.0, 0.0) }, EvolutionMethod::Rk4Full),
        (ProbeSpec::SqueezedVacuum { r: 0.5 }, EvolutionMethod::Rk4Full),
        (ProbeSpec::Thermal { nbar: 0.3 }, EvolutionMethod::BirthDeathExpm),
    ];
    let mut worst: f64 = 0.0;
    for (spec, method) in cases {
        let rho = evolved(&spec, 50, 2.0, method)?;
        worst = worst.max((rho.trace() - Complex64::new(1.0, 0.0)).norm());
    }
    ensure(worst < 1e-9, || format!("trace defect {worst:e}"))?;
    Ok(format!("worst trace defect {worst:.2e}"))
}

fn diagonality_preservation() -> CheckResult {
    for spec in [ProbeSpec::Fock { n: 3 }, ProbeSpec::Thermal { nbar: 0.4 }] {
        for t in [0.1, 0.5, 1.0] {
            let off = evolved(&spec, 40, t, EvolutionMethod::Rk4Full)?.max_off_diagonal();
            ensure(off < 1e-12, || format!("{spec} at t={t}: off-diagonal {off:e}"))?;
        }
    }
    Ok("rk4 keeps number-diagonal states diagonal".into())
}

fn oracle_agreement() -> CheckResult {
    let mut worst: f64 = 0.0;
    for spec in [ProbeSpec::Fock { n: 1 }, ProbeSpec::Fock { n: 3 }, ProbeSpec::Thermal { nbar: 0.5 }] {
        for t in [0.1, 0.5, 1.0] {
            let a = evolved(&spec, 40, t, EvolutionMethod::Rk4Full)?.populations();
            let b = evolved(&spec, 40, t, EvolutionMethod::BirthDeathExpm)?.populations();
            worst = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(worst, f64::max);
        }
    }
    ensure(worst < 1e-8, || format!("sup difference {worst:e}"))?;
    Ok(format!("sup difference {worst:.2e}"))
}

fn thermal_stationarity() -> CheckResult {
    let nbar = core(fig_bath().occupation())?;
    let spec = ProbeSpec::Thermal { nbar };
    let rho0 = state(&spec, 40)?;
    for method in [EvolutionMethod::Rk4Full, EvolutionMethod::BirthDeathExpm] {
        let rho = evolved(&spec, 40, 1.0, method)?;
        let diff = (rho.matrix() - rho0.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        ensure(diff < 1e-8, || format!("{method}: drift {diff:e}"))?;
    }
    Ok("bath thermal state is a fixed point".into())
}

fn first_moment() -> CheckResult {
    let r = fig_rates();
    let specs = [
        ProbeSpec::Fock { n: 2 },
        ProbeSpec::Coherent { alpha: Complex64::new(1.0, 0.0) },
        ProbeSpec::SqueezedVacuum { r: 1f64.asinh() },
        ProbeSpec::Thermal { nbar: 0.5 },
    ];
    let mut worst: f64 = 0.0;
    for spec in specs {
        let d = default_dim(&spec, r.steady_occupation()).get();
        let rho0 = state(&spec, d)?;
        for t in [0.5, 2.0] {
            let method = EvolutionMethod::auto(spec.is_number_diagonal());
            let rho = core(evolve(&rho0, &r, &EvolutionConfig::new(t, method)))?.state;
            let err = (rho.mean_photon_number() - mean_photon_analytic(rho0.mean_photon_number(), &r, t)).abs();
            worst = worst.max(err);
            ensure(err < 1e-7, || format!("{spec} at t={t}: error {err:e}"))?;
        }
    }
    Ok(format!("worst error {worst:.2e}"))
}

fn short_time_populations() -> CheckResult {
    let r = fig_rates();
    let t = 1e-3 / r.gamma0;
    let slack = 10.0 * r.gamma0 * t;
    for n in 1..=3usize {
        let p = evolved(&ProbeSpec::Fock { n }, 40, t, EvolutionMethod::BirthDeathExpm)?.populations();
        let pred = dynamics::short_time_populations(n, &r, t);
        for (label, exact, approx) in [("below", p[n - 1], pred.below), ("stay", p[n], pred.stay), ("above", p[n + 1], pred.above)] {
            let ratio = exact / approx;
            ensure((ratio - 1.0).abs() <= slack, || format!("n={n} {label}: ratio {ratio}"))?;
        }
    }
    Ok(format!("ratios within 1 +/- {slack:.0e}"))
}

fn fisher(spec: &ProbeSpec, bath: &BathParams, t: f64, method: Method) -> Result<f64, String> {
    Ok(core(numerical_record(spec, bath, t, method, &EvalSettings::default()))?.value)
}

fn qfi_equals_cfi() -> CheckResult {
    let points = [(0.3, 0.2), (0.5, 0.5), (1.2, 1.0), (2.0, 0.05)];
    let mut worst: f64 = 0.0;
    for spec in [ProbeSpec::Fock { n: 1 }, ProbeSpec::Fock { n: 3 }, ProbeSpec::Thermal { nbar: 0.4 }] {
        for (temp, t) in points {
            let bath = fig_bath().with_temperature(temp);
            let q = fisher(&spec, &bath, t, Method::QfiSld)?;
            let c = fisher(&spec, &bath, t, Method::CfiNumber)?;
            worst = worst.max(rel(q, c));
        }
    }
    ensure(worst < 1e-8, || format!("worst relative gap {worst:e}"))?;
    Ok(format!("worst relative gap {worst:.2e}"))
}

fn qfi_dominates_cfi() -> CheckResult {
    let specs = [
        ProbeSpec::Fock { n: 2 },
        ProbeSpec::Coherent { alpha: Complex64::new(1.0, 0.0) },
        ProbeSpec::SqueezedVacuum { r: 0.5 },
    ];
    for spec in specs {
        for t in [0.1, 0.5] {
            let q = fisher(&spec, &fig_bath(), t, Method::QfiSld)?;
            let c = fisher(&spec, &fig_bath(), t, Method::CfiNumber)?;
            ensure(q >= c - 1e-9, || format!("{spec} at t={t}: qfi {q} < cfi {c}"))?;
        }
    }
    Ok("qfi >= cfi".into())
}

fn phase_invariance() -> CheckResult {
    let a = fisher(&ProbeSpec::Coherent { alpha: Complex64::new(1.0, 0.0) }, &fig_bath(), 0.5, Method::QfiSld)?;
    let b = fisher(&ProbeSpec::Coherent { alpha: Complex64::from_polar(1.0, 0.7) }, &fig_bath(), 0.5, Method::QfiSld)?;
    let err = rel(b, a);
    ensure(err < 1e-8, || format!("relative gap {err:e}"))?;
    Ok(format!("relative gap {err:.2e}"))
}

fn richardson_consistency() -> CheckResult {
    let spec = ProbeSpec::Fock { n: 2 };
    let bath = fig_bath();
    let evo = EvolutionConfig::new(0.5, EvolutionMethod::BirthDeathExpm);
    let rich = DerivativeConfig::default();
    let plain = DerivativeConfig { richardson: false, ..rich };
    let f = |cfg: &DerivativeConfig| -> Result<f64, String> {
        Ok(core(core(state_derivative(&spec, &bath, dim(40), &evo, cfg))?.qfi_sld())?.value)
    };
    let (a, b) = (f(&rich)?, f(&plain)?);
    let gap = rel(b, a);
    ensure(gap < 100.0 * rich.h_rel * rich.h_rel, || format!("relative gap {gap:e}"))?;
    Ok(format!("relative gap {gap:.2e}"))
}

fn cramer_rao() -> CheckResult {
    let rec = core(numerical_record(&ProbeSpec::Fock { n: 1 }, &fig_bath(), 0.5, Method::QfiSld, &EvalSettings::default()))?;
    let product = rec.delta_t_min().powi(2) * rec.value;
    ensure((product - 1.0).abs() < 8.0 * f64::EPSILON, || format!("dT^2 F = {product}"))?;
    Ok("dT_min^2 F = 1".into())
}

fn time_homogeneity() -> CheckResult {
    let bath = fig_bath();
    for n in [0.0, 1.0, 3.5] {
        let t = 0.01;
        let lin = rel(core(bound_fock_linear(n, &bath, 2.0 * t))?.value, 2.0 * core(bound_fock_linear(n, &bath, t))?.value);
        let sq = rel(core(bound_squeezed(n, &bath, 2.0 * t))?.value, 4.0 * core(bound_squeezed(n, &bath, t))?.value);
        let coh = rel(core(bound_coherent(n, &bath, 2.0 * t))?.value, 4.0 * core(bound_coherent(n, &bath, t))?.value);
        ensure(lin < 1e-12 && (n == 0.0 || (sq < 1e-12 && coh < 1e-12)), || format!("n={n}: {lin:e} {sq:e} {coh:e}"))?;
    }
    Ok("degree 1 and 2 in t".into())
}

fn fock_linear_increasing() -> CheckResult {
    let bath = fig_bath();
    let values: Vec<f64> =
        (0..=10).map(|n| bound_fock_linear(n as f64, &bath, 0.01).map(|b| b.value)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    ensure(values.windows(2).all(|w| w[1] > w[0]), || format!("{values:?}"))?;
    Ok("n = 0..10".into())
}

fn short_time_limit() -> CheckResult {
    let bath = fig_bath();
    let mut report = Vec::new();
    for (gt, tol) in [(1e-4, 0.05), (1e-5, 0.01)] {
        let t = gt / bath.gamma;
        for n in 0..=3usize {
            let cfi = fisher(&ProbeSpec::Fock { n }, &bath, t, Method::CfiNumber)?;
            let ratio = cfi / core(bound_fock_linear(n as f64, &bath, t))?.value;
            ensure((ratio - 1.0).abs() < tol, || format!("n={n} at gamma t={gt}: ratio {ratio}"))?;
            report.push(ratio);
        }
    }
    let worst = report.iter().map(|r| (r - 1.0).abs()).fold(0.0, f64::max);
    Ok(format!("worst |ratio - 1| {worst:.2e}"))
}

fn nonnegative() -> CheckResult {
    for x in log_grid(0.1, 20.0, 25) {
        let bath = core(BathParams::markovian(1.0, 1.0 / x, 0.1))?;
        for n in 0..=10 {
            let n = n as f64;
            let values = [
                core(bound_fock_linear(n, &bath, 0.05))?.value,
                core(bound_fock_quadratic_maintext(n, &bath, 0.05))?.value,
                core(bound_squeezed(n, &bath, 0.05))?.value,
                core(bound_coherent(n, &bath, 0.05))?.value,
            ];
            ensure(values.iter().all(|v| *v >= 0.0), || format!("negative bound at omega/T={x}, n={n}: {values:?}"))?;
        }
    }
    Ok("omega/T in [0.1, 20], n in 0..10".into())
}

fn small_spec(axis: Axis, values: Vec<f64>, probes: &[&str], methods: &[Method]) -> SweepSpec {
    SweepSpec {
        axis,
        axis_values: values,
        fixed: FixedParams::default(),
        probes: probes.iter().map(|p| p.parse().expect("valid probe")).collect(),
        methods: methods.to_vec(),
        settings: EvalSettings::default(),
    }
}

fn determinism() -> CheckResult {
    let spec = small_spec(
        Axis::Temperature,
        vec![0.2, 0.5, 1.0],
        &["fock:1", "coherent:1", "thermal:0.3"],
        &[Method::CfiNumber, Method::QfiSld, Method::BoundFockLinear],
    );
    let one = core(run_sweep(&spec, 1))?.to_csv();
    let four = core(run_sweep(&spec, 4))?.to_csv();
    ensure(one == four, || "CSV differs between 1 and 4 workers".into())?;
    Ok(format!("{} rows identical", one.lines().count() - 1))
}

fn time_monotone() -> CheckResult {
    let spec = small_spec(
        Axis::Time,
        log_grid(0.01, 0.5, 6),
        &["fock:1", "coherent:1", "squeezed:0.5", "thermal:0.3"],
        &[Method::QfiSld],
    );
    let result = core(run_sweep(&spec, 0))?;
    for probe in ["fock:1", "coherent:1", "squeezed:0.5", "thermal:0.3"] {
        let series = result.series(probe, Method::QfiSld);
        ensure(series.len() == 6, || format!("{probe}: missing rows"))?;
        ensure(series.windows(2).all(|w| w[1].1 >= w[0].1), || format!("{probe}: {series:?}"))?;
    }
    Ok("gamma t <= 0.05".into())
}

fn energy_matching_n_axis() -> CheckResult {
    let spec = small_spec(Axis::ExcitationN, vec![1.0, 2.0, 3.0, 4.0, 5.0], &["squeezed", "coherent"], &[Method::QfiSld]);
    for &n in &spec.axis_values {
        for template in &spec.probes {
            let (bath, _, probe) = core(spec.point(n, template))?;
            let d = core(spec.settings.resolve_dim(&probe, &bath))?;
            let mean = core(make_state(&probe, d))?.mean_photon_number();
            ensure((mean - n).abs() < 1e-8, || format!("{probe}: mean {mean} vs {n}"))?;
        }
    }
    Ok("n = 1..5".into())
}

fn config_round_trip() -> CheckResult {
    let mut cfg = RunConfig::default();
    cfg.set("probes", "fock:2, coherent:0.5-1.25i, squeezed:0.3").map_err(|e| e.to_string())?;
    cfg.set("axis_values", "log:0.001:0.1:7").map_err(|e| e.to_string())?;
    cfg.set("dt", "0.002").map_err(|e| e.to_string())?;
    for c in [RunConfig::default(), cfg] {
        let back = RunConfig::resolve(Some(&c.to_text()), &[], None).map_err(|e| e.to_string())?;
        ensure(back == c, || format!("round trip changed the record:\n{}", c.to_text()))?;
    }
    Ok("text form parses back to the same record".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_is_covered_exactly() {
        let (missing, extra) = coverage_gaps();
        assert!(missing.is_empty(), "manifest entries without a check: {missing:?}");
        assert!(extra.is_empty(), "checks outside the manifest: {extra:?}");
    }

    #[test]
    fn every_module_has_a_group() {
        for module in ["fockspace", "bath", "probes", "dynamics", "fisher", "bounds", "sweep", "cli"] {
            assert!(MANIFEST.iter().any(|(m, _)| *m == module), "{module}");
        }
    }
}
