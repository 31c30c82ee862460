//! Switching schedules and the physical setups built on them: a resting
//! detector pair sharing one field mode, a counteraccelerated pair coupled to
//! the two Rindler wedge modes, and a single detector.
//!
//! Evaluation first runs in `f64`. When the transform or the state fails the
//! double-precision gates (strongly amplifying couplings push entries past
//! ~1e5) the same computation is repeated in [`Extended`] precision.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::entanglement::{mean_excitations, negativity, EntanglementResult};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{Extended, Precision, Real};
use crate::symplectic::{
    apply, build_hamiltonian, compose, evolve_segment, partial_trace, two_mode_squeeze,
    GaussianState, QuadraticHamiltonian, SymplecticTransform, SystemLayout,
};

/// `‖SJSᵀ − J‖` above this sends an `f64` run to extended precision.
pub const DOUBLE_SYMPLECTIC_GATE: f64 = 1e-11;
/// `|det σ − 1|` above this sends an `f64` run to extended precision.
pub const DOUBLE_PURITY_GATE: f64 = 1e-9;
/// Relative residual allowed in the `N + R sinh² r` fit.
pub const UNRUH_FIT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    /// Indices of the detectors coupled during the segment (0-based).
    pub active: Vec<usize>,
    pub duration: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwitchingSchedule {
    segments: Vec<Segment>,
}

impl SwitchingSchedule {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if let Some(s) = segments
            .iter()
            .find(|s| !(s.duration.is_finite() && s.duration >= 0.0))
        {
            return Err(Error::InvalidInput(format!(
                "segment durations must be finite and non-negative, got {}",
                s.duration
            )));
        }
        Ok(SwitchingSchedule { segments })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }
}

fn seg(active: &[usize], duration: f64) -> Segment {
    Segment {
        active: active.to_vec(),
        duration,
    }
}

/// Total transform of a schedule, earliest segment acting first.
pub fn schedule_transform<T: Real>(
    layout: &SystemLayout,
    schedule: &SwitchingSchedule,
) -> Result<(SymplecticTransform<T>, bool)> {
    schedule_fold(layout, schedule, |h, d| evolve_segment::<T>(h, d))
}

/// As [`schedule_transform`] with a caller-supplied segment propagator.
pub fn schedule_transform_with(
    layout: &SystemLayout,
    schedule: &SwitchingSchedule,
    evolve: &dyn Fn(&QuadraticHamiltonian, f64) -> Result<SymplecticTransform<f64>>,
) -> Result<(SymplecticTransform<f64>, bool)> {
    schedule_fold(layout, schedule, evolve)
}

fn schedule_fold<T: Real>(
    layout: &SystemLayout,
    schedule: &SwitchingSchedule,
    evolve: impl Fn(&QuadraticHamiltonian, f64) -> Result<SymplecticTransform<T>>,
) -> Result<(SymplecticTransform<T>, bool)> {
    let mut total = SymplecticTransform::identity(layout.n_modes());
    let mut stable = true;
    for s in schedule.segments() {
        let h = build_hamiltonian(layout, &s.active)?;
        if s.duration == 0.0 {
            continue;
        }
        stable &= h.is_stable();
        total = compose(&evolve(&h, s.duration)?, &total)?;
    }
    Ok((total, stable))
}

// ─── setups ────────────────────────────────────────────────────────────────

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InertialScenario {
    /// Both detectors on together for `t`.
    A,
    /// Detector 2 switched on `t/2` after detector 1, each on for `t`.
    B,
    /// Detector 2 switched on as detector 1 switches off.
    C,
    /// As `C` with an extra free interval `T` in between.
    D,
}

impl InertialScenario {
    pub const ALL: [InertialScenario; 4] = [Self::A, Self::B, Self::C, Self::D];

    pub fn name(self) -> &'static str {
        match self {
            Self::A => "a",
            Self::B => "b",
            Self::C => "c",
            Self::D => "d",
        }
    }
}

impl fmt::Display for InertialScenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InertialScenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(Self::A),
            "b" => Ok(Self::B),
            "c" => Ok(Self::C),
            "d" => Ok(Self::D),
            _ => Err(Error::InvalidInput(format!("unknown inertial scenario `{s}`"))),
        }
    }
}

/// Detector separation, either absolute or in field wavelengths `2π/ω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Separation {
    Absolute(f64),
    Wavelengths(f64),
}

/// Two resting detectors at frequency `ω` coupled to one field mode of the
/// same frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct InertialSpec {
    pub scenario: InertialScenario,
    pub omega: f64,
    pub lambda: f64,
    pub t: f64,
    pub separation: Separation,
    /// Free interval between the two switchings (scenario `d`).
    pub gap: f64,
    /// Place detectors at `±separation` rather than `±separation/2`.
    pub outer_positions: bool,
}

impl InertialSpec {
    pub fn new(scenario: InertialScenario, omega: f64, lambda: f64, t: f64) -> Self {
        InertialSpec {
            scenario,
            omega,
            lambda,
            t,
            separation: Separation::Absolute(0.0),
            gap: 0.0,
            outer_positions: false,
        }
    }

    pub fn with_separation(mut self, separation: f64) -> Self {
        self.separation = Separation::Absolute(separation);
        self
    }

    pub fn with_gap(mut self, gap: f64) -> Self {
        self.gap = gap;
        self
    }

    pub fn separation_value(&self) -> f64 {
        match self.separation {
            Separation::Absolute(x) => x,
            Separation::Wavelengths(k) => k * 2.0 * PI / self.omega,
        }
    }

    pub fn positions(&self) -> [f64; 2] {
        let x = self.separation_value();
        let half = if self.outer_positions { x } else { x / 2.0 };
        [-half, half]
    }

    pub fn validate(&self) -> Result<()> {
        positive("omega", self.omega)?;
        non_negative("lambda", self.lambda)?;
        non_negative("t", self.t)?;
        non_negative("T", self.gap)?;
        let sep = match self.separation {
            Separation::Absolute(x) => ("separation", x),
            Separation::Wavelengths(k) => ("separation_wavelengths", k),
        };
        if !sep.1.is_finite() {
            return Err(Error::config(sep.0, "must be finite"));
        }
        Ok(())
    }

    pub fn layout(&self) -> Result<SystemLayout> {
        let w = self.omega;
        SystemLayout::new(
            vec![w, w],
            vec![w],
            self.positions().to_vec(),
            vec![vec![self.lambda], vec![self.lambda]],
        )
    }
}

fn positive(key: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::config(key, format!("must be positive, got {v}")))
    }
}

fn non_negative(key: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::config(key, format!("must be non-negative, got {v}")))
    }
}

pub fn schedule_for(spec: &InertialSpec) -> Result<SwitchingSchedule> {
    spec.validate()?;
    let t = spec.t;
    let segments = match spec.scenario {
        InertialScenario::A => vec![seg(&[0, 1], t)],
        InertialScenario::B => vec![seg(&[0], t / 2.0), seg(&[0, 1], t / 2.0), seg(&[1], t / 2.0)],
        InertialScenario::C => vec![seg(&[0], t), seg(&[1], t)],
        InertialScenario::D => vec![seg(&[0], t), seg(&[], spec.gap), seg(&[1], t)],
    };
    SwitchingSchedule::new(segments)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Squeezing {
    /// Squeezing parameter `r` of the wedge-mode pair.
    Parameter(f64),
    /// Rindler frequency `Ω` and proper acceleration `a`.
    Acceleration { big_omega: f64, a: f64 },
}

/// Counteraccelerated detectors, each coupled to the Rindler mode of its
/// wedge; the two wedge modes start in a two-mode squeezed vacuum.
#[derive(Debug, Clone, PartialEq)]
pub struct AcceleratedSpec {
    pub omega: f64,
    pub lambda: f64,
    /// Interaction time of each detector, in Rindler time.
    pub t: f64,
    /// Switch-on of detector 2 after switch-on of detector 1.
    pub delay: f64,
    pub squeezing: Squeezing,
}

impl AcceleratedSpec {
    pub fn new(omega: f64, lambda: f64, t: f64, r: f64) -> Self {
        AcceleratedSpec {
            omega,
            lambda,
            t,
            delay: 0.0,
            squeezing: Squeezing::Parameter(r),
        }
    }

    pub fn with_delay(mut self, delay: f64) -> Self {
        self.delay = delay;
        self
    }

    pub fn r(&self) -> f64 {
        match self.squeezing {
            Squeezing::Parameter(r) => r,
            Squeezing::Acceleration { big_omega, a } => squeezing_from_acceleration(big_omega, a),
        }
    }

    /// Frequency of the wedge modes: `Ω` when given, else resonant with `ω`.
    pub fn field_freq(&self) -> f64 {
        match self.squeezing {
            Squeezing::Parameter(_) => self.omega,
            Squeezing::Acceleration { big_omega, .. } => big_omega,
        }
    }

    pub fn validate(&self) -> Result<()> {
        positive("omega", self.omega)?;
        non_negative("lambda", self.lambda)?;
        non_negative("t", self.t)?;
        non_negative("delay", self.delay)?;
        match self.squeezing {
            Squeezing::Parameter(r) => non_negative("r", r),
            Squeezing::Acceleration { big_omega, a } => {
                positive("Omega", big_omega)?;
                positive("a", a)
            }
        }
    }

    pub fn layout(&self) -> Result<SystemLayout> {
        let w = self.field_freq();
        SystemLayout::new(
            vec![self.omega, self.omega],
            vec![w, w],
            vec![0.0, 0.0],
            vec![vec![self.lambda, 0.0], vec![0.0, self.lambda]],
        )
    }

    pub fn schedule(&self) -> Result<SwitchingSchedule> {
        self.validate()?;
        let (t, d) = (self.t, self.delay);
        let segments = if d == 0.0 {
            vec![seg(&[0, 1], t)]
        } else if d < t {
            vec![seg(&[0], d), seg(&[0, 1], t - d), seg(&[1], d)]
        } else {
            vec![seg(&[0], t), seg(&[], d - t), seg(&[1], t)]
        };
        SwitchingSchedule::new(segments)
    }
}

// ─── results ───────────────────────────────────────────────────────────────

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub precision: Precision,
    /// `‖SJSᵀ − J‖_max` of the full transform, preparation included.
    pub symplectic_defect: f64,
    /// `|det σ − 1|` of the full final state.
    pub purity_defect: f64,
}

impl Diagnostics {
    fn within_double_gates(&self) -> bool {
        self.symplectic_defect <= DOUBLE_SYMPLECTIC_GATE && self.purity_defect <= DOUBLE_PURITY_GATE
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioResult {
    pub entanglement: EntanglementResult,
    /// Reduced covariance of the detector pair.
    pub detector_covariance: Mat<f64>,
    pub excitations: [f64; 2],
    /// `false` when some segment has an indefinite Hamiltonian.
    pub stable: bool,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcitationResult {
    pub excitations: f64,
    pub stable: bool,
    pub diagnostics: Diagnostics,
}

struct Evolved<T: Real> {
    state: GaussianState<T>,
    stable: bool,
    diagnostics: Diagnostics,
}

/// Vacuum, optionally two-mode squeezed on `squeeze = (r, a, b)`, then the
/// schedule.
fn evolve_vacuum<T: Real>(
    layout: &SystemLayout,
    squeeze: Option<(f64, usize, usize)>,
    schedule: &SwitchingSchedule,
) -> Result<Evolved<T>> {
    let n = layout.n_modes();
    let (dynamics, stable) = schedule_transform::<T>(layout, schedule)?;
    let total = match squeeze {
        Some((r, a, b)) => compose(&dynamics, &two_mode_squeeze(r, a, b, n)?)?,
        None => dynamics,
    };
    let state = apply(&total, &GaussianState::vacuum(layout.mode_labels()))?;
    let purity_defect = (state.covariance().det() - T::one()).abs().to_f64();
    Ok(Evolved {
        diagnostics: Diagnostics {
            precision: T::PRECISION,
            symplectic_defect: total.symplectic_defect(),
            purity_defect,
        },
        state,
        stable,
    })
}

fn pair_result<T: Real>(evolved: Evolved<T>) -> Result<ScenarioResult> {
    let pair = partial_trace(&evolved.state, &[0, 1])?;
    Ok(ScenarioResult {
        entanglement: negativity(pair.covariance())?,
        detector_covariance: pair.covariance().to_f64(),
        excitations: [mean_excitations(&pair, 0)?, mean_excitations(&pair, 1)?],
        stable: evolved.stable,
        diagnostics: evolved.diagnostics,
    })
}

fn excitation_result<T: Real>(evolved: Evolved<T>) -> Result<ExcitationResult> {
    Ok(ExcitationResult {
        excitations: mean_excitations(&evolved.state, 0)?,
        stable: evolved.stable,
        diagnostics: evolved.diagnostics,
    })
}

/// Runs in `f64`; falls back to extended precision when the double run
/// misses a gate or fails numerically.
fn auto_precision<R>(
    double: impl FnOnce() -> Result<R>,
    extended: impl FnOnce() -> Result<R>,
    diagnostics: impl Fn(&R) -> Diagnostics,
) -> Result<R> {
    match double() {
        Ok(res) if diagnostics(&res).within_double_gates() => Ok(res),
        Ok(_) | Err(Error::Numerical(_)) => extended(),
        Err(e) => Err(e),
    }
}

pub fn run_inertial(spec: &InertialSpec) -> Result<ScenarioResult> {
    auto_precision(
        || run_inertial_in::<f64>(spec),
        || run_inertial_in::<Extended>(spec),
        |r| r.diagnostics,
    )
}

/// [`run_inertial`] at a fixed working precision.
pub fn run_inertial_in<T: Real>(spec: &InertialSpec) -> Result<ScenarioResult> {
    let schedule = schedule_for(spec)?;
    pair_result(evolve_vacuum::<T>(&spec.layout()?, None, &schedule)?)
}

pub fn run_accelerated(spec: &AcceleratedSpec) -> Result<ScenarioResult> {
    auto_precision(
        || run_accelerated_in::<f64>(spec),
        || run_accelerated_in::<Extended>(spec),
        |r| r.diagnostics,
    )
}

pub fn run_accelerated_in<T: Real>(spec: &AcceleratedSpec) -> Result<ScenarioResult> {
    let schedule = spec.schedule()?;
    let layout = spec.layout()?;
    let wedges = (layout.field_mode(0), layout.field_mode(1));
    pair_result(evolve_vacuum::<T>(
        &layout,
        Some((spec.r(), wedges.0, wedges.1)),
        &schedule,
    )?)
}

// ─── single detector ───────────────────────────────────────────────────────

/// `sin z / z` continued to imaginary arguments: `arg_sq = z²`.
fn sinc_sq_arg(arg_sq: f64) -> f64 {
    if arg_sq == 0.0 {
        1.0
    } else if arg_sq > 0.0 {
        let z = arg_sq.sqrt();
        z.sin() / z
    } else {
        let y = (-arg_sq).sqrt();
        y.sinh() / y
    }
}

/// Closed-form mean excitations of a resonant detector coupled for `t`.
pub fn closed_form_excitations(omega: f64, lambda: f64, t: f64) -> Result<f64> {
    positive("omega", omega)?;
    non_negative("lambda", lambda)?;
    non_negative("t", t)?;
    let minus = sinc_sq_arg(omega * (omega - 2.0 * lambda) * t * t);
    let plus = sinc_sq_arg(omega * (omega + 2.0 * lambda) * t * t);
    Ok(0.5 * lambda * lambda * t * t * (minus * minus + plus * plus))
}

/// Single detector, its Rindler mode and the partner mode, the mode pair in
/// a two-mode squeezed vacuum. `r = 0` is the inertial detector.
fn single_layout(omega: f64, lambda: f64) -> Result<SystemLayout> {
    SystemLayout::new(
        vec![omega],
        vec![omega, omega],
        vec![0.0],
        vec![vec![lambda, 0.0]],
    )
}

/// Exact mean excitations of one detector after coupling for `t`, starting
/// from squeezing `r` between its mode and the partner mode.
pub fn detector_excitations(omega: f64, lambda: f64, t: f64, r: f64) -> Result<ExcitationResult> {
    positive("omega", omega)?;
    non_negative("lambda", lambda)?;
    non_negative("t", t)?;
    non_negative("r", r)?;
    let layout = single_layout(omega, lambda)?;
    let schedule = SwitchingSchedule::new(vec![seg(&[0], t)])?;
    let run = |precision: Precision| -> Result<ExcitationResult> {
        match precision {
            Precision::Double => {
                excitation_result(evolve_vacuum::<f64>(&layout, Some((r, 1, 2)), &schedule)?)
            }
            Precision::Extended => {
                excitation_result(evolve_vacuum::<Extended>(&layout, Some((r, 1, 2)), &schedule)?)
            }
        }
    };
    auto_precision(
        || run(Precision::Double),
        || run(Precision::Extended),
        |r| r.diagnostics,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnruhResponse {
    /// Inertial excitation number `N`.
    pub n: f64,
    /// Response coefficient `R` in `N(r) = N + R sinh² r`.
    pub r_coeff: f64,
    /// `(r, N(r))` as simulated.
    pub samples: Vec<(f64, f64)>,
    /// Largest fit residual relative to the largest `N(r)`.
    pub max_relative_residual: f64,
}

pub fn unruh_response(omega: f64, lambda: f64, t: f64, r_samples: &[f64]) -> Result<UnruhResponse> {
    if !r_samples.contains(&0.0) {
        return Err(Error::config("r_samples", "must include r = 0"));
    }
    let mut distinct = r_samples.to_vec();
    distinct.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::config("r_samples", "need at least 3 distinct values"));
    }
    let samples = r_samples
        .iter()
        .map(|&r| Ok((r, detector_excitations(omega, lambda, t, r)?.excitations)))
        .collect::<Result<Vec<_>>>()?;

    // least squares for N(r) = N + R u, u = sinh² r
    let pts: Vec<(f64, f64)> = samples.iter().map(|&(r, n)| (r.sinh().powi(2), n)).collect();
    let k = pts.len() as f64;
    let mu = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let mn = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let suu: f64 = pts.iter().map(|p| (p.0 - mu).powi(2)).sum();
    let sun: f64 = pts.iter().map(|p| (p.0 - mu) * (p.1 - mn)).sum();
    let r_coeff = sun / suu;
    let n = mn - r_coeff * mu;
    let scale = pts.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
    let max_residual = pts
        .iter()
        .map(|p| (p.1 - n - r_coeff * p.0).abs())
        .fold(0.0, f64::max);
    let max_relative_residual = if scale > 0.0 { max_residual / scale } else { 0.0 };
    if max_relative_residual > UNRUH_FIT_TOLERANCE {
        return Err(Error::ModelViolation(format!(
            "N + R sinh²r leaves relative residual {max_relative_residual:e}"
        )));
    }
    Ok(UnruhResponse {
        n,
        r_coeff,
        samples,
        max_relative_residual,
    })
}

/// `r` with `cosh r = (1 − e^{−2πΩ/a})^{−1/2}`, i.e. `tanh r = e^{−πΩ/a}`.
pub fn squeezing_from_acceleration(big_omega: f64, a: f64) -> f64 {
    (-PI * big_omega / a).exp().atanh()
}

/// Rindler time elapsed on the trajectory of proper acceleration `a` at
/// Minkowski time `t_m`.
pub fn minkowski_to_rindler_duration(t_m: f64, a: f64) -> f64 {
    (a * t_m).asinh() / a
}

// ─── sweeps ────────────────────────────────────────────────────────────────

#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioSpec {
    Inertial(InertialSpec),
    Accelerated(AcceleratedSpec),
    SingleDetector { omega: f64, lambda: f64, t: f64 },
    UnruhResponse { omega: f64, lambda: f64, t: f64, r_samples: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    Omega,
    Lambda,
    T,
    Separation,
    SeparationWavelengths,
    Gap,
    Delay,
    R,
    BigOmega,
    Acceleration,
}

impl Param {
    pub const ALL: [Param; 10] = [
        Param::Omega,
        Param::Lambda,
        Param::T,
        Param::Separation,
        Param::SeparationWavelengths,
        Param::Gap,
        Param::Delay,
        Param::R,
        Param::BigOmega,
        Param::Acceleration,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Param::Omega => "omega",
            Param::Lambda => "lambda",
            Param::T => "t",
            Param::Separation => "separation",
            Param::SeparationWavelengths => "separation_wavelengths",
            Param::Gap => "T",
            Param::Delay => "delay",
            Param::R => "r",
            Param::BigOmega => "Omega",
            Param::Acceleration => "a",
        }
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Param::ALL
            .into_iter()
            .find(|p| p.key() == s)
            .ok_or_else(|| Error::config(s, "unknown parameter"))
    }
}

impl ScenarioSpec {
    pub fn name(&self) -> String {
        match self {
            ScenarioSpec::Inertial(s) => s.scenario.to_string(),
            ScenarioSpec::Accelerated(_) => "accelerated".into(),
            ScenarioSpec::SingleDetector { .. } => "single-detector".into(),
            ScenarioSpec::UnruhResponse { .. } => "unruh-response".into(),
        }
    }

    /// Overwrites one parameter, rejecting those the scenario does not have.
    pub fn set(&mut self, param: Param, value: f64) -> Result<()> {
        let name = self.name();
        let unsupported =
            || Error::config(param.key(), format!("not a parameter of scenario `{name}`"));
        match self {
            ScenarioSpec::Inertial(s) => match param {
                Param::Omega => s.omega = value,
                Param::Lambda => s.lambda = value,
                Param::T => s.t = value,
                Param::Separation => s.separation = Separation::Absolute(value),
                Param::SeparationWavelengths => s.separation = Separation::Wavelengths(value),
                Param::Gap if s.scenario == InertialScenario::D => s.gap = value,
                _ => return Err(unsupported()),
            },
            ScenarioSpec::Accelerated(s) => match (param, &mut s.squeezing) {
                (Param::Omega, _) => s.omega = value,
                (Param::Lambda, _) => s.lambda = value,
                (Param::T, _) => s.t = value,
                (Param::Delay, _) => s.delay = value,
                (Param::R, Squeezing::Parameter(r)) => *r = value,
                (Param::BigOmega, Squeezing::Acceleration { big_omega, .. }) => *big_omega = value,
                (Param::Acceleration, Squeezing::Acceleration { a, .. }) => *a = value,
                (Param::R | Param::BigOmega | Param::Acceleration, _) => {
                    return Err(Error::config(
                        param.key(),
                        "squeezing is given either as r or as (Omega, a), not both",
                    ))
                }
                _ => return Err(unsupported()),
            },
            ScenarioSpec::SingleDetector { omega, lambda, t }
            | ScenarioSpec::UnruhResponse { omega, lambda, t, .. } => match param {
                Param::Omega => *omega = value,
                Param::Lambda => *lambda = value,
                Param::T => *t = value,
                _ => return Err(unsupported()),
            },
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ScenarioSpec::Inertial(s) => s.validate(),
            ScenarioSpec::Accelerated(s) => s.validate(),
            ScenarioSpec::SingleDetector { omega, lambda, t }
            | ScenarioSpec::UnruhResponse { omega, lambda, t, .. } => {
                positive("omega", *omega)?;
                non_negative("lambda", *lambda)?;
                non_negative("t", *t)
            }
        }
    }

    /// Names of the values produced by [`ScenarioSpec::evaluate`].
    pub fn output_columns(&self) -> Vec<&'static str> {
        match self {
            ScenarioSpec::Inertial(_) | ScenarioSpec::Accelerated(_) => vec![
                "negativity",
                "log_negativity",
                "nu_tilde_minus",
                "excitations_1",
                "excitations_2",
                "unstable",
            ],
            ScenarioSpec::SingleDetector { .. } => vec!["excitations", "closed_form", "unstable"],
            ScenarioSpec::UnruhResponse { .. } => vec!["N", "R", "max_relative_residual"],
        }
    }

    pub fn evaluate(&self) -> Result<Evaluation> {
        let pair = |r: ScenarioResult| Evaluation {
            values: vec![
                r.entanglement.negativity,
                r.entanglement.log_negativity,
                r.entanglement.nu_tilde_minus,
                r.excitations[0],
                r.excitations[1],
                flag(!r.stable),
            ],
            stable: r.stable,
        };
        Ok(match self {
            ScenarioSpec::Inertial(s) => pair(run_inertial(s)?),
            ScenarioSpec::Accelerated(s) => pair(run_accelerated(s)?),
            ScenarioSpec::SingleDetector { omega, lambda, t } => {
                let exact = detector_excitations(*omega, *lambda, *t, 0.0)?;
                Evaluation {
                    values: vec![
                        exact.excitations,
                        closed_form_excitations(*omega, *lambda, *t)?,
                        flag(!exact.stable),
                    ],
                    stable: exact.stable,
                }
            }
            ScenarioSpec::UnruhResponse { omega, lambda, t, r_samples } => {
                let u = unruh_response(*omega, *lambda, *t, r_samples)?;
                Evaluation {
                    values: vec![u.n, u.r_coeff, u.max_relative_residual],
                    stable: *lambda < *omega / 2.0,
                }
            }
        })
    }
}

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub values: Vec<f64>,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub param: Param,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(param: Param, from: f64, to: f64, steps: usize) -> Self {
        Axis {
            param,
            from,
            to,
            steps,
        }
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            self.to
        } else {
            self.from + (self.to - self.from) * i as f64 / (self.steps - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.value(i)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Number of grid points with an indefinite Hamiltonian segment.
    pub unstable_points: usize,
}

/// Evaluates `base` on the row-major grid spanned by `axes` (outer axis
/// first). Points run in parallel; row order does not depend on scheduling.
pub fn sweep(base: &ScenarioSpec, axes: &[Axis]) -> Result<SweepTable> {
    if axes.is_empty() || axes.len() > 2 {
        return Err(Error::config("sweep", "need one or two sweep axes"));
    }
    for (i, axis) in axes.iter().enumerate() {
        if axis.steps < 2 {
            return Err(Error::config("sweep.steps", "must be at least 2"));
        }
        if !(axis.from.is_finite() && axis.to.is_finite()) {
            return Err(Error::config("sweep.from", "axis bounds must be finite"));
        }
        if axes[..i].iter().any(|a| a.param == axis.param) {
            return Err(Error::config("sweep.param", format!("`{}` swept twice", axis.param.key())));
        }
        // reject unknown parameters before any evaluation
        for end in [axis.from, axis.to] {
            let mut probe = base.clone();
            probe.set(axis.param, end)?;
            probe.validate()?;
        }
    }
    base.validate()?;

    let inner = axes.get(1).map_or(1, |a| a.steps);
    let total = axes[0].steps * inner;
    let points: Vec<Vec<f64>> = (0..total)
        .map(|k| {
            let mut coords = vec![axes[0].value(k / inner)];
            if let Some(a) = axes.get(1) {
                coords.push(a.value(k % inner));
            }
            coords
        })
        .collect();
    let evaluated: Vec<Result<(Vec<f64>, bool)>> = points
        .par_iter()
        .map(|coords| {
            let mut spec = base.clone();
            for (axis, &v) in axes.iter().zip(coords) {
                spec.set(axis.param, v)?;
            }
            let eval = spec.evaluate()?;
            let mut row = coords.clone();
            row.extend(eval.values);
            Ok((row, eval.stable))
        })
        .collect();

    let mut rows = Vec::with_capacity(total);
    let mut unstable_points = 0;
    for r in evaluated {
        let (row, stable) = r?;
        unstable_points += usize::from(!stable);
        rows.push(row);
    }
    let columns = axes
        .iter()
        .map(|a| a.param.key().to_string())
        .chain(base.output_columns().into_iter().map(String::from))
        .collect();
    Ok(SweepTable {
        columns,
        rows,
        unstable_points,
    })
}
