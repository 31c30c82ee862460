//! Self-checks of the Gaussian engine: structural invariants, and at the
//! `full` level agreement with the Fock-space oracle.

use std::fmt;
use std::str::FromStr;

use crate::entanglement::negativity;
use crate::error::{Error, Result};
use crate::fock::{certified_run, FockInitial};
use crate::matrix::Mat;
use crate::scenarios::{
    schedule_for, schedule_transform_with, AcceleratedSpec, InertialScenario, InertialSpec,
    SwitchingSchedule,
};
use crate::symplectic::{
    apply, build_hamiltonian, compose, evolve_segment, partial_trace, two_mode_squeeze,
    GaussianState, QuadraticHamiltonian, SymplecticTransform, SystemLayout,
};

/// Segment propagator under test.
pub type Evolver<'a> = &'a dyn Fn(&QuadraticHamiltonian, f64) -> Result<SymplecticTransform<f64>>;

pub const STRUCTURE_TOLERANCE: f64 = 1e-10;
pub const COVARIANCE_TOLERANCE: f64 = 1e-6;
pub const NEGATIVITY_TOLERANCE: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            _ => Err(Error::config("level", format!("expected quick or full, got `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    /// Measured defect against its tolerance.
    Measured { defect: f64, tolerance: f64 },
    Failed(String),
    Skipped,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
}

impl Check {
    pub fn passed(&self) -> bool {
        match self.outcome {
            Outcome::Measured { defect, tolerance } => defect <= tolerance,
            _ => false,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Measured { defect, tolerance } => write!(
                f,
                "{} {}: defect {defect:.3e} (tolerance {tolerance:.0e})",
                if self.passed() { "PASS" } else { "FAIL" },
                self.name
            ),
            Outcome::Failed(msg) => write!(f, "FAIL {}: {msg}", self.name),
            Outcome::Skipped => write!(f, "SKIP {}: an earlier check failed", self.name),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks
            .iter()
            .find(|c| !c.passed() && c.outcome != Outcome::Skipped)
    }

    pub fn exit_code(&self) -> i32 {
        if self.first_failure().is_some() {
            3
        } else {
            0
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        match self.first_failure() {
            Some(c) => writeln!(f, "verification failed: {}", c.name),
            None => writeln!(f, "verification passed"),
        }
    }
}

fn measured(name: &str, tolerance: f64, defect: Result<f64>) -> Check {
    Check {
        name: name.to_string(),
        outcome: match defect {
            Ok(d) if d.is_nan() => Outcome::Failed("defect is NaN".into()),
            Ok(defect) => Outcome::Measured { defect, tolerance },
            Err(e) => Outcome::Failed(e.to_string()),
        },
    }
}

/// Runs the suite with the library's own segment propagator.
pub fn verify(level: Level) -> Report {
    verify_with(level, &|h, d| evolve_segment::<f64>(h, d))
}

pub fn verify_with(level: Level, evolve: Evolver<'_>) -> Report {
    let mut checks = vec![
        measured("heisenberg_direction", STRUCTURE_TOLERANCE, heisenberg_direction(evolve)),
        measured("symplecticity", STRUCTURE_TOLERANCE, symplecticity(evolve)),
        measured("purity", STRUCTURE_TOLERANCE, purity(evolve)),
        measured("vacuum_invariance", STRUCTURE_TOLERANCE, vacuum_invariance(evolve)),
        measured("segment_splitting", STRUCTURE_TOLERANCE, segment_splitting(evolve)),
    ];
    if level == Level::Full {
        let healthy = checks.iter().all(Check::passed);
        for point in oracle_points() {
            let mut cov = Check {
                name: format!("oracle_covariance[{}]", point.label),
                outcome: Outcome::Skipped,
            };
            let mut neg = Check {
                name: format!("oracle_negativity[{}]", point.label),
                outcome: Outcome::Skipped,
            };
            if healthy {
                match oracle_defects(&point, evolve) {
                    Ok((dc, dn)) => {
                        cov = measured(&cov.name, COVARIANCE_TOLERANCE, Ok(dc));
                        neg = measured(&neg.name, NEGATIVITY_TOLERANCE, Ok(dn));
                    }
                    Err(e) => {
                        cov.outcome = Outcome::Failed(e.to_string());
                        neg.outcome = Outcome::Skipped;
                    }
                }
            }
            checks.push(cov);
            checks.push(neg);
        }
    }
    Report { checks }
}

fn layout(lambda: f64, x: f64) -> Result<SystemLayout> {
    SystemLayout::new(
        vec![1.7, 1.3],
        vec![1.5],
        vec![-x / 2.0, x / 2.0],
        vec![vec![lambda], vec![lambda]],
    )
}

/// A free oscillator must obey `q(τ) = q cos ωτ + p sin ωτ`.
fn heisenberg_direction(evolve: Evolver<'_>) -> Result<f64> {
    let l = layout(0.3, 0.4)?;
    let h = build_hamiltonian(&l, &[])?;
    let tau = 0.7;
    let s = evolve(&h, tau)?;
    let m = s.matrix();
    let mut defect: f64 = 0.0;
    for (mode, w) in l.mode_freqs().into_iter().enumerate() {
        let (c, sn) = ((w * tau).cos(), (w * tau).sin());
        let (q, p) = (2 * mode, 2 * mode + 1);
        for (i, j, want) in [(q, q, c), (q, p, sn), (p, q, -sn), (p, p, c)] {
            defect = defect.max((m[(i, j)] - want).abs());
        }
    }
    Ok(defect)
}

fn coupled(evolve: Evolver<'_>) -> Result<SymplecticTransform<f64>> {
    let l = layout(0.45, 0.9)?;
    let schedule = schedule_for(&InertialSpec::new(InertialScenario::B, 1.5, 0.45, 1.3))?;
    schedule_transform_with(&l, &schedule, evolve).map(|(s, _)| s)
}

fn symplecticity(evolve: Evolver<'_>) -> Result<f64> {
    Ok(coupled(evolve)?.symplectic_defect())
}

fn purity(evolve: Evolver<'_>) -> Result<f64> {
    let s = coupled(evolve)?;
    let state = apply(&s, &GaussianState::vacuum(layout(0.0, 0.0)?.mode_labels()))?;
    Ok((state.covariance().det() - 1.0).abs())
}

fn vacuum_invariance(evolve: Evolver<'_>) -> Result<f64> {
    let l = layout(0.0, 0.0)?;
    let h = build_hamiltonian(&l, &[])?;
    let vacuum = GaussianState::vacuum(l.mode_labels());
    let state = apply(&evolve(&h, 2.9)?, &vacuum)?;
    Ok(state.covariance().sub(vacuum.covariance()).max_abs())
}

fn segment_splitting(evolve: Evolver<'_>) -> Result<f64> {
    let l = layout(0.6, 1.1)?;
    let h = build_hamiltonian(&l, &[0, 1])?;
    let whole = evolve(&h, 1.4)?;
    let split = compose(&evolve(&h, 0.9)?, &evolve(&h, 0.5)?)?;
    let scale = whole.matrix().max_abs().max(1.0);
    Ok(whole.matrix().sub(split.matrix()).max_abs() / scale)
}

struct OraclePoint {
    label: String,
    layout: SystemLayout,
    schedule: SwitchingSchedule,
    /// Two-mode squeezing `(r, a, b)` of the initial vacuum.
    squeeze: Option<(f64, usize, usize)>,
    base_cutoff: usize,
}

fn oracle_points() -> Vec<OraclePoint> {
    let mut points: Vec<OraclePoint> = [
        (InertialScenario::A, 0.8, 0.0),
        (InertialScenario::B, 1.3, 0.0),
        (InertialScenario::C, 0.6, 0.0),
        (InertialScenario::D, 0.0, 0.5),
    ]
    .into_iter()
    .map(|(s, x, gap)| {
        let spec = InertialSpec::new(s, 2.0, 0.2, 1.0).with_separation(x).with_gap(gap);
        OraclePoint {
            label: format!("{s} x={x} T={gap}"),
            layout: spec.layout().expect("valid preset"),
            schedule: schedule_for(&spec).expect("valid preset"),
            squeeze: None,
            base_cutoff: 15,
        }
    })
    .collect();
    let acc = AcceleratedSpec::new(2.0, 0.4, 1.0, 0.45);
    points.push(OraclePoint {
        label: "accelerated r=0.45".into(),
        layout: acc.layout().expect("valid preset"),
        schedule: acc.schedule().expect("valid preset"),
        squeeze: Some((0.45, 2, 3)),
        base_cutoff: 16,
    });
    points
}

/// Largest covariance and negativity differences between the Gaussian
/// engine (through `evolve`) and a certified Fock run.
fn oracle_defects(point: &OraclePoint, evolve: Evolver<'_>) -> Result<(f64, f64)> {
    let n = point.layout.n_modes();
    let (dynamics, _) = schedule_transform_with(&point.layout, &point.schedule, evolve)?;
    let total = match point.squeeze {
        Some((r, a, b)) => compose(&dynamics, &two_mode_squeeze(r, a, b, n)?)?,
        None => dynamics,
    };
    let state = apply(&total, &GaussianState::vacuum(point.layout.mode_labels()))?;
    let pair = partial_trace(&state, &[0, 1])?;
    let gaussian_neg = negativity(pair.covariance())?.negativity;

    let initial = match point.squeeze {
        Some((r, a, b)) => FockInitial::Tmsv { r, modes: (a, b) },
        None => FockInitial::Vacuum,
    };
    let fock = certified_run(
        &point.layout,
        &point.schedule,
        initial,
        (0, 1),
        point.base_cutoff,
        COVARIANCE_TOLERANCE,
        NEGATIVITY_TOLERANCE,
    )?;
    let cov: &Mat<f64> = state.covariance();
    Ok((
        cov.sub(&fock.covariance).max_abs(),
        (gaussian_neg - fock.negativity).abs(),
    ))
}
