//! Figure presets: fixed parameter sets whose datasets correspond to the
//! published entanglement plots.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::cli::config::{render_config, RunConfig};
use crate::cli::dataset::Dataset;
use crate::error::{Error, Result};
use crate::scenarios::{
    sweep, AcceleratedSpec, Axis, InertialScenario, InertialSpec, Param, ScenarioSpec, Separation,
};

pub const DEFAULT_LINE_STEPS: usize = 200;
pub const DEFAULT_HEATMAP_STEPS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig2a,
    Fig2b,
    Fig2c,
    Fig2d,
    Fig3a,
    Fig3b,
}

impl FigureId {
    pub const ALL: [FigureId; 6] = [
        FigureId::Fig2a,
        FigureId::Fig2b,
        FigureId::Fig2c,
        FigureId::Fig2d,
        FigureId::Fig3a,
        FigureId::Fig3b,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig2a => "fig2a",
            FigureId::Fig2b => "fig2b",
            FigureId::Fig2c => "fig2c",
            FigureId::Fig2d => "fig2d",
            FigureId::Fig3a => "fig3a",
            FigureId::Fig3b => "fig3b",
        }
    }

    fn is_heatmap(self) -> bool {
        matches!(self, FigureId::Fig2d | FigureId::Fig3a | FigureId::Fig3b)
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                Error::config(
                    "figure",
                    format!("unknown figure `{s}` (expected fig2a, fig2b, fig2c, fig2d, fig3a or fig3b)"),
                )
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureOptions {
    /// Points per axis; `None` picks the preset default.
    pub steps: Option<usize>,
    pub outer_positions: bool,
    /// Parameter overrides applied to every curve before sweeping.
    pub overrides: Vec<(Param, f64)>,
}

impl Default for FigureOptions {
    fn default() -> Self {
        FigureOptions {
            steps: None,
            outer_positions: false,
            overrides: Vec::new(),
        }
    }
}

/// One labelled curve (or heatmap) of a figure.
struct Curve {
    label: String,
    config: RunConfig,
}

fn curves(id: FigureId, steps: usize) -> Vec<Curve> {
    let inertial = |s, omega, lambda| InertialSpec::new(s, omega, lambda, 1.0);
    let curve = |label: &str, spec: ScenarioSpec, sweeps: Vec<Axis>| Curve {
        label: label.to_string(),
        config: RunConfig {
            spec,
            sweeps,
            out: None,
        },
    };
    match id {
        FigureId::Fig2a | FigureId::Fig2b => {
            let (omega, lambda) = if id == FigureId::Fig2a { (4.6, 1.5) } else { (2.0, 4.8) };
            let axis = Axis::new(Param::Separation, 0.0, 2.0 * 2.0 * PI / omega, steps);
            [InertialScenario::A, InertialScenario::B, InertialScenario::C]
                .into_iter()
                .map(|s| {
                    curve(
                        s.name(),
                        ScenarioSpec::Inertial(inertial(s, omega, lambda)),
                        vec![axis.clone()],
                    )
                })
                .collect()
        }
        FigureId::Fig2c => {
            // common axis: two periods of the slowest curve
            let axis = Axis::new(Param::Gap, 0.0, 2.0 * 2.0 * PI / 2.3, steps);
            [(2.3, 1.2), (4.6, 1.9), (4.6, 1.4)]
                .into_iter()
                .map(|(omega, lambda)| {
                    curve(
                        &format!("w{omega}_l{lambda}"),
                        ScenarioSpec::Inertial(inertial(InertialScenario::D, omega, lambda)),
                        vec![axis.clone()],
                    )
                })
                .collect()
        }
        FigureId::Fig2d => {
            let mut spec = inertial(InertialScenario::A, 1.0, 0.0);
            spec.separation = Separation::Wavelengths(0.25);
            vec![curve("a", ScenarioSpec::Inertial(spec), heatmap_axes(steps))]
        }
        FigureId::Fig3a | FigureId::Fig3b => {
            let delay = if id == FigureId::Fig3a { 0.0 } else { 4.0 };
            let spec = AcceleratedSpec::new(1.0, 0.0, 1.0, 1.0).with_delay(delay);
            vec![curve("accelerated", ScenarioSpec::Accelerated(spec), heatmap_axes(steps))]
        }
    }
}

fn heatmap_axes(steps: usize) -> Vec<Axis> {
    vec![
        Axis::new(Param::Omega, 1.0, 6.0, steps),
        Axis::new(Param::Lambda, 0.0, 3.0, steps),
    ]
}

/// Computes the dataset of a figure preset.
pub fn figure_dataset(id: FigureId, options: &FigureOptions, command: String) -> Result<Dataset> {
    let steps = options.steps.unwrap_or(if id.is_heatmap() {
        DEFAULT_HEATMAP_STEPS
    } else {
        DEFAULT_LINE_STEPS
    });
    if steps < 2 {
        return Err(Error::config("steps", "must be at least 2"));
    }
    let mut curves = curves(id, steps);
    for c in &mut curves {
        if options.outer_positions {
            match &mut c.config.spec {
                ScenarioSpec::Inertial(s) => s.outer_positions = true,
                _ => {
                    return Err(Error::config(
                        "paper-positions",
                        format!("{id} has no detector separation"),
                    ))
                }
            }
        }
        for &(param, value) in &options.overrides {
            if c.config.sweeps.iter().any(|a| a.param == param) {
                return Err(Error::config(param.key(), format!("is a swept axis of {id}")));
            }
            c.config.spec.set(param, value)?;
        }
        c.config.spec.validate()?;
    }

    let mut tables = Vec::with_capacity(curves.len());
    for c in &curves {
        tables.push(sweep(&c.config.spec, &c.config.sweeps)?);
    }
    let configs = curves
        .iter()
        .map(|c| (c.label.clone(), render_config(&c.config)))
        .collect();
    let unstable_points = tables.iter().map(|t| t.unstable_points).sum();

    if tables.len() == 1 {
        let table = tables.pop().expect("one table");
        return Ok(Dataset {
            command,
            configs,
            columns: table.columns,
            rows: table.rows,
            unstable_points,
        });
    }

    // Curves share the abscissa; regroup as `<quantity>_<label>`.
    let n_axes = curves[0].config.sweeps.len();
    let outputs = curves[0].config.spec.output_columns();
    let mut columns: Vec<String> = tables[0].columns[..n_axes].to_vec();
    for q in &outputs {
        for c in &curves {
            columns.push(format!("{q}_{}", c.label));
        }
    }
    let rows = (0..tables[0].rows.len())
        .map(|i| {
            let mut row = tables[0].rows[i][..n_axes].to_vec();
            for k in 0..outputs.len() {
                for t in &tables {
                    row.push(t.rows[i][n_axes + k]);
                }
            }
            row
        })
        .collect();
    Ok(Dataset {
        command,
        configs,
        columns,
        rows,
        unstable_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(steps: usize) -> FigureOptions {
        FigureOptions {
            steps: Some(steps),
            ..FigureOptions::default()
        }
    }

    #[test]
    fn fig2a_columns() {
        let ds = figure_dataset(FigureId::Fig2a, &opts(3), "figure fig2a".into()).unwrap();
        assert_eq!(
            &ds.columns[..7],
            ["separation", "negativity_a", "negativity_b", "negativity_c", "log_negativity_a", "log_negativity_b", "log_negativity_c"]
        );
        assert_eq!(ds.rows.len(), 3);
        assert_eq!(ds.configs.len(), 3);
        assert!((ds.rows[2][0] - 4.0 * PI / 4.6).abs() < 1e-15);
    }

    #[test]
    fn fig2b_is_flagged_unstable() {
        let ds = figure_dataset(FigureId::Fig2b, &opts(2), String::new()).unwrap();
        assert_eq!(ds.unstable_points, 6);
        let col = ds.column("unstable_a").unwrap();
        assert!(ds.rows.iter().all(|r| r[col] == 1.0));
    }

    #[test]
    fn fig3a_without_squeezing_is_separable() {
        let o = FigureOptions {
            steps: Some(3),
            overrides: vec![(Param::R, 0.0)],
            ..FigureOptions::default()
        };
        let ds = figure_dataset(FigureId::Fig3a, &o, String::new()).unwrap();
        let col = ds.column("negativity").unwrap();
        assert!(ds.rows.iter().all(|r| r[col] < 1e-12));
    }

    #[test]
    fn swept_override_is_rejected() {
        let o = FigureOptions {
            steps: Some(3),
            overrides: vec![(Param::Omega, 2.0)],
            ..FigureOptions::default()
        };
        assert!(matches!(
            figure_dataset(FigureId::Fig2d, &o, String::new()),
            Err(Error::Config { key, .. }) if key == "omega"
        ));
        assert!(matches!("fig9".parse::<FigureId>(), Err(Error::Config { .. })));
    }
}
