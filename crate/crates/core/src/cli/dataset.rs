//! CSV datasets with a `#` metadata header.
//!
//! Layout:
//!
//! ```text
//! # generator: vacent 0.1.0
//! # command: figure fig2a
//! # unstable_points: 0
//! # config a
//! #   scenario = "a"
//! #   ...
//! separation,negativity_a,...
//! 0.0000000000000000e0,...
//! ```
//!
//! Each `# config <label>` block is a complete configuration document that
//! reproduces the column group `<label>` when fed to `vacent sweep`.

use std::fmt::Write as _;

use crate::scenarios::SweepTable;

const CONFIG_MARK: &str = "# config ";
const CONFIG_LINE: &str = "#   ";

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub command: String,
    /// `(label, TOML document)` for every curve.
    pub configs: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub unstable_points: usize,
}

impl Dataset {
    pub fn from_table(command: String, label: &str, config: String, table: SweepTable) -> Self {
        Dataset {
            command,
            configs: vec![(label.to_string(), config)],
            columns: table.columns,
            rows: table.rows,
            unstable_points: table.unstable_points,
        }
    }

    /// Column index by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# generator: vacent {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(out, "# command: {}", self.command);
        let _ = writeln!(out, "# unstable_points: {}", self.unstable_points);
        for (label, doc) in &self.configs {
            let _ = writeln!(out, "{CONFIG_MARK}{label}");
            for line in doc.lines() {
                let _ = writeln!(out, "{CONFIG_LINE}{line}");
            }
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_float(*v)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// Seventeen significant digits, locale independent.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Recovers the embedded `(label, document)` configuration blocks.
pub fn embedded_configs(csv: &str) -> Vec<(String, String)> {
    let mut blocks: Vec<(String, String)> = Vec::new();
    for line in csv.lines().take_while(|l| l.starts_with('#')) {
        if let Some(label) = line.strip_prefix(CONFIG_MARK) {
            blocks.push((label.to_string(), String::new()));
        } else if let (Some(body), Some((_, doc))) = (line.strip_prefix(CONFIG_LINE), blocks.last_mut()) {
            doc.push_str(body);
            doc.push('\n');
        }
    }
    blocks
}
