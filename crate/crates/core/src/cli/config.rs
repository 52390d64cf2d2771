//! The TOML run configuration.
//!
//! ```toml
//! [model]
//! kind = "split_step"          # or "four_step"
//! garnish = false              # four-step only
//!
//! [grid.theta1]                # split-step: theta1, theta2
//! min = -3.0                   # four-step: theta_a, theta_b, theta_c
//! max = 3.0
//! count = 21
//! [grid.theta2]
//! value = 0.4                  # a fixed angle
//!
//! [crossover]                  # optional: right-hand bulk of a crossover
//! width = 0.0
//! right = { theta1 = 1.3, theta2 = 0.4 }
//!
//! [indices]
//! cut = 0
//! half_width = 60
//! auto_window = true
//! max_escalations = 3
//! decoupler = "gentle"         # or "reflection"
//! capture_fraction = 0.5
//!
//! [tolerances]
//! eig = 1e-8
//! gap = 1e-2
//! admissibility = 1e-10
//!
//! [verify]
//! seed = 0
//! cut_separation = 20
//! renewal_samples = 10
//!
//! [schur]
//! cells = [-1, 0]
//! z = [[0.3, 0.2], [-0.5, 0.1]]
//! tol = 1e-8
//! min_half_width = 20
//! max_half_width = 100
//!
//! [outputs]
//! phase_diagram = "phase_diagram.csv"
//! edge_report = "edge_states.json"
//! eigenfunctions = "eigenfunctions.csv"
//! verify_report = "verify.json"
//! schur_report = "schur_probe.json"
//! ```

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::indices::{IndexOptions, DEFAULT_HALF_WIDTH};
use crate::models::{AngleProfile, Decoupler, Walk};
use crate::spectral::DEFAULT_GAP_THRESHOLD;

/// The configuration used when `--config` is absent.
pub const DEFAULT_CONFIG: &str = include_str!("../../configs/default.toml");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelName {
    SplitStep,
    FourStep,
}

impl ModelName {
    pub fn angle_names(self) -> &'static [&'static str] {
        match self {
            ModelName::SplitStep => &["theta1", "theta2"],
            ModelName::FourStep => &["theta_a", "theta_b", "theta_c"],
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub kind: ModelName,
    #[serde(default)]
    pub garnish: bool,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub value: Option<f64>,
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub count: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossoverSection {
    #[serde(default)]
    pub width: f64,
    pub right: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IndicesSection {
    pub cut: i64,
    pub half_width: usize,
    pub auto_window: bool,
    pub max_escalations: usize,
    pub decoupler: Decoupler,
    pub capture_fraction: f64,
}

impl Default for IndicesSection {
    fn default() -> Self {
        let d = IndexOptions::default();
        Self {
            cut: 0,
            half_width: DEFAULT_HALF_WIDTH,
            auto_window: d.auto_window,
            max_escalations: d.max_escalations,
            decoupler: d.decoupler,
            capture_fraction: d.capture_fraction,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub eig: f64,
    /// Points whose bulk gap at `+1` or `-1` is at most this are treated as
    /// gap-closed.
    pub gap: f64,
    pub admissibility: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eig: 1e-8,
            gap: 1e-2,
            admissibility: 1e-10,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifySection {
    pub seed: u64,
    pub cut_separation: i64,
    pub renewal_samples: usize,
}

impl Default for VerifySection {
    fn default() -> Self {
        Self {
            seed: 0,
            cut_separation: 20,
            renewal_samples: 10,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SchurSection {
    pub cells: Vec<i64>,
    pub z: Vec<[f64; 2]>,
    pub tol: f64,
    pub min_half_width: usize,
    /// Larger windows are refused: the Schur algebra is dense.
    pub max_half_width: usize,
}

impl Default for SchurSection {
    fn default() -> Self {
        Self {
            cells: vec![-1, 0],
            z: vec![[0.0, 0.0], [0.3, 0.2], [-0.5, 0.1], [1.0, 0.0], [-1.0, 0.0]],
            tol: 1e-8,
            min_half_width: 20,
            max_half_width: 100,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Outputs {
    pub phase_diagram: String,
    pub edge_report: String,
    pub eigenfunctions: String,
    pub verify_report: String,
    pub schur_report: String,
}

impl Default for Outputs {
    fn default() -> Self {
        Self {
            phase_diagram: "phase_diagram.csv".into(),
            edge_report: "edge_states.json".into(),
            eigenfunctions: "eigenfunctions.csv".into(),
            verify_report: "verify.json".into(),
            schur_report: "schur_probe.json".into(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub model: ModelSection,
    pub grid: BTreeMap<String, Axis>,
    pub crossover: Option<CrossoverSection>,
    #[serde(default)]
    pub indices: IndicesSection,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub verify: VerifySection,
    #[serde(default)]
    pub schur: SchurSection,
    #[serde(default)]
    pub outputs: Outputs,
}

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

fn bad(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

fn check_angle(name: &str, a: f64) -> Result<(), ConfigError> {
    if !(a > -PI && a <= PI) {
        return Err(bad(format!("angle {name} = {a} outside (-pi, pi]")));
    }
    Ok(())
}

impl Axis {
    /// The sample values of this axis.
    pub fn values(&self, name: &str) -> Result<Vec<f64>, ConfigError> {
        let v = match (self.value, self.min, self.max, self.count) {
            (Some(v), None, None, None) => vec![v],
            (None, Some(lo), Some(hi), Some(n)) => {
                if n < 2 {
                    return Err(bad(format!("grid.{name}: count must be at least 2")));
                }
                if hi <= lo {
                    return Err(bad(format!("grid.{name}: max must exceed min")));
                }
                (0..n)
                    .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                    .collect()
            }
            _ => {
                return Err(bad(format!(
                    "grid.{name}: give either `value` or all of `min`, `max`, `count`"
                )))
            }
        };
        for &a in &v {
            check_angle(name, a)?;
        }
        Ok(v)
    }
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let cfg: SweepConfig = toml::from_str(text).map_err(|e| bad(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| bad(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        let names = self.model.kind.angle_names();
        for key in self.grid.keys() {
            if !names.contains(&key.as_str()) {
                return Err(bad(format!("unknown grid axis `{key}`")));
            }
        }
        for n in names {
            self.grid
                .get(*n)
                .ok_or_else(|| bad(format!("missing grid axis `{n}`")))?
                .values(n)?;
        }
        if self.model.garnish && self.model.kind != ModelName::FourStep {
            return Err(bad("garnish applies to the four-step model only"));
        }
        if let Some(c) = &self.crossover {
            for key in c.right.keys() {
                if !names.contains(&key.as_str()) {
                    return Err(bad(format!("unknown crossover angle `{key}`")));
                }
            }
            for n in names {
                let a = *c
                    .right
                    .get(*n)
                    .ok_or_else(|| bad(format!("missing crossover angle `{n}`")))?;
                check_angle(n, a)?;
            }
            if !(c.width >= 0.0) {
                return Err(bad("crossover width must be non-negative"));
            }
        }
        let ix = &self.indices;
        if ix.half_width < 4 {
            return Err(bad("indices.half_width must be at least 4"));
        }
        if !(ix.capture_fraction > 0.0 && ix.capture_fraction < 1.0) {
            return Err(bad("indices.capture_fraction must lie in (0, 1)"));
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("eig", t.eig),
            ("gap", t.gap),
            ("admissibility", t.admissibility),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(bad(format!("tolerances.{name} must lie in (0, 1)")));
            }
        }
        if self.verify.cut_separation < 1 {
            return Err(bad("verify.cut_separation must be positive"));
        }
        if self.schur.cells.is_empty() {
            return Err(bad("schur.cells must not be empty"));
        }
        if !(self.schur.tol > 0.0) {
            return Err(bad("schur.tol must be positive"));
        }
        for z in &self.schur.z {
            if z[0].hypot(z[1]) > 1.0 + 1e-12 {
                return Err(bad(format!("schur.z entry {z:?} outside the unit disc")));
            }
        }
        Ok(())
    }

    /// Grid points in row-major order, the first axis varying slowest.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let mut out = vec![Vec::new()];
        for n in self.model.kind.angle_names() {
            let vals = self.grid[*n].values(n).expect("validated");
            out = out
                .into_iter()
                .flat_map(|p| {
                    vals.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// The single point of a configuration without ranges.
    pub fn single_point(&self) -> Result<Vec<f64>, ConfigError> {
        let pts = self.points();
        if pts.len() != 1 {
            return Err(bad("this command needs fixed angles (`value`) on every axis"));
        }
        Ok(pts.into_iter().next().expect("one point"))
    }

    fn bulk(&self, angles: &[f64]) -> Walk {
        let k = |a: f64| AngleProfile::Constant(a);
        match self.model.kind {
            ModelName::SplitStep => Walk::split_step(k(angles[0]), k(angles[1])),
            ModelName::FourStep => {
                Walk::four_step(k(angles[0]), k(angles[1]), k(angles[2]), self.model.garnish)
            }
        }
    }

    /// The translation-invariant walk at a grid point.
    pub fn bulk_walk(&self, point: &[f64]) -> Walk {
        self.bulk(point)
    }

    /// The walk at a grid point: the bulk walk, or a crossover into the
    /// configured right-hand phase.
    pub fn walk(&self, point: &[f64]) -> Walk {
        let left = self.bulk(point);
        match &self.crossover {
            None => left,
            Some(c) => {
                let right: Vec<f64> = self
                    .model
                    .kind
                    .angle_names()
                    .iter()
                    .map(|n| c.right[*n])
                    .collect();
                Walk::crossover(&left, &self.bulk(&right), c.width)
                    .expect("both sides use the same model")
            }
        }
    }

    pub fn index_options(&self) -> IndexOptions {
        IndexOptions {
            half_width: self.indices.half_width,
            decoupler: self.indices.decoupler,
            max_escalations: self.indices.max_escalations,
            capture_fraction: self.indices.capture_fraction,
            gap_threshold: DEFAULT_GAP_THRESHOLD,
            auto_window: self.indices.auto_window,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_parses() {
        let cfg = SweepConfig::parse(DEFAULT_CONFIG).unwrap();
        assert!(!cfg.points().is_empty());
    }

    #[test]
    fn rejects_malformed_grids() {
        let base = "[model]\nkind = \"split_step\"\n[grid.theta2]\nvalue = 0.4\n";
        let one = format!("{base}[grid.theta1]\nmin = 0.1\nmax = 0.5\ncount = 1\n");
        assert!(SweepConfig::parse(&one).is_err());
        let far = format!("{base}[grid.theta1]\nvalue = 4.0\n");
        assert!(SweepConfig::parse(&far).is_err());
        let missing = base.to_string();
        assert!(SweepConfig::parse(&missing).is_err());
        let extra = format!("{base}[grid.theta1]\nvalue = 0.1\n[grid.theta_c]\nvalue = 0.1\n");
        assert!(SweepConfig::parse(&extra).is_err());
        let ok = format!("{base}[grid.theta1]\nmin = -1.0\nmax = 1.0\ncount = 3\n");
        let cfg = SweepConfig::parse(&ok).unwrap();
        assert_eq!(cfg.points(), vec![vec![-1.0, 0.4], vec![0.0, 0.4], vec![1.0, 0.4]]);
    }
}
