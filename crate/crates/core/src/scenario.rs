//! Deployment scenarios: file schema and validation, terminal generation,
//! single-shot evaluation and seeded Monte-Carlo aggregation.
//!
//! Monte-Carlo run `i` draws from `rng_from_seed(mix_seed(seed, i))`, so a
//! summary depends only on (scenario, runs, seed). Terminal positions stay
//! fixed across runs; only the channel draws vary.

use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{
    rsrp_dbm, sample_path_loss_db, EnvironmentParams, PropagationGroup, RadioConfig,
};
use crate::energy::{GroundTerminal, Network, Platform, TrafficModel, DEFAULT_TERRESTRIAL_ALPHA};
use crate::error::{Error, Result, Violation};
use crate::format::sig6;
use crate::geometry::{elevation_angle_deg, PlanarPoint};
use crate::rng::{mix_seed, rng_from_seed};

pub const REPORT_HEADER: [&str; 7] = [
    "id",
    "ground_range_m",
    "elevation_deg",
    "sampled_pl_db",
    "group",
    "rsrp_dbm",
    "covered",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub center: PlanarPoint,
    pub radius_m: f64,
}

impl Region {
    pub fn contains(&self, p: &PlanarPoint) -> bool {
        p.distance_to(&self.center) <= self.radius_m * (1.0 + 1e-9)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeploymentScenario {
    pub platform: Platform,
    pub radio: RadioConfig,
    pub env: EnvironmentParams,
    pub terminals: Vec<GroundTerminal>,
    pub traffic: TrafficModel,
    pub terrestrial_alpha: f64,
    pub region: Region,
}

impl DeploymentScenario {
    pub fn network(&self) -> Network<'_> {
        Network {
            platform: self.platform,
            radio: &self.radio,
            env: &self.env,
            terrestrial_alpha: self.terrestrial_alpha,
        }
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        if !self.platform.position.is_finite() {
            v.push(Violation::new("lap", "x and y must be finite"));
        }
        if !(self.platform.altitude_m > 0.0 && self.platform.altitude_m.is_finite()) {
            v.push(Violation::new("lap.altitude_m", "must be positive"));
        }
        v.extend(self.radio.violations("radio"));
        v.extend(self.env.violations("env"));
        if !self.region.center.is_finite() {
            v.push(Violation::new("region", "cx and cy must be finite"));
        }
        if !(self.region.radius_m > 0.0 && self.region.radius_m.is_finite()) {
            v.push(Violation::new("region.radius_m", "must be positive"));
        }
        let mut seen = std::collections::HashSet::new();
        for (i, t) in self.terminals.iter().enumerate() {
            if t.id.is_empty() {
                v.push(Violation::new(
                    format!("terminals.{i}.id"),
                    "must not be empty",
                ));
            } else if !seen.insert(t.id.as_str()) {
                v.push(Violation::new(
                    format!("terminals.{i}.id"),
                    format!("duplicate id {:?}", t.id),
                ));
            }
            if !t.position.is_finite() {
                v.push(Violation::new(
                    format!("terminals.{i}"),
                    "x and y must be finite",
                ));
            } else if self.region.radius_m > 0.0 && !self.region.contains(&t.position) {
                v.push(Violation::new(
                    format!("terminals.{i}"),
                    "lies outside region",
                ));
            }
        }
        if !(self.traffic.payload_bits > 0.0 && self.traffic.payload_bits.is_finite()) {
            v.push(Violation::new("traffic.payload_bits", "must be positive"));
        }
        if !(self.traffic.bitrate_bps > 0.0 && self.traffic.bitrate_bps.is_finite()) {
            v.push(Violation::new("traffic.bitrate_bps", "must be positive"));
        }
        if !(self.terrestrial_alpha >= 2.0 && self.terrestrial_alpha.is_finite()) {
            v.push(Violation::new("terrestrial_alpha", "must be at least 2"));
        }
        v
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(v))
        }
    }
}

// ---------------------------------------------------------------------------
// Scenario file schema
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LapSpec {
    #[serde(default)]
    pub x: f64,
    #[serde(default)]
    pub y: f64,
    pub altitude_m: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionSpec {
    #[serde(default)]
    pub cx: f64,
    #[serde(default)]
    pub cy: f64,
    pub radius_m: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TerminalSpec {
    pub id: String,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TerminalsSpec {
    Explicit(Vec<TerminalSpec>),
    Generated { count: usize, seed: u64 },
}

/// Environment given inline or as a preset name / file path.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EnvSpec {
    Named(String),
    Inline(EnvironmentParams),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadioSpec {
    #[serde(default = "default_freq")]
    pub carrier_freq_hz: f64,
    #[serde(default = "default_tx")]
    pub tx_power_dbm: f64,
    #[serde(default)]
    pub tx_gain_dbi: f64,
    #[serde(default)]
    pub rx_gain_dbi: f64,
    #[serde(default = "default_re")]
    pub num_resource_elements: i64,
    #[serde(default = "default_sens")]
    pub rx_sensitivity_dbm: f64,
    #[serde(default = "default_tx")]
    pub max_tx_power_dbm: f64,
    pub max_path_loss_db: f64,
}

fn default_freq() -> f64 {
    RadioConfig::default().carrier_freq_hz
}
fn default_tx() -> f64 {
    RadioConfig::default().tx_power_dbm
}
fn default_re() -> i64 {
    i64::from(RadioConfig::default().num_resource_elements)
}
fn default_sens() -> f64 {
    RadioConfig::default().rx_sensitivity_dbm
}
fn default_alpha() -> f64 {
    DEFAULT_TERRESTRIAL_ALPHA
}

/// On-disk scenario JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub lap: LapSpec,
    pub radio: RadioSpec,
    pub env: EnvSpec,
    pub region: RegionSpec,
    pub terminals: TerminalsSpec,
    pub traffic: TrafficModel,
    #[serde(default = "default_alpha")]
    pub terrestrial_alpha: f64,
}

impl ScenarioFile {
    pub fn from_json_str(src: &str) -> Result<Self> {
        serde_json::from_str(src)
            .map_err(|e| Error::Validation(vec![Violation::new("(document)", e.to_string())]))
    }

    /// Builds and validates a scenario. Named environments resolve against
    /// `base_dir` first, then the shipped presets. All violations are
    /// reported together.
    pub fn into_scenario(self, base_dir: Option<&Path>) -> Result<DeploymentScenario> {
        let mut violations = Vec::new();

        let num_re = match u32::try_from(self.radio.num_resource_elements) {
            Ok(n) => n,
            Err(_) => {
                violations.push(Violation::new(
                    "radio.num_resource_elements",
                    "must be at least 1",
                ));
                1
            }
        };
        let radio = RadioConfig {
            carrier_freq_hz: self.radio.carrier_freq_hz,
            tx_power_dbm: self.radio.tx_power_dbm,
            tx_gain_dbi: self.radio.tx_gain_dbi,
            rx_gain_dbi: self.radio.rx_gain_dbi,
            num_resource_elements: num_re,
            rx_sensitivity_dbm: self.radio.rx_sensitivity_dbm,
            max_tx_power_dbm: self.radio.max_tx_power_dbm,
            max_path_loss_db: self.radio.max_path_loss_db,
        };

        let env = match self.env {
            EnvSpec::Inline(e) => e,
            EnvSpec::Named(name) => {
                let local = base_dir.map(|d| d.join(&name));
                match local.filter(|p| p.is_file()) {
                    Some(p) => EnvironmentParams::from_file(&p)?,
                    None => EnvironmentParams::resolve(&name)?,
                }
            }
        };

        let region = Region {
            center: PlanarPoint::new(self.region.cx, self.region.cy),
            radius_m: self.region.radius_m,
        };
        let terminals = match self.terminals {
            TerminalsSpec::Explicit(list) => list
                .into_iter()
                .map(|t| GroundTerminal::new(t.id, t.x, t.y))
                .collect(),
            TerminalsSpec::Generated { count, seed } => {
                if region.radius_m > 0.0 && region.center.is_finite() {
                    generate_terminals(count, &region, seed)
                } else {
                    Vec::new()
                }
            }
        };

        let scenario = DeploymentScenario {
            platform: Platform {
                position: PlanarPoint::new(self.lap.x, self.lap.y),
                altitude_m: self.lap.altitude_m,
            },
            radio,
            env,
            terminals,
            traffic: self.traffic,
            terrestrial_alpha: self.terrestrial_alpha,
            region,
        };
        violations.extend(scenario.violations());
        if violations.is_empty() {
            Ok(scenario)
        } else {
            Err(Error::Validation(violations))
        }
    }
}

/// Reads, parses and validates a scenario file.
pub fn load_scenario(path: &Path) -> Result<DeploymentScenario> {
    let src = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    ScenarioFile::from_json_str(&src)?.into_scenario(path.parent())
}

// ---------------------------------------------------------------------------
// Generation and evaluation
// ---------------------------------------------------------------------------

/// `n` terminals uniform on the region disc: radius `R·√u`, angle `2π·v`.
/// Ids are `t00000`, `t00001`, ...
pub fn generate_terminals(n: usize, region: &Region, seed: u64) -> Vec<GroundTerminal> {
    let mut rng = rng_from_seed(seed);
    (0..n)
        .map(|i| {
            let u: f64 = rng.random();
            let v: f64 = rng.random();
            let r = region.radius_m * u.sqrt();
            let a = 2.0 * PI * v;
            GroundTerminal::new(
                format!("t{i:05}"),
                region.center.x_m + r * a.cos(),
                region.center.y_m + r * a.sin(),
            )
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TerminalRow {
    pub id: String,
    pub ground_range_m: f64,
    pub elevation_deg: f64,
    pub sampled_pl_db: f64,
    pub group: PropagationGroup,
    pub rsrp_dbm: f64,
    pub covered: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub rows: Vec<TerminalRow>,
    pub terminal_count: usize,
    pub covered_count: usize,
    /// 1.0 when there are no terminals; see `zero_terminals`.
    pub coverage_fraction: f64,
    pub zero_terminals: bool,
    pub mean_rsrp_dbm: Option<f64>,
    pub direct_energy_j: f64,
    pub outage_count: usize,
}

impl EvaluationReport {
    /// Writes the per-terminal rows as CSV.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{}", REPORT_HEADER.join(","))?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                r.id,
                sig6(r.ground_range_m),
                sig6(r.elevation_deg),
                sig6(r.sampled_pl_db),
                r.group.as_str(),
                sig6(r.rsrp_dbm),
                r.covered
            )?;
        }
        Ok(())
    }
}

fn sample_rows(scenario: &DeploymentScenario, seed: u64) -> Result<Vec<TerminalRow>> {
    let mut rng = rng_from_seed(seed);
    let h = scenario.platform.altitude_m;
    scenario
        .terminals
        .iter()
        .map(|t| {
            let r = t.position.distance_to(&scenario.platform.position);
            let (pl, group) = sample_path_loss_db(h, r, &scenario.radio, &scenario.env, &mut rng)?;
            Ok(TerminalRow {
                id: t.id.clone(),
                ground_range_m: r,
                elevation_deg: elevation_angle_deg(h, r)?,
                sampled_pl_db: pl,
                group,
                rsrp_dbm: rsrp_dbm(&scenario.radio, pl),
                covered: pl <= scenario.radio.max_path_loss_db,
            })
        })
        .collect()
}

fn coverage_of(rows: &[TerminalRow]) -> (usize, f64) {
    let covered = rows.iter().filter(|r| r.covered).count();
    let frac = if rows.is_empty() {
        1.0
    } else {
        covered as f64 / rows.len() as f64
    };
    (covered, frac)
}

fn mean_rsrp(rows: &[TerminalRow]) -> Option<f64> {
    if rows.is_empty() {
        None
    } else {
        Some(rows.iter().map(|r| r.rsrp_dbm).sum::<f64>() / rows.len() as f64)
    }
}

/// One stochastic evaluation: each terminal draws a shadowed loss and is
/// covered when it stays within `max_path_loss_db`.
pub fn evaluate_deployment(scenario: &DeploymentScenario, seed: u64) -> Result<EvaluationReport> {
    scenario.validate()?;
    let rows = sample_rows(scenario, seed)?;
    let (covered_count, coverage_fraction) = coverage_of(&rows);
    let direct = scenario
        .network()
        .direct_energy_j(&scenario.terminals, &scenario.traffic)?;
    Ok(EvaluationReport {
        terminal_count: rows.len(),
        covered_count,
        coverage_fraction,
        zero_terminals: rows.is_empty(),
        mean_rsrp_dbm: mean_rsrp(&rows),
        direct_energy_j: direct.energy_j,
        outage_count: direct.outage_ids.len(),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Sequential,
    Parallel,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloSummary {
    pub runs: usize,
    pub coverage_mean: f64,
    /// Sample standard deviation (n − 1); zero for a single run.
    pub coverage_std: f64,
    pub coverage_ci95: f64,
    pub rsrp_mean_dbm: Option<f64>,
    pub seed: u64,
}

pub fn run_monte_carlo(
    scenario: &DeploymentScenario,
    runs: usize,
    seed: u64,
) -> Result<MonteCarloSummary> {
    run_monte_carlo_with(scenario, runs, seed, Execution::Sequential)
}

/// Monte-Carlo aggregation. Both execution modes reduce the per-run results
/// in run order and give bit-identical summaries.
pub fn run_monte_carlo_with(
    scenario: &DeploymentScenario,
    runs: usize,
    seed: u64,
    execution: Execution,
) -> Result<MonteCarloSummary> {
    if runs == 0 {
        return Err(Error::domain("runs must be at least 1"));
    }
    scenario.validate()?;
    let one = |i: usize| -> Result<(f64, Option<f64>)> {
        let rows = sample_rows(scenario, mix_seed(seed, i as u64))?;
        Ok((coverage_of(&rows).1, mean_rsrp(&rows)))
    };
    let per_run: Vec<(f64, Option<f64>)> = match execution {
        Execution::Sequential => (0..runs).map(one).collect::<Result<_>>()?,
        Execution::Parallel => (0..runs).into_par_iter().map(one).collect::<Result<_>>()?,
    };

    let n = runs as f64;
    let coverage_mean = per_run.iter().map(|r| r.0).sum::<f64>() / n;
    let coverage_std = if runs > 1 {
        let ss: f64 = per_run.iter().map(|r| (r.0 - coverage_mean).powi(2)).sum();
        (ss / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    let rsrp_mean_dbm = if scenario.terminals.is_empty() {
        None
    } else {
        Some(per_run.iter().filter_map(|r| r.1).sum::<f64>() / n)
    };
    Ok(MonteCarloSummary {
        runs,
        coverage_mean,
        coverage_std,
        coverage_ci95: 1.96 * coverage_std / n.sqrt(),
        rsrp_mean_dbm,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::mean_path_loss_db;
    use crate::energy::Aggregation;

    /// Zero variance and equal group means: sampled loss is deterministic.
    fn flat_env() -> EnvironmentParams {
        EnvironmentParams {
            name: "flat".into(),
            sig_a: 4.88,
            sig_b: 0.43,
            eta_los_mean_db: 10.0,
            eta_nlos_mean_db: 10.0,
            eta_los_std_db: 0.0,
            eta_nlos_std_db: 0.0,
        }
    }

    fn scenario(
        terminals: Vec<GroundTerminal>,
        env: EnvironmentParams,
        plmax: f64,
    ) -> DeploymentScenario {
        DeploymentScenario {
            platform: Platform {
                position: PlanarPoint::new(0.0, 0.0),
                altitude_m: 100.0,
            },
            radio: RadioConfig {
                max_path_loss_db: plmax,
                ..RadioConfig::default()
            },
            env,
            terminals,
            traffic: TrafficModel {
                payload_bits: 1000.0,
                bitrate_bps: 1e6,
                aggregation: Aggregation::Perfect,
            },
            terrestrial_alpha: 3.5,
            region: Region {
                center: PlanarPoint::new(0.0, 0.0),
                radius_m: 5000.0,
            },
        }
    }

    fn ring(prefix: &str, n: usize, radius: f64) -> Vec<GroundTerminal> {
        (0..n)
            .map(|i| {
                let a = 2.0 * PI * i as f64 / n as f64;
                GroundTerminal::new(format!("{prefix}{i}"), radius * a.cos(), radius * a.sin())
            })
            .collect()
    }

    #[test]
    fn generation_basics() {
        let region = Region {
            center: PlanarPoint::new(10.0, -5.0),
            radius_m: 1000.0,
        };
        assert!(generate_terminals(0, &region, 1).is_empty());
        let a = generate_terminals(50, &region, 7);
        assert_eq!(a, generate_terminals(50, &region, 7));
        assert_ne!(a, generate_terminals(50, &region, 8));
        assert!(a.iter().all(|t| region.contains(&t.position)));
    }

    #[test]
    fn generated_mean_radius() {
        let region = Region {
            center: PlanarPoint::new(0.0, 0.0),
            radius_m: 900.0,
        };
        let ts = generate_terminals(100_000, &region, 2024);
        let mean = ts
            .iter()
            .map(|t| t.position.distance_to(&region.center))
            .sum::<f64>()
            / ts.len() as f64;
        assert!((mean - 600.0).abs() / 600.0 < 0.01);
    }

    #[test]
    fn empty_scenario_is_vacuously_covered() {
        let rep = evaluate_deployment(&scenario(Vec::new(), flat_env(), 110.0), 1).unwrap();
        assert_eq!(rep.coverage_fraction, 1.0);
        assert!(rep.zero_terminals);
        assert_eq!(rep.mean_rsrp_dbm, None);
    }

    #[test]
    fn deterministic_channel_full_coverage() {
        let rep =
            evaluate_deployment(&scenario(ring("a", 12, 300.0), flat_env(), 150.0), 3).unwrap();
        assert_eq!(rep.coverage_fraction, 1.0);
        assert!(!rep.zero_terminals);
    }

    #[test]
    fn two_ring_ratio() {
        let env = flat_env();
        let radio = RadioConfig::default();
        let inner = mean_path_loss_db(100.0, 200.0, &radio, &env)
            .unwrap()
            .total_mean_db;
        let outer = mean_path_loss_db(100.0, 2000.0, &radio, &env)
            .unwrap()
            .total_mean_db;
        assert!(inner < outer);
        let mut ts = ring("in", 7, 200.0);
        ts.extend(ring("out", 13, 2000.0));
        let rep = evaluate_deployment(&scenario(ts, env, 0.5 * (inner + outer)), 9).unwrap();
        assert_eq!(rep.covered_count, 7);
        assert_eq!(rep.coverage_fraction, 7.0 / 20.0);
    }

    #[test]
    fn rows_consistent_with_channel() {
        let mut env = flat_env();
        env.eta_los_std_db = 3.0;
        env.eta_nlos_std_db = 8.0;
        let sc = scenario(ring("a", 20, 800.0), env, 115.0);
        let rep = evaluate_deployment(&sc, 4).unwrap();
        for r in &rep.rows {
            assert_eq!(r.rsrp_dbm, rsrp_dbm(&sc.radio, r.sampled_pl_db));
            assert_eq!(r.covered, r.sampled_pl_db <= 115.0);
            assert!((r.ground_range_m - 800.0).abs() < 1e-9);
        }
        assert_eq!(
            rep.coverage_fraction,
            rep.covered_count as f64 / rep.terminal_count as f64
        );
    }

    #[test]
    fn monte_carlo_basics() {
        let mut env = flat_env();
        env.eta_los_std_db = 3.0;
        env.eta_nlos_std_db = 8.0;
        let sc = scenario(ring("a", 30, 1500.0), env, 118.0);
        assert!(run_monte_carlo(&sc, 0, 1).is_err());

        let one = run_monte_carlo(&sc, 1, 5).unwrap();
        assert_eq!(one.coverage_std, 0.0);
        let rows = sample_rows(&sc, mix_seed(5, 0)).unwrap();
        assert_eq!(one.coverage_mean, coverage_of(&rows).1);

        let a = run_monte_carlo(&sc, 50, 42).unwrap();
        let b = run_monte_carlo_with(&sc, 50, 42, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert!((a.coverage_ci95 - 1.96 * a.coverage_std / 50f64.sqrt()).abs() < 1e-15);

        let flat = scenario(ring("a", 30, 1500.0), flat_env(), 118.0);
        assert_eq!(run_monte_carlo(&flat, 40, 3).unwrap().coverage_std, 0.0);
    }

    #[test]
    fn report_csv_layout() {
        let sc = scenario(
            vec![GroundTerminal::new("u1", 300.0, 0.0)],
            flat_env(),
            150.0,
        );
        let rep = evaluate_deployment(&sc, 1).unwrap();
        let mut out = Vec::new();
        rep.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "id,ground_range_m,elevation_deg,sampled_pl_db,group,rsrp_dbm,covered"
        );
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row[0], "u1");
        assert_eq!(row[1], "300");
        assert_eq!(row[2], "18.4349");
        assert_eq!(row[6], "true");
    }

    #[test]
    fn file_validation_collects_everything() {
        let src = r#"{
            "lap": {"x": 0, "y": 0, "altitude_m": -5},
            "radio": {"max_path_loss_db": 0, "num_resource_elements": 0},
            "env": "suburban",
            "region": {"cx": 0, "cy": 0, "radius_m": 100},
            "terminals": [{"id": "a", "x": 0, "y": 0}, {"id": "a", "x": 500, "y": 0}],
            "traffic": {"payload_bits": 1000, "bitrate_bps": 1e6, "aggregation": "Perfect"},
            "terrestrial_alpha": 1.5
        }"#;
        let err = ScenarioFile::from_json_str(src)
            .unwrap()
            .into_scenario(None)
            .unwrap_err();
        let Error::Validation(v) = err else {
            panic!("expected validation error")
        };
        let paths: Vec<&str> = v.iter().map(|v| v.path.as_str()).collect();
        for p in [
            "lap.altitude_m",
            "radio.num_resource_elements",
            "radio.max_path_loss_db",
            "terminals.1.id",
            "terminals.1",
            "terrestrial_alpha",
        ] {
            assert!(paths.contains(&p), "missing {p} in {paths:?}");
        }
    }

    #[test]
    fn generated_terminals_from_file() {
        let src = r#"{
            "lap": {"x": 0, "y": 0, "altitude_m": 25},
            "radio": {"max_path_loss_db": 115},
            "env": {"name": "x", "sig_a": 4.88, "sig_b": 0.43, "eta_los_mean_db": 0.1,
                    "eta_nlos_mean_db": 21, "eta_los_std_db": 2, "eta_nlos_std_db": 6},
            "region": {"cx": 0, "cy": 0, "radius_m": 600},
            "terminals": {"count": 25, "seed": 3},
            "traffic": {"payload_bits": 1000, "bitrate_bps": 1e6}
        }"#;
        let sc = ScenarioFile::from_json_str(src)
            .unwrap()
            .into_scenario(None)
            .unwrap();
        assert_eq!(sc.terminals.len(), 25);
        assert_eq!(sc.terrestrial_alpha, 3.5);
        assert_eq!(sc.radio.num_resource_elements, 300);
    }
}
