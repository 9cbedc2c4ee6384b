//! Air-to-ground path loss.
//!
//! The mean A2G loss is free-space loss over the slant range plus an excess
//! loss whose statistics depend on the propagation group (LoS or NLoS). The
//! probability of the LoS group is a logistic curve in the elevation angle:
//!
//! ```text
//! p_los(θ) = 1 / (1 + a · exp(−b · (θ − a)))      θ in degrees
//! ```
//!
//! Each group's excess loss is Gaussian with its own mean and standard
//! deviation. A log-distance model covers terrestrial (terminal-to-terminal)
//! hops, and [`rsrp_dbm`] turns a loss into per-resource-element received
//! power.

use std::f64::consts::PI;
use std::path::Path;

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::geometry::LinkGeometry;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT_M_S: f64 = 299_792_458.0;

/// Carrier used when none is given.
pub const DEFAULT_CARRIER_HZ: f64 = 2.6e9;

/// 25 resource blocks × 12 subcarriers.
pub const DEFAULT_RESOURCE_ELEMENTS: u32 = 300;

/// Propagation group of a terminal relative to the platform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PropagationGroup {
    LoS,
    NLoS,
}

impl PropagationGroup {
    pub fn as_str(&self) -> &'static str {
        match self {
            PropagationGroup::LoS => "LoS",
            PropagationGroup::NLoS => "NLoS",
        }
    }
}

/// Statistical parameters of one propagation environment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvironmentParams {
    pub name: String,
    /// Logistic offset/scale coefficient `a` (dimensionless).
    pub sig_a: f64,
    /// Logistic slope `b`, per degree.
    pub sig_b: f64,
    pub eta_los_mean_db: f64,
    pub eta_nlos_mean_db: f64,
    pub eta_los_std_db: f64,
    pub eta_nlos_std_db: f64,
}

const PRESETS: [(&str, &str); 4] = [
    ("suburban", include_str!("../presets/suburban.json")),
    ("urban", include_str!("../presets/urban.json")),
    ("dense-urban", include_str!("../presets/dense-urban.json")),
    ("high-rise", include_str!("../presets/high-rise.json")),
];

impl EnvironmentParams {
    /// Names of the shipped presets.
    pub fn preset_names() -> impl Iterator<Item = &'static str> {
        PRESETS.iter().map(|(n, _)| *n)
    }

    /// Looks up a shipped preset by name (`suburban`, `urban`,
    /// `dense-urban`, `high-rise`).
    pub fn preset(name: &str) -> Option<Self> {
        PRESETS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, src)| serde_json::from_str(src).expect("shipped preset is valid JSON"))
    }

    pub fn from_json_str(src: &str) -> Result<Self> {
        let env: Self = serde_json::from_str(src)
            .map_err(|e| Error::Validation(vec![Violation::new("env", e.to_string())]))?;
        env.validate()?;
        Ok(env)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json_str(&src)
    }

    /// Resolves a preset name or a path to a preset file. An existing file
    /// wins; otherwise the file stem is matched against the preset names.
    pub fn resolve(spec: &str) -> Result<Self> {
        let path = Path::new(spec);
        if path.is_file() {
            return Self::from_file(path);
        }
        let stem = spec.strip_suffix(".json").unwrap_or(spec);
        let stem = Path::new(stem)
            .file_name()
            .and_then(|s| s.to_str())
            .unwrap_or(stem);
        Self::preset(stem).ok_or_else(|| {
            Error::io(
                path,
                std::io::Error::new(
                    std::io::ErrorKind::NotFound,
                    "no such environment file or preset",
                ),
            )
        })
    }

    pub fn violations(&self, prefix: &str) -> Vec<Violation> {
        let mut out = Vec::new();
        let p = |field: &str| {
            if prefix.is_empty() {
                field.to_string()
            } else {
                format!("{prefix}.{field}")
            }
        };
        if !(self.sig_a > 0.0 && self.sig_a.is_finite()) {
            out.push(Violation::new(p("sig_a"), "must be positive"));
        }
        if !(self.sig_b > 0.0 && self.sig_b.is_finite()) {
            out.push(Violation::new(p("sig_b"), "must be positive"));
        }
        if !(self.eta_los_mean_db >= 0.0 && self.eta_los_mean_db.is_finite()) {
            out.push(Violation::new(p("eta_los_mean_db"), "must be non-negative"));
        }
        if !(self.eta_nlos_mean_db >= self.eta_los_mean_db && self.eta_nlos_mean_db.is_finite()) {
            out.push(Violation::new(
                p("eta_nlos_mean_db"),
                "must be at least eta_los_mean_db",
            ));
        }
        if !(self.eta_los_std_db >= 0.0 && self.eta_los_std_db.is_finite()) {
            out.push(Violation::new(p("eta_los_std_db"), "must be non-negative"));
        }
        if !(self.eta_nlos_std_db >= 0.0 && self.eta_nlos_std_db.is_finite()) {
            out.push(Violation::new(p("eta_nlos_std_db"), "must be non-negative"));
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations("");
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(v))
        }
    }

    fn group_stats(&self, group: PropagationGroup) -> (f64, f64) {
        match group {
            PropagationGroup::LoS => (self.eta_los_mean_db, self.eta_los_std_db),
            PropagationGroup::NLoS => (self.eta_nlos_mean_db, self.eta_nlos_std_db),
        }
    }
}

/// Transmitter/receiver link parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadioConfig {
    pub carrier_freq_hz: f64,
    pub tx_power_dbm: f64,
    pub tx_gain_dbi: f64,
    pub rx_gain_dbi: f64,
    pub num_resource_elements: u32,
    pub rx_sensitivity_dbm: f64,
    pub max_tx_power_dbm: f64,
    /// Coverage boundary: largest tolerated path loss.
    pub max_path_loss_db: f64,
}

impl Default for RadioConfig {
    fn default() -> Self {
        Self {
            carrier_freq_hz: DEFAULT_CARRIER_HZ,
            tx_power_dbm: 23.0,
            tx_gain_dbi: 0.0,
            rx_gain_dbi: 0.0,
            num_resource_elements: DEFAULT_RESOURCE_ELEMENTS,
            rx_sensitivity_dbm: -100.0,
            max_tx_power_dbm: 23.0,
            max_path_loss_db: 120.0,
        }
    }
}

impl RadioConfig {
    pub fn violations(&self, prefix: &str) -> Vec<Violation> {
        let p = |field: &str| {
            if prefix.is_empty() {
                field.to_string()
            } else {
                format!("{prefix}.{field}")
            }
        };
        let mut out = Vec::new();
        if !(self.carrier_freq_hz > 0.0 && self.carrier_freq_hz.is_finite()) {
            out.push(Violation::new(p("carrier_freq_hz"), "must be positive"));
        }
        if self.num_resource_elements < 1 {
            out.push(Violation::new(
                p("num_resource_elements"),
                "must be at least 1",
            ));
        }
        if !(self.max_path_loss_db > 0.0 && self.max_path_loss_db.is_finite()) {
            out.push(Violation::new(p("max_path_loss_db"), "must be positive"));
        }
        for (name, v) in [
            ("tx_power_dbm", self.tx_power_dbm),
            ("tx_gain_dbi", self.tx_gain_dbi),
            ("rx_gain_dbi", self.rx_gain_dbi),
            ("rx_sensitivity_dbm", self.rx_sensitivity_dbm),
            ("max_tx_power_dbm", self.max_tx_power_dbm),
        ] {
            if !v.is_finite() {
                out.push(Violation::new(p(name), "must be finite"));
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations("");
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(v))
        }
    }
}

/// Components of a mean A2G path loss.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathLossBreakdown {
    pub fspl_db: f64,
    pub p_los: f64,
    pub excess_mean_db: f64,
    pub total_mean_db: f64,
}

fn check_freq(freq_hz: f64) -> Result<()> {
    if freq_hz > 0.0 && freq_hz.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "frequency must be positive, got {freq_hz}"
        )))
    }
}

fn check_elevation(elevation_deg: f64) -> Result<()> {
    if (0.0..=90.0).contains(&elevation_deg) {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "elevation must lie in [0, 90] degrees, got {elevation_deg}"
        )))
    }
}

/// Free-space (Friis) loss. Distances under 1 m are treated as 1 m.
pub fn fspl_db(distance_m: f64, freq_hz: f64) -> Result<f64> {
    check_freq(freq_hz)?;
    if distance_m.is_nan() {
        return Err(Error::domain("distance is NaN"));
    }
    let d = distance_m.max(1.0);
    Ok(20.0 * d.log10() + 20.0 * freq_hz.log10() + 20.0 * (4.0 * PI / SPEED_OF_LIGHT_M_S).log10())
}

/// Probability that a terminal seen at `elevation_deg` is in the LoS group.
pub fn p_los(elevation_deg: f64, env: &EnvironmentParams) -> Result<f64> {
    check_elevation(elevation_deg)?;
    Ok(1.0 / (1.0 + env.sig_a * (-env.sig_b * (elevation_deg - env.sig_a)).exp()))
}

/// Probability-weighted excess loss over both groups.
pub fn mean_excess_db(elevation_deg: f64, env: &EnvironmentParams) -> Result<f64> {
    let p = p_los(elevation_deg, env)?;
    Ok(p * env.eta_los_mean_db + (1.0 - p) * env.eta_nlos_mean_db)
}

/// Mean A2G loss for a terminal at `ground_range_m` from the platform's
/// ground projection.
pub fn mean_path_loss_db(
    altitude_m: f64,
    ground_range_m: f64,
    radio: &RadioConfig,
    env: &EnvironmentParams,
) -> Result<PathLossBreakdown> {
    let geom = LinkGeometry::new(altitude_m, ground_range_m)?;
    let fspl = fspl_db(geom.slant_range_m, radio.carrier_freq_hz)?;
    let p = p_los(geom.elevation_deg, env)?;
    let excess = p * env.eta_los_mean_db + (1.0 - p) * env.eta_nlos_mean_db;
    Ok(PathLossBreakdown {
        fspl_db: fspl,
        p_los: p,
        excess_mean_db: excess,
        total_mean_db: fspl + excess,
    })
}

/// Options for [`sample_path_loss_db_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SampleOptions {
    /// Floor the sampled loss at the free-space component.
    pub clamp_at_fspl: bool,
}

/// Draws one shadowed A2G loss: the group from Bernoulli(p_los), then the
/// excess from that group's Gaussian. The sample is not clamped.
pub fn sample_path_loss_db<R: Rng + ?Sized>(
    altitude_m: f64,
    ground_range_m: f64,
    radio: &RadioConfig,
    env: &EnvironmentParams,
    rng: &mut R,
) -> Result<(f64, PropagationGroup)> {
    sample_path_loss_db_with(
        altitude_m,
        ground_range_m,
        radio,
        env,
        SampleOptions::default(),
        rng,
    )
}

pub fn sample_path_loss_db_with<R: Rng + ?Sized>(
    altitude_m: f64,
    ground_range_m: f64,
    radio: &RadioConfig,
    env: &EnvironmentParams,
    options: SampleOptions,
    rng: &mut R,
) -> Result<(f64, PropagationGroup)> {
    let geom = LinkGeometry::new(altitude_m, ground_range_m)?;
    let fspl = fspl_db(geom.slant_range_m, radio.carrier_freq_hz)?;
    let p = p_los(geom.elevation_deg, env)?;
    let group = if rng.random::<f64>() < p {
        PropagationGroup::LoS
    } else {
        PropagationGroup::NLoS
    };
    let (mean, std) = env.group_stats(group);
    let excess = Normal::new(mean, std)
        .map_err(|e| Error::domain(format!("excess loss distribution: {e}")))?
        .sample(rng);
    let mut loss = fspl + excess;
    if options.clamp_at_fspl {
        loss = loss.max(fspl);
    }
    Ok((loss, group))
}

/// Log-distance loss referenced to the free-space loss at 1 m.
pub fn terrestrial_path_loss_db(distance_m: f64, alpha: f64, freq_hz: f64) -> Result<f64> {
    if !(alpha >= 2.0 && alpha.is_finite()) {
        return Err(Error::domain(format!(
            "path-loss exponent must be at least 2, got {alpha}"
        )));
    }
    let k0 = fspl_db(1.0, freq_hz)?;
    if distance_m.is_nan() {
        return Err(Error::domain("distance is NaN"));
    }
    Ok(k0 + 10.0 * alpha * distance_m.max(1.0).log10())
}

/// Per-resource-element received power for a given path loss.
pub fn rsrp_dbm(radio: &RadioConfig, path_loss_db: f64) -> f64 {
    radio.tx_power_dbm - 10.0 * f64::from(radio.num_resource_elements).log10()
        + radio.tx_gain_dbi
        + radio.rx_gain_dbi
        - path_loss_db
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn env(a: f64, b: f64, los: f64, nlos: f64) -> EnvironmentParams {
        EnvironmentParams {
            name: "test".into(),
            sig_a: a,
            sig_b: b,
            eta_los_mean_db: los,
            eta_nlos_mean_db: nlos,
            eta_los_std_db: 0.0,
            eta_nlos_std_db: 0.0,
        }
    }

    fn radio_at(freq: f64) -> RadioConfig {
        RadioConfig {
            carrier_freq_hz: freq,
            ..RadioConfig::default()
        }
    }

    #[test]
    fn fspl_reference_values() {
        let d = fspl_db(2000.0, 1.8e9).unwrap() - fspl_db(1000.0, 1.8e9).unwrap();
        assert!((d - 6.0206).abs() < 1e-4);
        assert!((fspl_db(1.0, 2.4e9).unwrap() - 40.05).abs() < 0.01);
        assert!((fspl_db(1000.0, 2.6e9).unwrap() - 100.75).abs() < 0.01);
    }

    #[test]
    fn fspl_near_field_and_errors() {
        assert_eq!(fspl_db(0.2, 2.6e9).unwrap(), fspl_db(1.0, 2.6e9).unwrap());
        assert!(matches!(fspl_db(10.0, 0.0), Err(Error::Domain(_))));
        assert!(fspl_db(10.0, -5.0).is_err());
    }

    #[test]
    fn p_los_examples() {
        let e = env(4.88, 0.43, 1.0, 20.0);
        let at_a = p_los(4.88, &e).unwrap();
        assert!((at_a - 1.0 / 5.88).abs() < 1e-15);
        assert!((p_los(20.0, &e).unwrap() - 0.9928).abs() < 1e-4);
        assert!((p_los(90.0, &e).unwrap() - 1.0).abs() < 1e-12);
        assert!(p_los(-0.1, &e).is_err());
        assert!(p_los(90.5, &e).is_err());
    }

    #[test]
    fn mean_excess_degenerate_groups() {
        let los_only = env(4.88, 1e3, 1.0, 20.0);
        assert_eq!(mean_excess_db(30.0, &los_only).unwrap(), 1.0);
        let nlos_only = env(80.0, 0.5, 1.0, 20.0);
        assert!((mean_excess_db(0.0, &nlos_only).unwrap() - 20.0).abs() < 1e-12);
        // p_los = 0.5 exactly when a·exp(−b(θ−a)) = 1; a = 1, θ = a.
        let mid = env(1.0, 0.3, 1.0, 20.0);
        assert!((mean_excess_db(1.0, &mid).unwrap() - 10.5).abs() < 1e-12);
    }

    #[test]
    fn mean_path_loss_examples() {
        let radio = radio_at(2.6e9);
        let zero = env(4.88, 0.43, 0.0, 0.0);
        let b = mean_path_loss_db(25.0, 300.0, &radio, &zero).unwrap();
        assert_eq!(b.total_mean_db, b.fspl_db);

        let e = env(4.88, 0.43, 1.0, 20.0);
        let b = mean_path_loss_db(25.0, 300.0, &radio, &e).unwrap();
        assert!((b.p_los - 0.163).abs() < 1e-3);
        assert!((b.fspl_db - 90.32).abs() < 0.01);
        assert!((b.total_mean_db - 107.2).abs() < 0.05);

        let z = mean_path_loss_db(25.0, 0.0, &radio, &e).unwrap();
        let expect = fspl_db(25.0, 2.6e9).unwrap() + 1.0;
        assert!((z.total_mean_db - expect).abs() < 0.02);
    }

    #[test]
    fn sampling_degenerate_and_deterministic() {
        let radio = radio_at(2.6e9);
        let e = env(4.88, 1e3, 1.0, 20.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (pl, g) = sample_path_loss_db(25.0, 10.0, &radio, &e, &mut rng).unwrap();
        let fspl = fspl_db(25.0f64.hypot(10.0), 2.6e9).unwrap();
        assert_eq!(g, PropagationGroup::LoS);
        assert!((pl - (fspl + 1.0)).abs() < 1e-12);

        let mut noisy = env(4.88, 0.43, 1.0, 20.0);
        noisy.eta_los_std_db = 3.0;
        noisy.eta_nlos_std_db = 8.0;
        let a = sample_path_loss_db(
            25.0,
            300.0,
            &radio,
            &noisy,
            &mut ChaCha8Rng::seed_from_u64(9),
        )
        .unwrap();
        let b = sample_path_loss_db(
            25.0,
            300.0,
            &radio,
            &noisy,
            &mut ChaCha8Rng::seed_from_u64(9),
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn clamp_flag_floors_at_fspl() {
        let radio = radio_at(2.6e9);
        let mut e = env(4.88, 0.43, 0.0, 0.0);
        e.eta_los_std_db = 10.0;
        e.eta_nlos_std_db = 10.0;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fspl = fspl_db(25.0f64.hypot(300.0), 2.6e9).unwrap();
        let mut below = false;
        for _ in 0..200 {
            let (pl, _) = sample_path_loss_db(25.0, 300.0, &radio, &e, &mut rng).unwrap();
            below |= pl < fspl;
        }
        assert!(below, "unclamped samples should dip below free space");
        let opts = SampleOptions {
            clamp_at_fspl: true,
        };
        for _ in 0..200 {
            let (pl, _) =
                sample_path_loss_db_with(25.0, 300.0, &radio, &e, opts, &mut rng).unwrap();
            assert!(pl >= fspl);
        }
    }

    #[test]
    fn terrestrial_examples() {
        let f = 2.6e9;
        assert_eq!(
            terrestrial_path_loss_db(250.0, 2.0, f).unwrap(),
            fspl_db(250.0, f).unwrap()
        );
        assert_eq!(
            terrestrial_path_loss_db(1.0, 3.5, f).unwrap(),
            fspl_db(1.0, f).unwrap()
        );
        assert!((terrestrial_path_loss_db(100.0, 3.5, f).unwrap() - 110.75).abs() < 0.01);
        assert!(matches!(
            terrestrial_path_loss_db(10.0, 1.9, f),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn rsrp_examples() {
        let mut radio = RadioConfig {
            tx_power_dbm: 23.0,
            num_resource_elements: 1,
            ..RadioConfig::default()
        };
        assert_eq!(rsrp_dbm(&radio, 0.0), 23.0);
        radio.num_resource_elements = 300;
        assert!((rsrp_dbm(&radio, 90.32) - (-92.09)).abs() < 0.01);
    }

    #[test]
    fn presets_are_valid() {
        for name in EnvironmentParams::preset_names() {
            let p = EnvironmentParams::preset(name).unwrap();
            assert_eq!(p.name, name);
            p.validate().unwrap();
        }
        assert!(EnvironmentParams::preset("lunar").is_none());
        assert_eq!(
            EnvironmentParams::resolve("suburban.json").unwrap().name,
            "suburban"
        );
        assert!(matches!(
            EnvironmentParams::resolve("no/such/file.json"),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn env_validation_lists_every_violation() {
        let bad = EnvironmentParams {
            name: "bad".into(),
            sig_a: 0.0,
            sig_b: -1.0,
            eta_los_mean_db: 5.0,
            eta_nlos_mean_db: 1.0,
            eta_los_std_db: -1.0,
            eta_nlos_std_db: 0.0,
        };
        let v = bad.violations("env");
        let paths: Vec<_> = v.iter().map(|v| v.path.as_str()).collect();
        assert_eq!(
            paths,
            [
                "env.sig_a",
                "env.sig_b",
                "env.eta_nlos_mean_db",
                "env.eta_los_std_db"
            ]
        );
    }

    fn arb_env() -> impl Strategy<Value = EnvironmentParams> {
        (0.5f64..30.0, 0.01f64..1.0, 0.0f64..5.0, 0.0f64..40.0)
            .prop_map(|(a, b, los, extra)| env(a, b, los, los + extra))
    }

    proptest! {
        #[test]
        fn fspl_doubling(d in 1.0f64..1e6, f in 1e6f64..1e11) {
            let step = fspl_db(2.0 * d, f).unwrap() - fspl_db(d, f).unwrap();
            prop_assert!((step - 20.0 * 2f64.log10()).abs() < 1e-9);
            prop_assert!(fspl_db(d * 1.01, f).unwrap() > fspl_db(d, f).unwrap());
            prop_assert!(fspl_db(d, f * 1.01).unwrap() > fspl_db(d, f).unwrap());
        }

        #[test]
        fn p_los_bounded_and_monotone(e in arb_env(), t in 0.0f64..89.0, dt in 0.0f64..1.0) {
            let lo = p_los(t, &e).unwrap();
            let hi = p_los(t + dt, &e).unwrap();
            prop_assert!(lo > 0.0 && lo <= 1.0);
            prop_assert!(hi >= lo);
        }

        #[test]
        fn excess_between_group_means(e in arb_env(), t in 0.0f64..=90.0) {
            let x = mean_excess_db(t, &e).unwrap();
            prop_assert!(x >= e.eta_los_mean_db - 1e-12 && x <= e.eta_nlos_mean_db + 1e-12);
        }

        #[test]
        fn breakdown_consistent(e in arb_env(), h in 1.0f64..3000.0, r in 0.0f64..20_000.0) {
            let b = mean_path_loss_db(h, r, &radio_at(2.6e9), &e).unwrap();
            prop_assert!((b.total_mean_db - (b.fspl_db + b.excess_mean_db)).abs() < 1e-9);
            let mix = b.p_los * e.eta_los_mean_db + (1.0 - b.p_los) * e.eta_nlos_mean_db;
            prop_assert!((b.excess_mean_db - mix).abs() < 1e-9);
            prop_assert!(b.total_mean_db >= b.fspl_db);
        }

        #[test]
        fn los_probability_grows_with_altitude(e in arb_env(), h in 1.0f64..2000.0, dh in 0.1f64..500.0, r in 1.0f64..10_000.0) {
            let low = LinkGeometry::new(h, r).unwrap().elevation_deg;
            let high = LinkGeometry::new(h + dh, r).unwrap().elevation_deg;
            prop_assert!(p_los(high, &e).unwrap() >= p_los(low, &e).unwrap());
        }
    }
}
