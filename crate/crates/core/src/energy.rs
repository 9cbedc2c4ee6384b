//! Uplink energy with and without clustering, and one-hop relay coverage.
//!
//! Energy is transmit airtime only: the power a terminal needs to close its
//! link at the receiver sensitivity, times `payload_bits / bitrate_bps`.
//! Without clustering every terminal talks to the platform over its A2G mean
//! loss. With clustering, members talk to a cluster head over a terrestrial
//! log-distance hop and only heads talk to the platform.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{mean_path_loss_db, terrestrial_path_loss_db, EnvironmentParams, RadioConfig};
use crate::error::{Error, Result};
use crate::geometry::PlanarPoint;
use crate::rng::rng_from_seed;

/// Upper bound on Lloyd refinement passes.
pub const MAX_LLOYD_ITERATIONS: usize = 50;

/// Terrestrial path-loss exponent used when none is configured.
pub const DEFAULT_TERRESTRIAL_ALPHA: f64 = 3.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTerminal {
    pub id: String,
    pub position: PlanarPoint,
}

impl GroundTerminal {
    pub fn new(id: impl Into<String>, x_m: f64, y_m: f64) -> Self {
        Self {
            id: id.into(),
            position: PlanarPoint::new(x_m, y_m),
        }
    }
}

/// Aerial platform placement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Platform {
    pub position: PlanarPoint,
    pub altitude_m: f64,
}

/// How a cluster head forwards its members' data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Aggregation {
    /// Members' data fuses into one payload.
    #[default]
    #[serde(alias = "perfect")]
    Perfect,
    /// The head relays every member payload unchanged.
    #[serde(alias = "none")]
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrafficModel {
    pub payload_bits: f64,
    pub bitrate_bps: f64,
    #[serde(default)]
    pub aggregation: Aggregation,
}

impl TrafficModel {
    fn airtime_s(&self, payloads: f64) -> f64 {
        payloads * self.payload_bits / self.bitrate_bps
    }
}

/// Link-budget inversion failed: the terminal would need more than its
/// maximum transmit power.
#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("required {required_dbm:.2} dBm exceeds maximum {max_dbm:.2} dBm")]
pub struct Outage {
    pub required_dbm: f64,
    pub max_dbm: f64,
}

/// Transmit power needed to arrive at the receiver sensitivity.
pub fn required_tx_power_dbm(path_loss_db: f64, radio: &RadioConfig) -> Result<f64, Outage> {
    let p = radio.rx_sensitivity_dbm + path_loss_db - radio.tx_gain_dbi - radio.rx_gain_dbi;
    if p > radio.max_tx_power_dbm {
        Err(Outage {
            required_dbm: p,
            max_dbm: radio.max_tx_power_dbm,
        })
    } else {
        Ok(p)
    }
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirectEnergy {
    pub energy_j: f64,
    pub outage_ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterPlan {
    pub k: usize,
    pub head_ids: Vec<String>,
    pub head_positions: Vec<PlanarPoint>,
    /// Terminal id to head id; heads map to themselves.
    pub assignment: BTreeMap<String, String>,
    pub member_energy_j: f64,
    pub head_energy_j: f64,
    pub total_energy_j: f64,
    pub outage_ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterScan {
    pub best_k: usize,
    pub plan: ClusterPlan,
    /// (k, total energy) for every scanned k, ascending in k.
    pub trace: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct RelayResult {
    pub directly_covered: BTreeSet<String>,
    pub relay_covered: BTreeSet<String>,
    pub uncovered: BTreeSet<String>,
    /// Relay-covered id to the directly covered neighbour that carries it.
    pub witnesses: BTreeMap<String, String>,
}

/// A platform, its radio and environment, and the terrestrial exponent for
/// terminal-to-terminal hops.
#[derive(Debug, Clone, Copy)]
pub struct Network<'a> {
    pub platform: Platform,
    pub radio: &'a RadioConfig,
    pub env: &'a EnvironmentParams,
    pub terrestrial_alpha: f64,
}

impl<'a> Network<'a> {
    /// Mean A2G loss from a ground position to the platform.
    pub fn a2g_loss_db(&self, position: &PlanarPoint) -> Result<f64> {
        let r = position.distance_to(&self.platform.position);
        Ok(mean_path_loss_db(self.platform.altitude_m, r, self.radio, self.env)?.total_mean_db)
    }

    pub fn terrestrial_loss_db(&self, a: &PlanarPoint, b: &PlanarPoint) -> Result<f64> {
        terrestrial_path_loss_db(
            a.distance_to(b),
            self.terrestrial_alpha,
            self.radio.carrier_freq_hz,
        )
    }

    /// Every terminal transmits its payload straight to the platform.
    pub fn direct_energy_j(
        &self,
        terminals: &[GroundTerminal],
        traffic: &TrafficModel,
    ) -> Result<DirectEnergy> {
        check_traffic(traffic)?;
        let order = canonical_order(terminals)?;
        let mut energy = 0.0;
        let mut outage_ids = Vec::new();
        for &i in &order {
            let t = &terminals[i];
            match required_tx_power_dbm(self.a2g_loss_db(&t.position)?, self.radio) {
                Ok(p) => energy += dbm_to_watts(p) * traffic.airtime_s(1.0),
                Err(_) => outage_ids.push(t.id.clone()),
            }
        }
        Ok(DirectEnergy {
            energy_j: energy,
            outage_ids,
        })
    }

    /// Groups terminals into `k` clusters and prices one reporting round.
    ///
    /// Heads come from farthest-point seeding (first seed drawn from `seed`)
    /// refined by at most [`MAX_LLOYD_ITERATIONS`] Lloyd passes and then
    /// snapped to the nearest distinct terminal. A head in outage takes its
    /// whole cluster with it.
    pub fn clustered_energy_j(
        &self,
        terminals: &[GroundTerminal],
        traffic: &TrafficModel,
        k: usize,
        seed: u64,
    ) -> Result<ClusterPlan> {
        check_traffic(traffic)?;
        if k < 1 || k > terminals.len() {
            return Err(Error::domain(format!(
                "cluster count must lie in [1, {}], got {k}",
                terminals.len()
            )));
        }
        let order = canonical_order(terminals)?;
        let points: Vec<PlanarPoint> = order.iter().map(|&i| terminals[i].position).collect();
        let id = |j: usize| terminals[order[j]].id.clone();

        let centers = seed_farthest_point(&points, k, seed);
        let centers = lloyd(&points, centers);
        let heads = snap_to_terminals(&points, &centers);
        let head_of = assign_to_heads(&points, &heads);

        // A head in outage takes its whole cluster with it.
        let head_power: Vec<Option<f64>> = heads
            .iter()
            .map(|&j| Ok(required_tx_power_dbm(self.a2g_loss_db(&points[j])?, self.radio).ok()))
            .collect::<Result<_>>()?;

        let mut member_energy = 0.0;
        let mut delivered = vec![1usize; k];
        let mut outage = vec![false; points.len()];
        for (j, &h) in head_of.iter().enumerate() {
            if head_power[h].is_none() {
                outage[j] = true;
                continue;
            }
            if heads[h] == j {
                continue;
            }
            let loss = self.terrestrial_loss_db(&points[j], &points[heads[h]])?;
            match required_tx_power_dbm(loss, self.radio) {
                Ok(p) => {
                    member_energy += dbm_to_watts(p) * traffic.airtime_s(1.0);
                    delivered[h] += 1;
                }
                Err(_) => outage[j] = true,
            }
        }

        // Heads are summed in canonical terminal order.
        let mut head_slot = vec![None; points.len()];
        for (h, &j) in heads.iter().enumerate() {
            head_slot[j] = Some(h);
        }
        let mut head_energy = 0.0;
        for h in head_slot.into_iter().flatten() {
            let Some(p) = head_power[h] else { continue };
            let payloads = match traffic.aggregation {
                Aggregation::Perfect => 1.0,
                Aggregation::None => delivered[h] as f64,
            };
            head_energy += dbm_to_watts(p) * traffic.airtime_s(payloads);
        }

        let outage_ids: Vec<String> = outage
            .iter()
            .enumerate()
            .filter(|(_, &o)| o)
            .map(|(j, _)| id(j))
            .collect();
        let assignment = head_of
            .iter()
            .enumerate()
            .map(|(j, &h)| (id(j), id(heads[h])))
            .collect();

        Ok(ClusterPlan {
            k,
            head_ids: heads.iter().map(|&j| id(j)).collect(),
            head_positions: heads.iter().map(|&j| points[j]).collect(),
            assignment,
            member_energy_j: member_energy,
            head_energy_j: head_energy,
            total_energy_j: member_energy + head_energy,
            outage_ids,
        })
    }

    /// Exhaustive scan over `k_values`. Plans rank by outage count, then by
    /// total energy; ties go to the smaller k.
    pub fn optimal_cluster_count(
        &self,
        terminals: &[GroundTerminal],
        traffic: &TrafficModel,
        k_values: impl IntoIterator<Item = usize>,
        seed: u64,
    ) -> Result<ClusterScan> {
        let mut ks: Vec<usize> = k_values.into_iter().collect();
        ks.sort_unstable();
        ks.dedup();
        if ks.is_empty() {
            return Err(Error::domain("cluster count range is empty"));
        }
        let plans: Vec<ClusterPlan> = ks
            .par_iter()
            .map(|&k| self.clustered_energy_j(terminals, traffic, k, seed))
            .collect::<Result<_>>()?;
        let trace = plans.iter().map(|p| (p.k, p.total_energy_j)).collect();
        let plan = plans
            .into_iter()
            .reduce(|best, p| {
                let fewer_outages = p.outage_ids.len() < best.outage_ids.len();
                let same_outages = p.outage_ids.len() == best.outage_ids.len();
                if fewer_outages || (same_outages && p.total_energy_j < best.total_energy_j) {
                    p
                } else {
                    best
                }
            })
            .expect("non-empty");
        Ok(ClusterScan {
            best_k: plan.k,
            plan,
            trace,
        })
    }

    /// Splits terminals into directly covered (mean A2G loss within budget),
    /// covered through one terrestrial hop to a directly covered neighbour
    /// with loss at most `relay_budget_db`, and uncovered.
    pub fn relay_coverage(
        &self,
        terminals: &[GroundTerminal],
        relay_budget_db: f64,
    ) -> Result<RelayResult> {
        if relay_budget_db.is_nan() || relay_budget_db < 0.0 {
            return Err(Error::domain(format!(
                "relay budget must be non-negative, got {relay_budget_db}"
            )));
        }
        let order = canonical_order(terminals)?;
        let mut covered = Vec::new();
        let mut rest = Vec::new();
        for &i in &order {
            if self.a2g_loss_db(&terminals[i].position)? <= self.radio.max_path_loss_db {
                covered.push(i);
            } else {
                rest.push(i);
            }
        }

        let mut out = RelayResult {
            directly_covered: covered.iter().map(|&i| terminals[i].id.clone()).collect(),
            ..RelayResult::default()
        };
        for &u in &rest {
            let mut best: Option<(f64, usize)> = None;
            for &c in &covered {
                let loss =
                    self.terrestrial_loss_db(&terminals[u].position, &terminals[c].position)?;
                if loss <= relay_budget_db && best.is_none_or(|(b, _)| loss < b) {
                    best = Some((loss, c));
                }
            }
            let uid = terminals[u].id.clone();
            match best {
                Some((_, c)) => {
                    out.witnesses.insert(uid.clone(), terminals[c].id.clone());
                    out.relay_covered.insert(uid);
                }
                None => {
                    out.uncovered.insert(uid);
                }
            }
        }
        Ok(out)
    }
}

fn check_traffic(traffic: &TrafficModel) -> Result<()> {
    if !(traffic.payload_bits > 0.0 && traffic.payload_bits.is_finite()) {
        return Err(Error::domain("payload_bits must be positive"));
    }
    if !(traffic.bitrate_bps > 0.0 && traffic.bitrate_bps.is_finite()) {
        return Err(Error::domain("bitrate_bps must be positive"));
    }
    Ok(())
}

/// Terminal indices sorted by id; fails on duplicate ids.
fn canonical_order(terminals: &[GroundTerminal]) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..terminals.len()).collect();
    order.sort_by(|&a, &b| terminals[a].id.cmp(&terminals[b].id));
    for w in order.windows(2) {
        if terminals[w[0]].id == terminals[w[1]].id {
            return Err(Error::domain(format!(
                "duplicate terminal id {:?}",
                terminals[w[0]].id
            )));
        }
    }
    Ok(order)
}

fn nearest(point: &PlanarPoint, centers: &[PlanarPoint]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, c) in centers.iter().enumerate() {
        let d = point.distance_sq(c);
        if d < best_d {
            best = i;
            best_d = d;
        }
    }
    best
}

fn seed_farthest_point(points: &[PlanarPoint], k: usize, seed: u64) -> Vec<PlanarPoint> {
    let mut rng = rng_from_seed(seed);
    let first = rng.random_range(0..points.len());
    let mut chosen = vec![false; points.len()];
    let mut min_d: Vec<f64> = points
        .iter()
        .map(|p| p.distance_sq(&points[first]))
        .collect();
    chosen[first] = true;
    let mut centers = vec![points[first]];
    while centers.len() < k {
        let mut pick = usize::MAX;
        for j in 0..points.len() {
            if !chosen[j] && (pick == usize::MAX || min_d[j] > min_d[pick]) {
                pick = j;
            }
        }
        chosen[pick] = true;
        centers.push(points[pick]);
        for (j, p) in points.iter().enumerate() {
            min_d[j] = min_d[j].min(p.distance_sq(&points[pick]));
        }
    }
    centers
}

fn lloyd(points: &[PlanarPoint], mut centers: Vec<PlanarPoint>) -> Vec<PlanarPoint> {
    let k = centers.len();
    let mut assignment: Vec<usize> = vec![usize::MAX; points.len()];
    for _ in 0..MAX_LLOYD_ITERATIONS {
        let next: Vec<usize> = points.iter().map(|p| nearest(p, &centers)).collect();
        if next == assignment {
            break;
        }
        assignment = next;
        let mut sums = vec![(0.0, 0.0, 0usize); k];
        for (p, &c) in points.iter().zip(&assignment) {
            sums[c].0 += p.x_m;
            sums[c].1 += p.y_m;
            sums[c].2 += 1;
        }
        for (c, (sx, sy, n)) in centers.iter_mut().zip(sums) {
            if n > 0 {
                *c = PlanarPoint::new(sx / n as f64, sy / n as f64);
            }
        }
    }
    centers
}

/// Each center takes the nearest terminal not already taken by an earlier
/// center.
fn snap_to_terminals(points: &[PlanarPoint], centers: &[PlanarPoint]) -> Vec<usize> {
    let mut taken = HashSet::with_capacity(centers.len());
    centers
        .iter()
        .map(|c| {
            let mut best = usize::MAX;
            let mut best_d = f64::INFINITY;
            for (j, p) in points.iter().enumerate() {
                if taken.contains(&j) {
                    continue;
                }
                let d = p.distance_sq(c);
                if best == usize::MAX || d < best_d {
                    best = j;
                    best_d = d;
                }
            }
            taken.insert(best);
            best
        })
        .collect()
}

fn assign_to_heads(points: &[PlanarPoint], heads: &[usize]) -> Vec<usize> {
    let head_points: Vec<PlanarPoint> = heads.iter().map(|&j| points[j]).collect();
    let mut out: Vec<usize> = points.iter().map(|p| nearest(p, &head_points)).collect();
    for (h, &j) in heads.iter().enumerate() {
        out[j] = h;
    }
    out
}
