//! Coverage radius and platform altitude optimization.
//!
//! Raising the platform improves the LoS probability of every terminal but
//! lengthens the slant range, so the mean-loss coverage radius has an
//! interior maximum over altitude for most environments.

use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{fspl_db, mean_path_loss_db, EnvironmentParams, RadioConfig};
use crate::error::{Error, Result};

/// Default tolerance for radius and altitude searches, metres.
pub const DEFAULT_TOL_M: f64 = 0.5;

/// Points in the coarse log-spaced altitude grid.
pub const ALTITUDE_GRID_POINTS: usize = 200;

/// Points in the grid used to confirm the loss is monotone in range.
const MONOTONE_PROBE_POINTS: usize = 257;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverageResult {
    pub radius_m: f64,
    /// Mean loss at `radius_m` (at zenith when infeasible).
    pub limiting_path_loss_db: f64,
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AltitudeSolution {
    pub altitude_m: f64,
    pub radius_m: f64,
    /// False when no altitude in the bracket meets the loss budget.
    pub feasible: bool,
    /// Every (altitude, radius) pair evaluated, in evaluation order.
    pub search_trace: Vec<(f64, f64)>,
}

/// Largest ground range whose mean A2G loss stays within
/// `radio.max_path_loss_db`.
///
/// When the loss is confirmed monotone on a probe grid the boundary is
/// bisected to floating-point resolution (well inside `tol_m`); otherwise the
/// range is scanned in `tol_m` steps and the last feasible step refined.
pub fn coverage_radius_m(
    altitude_m: f64,
    radio: &RadioConfig,
    env: &EnvironmentParams,
    tol_m: f64,
) -> Result<CoverageResult> {
    if !(tol_m > 0.0 && tol_m.is_finite()) {
        return Err(Error::domain(format!(
            "tolerance must be positive, got {tol_m}"
        )));
    }
    radio.validate()?;
    env.validate()?;
    let budget = radio.max_path_loss_db;
    let loss =
        |r: f64| -> Result<f64> { Ok(mean_path_loss_db(altitude_m, r, radio, env)?.total_mean_db) };

    let zenith = loss(0.0)?;
    if zenith > budget {
        return Ok(CoverageResult {
            radius_m: 0.0,
            limiting_path_loss_db: zenith,
            feasible: false,
        });
    }

    let mut hi = range_upper_bound(altitude_m, radio, env)?;
    while loss(hi)? <= budget {
        hi *= 2.0;
    }

    let probe: Vec<f64> = (0..MONOTONE_PROBE_POINTS)
        .map(|i| loss(hi * i as f64 / (MONOTONE_PROBE_POINTS - 1) as f64))
        .collect::<Result<_>>()?;
    let monotone = probe.windows(2).all(|w| w[1] >= w[0]);

    let radius = if monotone {
        bisect_boundary(0.0, hi, |r| loss(r).map(|l| l <= budget))?
    } else {
        let steps = (hi / tol_m).ceil() as u64;
        let mut last_ok = 0.0;
        for i in 0..=steps {
            let r = (i as f64 * tol_m).min(hi);
            if loss(r)? <= budget {
                last_ok = r;
            }
        }
        if last_ok < hi {
            bisect_boundary(last_ok, (last_ok + tol_m).min(hi), |r| {
                loss(r).map(|l| l <= budget)
            })?
        } else {
            last_ok
        }
    };

    Ok(CoverageResult {
        radius_m: radius,
        limiting_path_loss_db: loss(radius)?,
        feasible: true,
    })
}

/// Ground range beyond which even the pure LoS mean loss exceeds the budget.
fn range_upper_bound(altitude_m: f64, radio: &RadioConfig, env: &EnvironmentParams) -> Result<f64> {
    let min_excess = env.eta_los_mean_db.min(env.eta_nlos_mean_db);
    let k0 = fspl_db(1.0, radio.carrier_freq_hz)?;
    let d_max = 10f64.powf((radio.max_path_loss_db - min_excess - k0) / 20.0);
    let r = (d_max * d_max - altitude_m * altitude_m).max(0.0).sqrt();
    Ok(r * (1.0 + 1e-9) + 1.0)
}

/// Bisects between `lo` (inside) and `hi` (outside) until the two are
/// adjacent floats. Returns the inside end.
fn bisect_boundary<F>(mut lo: f64, mut hi: f64, mut inside: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<bool>,
{
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if inside(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Altitude in `[h_min, h_max]` that maximizes the coverage radius.
///
/// A 200-point log-spaced grid locates the best bracket, then golden-section
/// search refines inside it. Ties break toward the lower altitude. When no
/// altitude is feasible the result has `feasible == false` rather than an
/// error.
pub fn optimal_altitude(
    radio: &RadioConfig,
    env: &EnvironmentParams,
    h_min: f64,
    h_max: f64,
    tol_m: f64,
) -> Result<AltitudeSolution> {
    if !(h_min > 0.0 && h_min.is_finite() && h_max.is_finite() && h_min <= h_max) {
        return Err(Error::domain(format!(
            "altitude bracket must satisfy 0 < h_min <= h_max, got [{h_min}, {h_max}]"
        )));
    }
    if !(tol_m > 0.0 && tol_m.is_finite()) {
        return Err(Error::domain(format!(
            "tolerance must be positive, got {tol_m}"
        )));
    }

    let eval = |h: f64| coverage_radius_m(h, radio, env, tol_m).map(|c| (h, c));

    let grid: Vec<f64> = if h_min == h_max {
        vec![h_min]
    } else {
        let ratio = h_max / h_min;
        let n = ALTITUDE_GRID_POINTS;
        (0..n)
            .map(|i| match i {
                0 => h_min,
                i if i == n - 1 => h_max,
                i => h_min * ratio.powf(i as f64 / (n - 1) as f64),
            })
            .collect()
    };
    let coarse: Vec<(f64, CoverageResult)> =
        grid.par_iter().map(|&h| eval(h)).collect::<Result<_>>()?;

    let mut trace: Vec<(f64, CoverageResult)> = coarse.clone();
    let best_idx = argmax_lowest(&coarse);

    if coarse.len() > 1 {
        let lo = coarse[best_idx.saturating_sub(1)].0;
        let hi = coarse[(best_idx + 1).min(coarse.len() - 1)].0;
        golden_section(lo, hi, tol_m, &eval, &mut trace)?;
    }

    let best = argmax_lowest(&trace);
    let (altitude_m, cov) = trace[best];
    Ok(AltitudeSolution {
        altitude_m,
        radius_m: cov.radius_m,
        feasible: trace.iter().any(|(_, c)| c.feasible),
        search_trace: trace.iter().map(|(h, c)| (*h, c.radius_m)).collect(),
    })
}

/// Index of the largest radius; equal radii resolve to the lower altitude.
fn argmax_lowest(points: &[(f64, CoverageResult)]) -> usize {
    let mut best = 0;
    for (i, (h, c)) in points.iter().enumerate().skip(1) {
        let (bh, bc) = points[best];
        if c.radius_m > bc.radius_m || (c.radius_m == bc.radius_m && *h < bh) {
            best = i;
        }
    }
    best
}

fn golden_section<F>(
    mut a: f64,
    mut b: f64,
    tol_m: f64,
    eval: &F,
    trace: &mut Vec<(f64, CoverageResult)>,
) -> Result<()>
where
    F: Fn(f64) -> Result<(f64, CoverageResult)>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = eval(c)?;
    let mut fd = eval(d)?;
    trace.push(fc);
    trace.push(fd);
    while b - a > tol_m {
        // Keep the lower sub-bracket on ties.
        if fc.1.radius_m >= fd.1.radius_m {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c)?;
            trace.push(fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d)?;
            trace.push(fd);
        }
    }
    Ok(())
}
