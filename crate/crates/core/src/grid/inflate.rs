//! Obstacle inflation: turns a [`GridMap`] into a [`Costmap`] by expanding
//! each obstacle into a lethal disc plus a linearly decaying cost band.

use super::{Costmap, GridMap, Occupancy, COST_LETHAL};
use crate::error::PlanError;

const INF: f64 = 1e20;

/// Build the inflated costmap for `map`.
///
/// Distances are Euclidean, measured between cell centers, to the nearest
/// Occupied cell. Cells at distance `<= robot_radius` become 255, the band
/// up to `inflation_radius` decays linearly from 254 to 1, everything
/// farther is 0. Unknown cells are lethal themselves but do not inflate
/// their surroundings.
pub fn inflate(
    map: &GridMap,
    robot_radius: f64,
    inflation_radius: f64,
) -> Result<Costmap, PlanError> {
    if !(robot_radius >= 0.0) || !(inflation_radius >= robot_radius) {
        return Err(PlanError::InvalidParameter(format!(
            "need inflation_radius >= robot_radius >= 0, got robot {} inflation {}",
            robot_radius, inflation_radius
        )));
    }
    let width = map.width();
    let height = map.height();
    let res = map.resolution();

    let seeds: Vec<f64> = map
        .cells()
        .iter()
        .map(|&c| if c == Occupancy::Occupied { 0.0 } else { INF })
        .collect();
    let dist2 = edt_squared(&seeds, width, height);

    // Radii in cell units; the epsilon absorbs rounding in d/resolution so
    // a cell at exactly the robot radius stays lethal.
    let rr = robot_radius / res;
    let ir = inflation_radius / res;
    let eps = 1e-9;

    let cost = map
        .cells()
        .iter()
        .zip(&dist2)
        .map(|(&occ, &d2)| match occ {
            Occupancy::Occupied | Occupancy::Unknown => COST_LETHAL,
            Occupancy::Free => {
                let d = d2.sqrt();
                if d <= rr + eps {
                    COST_LETHAL
                } else if d > ir + eps {
                    0
                } else {
                    let t = ((d - rr) / (ir - rr)).clamp(0.0, 1.0);
                    (254.0 - 253.0 * t).round().clamp(1.0, 254.0) as u8
                }
            }
        })
        .collect();

    Ok(Costmap::from_parts(*map.geometry(), cost))
}

/// Exact squared Euclidean distance transform (two-pass lower envelope),
/// in cell units. `f` holds 0 at seeds and a large value elsewhere.
fn edt_squared(f: &[f64], width: usize, height: usize) -> Vec<f64> {
    let mut out = vec![0.0; width * height];
    let mut row_buf = vec![0.0; width];
    for y in 0..height {
        row_buf.copy_from_slice(&f[y * width..(y + 1) * width]);
        let d = dt_1d(&row_buf);
        out[y * width..(y + 1) * width].copy_from_slice(&d);
    }
    let mut col_buf = vec![0.0; height];
    for x in 0..width {
        for y in 0..height {
            col_buf[y] = out[y * width + x];
        }
        let d = dt_1d(&col_buf);
        for y in 0..height {
            out[y * width + x] = d[y];
        }
    }
    out
}

fn dt_1d(f: &[f64]) -> Vec<f64> {
    let n = f.len();
    let mut d = vec![0.0; n];
    let mut v = vec![0usize; n];
    let mut z = vec![0.0; n + 1];
    let mut k = 0usize;
    z[0] = -INF;
    z[1] = INF;
    for q in 1..n {
        let mut s;
        loop {
            let p = v[k];
            s = (f[q] + (q * q) as f64 - f[p] - (p * p) as f64) / (2.0 * (q - p) as f64);
            if s <= z[k] && k > 0 {
                k -= 1;
            } else {
                break;
            }
        }
        k += 1;
        v[k] = q;
        z[k] = s;
        z[k + 1] = INF;
    }
    k = 0;
    for q in 0..n {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let p = v[k];
        d[q] = (q as f64 - p as f64).powi(2) + f[p];
    }
    d
}
