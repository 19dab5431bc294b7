//! `approach render`: a PPM snapshot of a scenario, one pixel per cell.
//!
//! Obstacles are black, unknown space gray, free space white. Each
//! human's search area is tinted, humans are drawn as large arrows and
//! (when a run report is given) the final robot poses as small arrows.

use std::path::Path;

use anyhow::{Context, Result};
use approach_core::{define_search_area, CellIndex, Occupancy, Point};

use crate::scenario::World;

const FREE: [u8; 3] = [255, 255, 255];
const OCCUPIED: [u8; 3] = [0, 0, 0];
const UNKNOWN: [u8; 3] = [160, 160, 160];
const SEARCH_TINT: [u8; 3] = [199, 230, 201];
const HUMAN: [u8; 3] = [198, 40, 40];
const ROBOT: [u8; 3] = [21, 60, 188];

struct Canvas {
    width: usize,
    height: usize,
    rgb: Vec<u8>,
}

impl Canvas {
    fn new(width: usize, height: usize) -> Canvas {
        Canvas {
            width,
            height,
            rgb: vec![0; width * height * 3],
        }
    }

    /// Paint a map cell; the image keeps north (growing y) up.
    fn put(&mut self, cell: CellIndex, color: [u8; 3]) {
        if cell.col < 0 || cell.row < 0 {
            return;
        }
        let (col, row) = (cell.col as usize, cell.row as usize);
        if col >= self.width || row >= self.height {
            return;
        }
        let py = self.height - 1 - row;
        let i = (py * self.width + col) * 3;
        self.rgb[i..i + 3].copy_from_slice(&color);
    }

    fn line(&mut self, from: CellIndex, to: CellIndex, color: [u8; 3]) {
        let (mut x, mut y) = (from.col, from.row);
        let dx = (to.col - from.col).abs();
        let dy = -(to.row - from.row).abs();
        let sx = if from.col < to.col { 1 } else { -1 };
        let sy = if from.row < to.row { 1 } else { -1 };
        let mut err = dx + dy;
        loop {
            self.put(CellIndex::new(x, y), color);
            if x == to.col && y == to.row {
                break;
            }
            let e2 = 2 * err;
            if e2 >= dy {
                err += dy;
                x += sx;
            }
            if e2 <= dx {
                err += dx;
                y += sy;
            }
        }
    }
}

/// Render `world` to `out_path` as binary PPM. `robot_poses` holds final
/// poses from a run report and may be empty.
pub fn cmd_render(world: &World, robot_poses: &[(f64, f64, f64)], out_path: &Path) -> Result<()> {
    let geom = *world.costmap.geometry();
    let mut canvas = Canvas::new(geom.width, geom.height);

    for row in 0..geom.height as i32 {
        for col in 0..geom.width as i32 {
            let cell = CellIndex::new(col, row);
            let color = match world.map.get(cell)? {
                Occupancy::Free => FREE,
                Occupancy::Occupied => OCCUPIED,
                Occupancy::Unknown => UNKNOWN,
            };
            canvas.put(cell, color);
        }
    }

    for human in &world.humans {
        for candidate in define_search_area(&world.costmap, &human.pose, &human.params)? {
            if world.map.get(candidate.cell)? == Occupancy::Free {
                canvas.put(candidate.cell, SEARCH_TINT);
            }
        }
    }
    for human in &world.humans {
        arrow(
            &mut canvas,
            &geom,
            human.pose.x,
            human.pose.y,
            human.pose.heading(),
            0.45,
            HUMAN,
        );
    }
    for &(x, y, theta) in robot_poses {
        arrow(&mut canvas, &geom, x, y, theta, 0.3, ROBOT);
    }

    let mut bytes = format!("P6\n{} {}\n255\n", canvas.width, canvas.height).into_bytes();
    bytes.extend_from_slice(&canvas.rgb);
    std::fs::write(out_path, bytes)
        .with_context(|| format!("writing {}", out_path.display()))?;
    Ok(())
}

/// Arrow of `len` meters starting at the pose, with a two-stroke head.
fn arrow(
    canvas: &mut Canvas,
    geom: &approach_core::Geometry,
    x: f64,
    y: f64,
    theta: f64,
    len: f64,
    color: [u8; 3],
) {
    let to_cell = |p: Point| {
        CellIndex::new(
            ((p.x - geom.origin.x) / geom.resolution + 0.5).floor() as i32,
            ((p.y - geom.origin.y) / geom.resolution + 0.5).floor() as i32,
        )
    };
    let base = to_cell(Point::new(x, y));
    let tip = to_cell(Point::new(x + len * theta.cos(), y + len * theta.sin()));
    canvas.line(base, tip, color);
    for side in [-1.0, 1.0] {
        let a = theta + side * 150f64.to_radians();
        let barb = to_cell(Point::new(
            x + len * theta.cos() + 0.4 * len * a.cos(),
            y + len * theta.sin() + 0.4 * len * a.sin(),
        ));
        canvas.line(tip, barb, color);
    }
}

/// Final robot poses (x, y, theta) of the successful rows of a
/// `report.csv` written by `approach run`.
pub fn poses_from_report(path: &Path) -> Result<Vec<(f64, f64, f64)>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading report {}", path.display()))?;
    let mut poses = Vec::new();
    for (i, line) in text.lines().enumerate().skip(1) {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 10 {
            anyhow::bail!("report line {}: expected 10+ columns", i + 1);
        }
        if fields[3] != "true" {
            continue;
        }
        let parse = |s: &str, what: &str| -> Result<f64> {
            s.parse()
                .with_context(|| format!("report line {}: bad {}", i + 1, what))
        };
        poses.push((
            parse(fields[5], "final_x_m")?,
            parse(fields[6], "final_y_m")?,
            parse(fields[7], "final_theta_rad")?,
        ));
    }
    Ok(poses)
}
