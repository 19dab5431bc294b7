//! Integer circle rasterization used to build ring-shaped search bands.

use super::{CellIndex, Geometry};

/// In-bounds cells whose center distance from `center` rounds to `radius`.
///
/// Ring `r` is exactly the band `r - 0.5 <= dist < r + 0.5` (the center cell
/// alone for `r = 0`), so consecutive radii tile the plane without gaps or
/// overlaps. The membership test uses only integer arithmetic:
/// `(2r-1)^2 <= 4*d2 < (2r+1)^2` with `d2 = dx^2 + dy^2`.
///
/// Cells are ordered by increasing angle from the +x axis, counterclockwise;
/// off-map cells are silently dropped.
pub fn raster_circle(geom: &Geometry, center: CellIndex, radius: u32) -> Vec<CellIndex> {
    let r = radius as i64;
    if r == 0 {
        return if geom.contains(center) {
            vec![center]
        } else {
            vec![]
        };
    }
    let lo = (2 * r - 1) * (2 * r - 1);
    let hi = (2 * r + 1) * (2 * r + 1);
    let mut ring: Vec<(f64, CellIndex)> = Vec::with_capacity((8 * r) as usize);
    for dy in -r..=r {
        for dx in -r..=r {
            let d2 = 4 * (dx * dx + dy * dy);
            if lo <= d2 && d2 < hi {
                let cell = CellIndex::new(center.col + dx as i32, center.row + dy as i32);
                if !geom.contains(cell) {
                    continue;
                }
                let mut angle = (dy as f64).atan2(dx as f64);
                if angle < 0.0 {
                    angle += std::f64::consts::TAU;
                }
                ring.push((angle, cell));
            }
        }
    }
    ring.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then_with(|| (a.1.row, a.1.col).cmp(&(b.1.row, b.1.col)))
    });
    ring.into_iter().map(|(_, c)| c).collect()
}
