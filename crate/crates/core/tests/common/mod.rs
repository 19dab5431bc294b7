#![allow(dead_code)]

use approach_core::{CellIndex, Costmap, GridMap, Occupancy, Point};
use rand::Rng;

/// Random occupancy map with the given obstacle density; borders stay free.
pub fn random_map<R: Rng>(
    rng: &mut R,
    width: usize,
    height: usize,
    resolution: f64,
    density: f64,
) -> GridMap {
    let mut m = GridMap::new(width, height, resolution, Point::new(0.0, 0.0), Occupancy::Free)
        .unwrap();
    for row in 0..height as i32 {
        for col in 0..width as i32 {
            if rng.gen_bool(density) {
                m.set(CellIndex::new(col, row), Occupancy::Occupied).unwrap();
            }
        }
    }
    m
}

/// Costmap with the map's occupied cells lethal and everything else free;
/// no inflation, so tests control lethality cell by cell.
pub fn lethal_only_costmap(map: &GridMap) -> Costmap {
    let mut cm = Costmap::free(map.width(), map.height(), map.resolution(), map.origin()).unwrap();
    for row in 0..map.height() as i32 {
        for col in 0..map.width() as i32 {
            let c = CellIndex::new(col, row);
            if map.get(c).unwrap() != Occupancy::Free {
                cm.set(c, 255).unwrap();
            }
        }
    }
    cm
}

/// Free cells of a costmap, row-major order.
pub fn free_cells(cm: &Costmap) -> Vec<CellIndex> {
    let mut out = Vec::new();
    for row in 0..cm.height() as i32 {
        for col in 0..cm.width() as i32 {
            let c = CellIndex::new(col, row);
            if !cm.is_lethal(c) {
                out.push(c);
            }
        }
    }
    out
}

/// Single-source BFS depths written independently of the library: a plain
/// frontier sweep with its own visited bookkeeping.
pub fn reference_bfs(
    cm: &Costmap,
    start: CellIndex,
    offsets: &[(i32, i32)],
    depth_cap: Option<u32>,
) -> Vec<Option<u32>> {
    let (w, h) = (cm.width() as i32, cm.height() as i32);
    let mut dist: Vec<Option<u32>> = vec![None; (w * h) as usize];
    let at = |c: CellIndex| (c.row * w + c.col) as usize;
    if cm.is_lethal(start) {
        return dist;
    }
    dist[at(start)] = Some(0);
    let mut frontier = vec![start];
    let mut d = 0u32;
    while !frontier.is_empty() {
        if depth_cap.is_some_and(|cap| d >= cap) {
            break;
        }
        let mut next = Vec::new();
        for cell in frontier {
            for (dx, dy) in offsets {
                let n = CellIndex::new(cell.col + dx, cell.row + dy);
                if n.col < 0 || n.row < 0 || n.col >= w || n.row >= h {
                    continue;
                }
                if dist[at(n)].is_none() && !cm.is_lethal(n) {
                    dist[at(n)] = Some(d + 1);
                    next.push(n);
                }
            }
        }
        frontier = next;
        d += 1;
    }
    dist
}
