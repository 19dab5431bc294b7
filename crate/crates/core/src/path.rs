//! One-shot multi-goal breadth-first search over the costmap.
//!
//! A single wavefront from the robot cell yields the optimal grid path
//! length to every goal cell at once, instead of one search per goal.

use crate::error::PlanError;
use crate::grid::{CellIndex, Costmap, Geometry};
use std::collections::VecDeque;

const UNREACHED: u32 = u32::MAX;

/// Neighborhood used when expanding the wavefront.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    Four,
    Eight,
}

impl Connectivity {
    pub fn offsets(self) -> &'static [(i32, i32)] {
        match self {
            Connectivity::Four => &[(1, 0), (0, 1), (-1, 0), (0, -1)],
            Connectivity::Eight => &[
                (1, 0),
                (0, 1),
                (-1, 0),
                (0, -1),
                (1, 1),
                (-1, 1),
                (-1, -1),
                (1, -1),
            ],
        }
    }
}

/// Result of a BFS wavefront: per-cell depth and parent links back to the
/// start cell, limited to the traversed region.
#[derive(Debug, Clone, PartialEq)]
pub struct PathField {
    geometry: Geometry,
    depth: Vec<u32>,
    parent: Vec<u32>,
    start: CellIndex,
}

impl PathField {
    /// Step count from the start to `c`, if the wavefront reached it.
    pub fn depth_of(&self, c: CellIndex) -> Option<u32> {
        if !self.geometry.contains(c) {
            return None;
        }
        match self.depth[self.geometry.index_of(c)] {
            UNREACHED => None,
            d => Some(d),
        }
    }

    pub fn start(&self) -> CellIndex {
        self.start
    }

    /// Cells from the start to `c` inclusive, or None if `c` was not reached.
    pub fn path_to(&self, c: CellIndex) -> Option<Vec<CellIndex>> {
        self.depth_of(c)?;
        let width = self.geometry.width;
        let mut cells = Vec::new();
        let mut idx = self.geometry.index_of(c);
        loop {
            cells.push(CellIndex::new((idx % width) as i32, (idx / width) as i32));
            if self.parent[idx] == UNREACHED {
                break;
            }
            idx = self.parent[idx] as usize;
        }
        cells.reverse();
        Some(cells)
    }
}

/// Expand one BFS wavefront from `start` over non-lethal cells and report
/// the depth of every reachable cell in `goals`.
///
/// Expansion stops once all goals are reached or the wavefront passes
/// `depth_cap` steps. Unit step cost for every neighbor offset; neighbors
/// are visited in a fixed order, so the field is deterministic.
pub fn multi_goal_bfs(
    costmap: &Costmap,
    start: CellIndex,
    goals: &[CellIndex],
    connectivity: Connectivity,
    depth_cap: Option<u32>,
) -> Result<PathField, PlanError> {
    let geom = *costmap.geometry();
    if !geom.contains(start) {
        return Err(PlanError::CellOutOfBounds {
            col: start.col,
            row: start.row,
        });
    }
    if costmap.is_lethal(start) {
        return Err(PlanError::RobotInLethalCell {
            col: start.col,
            row: start.row,
        });
    }

    let n = geom.width * geom.height;
    let mut depth = vec![UNREACHED; n];
    let mut parent = vec![UNREACHED; n];
    let mut is_goal = vec![false; n];
    let mut missing = 0usize;
    for g in goals {
        if geom.contains(*g) {
            let idx = geom.index_of(*g);
            if !is_goal[idx] {
                is_goal[idx] = true;
                missing += 1;
            }
        }
    }

    let cap = depth_cap.unwrap_or(u32::MAX);
    let offsets = connectivity.offsets();
    let start_idx = geom.index_of(start);
    depth[start_idx] = 0;
    if is_goal[start_idx] {
        missing -= 1;
    }
    let mut queue = VecDeque::new();
    queue.push_back(start_idx);

    while let Some(idx) = queue.pop_front() {
        if missing == 0 {
            break;
        }
        let d = depth[idx];
        if d >= cap {
            continue;
        }
        let col = (idx % geom.width) as i32;
        let row = (idx / geom.width) as i32;
        for (dx, dy) in offsets {
            let next = CellIndex::new(col + dx, row + dy);
            if !geom.contains(next) {
                continue;
            }
            let next_idx = geom.index_of(next);
            if depth[next_idx] != UNREACHED || costmap.is_lethal(next) {
                continue;
            }
            depth[next_idx] = d + 1;
            parent[next_idx] = idx as u32;
            if is_goal[next_idx] {
                missing -= 1;
            }
            queue.push_back(next_idx);
        }
    }

    Ok(PathField {
        geometry: geom,
        depth,
        parent,
        start,
    })
}
