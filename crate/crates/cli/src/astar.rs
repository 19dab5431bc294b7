//! Single-goal A* on the costmap, used as the per-goal reference in the
//! benchmark. Manhattan heuristic, 4-connected, unit step cost: admissible
//! and consistent, so path lengths are optimal and must match BFS depths.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use approach_core::{CellIndex, Costmap};

/// Length in steps of a shortest path from `start` to `goal`, or `None`
/// when the goal is unreachable or lethal.
pub fn astar_len(costmap: &Costmap, start: CellIndex, goal: CellIndex) -> Option<u32> {
    let geom = costmap.geometry();
    if !geom.contains(start) || !geom.contains(goal) {
        return None;
    }
    if costmap.is_lethal(start) || costmap.is_lethal(goal) {
        return None;
    }
    let w = geom.width as i32;
    let h = geom.height as i32;
    let idx = |c: CellIndex| (c.row * w + c.col) as usize;
    let manhattan =
        |c: CellIndex| ((c.col - goal.col).abs() + (c.row - goal.row).abs()) as u32;

    let mut g = vec![u32::MAX; (w * h) as usize];
    let mut heap = BinaryHeap::new();
    g[idx(start)] = 0;
    heap.push(Reverse((manhattan(start), 0u32, start.col, start.row)));

    while let Some(Reverse((_, cost, col, row))) = heap.pop() {
        let cell = CellIndex::new(col, row);
        if cell == goal {
            return Some(cost);
        }
        if cost > g[idx(cell)] {
            continue;
        }
        for (dc, dr) in [(1, 0), (0, 1), (-1, 0), (0, -1)] {
            let next = CellIndex::new(col + dc, row + dr);
            if !geom.contains(next) || costmap.is_lethal(next) {
                continue;
            }
            let tentative = cost + 1;
            if tentative < g[idx(next)] {
                g[idx(next)] = tentative;
                heap.push(Reverse((
                    tentative + manhattan(next),
                    tentative,
                    next.col,
                    next.row,
                )));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use approach_core::{inflate, GridMap, Occupancy, Point};

    fn open_costmap(width: usize, height: usize) -> Costmap {
        let map =
            GridMap::new(width, height, 0.05, Point::new(0.0, 0.0), Occupancy::Free).unwrap();
        inflate(&map, 0.0, 0.0).unwrap()
    }

    #[test]
    fn straight_line_length() {
        let cm = open_costmap(20, 20);
        assert_eq!(
            astar_len(&cm, CellIndex::new(2, 3), CellIndex::new(12, 3)),
            Some(10)
        );
    }

    #[test]
    fn detours_around_a_wall() {
        let mut map =
            GridMap::new(20, 20, 0.05, Point::new(0.0, 0.0), Occupancy::Free).unwrap();
        for row in 0..19 {
            map.set(CellIndex::new(10, row), Occupancy::Occupied).unwrap();
        }
        let cm = inflate(&map, 0.0, 0.0).unwrap();
        // 5 -> 15 horizontally is blocked except through row 19.
        let len = astar_len(&cm, CellIndex::new(5, 0), CellIndex::new(15, 0)).unwrap();
        assert_eq!(len, 10 + 2 * 19);
    }

    #[test]
    fn unreachable_goal_is_none() {
        let mut map =
            GridMap::new(10, 10, 0.05, Point::new(0.0, 0.0), Occupancy::Free).unwrap();
        for row in 0..10 {
            map.set(CellIndex::new(5, row), Occupancy::Occupied).unwrap();
        }
        let cm = inflate(&map, 0.0, 0.0).unwrap();
        assert_eq!(astar_len(&cm, CellIndex::new(1, 1), CellIndex::new(8, 8)), None);
    }
}
