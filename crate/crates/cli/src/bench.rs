//! `approach bench`: one multi-goal wavefront against repeated A*.
//!
//! Both methods run on the same random map and goal set; their path
//! lengths must agree exactly (both are optimal on a unit-cost grid), so
//! the only open question is wall time.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use approach_core::{
    inflate, multi_goal_bfs, CellIndex, Connectivity, Costmap, GridMap, Occupancy, Point,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::astar::astar_len;

pub struct BenchCase {
    pub goal_count: usize,
    /// Mean wall time per repetition, milliseconds.
    pub bfs_ms: f64,
    pub astar_ms: f64,
    pub reachable_goals: usize,
}

pub fn random_costmap(size: usize, density: f64, seed: u64) -> Costmap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut map =
        GridMap::new(size, size, 0.05, Point::new(0.0, 0.0), Occupancy::Free).unwrap();
    for row in 0..size as i32 {
        for col in 0..size as i32 {
            if rng.gen_bool(density) {
                map.set(CellIndex::new(col, row), Occupancy::Occupied).unwrap();
            }
        }
    }
    inflate(&map, 0.0, 0.0).unwrap()
}

fn free_cells(costmap: &Costmap) -> Vec<CellIndex> {
    let geom = costmap.geometry();
    (0..geom.height as i32)
        .flat_map(|row| (0..geom.width as i32).map(move |col| CellIndex::new(col, row)))
        .filter(|&c| !costmap.is_lethal(c))
        .collect()
}

/// Time both methods for every goal count. Lengths are compared on every
/// repetition; a mismatch is a planner defect and aborts the benchmark.
pub fn cmd_bench(
    size: usize,
    density: f64,
    seed: u64,
    goal_counts: &[usize],
    reps: usize,
    out_dir: Option<&Path>,
) -> Result<Vec<BenchCase>> {
    let costmap = random_costmap(size, density, seed);
    let free = free_cells(&costmap);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9E3779B97F4A7C15);
    let start = *free.choose(&mut rng).expect("map has free cells");

    let mut csv = String::from("goal_count,rep,bfs_ms,astar_total_ms\n");
    let mut cases = Vec::new();
    for &goal_count in goal_counts {
        if goal_count == 0 || goal_count > free.len() {
            bail!(
                "goal count {} not satisfiable on a map with {} free cells",
                goal_count,
                free.len()
            );
        }
        let goals: Vec<CellIndex> =
            free.choose_multiple(&mut rng, goal_count).copied().collect();
        let mut bfs_total = 0.0;
        let mut astar_total = 0.0;
        let mut reachable = 0;
        for rep in 0..reps {
            let t = Instant::now();
            let field = multi_goal_bfs(&costmap, start, &goals, Connectivity::Four, None)?;
            let bfs_ms = t.elapsed().as_secs_f64() * 1e3;

            let t = Instant::now();
            let astar: Vec<Option<u32>> =
                goals.iter().map(|&g| astar_len(&costmap, start, g)).collect();
            let astar_ms = t.elapsed().as_secs_f64() * 1e3;

            for (&g, &a) in goals.iter().zip(&astar) {
                if field.depth_of(g) != a {
                    bail!(
                        "length mismatch at goal ({}, {}): bfs {:?}, astar {:?}",
                        g.col,
                        g.row,
                        field.depth_of(g),
                        a
                    );
                }
            }
            reachable = astar.iter().flatten().count();
            bfs_total += bfs_ms;
            astar_total += astar_ms;
            writeln!(csv, "{},{},{:.3},{:.3}", goal_count, rep, bfs_ms, astar_ms).unwrap();
        }
        cases.push(BenchCase {
            goal_count,
            bfs_ms: bfs_total / reps as f64,
            astar_ms: astar_total / reps as f64,
            reachable_goals: reachable,
        });
    }
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        std::fs::write(dir.join("bench.csv"), csv)?;
    }
    Ok(cases)
}

pub fn bench_table(cases: &[BenchCase]) -> String {
    let mut out = String::from("goals  reachable  bfs_ms  astar_ms  speedup\n");
    for c in cases {
        writeln!(
            out,
            "{:<6} {:<10} {:<7.3} {:<9.3} {:.1}x",
            c.goal_count,
            c.reachable_goals,
            c.bfs_ms,
            c.astar_ms,
            c.astar_ms / c.bfs_ms
        )
        .unwrap();
    }
    out
}
