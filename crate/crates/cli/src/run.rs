//! `approach run`: execute every approach of a scenario and report the
//! final poses, the way the original experiment toured a room.
//!
//! The robot visits the humans in file order, `rounds` times over, and
//! each approach starts from the final pose of the previous one.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use approach_core::{run_approach, ApproachResult, SearchMode};

use crate::scenario::World;

pub struct RunRow {
    pub round: u32,
    pub human: usize,
    pub mode: SearchMode,
    pub result: ApproachResult,
}

pub struct RunReport {
    pub rows: Vec<RunRow>,
    pub failures: usize,
}

impl RunReport {
    pub fn aggregate(&self, mode: SearchMode) -> Option<Aggregate> {
        let rows: Vec<&RunRow> = self
            .rows
            .iter()
            .filter(|r| r.mode == mode && r.result.success)
            .collect();
        if rows.is_empty() {
            return None;
        }
        let dist = Stats::over(rows.iter().map(|r| r.result.final_distance_m));
        // Bidirectional approaches land beside the person; the sign only
        // says which side, so aggregate the magnitude.
        let offset = Stats::over(rows.iter().map(|r| match mode {
            SearchMode::Unidirectional => r.result.final_offset_deg,
            SearchMode::Bidirectional => r.result.final_offset_deg.abs(),
        }));
        Some(Aggregate {
            n: rows.len(),
            dist,
            offset_deg: offset,
        })
    }
}

pub struct Aggregate {
    pub n: usize,
    pub dist: Stats,
    pub offset_deg: Stats,
}

pub struct Stats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

impl Stats {
    fn over(values: impl Iterator<Item = f64>) -> Stats {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        let mut sum = 0.0;
        let mut n = 0usize;
        for v in values {
            min = min.min(v);
            max = max.max(v);
            sum += v;
            n += 1;
        }
        Stats {
            min,
            max,
            mean: sum / n as f64,
        }
    }
}

/// Run all approaches and write `report.csv`, `summary.txt` and one
/// trajectory CSV per approach into `out_dir`.
pub fn cmd_run(world: &World, out_dir: &Path) -> Result<RunReport> {
    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("creating {}", out_dir.display()))?;

    let mut robot = world.robot;
    let mut rows = Vec::new();
    let mut failures = 0usize;
    for round in 1..=world.rounds {
        for (i, human) in world.humans.iter().enumerate() {
            let result = run_approach(
                &world.costmap,
                &robot,
                &human.pose,
                &human.params,
                &world.replan,
            )?;
            robot = result.final_state;
            if !result.success {
                failures += 1;
            }
            write_trajectory(
                &out_dir.join(format!("trajectory_r{:02}_h{:02}.csv", round, i)),
                &result,
            )?;
            rows.push(RunRow {
                round,
                human: i,
                mode: human.mode,
                result,
            });
        }
    }
    let report = RunReport { rows, failures };
    std::fs::write(out_dir.join("report.csv"), report_csv(&report))?;
    std::fs::write(out_dir.join("summary.txt"), summary_text(&report))?;
    Ok(report)
}

fn write_trajectory(path: &Path, result: &ApproachResult) -> Result<()> {
    let mut csv =
        String::from("tick,t_s,x_m,y_m,theta_rad,goal_x_m,goal_y_m,goal_alpha_rad,total_cost\n");
    for p in &result.trajectory {
        writeln!(
            csv,
            "{},{:.3},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
            p.tick, p.t_s, p.x, p.y, p.theta, p.goal.x, p.goal.y, p.goal.alpha_r, p.total_cost
        )
        .unwrap();
    }
    std::fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn mode_name(mode: SearchMode) -> &'static str {
    match mode {
        SearchMode::Unidirectional => "unidirectional",
        SearchMode::Bidirectional => "bidirectional",
    }
}

pub fn report_csv(report: &RunReport) -> String {
    let mut csv = String::from(
        "round,human,mode,success,ticks,final_x_m,final_y_m,final_theta_rad,final_distance_m,final_offset_deg,failure\n",
    );
    for row in &report.rows {
        let r = &row.result;
        writeln!(
            csv,
            "{},{},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.2},{}",
            row.round,
            row.human,
            mode_name(row.mode),
            r.success,
            r.ticks,
            r.final_state.x,
            r.final_state.y,
            r.final_state.theta,
            r.final_distance_m,
            r.final_offset_deg,
            r.failure.as_deref().unwrap_or(""),
        )
        .unwrap();
    }
    csv
}

pub fn summary_text(report: &RunReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "approaches: {} ({} ok, {} failed)",
        report.rows.len(),
        report.rows.len() - report.failures,
        report.failures
    )
    .unwrap();
    for mode in [SearchMode::Unidirectional, SearchMode::Bidirectional] {
        match report.aggregate(mode) {
            Some(a) => writeln!(
                out,
                "{}: n={} distance min/mean/max = {:.3}/{:.3}/{:.3} m, offset min/mean/max = {:.1}/{:.1}/{:.1} deg",
                mode_name(mode),
                a.n,
                a.dist.min,
                a.dist.mean,
                a.dist.max,
                a.offset_deg.min,
                a.offset_deg.mean,
                a.offset_deg.max
            )
            .unwrap(),
            None => writeln!(out, "{}: n=0", mode_name(mode)).unwrap(),
        }
    }
    out
}
