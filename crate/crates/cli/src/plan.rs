//! `approach plan`: one planning pass for one human, dumping the six
//! cost-stage images.

use std::path::Path;

use anyhow::{bail, Context, Result};
use approach_core::grid::write_pgm_p2;
use approach_core::{plan_once, PlanOutcome, Point};

use crate::scenario::World;

/// Run the pipeline for `world.humans[human_index]` and write the stage
/// PGMs into `out_dir`. Returns the outcome for the summary line.
pub fn cmd_plan(world: &World, human_index: usize, out_dir: &Path) -> Result<PlanOutcome> {
    let Some(human) = world.humans.get(human_index) else {
        bail!(
            "human index {} out of range ({} humans)",
            human_index,
            world.humans.len()
        );
    };
    let robot = Point::new(world.robot.x, world.robot.y);
    let outcome = plan_once(&world.costmap, robot, &human.pose, &human.params)?;

    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("creating {}", out_dir.display()))?;
    let geom = world.costmap.geometry();
    for (i, stage) in outcome.diagnostics.stages.iter().enumerate() {
        let path = out_dir.join(format!("stage_{}_{}.pgm", i + 1, stage.name));
        write_pgm_p2(&path, geom.width, geom.height, &stage.rasterize(geom))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(outcome)
}

pub fn summary_line(outcome: &PlanOutcome) -> String {
    let b = &outcome.breakdown;
    format!(
        "goal cell=({},{}) x={:.3}m y={:.3}m alpha={:.1}deg total={:.4} (cm={:.4} path={:.4} dist={:.4} angle={:.4})",
        outcome.best.cell.col,
        outcome.best.cell.row,
        outcome.goal.x,
        outcome.goal.y,
        outcome.goal.alpha_r.to_degrees(),
        b.total,
        b.c_cm,
        b.c_path,
        b.c_dist,
        b.c_angle,
    )
}
