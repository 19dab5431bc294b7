//! The four cost layers, best-cell selection and the single-shot planning
//! pipeline [`plan_once`].

use crate::angle::wrap_to_pi;
use crate::error::{PlanError, PruneStage};
use crate::grid::{CellIndex, Costmap, Geometry, Point};
use crate::path::{multi_goal_bfs, PathField};
use crate::search::{
    define_search_area, sectors_for, ApproachParams, CandidateCell, HumanPose, Sector,
};

/// The four cost layers of one candidate plus their sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostBreakdown {
    pub c_cm: f64,
    pub c_path: f64,
    pub c_dist: f64,
    pub c_angle: f64,
    pub total: f64,
}

impl CostBreakdown {
    /// Panics when a layer is unset; the pipeline sets all four before
    /// selection.
    fn from_candidate(c: &CandidateCell) -> Self {
        let c_cm = c.c_cm.expect("c_cm not set");
        let c_path = c.c_path.expect("c_path not set");
        let c_dist = c.c_dist.expect("c_dist not set");
        let c_angle = c.c_angle.expect("c_angle not set");
        CostBreakdown {
            c_cm,
            c_path,
            c_dist,
            c_angle,
            total: c_cm + c_path + c_dist + c_angle,
        }
    }
}

/// Where the robot should stand and where it should look.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoalPose {
    pub x: f64,
    pub y: f64,
    /// Robot orientation facing the human, normalized to `(-pi, pi]`.
    pub alpha_r: f64,
}

/// One cost layer over the map, stored sparsely: only cells that survived
/// the corresponding stage carry a value.
#[derive(Debug, Clone, PartialEq)]
pub struct StageGrid {
    pub name: &'static str,
    pub cells: Vec<(CellIndex, f64)>,
}

impl StageGrid {
    /// Render the layer as grayscale: background 0, surviving cells
    /// min-max normalized into [1, 255] (255 everywhere when the layer is
    /// flat), so nonzero pixels are exactly the surviving set.
    pub fn rasterize(&self, geom: &Geometry) -> Vec<u8> {
        let mut img = vec![0u8; geom.width * geom.height];
        if self.cells.is_empty() {
            return img;
        }
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for (_, v) in &self.cells {
            min = min.min(*v);
            max = max.max(*v);
        }
        for (cell, v) in &self.cells {
            let px = if max > min {
                1 + ((v - min) / (max - min) * 254.0).round() as u8
            } else {
                255
            };
            img[geom.index_of(*cell)] = px;
        }
        img
    }
}

/// Candidate counts after each pruning stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StageSurvivors {
    pub search_area: usize,
    pub costmap: usize,
    pub path: usize,
}

/// Everything worth inspecting about one planning run.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanDiagnostics {
    /// The six layers: search area mask, costmap, path, distance, angle, total.
    pub stages: Vec<StageGrid>,
    pub survivors: StageSurvivors,
    pub chosen: CellIndex,
    pub depth_cap: u32,
    /// BFS path from the robot cell to the chosen cell, inclusive.
    pub bfs_path: Vec<CellIndex>,
}

/// Goal pose, winning candidate and diagnostics of one [`plan_once`] call.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanOutcome {
    pub goal: GoalPose,
    pub best: CandidateCell,
    pub breakdown: CostBreakdown,
    pub diagnostics: PlanDiagnostics,
    /// The BFS field of this plan, for following paths to any survivor.
    pub path_field: PathField,
}

/// Set `c_cm = C(x_i, y_i) * m_cm` per cell and drop lethal cells.
pub fn costmap_cost(s: Vec<CandidateCell>, costmap: &Costmap, m_cm: f64) -> Vec<CandidateCell> {
    s.into_iter()
        .filter_map(|mut c| {
            let cost = costmap.get(c.cell).ok()?;
            if cost >= costmap.lethal_threshold() {
                return None;
            }
            c.c_cm = Some(cost as f64 * m_cm);
            Some(c)
        })
        .collect()
}

/// Set `c_path = depth * resolution * m_path` from a BFS field and drop
/// cells the wavefront never reached.
pub fn apply_path_costs(
    s: Vec<CandidateCell>,
    field: &PathField,
    resolution: f64,
    m_path: f64,
) -> Vec<CandidateCell> {
    s.into_iter()
        .filter_map(|mut c| {
            let depth = field.depth_of(c.cell)?;
            c.c_path = Some(depth as f64 * resolution * m_path);
            c.reachable = true;
            Some(c)
        })
        .collect()
}

/// Set `c_dist = |r_i - r_opt| * m_dist` per cell.
pub fn distance_cost(s: Vec<CandidateCell>, m_dist: f64, r_opt: f64) -> Vec<CandidateCell> {
    s.into_iter()
        .map(|mut c| {
            c.c_dist = Some((c.r_i - r_opt).abs() * m_dist);
            c
        })
        .collect()
}

/// Set `c_angle` per cell: angular distance to the nearest sector center,
/// times `m_angle`. `heading` converts the stored heading-relative cell
/// angle back to the world frame of the sector centers.
pub fn angle_cost(
    s: Vec<CandidateCell>,
    sectors: &[Sector],
    heading: f64,
    m_angle: f64,
) -> Vec<CandidateCell> {
    s.into_iter()
        .map(|mut c| {
            let bearing = heading + c.alpha_i;
            let err = sectors
                .iter()
                .map(|sec| wrap_to_pi(sec.center - bearing).abs())
                .fold(f64::INFINITY, f64::min);
            c.c_angle = Some(err * m_angle);
            c
        })
        .collect()
}

/// Argmin of the total cost. Ties go to the lower path cost, then the
/// lower row-major cell index.
///
/// All four layers must be set on every candidate. An empty `s` reports
/// `NoGoalFound` at the path stage, the last stage that prunes.
pub fn select_best(s: &[CandidateCell]) -> Result<(CandidateCell, CostBreakdown), PlanError> {
    let mut best: Option<(CandidateCell, CostBreakdown)> = None;
    for c in s {
        let b = CostBreakdown::from_candidate(c);
        let better = match &best {
            None => true,
            Some((bc, bb)) => {
                (b.total, b.c_path, (c.cell.row, c.cell.col))
                    < (bb.total, bb.c_path, (bc.cell.row, bc.cell.col))
            }
        };
        if better {
            best = Some((*c, b));
        }
    }
    best.ok_or(PlanError::NoGoalFound {
        stage: PruneStage::Path,
    })
}

/// Goal pose standing on `best` and looking at the human center.
pub fn goal_pose(
    best: &CandidateCell,
    human: &HumanPose,
    geom: &Geometry,
) -> Result<GoalPose, PlanError> {
    let human_cell = geom.world_to_cell(human.position())?;
    if best.cell == human_cell {
        return Err(PlanError::DegenerateGeometry);
    }
    let p = geom.cell_to_world(best.cell)?;
    let alpha_r = wrap_to_pi((human.y - p.y).atan2(human.x - p.x));
    Ok(GoalPose {
        x: p.x,
        y: p.y,
        alpha_r,
    })
}

fn stage_from_mask(name: &'static str, s: &[CandidateCell]) -> StageGrid {
    StageGrid {
        name,
        cells: s.iter().map(|c| (c.cell, 1.0)).collect(),
    }
}

fn stage_from_layer(
    name: &'static str,
    s: &[CandidateCell],
    get: impl Fn(&CandidateCell) -> f64,
) -> StageGrid {
    StageGrid {
        name,
        cells: s.iter().map(|c| (c.cell, get(c))).collect(),
    }
}

/// Full planning pipeline: search area, four cost layers, selection.
///
/// `robot` is the robot's current world position (its cell seeds the path
/// search). Errors carry the stage at which the candidate set became
/// empty; two calls with identical inputs return identical outcomes.
pub fn plan_once(
    costmap: &Costmap,
    robot: Point,
    human: &HumanPose,
    params: &ApproachParams,
) -> Result<PlanOutcome, PlanError> {
    let geom = *costmap.geometry();
    let res = geom.resolution;

    let area = define_search_area(costmap, human, params)?;
    if area.is_empty() {
        return Err(PlanError::NoGoalFound {
            stage: PruneStage::SearchArea,
        });
    }
    let stage_mask = stage_from_mask("search_area", &area);
    let n_area = area.len();

    let rated = costmap_cost(area, costmap, params.m_cm);
    if rated.is_empty() {
        return Err(PlanError::NoGoalFound {
            stage: PruneStage::CostmapCost,
        });
    }
    let stage_cm = stage_from_layer("costmap", &rated, |c| c.c_cm.unwrap());
    let n_costmap = rated.len();

    let robot_cell = costmap.world_to_cell(robot)?;
    let cap = depth_cap(robot, human, params, res);
    let goals: Vec<CellIndex> = rated.iter().map(|c| c.cell).collect();
    let field = multi_goal_bfs(costmap, robot_cell, &goals, params.connectivity, Some(cap))?;
    let reached = apply_path_costs(rated, &field, res, params.m_path);
    if reached.is_empty() {
        return Err(PlanError::NoGoalFound {
            stage: PruneStage::Path,
        });
    }
    let stage_path = stage_from_layer("path", &reached, |c| c.c_path.unwrap());
    let n_path = reached.len();

    let sectors = sectors_for(human, params);
    let rated = distance_cost(reached, params.m_dist, params.r_opt);
    let stage_dist = stage_from_layer("distance", &rated, |c| c.c_dist.unwrap());
    let rated = angle_cost(rated, &sectors, human.heading(), params.m_angle);
    let stage_angle = stage_from_layer("angle", &rated, |c| c.c_angle.unwrap());

    let (best, breakdown) = select_best(&rated)?;
    let stage_total = stage_from_layer("total", &rated, |c| {
        CostBreakdown::from_candidate(c).total
    });
    let goal = goal_pose(&best, human, &geom)?;
    let bfs_path = field
        .path_to(best.cell)
        .expect("selected cell must be reached");

    Ok(PlanOutcome {
        goal,
        best,
        breakdown,
        diagnostics: PlanDiagnostics {
            stages: vec![
                stage_mask,
                stage_cm,
                stage_path,
                stage_dist,
                stage_angle,
                stage_total,
            ],
            survivors: StageSurvivors {
                search_area: n_area,
                costmap: n_costmap,
                path: n_path,
            },
            chosen: best.cell,
            depth_cap: cap,
            bfs_path,
        },
        path_field: field,
    })
}

fn depth_cap(robot: Point, human: &HumanPose, params: &ApproachParams, res: f64) -> u32 {
    let cells = robot.distance(human.position()) / res + params.r_max / res;
    let cap = (params.depth_cap_factor * cells).ceil();
    if cap >= u32::MAX as f64 {
        u32::MAX
    } else {
        cap as u32
    }
}
