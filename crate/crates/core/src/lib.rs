//! Grid-based approach planning for human-robot interaction.
//!
//! Given an occupancy grid, an inflated costmap and the pose of a person,
//! this crate enumerates an annular, angle-constrained search area of
//! candidate goal cells around the person, rates every candidate with four
//! cost layers (costmap value, path length, distance, angle error), and
//! selects the cheapest cell as the robot goal pose. A small kinematic
//! simulator replans the goal at a fixed rate while driving toward it.
//!
//! The crate is split along the pipeline:
//!
//! - [`grid`]: occupancy grids, costmaps, coordinate transforms, obstacle
//!   inflation, circle rasterization and map file I/O
//! - [`search`]: search-area definition around a human pose
//! - [`path`]: one-shot multi-goal breadth-first search over the costmap
//! - [`cost`]: the four cost layers, best-cell selection and [`cost::plan_once`]
//! - [`planner`]: continuous replanning loop driving a simulated robot

pub mod angle;
pub mod cost;
pub mod error;
pub mod grid;
pub mod path;
pub mod planner;
pub mod search;

pub use cost::{plan_once, CostBreakdown, GoalPose, PlanDiagnostics, PlanOutcome};
pub use error::{PlanError, PruneStage};
pub use grid::{
    inflate, load_map, raster_circle, save_map, CellIndex, Costmap, Geometry, GridMap, Occupancy,
    Point, COST_LETHAL,
};
pub use path::{multi_goal_bfs, Connectivity, PathField};
pub use planner::{run_approach, ApproachResult, ReplanConfig, RobotState};
pub use search::{
    define_search_area, sectors_for, ApproachParams, CandidateCell, HumanPose, Posture,
    SearchMode, Sector,
};
