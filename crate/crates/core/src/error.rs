//! Error types shared across the planning pipeline.

use thiserror::Error;

/// Pipeline stage at which the candidate set became empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PruneStage {
    /// No cell of the annulus satisfied the angle conditions (or all were off-map).
    SearchArea,
    /// Every candidate sat on a lethal costmap cell.
    CostmapCost,
    /// No candidate was reachable from the robot cell.
    Path,
}

impl std::fmt::Display for PruneStage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            PruneStage::SearchArea => "search-area",
            PruneStage::CostmapCost => "costmap-cost",
            PruneStage::Path => "path",
        };
        f.write_str(name)
    }
}

/// Errors produced by map handling and the planning pipeline.
#[derive(Debug, Error)]
pub enum PlanError {
    #[error("point ({x}, {y}) lies outside the map")]
    OutOfBounds { x: f64, y: f64 },

    #[error("cell ({col}, {row}) lies outside the map")]
    CellOutOfBounds { col: i32, row: i32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("robot cell ({col}, {row}) is lethal in the costmap")]
    RobotInLethalCell { col: i32, row: i32 },

    #[error("no goal found: candidate set empty after {stage} stage")]
    NoGoalFound { stage: PruneStage },

    #[error("goal cell coincides with the human cell")]
    DegenerateGeometry,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl PlanError {
    /// Stage carried by a `NoGoalFound` error, if this is one.
    pub fn prune_stage(&self) -> Option<PruneStage> {
        match self {
            PlanError::NoGoalFound { stage } => Some(*stage),
            _ => None,
        }
    }
}
