//! Scenario files: a JSON description of a map, a robot start pose, the
//! people to approach and the planner/replanner parameters.
//!
//! Keys carry explicit units (`x_m`, `phi_deg`); angles are degrees in
//! files and radians everywhere else. Parameter blocks hold only the
//! fields that deviate from the defaults, so the same structure doubles
//! as the per-human override block.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use approach_core::grid::{import_pgm, parse_map};
use approach_core::{
    inflate, load_map, ApproachParams, Connectivity, Costmap, GridMap, HumanPose, Occupancy,
    Point, Posture, ReplanConfig, RobotState, SearchMode,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub map: MapSpec,
    pub robot: RobotSpec,
    pub humans: Vec<HumanSpec>,
    #[serde(default, skip_serializing_if = "ParamsSpec::is_empty")]
    pub params: ParamsSpec,
    #[serde(default, skip_serializing_if = "ReplanSpec::is_empty")]
    pub replan: ReplanSpec,
    #[serde(default)]
    pub inflation: InflationSpec,
    #[serde(default = "default_rounds")]
    pub rounds: u32,
}

fn default_rounds() -> u32 {
    1
}

/// Where the occupancy grid comes from: a map file next to the scenario,
/// the ASCII text inline, or a PGM image plus the geometry it lacks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum MapSpec {
    File {
        file: String,
    },
    Inline {
        inline: String,
    },
    Pgm {
        pgm: String,
        resolution_m: f64,
        origin_x_m: f64,
        origin_y_m: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RobotSpec {
    pub x_m: f64,
    pub y_m: f64,
    pub theta_deg: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PostureSpec {
    Standing,
    Sitting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeSpec {
    Unidirectional,
    Bidirectional,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HumanSpec {
    pub x_m: f64,
    pub y_m: f64,
    pub phi_deg: f64,
    pub posture: PostureSpec,
    #[serde(default, skip_serializing_if = "ParamsSpec::is_empty")]
    pub overrides: ParamsSpec,
}

/// Partial [`ApproachParams`]: unset fields keep the value they are
/// layered over (the library defaults globally, the global block per
/// human).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ParamsSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_min_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_max_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_uni_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_bi_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_mean_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_cm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_path: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_dist: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_angle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_opt_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<ModeSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connectivity: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth_cap_factor: Option<f64>,
}

impl ParamsSpec {
    pub fn is_empty(&self) -> bool {
        *self == ParamsSpec::default()
    }

    pub fn apply(&self, base: &ApproachParams) -> Result<ApproachParams> {
        let mut p = *base;
        if let Some(v) = self.r_min_m {
            p.r_min = v;
        }
        if let Some(v) = self.r_max_m {
            p.r_max = v;
        }
        if let Some(v) = self.alpha_uni_deg {
            p.alpha_uni = v.to_radians();
        }
        if let Some(v) = self.alpha_bi_deg {
            p.alpha_bi = v.to_radians();
        }
        if let Some(v) = self.alpha_mean_deg {
            p.alpha_mean = v.to_radians();
        }
        if let Some(v) = self.m_cm {
            p.m_cm = v;
        }
        if let Some(v) = self.m_path {
            p.m_path = v;
        }
        if let Some(v) = self.m_dist {
            p.m_dist = v;
        }
        if let Some(v) = self.m_angle {
            p.m_angle = v;
        }
        if let Some(v) = self.r_opt_m {
            p.r_opt = v;
        }
        if let Some(m) = self.mode {
            p.mode = Some(match m {
                ModeSpec::Unidirectional => SearchMode::Unidirectional,
                ModeSpec::Bidirectional => SearchMode::Bidirectional,
            });
        }
        if let Some(c) = self.connectivity {
            p.connectivity = match c {
                4 => Connectivity::Four,
                8 => Connectivity::Eight,
                other => bail!("connectivity must be 4 or 8, got {}", other),
            };
        }
        if let Some(v) = self.depth_cap_factor {
            p.depth_cap_factor = v;
        }
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ReplanSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rate_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub goal_switch_epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position_tolerance_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angle_tolerance_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_duration_s: Option<f64>,
}

impl ReplanSpec {
    pub fn is_empty(&self) -> bool {
        *self == ReplanSpec::default()
    }

    pub fn apply(&self) -> Result<ReplanConfig> {
        let mut c = ReplanConfig::default();
        if let Some(v) = self.rate_hz {
            c.rate_hz = v;
        }
        if let Some(v) = self.goal_switch_epsilon {
            c.goal_switch_epsilon = v;
        }
        if let Some(v) = self.position_tolerance_m {
            c.position_tolerance = v;
        }
        if let Some(v) = self.angle_tolerance_deg {
            c.angle_tolerance = v.to_radians();
        }
        if let Some(v) = self.max_duration_s {
            c.max_duration_s = v;
        }
        c.validate()?;
        Ok(c)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InflationSpec {
    pub robot_radius_m: f64,
    pub inflation_radius_m: f64,
}

impl Default for InflationSpec {
    fn default() -> Self {
        InflationSpec {
            robot_radius_m: 0.25,
            inflation_radius_m: 0.5,
        }
    }
}

/// A scenario resolved against the filesystem: maps loaded, parameters
/// merged and validated, poses checked against the map.
pub struct World {
    pub map: GridMap,
    pub costmap: Costmap,
    pub robot: RobotState,
    pub humans: Vec<PlannedHuman>,
    pub replan: ReplanConfig,
    pub rounds: u32,
}

pub struct PlannedHuman {
    pub pose: HumanPose,
    pub params: ApproachParams,
    pub mode: SearchMode,
}

pub fn load_scenario(path: &Path) -> Result<(Scenario, PathBuf)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading scenario {}", path.display()))?;
    let scenario: Scenario = serde_json::from_str(&text)
        .with_context(|| format!("parsing scenario {}", path.display()))?;
    let base = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    Ok((scenario, base))
}

pub fn to_json(scenario: &Scenario) -> String {
    let mut s = serde_json::to_string_pretty(scenario).expect("scenario serializes");
    s.push('\n');
    s
}

impl Scenario {
    pub fn build(&self, base: &Path) -> Result<World> {
        if self.rounds < 1 {
            bail!("rounds must be >= 1, got {}", self.rounds);
        }

        let map = match &self.map {
            MapSpec::File { file } => load_map(base.join(file))
                .with_context(|| format!("loading map {}", file))?,
            MapSpec::Inline { inline } => parse_map(inline).context("parsing inline map")?,
            MapSpec::Pgm {
                pgm,
                resolution_m,
                origin_x_m,
                origin_y_m,
            } => import_pgm(
                base.join(pgm),
                *resolution_m,
                Point::new(*origin_x_m, *origin_y_m),
            )
            .with_context(|| format!("importing PGM {}", pgm))?,
        };
        let costmap = inflate(
            &map,
            self.inflation.robot_radius_m,
            self.inflation.inflation_radius_m,
        )?;

        let robot = RobotState::new(
            self.robot.x_m,
            self.robot.y_m,
            self.robot.theta_deg.to_radians(),
        );
        let robot_cell = costmap
            .world_to_cell(Point::new(robot.x, robot.y))
            .context("robot start pose is off the map")?;
        if costmap.is_lethal(robot_cell) {
            bail!(
                "robot start pose ({}, {}) is not in free space",
                robot.x,
                robot.y
            );
        }

        let global = self.params.apply(&ApproachParams::default())?;
        let mut humans = Vec::with_capacity(self.humans.len());
        for (i, h) in self.humans.iter().enumerate() {
            let posture = match h.posture {
                PostureSpec::Standing => Posture::Standing,
                PostureSpec::Sitting => Posture::Sitting,
            };
            let pose = HumanPose::new(h.x_m, h.y_m, h.phi_deg.to_radians(), posture);
            let cell = map
                .world_to_cell(pose.position())
                .with_context(|| format!("human {} is off the map", i))?;
            if map.get(cell)? != Occupancy::Free {
                bail!("human {} at ({}, {}) is not in free space", i, h.x_m, h.y_m);
            }
            let params = h.overrides.apply(&global)?;
            let mode = params.mode_for(posture);
            humans.push(PlannedHuman { pose, params, mode });
        }

        Ok(World {
            map,
            costmap,
            robot,
            humans,
            replan: self.replan.apply()?,
            rounds: self.rounds,
        })
    }
}
