//! Search-area definition: the annular, angle-constrained set of candidate
//! goal cells around a person.
//!
//! The area is built ring by ring: integer cell radii from
//! `round(r_min / resolution)` to `round(r_max / resolution)` are rasterized
//! around the human cell, and each ring cell is kept when its bearing from
//! the human falls inside a permitted approach sector. Sectors depend on
//! posture: a standing person is approached from the front, a sitting person
//! from both sides.

use crate::angle::wrap_to_pi;
use crate::error::PlanError;
use crate::grid::{raster_circle, CellIndex, Costmap, Point};
use crate::path::Connectivity;

/// Body posture of the person, which selects the approach mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Posture {
    Standing,
    Sitting,
}

/// How approach sectors are laid out around the person's heading.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// One sector centered ahead (offset by `alpha_mean`).
    Unidirectional,
    /// Two sectors mirrored about the heading at `±alpha_mean`.
    Bidirectional,
}

/// Pose of the person to approach.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HumanPose {
    pub x: f64,
    pub y: f64,
    heading: f64,
    pub posture: Posture,
}

impl HumanPose {
    /// The heading is normalized to `(-pi, pi]`.
    pub fn new(x: f64, y: f64, heading: f64, posture: Posture) -> Self {
        HumanPose {
            x,
            y,
            heading: wrap_to_pi(heading),
            posture,
        }
    }

    pub fn heading(&self) -> f64 {
        self.heading
    }

    pub fn position(&self) -> Point {
        Point::new(self.x, self.y)
    }
}

/// Geometry, cost weights and tuning knobs for one approach.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproachParams {
    /// Inner search radius in meters.
    pub r_min: f64,
    /// Outer search radius in meters.
    pub r_max: f64,
    /// Full angular width of the unidirectional sector.
    pub alpha_uni: f64,
    /// Full angular width of each bidirectional sector.
    pub alpha_bi: f64,
    /// Sector center offset from the heading; 0 keeps the sector dead ahead.
    pub alpha_mean: f64,
    pub m_cm: f64,
    pub m_path: f64,
    pub m_dist: f64,
    pub m_angle: f64,
    /// Preferred interaction distance; 0 rates closer cells strictly better.
    pub r_opt: f64,
    /// Force a search mode instead of deriving it from the posture.
    pub mode: Option<SearchMode>,
    /// Neighborhood used by the path search.
    pub connectivity: Connectivity,
    /// Multiplier on the straight-line robot-human cell distance (plus the
    /// outer radius) after which the path search gives up.
    pub depth_cap_factor: f64,
}

impl Default for ApproachParams {
    fn default() -> Self {
        ApproachParams {
            r_min: 0.45,
            r_max: 0.9,
            alpha_uni: 90f64.to_radians(),
            alpha_bi: 90f64.to_radians(),
            alpha_mean: 0.0,
            m_cm: 1.0,
            m_path: 1.0,
            m_dist: 1.0,
            m_angle: 1.0,
            r_opt: 0.0,
            mode: None,
            connectivity: Connectivity::Four,
            depth_cap_factor: 3.0,
        }
    }
}

impl ApproachParams {
    pub fn validate(&self) -> Result<(), PlanError> {
        if !(self.r_min > 0.0) || !(self.r_max >= self.r_min) {
            return Err(PlanError::InvalidParameter(format!(
                "need 0 < r_min <= r_max, got {} and {}",
                self.r_min, self.r_max
            )));
        }
        for (name, width) in [("alpha_uni", self.alpha_uni), ("alpha_bi", self.alpha_bi)] {
            if !(width > 0.0) || width > std::f64::consts::TAU {
                return Err(PlanError::InvalidParameter(format!(
                    "{} must be in (0, 2pi], got {}",
                    name, width
                )));
            }
        }
        for (name, m) in [
            ("m_cm", self.m_cm),
            ("m_path", self.m_path),
            ("m_dist", self.m_dist),
            ("m_angle", self.m_angle),
        ] {
            if !(m >= 0.0) {
                return Err(PlanError::InvalidParameter(format!(
                    "{} must be >= 0, got {}",
                    name, m
                )));
            }
        }
        if !(self.r_opt >= 0.0) {
            return Err(PlanError::InvalidParameter(format!(
                "r_opt must be >= 0, got {}",
                self.r_opt
            )));
        }
        if !(self.depth_cap_factor > 0.0) {
            return Err(PlanError::InvalidParameter(format!(
                "depth_cap_factor must be > 0, got {}",
                self.depth_cap_factor
            )));
        }
        Ok(())
    }

    pub fn mode_for(&self, posture: Posture) -> SearchMode {
        self.mode.unwrap_or(match posture {
            Posture::Standing => SearchMode::Unidirectional,
            Posture::Sitting => SearchMode::Bidirectional,
        })
    }
}

/// One permitted approach direction: a world-frame cone around `center`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sector {
    /// World-frame center angle, normalized to `(-pi, pi]`.
    pub center: f64,
    /// Half of the sector's full angular width.
    pub half_width: f64,
}

impl Sector {
    /// Whether a world-frame bearing falls inside the sector.
    pub fn contains(&self, bearing: f64) -> bool {
        wrap_to_pi(bearing - self.center).abs() <= self.half_width
    }
}

/// A cell of the search area together with its geometry relative to the
/// human and the cost layers filled in by the cost engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateCell {
    pub cell: CellIndex,
    /// Euclidean distance from the human in meters.
    pub r_i: f64,
    /// Bearing of the cell in the human frame, relative to the heading.
    pub alpha_i: f64,
    pub c_cm: Option<f64>,
    pub c_path: Option<f64>,
    pub c_dist: Option<f64>,
    pub c_angle: Option<f64>,
    pub reachable: bool,
}

impl CandidateCell {
    fn new(cell: CellIndex, r_i: f64, alpha_i: f64) -> Self {
        CandidateCell {
            cell,
            r_i,
            alpha_i,
            c_cm: None,
            c_path: None,
            c_dist: None,
            c_angle: None,
            reachable: false,
        }
    }
}

/// Approach sectors for `human` under `params`, in world-frame angles.
///
/// Unidirectional: one sector at `heading + alpha_mean`. Bidirectional: two
/// sectors at `heading ± alpha_mean`, collapsed to one when they coincide.
pub fn sectors_for(human: &HumanPose, params: &ApproachParams) -> Vec<Sector> {
    match params.mode_for(human.posture) {
        SearchMode::Unidirectional => vec![Sector {
            center: wrap_to_pi(human.heading() + params.alpha_mean),
            half_width: params.alpha_uni / 2.0,
        }],
        SearchMode::Bidirectional => {
            let left = wrap_to_pi(human.heading() + params.alpha_mean);
            let right = wrap_to_pi(human.heading() - params.alpha_mean);
            let half_width = params.alpha_bi / 2.0;
            if left == right {
                vec![Sector {
                    center: left,
                    half_width,
                }]
            } else {
                vec![
                    Sector {
                        center: left,
                        half_width,
                    },
                    Sector {
                        center: right,
                        half_width,
                    },
                ]
            }
        }
    }
}

/// Enumerate the candidate container S around `human`.
///
/// Cells come out ordered by (ring radius, ring angle), so two calls with
/// identical inputs produce identical lists. Occupancy is not filtered
/// here; that happens in the cost engine. An empty result is a valid
/// return (for example a human close to the map border).
pub fn define_search_area(
    costmap: &Costmap,
    human: &HumanPose,
    params: &ApproachParams,
) -> Result<Vec<CandidateCell>, PlanError> {
    params.validate()?;
    let geom = costmap.geometry();
    let human_cell = geom.world_to_cell(human.position())?;
    let sectors = sectors_for(human, params);

    let res = geom.resolution;
    let r_lo = (params.r_min / res).round() as u32;
    let r_hi = (params.r_max / res).round() as u32;

    let mut area = Vec::new();
    for radius in r_lo..=r_hi {
        for cell in raster_circle(geom, human_cell, radius) {
            let center = geom.cell_center_unchecked(cell);
            let bearing = (center.y - human.y).atan2(center.x - human.x);
            if sectors.iter().any(|s| s.contains(bearing)) {
                let r_i = human.position().distance(center);
                let alpha_i = wrap_to_pi(bearing - human.heading());
                area.push(CandidateCell::new(cell, r_i, alpha_i));
            }
        }
    }
    Ok(area)
}
