//! Continuous replanning loop: a simulated holonomic robot follows the
//! BFS path toward the currently best goal pose, re-planning every tick
//! so the goal adapts while the robot (or the human) moves.

use crate::angle::{rad_to_deg, wrap_to_pi};
use crate::cost::{plan_once, GoalPose};
use crate::error::PlanError;
use crate::grid::{CellIndex, Costmap, Point};
use crate::search::{ApproachParams, HumanPose};

/// Simulated robot pose and kinematic limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobotState {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
    pub v_max: f64,
    pub omega_max: f64,
}

impl RobotState {
    /// Robot at a pose with default limits (0.4 m/s, 1.0 rad/s).
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        RobotState {
            x,
            y,
            theta: wrap_to_pi(theta),
            v_max: 0.4,
            omega_max: 1.0,
        }
    }

    pub fn position(&self) -> Point {
        Point::new(self.x, self.y)
    }
}

/// Timing, hysteresis and arrival settings of the replan loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReplanConfig {
    /// Replan rate in Hz; one tick advances 1/rate seconds.
    pub rate_hz: f64,
    /// Keep the previous goal unless the new best undercuts its current
    /// total cost by more than this (plus a fixed 1e-9 guard against
    /// floating-point dust). 0 adopts every real improvement; infinity
    /// never switches away from the first goal.
    pub goal_switch_epsilon: f64,
    pub position_tolerance: f64,
    pub angle_tolerance: f64,
    /// Give up after this much simulated time.
    pub max_duration_s: f64,
}

impl Default for ReplanConfig {
    fn default() -> Self {
        ReplanConfig {
            rate_hz: 2.0,
            goal_switch_epsilon: 0.0,
            position_tolerance: 0.05,
            angle_tolerance: 5f64.to_radians(),
            max_duration_s: 60.0,
        }
    }
}

impl ReplanConfig {
    pub fn validate(&self) -> Result<(), PlanError> {
        if !(self.rate_hz > 0.0) {
            return Err(PlanError::InvalidParameter(format!(
                "rate_hz must be > 0, got {}",
                self.rate_hz
            )));
        }
        if !(self.position_tolerance > 0.0) || !(self.angle_tolerance > 0.0) {
            return Err(PlanError::InvalidParameter(format!(
                "tolerances must be > 0, got {} m and {} rad",
                self.position_tolerance, self.angle_tolerance
            )));
        }
        if !(self.goal_switch_epsilon >= 0.0) {
            return Err(PlanError::InvalidParameter(format!(
                "goal_switch_epsilon must be >= 0, got {}",
                self.goal_switch_epsilon
            )));
        }
        if !(self.max_duration_s > 0.0) {
            return Err(PlanError::InvalidParameter(format!(
                "max_duration_s must be > 0, got {}",
                self.max_duration_s
            )));
        }
        Ok(())
    }
}

/// What one tick did: the moved robot, the goal it steered toward and the
/// goal's current total cost.
#[derive(Debug, Clone, PartialEq)]
pub struct TickOutcome {
    pub robot: RobotState,
    pub goal: GoalPose,
    pub goal_cell: CellIndex,
    pub total_cost: f64,
    pub arrived: bool,
}

/// One pose sample of the simulated approach.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub tick: u64,
    pub t_s: f64,
    pub x: f64,
    pub y: f64,
    pub theta: f64,
    pub goal: GoalPose,
    pub total_cost: f64,
}

/// Outcome of a full approach run.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproachResult {
    pub success: bool,
    pub final_state: RobotState,
    /// Final Euclidean distance to the human in meters.
    pub final_distance_m: f64,
    /// Angular position of the robot in the human frame, in degrees.
    pub final_offset_deg: f64,
    pub ticks: u64,
    pub trajectory: Vec<TrajectoryPoint>,
    /// Set when the approach did not arrive in time.
    pub failure: Option<String>,
}

/// Replan once and advance the robot by one tick of 1/rate seconds.
///
/// The robot first moves along the BFS path toward the goal by at most
/// `v_max * dt`, then, once within the position tolerance, turns toward
/// the goal orientation by at most `omega_max * dt`. `prev_goal` is the
/// goal cell adopted on the previous tick; the goal only switches when
/// the new best beats that cell's current total by more than
/// `goal_switch_epsilon` (or when the previous cell got pruned). On error
/// the robot does not move.
pub fn tick(
    costmap: &Costmap,
    robot: &RobotState,
    human: &HumanPose,
    params: &ApproachParams,
    config: &ReplanConfig,
    prev_goal: Option<CellIndex>,
) -> Result<TickOutcome, PlanError> {
    config.validate()?;
    let outcome = plan_once(costmap, robot.position(), human, params)?;

    let totals = &outcome.diagnostics.stages[5];
    let prev_total = prev_goal.and_then(|cell| {
        totals
            .cells
            .iter()
            .find(|(c, _)| *c == cell)
            .map(|(_, t)| *t)
    });
    // The guard keeps exact cost ties from flapping on floating-point dust.
    let margin = config.goal_switch_epsilon + 1e-9;
    let (goal_cell, goal, total_cost) = match (prev_goal, prev_total) {
        (Some(prev_cell), Some(prev_now))
            if !(outcome.breakdown.total < prev_now - margin) =>
        {
            let kept = crate::cost::goal_pose(
                &crate::search::CandidateCell {
                    cell: prev_cell,
                    ..outcome.best
                },
                human,
                costmap.geometry(),
            )?;
            (prev_cell, kept, prev_now)
        }
        _ => (outcome.diagnostics.chosen, outcome.goal, outcome.breakdown.total),
    };

    let path = outcome
        .path_field
        .path_to(goal_cell)
        .expect("goal cell must be reached");

    let dt = 1.0 / config.rate_hz;
    let mut next = *robot;
    let mut budget = robot.v_max * dt;
    let geom = costmap.geometry();
    for waypoint in path.iter().skip(1) {
        if budget <= 0.0 {
            break;
        }
        let target = geom.cell_center_unchecked(*waypoint);
        budget = step_toward(&mut next, target, budget);
    }
    if budget > 0.0 {
        step_toward(&mut next, Point::new(goal.x, goal.y), budget);
    }

    let dist = next.position().distance(Point::new(goal.x, goal.y));
    if dist <= config.position_tolerance {
        let delta = wrap_to_pi(goal.alpha_r - next.theta);
        let step = delta.clamp(-robot.omega_max * dt, robot.omega_max * dt);
        next.theta = wrap_to_pi(next.theta + step);
    }
    let arrived = dist <= config.position_tolerance
        && wrap_to_pi(goal.alpha_r - next.theta).abs() <= config.angle_tolerance;

    Ok(TickOutcome {
        robot: next,
        goal,
        goal_cell,
        total_cost,
        arrived,
    })
}

/// Move `robot` straight toward `target` by at most `budget` meters;
/// returns the unused budget.
fn step_toward(robot: &mut RobotState, target: Point, budget: f64) -> f64 {
    let d = robot.position().distance(target);
    if d <= budget {
        robot.x = target.x;
        robot.y = target.y;
        budget - d
    } else {
        let f = budget / d;
        robot.x += (target.x - robot.x) * f;
        robot.y += (target.y - robot.y) * f;
        0.0
    }
}

/// Drive the robot until it arrives at the (continuously re-planned)
/// goal pose or until `max_duration_s` of simulated time has passed.
///
/// A tick that fails to plan leaves the robot in place and the loop
/// keeps trying; persistent failure ends in a timeout result whose
/// reason names the last error.
pub fn run_approach(
    costmap: &Costmap,
    start: &RobotState,
    human: &HumanPose,
    params: &ApproachParams,
    config: &ReplanConfig,
) -> Result<ApproachResult, PlanError> {
    params.validate()?;
    config.validate()?;

    let dt = 1.0 / config.rate_hz;
    let max_ticks = (config.max_duration_s * config.rate_hz).ceil() as u64;
    let mut robot = *start;
    let mut prev_goal: Option<CellIndex> = None;
    let mut trajectory = Vec::new();
    let mut last_error: Option<PlanError> = None;
    let mut ticks = 0u64;
    let mut arrived = false;

    while ticks < max_ticks {
        match tick(costmap, &robot, human, params, config, prev_goal) {
            Ok(out) => {
                robot = out.robot;
                prev_goal = Some(out.goal_cell);
                trajectory.push(TrajectoryPoint {
                    tick: ticks,
                    t_s: ticks as f64 * dt,
                    x: robot.x,
                    y: robot.y,
                    theta: robot.theta,
                    goal: out.goal,
                    total_cost: out.total_cost,
                });
                ticks += 1;
                if out.arrived {
                    arrived = true;
                    break;
                }
            }
            Err(e) => {
                last_error = Some(e);
                ticks += 1;
            }
        }
    }

    let final_distance = robot.position().distance(human.position());
    let bearing = (robot.y - human.y).atan2(robot.x - human.x);
    let final_offset_deg = rad_to_deg(wrap_to_pi(bearing - human.heading()));
    let failure = if arrived {
        None
    } else {
        Some(match last_error {
            Some(e) => format!("timeout after {} ticks; last error: {}", ticks, e),
            None => format!("timeout after {} ticks", ticks),
        })
    };

    Ok(ApproachResult {
        success: arrived,
        final_state: robot,
        final_distance_m: final_distance,
        final_offset_deg,
        ticks,
        trajectory,
        failure,
    })
}
