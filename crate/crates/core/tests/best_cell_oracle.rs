//! Full-pipeline oracle: on random scenarios, the selected goal cell must
//! equal an exhaustive scan over all map cells that recomputes annulus
//! membership, sector checks, all four cost layers and the tie-break from
//! scratch, sharing no code with the pipeline.

mod common;

use approach_core::angle::wrap_to_pi;
use approach_core::{
    inflate, plan_once, ApproachParams, CellIndex, Costmap, GridMap, HumanPose, Occupancy, Point,
    Posture, SearchMode,
};
use common::{free_cells, reference_bfs};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Scenario {
    costmap: Costmap,
    robot: Point,
    human: HumanPose,
    params: ApproachParams,
}

fn random_scenario<R: Rng>(rng: &mut R) -> Scenario {
    let mut map = GridMap::new(48, 48, 0.05, Point::new(0.0, 0.0), Occupancy::Free).unwrap();
    for _ in 0..rng.gen_range(2..=4) {
        let w = rng.gen_range(2..8);
        let h = rng.gen_range(2..8);
        let col0 = rng.gen_range(0..48 - w);
        let row0 = rng.gen_range(0..48 - h);
        for row in row0..row0 + h {
            for col in col0..col0 + w {
                map.set(CellIndex::new(col, row), Occupancy::Occupied).unwrap();
            }
        }
    }
    let costmap = inflate(&map, 0.1, 0.25).unwrap();

    let human = HumanPose::new(
        rng.gen_range(0.8..1.6),
        rng.gen_range(0.8..1.6),
        rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
        if rng.gen_bool(0.5) {
            Posture::Standing
        } else {
            Posture::Sitting
        },
    );
    let r_min = rng.gen_range(0.35..0.5);
    let params = ApproachParams {
        r_min,
        r_max: rng.gen_range(0.7..0.95),
        alpha_uni: rng.gen_range(60f64..160.0).to_radians(),
        alpha_bi: rng.gen_range(60f64..120.0).to_radians(),
        alpha_mean: if human.posture == Posture::Sitting {
            60f64.to_radians()
        } else {
            0.0
        },
        m_cm: rng.gen_range(0.001..0.05),
        m_path: rng.gen_range(0.3..2.0),
        m_dist: rng.gen_range(0.5..2.0),
        m_angle: rng.gen_range(0.5..3.0),
        r_opt: if rng.gen_bool(0.3) {
            rng.gen_range(0.5..0.7)
        } else {
            0.0
        },
        ..ApproachParams::default()
    };

    let free = free_cells(&costmap);
    let robot_cell = *free.choose(rng).unwrap();
    let robot = costmap.cell_to_world(robot_cell).unwrap();

    Scenario {
        costmap,
        robot,
        human,
        params,
    }
}

fn sector_geometry(s: &Scenario) -> (Vec<f64>, f64) {
    let mode = s.params.mode.unwrap_or(match s.human.posture {
        Posture::Standing => SearchMode::Unidirectional,
        Posture::Sitting => SearchMode::Bidirectional,
    });
    match mode {
        SearchMode::Unidirectional => (
            vec![wrap_to_pi(s.human.heading() + s.params.alpha_mean)],
            s.params.alpha_uni / 2.0,
        ),
        SearchMode::Bidirectional => (
            vec![
                wrap_to_pi(s.human.heading() + s.params.alpha_mean),
                wrap_to_pi(s.human.heading() - s.params.alpha_mean),
            ],
            s.params.alpha_bi / 2.0,
        ),
    }
}

/// Exhaustive best-cell search sharing only the parameter values with the
/// pipeline. Returns the winning cell and its total cost.
fn oracle_best(s: &Scenario) -> Option<(CellIndex, f64)> {
    let geom = s.costmap.geometry();
    let res = geom.resolution;
    let hc = geom.world_to_cell(s.human.position()).unwrap();
    let r_lo = (s.params.r_min / res).round() as i64;
    let r_hi = (s.params.r_max / res).round() as i64;
    let (centers, half) = sector_geometry(s);

    let cap = ((s.robot.distance(s.human.position()) / res + s.params.r_max / res) * 3.0).ceil()
        as u32;
    let robot_cell = geom.world_to_cell(s.robot).unwrap();
    let depths = reference_bfs(&s.costmap, robot_cell, &[(1, 0), (0, 1), (-1, 0), (0, -1)], Some(cap));

    let mut best: Option<(CellIndex, f64, f64)> = None;
    for row in 0..geom.height as i32 {
        for col in 0..geom.width as i32 {
            let (dx, dy) = ((col - hc.col) as i64, (row - hc.row) as i64);
            let d2 = 4 * (dx * dx + dy * dy);
            let above = if r_lo == 0 {
                true
            } else {
                d2 >= (2 * r_lo - 1) * (2 * r_lo - 1)
            };
            if !(above && d2 < (2 * r_hi + 1) * (2 * r_hi + 1)) {
                continue;
            }
            let cell = CellIndex::new(col, row);
            let center = geom.cell_to_world(cell).unwrap();
            let bearing = (center.y - s.human.y).atan2(center.x - s.human.x);
            if !centers.iter().any(|c| wrap_to_pi(bearing - c).abs() <= half) {
                continue;
            }
            let cm_value = s.costmap.get(cell).unwrap();
            if cm_value >= s.costmap.lethal_threshold() {
                continue;
            }
            let Some(depth) = depths[(row * geom.width as i32 + col) as usize] else {
                continue;
            };
            let c_cm = cm_value as f64 * s.params.m_cm;
            let c_path = depth as f64 * res * s.params.m_path;
            let c_dist = (s.human.position().distance(center) - s.params.r_opt).abs()
                * s.params.m_dist;
            let c_angle = centers
                .iter()
                .map(|c| wrap_to_pi(c - bearing).abs())
                .fold(f64::INFINITY, f64::min)
                * s.params.m_angle;
            let total = c_cm + c_path + c_dist + c_angle;
            let better = match &best {
                None => true,
                Some((bc, bt, bp)) => {
                    (total, c_path, (cell.row, cell.col)) < (*bt, *bp, (bc.row, bc.col))
                }
            };
            if better {
                best = Some((cell, total, c_path));
            }
        }
    }
    best.map(|(c, t, _)| (c, t))
}

#[test]
fn pipeline_matches_exhaustive_scan_on_50_scenarios() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBE57);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 50 {
        attempts += 1;
        assert!(attempts < 250, "too many degenerate scenarios");
        let s = random_scenario(&mut rng);
        let outcome = match plan_once(&s.costmap, s.robot, &s.human, &s.params) {
            Ok(o) => o,
            Err(_) => {
                // The oracle must agree that nothing was selectable.
                assert_eq!(oracle_best(&s), None, "attempt {}", attempts);
                continue;
            }
        };
        let (want_cell, want_total) = oracle_best(&s).expect("oracle found nothing");
        assert_eq!(outcome.best.cell, want_cell, "attempt {}", attempts);
        assert!(
            (outcome.breakdown.total - want_total).abs() < 1e-9,
            "totals {} vs {}",
            outcome.breakdown.total,
            want_total
        );
        checked += 1;
    }
}

#[test]
fn argmin_is_invariant_under_uniform_factor_scaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5CA1E);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 20 {
        attempts += 1;
        assert!(attempts < 120, "too many degenerate scenarios");
        let s = random_scenario(&mut rng);
        let Ok(base) = plan_once(&s.costmap, s.robot, &s.human, &s.params) else {
            continue;
        };
        for scale in [0.25, 3.0, 17.5] {
            let scaled = ApproachParams {
                m_cm: s.params.m_cm * scale,
                m_path: s.params.m_path * scale,
                m_dist: s.params.m_dist * scale,
                m_angle: s.params.m_angle * scale,
                ..s.params
            };
            let out = plan_once(&s.costmap, s.robot, &s.human, &scaled).unwrap();
            assert_eq!(out.best.cell, base.best.cell, "scale {}", scale);
        }
        checked += 1;
    }
}
