//! Inflation oracle: compare the envelope-based distance transform against
//! a quadratic scan over every obstacle cell. The mapping from distance to
//! cost is the documented contract and is applied identically on both
//! sides; what this exercises is the distance computation itself.

use approach_core::{inflate, CellIndex, GridMap, Occupancy, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn brute_force(map: &GridMap, robot_radius: f64, inflation_radius: f64) -> Vec<u8> {
    let (w, h) = (map.width() as i64, map.height() as i64);
    let res = map.resolution();
    let occupied: Vec<(i64, i64)> = (0..h)
        .flat_map(|row| (0..w).map(move |col| (col, row)))
        .filter(|&(col, row)| {
            map.get(CellIndex::new(col as i32, row as i32)).unwrap() == Occupancy::Occupied
        })
        .collect();
    let rr = robot_radius / res;
    let ir = inflation_radius / res;
    let eps = 1e-9;

    let mut out = Vec::with_capacity((w * h) as usize);
    for row in 0..h {
        for col in 0..w {
            let occ = map.get(CellIndex::new(col as i32, row as i32)).unwrap();
            if occ != Occupancy::Free {
                out.push(255);
                continue;
            }
            let d2 = occupied
                .iter()
                .map(|&(oc, or)| (oc - col).pow(2) + (or - row).pow(2))
                .min();
            let cost = match d2 {
                None => 0,
                Some(d2) => {
                    let d = (d2 as f64).sqrt();
                    if d <= rr + eps {
                        255
                    } else if d > ir + eps {
                        0
                    } else {
                        let t = ((d - rr) / (ir - rr)).clamp(0.0, 1.0);
                        (254.0 - 253.0 * t).round().clamp(1.0, 254.0) as u8
                    }
                }
            };
            out.push(cost);
        }
    }
    out
}

#[test]
fn matches_quadratic_scan_on_random_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1F1A7E);
    for case in 0..40 {
        let density = rng.gen_range(0.02..0.35);
        let mut map =
            GridMap::new(32, 32, 0.05, Point::new(-0.4, 0.7), Occupancy::Free).unwrap();
        for row in 0..32 {
            for col in 0..32 {
                let occ = if rng.gen_bool(density) {
                    Occupancy::Occupied
                } else if rng.gen_bool(0.04) {
                    Occupancy::Unknown
                } else {
                    Occupancy::Free
                };
                map.set(CellIndex::new(col, row), occ).unwrap();
            }
        }
        let rr = [0.0, 0.05, 0.1, 0.17][case % 4];
        let ir = rr + rng.gen_range(0.0..0.4);
        let cm = inflate(&map, rr, ir).unwrap();
        assert_eq!(
            cm.cost(),
            &brute_force(&map, rr, ir)[..],
            "case {} rr {} ir {}",
            case,
            rr,
            ir
        );
    }
}

#[test]
fn cell_exactly_at_inflation_radius_still_costs_one() {
    let mut map = GridMap::new(21, 21, 0.05, Point::new(0.0, 0.0), Occupancy::Free).unwrap();
    map.set(CellIndex::new(10, 10), Occupancy::Occupied).unwrap();
    // A 3-4-5 offset puts (13, 14) at exactly 5 cells = 0.25 m.
    let cm = inflate(&map, 0.10, 0.25).unwrap();
    assert_eq!(cm.get(CellIndex::new(13, 14)).unwrap(), 1);
    assert_eq!(cm.get(CellIndex::new(13, 14)).unwrap(), {
        let b = brute_force(&map, 0.10, 0.25);
        b[14 * 21 + 13]
    });
}

#[test]
fn unknown_only_map_has_no_inflation_at_all() {
    let mut map = GridMap::new(16, 16, 0.05, Point::new(0.0, 0.0), Occupancy::Free).unwrap();
    for col in 4..12 {
        map.set(CellIndex::new(col, 8), Occupancy::Unknown).unwrap();
    }
    let cm = inflate(&map, 0.15, 0.40).unwrap();
    assert_eq!(cm.cost(), &brute_force(&map, 0.15, 0.40)[..]);
    assert_eq!(cm.get(CellIndex::new(7, 7)).unwrap(), 0);
    assert_eq!(cm.get(CellIndex::new(7, 8)).unwrap(), 255);
}
