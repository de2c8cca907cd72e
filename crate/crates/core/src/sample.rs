//! Seeded random instances: reference triangles and angle triples.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::extremal::{all_feasible, AngleTriple};
use crate::geom::Point;
use crate::triangle::Triangle;

pub const COORD_RANGE: f64 = 10.0;
pub const MIN_ANGLE: f64 = 10.0 * PI / 180.0;

/// Generator for trial `index` of a run seeded with `master`. Trial `i` of
/// seed `m` is reproduced by trial 0 of seed `m + i`.
pub fn trial_rng(master: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(master.wrapping_add(index))
}

/// Vertices uniform in `[-10, 10]^2`, every angle at least 10 degrees.
pub fn random_triangle<R: Rng>(rng: &mut R) -> Triangle {
    loop {
        let mut vertex = || Point::new(rng.random_range(-COORD_RANGE..COORD_RANGE), rng.random_range(-COORD_RANGE..COORD_RANGE));
        let (a, b, c) = (vertex(), vertex(), vertex());
        if let Ok(t) = Triangle::new(a, b, c) {
            if t.angles().iter().all(|x| *x >= MIN_ANGLE) {
                return t;
            }
        }
    }
}

/// Angles at least 10 degrees each, uniform on the remaining simplex.
pub fn random_angles<R: Rng>(rng: &mut R) -> AngleTriple {
    let free = PI - 3.0 * MIN_ANGLE;
    let (u, v): (f64, f64) = (rng.random(), rng.random());
    let (lo, hi) = (u.min(v), u.max(v));
    let alpha = MIN_ANGLE + free * lo;
    let beta = MIN_ANGLE + free * (hi - lo);
    AngleTriple::new(alpha, beta, PI - alpha - beta).expect("angles in range")
}

/// A triangle and angle triple for which all six assignments are feasible.
pub fn random_feasible_instance<R: Rng>(rng: &mut R) -> (Triangle, AngleTriple) {
    loop {
        let t = random_triangle(rng);
        for _ in 0..64 {
            let a = random_angles(rng);
            if all_feasible(&t, &a) {
                return (t, a);
            }
        }
    }
}

/// Uniform point in the disk about the circumcenter with radius
/// `fraction * R`.
pub fn random_point_in_circumdisk<R: Rng>(rng: &mut R, t: &Triangle, fraction: f64) -> Point {
    let cc = t.circumcircle();
    let r = cc.radius * fraction * rng.random::<f64>().sqrt();
    cc.center + Point::from_angle(rng.random_range(0.0..2.0 * PI)) * r
}
