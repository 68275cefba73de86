//! Seeded generators for spacelike generic configurations.
//!
//! Randomized property suites need many spacelike generic point sets;
//! the graph-of-a-Lipschitz-function construction produces sets that
//! are simultaneously spacelike for the Euclidean, Minkowski, and
//! degenerate standard forms. Genericity is enforced by exact rejection
//! sampling.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::qform::{is_generic_position, PointSet, QuadraticForm};
use crate::rat::{ratio, Rat};

/// Deterministic generator from a seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Points on the graph of a piecewise-linear function with slopes
/// bounded by 3/4 in magnitude: strictly increasing rational x, so the
/// set is spacelike for diag(1,1), diag(1,-1), and diag(1,0) alike.
pub fn lipschitz_points_2d<R: Rng>(rng: &mut R, n: usize) -> PointSet {
    let mut coords = Vec::with_capacity(n);
    let mut x = ratio(rng.gen_range(-8..8), 8);
    let mut y = ratio(rng.gen_range(-8..8), 8);
    coords.push(vec![x.clone(), y.clone()]);
    for _ in 1..n {
        let dx = ratio(rng.gen_range(8..28), 8);
        let slope = ratio(rng.gen_range(-6..=6), 8);
        x = &x + &dx;
        y = &y + &(&dx * &slope);
        coords.push(vec![x.clone(), y.clone()]);
    }
    PointSet::from_coords(2, coords).expect("distinct x coordinates")
}

/// Spacelike generic planar set for the given form, by rejection.
pub fn spacelike_generic_2d<R: Rng>(q: &QuadraticForm, n: usize, rng: &mut R) -> PointSet {
    for _ in 0..200 {
        let xs = lipschitz_points_2d(rng, n);
        if is_generic_position(q, &xs).expect("dims match").is_none() {
            return xs;
        }
    }
    panic!("failed to sample a generic configuration in 200 attempts");
}

/// Spacelike generic set in R^3 for diag(1,1,-1): the graph of a small
/// Lipschitz function over jittered grid points (grid spacing 1,
/// jitters < 1/8, |u| <= 1/4, so every pair satisfies the exact
/// Lipschitz bound 3/4).
pub fn spacelike_generic_3d<R: Rng>(q: &QuadraticForm, n: usize, rng: &mut R) -> PointSet {
    let side = (n as f64).sqrt().ceil() as i64;
    for _ in 0..200 {
        let mut coords: Vec<Vec<Rat>> = Vec::with_capacity(n);
        'fill: for i in 0..side {
            for j in 0..side {
                if coords.len() == n {
                    break 'fill;
                }
                let x = ratio(16 * i + rng.gen_range(-2..=2), 16);
                let y = ratio(16 * j + rng.gen_range(-2..=2), 16);
                let u = ratio(rng.gen_range(-4..=4), 16);
                coords.push(vec![x, y, u]);
            }
        }
        let xs = PointSet::from_coords(3, coords).expect("jittered grid points are distinct");
        if is_generic_position(q, &xs).expect("dims match").is_none() {
            return xs;
        }
    }
    panic!("failed to sample a generic 3d configuration in 200 attempts");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qform::is_spacelike_position;

    #[test]
    fn generated_sets_are_spacelike_and_generic() {
        let mut rng = seeded_rng(11);
        for q in [
            QuadraticForm::euclidean2(),
            QuadraticForm::minkowski2(),
            QuadraticForm::degenerate2(),
        ] {
            for n in [4, 6, 8] {
                let xs = spacelike_generic_2d(&q, n, &mut rng);
                assert_eq!(xs.len(), n);
                assert!(is_spacelike_position(&q, &xs).unwrap().is_none());
                assert!(is_generic_position(&q, &xs).unwrap().is_none());
            }
        }
        let q21 = QuadraticForm::diag_i64(&[1, 1, -1]);
        let xs = spacelike_generic_3d(&q21, 6, &mut rng);
        assert_eq!(xs.len(), 6);
        assert!(is_spacelike_position(&q21, &xs).unwrap().is_none());
        assert!(is_generic_position(&q21, &xs).unwrap().is_none());
    }

    #[test]
    fn generation_is_deterministic_per_seed() {
        let q = QuadraticForm::minkowski2();
        let a = spacelike_generic_2d(&q, 5, &mut seeded_rng(42));
        let b = spacelike_generic_2d(&q, 5, &mut seeded_rng(42));
        assert_eq!(a, b);
    }
}
