//! Seeded, reproducible sampling of algebra elements, covectors, words and
//! phase-space points.
//!
//! All draws go through `f64` before conversion to the working scalar, so a
//! fixed seed produces the same sample stream at every precision.

use nalgebra::DVector;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Covector, GroupWord, Vector};
use crate::cohomology::TwoCochain;
use crate::scalar::{real, Real};

/// The crate-wide deterministic generator (default seed 0 in the CLI).
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn uniform<R: Rng>(rng: &mut R) -> f64 {
    rng.random_range(-1.0..=1.0)
}

/// Uniform draw from the closed unit ball, by rejection from the cube.
pub fn unit_ball_vector<T: Real, R: Rng>(rng: &mut R, dim: usize) -> Vector<T> {
    loop {
        let raw: Vec<f64> = (0..dim).map(|_| uniform(rng)).collect();
        let norm2: f64 = raw.iter().map(|x| x * x).sum();
        if norm2 <= 1.0 {
            return Vector::new(raw.into_iter().map(real).collect());
        }
    }
}

/// Uniform draw from the cube `[-1, 1]^dim` of the dual.
pub fn covector_in_cube<T: Real, R: Rng>(rng: &mut R, dim: usize) -> Covector<T> {
    Covector::new((0..dim).map(|_| real(uniform(rng))).collect())
}

/// Random word with length drawn uniformly from `0..=max_len` and letters
/// from the unit ball.
pub fn word<T: Real, R: Rng>(rng: &mut R, dim: usize, max_len: usize) -> GroupWord<T> {
    let len = rng.random_range(0..=max_len);
    GroupWord::from_letters((0..len).map(|_| unit_ball_vector(rng, dim)).collect())
}

/// Random nonempty word, for identities that degenerate on the empty word.
pub fn nonempty_word<T: Real, R: Rng>(rng: &mut R, dim: usize, max_len: usize) -> GroupWord<T> {
    let len = rng.random_range(1..=max_len.max(1));
    GroupWord::from_letters((0..len).map(|_| unit_ball_vector(rng, dim)).collect())
}

/// Uniform phase-space point in `[-1, 1]^dim`.
pub fn point_in_cube<T: Real, R: Rng>(rng: &mut R, dim: usize) -> DVector<T> {
    DVector::from_iterator(dim, (0..dim).map(|_| real(uniform(rng))))
}

/// Random antisymmetric two-cochain with upper entries in `[-1, 1]`.
pub fn two_cochain_in_cube<T: Real, R: Rng>(rng: &mut R, dim: usize) -> TwoCochain<T> {
    let entries: Vec<(usize, usize, T)> = (0..dim)
        .flat_map(|i| ((i + 1)..dim).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, real(uniform(rng))))
        .collect();
    TwoCochain::from_upper_entries(dim, &entries).expect("upper entries are canonical")
}
