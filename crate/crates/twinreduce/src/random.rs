//! Seeded instance generators. Streams keep suites independent of each other.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twinreduce_core::gadgets::gen_stacked_triangulation;
use twinreduce_core::Graph;

pub const SEED: u64 = 0xC0FFEE;

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// `G(n, p)`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// A random stacked triangulation on `n ≥ 3` vertices.
pub fn random_triangulation<R: Rng>(rng: &mut R, n: usize) -> Graph {
    gen_stacked_triangulation(n, |len| rng.gen_range(0..len)).expect("n >= 3").0
}

/// A random stacked triangulation with each edge kept with probability `keep`.
pub fn random_planar<R: Rng>(rng: &mut R, n: usize, keep: f64) -> Graph {
    let t = random_triangulation(rng, n);
    let kept: Vec<(usize, usize)> = t.edges().filter(|_| rng.gen_bool(keep)).collect();
    Graph::from_edges(n, kept)
}

/// `k` distinct vertices of `0..n`, sorted.
pub fn random_subset<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(k);
    all.sort_unstable();
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a = random_graph(&mut rng(SEED, 3), 10, 0.5);
        let b = random_graph(&mut rng(SEED, 3), 10, 0.5);
        assert_eq!(a, b);
        let t = random_triangulation(&mut rng(SEED, 1), 12);
        assert_eq!(t.m(), 3 * 12 - 6);
        assert!(crate::planar::is_planar(&random_planar(&mut rng(SEED, 2), 30, 0.7)));
    }
}
