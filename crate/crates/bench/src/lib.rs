//! Shared benchmark fixtures: deterministic instances at a few sizes.

use spiralchain::{gen_maximal_planar, gen_triangle_free, GenSpec, PlanarEmbedding};

pub const SIZES: [usize; 3] = [50, 100, 200];

pub fn maximal(n: usize) -> PlanarEmbedding {
    gen_maximal_planar(&GenSpec::maximal(n, 42, 2 * n)).unwrap()
}

pub fn quadrangulation(n: usize) -> PlanarEmbedding {
    gen_triangle_free(&GenSpec::triangle_free(n, 42)).unwrap()
}
