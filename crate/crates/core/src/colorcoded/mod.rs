//! Color coding over families of dynamic connectivity structures: k-Path and
//! Dense Subgraph in bounded-degree graphs.

pub mod densesub;
pub mod kpath;

use crate::graphcore::{GraphError, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use densesub::DenseSubState;
pub use kpath::KPathState;

/// Largest n for which the covering family is built exhaustively.
pub const MAX_EXHAUSTIVE_N: usize = 16;
/// Cap on the number of connectivity structures one state may hold.
pub const MAX_MEMBERS: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ColorError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("exhaustive colorings need n ≤ {MAX_EXHAUSTIVE_N}, got {0}")]
    TooManyVertices(usize),
    #[error("{0} colors unsupported")]
    TooManyColors(usize),
    #[error("{0} family members exceed the cap")]
    TooManyMembers(usize),
    #[error("edge ({0}, {1}) would exceed the degree bound")]
    DegreeBoundViolated(VertexId, VertexId),
    #[error("failure probability {0} outside (0, 1)")]
    BadEpsilon(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    Randomized { epsilon: f64, seed: u64 },
    Exhaustive,
}

/// Colorings {0..n−1} → {0..colors−1}.
#[derive(Clone, Debug)]
pub struct ColoringFamily {
    n: usize,
    colors: usize,
    mode: Mode,
    colorings: Vec<Vec<u8>>,
}

fn is_rainbow(coloring: &[u8], mask: u32) -> bool {
    let mut seen = 0u64;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        let bit = 1u64 << coloring[v];
        if seen & bit != 0 {
            return false;
        }
        seen |= bit;
    }
    true
}

fn subsets_of_size(n: usize, t: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == t).collect()
}

impl ColoringFamily {
    pub fn new(n: usize, colors: usize, mode: Mode) -> Result<Self, ColorError> {
        match mode {
            Mode::Exhaustive => Self::exhaustive(n, colors),
            Mode::Randomized { epsilon, seed } => Self::randomized(n, colors, epsilon, seed),
        }
    }

    /// Every set of min(colors, n) vertices is rainbow under some member.
    ///
    /// Built from a pool of colorings, each seeded by an uncovered subset and
    /// otherwise random, then thinned by greedy set cover.
    pub fn exhaustive(n: usize, colors: usize) -> Result<Self, ColorError> {
        if n > MAX_EXHAUSTIVE_N {
            return Err(ColorError::TooManyVertices(n));
        }
        if colors > 64 {
            return Err(ColorError::TooManyColors(colors));
        }
        let mode = Mode::Exhaustive;
        if colors == 0 {
            return Ok(ColoringFamily { n, colors, mode, colorings: Vec::new() });
        }
        let t = colors.min(n);
        let targets = subsets_of_size(n, t);
        let mut rng = ChaCha8Rng::seed_from_u64(0x636f6c6f72);
        let mut pool: Vec<Vec<u8>> = Vec::new();
        let mut covered = vec![false; targets.len()];
        while let Some(first) = covered.iter().position(|&c| !c) {
            let mut coloring: Vec<u8> = (0..n).map(|_| rng.gen_range(0..colors) as u8).collect();
            let mut next = 0u8;
            for (v, c) in coloring.iter_mut().enumerate() {
                if targets[first] >> v & 1 == 1 {
                    *c = next;
                    next += 1;
                }
            }
            for (i, &s) in targets.iter().enumerate() {
                if !covered[i] && is_rainbow(&coloring, s) {
                    covered[i] = true;
                }
            }
            pool.push(coloring);
        }
        let mut uncovered: Vec<u32> = targets;
        let mut colorings = Vec::new();
        while !uncovered.is_empty() {
            let (best, _) = pool
                .iter()
                .enumerate()
                .map(|(i, c)| (i, uncovered.iter().filter(|&&s| is_rainbow(c, s)).count()))
                .max_by_key(|&(i, count)| (count, std::cmp::Reverse(i)))
                .expect("pool covers every subset");
            let chosen = pool.swap_remove(best);
            uncovered.retain(|&s| !is_rainbow(&chosen, s));
            colorings.push(chosen);
        }
        Ok(ColoringFamily { n, colors, mode, colorings })
    }

    /// ⌈e^colors · ln(1/ε)⌉ independent uniform colorings.
    pub fn randomized(n: usize, colors: usize, epsilon: f64, seed: u64) -> Result<Self, ColorError> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(ColorError::BadEpsilon(epsilon));
        }
        if colors > 64 {
            return Err(ColorError::TooManyColors(colors));
        }
        let mode = Mode::Randomized { epsilon, seed };
        if colors == 0 {
            return Ok(ColoringFamily { n, colors, mode, colorings: Vec::new() });
        }
        let size = ((colors as f64).exp() * (1.0 / epsilon).ln()).ceil();
        if size > MAX_MEMBERS as f64 {
            return Err(ColorError::TooManyMembers(size as usize));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let colorings = (0..size as usize).map(|_| (0..n).map(|_| rng.gen_range(0..colors) as u8).collect()).collect();
        Ok(ColoringFamily { n, colors, mode, colorings })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.colorings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colorings.is_empty()
    }

    pub fn coloring(&self, i: usize) -> &[u8] {
        &self.colorings[i]
    }

    /// Whether some member is injective on the given vertex set.
    pub fn separates(&self, vertices: &[VertexId]) -> bool {
        let mask = vertices.iter().fold(0u32, |m, &v| m | 1 << v);
        vertices.len() <= 32 && self.colorings.iter().any(|c| is_rainbow(c, mask))
    }
}
