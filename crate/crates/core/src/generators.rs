//! Graph generators: roach graphs, Erdős–Rényi samples and named fixtures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Roach graph with antennae of length `k`.
///
/// Two paths of `2k` vertices, the upper one `0..2k` and the lower one
/// `2k..4k`, joined by rungs `{i, 2k + i}` for `i < k`. The rungs make up the
/// body; vertices `k..2k` and `3k..4k` are the antennae.
pub fn roach(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::input("roach arm length must be at least 1"));
    }
    let half = 2 * k;
    let mut edges = Vec::with_capacity(2 * (half - 1) + k);
    for i in 0..half - 1 {
        edges.push((i, i + 1));
        edges.push((half + i, half + i + 1));
    }
    for i in 0..k {
        edges.push((i, half + i));
    }
    Graph::new(2 * half, edges)
}

/// G(n, p) with a fixed seed. Identical seeds give identical edge sets.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    erdos_renyi_with_rng(n, p, &mut rng)
}

/// G(n, p) drawing from a caller-supplied generator. Pairs are visited in
/// lexicographic order, one uniform draw each.
pub fn erdos_renyi_with_rng<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!(
            "edge probability {p} is outside [0, 1]"
        )));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureKind {
    Path,
    Cycle,
    Complete,
}

pub fn fixture(kind: FixtureKind, n: usize) -> Result<Graph> {
    match kind {
        FixtureKind::Path => path(n),
        FixtureKind::Cycle => cycle(n),
        FixtureKind::Complete => complete(n),
    }
}

pub fn path(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::input("a path needs at least 2 vertices"));
    }
    Graph::new(n, (0..n - 1).map(|i| (i, i + 1)))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::input("a cycle needs at least 3 vertices"));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::input("a complete graph needs at least 2 vertices"));
    }
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `rows × cols` grid, vertex `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 {
        return Err(Error::input("grid dimensions must be positive"));
    }
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::new(rows * cols, edges)
}
