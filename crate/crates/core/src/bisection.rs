//! Spectral bisection, the two-eigenvector rotation sweep and refinement of a
//! given bisection.
//!
//! Every candidate comes from [`top_half_partition`] applied to a unit vector
//! in `span{x, y}`. For each vertex `i` the sweep takes the direction of the
//! point `(x_i, y_i)`:
//!
//! ```text
//! u = (x_i·x + y_i·y) / √(x_i² + y_i²)
//! ```
//!
//! and keeps the candidate only if it cuts strictly fewer edges than the best
//! so far. The starting bisection always stays in the race, so the result never
//! cuts more than the start.

use nalgebra::DVector;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Bisection, Graph};
use crate::organized::indicator_vector;
use crate::spectral::{
    constrained_min_for_graph, rotation_for_point, spectral_basis, SpectralBasis, SpectralConfig,
};

/// Which candidate won a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Initial,
    /// The top half of the constrained minimizer itself (refinement only).
    Constrained,
    /// The rotation through vertex `i`'s embedding point.
    Rotation(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepResult {
    pub best: Bisection,
    pub best_cut: usize,
    pub initial_cut: usize,
    pub candidates_evaluated: usize,
    /// Vertices whose point `(x_i, y_i)` is the origin.
    pub skipped: usize,
    pub origin: Origin,
}

/// `A` = indices of the `n/2` largest entries, ties broken by ascending index.
pub fn top_half_partition(u: &[f64]) -> Result<Bisection> {
    Bisection::from_mask(&top_half_mask(u)?)
}

fn top_half_mask(u: &[f64]) -> Result<Vec<bool>> {
    let n = u.len();
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::input(format!(
            "top-half split needs an even, nonzero length, got {n}"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| u[j].total_cmp(&u[i]).then(i.cmp(&j)));
    let mut side = vec![false; n];
    for &v in &order[..n / 2] {
        side[v] = true;
    }
    Ok(side)
}

fn require_bisectable(g: &Graph) -> Result<()> {
    if !g.n().is_multiple_of(2) {
        return Err(Error::domain(format!(
            "cannot bisect a graph with an odd number of vertices ({})",
            g.n()
        )));
    }
    Ok(())
}

/// Classic spectral bisection: the top half of the Fiedler vector.
pub fn spectral_bisection(g: &Graph, cfg: &SpectralConfig) -> Result<Bisection> {
    require_bisectable(g)?;
    let basis = spectral_basis(g, cfg)?;
    top_half_partition(basis.y.as_slice())
}

/// Evaluates the rotation through every vertex's point `(x_i, y_i)` and keeps
/// the first candidate with the smallest cut, provided it beats `initial`.
///
/// Candidates are evaluated in parallel; the winner is the same as for the
/// sequential loop over `i = 0..n` with a strict `<` test.
pub fn rotation_sweep(
    g: &Graph,
    x: &DVector<f64>,
    y: &DVector<f64>,
    initial: &Bisection,
) -> Result<SweepResult> {
    let initial_cut = g.cut_size(initial)?;
    sweep_against(
        g,
        x,
        y,
        initial.clone(),
        initial_cut,
        Origin::Initial,
        initial_cut,
    )
}

fn sweep_against(
    g: &Graph,
    x: &DVector<f64>,
    y: &DVector<f64>,
    incumbent: Bisection,
    incumbent_cut: usize,
    incumbent_origin: Origin,
    initial_cut: usize,
) -> Result<SweepResult> {
    let n = g.n();
    if x.len() != n || y.len() != n {
        return Err(Error::input(format!(
            "vectors of length {} and {} for a graph of order {n}",
            x.len(),
            y.len()
        )));
    }
    let candidates: Vec<Option<(usize, usize)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let u = rotation_for_point(x, y, i)?;
            let mask = top_half_mask(u.as_slice()).expect("order checked above");
            Some((g.cut_of_mask(&mask), i))
        })
        .collect();

    let evaluated = candidates.iter().flatten().count();
    let winner = candidates.iter().flatten().min().copied();

    let (best, best_cut, origin) = match winner {
        Some((cut, i)) if cut < incumbent_cut => {
            let u = rotation_for_point(x, y, i).expect("winner was evaluated");
            (top_half_partition(u.as_slice())?, cut, Origin::Rotation(i))
        }
        _ => (incumbent, incumbent_cut, incumbent_origin),
    };
    Ok(SweepResult {
        best,
        best_cut,
        initial_cut,
        candidates_evaluated: evaluated,
        skipped: n - evaluated,
        origin,
    })
}

/// Spectral bisection improved by the rotation sweep over `(λ3, λ2)` eigenvectors.
pub fn improved_bisection(g: &Graph, cfg: &SpectralConfig) -> Result<SweepResult> {
    require_bisectable(g)?;
    let basis = spectral_basis(g, cfg)?;
    improved_bisection_from_basis(g, &basis)
}

/// Same as [`improved_bisection`] for an already computed basis.
pub fn improved_bisection_from_basis(g: &Graph, basis: &SpectralBasis) -> Result<SweepResult> {
    require_bisectable(g)?;
    let initial = top_half_partition(basis.y.as_slice())?;
    rotation_sweep(g, &basis.x, &basis.y, &initial)
}

/// Refines `given` by sweeping rotations of its indicator vector and the
/// minimizer `x` of `xᵀLx` over unit vectors orthogonal to `1` and the
/// indicator. The top half of `x` is tried first, as the direct approximation
/// of `A1 ∪ B1`.
pub fn refine_bisection(g: &Graph, given: &Bisection, cfg: &SpectralConfig) -> Result<SweepResult> {
    require_bisectable(g)?;
    given.check_order(g.n())?;
    if !g.is_connected() {
        return Err(Error::domain("graph is disconnected"));
    }
    let y = indicator_vector(given).into_vector();
    let (_, x) = constrained_min_for_graph(g, &y, cfg)?;
    let initial_cut = g.cut_size(given)?;
    let direct = top_half_partition(x.as_slice())?;
    let direct_cut = g.cut_size(&direct)?;
    let (incumbent, incumbent_cut, origin) = if direct_cut < initial_cut {
        (direct, direct_cut, Origin::Constrained)
    } else {
        (given.clone(), initial_cut, Origin::Initial)
    };
    let mut res = sweep_against(g, &x, &y, incumbent, incumbent_cut, origin, initial_cut)?;
    res.candidates_evaluated += 1;
    Ok(res)
}
