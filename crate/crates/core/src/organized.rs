//! Four-block scoring of a bisection, indicator vectors and spectral lower bounds.
//!
//! For a quad `(A1, A2, B1, B2)` refining `(A, B)` the score is
//!
//! ```text
//! E(A1,A2) + E(B1,B2) − E(A1,B1) − E(A2,B2)
//! ```
//!
//! and its minimum over all quads of a bisection is written `d_c`. A negative
//! score certifies that `(A1 ∪ B1, A2 ∪ B2)` cuts fewer edges than `(A, B)`.
//! Scores are exact integers; the bounds are floating point.

use crate::error::Result;
use crate::graph::{Bisection, Graph, QuadPartition};
use crate::spectral::IndicatorVector;

/// The four pairwise block counts a quad score is assembled from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadCounts {
    pub a1_a2: usize,
    pub b1_b2: usize,
    pub a1_b1: usize,
    pub a2_b2: usize,
    pub a1_b2: usize,
    pub a2_b1: usize,
}

impl QuadCounts {
    pub fn score(&self) -> i64 {
        self.a1_a2 as i64 + self.b1_b2 as i64 - self.a1_b1 as i64 - self.a2_b2 as i64
    }
}

/// A quad together with its score.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadScore {
    pub value: i64,
    pub quad: QuadPartition,
}

fn check_quad(g: &Graph, q: &QuadPartition) -> Result<()> {
    if q.n() != g.n() {
        return Err(crate::Error::input(format!(
            "quad covers {} vertices but the graph has {}",
            q.n(),
            g.n()
        )));
    }
    Ok(())
}

pub fn quad_counts(g: &Graph, q: &QuadPartition) -> Result<QuadCounts> {
    check_quad(g, q)?;
    Ok(QuadCounts {
        a1_a2: g.cross_edges(q.a1(), q.a2())?,
        b1_b2: g.cross_edges(q.b1(), q.b2())?,
        a1_b1: g.cross_edges(q.a1(), q.b1())?,
        a2_b2: g.cross_edges(q.a2(), q.b2())?,
        a1_b2: g.cross_edges(q.a1(), q.b2())?,
        a2_b1: g.cross_edges(q.a2(), q.b1())?,
    })
}

/// `E(A1,A2) + E(B1,B2) − E(A1,B1) − E(A2,B2)`.
pub fn quad_score(g: &Graph, q: &QuadPartition) -> Result<i64> {
    Ok(quad_counts(g, q)?.score())
}

/// `E(A1,B2) + E(A2,B1) + E(A1,A2) + E(B1,B2)`, which equals
/// `E(A,B) + quad_score`.
pub fn alt_quad_score(g: &Graph, q: &QuadPartition) -> Result<usize> {
    let c = quad_counts(g, q)?;
    Ok(c.a1_b2 + c.a2_b1 + c.a1_a2 + c.b1_b2)
}

/// The regrouped bisection `(A1 ∪ B1, A2 ∪ B2)`.
pub fn improved_cut_from_quad(q: &QuadPartition) -> Bisection {
    let mut a = [q.a1(), q.b1()].concat();
    let mut b = [q.a2(), q.b2()].concat();
    a.sort_unstable();
    b.sort_unstable();
    Bisection::new(q.n(), a, b).expect("blocks of a valid quad form a bisection")
}

/// `+1/√n` on A, `−1/√n` on B.
pub fn indicator_vector(bis: &Bisection) -> IndicatorVector {
    IndicatorVector::from_mask(&bis.mask()).expect("a bisection is balanced")
}

/// `+1/√n` on `A1 ∪ B1`, `−1/√n` on `A2 ∪ B2`.
pub fn quad_indicator(q: &QuadPartition) -> IndicatorVector {
    indicator_vector(&improved_cut_from_quad(q))
}

/// `(n/4)·λ2`.
pub fn bound_donath_hoffman(g: &Graph, lambda2: f64) -> f64 {
    g.n() as f64 / 4.0 * lambda2
}

/// `(n/8)(λ2 + λ3) − d_c/2`, valid when `d_c` belongs to a minimum bisection.
pub fn bound_l2_l3(g: &Graph, lambda2: f64, lambda3: f64, d_c: i64) -> f64 {
    g.n() as f64 / 8.0 * (lambda2 + lambda3) - d_c as f64 / 2.0
}

/// True when the two-eigenvalue bound is strictly tighter than `(n/4)·λ2`,
/// i.e. `d_c < (n/4)(λ3 − λ2)`.
pub fn tighter_bound_condition(n: usize, lambda2: f64, lambda3: f64, d_c: i64) -> bool {
    (d_c as f64) < n as f64 / 4.0 * (lambda3 - lambda2)
}
