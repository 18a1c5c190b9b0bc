//! Exhaustive solvers for small graphs, used as ground truth.
//!
//! Vertex sets are `u64` bitmasks. Bisections are enumerated with vertex 0
//! fixed on side A, so each unordered split is visited exactly once, in
//! ascending mask order. Quads are enumerated with the smallest vertex of A
//! fixed in A1; the score is invariant only under exchanging both `A1 ↔ A2`
//! and `B1 ↔ B2` at once, so B1 ranges over every half of B.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Bisection, Graph, QuadPartition};

/// Largest order accepted by the bisection enumerators.
pub const MAX_BISECTION_ORDER: usize = 20;
/// Largest half size accepted by the quad enumerator.
pub const MAX_QUAD_HALF: usize = 16;

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

/// Edges between two disjoint vertex masks.
fn edges_between(adj: &[u64], s: u64, t: u64) -> usize {
    bits(s).map(|v| (adj[v] & t).count_ones() as usize).sum()
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

fn to_vec(mask: u64) -> Vec<usize> {
    bits(mask).collect()
}

/// Every `k`-subset of the positions `0..width`, as masks in ascending order.
fn combinations(width: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << width;
    let mut next = if k > width {
        None
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let succ = (((r ^ cur) >> 2) / c) | r;
            (succ < limit).then_some(succ)
        };
        Some(cur)
    })
}

/// Spreads the bits of `sub` over the set bits of `within`.
fn deposit(sub: u64, within: u64) -> u64 {
    bits(within)
        .enumerate()
        .filter(|(i, _)| sub >> i & 1 == 1)
        .fold(0, |m, (_, v)| m | 1 << v)
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn guard_bisection(g: &Graph) -> Result<()> {
    let n = g.n();
    if !n.is_multiple_of(2) || n < 2 {
        return Err(Error::domain(format!(
            "bisection enumeration needs an even order of at least 2, got {n}"
        )));
    }
    if n > MAX_BISECTION_ORDER {
        return Err(Error::Resource(format!(
            "exhaustive bisection search is limited to {MAX_BISECTION_ORDER} vertices, got {n}"
        )));
    }
    Ok(())
}

/// `(side A mask, cut)` for every balanced split with vertex 0 in A.
fn enumerate_splits(g: &Graph) -> Result<Vec<(u64, usize)>> {
    guard_bisection(g)?;
    let n = g.n();
    let adj = adjacency_masks(g);
    let full = full_mask(n);
    Ok(combinations(n - 1, n / 2 - 1)
        .map(|c| {
            let a = 1 | c << 1;
            (a, edges_between(&adj, a, full & !a))
        })
        .collect())
}

fn bisection_of(n: usize, a: u64) -> Bisection {
    Bisection::new(n, to_vec(a), to_vec(full_mask(n) & !a)).expect("enumerated split is balanced")
}

/// All balanced splits with their cut sizes, each unordered split once.
pub fn bisection_cuts(g: &Graph) -> Result<Vec<(Bisection, usize)>> {
    Ok(enumerate_splits(g)?
        .into_iter()
        .map(|(a, cut)| (bisection_of(g.n(), a), cut))
        .collect())
}

/// Minimum bisection cut and every split achieving it.
pub fn min_bisection_bf(g: &Graph) -> Result<(usize, Vec<Bisection>)> {
    let splits = enumerate_splits(g)?;
    let best = splits
        .iter()
        .map(|&(_, c)| c)
        .min()
        .expect("at least one split");
    let optimal = splits
        .iter()
        .filter(|&&(_, c)| c == best)
        .map(|&(a, _)| bisection_of(g.n(), a))
        .collect();
    Ok((best, optimal))
}

/// Maximum bisection cut and every split achieving it.
pub fn max_bisection_bf(g: &Graph) -> Result<(usize, Vec<Bisection>)> {
    let splits = enumerate_splits(g)?;
    let best = splits
        .iter()
        .map(|&(_, c)| c)
        .max()
        .expect("at least one split");
    let optimal = splits
        .iter()
        .filter(|&&(_, c)| c == best)
        .map(|&(a, _)| bisection_of(g.n(), a))
        .collect();
    Ok((best, optimal))
}

/// Second minimum cut over bisections.
///
/// With a unique minimum this is the smallest cut among all other splits.
/// When several splits attain the minimum, another minimum split counts as the
/// second one and the value equals the minimum.
pub fn second_min_bisection_bf(g: &Graph) -> Result<(usize, Bisection)> {
    let splits = enumerate_splits(g)?;
    if splits.len() < 2 {
        return Err(Error::domain(format!(
            "a graph of order {} has only one bisection",
            g.n()
        )));
    }
    let best = splits.iter().map(|&(_, c)| c).min().expect("nonempty");
    let optimal: Vec<u64> = splits
        .iter()
        .filter(|&&(_, c)| c == best)
        .map(|&(a, _)| a)
        .collect();
    let (a, cut) = if optimal.len() > 1 {
        (optimal[1], best)
    } else {
        splits
            .iter()
            .filter(|&&(a, _)| a != optimal[0])
            .min_by_key(|&&(_, c)| c)
            .copied()
            .expect("at least two splits")
    };
    Ok((cut, bisection_of(g.n(), a)))
}

fn guard_quad(g: &Graph, bis: &Bisection) -> Result<usize> {
    bis.check_order(g.n())?;
    let half = bis.a().len();
    if !half.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "halves of size {half} cannot be split into equal quarters"
        )));
    }
    if half > MAX_QUAD_HALF {
        return Err(Error::Resource(format!(
            "exhaustive quad search is limited to halves of {MAX_QUAD_HALF} vertices, got {half}"
        )));
    }
    Ok(half)
}

/// Visits every quad `(A1, A2, B1, B2)` of `bis` up to the joint block swap.
fn for_each_quad(
    g: &Graph,
    bis: &Bisection,
    mut visit: impl FnMut(u64, u64, u64, u64),
) -> Result<()> {
    let half = guard_quad(g, bis)?;
    let a = bis.a().iter().fold(0u64, |m, &v| m | 1 << v);
    let b = bis.b().iter().fold(0u64, |m, &v| m | 1 << v);
    let a_first = a & a.wrapping_neg();
    let a_rest = a & !a_first;
    let quarter = half / 2;
    for ca in combinations(half - 1, quarter - 1) {
        let a1 = a_first | deposit(ca, a_rest);
        let a2 = a & !a1;
        for cb in combinations(half, quarter) {
            let b1 = deposit(cb, b);
            visit(a1, a2, b1, b & !b1);
        }
    }
    Ok(())
}

fn quad_of(n: usize, a1: u64, a2: u64, b1: u64, b2: u64) -> QuadPartition {
    QuadPartition::new(n, to_vec(a1), to_vec(a2), to_vec(b1), to_vec(b2))
        .expect("enumerated quad is valid")
}

/// Exact minimum quad score `d_c` of a bisection with one minimizing quad.
pub fn organized_partition_bf(g: &Graph, bis: &Bisection) -> Result<(i64, QuadPartition)> {
    guard_quad(g, bis)?;
    let adj = adjacency_masks(g);
    let mut best: Option<(i64, [u64; 4])> = None;
    for_each_quad(g, bis, |a1, a2, b1, b2| {
        let score = edges_between(&adj, a1, a2) as i64 + edges_between(&adj, b1, b2) as i64
            - edges_between(&adj, a1, b1) as i64
            - edges_between(&adj, a2, b2) as i64;
        if best.is_none_or(|(s, _)| score < s) {
            best = Some((score, [a1, a2, b1, b2]));
        }
    })?;
    let (d_c, [a1, a2, b1, b2]) = best.expect("at least one quad");
    Ok((d_c, quad_of(g.n(), a1, a2, b1, b2)))
}

/// Both sides of the integer-program identity for one bisection, scaled by `n/4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    /// `(n/4)·min xᵀLx` over `±1/√n` vectors with `xᵀ1 = 0` and `yᵀx = 0`.
    pub program_min: i64,
    pub cut: usize,
    pub d_c: i64,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.program_min == self.cut as i64 + self.d_c
    }
}

/// Minimizes `sᵀLs` over every sign vector `s ∈ {±1}ⁿ` with `Σs = 0` and
/// `Σ s_i t_i = 0`, where `t` is the ±1 indicator of `bis`, and compares
/// `sᵀLs / 4` (that is, `(n/4)·xᵀLx` for `x = s/√n`) with `E(A,B) + d_c`.
pub fn integer_program_identity(g: &Graph, bis: &Bisection) -> Result<IdentityCheck> {
    guard_bisection(g)?;
    let n = g.n();
    let cut = g.cut_size(bis)?;
    let (d_c, _) = organized_partition_bf(g, bis)?;

    let laplacian = integer_laplacian(g);
    let t: Vec<i64> = bis.mask().iter().map(|&p| if p { 1 } else { -1 }).collect();
    let mut best = i64::MAX;
    for pos in combinations(n, n / 2) {
        let s: Vec<i64> = (0..n)
            .map(|i| if pos >> i & 1 == 1 { 1 } else { -1 })
            .collect();
        if s.iter().zip(&t).map(|(a, b)| a * b).sum::<i64>() != 0 {
            continue;
        }
        let q: i64 = (0..n)
            .map(|i| s[i] * (0..n).map(|j| laplacian[i][j] * s[j]).sum::<i64>())
            .sum();
        best = best.min(q);
    }
    if best == i64::MAX {
        return Err(Error::domain("no sign vector satisfies both constraints"));
    }
    debug_assert_eq!(best % 4, 0);
    Ok(IdentityCheck {
        program_min: best / 4,
        cut,
        d_c,
    })
}

/// Boolean form of [`integer_program_identity`].
pub fn integer_program_identity_check(g: &Graph, bis: &Bisection) -> Result<bool> {
    Ok(integer_program_identity(g, bis)?.holds())
}

fn integer_laplacian(g: &Graph) -> Vec<Vec<i64>> {
    let n = g.n();
    let mut l = vec![vec![0i64; n]; n];
    for (v, row) in l.iter_mut().enumerate() {
        row[v] = g.degree(v) as i64;
    }
    for &(u, v) in g.edges() {
        l[u][v] = -1;
        l[v][u] = -1;
    }
    l
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JointSolution {
    pub bisection: Bisection,
    pub quad: QuadPartition,
    pub cut: usize,
    pub d_c: i64,
}

/// Solves the two stacked integer programs: a minimum balanced indicator `y`,
/// then the minimum `x` orthogonal to it. Among minimum bisections the one
/// with the smallest `d_c` minimizes the sum `(4/n)(2·cut + d_c)`.
pub fn joint_program_bf(g: &Graph) -> Result<JointSolution> {
    let n = g.n();
    if !n.is_multiple_of(4) {
        return Err(Error::domain(format!(
            "joint program needs a multiple of 4 vertices, got {n}"
        )));
    }
    if n > MAX_QUAD_HALF {
        return Err(Error::Resource(format!(
            "joint program search is limited to {MAX_QUAD_HALF} vertices, got {n}"
        )));
    }
    let (cut, optimal) = min_bisection_bf(g)?;
    let mut best: Option<JointSolution> = None;
    for bis in optimal {
        let (d_c, quad) = organized_partition_bf(g, &bis)?;
        if best.as_ref().is_none_or(|b| d_c < b.d_c) {
            best = Some(JointSolution {
                bisection: bis,
                quad,
                cut,
                d_c,
            });
        }
    }
    Ok(best.expect("at least one minimum bisection"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub min_cut: usize,
    pub min_bisections: Vec<Bisection>,
    pub second_min_cut: Option<usize>,
    pub max_cut: usize,
    /// `d_c` of the first minimum bisection; absent unless `n ≡ 0 (mod 4)`.
    pub d_c_of_min: Option<i64>,
    pub organized_quad: Option<QuadPartition>,
}

pub fn oracle_report(g: &Graph) -> Result<OracleReport> {
    let (min_cut, min_bisections) = min_bisection_bf(g)?;
    let (max_cut, _) = max_bisection_bf(g)?;
    let second_min_cut = match second_min_bisection_bf(g) {
        Ok((c, _)) => Some(c),
        Err(Error::Domain(_)) => None,
        Err(e) => return Err(e),
    };
    let (d_c_of_min, organized_quad) = if g.n().is_multiple_of(4) {
        let (d, q) = organized_partition_bf(g, &min_bisections[0])?;
        (Some(d), Some(q))
    } else {
        (None, None)
    };
    Ok(OracleReport {
        min_cut,
        min_bisections,
        second_min_cut,
        max_cut,
        d_c_of_min,
        organized_quad,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path, roach};
    use crate::organized::quad_score;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn combinations_count_and_order() {
        let all: Vec<u64> = combinations(5, 2).collect();
        assert_eq!(all.len(), 10);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|m| m.count_ones() == 2));
        assert_eq!(combinations(4, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(combinations(3, 3).collect::<Vec<_>>(), vec![0b111]);
    }

    #[test]
    fn split_count() {
        for n in [2usize, 4, 6, 8, 10] {
            let g = path(n).unwrap();
            let want = binom(n as u64, n as u64 / 2) / 2;
            assert_eq!(bisection_cuts(&g).unwrap().len() as u64, want);
        }
    }

    #[test]
    fn min_examples() {
        let (cut, opt) = min_bisection_bf(&cycle(4).unwrap()).unwrap();
        assert_eq!((cut, opt.len()), (2, 2));
        let (cut, opt) = min_bisection_bf(&complete(4).unwrap()).unwrap();
        assert_eq!((cut, opt.len()), (4, 3));
        let r = roach(4).unwrap();
        let (cut, opt) = min_bisection_bf(&r).unwrap();
        assert_eq!(cut, 2);
        let antennae = Bisection::from_side_a(16, vec![0, 1, 2, 3, 8, 9, 10, 11]).unwrap();
        assert!(opt.iter().any(|b| b.same_split(&antennae)));
    }

    #[test]
    fn second_min_examples() {
        let (cut, bis) = second_min_bisection_bf(&path(4).unwrap()).unwrap();
        assert_eq!(cut, 2);
        assert_eq!(bis.a(), &[0, 3]);
        assert_eq!(second_min_bisection_bf(&cycle(4).unwrap()).unwrap().0, 2);
        assert!(second_min_bisection_bf(&complete(2).unwrap()).is_err());
    }

    #[test]
    fn max_examples() {
        let (cut, bis) = max_bisection_bf(&path(4).unwrap()).unwrap();
        assert_eq!(cut, 3);
        assert_eq!(bis[0].a(), &[0, 2]);
        assert_eq!(max_bisection_bf(&complete(4).unwrap()).unwrap().0, 4);
        assert_eq!(max_bisection_bf(&cycle(4).unwrap()).unwrap().0, 4);
    }

    #[test]
    fn guards() {
        let big = cycle(22).unwrap();
        assert!(matches!(min_bisection_bf(&big), Err(Error::Resource(_))));
        assert!(matches!(
            min_bisection_bf(&path(5).unwrap()),
            Err(Error::Domain(_))
        ));
        let g = cycle(6).unwrap();
        let bis = Bisection::from_side_a(6, vec![0, 1, 2]).unwrap();
        assert!(matches!(
            organized_partition_bf(&g, &bis),
            Err(Error::Domain(_))
        ));
        let g = cycle(36).unwrap();
        let bis = Bisection::from_side_a(36, (0..18).collect()).unwrap();
        assert!(matches!(
            organized_partition_bf(&g, &bis),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            joint_program_bf(&cycle(20).unwrap()),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            joint_program_bf(&cycle(6).unwrap()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn organized_examples() {
        let r = roach(4).unwrap();
        let sb = Bisection::from_side_a(16, (0..8).collect()).unwrap();
        let (d_c, quad) = organized_partition_bf(&r, &sb).unwrap();
        assert_eq!(d_c, -2);
        assert_eq!(quad_score(&r, &quad).unwrap(), -2);
        assert!(quad.refines(&sb));

        let c4 = cycle(4).unwrap();
        let adjacent = Bisection::from_side_a(4, vec![0, 1]).unwrap();
        assert_eq!(organized_partition_bf(&c4, &adjacent).unwrap().0, 0);
        let k4 = complete(4).unwrap();
        for a in [[0, 1], [0, 2], [0, 3]] {
            let bis = Bisection::from_side_a(4, a.to_vec()).unwrap();
            assert_eq!(organized_partition_bf(&k4, &bis).unwrap().0, 0);
        }
    }

    #[test]
    fn quad_enumeration_covers_every_quad_up_to_joint_swap() {
        let g = roach(2).unwrap();
        let bis = Bisection::from_side_a(8, vec![0, 1, 4, 5]).unwrap();
        let mut seen = Vec::new();
        for_each_quad(&g, &bis, |a1, a2, b1, b2| seen.push((a1, a2, b1, b2))).unwrap();
        // C(4,2)/2 choices for A1 times C(4,2) for B1
        assert_eq!(seen.len(), 3 * 6);
        for &(a1, a2, b1, b2) in &seen {
            assert!(!seen.contains(&(a2, a1, b2, b1)));
        }
    }

    #[test]
    fn identity_examples() {
        let r = roach(4).unwrap();
        let sb = Bisection::from_side_a(16, (0..8).collect()).unwrap();
        let check = integer_program_identity(&r, &sb).unwrap();
        assert_eq!((check.program_min, check.cut, check.d_c), (2, 4, -2));
        assert!(check.holds());

        let c4 = cycle(4).unwrap();
        let bis = Bisection::from_side_a(4, vec![0, 1]).unwrap();
        let check = integer_program_identity(&c4, &bis).unwrap();
        assert_eq!(check.program_min, 2);
        assert!(integer_program_identity_check(&c4, &bis).unwrap());
    }

    #[test]
    fn joint_examples() {
        let sol = joint_program_bf(&roach(4).unwrap()).unwrap();
        assert_eq!(sol.cut, 2);
        assert!(sol.quad.refines(&sol.bisection));
        let sol = joint_program_bf(&complete(4).unwrap()).unwrap();
        assert_eq!((sol.cut, sol.d_c), (4, 0));
        assert_eq!(joint_program_bf(&cycle(8).unwrap()).unwrap().cut, 2);
    }

    #[test]
    fn report_on_roach2() {
        let rep = oracle_report(&roach(2).unwrap()).unwrap();
        assert_eq!(rep.min_cut, 2);
        assert!(rep.second_min_cut.unwrap() >= rep.min_cut);
        assert!(rep.max_cut >= rep.second_min_cut.unwrap());
        assert!(rep.d_c_of_min.unwrap() >= 0);
        let rep = oracle_report(&path(6).unwrap()).unwrap();
        assert!(rep.d_c_of_min.is_none());
    }
}
