//! Undirected simple graphs, balanced bisections and their four-block refinements.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};

/// An undirected, unweighted, simple graph on vertices `0..n`.
///
/// Immutable after construction. Edges are stored once as `(u, v)` with
/// `u < v`, sorted; adjacency lists are sorted and symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from raw vertex pairs. Self-loops are dropped and
    /// duplicate or mirrored pairs collapse to one edge.
    pub fn new(n: usize, raw_edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("graph must have at least one vertex"));
        }
        let mut edges = Vec::new();
        for (u, v) in raw_edges {
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u != v {
                edges.push((u.min(v), u.max(v)));
            }
        }
        edges.sort_unstable();
        edges.dedup();

        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Number of edges with one endpoint in `s` and the other in `t`.
    ///
    /// The sets must be disjoint subsets of the vertex set; they need not cover it.
    pub fn cross_edges(&self, s: &[usize], t: &[usize]) -> Result<usize> {
        let mut mark = vec![0u8; self.n];
        for (tag, set) in [(1u8, s), (2u8, t)] {
            for &v in set {
                if v >= self.n {
                    return Err(Error::input(format!("vertex {v} outside 0..{}", self.n)));
                }
                if mark[v] != 0 {
                    return Err(Error::input(format!(
                        "vertex {v} appears twice across the two sets"
                    )));
                }
                mark[v] = tag;
            }
        }
        Ok(s.iter()
            .map(|&u| self.adj[u].iter().filter(|&&w| mark[w] == 2).count())
            .sum())
    }

    /// Size of the cut `E(A, B)` of a bisection.
    pub fn cut_size(&self, bis: &Bisection) -> Result<usize> {
        bis.check_order(self.n)?;
        Ok(self.cut_of_mask(&bis.mask()))
    }

    /// Edges crossing a two-sided labelling; `side[v]` is true for side A.
    pub(crate) fn cut_of_mask(&self, side: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| side[u] != side[v])
            .count()
    }

    /// True iff the graph has a single connected component.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.n
    }
}

fn sorted_unique(mut set: Vec<usize>, n: usize, what: &str) -> Result<Vec<usize>> {
    set.sort_unstable();
    if set.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::input(format!("{what} lists a vertex twice")));
    }
    if let Some(&v) = set.last() {
        if v >= n {
            return Err(Error::input(format!(
                "{what} holds vertex {v} outside 0..{n}"
            )));
        }
    }
    Ok(set)
}

/// A balanced split of `0..n` into halves `A` and `B`.
///
/// Both halves are stored sorted. The order of the pair matters only for
/// bookkeeping (indicator vectors are positive on `A`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Bisection {
    a: Vec<usize>,
    b: Vec<usize>,
}

impl Bisection {
    pub fn new(n: usize, a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        if !n.is_multiple_of(2) {
            return Err(Error::domain(format!(
                "a bisection needs an even number of vertices, got {n}"
            )));
        }
        let a = sorted_unique(a, n, "side A")?;
        let b = sorted_unique(b, n, "side B")?;
        if a.len() != b.len() || a.len() + b.len() != n {
            return Err(Error::input(format!(
                "sides of sizes {} and {} do not split {n} vertices evenly",
                a.len(),
                b.len()
            )));
        }
        let mut seen = vec![false; n];
        for &v in a.iter().chain(&b) {
            if seen[v] {
                return Err(Error::input(format!("vertex {v} is on both sides")));
            }
            seen[v] = true;
        }
        Ok(Bisection { a, b })
    }

    /// Side A is `a`, side B is every other vertex of `0..n`.
    pub fn from_side_a(n: usize, a: Vec<usize>) -> Result<Self> {
        let a = sorted_unique(a, n, "side A")?;
        let mut in_a = vec![false; n];
        for &v in &a {
            in_a[v] = true;
        }
        let b = (0..n).filter(|&v| !in_a[v]).collect();
        Bisection::new(n, a, b)
    }

    /// `side[v] == true` places `v` in A.
    pub fn from_mask(side: &[bool]) -> Result<Self> {
        let (a, b): (Vec<usize>, Vec<usize>) = (0..side.len()).partition(|&v| side[v]);
        Bisection::new(side.len(), a, b)
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.a.len() + self.b.len()
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut side = vec![false; self.n()];
        for &v in &self.a {
            side[v] = true;
        }
        side
    }

    /// Same unordered split, regardless of which half is called A.
    pub fn same_split(&self, other: &Bisection) -> bool {
        (self.a == other.a && self.b == other.b) || (self.a == other.b && self.b == other.a)
    }

    /// The same split with the halves exchanged.
    pub fn swapped(&self) -> Bisection {
        Bisection {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    pub(crate) fn check_order(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::input(format!(
                "bisection covers {} vertices but the graph has {n}",
                self.n()
            )));
        }
        Ok(())
    }
}

/// Four equal blocks `A1 ∪ A2 = A`, `B1 ∪ B2 = B` refining a bisection.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuadPartition {
    a1: Vec<usize>,
    a2: Vec<usize>,
    b1: Vec<usize>,
    b2: Vec<usize>,
}

impl QuadPartition {
    /// Validates that the four blocks are pairwise disjoint, cover `0..n` and
    /// have equal size.
    pub fn new(
        n: usize,
        a1: Vec<usize>,
        a2: Vec<usize>,
        b1: Vec<usize>,
        b2: Vec<usize>,
    ) -> Result<Self> {
        if !n.is_multiple_of(4) {
            return Err(Error::domain(format!(
                "a four-block partition needs a multiple of 4 vertices, got {n}"
            )));
        }
        let a1 = sorted_unique(a1, n, "block A1")?;
        let a2 = sorted_unique(a2, n, "block A2")?;
        let b1 = sorted_unique(b1, n, "block B1")?;
        let b2 = sorted_unique(b2, n, "block B2")?;
        let q = n / 4;
        if [&a1, &a2, &b1, &b2].iter().any(|blk| blk.len() != q) {
            return Err(Error::input(format!(
                "blocks must all have {q} vertices, got {}, {}, {}, {}",
                a1.len(),
                a2.len(),
                b1.len(),
                b2.len()
            )));
        }
        let mut seen = vec![false; n];
        for &v in a1.iter().chain(&a2).chain(&b1).chain(&b2) {
            if seen[v] {
                return Err(Error::input(format!("vertex {v} is in two blocks")));
            }
            seen[v] = true;
        }
        Ok(QuadPartition { a1, a2, b1, b2 })
    }

    pub fn a1(&self) -> &[usize] {
        &self.a1
    }

    pub fn a2(&self) -> &[usize] {
        &self.a2
    }

    pub fn b1(&self) -> &[usize] {
        &self.b1
    }

    pub fn b2(&self) -> &[usize] {
        &self.b2
    }

    pub fn n(&self) -> usize {
        4 * self.a1.len()
    }

    /// The enclosing bisection `(A1 ∪ A2, B1 ∪ B2)`.
    pub fn bisection(&self) -> Bisection {
        let mut a = [self.a1.as_slice(), &self.a2].concat();
        let mut b = [self.b1.as_slice(), &self.b2].concat();
        a.sort_unstable();
        b.sort_unstable();
        Bisection { a, b }
    }

    /// True if this quad refines `bis` with A1, A2 inside A and B1, B2 inside B.
    pub fn refines(&self, bis: &Bisection) -> bool {
        let own = self.bisection();
        own.a == bis.a && own.b == bis.b
    }
}
