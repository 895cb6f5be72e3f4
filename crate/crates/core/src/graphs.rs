//! Sparsity graphs of `Y` and the exclusion rules for them.
//!
//! Vertices are 0-based. A self-loop at `i` records a nonzero diagonal
//! entry `y_ii`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::HermitianMatrix;

/// Largest vertex count accepted by [`enumerate_small_graphs`].
pub const MAX_ENUM_VERTICES: usize = 5;

/// Relative cutoff used by [`graph_of_default`].
pub const GRAPH_REL_TOL: f64 = 1e-10;

/// Undirected graph with optional self-loops.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct MatrixGraph {
    n: usize,
    adj: Vec<bool>,
}

impl MatrixGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`, `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut g = Self::path(n);
        g.link(n - 1, 0);
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::new(n);
        for i in 1..n {
            g.link(i - 1, i);
        }
        g
    }

    /// Star with center `0`.
    pub fn star(n: usize) -> Self {
        let mut g = Self::new(n);
        for i in 1..n {
            g.link(0, i);
        }
        g
    }

    fn link(&mut self, i: usize, j: usize) {
        self.adj[i * self.n + j] = true;
        self.adj[j * self.n + i] = true;
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        self.link(i, j);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.adj[i * self.n + j]
    }

    pub fn has_loop(&self, i: usize) -> bool {
        self.has_edge(i, i)
    }

    /// All edges `(i, j)` with `i <= j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Neighbours of `i` other than `i` itself.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| j != i && self.has_edge(i, j))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    /// Number of edges between distinct vertices.
    pub fn link_count(&self) -> usize {
        self.edges().iter().filter(|(i, j)| i != j).count()
    }

    pub fn loop_count(&self) -> usize {
        (0..self.n).filter(|&i| self.has_loop(i)).count()
    }

    /// Breadth-first distances from `src`, `None` for unreachable vertices.
    pub fn distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        if src >= self.n {
            return dist;
        }
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or(0);
            for w in self.neighbors(v) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connectivity ignoring self-loops. The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances(0).iter().all(Option::is_some)
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let comp: Vec<usize> = self
                .distances(s)
                .iter()
                .enumerate()
                .filter_map(|(v, d)| d.map(|_| v))
                .collect();
            for &v in &comp {
                seen[v] = true;
            }
            out.push(comp);
        }
        out
    }

    /// Loop-free, connected, with `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.loop_count() == 0 && self.is_connected() && self.link_count() == self.n - 1
    }

    /// `Some(n)` when the graph is the loop-free cycle on all `n >= 3` vertices.
    pub fn cycle_length(&self) -> Option<usize> {
        let is_cycle = self.n >= 3
            && self.loop_count() == 0
            && self.is_connected()
            && (0..self.n).all(|i| self.degree(i) == 2);
        is_cycle.then_some(self.n)
    }

    /// Largest finite distance together with a pair realizing it.
    pub fn diameter(&self) -> (usize, usize, usize) {
        let mut best = (0, 0, 0);
        for s in 0..self.n {
            for (t, d) in self.distances(s).iter().enumerate() {
                if let Some(d) = *d {
                    if d > best.0 {
                        best = (d, s, t);
                    }
                }
            }
        }
        best
    }

    /// Adjacency matrix with `1` on the diagonal where a loop is present.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| u64::from(self.has_edge(i, j))).collect())
            .collect()
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut g = Self::new(self.n);
        for (i, j) in self.edges() {
            g.link(perm[i], perm[j]);
        }
        g
    }

    fn code(&self, perm: &[usize]) -> u64 {
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..self.n {
            for j in i..self.n {
                if self.has_edge(perm[i], perm[j]) {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        code
    }

    /// Isomorphism-invariant key: the smallest edge code over all vertex
    /// relabellings. Exponential in `n`; meant for `n <= 8`.
    pub fn canonical_key(&self) -> u64 {
        let mut best = u64::MAX;
        for_each_permutation(self.n, |perm| best = best.min(self.code(perm)));
        best
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.n == other.n && self.canonical_key() == other.canonical_key()
    }

    /// Neighbour lists; a vertex lists itself when it carries a loop.
    pub fn to_adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| (0..self.n).filter(|&j| self.has_edge(i, j)).collect())
            .collect()
    }

    /// Builds a graph from neighbour lists, which must be symmetric.
    pub fn from_adjacency_lists(lists: &[Vec<usize>]) -> Result<Self> {
        let n = lists.len();
        let mut g = Self::new(n);
        for (i, nbrs) in lists.iter().enumerate() {
            for &j in nbrs {
                g.add_edge(i, j)?;
            }
        }
        for (i, nbrs) in lists.iter().enumerate() {
            for j in 0..n {
                if g.has_edge(i, j) && !nbrs.contains(&j) {
                    return Err(Error::Schema(format!(
                        "adjacency lists are not symmetric: {j} lists {i} but {i} does not list {j}"
                    )));
                }
            }
        }
        Ok(g)
    }
}

impl TryFrom<Vec<Vec<usize>>> for MatrixGraph {
    type Error = Error;

    fn try_from(lists: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_adjacency_lists(&lists)
    }
}

impl From<MatrixGraph> for Vec<Vec<usize>> {
    fn from(g: MatrixGraph) -> Self {
        g.to_adjacency_lists()
    }
}

impl fmt::Display for MatrixGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().iter().map(|(i, j)| format!("{i}-{j}")).collect();
        write!(f, "n={} edges=[{}]", self.n, edges.join(", "))
    }
}

/// Heap's algorithm over `0..n`.
fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Graph of `Y`: edge `(i, j)` iff `|y_ij| > tol`.
pub fn graph_of(y: &HermitianMatrix, tol: f64) -> MatrixGraph {
    let n = y.dim();
    let mut g = MatrixGraph::new(n);
    for i in 0..n {
        for j in i..n {
            if y.get(i, j).norm() > tol {
                g.link(i, j);
            }
        }
    }
    g
}

/// [`graph_of`] with cutoff `GRAPH_REL_TOL * max |y_ij|`.
pub fn graph_of_default(y: &HermitianMatrix) -> MatrixGraph {
    graph_of(y, GRAPH_REL_TOL * y.as_matrix().max_abs())
}

/// Number of walks of length `len` from `i` to `j`; loops count as steps.
pub fn count_walks(g: &MatrixGraph, i: usize, j: usize, len: u32) -> Result<u128> {
    g.check_vertex(i)?;
    g.check_vertex(j)?;
    let mut v = vec![0u128; g.n];
    v[i] = 1;
    for _ in 0..len {
        let mut next = vec![0u128; g.n];
        for (a, &count) in v.iter().enumerate() {
            if count == 0 {
                continue;
            }
            for (b, slot) in next.iter_mut().enumerate() {
                if g.has_edge(a, b) {
                    *slot += count;
                }
            }
        }
        v = next;
    }
    Ok(v[j])
}

fn walks_of_length_three(g: &MatrixGraph, i: usize, j: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 0..g.n {
        if !g.has_edge(i, a) {
            continue;
        }
        for b in 0..g.n {
            if g.has_edge(a, b) && g.has_edge(b, j) {
                out.push(vec![i, a, b, j]);
            }
        }
    }
    out
}

/// Concrete evidence that a graph is forbidden.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Witness {
    /// The only length-3 walk from `from` to `to`, with `(from, to)` not an edge.
    UniqueWalk {
        from: usize,
        to: usize,
        walk: Vec<usize>,
    },
    /// A tree whose vertices `from` and `to` are `distance >= 3` apart.
    LongTree { from: usize, to: usize, distance: usize },
    /// The whole graph is a cycle of this length, not 4 or 6.
    Cycle { length: usize },
}

impl Witness {
    /// Rechecks the witness against `g` from scratch.
    pub fn holds_for(&self, g: &MatrixGraph) -> bool {
        match self {
            Witness::UniqueWalk { from, to, walk } => {
                walk.len() == 4
                    && walk.first() == Some(from)
                    && walk.last() == Some(to)
                    && walk.windows(2).all(|w| g.has_edge(w[0], w[1]))
                    && !g.has_edge(*from, *to)
                    && count_walks(g, *from, *to, 3).ok() == Some(1)
            }
            Witness::LongTree { from, to, distance } => {
                *distance >= 3 && g.is_tree() && g.distances(*from).get(*to) == Some(&Some(*distance))
            }
            Witness::Cycle { length } => g.cycle_length() == Some(*length) && *length != 4 && *length != 6,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::UniqueWalk { from, to, walk } => {
                let w: Vec<String> = walk.iter().map(usize::to_string).collect();
                write!(
                    f,
                    "unique walk of length 3 from {from} to {to} ({}) and ({from},{to}) is not an edge",
                    w.join(" -> ")
                )
            }
            Witness::LongTree { from, to, distance } => {
                write!(
                    f,
                    "tree with vertices {from} and {to} at distance {distance} >= 3"
                )
            }
            Witness::Cycle { length } => write!(f, "cycle of length {length}, not 4 or 6"),
        }
    }
}

/// Outcome of [`forbidden_check`]. There is deliberately no "admissible"
/// verdict: passing every rule only means the graph is not excluded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GraphVerdict {
    Forbidden { witness: Witness },
    NotExcluded,
}

impl GraphVerdict {
    pub fn is_forbidden(&self) -> bool {
        matches!(self, GraphVerdict::Forbidden { .. })
    }
}

impl fmt::Display for GraphVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphVerdict::Forbidden { witness } => write!(f, "Forbidden: {witness}"),
            GraphVerdict::NotExcluded => write!(f, "NotExcluded"),
        }
    }
}

/// Applies the cycle rule, the tree rule and the unique-walk rule in that order.
pub fn forbidden_check(g: &MatrixGraph) -> GraphVerdict {
    if let Some(length) = g.cycle_length() {
        if length != 4 && length != 6 {
            return GraphVerdict::Forbidden {
                witness: Witness::Cycle { length },
            };
        }
    }
    if g.is_tree() {
        let (distance, from, to) = g.diameter();
        if distance >= 3 {
            return GraphVerdict::Forbidden {
                witness: Witness::LongTree { from, to, distance },
            };
        }
    }
    for i in 0..g.n {
        for j in i..g.n {
            if g.has_edge(i, j) {
                continue;
            }
            let walks = walks_of_length_three(g, i, j);
            if walks.len() == 1 {
                let walk = walks.into_iter().next().unwrap_or_default();
                return GraphVerdict::Forbidden {
                    witness: Witness::UniqueWalk { from: i, to: j, walk },
                };
            }
        }
    }
    GraphVerdict::NotExcluded
}

/// All connected loop-graphs on `n` vertices, one per isomorphism class.
pub fn enumerate_small_graphs(n: usize) -> Result<Vec<MatrixGraph>> {
    if n == 0 || n > MAX_ENUM_VERTICES {
        return Err(Error::GraphSizeOutOfRange(n));
    }
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << slots.len()) {
        let mut g = MatrixGraph::new(n);
        for (bit, &(i, j)) in slots.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                g.link(i, j);
            }
        }
        if !g.is_connected() {
            continue;
        }
        if seen.insert(g.canonical_key()) {
            out.push(g);
        }
    }
    Ok(out)
}

/// Connected two-vertex shapes of the sparsity graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TwoVertexShape {
    /// Edge, no loops.
    TypeI,
    /// Edge and both loops.
    TypeII,
    /// Edge and exactly one loop.
    TypeIII,
    /// Not a connected two-vertex graph.
    Other,
}

impl TwoVertexShape {
    pub fn of(g: &MatrixGraph) -> Self {
        if g.n != 2 || !g.has_edge(0, 1) {
            return TwoVertexShape::Other;
        }
        match g.loop_count() {
            0 => TwoVertexShape::TypeI,
            1 => TwoVertexShape::TypeIII,
            _ => TwoVertexShape::TypeII,
        }
    }
}
