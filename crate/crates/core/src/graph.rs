//! Immutable simple undirected graphs on at most 64 vertices.
//!
//! Adjacency is stored as one `u64` row per vertex, so vertex sets are plain
//! bitmasks and most set operations are a handful of word instructions.

use std::fmt;

use crate::error::{Error, Result};

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

/// A subset of `0..64`, iterated in ascending order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        assert!(v < MAX_VERTICES, "vertex {v} out of range");
        VertexSet(1 << v)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Result<Self> {
        let mut bits = 0u64;
        for v in vertices {
            if v >= MAX_VERTICES {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: MAX_VERTICES,
                });
            }
            bits |= 1 << v;
        }
        Ok(VertexSet(bits))
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[must_use]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    #[must_use]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

#[derive(Clone, Debug)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// A simple undirected graph on vertices `0..n`.
///
/// Values are never mutated once built; every operation returns a new graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::TooManyVertices {
            n,
            max: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph {
            n,
            rows: vec![0; n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph whose edge `uv` (`u < v`) is present iff `adjacent(u, v)`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for v in 1..n {
            for u in 0..v {
                if adjacent(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    pub(crate) fn from_rows(n: usize, rows: Vec<u64>) -> Self {
        debug_assert_eq!(rows.len(), n);
        debug_assert!((0..n).all(|v| rows[v] >> v & 1 == 0));
        debug_assert!((0..n).all(|v| VertexSet(rows[v]).iter().all(|u| rows[u] >> v & 1 == 1)));
        Graph { n, rows }
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_fn(n, |_, _| true).expect("complete graph order within limit")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        Graph::from_fn(n, |u, v| v == u + 1 || (u == 0 && v == n - 1))
            .expect("cycle order within limit")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_fn(n, |u, v| v == u + 1).expect("path order within limit")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.rows[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet(self.rows[u] & !((2u64 << u).wrapping_sub(1)))
                .iter()
                .map(move |v| (u, v))
        })
    }

    pub fn complement(&self) -> Graph {
        let all = VertexSet::full(self.n).bits();
        let rows = (0..self.n)
            .map(|v| all & !self.rows[v] & !(1 << v))
            .collect();
        Graph { n: self.n, rows }
    }

    /// Disjoint union of `self` and `other`, with `other` renumbered after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        check_order(n)?;
        let shift = self.n;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << shift));
        Ok(Graph { n, rows })
    }

    /// Disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        let left = VertexSet::full(self.n).bits();
        let right = VertexSet::full(g.n).bits() & !left;
        for v in 0..self.n {
            g.rows[v] |= right;
        }
        for v in self.n..g.n {
            g.rows[v] |= left;
        }
        Ok(g)
    }

    fn check_subset(&self, s: VertexSet) -> Result<()> {
        match s.difference(self.vertices()).first() {
            Some(vertex) => Err(Error::VertexOutOfRange { vertex, n: self.n }),
            None => Ok(()),
        }
    }

    /// Subgraph induced by `s`; member `i` (ascending) becomes vertex `i`.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<Graph> {
        self.check_subset(s)?;
        let order = s.to_vec();
        Ok(self.induced_unchecked(&order))
    }

    /// Subgraph induced by the listed vertices, keeping the listed order.
    pub fn induced_by(&self, order: &[usize]) -> Result<Graph> {
        let mut seen = VertexSet::EMPTY;
        for &v in order {
            if v >= self.n || seen.contains(v) {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            seen = seen.with(v);
        }
        Ok(self.induced_unchecked(order))
    }

    fn induced_unchecked(&self, order: &[usize]) -> Graph {
        let rows = order
            .iter()
            .map(|&v| {
                order
                    .iter()
                    .enumerate()
                    .filter(|&(_, &u)| self.has_edge(v, u))
                    .fold(0u64, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        Graph {
            n: order.len(),
            rows,
        }
    }

    pub fn remove_vertex(&self, v: usize) -> Graph {
        self.induced_unchecked(&self.vertices().without(v).to_vec())
    }

    /// Renumbers vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut rows = vec![0u64; self.n];
        for v in 0..self.n {
            rows[perm[v]] = VertexSet(self.rows[v])
                .iter()
                .fold(0u64, |acc, u| acc | 1 << perm[u]);
        }
        Graph { n: self.n, rows }
    }

    /// True iff every vertex outside `x` sees all of `x` or none of it.
    pub fn is_module(&self, x: VertexSet) -> bool {
        let xb = x.bits();
        self.vertices()
            .difference(x)
            .iter()
            .all(|v| self.rows[v] & xb == 0 || self.rows[v] & xb == xb)
    }

    /// Smallest module containing `x`.
    pub fn module_closure(&self, x: VertexSet) -> VertexSet {
        let mut m = x.bits();
        if m == 0 {
            return x;
        }
        loop {
            let splitters = VertexSet(VertexSet::full(self.n).bits() & !m)
                .iter()
                .filter(|&v| {
                    let seen = self.rows[v] & m;
                    seen != 0 && seen != m
                })
                .fold(0u64, |acc, v| acc | 1 << v);
            if splitters == 0 {
                return VertexSet(m);
            }
            m |= splitters;
        }
    }

    /// Replaces module `m` by a copy of `h`.
    ///
    /// The vertices of `h` take the place of the smallest member of `m`; the
    /// remaining vertices of `G - M` keep their relative order.
    pub fn substitute(&self, m: VertexSet, h: &Graph) -> Result<Graph> {
        self.check_subset(m)?;
        if m.is_empty() || !self.is_module(m) {
            return Err(Error::NotAModule);
        }
        let n = self.n - m.len() + h.n;
        check_order(n)?;
        let first = m.first().expect("nonempty module");
        let rest: Vec<usize> = self.vertices().difference(m).to_vec();
        let split = rest.partition_point(|&v| v < first);
        // new index of each kept vertex, and of each vertex of h
        let mut new_of_old = vec![usize::MAX; self.n];
        for (i, &v) in rest.iter().enumerate() {
            new_of_old[v] = if i < split { i } else { i + h.n };
        }
        let h_base = split;
        let h_bits = (VertexSet::full(h.n).bits()) << h_base;
        let mut rows = vec![0u64; n];
        for &v in &rest {
            let mut row = VertexSet(self.rows[v] & !m.bits())
                .iter()
                .fold(0u64, |acc, u| acc | 1 << new_of_old[u]);
            if self.rows[v] & m.bits() != 0 {
                row |= h_bits;
            }
            rows[new_of_old[v]] = row;
        }
        // every vertex of M has the same outside neighbourhood
        let outside = VertexSet(self.rows[first] & !m.bits())
            .iter()
            .fold(0u64, |acc, u| acc | 1 << new_of_old[u]);
        for x in 0..h.n {
            rows[h_base + x] = outside | (h.rows[x] << h_base);
        }
        Ok(Graph { n, rows })
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.without(v).is_subset(self.neighbors(v)))
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.rows[v] & s.bits() == 0)
    }

    /// Connected components of `G[within]`, ordered by smallest member.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut left = within.bits();
        let mut out = Vec::new();
        while left != 0 {
            let start = left & left.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.rows[v] & within.bits() & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            left &= !comp;
            out.push(VertexSet(comp));
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Components of the complement: the maximal parts of a join decomposition.
    pub fn co_components(&self) -> Vec<VertexSet> {
        self.complement().components()
    }

    /// Some ordered pair `(u, v)` with `N(u)` contained in `N(v)`.
    ///
    /// Neighborhoods are open, so a comparable pair is never adjacent.
    pub fn comparable_pair(&self) -> Option<(usize, usize)> {
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v && self.rows[u] & !self.rows[v] == 0 {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// A clique whose removal leaves a disconnected graph.
    ///
    /// The empty set is returned for a disconnected input. The search runs
    /// over all cliques, so it is exponential in the clique number.
    pub fn clique_cutset(&self) -> Option<VertexSet> {
        if !self.is_connected() {
            return Some(VertexSet::EMPTY);
        }
        let all = self.vertices();
        let mut found = None;
        self.visit_cliques(VertexSet::EMPTY, all, &mut |c| {
            let rest = all.difference(c);
            if self.components_within(rest).len() >= 2 {
                found = Some(c);
                true
            } else {
                false
            }
        });
        found
    }

    /// Calls `visit` on every nonempty clique extending `current` with vertices
    /// of `candidates`, stopping early once `visit` returns true.
    fn visit_cliques(
        &self,
        current: VertexSet,
        candidates: VertexSet,
        visit: &mut impl FnMut(VertexSet) -> bool,
    ) -> bool {
        let mut cand = candidates;
        while let Some(v) = cand.first() {
            cand = cand.without(v);
            let c = current.with(v);
            if visit(c) {
                return true;
            }
            if self.visit_cliques(c, cand.intersection(self.neighbors(v)), visit) {
                return true;
            }
        }
        false
    }

    /// A maximum clique (exhaustive branch and bound).
    pub fn maximum_clique(&self) -> VertexSet {
        fn grow(g: &Graph, current: VertexSet, cand: VertexSet, best: &mut VertexSet) {
            if current.len() > best.len() {
                *best = current;
            }
            let mut cand = cand;
            while let Some(v) = cand.first() {
                if current.len() + cand.len() <= best.len() {
                    return;
                }
                cand = cand.without(v);
                grow(g, current.with(v), cand.intersection(g.neighbors(v)), best);
            }
        }
        let mut best = VertexSet::EMPTY;
        grow(self, VertexSet::EMPTY, self.vertices(), &mut best);
        best
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {})", self.n, crate::graph6::emit(self))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::graph6::emit(self))
    }
}
