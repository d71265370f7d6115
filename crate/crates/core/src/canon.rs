//! Canonical labeling by individualization and refinement.
//!
//! The search tree is the usual one: refine the ordered partition to an
//! equitable one, pick the first smallest non-singleton cell, and branch on
//! each of its vertices. Every leaf is a relabeling of the graph; the
//! canonical graph is the smallest leaf (rows compared lexicographically).
//! When a leaf reproduces an earlier leaf the two differ by an automorphism
//! fixing their common prefix, so the rest of the subtree below the first
//! point of divergence is skipped.

use std::collections::HashMap;
use std::fmt;

use crate::graph::Graph;
use crate::graph6;

/// Relabeling-invariant key: the graph6 bytes of the canonical relabeling.
///
/// Ordering is byte order, which is the order family listings are sorted in.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }

    /// The canonical graph this key encodes.
    pub fn graph(&self) -> Graph {
        graph6::parse(self.as_str()).expect("canonical form holds valid graph6")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.as_str())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct Canonical {
    pub form: CanonicalForm,
    pub graph: Graph,
    /// `labeling[v]` is the index of input vertex `v` in `graph`.
    pub labeling: Vec<usize>,
}

pub fn canonical_form(g: &Graph) -> Canonical {
    let n = g.order();
    if n == 0 {
        return Canonical {
            form: CanonicalForm(graph6::emit(g).into_bytes()),
            graph: g.clone(),
            labeling: Vec::new(),
        };
    }
    let mut search = Search {
        rows: g.rows(),
        best: None,
        leaves: HashMap::new(),
        path: Vec::new(),
    };
    let mut cells = vec![g.vertices().bits()];
    refine(g.rows(), &mut cells);
    search.visit(cells);
    let (rows, labeling) = search.best.expect("search reaches at least one leaf");
    let graph = Graph::from_rows(n, rows);
    Canonical {
        form: CanonicalForm(graph6::emit(&graph).into_bytes()),
        graph,
        labeling,
    }
}

pub fn canonical_key(g: &Graph) -> CanonicalForm {
    canonical_form(g).form
}

/// An isomorphism `a -> b` as a vertex map, if one exists.
pub fn isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return None;
    }
    let ca = canonical_form(a);
    let cb = canonical_form(b);
    if ca.form != cb.form {
        return None;
    }
    let mut inv_b = vec![0; b.order()];
    for (v, &p) in cb.labeling.iter().enumerate() {
        inv_b[p] = v;
    }
    Some(ca.labeling.iter().map(|&p| inv_b[p]).collect())
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    isomorphism(a, b).is_some()
}

/// Refines the ordered partition `cells` until it is equitable. Split cells
/// are replaced in place by their parts ordered by neighbour count, so the
/// result depends only on the graph structure and not on vertex names.
fn refine(rows: &[u64], cells: &mut Vec<u64>) {
    let mut buf: Vec<(u32, usize)> = Vec::new();
    loop {
        let mut changed = false;
        let mut w = 0;
        while w < cells.len() {
            let splitter = cells[w];
            let mut x = 0;
            while x < cells.len() {
                let cell = cells[x];
                if cell.count_ones() < 2 {
                    x += 1;
                    continue;
                }
                buf.clear();
                let mut bits = cell;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    buf.push(((rows[v] & splitter).count_ones(), v));
                }
                let first = buf[0].0;
                if buf.iter().all(|&(c, _)| c == first) {
                    x += 1;
                    continue;
                }
                buf.sort_unstable();
                let mut parts: Vec<u64> = Vec::new();
                let mut last = None;
                for &(c, v) in &buf {
                    if last != Some(c) {
                        parts.push(0);
                        last = Some(c);
                    }
                    *parts.last_mut().expect("pushed above") |= 1 << v;
                }
                let added = parts.len();
                cells.splice(x..=x, parts);
                x += added;
                changed = true;
            }
            w += 1;
        }
        if !changed {
            return;
        }
    }
}

struct Search<'a> {
    rows: &'a [u64],
    best: Option<(Vec<u64>, Vec<usize>)>,
    /// leaf graph -> path that first produced it
    leaves: HashMap<Vec<u64>, Vec<usize>>,
    path: Vec<usize>,
}

impl Search<'_> {
    /// Explores the subtree at the current path. Returns `Some(d)` when the
    /// caller should unwind to depth `d` and move on to its next child.
    fn visit(&mut self, cells: Vec<u64>) -> Option<usize> {
        let depth = self.path.len();
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|&(i, c)| (c.count_ones(), i))
            .map(|(i, _)| i);
        let Some(t) = target else {
            return self.leaf(&cells);
        };
        let mut members = cells[t];
        while members != 0 {
            let v = members.trailing_zeros() as usize;
            members &= members - 1;
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..t]);
            child.push(1 << v);
            child.push(cells[t] & !(1 << v));
            child.extend_from_slice(&cells[t + 1..]);
            refine(self.rows, &mut child);
            self.path.push(v);
            let jump = self.visit(child);
            self.path.pop();
            match jump {
                Some(d) if d < depth => return Some(d),
                _ => {}
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[u64]) -> Option<usize> {
        let n = cells.len();
        let mut labeling = vec![0usize; n];
        for (p, c) in cells.iter().enumerate() {
            labeling[c.trailing_zeros() as usize] = p;
        }
        let mut rows = vec![0u64; n];
        for v in 0..n {
            let mut bits = self.rows[v];
            let mut row = 0u64;
            while bits != 0 {
                let u = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                row |= 1 << labeling[u];
            }
            rows[labeling[v]] = row;
        }
        if let Some(earlier) = self.leaves.get(&rows) {
            let common = earlier
                .iter()
                .zip(&self.path)
                .take_while(|(a, b)| a == b)
                .count();
            return Some(common);
        }
        let better = match &self.best {
            None => true,
            Some((best, _)) => rows < *best,
        };
        if better {
            self.best = Some((rows.clone(), labeling));
        }
        self.leaves.insert(rows, self.path.clone());
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> [Graph; 3] {
        let t1 = Graph::complete(4);
        let t2 = Graph::complete(1).join(&Graph::cycle(5)).unwrap();
        // outer C5 0..4, vertex 5 on 0,1,4 and vertex 6 on 1,2,3
        let t3 = Graph::from_edges(
            7,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (5, 0), (5, 1), (5, 4),
                (6, 1), (6, 2), (6, 3),
            ],
        )
        .unwrap();
        [t1, t2, t3]
    }

    #[test]
    fn c5_is_self_complementary() {
        let c5 = Graph::cycle(5);
        assert_eq!(canonical_key(&c5), canonical_key(&c5.complement()));
    }

    #[test]
    fn relabeled_wheel() {
        let w = Graph::complete(1).join(&Graph::cycle(5)).unwrap();
        let perm = [3, 5, 0, 2, 4, 1];
        assert_eq!(canonical_key(&w), canonical_key(&w.relabel(&perm)));
    }

    #[test]
    fn figure_graphs_are_distinct() {
        let keys: Vec<_> = fig1().iter().map(canonical_key).collect();
        assert_ne!(keys[0], keys[1]);
        assert_ne!(keys[0], keys[2]);
        assert_ne!(keys[1], keys[2]);
    }

    #[test]
    fn labeling_maps_onto_canonical_graph() {
        for g in fig1() {
            let c = canonical_form(&g);
            assert_eq!(g.relabel(&c.labeling), c.graph);
            assert_eq!(c.form.graph(), c.graph);
        }
    }

    #[test]
    fn isomorphism_is_edge_preserving() {
        let [_, _, t3] = fig1();
        let other = t3.relabel(&[6, 0, 5, 1, 4, 2, 3]);
        let map = isomorphism(&t3, &other).unwrap();
        for u in 0..7 {
            for v in 0..7 {
                assert_eq!(t3.has_edge(u, v), other.has_edge(map[u], map[v]));
            }
        }
        assert!(!is_isomorphic(&t3, &Graph::cycle(7)));
    }

    #[test]
    fn large_symmetric_graphs_finish() {
        // cliques and C5-blowups have large automorphism groups
        let k = Graph::complete(40);
        assert_eq!(canonical_form(&k).graph, k);
        let c5 = Graph::cycle(5);
        let mut blow = c5.clone();
        for v in (0..5).rev() {
            // substituting from the top keeps lower indices in place
            blow = blow
                .substitute(crate::graph::VertexSet::singleton(v), &c5)
                .unwrap();
        }
        assert_eq!(blow.order(), 25);
        let key = canonical_key(&blow);
        let perm: Vec<usize> = (0..25).map(|i| (i * 7) % 25).collect();
        assert_eq!(key, canonical_key(&blow.relabel(&perm)));
    }
}
