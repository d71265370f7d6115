//! Exact colorability by DSATUR-ordered backtracking, with a CDCL fallback.
//!
//! A maximum clique is precolored with distinct colors (this fixes the color
//! permutation symmetry on it); afterwards a vertex may only open the next
//! unused color, never skip one. Backtracking finds colorings fast but is
//! poor at refuting them on large buoys, so past [`NODE_BUDGET`] search
//! nodes the question goes to a SAT solver with the same clique fixed.

use varisat::{ExtendFormula, Lit, Solver, Var};

use super::Coloring;
use crate::graph::{Graph, VertexSet};

/// Backtracking nodes tried before switching to the SAT encoding.
pub const NODE_BUDGET: u64 = 20_000;

struct Search<'a> {
    rows: &'a [u64],
    k: usize,
    /// vertex mask per color
    classes: Vec<u64>,
    color: Vec<usize>,
    uncolored: u64,
    nodes: u64,
    limit: u64,
}

impl Search<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.classes[c] |= 1 << v;
        self.color[v] = c;
        self.uncolored &= !(1 << v);
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.classes[c] &= !(1 << v);
        self.uncolored |= 1 << v;
    }

    fn run(&mut self, used: usize) -> bool {
        if self.uncolored == 0 {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            return false;
        }
        // most constrained vertex; ties go to more uncolored neighbours
        let mut best_v = usize::MAX;
        let mut best_free = u64::MAX;
        let mut best_key = (usize::MAX, 0usize);
        let mut rest = self.uncolored;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let row = self.rows[v];
            let mut free = 0u64;
            for c in 0..used {
                if self.classes[c] & row == 0 {
                    free |= 1 << c;
                }
            }
            let mut options = free.count_ones() as usize;
            if used < self.k {
                options += 1;
            }
            if options == 0 {
                return false;
            }
            let key = (options, usize::MAX - (row & self.uncolored).count_ones() as usize);
            if key < best_key {
                best_key = key;
                best_v = v;
                best_free = free;
            }
        }
        let v = best_v;
        let mut free = best_free;
        while free != 0 {
            let c = free.trailing_zeros() as usize;
            free &= free - 1;
            self.assign(v, c);
            if self.run(used) {
                return true;
            }
            self.unassign(v, c);
        }
        if used < self.k {
            self.assign(v, used);
            if self.run(used + 1) {
                return true;
            }
            self.unassign(v, used);
        }
        false
    }
}

/// A proper coloring with at most `k` colors, or `None` iff `chi(g) > k`.
pub fn is_k_colorable(g: &Graph, k: usize) -> Option<Coloring> {
    let n = g.order();
    if n == 0 {
        return Some(Coloring::new(Vec::new()));
    }
    if k == 0 {
        return None;
    }
    let clique = g.maximum_clique();
    if clique.len() > k {
        return None;
    }
    let mut search = Search {
        rows: g.rows(),
        k,
        classes: vec![0; k],
        color: vec![0; n],
        uncolored: g.vertices().bits(),
        nodes: 0,
        limit: NODE_BUDGET,
    };
    for (c, v) in clique.iter().enumerate() {
        search.assign(v, c);
    }
    let used = clique.len();
    if search.run(used) {
        Some(Coloring::new(search.color.iter().map(|c| c + 1).collect()))
    } else if search.nodes <= search.limit {
        None
    } else {
        sat_colorable(g, k, clique)
    }
}

/// One variable per (vertex, color); clique vertex `i` is fixed to color `i`.
fn sat_colorable(g: &Graph, k: usize, clique: VertexSet) -> Option<Coloring> {
    let n = g.order();
    let var = |v: usize, c: usize| Var::from_index(v * k + c);
    let mut solver = Solver::new();
    for v in 0..n {
        let some: Vec<Lit> = (0..k).map(|c| var(v, c).positive()).collect();
        solver.add_clause(&some);
    }
    for (u, v) in g.edges() {
        for c in 0..k {
            solver.add_clause(&[var(u, c).negative(), var(v, c).negative()]);
        }
    }
    for (c, v) in clique.iter().enumerate() {
        solver.add_clause(&[var(v, c).positive()]);
    }
    if !solver.solve().expect("no proof output or interrupts are configured") {
        return None;
    }
    let model = solver.model().expect("satisfiable");
    let mut color = vec![0usize; n];
    // every vertex has a true literal; the first one is a proper choice
    for lit in model.iter().rev().filter(|l| l.is_positive()) {
        let i = lit.var().index();
        color[i / k] = i % k + 1;
    }
    Some(Coloring::new(color))
}

/// Greedy DSATUR coloring, used as the starting upper bound.
fn dsatur_greedy(g: &Graph) -> Coloring {
    let n = g.order();
    let mut color = vec![0usize; n];
    let mut seen = vec![0u64; n];
    let mut uncolored = g.vertices().bits();
    while uncolored != 0 {
        let mut best = None;
        let mut best_key = (0u32, 0u32);
        let mut rest = uncolored;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let key = (seen[v].count_ones(), (g.rows()[v] & uncolored).count_ones());
            if best.is_none() || key > best_key {
                best = Some(v);
                best_key = key;
            }
        }
        let v = best.expect("uncolored vertex exists");
        let c = (!seen[v]).trailing_zeros() as usize;
        color[v] = c + 1;
        uncolored &= !(1 << v);
        for u in g.neighbors(v) {
            seen[u] |= 1 << c;
        }
    }
    Coloring::new(color)
}

/// A coloring with exactly `chi(g)` colors.
pub fn optimal_coloring(g: &Graph) -> Coloring {
    let mut best = dsatur_greedy(g);
    let lower = g.maximum_clique().len();
    let mut k = best.max_color();
    while k > lower {
        match is_k_colorable(g, k - 1) {
            Some(c) => {
                k = c.max_color();
                best = c;
            }
            None => break,
        }
    }
    best
}

pub fn chromatic_number(g: &Graph) -> usize {
    optimal_coloring(g).max_color()
}

/// `chi(g) = k` and every vertex-deleted subgraph is `(k-1)`-colorable.
pub fn is_k_critical(g: &Graph, k: usize) -> bool {
    if k == 0 || g.order() == 0 {
        return false;
    }
    if is_k_colorable(g, k).is_none() || is_k_colorable(g, k - 1).is_some() {
        return false;
    }
    (0..g.order()).all(|v| is_k_colorable(&g.remove_vertex(v), k - 1).is_some())
}
