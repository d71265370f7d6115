//! Forbidden induced subgraphs, induced C5s and buoys.
//!
//! A buoy is a graph whose vertex set splits into five bags `B1..B5` such
//! that consecutive bags (cyclically) are complete to each other and
//! non-consecutive bags are anticomplete. Adjacency inside a bag is free.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ForbiddenKind {
    P5,
    /// The complement of P5 (the "house").
    CoP5,
}

/// Five vertices inducing a P5 in the graph (`P5`) or in its complement
/// (`CoP5`), listed in path order of the respective graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ForbiddenWitness {
    pub kind: ForbiddenKind,
    pub vertices: [usize; 5],
}

impl fmt::Display for ForbiddenWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e] = self.vertices;
        match self.kind {
            ForbiddenKind::P5 => write!(f, "induced P5 {a}-{b}-{c}-{d}-{e}"),
            ForbiddenKind::CoP5 => write!(f, "induced co-P5 on {a} {b} {c} {d} {e} (path in the complement)"),
        }
    }
}

/// Extends induced paths vertex by vertex; returns `true` once `path` holds
/// five vertices.
fn extend_induced_path(g: &Graph, path: &mut Vec<usize>, seen: VertexSet) -> bool {
    if path.len() == 5 {
        return true;
    }
    let last = *path.last().expect("path starts nonempty");
    // new vertex: adjacent to the last vertex, non-adjacent to all earlier ones
    let mut blocked = seen;
    for &u in &path[..path.len() - 1] {
        blocked = blocked.union(g.neighbors(u));
    }
    let candidates = g.neighbors(last).difference(blocked);
    for v in candidates {
        path.push(v);
        if extend_induced_path(g, path, seen.with(v)) {
            return true;
        }
        path.pop();
    }
    false
}

/// Vertices `v0..v4` inducing the path `v0-v1-v2-v3-v4`, if any.
pub fn find_induced_p5(g: &Graph) -> Option<[usize; 5]> {
    let mut path = Vec::with_capacity(5);
    for v in 0..g.order() {
        path.clear();
        path.push(v);
        if extend_induced_path(g, &mut path, VertexSet::singleton(v)) {
            return Some([path[0], path[1], path[2], path[3], path[4]]);
        }
    }
    None
}

/// The first forbidden subgraph found, looking for P5 before co-P5.
pub fn forbidden_subgraph(g: &Graph) -> Option<ForbiddenWitness> {
    if let Some(vertices) = find_induced_p5(g) {
        return Some(ForbiddenWitness {
            kind: ForbiddenKind::P5,
            vertices,
        });
    }
    find_induced_p5(&g.complement()).map(|vertices| ForbiddenWitness {
        kind: ForbiddenKind::CoP5,
        vertices,
    })
}

pub fn check_p5_p5bar_free(g: &Graph) -> Result<()> {
    match forbidden_subgraph(g) {
        Some(w) => Err(Error::NotFree(w)),
        None => Ok(()),
    }
}

pub fn is_p5_p5bar_free(g: &Graph) -> bool {
    forbidden_subgraph(g).is_none()
}

fn induces_c5(g: &Graph, c: &[usize; 5]) -> bool {
    let distinct = VertexSet::from_vertices(c.iter().copied())
        .map(|s| s.len() == 5)
        .unwrap_or(false);
    distinct
        && c.iter().all(|&v| v < g.order())
        && (0..5).all(|i| g.has_edge(c[i], c[(i + 1) % 5]) && !g.has_edge(c[i], c[(i + 2) % 5]))
}

/// Five vertices inducing a C5, in cyclic order.
pub fn find_c5(g: &Graph) -> Option<[usize; 5]> {
    // an induced P4 a-b-c-d plus a vertex seeing exactly a and d
    for a in 0..g.order() {
        for b in g.neighbors(a) {
            for c in g.neighbors(b).difference(g.neighbors(a)).without(a) {
                let d_cands = g
                    .neighbors(c)
                    .difference(g.neighbors(a))
                    .difference(g.neighbors(b))
                    .without(a);
                for d in d_cands {
                    let e_cands = g
                        .neighbors(a)
                        .intersection(g.neighbors(d))
                        .difference(g.neighbors(b))
                        .difference(g.neighbors(c));
                    if let Some(e) = e_cands.first() {
                        return Some([a, b, c, d, e]);
                    }
                }
            }
        }
    }
    None
}

/// Five cyclically ordered bags, any of which may be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoBuoy {
    host: Graph,
    bags: [VertexSet; 5],
}

impl PseudoBuoy {
    /// Checks the adjacency pattern between nonempty bags.
    pub fn new(host: &Graph, bags: [VertexSet; 5]) -> Result<Self> {
        let all = host.vertices();
        let mut union = VertexSet::EMPTY;
        for (i, b) in bags.iter().enumerate() {
            if !b.is_subset(all) {
                return Err(Error::InvalidBuoy(format!("bag {} has vertices outside the host", i + 1)));
            }
            if !union.intersection(*b).is_empty() {
                return Err(Error::InvalidBuoy(format!("bag {} overlaps an earlier bag", i + 1)));
            }
            union = union.union(*b);
        }
        for i in 0..5 {
            let next = bags[(i + 1) % 5];
            let far = bags[(i + 2) % 5].union(bags[(i + 3) % 5]);
            for v in bags[i] {
                let nb = host.neighbors(v);
                if !next.is_subset(nb) {
                    return Err(Error::InvalidBuoy(format!(
                        "bag {} is not complete to bag {}",
                        i + 1,
                        (i + 1) % 5 + 1
                    )));
                }
                if !nb.intersection(far).is_empty() {
                    return Err(Error::InvalidBuoy(format!(
                        "bag {} sees a non-consecutive bag",
                        i + 1
                    )));
                }
            }
        }
        Ok(PseudoBuoy {
            host: host.clone(),
            bags,
        })
    }

    /// Builds the pseudo-buoy whose bags are copies of `bags`, numbered bag
    /// by bag in cyclic order.
    pub fn assemble(bags: [&Graph; 5]) -> Result<Self> {
        let sizes: Vec<usize> = bags.iter().map(|b| b.order()).collect();
        let n: usize = sizes.iter().sum();
        let mut offsets = [0usize; 5];
        for i in 1..5 {
            offsets[i] = offsets[i - 1] + sizes[i - 1];
        }
        let bag_of = |v: usize| (0..5).rev().find(|&i| offsets[i] <= v && sizes[i] > 0).expect("vertex lies in a bag");
        let host = Graph::from_fn(n, |u, v| {
            let (bu, bv) = (bag_of(u), bag_of(v));
            if bu == bv {
                bags[bu].has_edge(u - offsets[bu], v - offsets[bv])
            } else {
                let d = (bv + 5 - bu) % 5;
                d == 1 || d == 4
            }
        })?;
        let sets = std::array::from_fn(|i| {
            VertexSet::from_bits(if sizes[i] == 0 {
                0
            } else {
                VertexSet::full(sizes[i]).bits() << offsets[i]
            })
        });
        Ok(PseudoBuoy { host, bags: sets })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn bags(&self) -> &[VertexSet; 5] {
        &self.bags
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.bags.iter().fold(VertexSet::EMPTY, |a, &b| a.union(b))
    }

    /// Subgraph of the host induced by bag `i` (0-based).
    pub fn bag_graph(&self, i: usize) -> Graph {
        self.host
            .induced_subgraph(self.bags[i])
            .expect("bags are host vertices")
    }
}

/// A pseudo-buoy with five nonempty bags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Buoy(PseudoBuoy);

impl Buoy {
    pub fn new(host: &Graph, bags: [VertexSet; 5]) -> Result<Self> {
        if let Some(i) = bags.iter().position(|b| b.is_empty()) {
            return Err(Error::InvalidBuoy(format!("bag {} is empty", i + 1)));
        }
        PseudoBuoy::new(host, bags).map(Buoy)
    }

    pub fn assemble(bags: [&Graph; 5]) -> Result<Self> {
        if let Some(i) = bags.iter().position(|b| b.order() == 0) {
            return Err(Error::InvalidBuoy(format!("bag {} is empty", i + 1)));
        }
        PseudoBuoy::assemble(bags).map(Buoy)
    }

    pub fn as_pseudo(&self) -> &PseudoBuoy {
        &self.0
    }

    pub fn host(&self) -> &Graph {
        self.0.host()
    }

    pub fn bags(&self) -> &[VertexSet; 5] {
        self.0.bags()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.0.vertex_set()
    }

    pub fn bag_graph(&self, i: usize) -> Graph {
        self.0.bag_graph(i)
    }

    pub fn is_full(&self) -> bool {
        self.vertex_set() == self.host().vertices()
    }

    pub fn is_module(&self) -> bool {
        self.host().is_module(self.vertex_set())
    }

    /// Every buoy vertex sees every vertex outside the buoy.
    pub fn is_join_buoy(&self) -> bool {
        let outside = self.host().vertices().difference(self.vertex_set());
        self.vertex_set()
            .iter()
            .all(|v| outside.is_subset(self.host().neighbors(v)))
    }
}

/// Grows the C5 `c5` into a maximal buoy of a (P5, co-P5)-free graph.
///
/// Fails if `c5` does not induce a C5 in that cyclic order, if the graph is
/// not free, or if the grown buoy is neither full nor a module.
pub fn grow_buoy(g: &Graph, c5: [usize; 5]) -> Result<Buoy> {
    check_p5_p5bar_free(g)?;
    grow_buoy_unchecked(g, c5)
}

/// [`grow_buoy`] without the freeness check, for callers that established it.
pub(crate) fn grow_buoy_unchecked(g: &Graph, c5: [usize; 5]) -> Result<Buoy> {
    if !induces_c5(g, &c5) {
        return Err(Error::NotAC5(c5.to_vec()));
    }
    let mut bags: [VertexSet; 5] = std::array::from_fn(|i| VertexSet::singleton(c5[i]));
    let mut inside = VertexSet::from_vertices(c5)?;
    loop {
        let mut changed = false;
        for v in g.vertices().difference(inside) {
            let nb = g.neighbors(v);
            let slot = (0..5).find(|&i| {
                bags[(i + 4) % 5].is_subset(nb)
                    && bags[(i + 1) % 5].is_subset(nb)
                    && nb.intersection(bags[(i + 2) % 5]).is_empty()
                    && nb.intersection(bags[(i + 3) % 5]).is_empty()
            });
            if let Some(i) = slot {
                bags[i] = bags[i].with(v);
                inside = inside.with(v);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let buoy = Buoy(PseudoBuoy {
        host: g.clone(),
        bags,
    });
    if buoy.is_full() || buoy.is_module() {
        Ok(buoy)
    } else {
        Err(Error::BuoyNotModule { seed: c5.to_vec() })
    }
}

#[derive(Clone, Debug)]
pub enum Classification {
    ContainsC5(Buoy),
    /// C5-free, hence perfect for (P5, co-P5)-free graphs.
    Perfect,
}

pub fn classify(g: &Graph) -> Result<Classification> {
    check_p5_p5bar_free(g)?;
    match find_c5(g) {
        Some(c5) => grow_buoy_unchecked(g, c5).map(Classification::ContainsC5),
        None => Ok(Classification::Perfect),
    }
}
