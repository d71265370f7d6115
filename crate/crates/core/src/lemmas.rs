//! Structural invariants every member of `C_k` satisfies, checked member by
//! member.
//!
//! The seven checks: the graph is connected; no two vertices are comparable;
//! there is no clique cutset unless the graph is a clique; the graph is free
//! and every induced C5 grows into a buoy that is full or a module; every
//! non-trivial module is critical of smaller chromatic number; a join splits
//! into critical parts whose chromatic numbers add up to `k`; substituting a
//! clique on `chi(M)` vertices for a module `M` keeps the graph free and
//! k-critical.
//!
//! Modules are taken as the closures of vertex pairs, plus a single vertex
//! standing for the trivial modules (substituting `K1` for a vertex returns
//! the graph itself, so that case checks k-criticality of the member).

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::coloring::{chromatic_number, is_k_critical};
use crate::enumeration::Family;
use crate::graph::{Graph, VertexSet};
use crate::recognition::{forbidden_subgraph, grow_buoy_unchecked};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Connected,
    NoComparablePair,
    NoCliqueCutset,
    BuoyFullOrModule,
    ModuleCriticality,
    JoinCriticality,
    SubstitutionCriticality,
}

pub const ALL_CHECKS: [Check; 7] = [
    Check::Connected,
    Check::NoComparablePair,
    Check::NoCliqueCutset,
    Check::BuoyFullOrModule,
    Check::ModuleCriticality,
    Check::JoinCriticality,
    Check::SubstitutionCriticality,
];

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Connected => "connected",
            Check::NoComparablePair => "no-comparable-pair",
            Check::NoCliqueCutset => "no-clique-cutset",
            Check::BuoyFullOrModule => "buoy-full-or-module",
            Check::ModuleCriticality => "module-critical",
            Check::JoinCriticality => "join-critical",
            Check::SubstitutionCriticality => "substitution-critical",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn show(s: VertexSet) -> String {
    format!("{:?}", s.to_vec())
}

/// Vertex sets of all induced C5s, each with one cyclic order.
pub fn induced_c5s(g: &Graph) -> Vec<[usize; 5]> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let n = g.order();
    for a in 0..n {
        for b in g.neighbors(a) {
            for c in g.neighbors(b).difference(g.neighbors(a)) {
                if c == a {
                    continue;
                }
                let d_options = g.neighbors(c).difference(g.neighbors(a)).difference(g.neighbors(b));
                for d in d_options {
                    if d == a || d == b {
                        continue;
                    }
                    let e_options = g
                        .neighbors(a)
                        .intersection(g.neighbors(d))
                        .difference(g.neighbors(b))
                        .difference(g.neighbors(c));
                    for e in e_options {
                        if e == b || e == c {
                            continue;
                        }
                        let key = VertexSet::from_vertices([a, b, c, d, e]).expect("in range").bits();
                        if seen.insert(key) {
                            out.push([a, b, c, d, e]);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Non-trivial modules obtained as closures of vertex pairs.
pub fn pair_modules(g: &Graph) -> Vec<VertexSet> {
    let all = g.vertices();
    let mut seen = BTreeSet::new();
    for u in 0..g.order() {
        for v in u + 1..g.order() {
            let m = g.module_closure(VertexSet::from_bits((1 << u) | (1 << v)));
            if m != all {
                seen.insert(m.bits());
            }
        }
    }
    seen.into_iter().map(VertexSet::from_bits).collect()
}

/// Runs `check` on `g` as a member of level `k`. `Err` describes the failure.
pub fn run_check(g: &Graph, k: usize, check: Check) -> Result<(), String> {
    match check {
        Check::Connected => {
            if g.is_connected() {
                Ok(())
            } else {
                Err(format!("{} components", g.components().len()))
            }
        }
        Check::NoComparablePair => match g.comparable_pair() {
            None => Ok(()),
            Some((u, v)) => Err(format!("N({u}) is contained in N({v})")),
        },
        Check::NoCliqueCutset => {
            if g.is_clique(g.vertices()) {
                return Ok(());
            }
            match g.clique_cutset() {
                None => Ok(()),
                Some(c) => Err(format!("clique cutset {}", show(c))),
            }
        }
        Check::BuoyFullOrModule => {
            if let Some(w) = forbidden_subgraph(g) {
                return Err(format!("contains {w}"));
            }
            for c5 in induced_c5s(g) {
                grow_buoy_unchecked(g, c5).map_err(|e| e.to_string())?;
            }
            Ok(())
        }
        Check::ModuleCriticality => {
            for m in pair_modules(g) {
                let sub = g.induced_subgraph(m).map_err(|e| e.to_string())?;
                let l = chromatic_number(&sub);
                if l >= k {
                    return Err(format!("module {} has chromatic number {l}", show(m)));
                }
                if !is_k_critical(&sub, l) {
                    return Err(format!("module {} is not {l}-critical", show(m)));
                }
            }
            Ok(())
        }
        Check::JoinCriticality => {
            let parts = g.co_components();
            if parts.len() < 2 {
                return Ok(());
            }
            let mut total = 0;
            for p in parts {
                let sub = g.induced_subgraph(p).map_err(|e| e.to_string())?;
                let l = chromatic_number(&sub);
                if !is_k_critical(&sub, l) {
                    return Err(format!("join part {} is not {l}-critical", show(p)));
                }
                total += l;
            }
            if total == k {
                Ok(())
            } else {
                Err(format!("join parts have chromatic numbers adding up to {total}"))
            }
        }
        Check::SubstitutionCriticality => {
            let mut modules = pair_modules(g);
            if g.order() > 0 {
                modules.push(VertexSet::singleton(0));
            }
            for m in modules {
                let sub = g.induced_subgraph(m).map_err(|e| e.to_string())?;
                let l = chromatic_number(&sub);
                let h = g.substitute(m, &Graph::complete(l)).map_err(|e| e.to_string())?;
                if let Some(w) = forbidden_subgraph(&h) {
                    return Err(format!("substituting K{l} for {} gives {w}", show(m)));
                }
                if !is_k_critical(&h, k) {
                    return Err(format!("substituting K{l} for {} breaks {k}-criticality", show(m)));
                }
            }
            Ok(())
        }
    }
}

/// First failing check of `g` at level `k`, if any.
pub fn first_failure(g: &Graph, k: usize) -> Option<(Check, String)> {
    ALL_CHECKS
        .iter()
        .find_map(|&c| run_check(g, k, c).err().map(|why| (c, why)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub k: usize,
    pub check: Check,
    pub graph6: String,
    pub detail: String,
}

/// Pass counts per level and check, plus every failure.
#[derive(Clone, Debug, Default, Serialize)]
pub struct LemmaReport {
    pub levels: Vec<LevelRow>,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelRow {
    pub k: usize,
    pub members: usize,
    /// Failing members per check, in [`ALL_CHECKS`] order.
    pub failed: [usize; 7],
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every check on every member of `families`.
pub fn run_suite(families: &[Family]) -> LemmaReport {
    let mut report = LemmaReport::default();
    for family in families {
        let k = family.k();
        let members = family.members();
        let mut found: Vec<Failure> = members
            .par_iter()
            .flat_map_iter(|(form, g)| {
                ALL_CHECKS.iter().filter_map(move |&check| {
                    run_check(g, k, check).err().map(|detail| Failure {
                        k,
                        check,
                        graph6: form.to_string(),
                        detail,
                    })
                })
            })
            .collect();
        found.sort_by(|a, b| (a.check, &a.graph6).cmp(&(b.check, &b.graph6)));
        let mut failed = [0usize; 7];
        for f in &found {
            failed[ALL_CHECKS.iter().position(|&c| c == f.check).expect("known check")] += 1;
        }
        report.levels.push(LevelRow {
            k,
            members: members.len(),
            failed,
        });
        report.failures.extend(found);
    }
    report
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:>3} {:>7}", "k", "members")?;
        for c in ALL_CHECKS {
            write!(f, " {:>21}", c.name())?;
        }
        writeln!(f)?;
        for row in &self.levels {
            write!(f, "{:>3} {:>7}", row.k, row.members)?;
            for bad in row.failed {
                let cell = if bad == 0 {
                    "pass".to_string()
                } else {
                    format!("FAIL {bad}")
                };
                write!(f, " {cell:>21}")?;
            }
            writeln!(f)?;
        }
        for fail in &self.failures {
            writeln!(f, "level {} {} {}: {}", fail.k, fail.check, fail.graph6, fail.detail)?;
        }
        Ok(())
    }
}

/// `g` with the adjacency of `u` and `v` flipped.
pub fn toggle_edge(g: &Graph, u: usize, v: usize) -> Graph {
    Graph::from_fn(g.order(), |a, b| g.has_edge(a, b) != ((a, b) == (u.min(v), u.max(v))))
        .expect("same order as a valid graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enumerate, EnumerateOptions};

    #[test]
    fn c5_count_in_small_graphs() {
        assert_eq!(induced_c5s(&Graph::cycle(5)).len(), 1);
        assert!(induced_c5s(&Graph::complete(6)).is_empty());
        // replacing a vertex by K2 doubles the C5s through it
        let g = Graph::cycle(5).substitute(VertexSet::singleton(0), &Graph::complete(2)).unwrap();
        assert_eq!(induced_c5s(&g).len(), 2);
    }

    #[test]
    fn families_up_to_five_pass() {
        let census = enumerate(5, &EnumerateOptions::default()).unwrap();
        let report = run_suite(census.families());
        assert!(report.passed(), "{report}");
        assert_eq!(report.levels.len(), 5);
    }

    #[test]
    fn house_fails() {
        // C5 plus a chord
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        assert!(run_check(&g, 3, Check::NoCliqueCutset).is_err());
        assert!(run_check(&g, 3, Check::BuoyFullOrModule).is_err());
        assert!(run_check(&g, 3, Check::SubstitutionCriticality).is_err());
        assert!(run_check(&g, 3, Check::Connected).is_ok());
    }

    #[test]
    fn toggling() {
        let c5 = Graph::cycle(5);
        let g = toggle_edge(&c5, 2, 0);
        assert!(g.has_edge(0, 2) && g.edge_count() == 6);
        assert_eq!(toggle_edge(&g, 0, 2), c5);
    }
}
