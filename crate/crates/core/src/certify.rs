//! Certified k-colorability for (P5, co-P5)-free graphs.
//!
//! A yes answer carries a proper coloring. A no answer carries an induced
//! subgraph that is not k-colorable while all of its proper induced
//! subgraphs are, i.e. a (k+1)-critical graph, together with an isomorphism
//! onto a member of the family `C_(k+1)`. Checking either certificate needs
//! no search.
//!
//! Text form, one block per certificate:
//!
//! ```text
//! certificate
//! graph Dhc
//! k 2
//! verdict not-colorable
//! witness 0 1 2 3 4
//! member Dhc
//! mapping 0 1 2 3 4
//! end
//! ```
//!
//! A colorable block has `verdict colorable` and a `coloring` line of colors
//! in vertex order instead of the last three lines. `mapping` lists, for each
//! witness vertex in the order given, its vertex in the member.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canon::{canonical_form, CanonicalForm};
use crate::coloring::{is_k_colorable, Coloring};
use crate::enumeration::Family;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::graph6;
use crate::recognition::{check_p5_p5bar_free, is_p5_p5bar_free};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Colorable(Coloring),
    NotColorable {
        /// Vertices of the input graph inducing the critical subgraph.
        witness: VertexSet,
        member: CanonicalForm,
        /// `mapping[i]` is the member vertex of the `i`-th witness vertex.
        mapping: Vec<usize>,
    },
}

impl Certificate {
    pub fn is_colorable(&self) -> bool {
        matches!(self, Certificate::Colorable(_))
    }
}

fn check_family(k: usize, family: &Family) -> Result<()> {
    if family.k() != k + 1 {
        return Err(Error::Cache(format!(
            "certifying {k}-colorability needs level {}, got level {}",
            k + 1,
            family.k()
        )));
    }
    Ok(())
}

/// A coloring, or vertices inducing a `(k+1)`-critical subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Colorable(Coloring),
    Critical(VertexSet),
}

/// Decides `k`-colorability of a free graph without consulting a family.
/// Vertices are tried for deletion in ascending order.
pub fn decide(g: &Graph, k: usize) -> Result<Outcome> {
    let order: Vec<usize> = (0..g.order()).collect();
    decide_with_order(g, k, &order)
}

/// As [`decide`], trying vertices for deletion in `order`, which must list
/// every vertex once.
pub fn decide_with_order(g: &Graph, k: usize, order: &[usize]) -> Result<Outcome> {
    check_p5_p5bar_free(g)?;
    if let Some(c) = is_k_colorable(g, k) {
        return Ok(Outcome::Colorable(c));
    }
    let mut seen = VertexSet::EMPTY;
    for &x in order {
        if x >= g.order() {
            return Err(Error::VertexOutOfRange { vertex: x, n: g.order() });
        }
        seen = seen.with(x);
    }
    if seen != g.vertices() || order.len() != g.order() {
        return Err(Error::InvalidOrder);
    }

    // invariant: g[kept] is not k-colorable
    let mut kept = g.vertices();
    for &x in order {
        let without = kept.without(x);
        if is_k_colorable(&g.induced_subgraph(without)?, k).is_none() {
            kept = without;
        }
    }
    Ok(Outcome::Critical(kept))
}

/// Matches the critical subgraph `g[witness]` against `family = C_(k+1)`.
pub fn attach_member(g: &Graph, k: usize, witness: VertexSet, family: &Family) -> Result<Certificate> {
    check_family(k, family)?;
    let c = canonical_form(&g.induced_subgraph(witness)?);
    if !family.contains(&c.form) {
        return Err(Error::FamilyMiss {
            k: k + 1,
            graph6: c.form.to_string(),
            reason: format!("vertex-minimal non-{k}-colorable subgraph is not listed"),
        });
    }
    Ok(Certificate::NotColorable {
        witness,
        member: c.form,
        mapping: c.labeling,
    })
}

/// Decides whether `g` is `k`-colorable; `family` must be `C_(k+1)`.
pub fn certify_colorability(g: &Graph, k: usize, family: &Family) -> Result<Certificate> {
    let order: Vec<usize> = (0..g.order()).collect();
    certify_with_order(g, k, family, &order)
}

pub fn certify_with_order(g: &Graph, k: usize, family: &Family, order: &[usize]) -> Result<Certificate> {
    check_family(k, family)?;
    match decide_with_order(g, k, order)? {
        Outcome::Colorable(c) => Ok(Certificate::Colorable(c)),
        Outcome::Critical(w) => attach_member(g, k, w, family),
    }
}

/// A proper coloring of `g` with colors in `1..=k`.
pub fn verify_coloring(g: &Graph, k: usize, c: &Coloring) -> bool {
    c.len() == g.order() && c.max_color() <= k && c.is_proper(g)
}

/// Checks `cert` against `g` and `family = C_(k+1)` without any search.
pub fn verify_certificate(g: &Graph, k: usize, cert: &Certificate, family: &Family) -> bool {
    match cert {
        Certificate::Colorable(c) => verify_coloring(g, k, c),
        Certificate::NotColorable {
            witness,
            member,
            mapping,
        } => {
            if family.k() != k + 1 || !witness.is_subset(g.vertices()) {
                return false;
            }
            let Some(m) = family.get(member) else {
                return false;
            };
            let w = witness.to_vec();
            if w.len() != m.order() || mapping.len() != w.len() {
                return false;
            }
            let mut hit = vec![false; m.order()];
            for &x in mapping {
                if x >= hit.len() || hit[x] {
                    return false;
                }
                hit[x] = true;
            }
            (0..w.len()).all(|i| (i + 1..w.len()).all(|j| g.has_edge(w[i], w[j]) == m.has_edge(mapping[i], mapping[j])))
        }
    }
}

/// A certificate together with the question it answers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateRecord {
    pub graph: Graph,
    pub k: usize,
    pub certificate: Certificate,
}

fn join_numbers(xs: impl IntoIterator<Item = usize>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for CertificateRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "certificate")?;
        writeln!(f, "graph {}", graph6::emit(&self.graph))?;
        writeln!(f, "k {}", self.k)?;
        match &self.certificate {
            Certificate::Colorable(c) => {
                writeln!(f, "verdict colorable")?;
                writeln!(f, "coloring {}", join_numbers(c.colors().iter().copied()))?;
            }
            Certificate::NotColorable {
                witness,
                member,
                mapping,
            } => {
                writeln!(f, "verdict not-colorable")?;
                writeln!(f, "witness {}", join_numbers(witness.iter()))?;
                writeln!(f, "member {member}")?;
                writeln!(f, "mapping {}", join_numbers(mapping.iter().copied()))?;
            }
        }
        writeln!(f, "end")
    }
}

struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::CertificateParse {
            line: self.last,
            message: message.into(),
        }
    }

    /// Next non-blank line, split into keyword and the rest.
    fn next(&mut self) -> Result<(&'a str, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            self.last = i + 1;
            let line = line.trim();
            if !line.is_empty() {
                return Ok(line.split_once(' ').unwrap_or((line, "")));
            }
        }
        Err(self.err("unexpected end of input"))
    }

    fn expect(&mut self, key: &str) -> Result<&'a str> {
        let (k, rest) = self.next()?;
        if k != key {
            return Err(self.err(format!("expected `{key}`, found `{k}`")));
        }
        Ok(rest.trim())
    }

    fn numbers(&mut self, key: &str) -> Result<Vec<usize>> {
        let rest = self.expect(key)?;
        rest.split_whitespace()
            .map(|t| t.parse().map_err(|_| self.err(format!("bad number `{t}`"))))
            .collect()
    }

    fn at_end(&mut self) -> bool {
        while let Some((_, l)) = self.inner.peek() {
            if l.trim().is_empty() {
                self.inner.next();
            } else {
                return false;
            }
        }
        true
    }
}

impl CertificateRecord {
    /// Parses every block in `text`.
    pub fn parse_all(text: &str) -> Result<Vec<CertificateRecord>> {
        let mut lines = Lines {
            inner: text.lines().enumerate().peekable(),
            last: 0,
        };
        let mut out = Vec::new();
        while !lines.at_end() {
            out.push(Self::parse_one(&mut lines)?);
        }
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<CertificateRecord> {
        let mut all = Self::parse_all(text)?;
        match all.len() {
            1 => Ok(all.pop().expect("one block")),
            n => Err(Error::CertificateParse {
                line: 0,
                message: format!("expected one certificate block, found {n}"),
            }),
        }
    }

    fn parse_one(lines: &mut Lines<'_>) -> Result<CertificateRecord> {
        lines.expect("certificate")?;
        let g6 = lines.expect("graph")?;
        let graph = graph6::parse(g6).map_err(|e| lines.err(e.to_string()))?;
        let k = lines.expect("k")?.parse().map_err(|_| lines.err("bad k"))?;
        let certificate = match lines.expect("verdict")? {
            "colorable" => {
                let colors = lines.numbers("coloring")?;
                if colors.contains(&0) {
                    return Err(lines.err("colors start at 1"));
                }
                Certificate::Colorable(Coloring::new(colors))
            }
            "not-colorable" => {
                let witness = VertexSet::from_vertices(lines.numbers("witness")?).map_err(|e| lines.err(e.to_string()))?;
                let member_g6 = lines.expect("member")?;
                let member = canonical_form(&graph6::parse(member_g6).map_err(|e| lines.err(e.to_string()))?).form;
                if member.as_str() != member_g6 {
                    return Err(lines.err("member is not in canonical form"));
                }
                let mapping = lines.numbers("mapping")?;
                Certificate::NotColorable {
                    witness,
                    member,
                    mapping,
                }
            }
            other => return Err(lines.err(format!("unknown verdict `{other}`"))),
        };
        lines.expect("end")?;
        Ok(CertificateRecord { graph, k, certificate })
    }
}

/// A pseudo-random (P5, co-P5)-free graph on at most `budget` vertices.
///
/// Starting from `K1` or `C5`, repeatedly substitutes a small free graph for
/// a vertex, complements, or joins or unions with a free graph. Every step
/// keeps the class closed. Deterministic in `seed`.
pub fn random_free_graph(seed: u64, budget: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = budget.clamp(1, crate::graph::MAX_VERTICES);
    let mut g = if budget >= 5 && rng.gen_bool(0.5) {
        Graph::cycle(5)
    } else {
        Graph::complete(1)
    };
    let target = rng.gen_range(1..=budget);
    let mut steps = 0;
    while g.order() < target && steps < 64 {
        steps += 1;
        let room = budget - g.order();
        let piece = match rng.gen_range(0..4) {
            0 if room >= 4 => Graph::cycle(5),
            1 => Graph::complete(2),
            2 => Graph::empty(2).expect("two vertices"),
            _ => Graph::complete(rng.gen_range(1..=room.clamp(1, 3))),
        };
        g = match rng.gen_range(0..5) {
            0 | 1 if piece.order() <= room + 1 => {
                let v = rng.gen_range(0..g.order());
                g.substitute(VertexSet::singleton(v), &piece).expect("singletons are modules")
            }
            2 => g.complement(),
            3 if piece.order() <= room => g.join(&piece).expect("fits"),
            4 if piece.order() <= room => g.disjoint_union(&piece).expect("fits"),
            _ => g,
        };
    }
    if rng.gen_bool(0.5) {
        g = g.complement();
    }
    assert!(is_p5_p5bar_free(&g), "closure operations keep the class: {g:?}");
    g
}
