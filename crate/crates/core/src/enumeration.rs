//! The families `C_k` of k-critical (P5, co-P5)-free graphs.
//!
//! A member of `C_k` is either a join of smaller critical graphs (the set
//! `J_k`) or a buoy whose bags are critical graphs of lower levels (the set
//! `B_k`). Bag chromatic numbers `(k1, .., k5)` of a k-critical buoy satisfy
//! `ki + k(i+1) <= k - 1` and sum to `2k - 1`. Joins decompose as
//!
//! ```text
//! J_k = (C_1 join C_(k-1))  u  U B_(k1) join .. join B_(kp)
//! ```
//!
//! over `k1 + .. + kp = k` with `p >= 2` and every `ki >= 3`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalForm};
use crate::coloring::{is_k_critical, Pattern};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::recognition::{classify, forbidden_subgraph, Buoy, Classification};

/// Levels at or below this are checked member by member with the oracle.
pub const DEFAULT_VERIFY_DEPTH: usize = 6;

/// Share of members criticality-checked above the verify depth.
pub const SAMPLE_FRACTION: f64 = 0.05;

pub type Members = BTreeMap<CanonicalForm, Graph>;

/// Number of distinct members a pattern contributes to `B_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternCount {
    pub pattern: [usize; 5],
    pub members: usize,
}

/// How a level was checked when it was built.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuildInfo {
    pub verify_depth: usize,
    pub criticality_checked: usize,
    pub runtime_seconds: f64,
}

/// `C_k`, split into buoys and joins. Members are stored canonically.
#[derive(Clone, Debug)]
pub struct Family {
    k: usize,
    buoys: Members,
    joins: Members,
    patterns: Vec<PatternCount>,
    info: Option<BuildInfo>,
}

impl Family {
    pub fn new(k: usize, buoys: Members, joins: Members, patterns: Vec<PatternCount>) -> Result<Self> {
        if let Some(form) = buoys.keys().find(|f| joins.contains_key(*f)) {
            return Err(Error::Verification {
                k,
                graph6: form.to_string(),
                reason: "listed both as a buoy and as a join".into(),
            });
        }
        Ok(Family {
            k,
            buoys,
            joins,
            patterns,
            info: None,
        })
    }

    /// Canonicalizes `graphs` and sorts them into buoys and joins by whether
    /// the complement is connected. Duplicates collapse.
    pub fn from_graphs(k: usize, graphs: impl IntoIterator<Item = Graph>, patterns: Vec<PatternCount>) -> Self {
        let mut buoys = Members::new();
        let mut joins = Members::new();
        for g in graphs {
            let c = canonical_form(&g);
            if is_buoy_shaped(&c.graph) {
                buoys.insert(c.form, c.graph);
            } else {
                joins.insert(c.form, c.graph);
            }
        }
        Family {
            k,
            buoys,
            joins,
            patterns,
            info: None,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn f(&self) -> usize {
        self.buoys.len() + self.joins.len()
    }

    pub fn b(&self) -> usize {
        self.buoys.len()
    }

    pub fn j(&self) -> usize {
        self.joins.len()
    }

    pub fn buoys(&self) -> &Members {
        &self.buoys
    }

    pub fn joins(&self) -> &Members {
        &self.joins
    }

    /// Per-pattern member counts, patterns in ascending order.
    pub fn patterns(&self) -> &[PatternCount] {
        &self.patterns
    }

    pub fn info(&self) -> Option<&BuildInfo> {
        self.info.as_ref()
    }

    /// All members in ascending canonical order.
    pub fn members(&self) -> Vec<(&CanonicalForm, &Graph)> {
        let mut all: Vec<_> = self.buoys.iter().chain(self.joins.iter()).collect();
        all.sort_unstable_by(|a, b| a.0.cmp(b.0));
        all
    }

    pub fn contains(&self, form: &CanonicalForm) -> bool {
        self.get(form).is_some()
    }

    pub fn get(&self, form: &CanonicalForm) -> Option<&Graph> {
        self.buoys.get(form).or_else(|| self.joins.get(form))
    }

    /// One graph6 line per member, in canonical order.
    pub fn listing(&self) -> String {
        let mut out = String::new();
        for (form, _) in self.members() {
            out.push_str(form.as_str());
            out.push('\n');
        }
        out
    }
}

/// A join has a disconnected complement; `K1` counts as a join.
fn is_buoy_shaped(g: &Graph) -> bool {
    g.order() > 1 && g.co_components().len() == 1
}

/// `C_1..C_k`; `level(i)` is `C_i`.
#[derive(Clone, Debug, Default)]
pub struct Census {
    families: Vec<Family>,
}

impl Census {
    pub fn from_families(families: Vec<Family>) -> Result<Self> {
        for (i, f) in families.iter().enumerate() {
            if f.k != i + 1 {
                return Err(Error::Cache(format!("level {} found at position {}", f.k, i + 1)));
            }
        }
        Ok(Census { families })
    }

    /// Highest level present, 0 if empty.
    pub fn top(&self) -> usize {
        self.families.len()
    }

    /// Panics unless `1 <= k <= top()`.
    pub fn level(&self, k: usize) -> &Family {
        &self.families[k - 1]
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn counts(&self) -> Vec<usize> {
        self.families.iter().map(Family::f).collect()
    }

    pub fn into_families(self) -> Vec<Family> {
        self.families
    }
}

/// `C_1 = {K1}`, `C_2 = {K2}` and `C_3 = {K3, C5}`.
pub fn base_families() -> [Family; 3] {
    let c5 = Pattern([1; 5]);
    [
        Family::from_graphs(1, [Graph::complete(1)], Vec::new()),
        Family::from_graphs(2, [Graph::complete(2)], Vec::new()),
        Family::from_graphs(
            3,
            [Graph::complete(3), Graph::cycle(5)],
            vec![PatternCount {
                pattern: c5.0,
                members: 1,
            }],
        ),
    ]
}

/// Dihedral-reduced buoy patterns of level `k`, as their lexicographically
/// smallest images, in ascending order.
pub fn enumerate_patterns(k: usize) -> Vec<Pattern> {
    let mut out = Vec::new();
    if k < 3 {
        return out;
    }
    let total = 2 * k - 1;
    let mut p = [1usize; 5];
    fn rec(i: usize, left: usize, k: usize, p: &mut [usize; 5], out: &mut Vec<Pattern>) {
        if i == 4 {
            p[4] = left;
            let pat = Pattern(*p);
            if left >= 1 && pat.max_adjacent_sum() < k && pat.canonical() == pat {
                out.push(pat);
            }
            return;
        }
        for x in 1..k.min(left) {
            p[i] = x;
            rec(i + 1, left - x, k, p, out);
        }
    }
    rec(0, total, k, &mut p, &mut out);
    out.sort_unstable();
    out
}

fn lower(families: &[Family], k: usize) -> Result<&Family> {
    families
        .get(k.wrapping_sub(1))
        .ok_or_else(|| Error::Cache(format!("level {k} is needed but not available")))
}

/// Every tuple of indices below `sizes`, first coordinate slowest.
fn product(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &s in sizes {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..s).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// `B_k` from `families = [C_1, .., C_(k-1)]` (at least up to `C_(k-2)`),
/// with the number of distinct members each pattern yields.
pub fn build_buoys(k: usize, families: &[Family]) -> Result<(Members, Vec<PatternCount>)> {
    let mut members = Members::new();
    let mut counts = Vec::new();
    for pattern in enumerate_patterns(k) {
        let bags: Vec<Vec<&Graph>> = pattern
            .0
            .iter()
            .map(|&ki| lower(families, ki).map(|f| f.members().into_iter().map(|(_, g)| g).collect()))
            .collect::<Result<_>>()?;
        let sizes: Vec<usize> = bags.iter().map(Vec::len).collect();
        let built: Vec<(CanonicalForm, Graph)> = product(&sizes)
            .into_par_iter()
            .map(|choice| {
                let parts: [&Graph; 5] = std::array::from_fn(|i| bags[i][choice[i]]);
                let buoy = Buoy::assemble(parts)?;
                let c = canonical_form(buoy.host());
                Ok((c.form, c.graph))
            })
            .collect::<Result<_>>()?;
        let mut mine = Members::new();
        mine.extend(built);
        counts.push(PatternCount {
            pattern: pattern.0,
            members: mine.len(),
        });
        members.extend(mine);
    }
    Ok((members, counts))
}

fn join_all(parts: &[&Graph]) -> Result<Graph> {
    let mut g = Graph::empty(0)?;
    for p in parts {
        g = g.join(p)?;
    }
    Ok(g)
}

fn insert_canonical(into: &mut Members, graphs: Vec<Graph>) {
    let built: Vec<(CanonicalForm, Graph)> = graphs
        .into_par_iter()
        .map(|g| {
            let c = canonical_form(&g);
            (c.form, c.graph)
        })
        .collect();
    into.extend(built);
}

/// Partitions of `k` into at least two parts, each at least 3, parts in
/// non-decreasing order.
fn buoy_partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if cur.len() >= 2 {
                out.push(cur.clone());
            }
            return;
        }
        for x in min..=left {
            cur.push(x);
            rec(left - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, 3, &mut Vec::new(), &mut out);
    out
}

/// `J_k` from `families = [C_1, .., C_(k-1)]`.
pub fn build_joins(k: usize, families: &[Family]) -> Result<Members> {
    let mut graphs = Vec::new();
    if k >= 2 {
        let k1 = Graph::complete(1);
        for (_, g) in lower(families, k - 1)?.members() {
            graphs.push(k1.join(g)?);
        }
    }
    for parts in buoy_partitions(k) {
        let bags: Vec<Vec<&Graph>> = parts
            .iter()
            .map(|&ki| lower(families, ki).map(|f| f.buoys().values().collect()))
            .collect::<Result<_>>()?;
        let sizes: Vec<usize> = bags.iter().map(Vec::len).collect();
        for choice in product(&sizes) {
            let chosen: Vec<&Graph> = choice.iter().enumerate().map(|(i, &x)| bags[i][x]).collect();
            graphs.push(join_all(&chosen)?);
        }
    }
    let mut members = Members::new();
    insert_canonical(&mut members, graphs);
    Ok(members)
}

/// `U C_(k1) join C_(k2)` over all `k1 + k2 = k`.
pub fn naive_joins(k: usize, families: &[Family]) -> Result<Members> {
    let mut graphs = Vec::new();
    for k1 in 1..=k / 2 {
        let a = lower(families, k1)?;
        let b = lower(families, k - k1)?;
        for (_, x) in a.members() {
            for (_, y) in b.members() {
                graphs.push(x.join(y)?);
            }
        }
    }
    let mut members = Members::new();
    insert_canonical(&mut members, graphs);
    Ok(members)
}

/// Checks that [`build_joins`] and [`naive_joins`] agree on level `k`.
pub fn cross_check_naive_joins(k: usize, families: &[Family]) -> Result<()> {
    let fast = build_joins(k, families)?;
    let naive = naive_joins(k, families)?;
    let missing = naive.keys().find(|f| !fast.contains_key(*f));
    let extra = fast.keys().find(|f| !naive.contains_key(*f));
    match (missing, extra) {
        (None, None) => Ok(()),
        (Some(f), _) => Err(Error::Verification {
            k,
            graph6: f.to_string(),
            reason: "naive join not produced by the decomposition".into(),
        }),
        (None, Some(f)) => Err(Error::Verification {
            k,
            graph6: f.to_string(),
            reason: "decomposition produced a join the naive method did not".into(),
        }),
    }
}

/// Knobs for building and checking levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub verify_depth: usize,
    /// Seeds the criticality sample above `verify_depth`.
    pub seed: u64,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            verify_depth: DEFAULT_VERIFY_DEPTH,
            seed: 0,
        }
    }
}

fn fail(k: usize, form: &CanonicalForm, reason: impl Into<String>) -> Error {
    Error::Verification {
        k,
        graph6: form.to_string(),
        reason: reason.into(),
    }
}

/// Checks freeness and the maximal-buoy property of every member, and
/// k-criticality of every member (level at most `verify_depth`) or of a
/// seeded sample. Returns the number of criticality checks run.
pub fn verify_family(family: &Family, opts: &EnumerateOptions) -> Result<usize> {
    let k = family.k;
    let members = family.members();
    members.par_iter().try_for_each(|(form, g)| {
        if let Some(w) = forbidden_subgraph(g) {
            return Err(fail(k, form, format!("contains {w}")));
        }
        // grows a maximal buoy and insists it is full or a module
        match classify(g) {
            Ok(Classification::Perfect) if g.order() != k => Err(fail(k, form, "perfect but not a clique")),
            Ok(_) => Ok(()),
            Err(e) => Err(fail(k, form, e.to_string())),
        }
    })?;

    let chosen: Vec<usize> = if k <= opts.verify_depth {
        (0..members.len()).collect()
    } else {
        let amount = ((members.len() as f64 * SAMPLE_FRACTION).ceil() as usize).clamp(1, members.len());
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (k as u64).rotate_left(32));
        let mut picked = sample(&mut rng, members.len(), amount).into_vec();
        picked.sort_unstable();
        picked
    };
    chosen.par_iter().try_for_each(|&i| {
        let (form, g) = members[i];
        if is_k_critical(g, k) {
            Ok(())
        } else {
            Err(fail(k, form, format!("not {k}-critical")))
        }
    })?;
    Ok(chosen.len())
}

/// Builds `C_k` from `families = [C_1, .., C_(k-1)]` and verifies it.
pub fn build_level(k: usize, families: &[Family], opts: &EnumerateOptions) -> Result<Family> {
    let start = Instant::now();
    let mut family = if k <= 3 {
        base_families()[k - 1].clone()
    } else {
        let (buoys, patterns) = build_buoys(k, families)?;
        let joins = build_joins(k, families)?;
        Family::new(k, buoys, joins, patterns)?
    };
    let checked = verify_family(&family, opts)?;
    family.info = Some(BuildInfo {
        verify_depth: opts.verify_depth,
        criticality_checked: checked,
        runtime_seconds: start.elapsed().as_secs_f64(),
    });
    Ok(family)
}

/// Builds and verifies `C_1..C_k` in memory.
pub fn enumerate(k: usize, opts: &EnumerateOptions) -> Result<Census> {
    let mut families: Vec<Family> = Vec::with_capacity(k);
    for level in 1..=k {
        let f = build_level(level, &families, opts)?;
        families.push(f);
    }
    Census::from_families(families)
}

/// `C_k` alone; lower levels are built and dropped.
pub fn enumerate_family(k: usize, verify_depth: usize) -> Result<Family> {
    if k == 0 {
        return Err(Error::Cache("levels start at 1".into()));
    }
    let opts = EnumerateOptions {
        verify_depth,
        ..EnumerateOptions::default()
    };
    let census = enumerate(k, &opts)?;
    Ok(census.into_families().pop().expect("k >= 1 levels"))
}

/// Contents of `Ck.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub k: usize,
    pub f: usize,
    pub b: usize,
    pub j: usize,
    pub patterns: Vec<PatternCount>,
    pub verify_depth: usize,
    pub criticality_checked: usize,
    pub runtime_seconds: f64,
}

/// Whether a cached level may be used, must be rebuilt, or must not be built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CachePolicy {
    Use,
    Rebuild,
    NoBuild,
}

/// A directory holding `Ck.g6` and `Ck.json` per level.
#[derive(Clone, Debug)]
pub struct FamilyCache {
    dir: PathBuf,
}

impl FamilyCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        FamilyCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn listing_path(&self, k: usize) -> PathBuf {
        self.dir.join(format!("C{k}.g6"))
    }

    pub fn sidecar_path(&self, k: usize) -> PathBuf {
        self.dir.join(format!("C{k}.json"))
    }

    /// Level `k` as stored, or `None` if either file is missing. Lines are
    /// re-canonicalized; the sidecar supplies pattern counts and build info.
    pub fn load(&self, k: usize) -> Result<Option<Family>> {
        let (g6, json) = (self.listing_path(k), self.sidecar_path(k));
        if !g6.exists() || !json.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&g6)?;
        let sidecar: Sidecar = serde_json::from_str(&fs::read_to_string(&json)?)?;
        if sidecar.k != k {
            return Err(Error::Cache(format!("{} describes level {}", json.display(), sidecar.k)));
        }
        let mut graphs = Vec::new();
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let g = graph6::parse(line).map_err(|e| Error::Cache(format!("{}:{}: {e}", g6.display(), i + 1)))?;
            graphs.push(g);
        }
        let mut family = Family::from_graphs(k, graphs, sidecar.patterns);
        family.info = Some(BuildInfo {
            verify_depth: sidecar.verify_depth,
            criticality_checked: sidecar.criticality_checked,
            runtime_seconds: sidecar.runtime_seconds,
        });
        Ok(Some(family))
    }

    pub fn store(&self, family: &Family) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let info = family.info.unwrap_or(BuildInfo {
            verify_depth: 0,
            criticality_checked: 0,
            runtime_seconds: 0.0,
        });
        let sidecar = Sidecar {
            k: family.k,
            f: family.f(),
            b: family.b(),
            j: family.j(),
            patterns: family.patterns.clone(),
            verify_depth: info.verify_depth,
            criticality_checked: info.criticality_checked,
            runtime_seconds: info.runtime_seconds,
        };
        write_atomic(&self.listing_path(family.k), family.listing().as_bytes())?;
        let mut json = serde_json::to_string_pretty(&sidecar)?;
        json.push('\n');
        write_atomic(&self.sidecar_path(family.k), json.as_bytes())?;
        Ok(())
    }

    /// `C_1..C_k`, reading cached levels and building (and storing) the rest
    /// as `policy` allows. Freshly built levels are verified; cached ones are
    /// taken as they are.
    pub fn load_or_build(&self, k: usize, opts: &EnumerateOptions, policy: CachePolicy) -> Result<Census> {
        let mut families: Vec<Family> = Vec::with_capacity(k);
        for level in 1..=k {
            let cached = match policy {
                CachePolicy::Rebuild => None,
                _ => self.load(level)?,
            };
            let family = match cached {
                Some(f) => f,
                None if policy == CachePolicy::NoBuild => {
                    return Err(Error::Cache(format!(
                        "level {level} is not cached in {} and building is disabled",
                        self.dir.display()
                    )))
                }
                None => {
                    let f = build_level(level, &families, opts)?;
                    self.store(&f)?;
                    f
                }
            };
            families.push(family);
        }
        Census::from_families(families)
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_key;

    fn pats(list: &[[usize; 5]]) -> Vec<Pattern> {
        let mut v: Vec<Pattern> = list.iter().map(|p| Pattern(*p).canonical()).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn patterns_for_small_levels() {
        assert_eq!(enumerate_patterns(3), vec![Pattern([1; 5])]);
        assert_eq!(enumerate_patterns(4), pats(&[[1, 2, 1, 2, 1]]));
        assert_eq!(enumerate_patterns(5), pats(&[[2, 2, 2, 2, 1], [2, 1, 3, 1, 2], [1, 3, 1, 3, 1]]));
        assert_eq!(
            enumerate_patterns(6),
            pats(&[[2, 2, 2, 2, 3], [2, 3, 2, 3, 1], [2, 3, 1, 3, 2], [1, 4, 1, 3, 2], [1, 4, 1, 4, 1]])
        );
        assert_eq!(enumerate_patterns(7).len(), 10);
        assert_eq!(enumerate_patterns(8).len(), 16);
    }

    #[test]
    fn patterns_brute_force() {
        // every five-vector with entries below k, reduced by the dihedral group
        for k in 3usize..=8 {
            let mut expect = std::collections::BTreeSet::new();
            for code in 0..k.pow(5) {
                let mut c = code;
                let p: [usize; 5] = std::array::from_fn(|_| {
                    let x = c % k;
                    c /= k;
                    x
                });
                let p = Pattern(p);
                if p.0.iter().all(|&x| x >= 1) && p.sum() == 2 * k - 1 && p.max_adjacent_sum() < k {
                    expect.insert(p.canonical());
                }
            }
            assert_eq!(enumerate_patterns(k), expect.into_iter().collect::<Vec<_>>(), "k={k}");
        }
    }

    #[test]
    fn partitions() {
        assert!(buoy_partitions(5).is_empty());
        assert_eq!(buoy_partitions(6), vec![vec![3, 3]]);
        assert_eq!(buoy_partitions(9), vec![vec![3, 3, 3], vec![3, 6], vec![4, 5]]);
    }

    #[test]
    fn generic_builders_reproduce_base_levels() {
        let base = base_families();
        let joins = build_joins(2, &base[..1]).unwrap();
        assert_eq!(joins.keys().collect::<Vec<_>>(), vec![&canonical_key(&Graph::complete(2))]);
        let (buoys, counts) = build_buoys(3, &base[..2]).unwrap();
        assert_eq!(buoys.keys().collect::<Vec<_>>(), vec![&canonical_key(&Graph::cycle(5))]);
        assert_eq!(counts, base[2].patterns().to_vec());
        let joins = build_joins(3, &base[..2]).unwrap();
        assert_eq!(joins.keys().collect::<Vec<_>>(), vec![&canonical_key(&Graph::complete(3))]);
    }

    #[test]
    fn small_census() {
        let census = enumerate(5, &EnumerateOptions::default()).unwrap();
        assert_eq!(census.counts(), vec![1, 1, 2, 3, 9]);
        let c5 = census.level(5);
        assert_eq!((c5.b(), c5.j()), (6, 3));
        for k in 4..=5 {
            cross_check_naive_joins(k, census.families()).unwrap();
        }
    }

    #[test]
    fn verification_rejects_impostors() {
        // C7 is 3-chromatic but contains a P5
        let bad = Family::from_graphs(3, [Graph::cycle(7)], Vec::new());
        assert!(matches!(verify_family(&bad, &EnumerateOptions::default()), Err(Error::Verification { .. })));
        // K4 listed at level 3
        let bad = Family::from_graphs(3, [Graph::complete(4)], Vec::new());
        assert!(verify_family(&bad, &EnumerateOptions::default()).is_err());
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = FamilyCache::new(dir.path());
        let opts = EnumerateOptions::default();
        let built = cache.load_or_build(4, &opts, CachePolicy::Use).unwrap();
        let loaded = cache.load_or_build(4, &opts, CachePolicy::NoBuild).unwrap();
        for k in 1..=4 {
            assert_eq!(built.level(k).listing(), loaded.level(k).listing());
            assert_eq!(built.level(k).b(), loaded.level(k).b());
            assert_eq!(built.level(k).patterns(), loaded.level(k).patterns());
        }
        let empty = FamilyCache::new(dir.path().join("nothing"));
        assert!(matches!(empty.load_or_build(1, &opts, CachePolicy::NoBuild), Err(Error::Cache(_))));
    }
}
