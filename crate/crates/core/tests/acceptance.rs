//! Acceptance criteria, one line each. Runs without the libtest harness so
//! every verdict is printed whether it passes or not.

use std::collections::BTreeSet;
use std::fs;
use std::process::{Command, ExitCode};
use std::time::Instant;

use critgraph::canon::canonical_key;
use critgraph::certify::{certify_colorability, random_free_graph, verify_certificate, Certificate};
use critgraph::coloring::{buoy_chromatic, chromatic_number, color_pseudo_buoy, is_k_critical, optimal_coloring, Coloring};
use critgraph::enumeration::{enumerate, enumerate_patterns, Census, EnumerateOptions, FamilyCache, Sidecar};
use critgraph::lemmas::{first_failure, toggle_edge};
use critgraph::recognition::{is_p5_p5bar_free, Buoy, PseudoBuoy};
use critgraph::{CanonicalForm, Graph, Pattern, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CENSUS: [usize; 8] = [1, 1, 2, 3, 9, 31, 185, 1487];
const SPLITS: [(usize, usize, usize); 3] = [(4, 1, 2), (5, 6, 3), (6, 21, 10)];
const K6_COUNTS: [([usize; 5], usize); 5] = [
    ([2, 2, 2, 2, 3], 2),
    ([2, 3, 2, 3, 1], 4),
    ([2, 3, 1, 3, 2], 3),
    ([1, 4, 1, 3, 2], 6),
    ([1, 4, 1, 4, 1], 6),
];
const UP_TO_6_SECONDS: f64 = 10.0;
const UP_TO_7_SECONDS: f64 = 60.0;
const UP_TO_8_SECONDS: f64 = 900.0;
const ORACLE_SECONDS: f64 = 300.0;
const MUTANTS: usize = 100;
const MUTANTS_CAUGHT: usize = 95;
const MEMBER_BAG_TRIALS: usize = 200;
const CERTIFY_SEEDS: u64 = 100;
const CERTIFY_BUDGET: usize = 25;
const ISO_GRAPHS: usize = 500;
const ISO_MAX_ORDER: usize = 8;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn keys(graphs: impl IntoIterator<Item = Graph>) -> BTreeSet<CanonicalForm> {
    graphs.into_iter().map(|g| canonical_key(&g)).collect()
}

fn census6() -> Census {
    enumerate(6, &EnumerateOptions::default()).expect("levels up to 6 build")
}

fn census_by_cli() -> Verdict {
    let dir = tempfile::tempdir().expect("temp dir");
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_critgraph"))
        .args(["enumerate", "--k", "8", "--format", "json", "--cache-dir"])
        .arg(dir.path())
        .output()
        .expect("binary runs");
    let wall = start.elapsed().as_secs_f64();
    if !out.status.success() {
        return verdict(false, format!("enumerate failed: {}", String::from_utf8_lossy(&out.stderr)));
    }
    let sidecars: Vec<Sidecar> = serde_json::from_slice(&out.stdout).expect("sidecar array");
    let f: Vec<usize> = sidecars.iter().map(|s| s.f).collect();
    let upto = |k: usize| sidecars.iter().filter(|s| s.k <= k).map(|s| s.runtime_seconds).sum::<f64>();
    let timing_ok = upto(6) < UP_TO_6_SECONDS && upto(7) < UP_TO_7_SECONDS && wall < UP_TO_8_SECONDS;
    let mismatches: Vec<String> = f
        .iter()
        .zip(CENSUS)
        .enumerate()
        .filter(|(_, (got, want))| **got != *want)
        .map(|(i, (got, want))| format!("k={} got {got} want {want}", i + 1))
        .collect();
    let distinct: Vec<usize> = [7, 8]
        .iter()
        .map(|k| {
            let listing = fs::read_to_string(dir.path().join(format!("C{k}.g6"))).unwrap_or_default();
            listing.lines().collect::<BTreeSet<_>>().len()
        })
        .collect();
    let detail = format!(
        "f = {:?} (build {:.2}s to k=6, {:.2}s to k=7, {:.2}s wall to k=8){}",
        f,
        upto(6),
        upto(7),
        wall,
        if mismatches.is_empty() {
            String::new()
        } else {
            format!("; mismatch {}; listings hold {distinct:?} distinct canonical forms", mismatches.join(", "))
        }
    );
    verdict(mismatches.is_empty() && timing_ok, detail)
}

fn splits(census: &Census) -> Verdict {
    let got: Vec<(usize, usize, usize)> = (4..=6).map(|k| (k, census.level(k).b(), census.level(k).j())).collect();
    verdict(got == SPLITS, format!("(k, b, j) = {got:?}"))
}

fn patterns() -> Verdict {
    let reference: [&[[usize; 5]]; 3] = [
        &[[1, 2, 1, 2, 1]],
        &[[2, 2, 2, 2, 1], [2, 1, 3, 1, 2], [1, 3, 1, 3, 1]],
        &[[2, 2, 2, 2, 3], [2, 3, 2, 3, 1], [2, 3, 1, 3, 2], [1, 4, 1, 3, 2], [1, 4, 1, 4, 1]],
    ];
    let mut ok = true;
    let mut sizes = Vec::new();
    for (k, listed) in (4..=6).zip(reference) {
        let want: BTreeSet<Pattern> = listed.iter().map(|&p| Pattern(p).canonical()).collect();
        let got: BTreeSet<Pattern> = enumerate_patterns(k).into_iter().collect();
        ok &= want == got && want.len() == listed.len();
        sizes.push(got.len());
    }
    verdict(ok, format!("pattern counts for k = 4, 5, 6: {sizes:?}"))
}

fn k6_pattern_counts(census: &Census) -> Verdict {
    let family = census.level(6);
    let mut ok = family.patterns().len() == K6_COUNTS.len();
    let mut shown = Vec::new();
    for (p, want) in K6_COUNTS {
        let canon = Pattern(p).canonical();
        let got = family
            .patterns()
            .iter()
            .find(|c| c.pattern == canon.0)
            .map_or(0, |c| c.members);
        ok &= got == want;
        shown.push(format!("{p:?}->{got}"));
    }
    verdict(ok, shown.join(" "))
}

/// C5 with bag `bags[i]` substituted for cycle vertex `i`, built with plain
/// substitutions.
fn blow_up(bags: [&Graph; 5]) -> Graph {
    let mut g = Graph::cycle(5);
    // substitute from the last vertex so earlier indices stay put
    for i in (0..5).rev() {
        g = g.substitute(VertexSet::singleton(i), bags[i]).expect("single vertices are modules");
    }
    g
}

fn figure_one(census: &Census) -> Verdict {
    let k1 = Graph::complete(1);
    let k2 = Graph::complete(2);
    let k3 = Graph::complete(3);
    let c5 = Graph::cycle(5);
    let t1 = Graph::complete(4);
    let t2 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 1), (5, 2), (5, 3), (5, 4)]).unwrap();
    let t3 = Graph::from_edges(
        7,
        &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 1), (5, 4), (6, 1), (6, 2), (6, 3)],
    )
    .unwrap();
    let c4 = keys([t1.clone(), t2.clone(), t3.clone()]);

    let mut c5_members: Vec<Graph> = [&t1, &t2, &t3].iter().map(|t| k1.join(t).unwrap()).collect();
    c5_members.push(blow_up([&k2, &k2, &k2, &k2, &k1]));
    for x in [&k3, &c5] {
        c5_members.push(blow_up([&k2, &k1, x, &k1, &k2]));
    }
    for (x, y) in [(&k3, &k3), (&k3, &c5), (&c5, &c5)] {
        c5_members.push(blow_up([&k1, x, &k1, y, &k1]));
    }
    let c5_set = keys(c5_members);

    let got4: BTreeSet<CanonicalForm> = census.level(4).members().into_iter().map(|(f, _)| f.clone()).collect();
    let got5: BTreeSet<CanonicalForm> = census.level(5).members().into_iter().map(|(f, _)| f.clone()).collect();
    let joins5: BTreeSet<CanonicalForm> = census.level(5).joins().keys().cloned().collect();
    let f1_f3 = keys([&t1, &t2, &t3].map(|t| k1.join(t).unwrap()));
    let ok = got4 == c4 && got5 == c5_set && joins5 == f1_f3;
    verdict(
        ok,
        format!(
            "C4 = T1..T3: {}, C5 = F1..F9: {}, J5 = F1..F3: {}",
            got4 == c4,
            got5 == c5_set,
            joins5 == f1_f3
        ),
    )
}

fn oracle_check(census: &Census) -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut total = 0;
    for family in census.families() {
        for (form, g) in family.members() {
            total += 1;
            if !is_p5_p5bar_free(g) || !is_k_critical(g, family.k()) {
                bad.push(format!("k={} {form}", family.k()));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        bad.is_empty() && secs < ORACLE_SECONDS,
        format!("{total} members checked in {secs:.2}s, {} failures {bad:?}", bad.len()),
    )
}

fn lemma_suite(census: &Census) -> Verdict {
    let dir = tempfile::tempdir().expect("temp dir");
    let out = Command::new(env!("CARGO_BIN_EXE_critgraph"))
        .args(["verify-lemmas", "--k", "6", "--cache-dir"])
        .arg(dir.path())
        .output()
        .expect("binary runs");
    let suite_ok = out.status.success();

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let pool: Vec<(usize, &Graph)> = census
        .families()
        .iter()
        .flat_map(|f| f.members().into_iter().map(move |(_, g)| (f.k(), g)))
        .filter(|(_, g)| g.order() >= 2)
        .collect();
    let mut caught = 0;
    let mut members_missed = true;
    for _ in 0..MUTANTS {
        let &(k, g) = pool.choose(&mut rng).expect("nonempty pool");
        let u = rng.gen_range(0..g.order());
        let v = (u + rng.gen_range(1..g.order())) % g.order();
        let m = toggle_edge(g, u, v);
        if first_failure(&m, k).is_some() {
            caught += 1;
        } else {
            members_missed &= census.level(k).contains(&canonical_key(&m));
        }
    }
    verdict(
        suite_ok && caught >= MUTANTS_CAUGHT && members_missed,
        format!(
            "verify-lemmas --k 6 exit {:?}; {caught}/{MUTANTS} mutants caught, missed ones are members: {members_missed}",
            out.status.code()
        ),
    )
}

fn cliques(sizes: [usize; 5]) -> [Graph; 5] {
    sizes.map(Graph::complete)
}

fn pseudo_buoys(census: &Census) -> Verdict {
    let mut formula_bad = 0;
    let mut coloring_bad = 0;
    let mut colorings = 0;
    for code in 0..4usize.pow(5) {
        let sizes: [usize; 5] = std::array::from_fn(|i| code / 4usize.pow(i as u32) % 4);
        let bags_owned = cliques(sizes);
        let bags: [&Graph; 5] = std::array::from_fn(|i| &bags_owned[i]);
        let pattern = Pattern(sizes);
        if sizes.iter().all(|&s| s > 0) {
            let buoy = Buoy::assemble(bags).expect("nonempty bags");
            if buoy_chromatic(&pattern) != chromatic_number(buoy.host()) {
                formula_bad += 1;
            }
        }
        let pb = PseudoBuoy::assemble(bags).expect("pseudo-buoy");
        let cols: [Coloring; 5] = std::array::from_fn(|i| optimal_coloring(bags[i]));
        for h in 1..=2 * 3 + 1 {
            if pattern.sum() <= 2 * h && pattern.max_adjacent_sum() <= h {
                colorings += 1;
                match color_pseudo_buoy(&pb, &cols, h) {
                    Ok(c) if c.is_proper(pb.host()) && c.max_color() <= h => {}
                    _ => coloring_bad += 1,
                }
            }
        }
    }

    let pool: Vec<&Graph> = (1..=4).flat_map(|k| census.level(k).members().into_iter().map(|(_, g)| g)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut member_bad = 0;
    for _ in 0..MEMBER_BAG_TRIALS {
        let bags: [&Graph; 5] = std::array::from_fn(|_| *pool.choose(&mut rng).expect("pool"));
        let buoy = Buoy::assemble(bags).expect("nonempty bags");
        let pattern = Pattern(bags.map(chromatic_number));
        let h = buoy_chromatic(&pattern);
        let cols: [Coloring; 5] = bags.map(optimal_coloring);
        let colored = color_pseudo_buoy(buoy.as_pseudo(), &cols, h)
            .map(|c| c.is_proper(buoy.host()) && c.max_color() <= h)
            .unwrap_or(false);
        if h != chromatic_number(buoy.host()) || !colored {
            member_bad += 1;
        }
    }
    verdict(
        formula_bad == 0 && coloring_bad == 0 && member_bad == 0,
        format!(
            "clique bags: {formula_bad} formula errors, {coloring_bad}/{colorings} bad colorings; member bags: {member_bad}/{MEMBER_BAG_TRIALS} bad"
        ),
    )
}

fn certification() -> Verdict {
    let dir = tempfile::tempdir().expect("temp dir");
    let cache = FamilyCache::new(dir.path());
    let built = enumerate(7, &EnumerateOptions::default()).expect("levels up to 7 build");
    for f in built.families() {
        cache.store(f).expect("listing written");
    }
    let mut shipped = Vec::new();
    for k in 1..=7 {
        let listing = fs::read_to_string(cache.listing_path(k)).expect("listing");
        let lines: BTreeSet<String> = listing.lines().map(str::to_string).collect();
        let family = cache.load(k).expect("listing parses").expect("listing present");
        shipped.push((lines, family));
    }

    let (mut yes, mut no, mut unverified, mut misses) = (0, 0, 0, Vec::new());
    for seed in 0..CERTIFY_SEEDS {
        let g = random_free_graph(seed, CERTIFY_BUDGET);
        for (k, (lines, family)) in shipped.iter().enumerate().skip(1).take(6) {
            match certify_colorability(&g, k, family) {
                Ok(cert) => {
                    if !verify_certificate(&g, k, &cert, family) {
                        unverified += 1;
                    }
                    match &cert {
                        Certificate::Colorable(_) => yes += 1,
                        Certificate::NotColorable { member, .. } => {
                            no += 1;
                            if !lines.contains(member.as_str()) {
                                misses.push(format!("seed {seed} k {k}"));
                            }
                        }
                    }
                }
                Err(e) => misses.push(format!("seed {seed} k {k}: {e}")),
            }
        }
    }
    verdict(
        unverified == 0 && misses.is_empty(),
        format!("{yes} colorable, {no} not colorable, {unverified} unverified, misses {misses:?}"),
    )
}

/// Exhaustive search for an isomorphism, extending a partial map one vertex
/// at a time and dropping it as soon as an adjacency disagrees.
fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
    fn extend(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = map.len();
        if i == a.order() {
            return true;
        }
        for t in 0..b.order() {
            if used[t] || (0..i).any(|j| a.has_edge(i, j) != b.has_edge(t, map[j])) {
                continue;
            }
            used[t] = true;
            map.push(t);
            if extend(a, b, map, used) {
                return true;
            }
            map.pop();
            used[t] = false;
        }
        false
    }
    a.order() == b.order() && extend(a, b, &mut Vec::new(), &mut vec![false; b.order()])
}

fn isomorphism_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut graphs: Vec<Graph> = Vec::with_capacity(ISO_GRAPHS);
    while graphs.len() < ISO_GRAPHS {
        // every other graph is a relabeled copy of an earlier one
        if !graphs.is_empty() && graphs.len() % 2 == 1 {
            let base = graphs[rng.gen_range(0..graphs.len())].clone();
            let mut perm: Vec<usize> = (0..base.order()).collect();
            perm.shuffle(&mut rng);
            graphs.push(base.relabel(&perm));
        } else {
            let n = rng.gen_range(1..=ISO_MAX_ORDER);
            let p: f64 = rng.gen_range(0.1..0.9);
            graphs.push(Graph::from_fn(n, |_, _| rng.gen_bool(p)).expect("small graph"));
        }
    }
    let forms: Vec<CanonicalForm> = graphs.iter().map(canonical_key).collect();
    let (mut pairs, mut iso_pairs, mut disagree) = (0usize, 0usize, 0usize);
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            pairs += 1;
            let brute = graphs[i].edge_count() == graphs[j].edge_count() && brute_isomorphic(&graphs[i], &graphs[j]);
            iso_pairs += brute as usize;
            if brute != (forms[i] == forms[j]) {
                disagree += 1;
            }
        }
    }
    verdict(
        disagree == 0,
        format!("{pairs} pairs, {iso_pairs} isomorphic, {disagree} disagreements"),
    )
}

fn main() -> ExitCode {
    let census = census6();
    let criteria: [Criterion; 10] = [
        ("census", Box::new(census_by_cli)),
        ("splits", Box::new(|| splits(&census))),
        ("patterns", Box::new(patterns)),
        ("k6 pattern counts", Box::new(|| k6_pattern_counts(&census))),
        ("figure reconstruction", Box::new(|| figure_one(&census))),
        ("oracle verification", Box::new(|| oracle_check(&census))),
        ("lemma suite", Box::new(|| lemma_suite(&census))),
        ("pseudo-buoy coloring", Box::new(|| pseudo_buoys(&census))),
        ("certification", Box::new(certification)),
        ("isomorphism oracle", Box::new(isomorphism_oracle)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        failed += usize::from(!v.pass);
        println!("criterion {:>2} {name}: {} ({})", i + 1, if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
