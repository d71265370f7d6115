//! Coloring pseudo-buoys from colorings of their bags.
//!
//! With `ki` colors on bag `i`, a pseudo-buoy is `h`-colorable whenever
//! `ki + k(i+1) <= h` for every `i` and `k1 + .. + k5 <= 2h`. The coloring is
//! built one color at a time: pick a good pair `(j, j+2)` of nonempty bags
//! meeting every tight pair (`ki + k(i+1) = h`), give color `h` to one class
//! of each, and recurse on what is left with `h - 1`. Conversely a stable set
//! meets at most two bags, so `k1 + .. + k5 > 2h` rules out `h` colors when
//! the `ki` are the bag chromatic numbers.

use super::{Coloring, Pattern};
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::recognition::PseudoBuoy;

/// True iff `pattern` alone forces more than `h` colors.
pub fn pseudo_buoy_lower_bound(pattern: &Pattern, h: usize) -> bool {
    pattern.sum() > 2 * h
}

/// Chromatic number of any buoy whose bags have the given chromatic numbers.
pub fn buoy_chromatic(pattern: &Pattern) -> usize {
    pattern.max_adjacent_sum().max(pattern.sum().div_ceil(2))
}

fn precondition(msg: impl Into<String>) -> Error {
    Error::PseudoBuoyPrecondition(msg.into())
}

/// Colors `buoy` with at most `h` colors.
///
/// `bag_colorings[i]` colors `buoy.bag_graph(i)` (bag members in ascending
/// order); the number of colors it uses is taken as `ki`. The result colors
/// the subgraph induced by `buoy.vertex_set()`, vertices in ascending order.
pub fn color_pseudo_buoy(
    buoy: &PseudoBuoy,
    bag_colorings: &[Coloring; 5],
    h: usize,
) -> Result<Coloring> {
    let host = buoy.host();
    let bags = *buoy.bags();
    let mut classes: [Vec<VertexSet>; 5] = Default::default();
    for i in 0..5 {
        let members = bags[i].to_vec();
        let col = &bag_colorings[i];
        if col.len() != members.len() {
            return Err(precondition(format!(
                "coloring of bag {} has {} entries for {} vertices",
                i + 1,
                col.len(),
                members.len()
            )));
        }
        if !col.is_proper(&buoy.bag_graph(i)) {
            return Err(precondition(format!("coloring of bag {} is not proper", i + 1)));
        }
        classes[i] = col
            .classes()
            .into_iter()
            .map(|local| local.iter().fold(VertexSet::EMPTY, |acc, x| acc.with(members[x])))
            .collect();
    }
    let counts: [usize; 5] = std::array::from_fn(|i| classes[i].len());
    for i in 0..5 {
        if counts[i] + counts[(i + 1) % 5] > h {
            return Err(precondition(format!(
                "bags {} and {} use {} colors together, more than h = {h}",
                i + 1,
                (i + 1) % 5 + 1,
                counts[i] + counts[(i + 1) % 5]
            )));
        }
    }
    let total: usize = counts.iter().sum();
    if total > 2 * h {
        return Err(precondition(format!("bags use {total} colors in total, more than 2h = {}", 2 * h)));
    }

    let mut color = vec![0usize; host.order()];
    assign(bags, classes, h, &mut color)?;

    let inside = buoy.vertex_set();
    let out: Vec<usize> = inside.iter().map(|v| color[v]).collect();
    debug_assert!(Coloring::new(out.clone()).is_proper(&host.induced_subgraph(inside).expect("valid")));
    Ok(Coloring::new(out))
}

fn assign(
    mut bags: [VertexSet; 5],
    mut classes: [Vec<VertexSet>; 5],
    h: usize,
    color: &mut [usize],
) -> Result<()> {
    let k: [usize; 5] = std::array::from_fn(|i| classes[i].len());
    let nonempty: Vec<usize> = (0..5).filter(|&i| !bags[i].is_empty()).collect();
    if h == 0 {
        return if nonempty.is_empty() {
            Ok(())
        } else {
            Err(precondition("vertices left with no colors"))
        };
    }
    if nonempty.len() <= 2 {
        // disjoint union, or the join of two consecutive bags
        let mut offset = 0;
        let consecutive = nonempty.len() == 2 && {
            let d = (nonempty[1] + 5 - nonempty[0]) % 5;
            d == 1 || d == 4
        };
        for &i in &nonempty {
            for (c, cls) in classes[i].iter().enumerate() {
                for v in *cls {
                    color[v] = offset + c + 1;
                }
            }
            if consecutive {
                offset += k[i];
            }
        }
        return Ok(());
    }

    let tight: Vec<usize> = (0..5).filter(|&i| k[i] + k[(i + 1) % 5] == h).collect();
    let good = (0..5).find(|&j| {
        let jj = (j + 2) % 5;
        !bags[j].is_empty()
            && !bags[jj].is_empty()
            && tight
                .iter()
                .all(|&i| [i, (i + 1) % 5].iter().any(|&x| x == j || x == jj))
    });
    let Some(j) = good else {
        return Err(precondition(format!("no good pair for bag color counts {k:?} and h = {h}")));
    };
    for b in [j, (j + 2) % 5] {
        let lowest = bags[b].first().expect("good pair bags are nonempty");
        let idx = classes[b]
            .iter()
            .position(|c| c.contains(lowest))
            .expect("every bag vertex lies in a class");
        let cls = classes[b].remove(idx);
        for v in cls {
            color[v] = h;
        }
        bags[b] = bags[b].difference(cls);
    }
    assign(bags, classes, h - 1, color)
}
