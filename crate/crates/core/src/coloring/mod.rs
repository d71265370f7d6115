//! Colorings: an exact oracle, the constructive pseudo-buoy coloring and a
//! structural colorer for (P5, co-P5)-free graphs.

mod exact;
mod pseudo_buoy;
mod structural;

pub use exact::{chromatic_number, is_k_colorable, is_k_critical, optimal_coloring};
pub use pseudo_buoy::{buoy_chromatic, color_pseudo_buoy, pseudo_buoy_lower_bound};
pub use structural::structural_color;

use std::fmt;

use crate::graph::{Graph, VertexSet};

/// A color in `1..=k` for every vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Coloring(Vec<usize>);

impl Coloring {
    /// Panics if a color is zero.
    pub fn new(colors: Vec<usize>) -> Self {
        assert!(colors.iter().all(|&c| c >= 1), "colors start at 1");
        Coloring(colors)
    }

    pub fn colors(&self) -> &[usize] {
        &self.0
    }

    pub fn color(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_color(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Number of distinct colors used.
    pub fn num_colors(&self) -> usize {
        let mut seen: Vec<usize> = self.0.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.0.len() == g.order() && g.edges().all(|(u, v)| self.0[u] != self.0[v])
    }

    /// Nonempty color classes ordered by color.
    pub fn classes(&self) -> Vec<VertexSet> {
        let mut by_color: Vec<(usize, usize)> = self.0.iter().copied().zip(0..).collect();
        by_color.sort_unstable();
        let mut out: Vec<VertexSet> = Vec::new();
        let mut last = None;
        for (c, v) in by_color {
            if last != Some(c) {
                out.push(VertexSet::EMPTY);
                last = Some(c);
            }
            let cls = out.last_mut().expect("pushed above");
            *cls = cls.with(v);
        }
        out
    }

    /// Same classes, renumbered `1..=num_colors` in order of first appearance.
    pub fn normalized(&self) -> Coloring {
        let mut map = std::collections::HashMap::new();
        let colors = self
            .0
            .iter()
            .map(|&c| {
                let next = map.len() + 1;
                *map.entry(c).or_insert(next)
            })
            .collect();
        Coloring(colors)
    }
}

/// Bag chromatic numbers `(k1, .., k5)` of a buoy, in cyclic order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Pattern(pub [usize; 5]);

impl Pattern {
    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    /// Largest chromatic number of two consecutive bags together.
    pub fn max_adjacent_sum(&self) -> usize {
        (0..5).map(|i| self.0[i] + self.0[(i + 1) % 5]).max().expect("five entries")
    }

    /// The ten images under rotation and reflection.
    pub fn dihedral_images(&self) -> [Pattern; 10] {
        let p = self.0;
        std::array::from_fn(|t| {
            let r = t / 2;
            if t % 2 == 0 {
                Pattern(std::array::from_fn(|i| p[(r + i) % 5]))
            } else {
                Pattern(std::array::from_fn(|i| p[(r + 5 - i) % 5]))
            }
        })
    }

    /// Lexicographically smallest dihedral image.
    pub fn canonical(&self) -> Pattern {
        *self.dihedral_images().iter().min().expect("ten images")
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d, e] = self.0;
        write!(f, "({a},{b},{c},{d},{e})")
    }
}
