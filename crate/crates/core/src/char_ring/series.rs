//! Truncated series views of rational characters.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::root_system::Weight;

/// A finite window of a formal character: exact multiplicities for every
/// weight within `depth` of some numerator coset representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesWindow {
    depth: u32,
    map: BTreeMap<Weight, BigInt>,
}

impl SeriesWindow {
    pub fn new(depth: u32) -> Self {
        SeriesWindow { depth, map: BTreeMap::new() }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn add(&mut self, w: Weight, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.map.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn get(&self, w: &Weight) -> BigInt {
        self.map.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Sum of all multiplicities in the window.
    pub fn total(&self) -> BigInt {
        self.map.values().sum()
    }

    /// Formal convolution of two windows. Coefficients are only trustworthy
    /// on the intersection of the guaranteed domains; callers restrict.
    pub fn convolve(&self, other: &SeriesWindow) -> SeriesWindow {
        let mut out = SeriesWindow::new(self.depth.min(other.depth));
        for (w1, c1) in &self.map {
            for (w2, c2) in &other.map {
                out.add(w1.add(w2), c1 * c2);
            }
        }
        out
    }

    /// Keep only weights satisfying the predicate.
    pub fn filtered(&self, mut keep: impl FnMut(&Weight) -> bool) -> SeriesWindow {
        SeriesWindow {
            depth: self.depth,
            map: self
                .map
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for SeriesWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "depth {}:", self.depth)?;
        for (w, c) in &self.map {
            writeln!(f, "  {w}: {c}")?;
        }
        Ok(())
    }
}
