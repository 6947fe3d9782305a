//! The poset of all Newton polygons with a fixed endpoint `(h, d)`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use crate::polygon::{enumerate_nps, precedes_unchecked, NewtonPolygon};

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> BitSet {
        BitSet(vec![0; n.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn intersection_len(&self, other: &BitSet) -> u32 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a & b).count_ones()).sum()
    }
}

/// Precedence relation on `enumerate_nps(h, d)`, stored as up/down bitsets.
#[derive(Debug, Clone)]
pub struct PolygonPoset {
    polygons: Vec<NewtonPolygon>,
    index: HashMap<NewtonPolygon, usize>,
    /// `down[j]` holds every `i` with `polygons[i] ≺ polygons[j]`.
    down: Vec<BitSet>,
    /// `up[i]` holds every `j` with `polygons[i] ≺ polygons[j]`.
    up: Vec<BitSet>,
}

impl PolygonPoset {
    pub fn new(h: u32, d: u32) -> PolygonPoset {
        let polygons = enumerate_nps(h, d);
        let n = polygons.len();
        let mut down = vec![BitSet::new(n); n];
        let mut up = vec![BitSet::new(n); n];
        for i in 0..n {
            for j in 0..n {
                if precedes_unchecked(&polygons[i], &polygons[j]) {
                    down[j].insert(i);
                    up[i].insert(j);
                }
            }
        }
        let index = polygons.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        PolygonPoset {
            polygons,
            index,
            down,
            up,
        }
    }

    pub fn polygons(&self) -> &[NewtonPolygon] {
        &self.polygons
    }

    pub fn len(&self) -> usize {
        self.polygons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polygons.is_empty()
    }

    pub fn index_of(&self, p: &NewtonPolygon) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn precedes(&self, i: usize, j: usize) -> bool {
        self.down[j].contains(i)
    }

    /// `polygons[i] ≺ polygons[j]` is saturated.
    pub fn is_cover(&self, i: usize, j: usize) -> bool {
        // the interval [i, j] is exactly {i, j}
        i != j && self.precedes(i, j) && self.up[i].intersection_len(&self.down[j]) == 2
    }

    /// Every `ζ` with `ζ ≺ polygons[j]` saturated.
    pub fn covers_below(&self, j: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_cover(i, j)).collect()
    }

    pub fn saturated_below(&self, xi: &NewtonPolygon) -> Vec<NewtonPolygon> {
        match self.index_of(xi) {
            Some(j) => self
                .covers_below(j)
                .into_iter()
                .map(|i| self.polygons[i].clone())
                .collect(),
            None => Vec::new(),
        }
    }

    /// A chain of covers from `zeta` up to `xi` minimizing first the number
    /// of steps rejected by `good`, then the number of steps.
    pub fn saturated_chain(
        &self,
        zeta: &NewtonPolygon,
        xi: &NewtonPolygon,
        good: impl Fn(&NewtonPolygon, &NewtonPolygon) -> bool,
    ) -> Option<Vec<NewtonPolygon>> {
        let (s, t) = (self.index_of(zeta)?, self.index_of(xi)?);
        if !self.precedes(s, t) {
            return None;
        }
        let interval: Vec<usize> = (0..self.len())
            .filter(|&k| self.precedes(s, k) && self.precedes(k, t))
            .collect();
        let mut best: HashMap<usize, (usize, usize)> = HashMap::from([(s, (0, 0))]);
        let mut parent: HashMap<usize, usize> = HashMap::new();
        let mut heap = BinaryHeap::from([Reverse((0usize, 0usize, s))]);
        while let Some(Reverse((bad, steps, i))) = heap.pop() {
            if best.get(&i).is_some_and(|&b| b < (bad, steps)) {
                continue;
            }
            if i == t {
                let mut path = vec![self.polygons[t].clone()];
                let mut cur = t;
                while cur != s {
                    cur = parent[&cur];
                    path.push(self.polygons[cur].clone());
                }
                path.reverse();
                return Some(path);
            }
            for &k in &interval {
                if !self.is_cover(i, k) {
                    continue;
                }
                let penalty = usize::from(!good(&self.polygons[i], &self.polygons[k]));
                let cost = (bad + penalty, steps + 1);
                if best.get(&k).is_none_or(|&b| cost < b) {
                    best.insert(k, cost);
                    parent.insert(k, i);
                    heap.push(Reverse((cost.0, cost.1, k)));
                }
            }
        }
        None
    }
}
