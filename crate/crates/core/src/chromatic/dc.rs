//! Deletion–contraction on a bitmask form of the hypergraph.
//!
//! States are normalized before lookup: isolated vertices are factored out as
//! powers of `k`, edges containing another edge are dropped (their constraint
//! is implied), the remaining structure is split into connected components,
//! and each component is relabeled to `0..n` in ascending order. The memo is
//! keyed on that literal form; no isomorphism reduction is attempted.

use std::collections::HashMap;

use crate::poly::IntPoly;

pub(crate) type Mask = u128;

/// Normalized connected component: vertex count plus sorted edge masks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentKey {
    pub n: u8,
    pub edges: Vec<Mask>,
}

impl ComponentKey {
    /// `n:hex,hex,...`, the cache file representation.
    pub fn encode(&self) -> String {
        let edges: Vec<String> = self.edges.iter().map(|e| format!("{e:x}")).collect();
        format!("{}:{}", self.n, edges.join(","))
    }

    pub fn decode(text: &str) -> Option<Self> {
        let (n, rest) = text.split_once(':')?;
        let n: u8 = n.parse().ok()?;
        if n as u32 > Mask::BITS {
            return None;
        }
        let edges = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(',')
                .map(|e| Mask::from_str_radix(e, 16).ok())
                .collect::<Option<Vec<_>>>()?
        };
        let full: Mask = if n as u32 == Mask::BITS {
            !0
        } else {
            (1 << n) - 1
        };
        if edges.iter().any(|&e| e & !full != 0 || e.count_ones() < 2) {
            return None;
        }
        Some(ComponentKey { n, edges })
    }
}

/// Memo table for chromatic polynomials of normalized components.
#[derive(Debug, Default, Clone)]
pub struct ChromaticCache {
    table: HashMap<ComponentKey, IntPoly>,
    hits: u64,
    misses: u64,
}

impl ChromaticCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn misses(&self) -> u64 {
        self.misses
    }

    pub fn insert(&mut self, key: ComponentKey, value: IntPoly) {
        self.table.insert(key, value);
    }

    /// Entries in a deterministic order.
    pub fn entries(&self) -> Vec<(&ComponentKey, &IntPoly)> {
        let mut v: Vec<_> = self.table.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub(crate) fn polynomial(&mut self, alive: Mask, edges: Vec<Mask>) -> IntPoly {
        solve(alive, edges, self)
    }
}

fn solve(alive: Mask, mut edges: Vec<Mask>, cache: &mut ChromaticCache) -> IntPoly {
    if edges.iter().any(|e| e.count_ones() < 2) {
        return IntPoly::zero();
    }
    edges.sort_unstable();
    edges.dedup();
    drop_implied(&mut edges);

    let covered = edges.iter().fold(0, |acc, e| acc | e);
    let isolated = (alive & !covered).count_ones() as usize;
    let mut result = IntPoly::monomial(1, isolated);
    for (verts, comp_edges) in split_components(covered, &edges) {
        let key = compact(verts, comp_edges);
        let p = component_polynomial(key, cache);
        if p.is_zero() {
            return p;
        }
        result = &result * &p;
    }
    result
}

fn component_polynomial(key: ComponentKey, cache: &mut ChromaticCache) -> IntPoly {
    if let Some(p) = cache.table.get(&key) {
        cache.hits += 1;
        return p.clone();
    }
    cache.misses += 1;
    let alive: Mask = if key.n as u32 == Mask::BITS {
        !0
    } else {
        (1 << key.n) - 1
    };
    let p = if key.edges.len() == 1 {
        // single edge of size r on r vertices: k^r - k
        let r = key.edges[0].count_ones() as usize;
        &IntPoly::monomial(1, r) - &IntPoly::k()
    } else {
        let pivot = choose_pivot(key.n as usize, &key.edges);
        let e = key.edges[pivot];
        let deleted: Vec<Mask> = key
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pivot)
            .map(|(_, &f)| f)
            .collect();
        let rep = e & e.wrapping_neg();
        let contracted: Vec<Mask> = deleted
            .iter()
            .map(|&f| if f & e != 0 { (f & !e) | rep } else { f })
            .collect();
        let with_deleted = solve(alive, deleted, cache);
        let with_contracted = solve(alive & !(e & !rep), contracted, cache);
        &with_deleted - &with_contracted
    };
    cache.table.insert(key, p.clone());
    p
}

/// Largest edge first; among those, one touching a vertex of least degree,
/// then the first such edge in sorted order.
fn choose_pivot(n: usize, edges: &[Mask]) -> usize {
    let mut degree = vec![0u32; n];
    for &e in edges {
        let mut bits = e;
        while bits != 0 {
            degree[bits.trailing_zeros() as usize] += 1;
            bits &= bits - 1;
        }
    }
    let min_deg_in = |e: Mask| {
        let mut bits = e;
        let mut best = u32::MAX;
        while bits != 0 {
            best = best.min(degree[bits.trailing_zeros() as usize]);
            bits &= bits - 1;
        }
        best
    };
    (0..edges.len())
        .min_by_key(|&i| {
            let e = edges[i];
            (std::cmp::Reverse(e.count_ones()), min_deg_in(e), i)
        })
        .expect("at least one edge")
}

/// Removes every edge that strictly contains another edge. Input is sorted
/// and deduplicated.
fn drop_implied(edges: &mut Vec<Mask>) {
    if edges.len() < 2 {
        return;
    }
    let snapshot = edges.clone();
    edges.retain(|&f| !snapshot.iter().any(|&g| g != f && g & f == g));
}

fn split_components(covered: Mask, edges: &[Mask]) -> Vec<(Mask, Vec<Mask>)> {
    let mut remaining = covered;
    let mut out = Vec::new();
    while remaining != 0 {
        let mut comp: Mask = remaining & remaining.wrapping_neg();
        loop {
            let grown = edges
                .iter()
                .filter(|&&e| e & comp != 0)
                .fold(comp, |acc, &e| acc | e);
            if grown == comp {
                break;
            }
            comp = grown;
        }
        let comp_edges: Vec<Mask> = edges.iter().copied().filter(|&e| e & comp != 0).collect();
        out.push((comp, comp_edges));
        remaining &= !comp;
    }
    out
}

/// Relabels the vertices in `verts` to `0..popcount` preserving order.
fn compact(verts: Mask, edges: Vec<Mask>) -> ComponentKey {
    let n = verts.count_ones() as u8;
    let full: Mask = if n as u32 == Mask::BITS {
        !0
    } else {
        (1 << n) - 1
    };
    if verts == full {
        let mut edges = edges;
        edges.sort_unstable();
        return ComponentKey { n, edges };
    }
    let mut position = [0u8; 128];
    let mut bits = verts;
    let mut next = 0u8;
    while bits != 0 {
        position[bits.trailing_zeros() as usize] = next;
        next += 1;
        bits &= bits - 1;
    }
    let mut out: Vec<Mask> = edges
        .iter()
        .map(|&e| {
            let mut bits = e;
            let mut m = 0;
            while bits != 0 {
                m |= 1 << position[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            m
        })
        .collect();
    out.sort_unstable();
    ComponentKey { n, edges: out }
}
