//! Cycles, edge girth and the shortest-cycle census.
//!
//! `ℓ(e)` is computed as one more than the shortest distance in `H - e`
//! between two distinct vertices of `e`, where distance counts edges along
//! alternating vertex-edge walks. A shortest walk never repeats a vertex or
//! an edge, so closing it with `e` yields a cycle; conversely every cycle
//! through `e` leaves a path in `H - e` between two distinct vertices of `e`.
//! Taking the minimum over all pairs catches cycles whose other vertices also
//! lie in `e`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use super::{Hypergraph, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(l) => Some(l),
            Girth::Infinite => None,
        }
    }

    pub fn is_even(self) -> bool {
        matches!(self, Girth::Finite(l) if l % 2 == 0)
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(l) => write!(f, "{l}"),
            Girth::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(l) => s.serialize_u64(*l as u64),
            Girth::Infinite => s.serialize_str("inf"),
        }
    }
}

/// A cycle `v_1 e_1 ... v_p e_p` with `{v_{i-1}, v_i} ⊆ e_i`, indices mod `p`.
///
/// `edges[i]` is the edge joining `vertices[i-1]` and `vertices[i]`, so
/// `edges[0]` closes the cycle between the last and the first vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleWitness {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<usize>,
}

impl CycleWitness {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Checks every defining condition against `h`.
    pub fn is_valid_in(&self, h: &Hypergraph) -> bool {
        let p = self.vertices.len();
        if p < 2 || self.edges.len() != p {
            return false;
        }
        let distinct_v: BTreeSet<_> = self.vertices.iter().collect();
        let distinct_e: BTreeSet<_> = self.edges.iter().collect();
        if distinct_v.len() != p || distinct_e.len() != p {
            return false;
        }
        (0..p).all(|i| {
            let Ok(e) = h.edge(self.edges[i]) else {
                return false;
            };
            let prev = self.vertices[(i + p - 1) % p];
            let cur = self.vertices[i];
            e.binary_search(&prev).is_ok() && e.binary_search(&cur).is_ok()
        })
    }
}

/// Shortest cycles: `z = g(H)` and the edge sets of size `z` that form a
/// cycle of length `z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCensus {
    pub length: usize,
    pub count: usize,
    pub edge_sets: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// `ℓ(e)` and, when finite, a shortest cycle through `e`.
    pub fn girth_of_edge(&self, index: usize) -> Result<(Girth, Option<CycleWitness>)> {
        let e = self.edge(index)?;
        if e.len() < 2 {
            return Err(Error::DegenerateEdge(index));
        }
        let inc = self.incidence();
        let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
        for (a, &u) in e.iter().enumerate() {
            let start = self.index_of(u).unwrap();
            let (dist, parent) = self.bfs_avoiding(start, index, &inc);
            for &v in &e[a + 1..] {
                let target = self.index_of(v).unwrap();
                let Some(d) = dist[target] else { continue };
                if best.as_ref().is_none_or(|(bd, _, _)| d < *bd) {
                    let mut verts = vec![target];
                    let mut edges = Vec::new();
                    let mut cur = target;
                    while let Some((prev, via)) = parent[cur] {
                        edges.push(via);
                        verts.push(prev);
                        cur = prev;
                    }
                    verts.reverse();
                    edges.reverse();
                    best = Some((d, verts, edges));
                }
            }
        }
        Ok(match best {
            None => (Girth::Infinite, None),
            Some((d, verts, path_edges)) => {
                let mut edges = vec![index];
                edges.extend(path_edges);
                let witness = CycleWitness {
                    vertices: verts.iter().map(|&i| self.vertices[i]).collect(),
                    edges,
                };
                debug_assert!(witness.is_valid_in(self));
                (Girth::Finite(d + 1), Some(witness))
            }
        })
    }

    /// BFS over the incidence structure without edge `skip`. Distances are in
    /// edges; parents record `(previous vertex, edge used)`.
    #[allow(clippy::type_complexity)]
    fn bfs_avoiding(
        &self,
        start: usize,
        skip: usize,
        inc: &[Vec<usize>],
    ) -> (Vec<Option<usize>>, Vec<Option<(usize, usize)>>) {
        let mut dist = vec![None; self.n()];
        let mut parent = vec![None; self.n()];
        let mut used = vec![false; self.m()];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for &f in &inc[x] {
                if f == skip || used[f] {
                    continue;
                }
                used[f] = true;
                for &y in &self.edges[f] {
                    let yi = self.index_of(y).unwrap();
                    if dist[yi].is_none() {
                        dist[yi] = Some(dx + 1);
                        parent[yi] = Some((x, f));
                        queue.push_back(yi);
                    }
                }
            }
        }
        (dist, parent)
    }

    /// `g(H)`.
    pub fn girth(&self) -> Girth {
        (0..self.m())
            .filter(|&i| self.edges[i].len() >= 2)
            .filter_map(|i| self.girth_of_edge(i).ok().map(|(g, _)| g))
            .min()
            .unwrap_or(Girth::Infinite)
    }

    /// All edge sets of size `g(H)` that form a cycle of that length.
    pub fn shortest_cycle_census(&self) -> Result<CycleCensus> {
        let Girth::Finite(z) = self.girth() else {
            return Err(Error::Acyclic);
        };
        let mut found = BTreeSet::new();
        let inc = self.incidence();
        for first in 0..self.m() {
            let e = &self.edges[first];
            for &closing in e {
                for &start in e {
                    if start == closing {
                        continue;
                    }
                    let mut verts = vec![self.index_of(start).unwrap()];
                    let mut edges = vec![first];
                    self.extend_cycles(
                        z,
                        self.index_of(closing).unwrap(),
                        &inc,
                        &mut verts,
                        &mut edges,
                        &mut found,
                    );
                }
            }
        }
        let edge_sets: Vec<Vec<usize>> = found.into_iter().collect();
        Ok(CycleCensus {
            length: z,
            count: edge_sets.len(),
            edge_sets,
        })
    }

    /// Depth-first extension of a partial cycle whose first edge is the
    /// smallest edge index in the cycle.
    fn extend_cycles(
        &self,
        len: usize,
        closing: usize,
        inc: &[Vec<usize>],
        verts: &mut Vec<usize>,
        edges: &mut Vec<usize>,
        found: &mut BTreeSet<Vec<usize>>,
    ) {
        let last = *verts.last().unwrap();
        if verts.len() == len - 1 {
            // the final edge must join `last` to the closing vertex
            for &f in &inc[last] {
                if f <= edges[0] || edges.contains(&f) {
                    continue;
                }
                if self.edges[f].binary_search(&self.vertices[closing]).is_ok()
                    && !verts.contains(&closing)
                {
                    let mut set = edges.clone();
                    set.push(f);
                    set.sort_unstable();
                    found.insert(set);
                }
            }
            return;
        }
        for &f in &inc[last] {
            if f <= edges[0] || edges.contains(&f) {
                continue;
            }
            for &y in &self.edges[f] {
                let yi = self.index_of(y).unwrap();
                if yi == closing || verts.contains(&yi) {
                    continue;
                }
                verts.push(yi);
                edges.push(f);
                self.extend_cycles(len, closing, inc, verts, edges, found);
                verts.pop();
                edges.pop();
            }
        }
    }
}
