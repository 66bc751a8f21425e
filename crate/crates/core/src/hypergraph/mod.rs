//! Value-semantics hypergraphs and the structural operations the counting
//! code is built on.
//!
//! Vertices are opaque `u32` ids kept in ascending order. Edges are stored in
//! insertion order, each as an ascending list of ids; equal vertex sets
//! collapse to the first occurrence. Edge indices always refer to this order.

mod cycles;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};

pub use cycles::{CycleCensus, CycleWitness, Girth};

pub type VertexId = u32;

#[derive(Clone, Debug, Eq)]
pub struct Hypergraph {
    vertices: Vec<VertexId>,
    edges: Vec<Vec<VertexId>>,
    degenerate: bool,
    next_id: VertexId,
    apex: Vec<VertexId>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.edges == other.edges
            && self.degenerate == other.degenerate
            && self.apex == other.apex
    }
}

/// Connected components, each block an ascending list of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentPartition {
    pub blocks: Vec<Vec<VertexId>>,
}

impl ComponentPartition {
    pub fn count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, v: VertexId) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&v).is_ok())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub linear: bool,
    pub uniform_rank: Option<usize>,
}

impl Hypergraph {
    /// Builds a hypergraph from user input. Every edge needs at least two
    /// distinct vertices drawn from `vertices`; repeated edges collapse.
    pub fn new<V, E, I>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = VertexId>,
    {
        let vertex_set: BTreeSet<VertexId> = vertices.into_iter().collect();
        let mut normalized = Vec::new();
        for edge in edges {
            let raw: Vec<VertexId> = edge.into_iter().collect();
            let mut sorted = raw.clone();
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex {
                    edge: raw,
                    vertex: w[0],
                });
            }
            if sorted.len() < 2 {
                return Err(Error::EdgeTooSmall { edge: raw });
            }
            if let Some(&v) = sorted.iter().find(|v| !vertex_set.contains(v)) {
                return Err(Error::UnknownVertex(v));
            }
            normalized.push(sorted);
        }
        Ok(Self::assemble(
            vertex_set.into_iter().collect(),
            normalized,
            None,
            Vec::new(),
        ))
    }

    /// Vertex set inferred as the union of the edges.
    pub fn from_edges<E, I>(edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = VertexId>,
    {
        let edges: Vec<Vec<VertexId>> =
            edges.into_iter().map(|e| e.into_iter().collect()).collect();
        let vertices: Vec<VertexId> = edges.iter().flatten().copied().collect();
        Self::new(vertices, edges)
    }

    /// Like [`Hypergraph::new`] but admits size-1 edges, which mark the
    /// result degenerate.
    pub fn with_singletons<V, E, I>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = VertexId>,
    {
        let vertex_set: BTreeSet<VertexId> = vertices.into_iter().collect();
        let mut normalized = Vec::new();
        for edge in edges {
            let mut sorted: Vec<VertexId> = edge.into_iter().collect();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.is_empty() {
                return Err(Error::EdgeTooSmall { edge: sorted });
            }
            if let Some(&v) = sorted.iter().find(|v| !vertex_set.contains(v)) {
                return Err(Error::UnknownVertex(v));
            }
            normalized.push(sorted);
        }
        Ok(Self::assemble(
            vertex_set.into_iter().collect(),
            normalized,
            None,
            Vec::new(),
        ))
    }

    /// Edgeless hypergraph on the given vertices.
    pub fn edgeless(vertices: impl IntoIterator<Item = VertexId>) -> Self {
        let vs: BTreeSet<VertexId> = vertices.into_iter().collect();
        Self::assemble(vs.into_iter().collect(), Vec::new(), None, Vec::new())
    }

    /// Internal constructor: edges must be sorted and drawn from `vertices`,
    /// size-1 edges are admitted and mark the result degenerate.
    fn assemble(
        mut vertices: Vec<VertexId>,
        edges: Vec<Vec<VertexId>>,
        next_id: Option<VertexId>,
        apex: Vec<VertexId>,
    ) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        let mut seen = BTreeSet::new();
        let mut kept = Vec::with_capacity(edges.len());
        for e in edges {
            debug_assert!(e.windows(2).all(|w| w[0] < w[1]));
            if seen.insert(e.clone()) {
                kept.push(e);
            }
        }
        let degenerate = kept.iter().any(|e| e.len() < 2);
        let floor = vertices.last().map_or(0, |&v| v + 1);
        let next_id = next_id.map_or(floor, |n| n.max(floor));
        let apex = apex
            .into_iter()
            .filter(|a| vertices.binary_search(a).is_ok())
            .collect();
        Hypergraph {
            vertices,
            edges: kept,
            degenerate,
            next_id,
            apex,
        }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Vec<VertexId>] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Result<&[VertexId]> {
        self.edges
            .get(index)
            .map(Vec::as_slice)
            .ok_or(Error::EdgeOutOfRange {
                index,
                len: self.edges.len(),
            })
    }

    /// `n(H)`.
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// `m(H)`.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Vertices added as clique vertices by [`Hypergraph::join_clique`], in
    /// creation order.
    pub fn apex_vertices(&self) -> &[VertexId] {
        &self.apex
    }

    pub fn with_apex(mut self, apex: Vec<VertexId>) -> Self {
        self.apex = apex
            .into_iter()
            .filter(|a| self.vertices.binary_search(a).is_ok())
            .collect();
        self
    }

    /// Position of `v` in the ascending vertex list.
    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.index_of(v).is_some()
    }

    /// `d(v)`: number of edges containing `v`.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .filter(|e| e.binary_search(&v).is_ok())
            .count()
    }

    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edge indices incident to each vertex, indexed by vertex position.
    pub(crate) fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n()];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[self.index_of(v).expect("edge vertex in vertex list")].push(i);
            }
        }
        inc
    }

    pub fn components(&self) -> ComponentPartition {
        self.components_of_edges(0..self.m())
    }

    /// Components of the spanning subhypergraph `(V, S)`.
    pub fn components_of_edges(
        &self,
        edges: impl IntoIterator<Item = usize>,
    ) -> ComponentPartition {
        let mut parent: Vec<usize> = (0..self.n()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in edges {
            let e = &self.edges[i];
            let Some((&first, rest)) = e.split_first() else {
                continue;
            };
            let a = self.index_of(first).expect("edge vertex in vertex list");
            for &v in rest {
                let b = self.index_of(v).expect("edge vertex in vertex list");
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut blocks: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for (i, &v) in self.vertices.iter().enumerate() {
            let r = find(&mut parent, i);
            blocks.entry(r).or_default().push(v);
        }
        ComponentPartition {
            blocks: blocks.into_values().collect(),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.components().count() <= 1
    }

    /// `H - e`.
    pub fn delete_edge(&self, index: usize) -> Result<Hypergraph> {
        self.edge(index)?;
        let mut h = self.clone();
        h.edges.remove(index);
        h.degenerate = h.edges.iter().any(|e| e.len() < 2);
        Ok(h)
    }

    /// `H . V0`: identifies the vertices of `set` into one fresh vertex.
    pub fn contract_set(&self, set: &[VertexId]) -> Result<Hypergraph> {
        if set.is_empty() {
            return Err(Error::EmptyContraction);
        }
        if let Some(&v) = set.iter().find(|&&v| !self.contains_vertex(v)) {
            return Err(Error::UnknownVertex(v));
        }
        let merged: BTreeSet<VertexId> = set.iter().copied().collect();
        let fresh = self.next_id;
        let mut vertices: Vec<VertexId> = self
            .vertices
            .iter()
            .copied()
            .filter(|v| !merged.contains(v))
            .collect();
        vertices.push(fresh);
        let edges = self
            .edges
            .iter()
            .map(|e| {
                if e.iter().any(|v| merged.contains(v)) {
                    let mut image: Vec<VertexId> =
                        e.iter().copied().filter(|v| !merged.contains(v)).collect();
                    image.push(fresh);
                    image
                } else {
                    e.clone()
                }
            })
            .collect();
        let apex = self
            .apex
            .iter()
            .copied()
            .filter(|a| !merged.contains(a))
            .collect();
        Ok(Self::assemble(vertices, edges, Some(fresh + 1), apex))
    }

    /// `H / e = (H - e) . e`.
    pub fn contract_edge(&self, index: usize) -> Result<Hypergraph> {
        let e = self.edge(index)?.to_vec();
        self.delete_edge(index)?.contract_set(&e)
    }

    /// `H ∨ K_p`: `p` fresh pairwise-adjacent vertices, each joined to every
    /// vertex of `H` by a 2-edge. The fresh vertices are recorded as apexes.
    pub fn join_clique(&self, p: usize) -> Result<Hypergraph> {
        if p == 0 {
            return Err(Error::InvalidParameters("join needs p >= 1".into()));
        }
        let fresh: Vec<VertexId> = (0..p as VertexId).map(|i| self.next_id + i).collect();
        let mut vertices = self.vertices.clone();
        vertices.extend(&fresh);
        let mut edges = self.edges.clone();
        let mut earlier = self.vertices.clone();
        for &w in &fresh {
            for &v in &earlier {
                edges.push(vec![v.min(w), v.max(w)]);
            }
            earlier.push(w);
        }
        let mut apex = self.apex.clone();
        apex.extend(&fresh);
        Ok(Self::assemble(
            vertices,
            edges,
            Some(self.next_id + p as VertexId),
            apex,
        ))
    }

    /// Removes a vertex together with every edge containing it.
    pub fn remove_vertex(&self, v: VertexId) -> Result<Hypergraph> {
        if !self.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        let vertices = self.vertices.iter().copied().filter(|&u| u != v).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| e.binary_search(&v).is_err())
            .cloned()
            .collect();
        let apex = self.apex.iter().copied().filter(|&a| a != v).collect();
        Ok(Self::assemble(vertices, edges, Some(self.next_id), apex))
    }

    pub fn classify(&self) -> Classification {
        let linear = self.edges.iter().enumerate().all(|(i, a)| {
            self.edges[i + 1..]
                .iter()
                .all(|b| a.iter().filter(|v| b.binary_search(v).is_ok()).count() <= 1)
        });
        let uniform_rank = match self.edges.split_first() {
            Some((first, rest)) if rest.iter().all(|e| e.len() == first.len()) => Some(first.len()),
            Some(_) => None,
            None => None,
        };
        Classification {
            linear,
            uniform_rank,
        }
    }

    /// Adjacency of the 2-section, indexed by vertex position.
    pub fn two_section(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.n()];
        for e in &self.edges {
            let idx: Vec<usize> = e.iter().map(|&v| self.index_of(v).unwrap()).collect();
            for &a in &idx {
                for &b in &idx {
                    if a != b {
                        adj[a].insert(b);
                    }
                }
            }
        }
        adj
    }

    /// `col(H)`: one more than the degeneracy of the 2-section.
    pub fn coloring_number(&self) -> usize {
        let mut adj = self.two_section();
        let mut alive: BTreeSet<usize> = (0..self.n()).collect();
        let mut degeneracy = 0;
        while let Some(&v) = alive.iter().min_by_key(|&&v| (adj[v].len(), v)) {
            degeneracy = degeneracy.max(adj[v].len());
            alive.remove(&v);
            let nbrs: Vec<usize> = adj[v].iter().copied().collect();
            for u in nbrs {
                adj[u].remove(&v);
            }
            adj[v].clear();
        }
        degeneracy + 1
    }

    /// Relabels vertices to `0..n` in ascending order. Edge order is kept.
    pub fn relabeled(&self) -> Hypergraph {
        let map = |v: VertexId| self.index_of(v).unwrap() as VertexId;
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| map(v)).collect())
            .collect();
        let apex = self.apex.iter().map(|&a| map(a)).collect();
        Self::assemble((0..self.n() as VertexId).collect(), edges, None, apex)
    }

    /// Short human-readable description, `{1,2,3},{3,4,5}`.
    pub fn describe(&self) -> String {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|e| {
                let vs: Vec<String> = e.iter().map(ToString::to_string).collect();
                format!("{{{}}}", vs.join(","))
            })
            .collect();
        format!("n={} E=[{}]", self.n(), edges.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(edges: &[&[VertexId]]) -> Hypergraph {
        Hypergraph::from_edges(edges.iter().map(|e| e.to_vec())).unwrap()
    }

    #[test]
    fn components_examples() {
        assert_eq!(hg(&[&[1, 2, 3]]).components().count(), 1);
        let h = Hypergraph::new([1, 2, 3], [vec![1, 2]]).unwrap();
        assert_eq!(h.components().blocks, vec![vec![1, 2], vec![3]]);
        assert_eq!(hg(&[&[1, 2, 3], &[3, 4, 5]]).components().count(), 1);
    }

    #[test]
    fn delete_edge_examples() {
        let h = hg(&[&[1, 2, 3], &[1, 2]]);
        let d = h.delete_edge(0).unwrap();
        assert_eq!(d.vertices(), &[1, 2, 3]);
        assert_eq!(d.edges(), &[vec![1, 2]]);
        assert_eq!(d.components().count(), 2);
        let single = hg(&[&[1, 2, 3]]);
        let e = single.delete_edge(0).unwrap();
        assert_eq!(e.m(), 0);
        assert_eq!(e.n(), 3);
        assert!(matches!(
            single.delete_edge(3),
            Err(Error::EdgeOutOfRange { .. })
        ));
    }

    #[test]
    fn contract_set_examples() {
        let tri = hg(&[&[1, 2], &[2, 3], &[1, 3]]);
        let c = tri.contract_set(&[1, 2]).unwrap();
        // fresh id is 4; {1,2} collapses onto {4}, the other two onto {3,4}
        assert_eq!(c.vertices(), &[3, 4]);
        assert!(c.edges().contains(&vec![3, 4]));
        assert!(c.is_degenerate());
        let c = tri.contract_edge(0).unwrap();
        assert_eq!(c.edges(), &[vec![3, 4]]);
        assert!(!c.is_degenerate());

        let tree = hg(&[&[1, 2, 3], &[3, 4, 5]]);
        let c = tree.contract_edge(0).unwrap();
        assert_eq!(c.vertices(), &[4, 5, 6]);
        assert_eq!(c.edges(), &[vec![4, 5, 6]]);

        let mixed = hg(&[&[1, 2, 3], &[1, 2]]);
        let c = mixed.contract_set(&[1, 2, 3]).unwrap();
        assert!(c.is_degenerate());
        assert_eq!(c.edges(), &[vec![4]]);
        let c = mixed.contract_edge(0).unwrap();
        assert_eq!(c.vertices(), &[4]);
        assert_eq!(c.edges(), &[vec![4]]);
        assert!(c.is_degenerate());

        assert_eq!(tree.contract_set(&[9]), Err(Error::UnknownVertex(9)));
    }

    #[test]
    fn contracting_the_only_edge_leaves_one_vertex() {
        let c = hg(&[&[1, 2, 3]]).contract_edge(0).unwrap();
        assert_eq!(c.n(), 1);
        assert_eq!(c.m(), 0);
    }

    #[test]
    fn fresh_ids_are_deterministic() {
        let h = hg(&[&[1, 2], &[2, 3], &[3, 1], &[3, 4]]);
        let a = h.contract_edge(0).unwrap().contract_edge(0).unwrap();
        let b = h.contract_edge(0).unwrap().contract_edge(0).unwrap();
        assert_eq!(a.vertices(), b.vertices());
        assert_eq!(a.vertices().last(), Some(&6));
    }

    #[test]
    fn join_examples() {
        let h = Hypergraph::edgeless([1, 2]);
        let j = h.join_clique(1).unwrap();
        assert_eq!(j.vertices(), &[1, 2, 3]);
        assert_eq!(j.edges(), &[vec![1, 3], vec![2, 3]]);
        assert_eq!(j.apex_vertices(), &[3]);

        let e = hg(&[&[1, 2, 3]]);
        let j = e.join_clique(2).unwrap();
        assert_eq!(j.n(), 5);
        assert_eq!(j.m(), 1 + 6 + 1);
        assert!(e.join_clique(0).is_err());
        assert_eq!(e.join_clique(1).unwrap().join_clique(1).unwrap(), j);
    }

    #[test]
    fn classify_examples() {
        let c = hg(&[&[1, 2, 3], &[3, 4, 5]]).classify();
        assert_eq!((c.linear, c.uniform_rank), (true, Some(3)));
        let c = hg(&[&[1, 2, 3], &[2, 3, 4]]).classify();
        assert_eq!((c.linear, c.uniform_rank), (false, Some(3)));
        // the edges share {1,2}, so this pair is not linear
        let c = hg(&[&[1, 2, 3], &[1, 2]]).classify();
        assert_eq!((c.linear, c.uniform_rank), (false, None));
        let c = hg(&[&[1, 2, 3], &[3, 4]]).classify();
        assert_eq!((c.linear, c.uniform_rank), (true, None));
    }

    #[test]
    fn coloring_number_examples() {
        let k4 = hg(&[&[1, 2], &[1, 3], &[1, 4], &[2, 3], &[2, 4], &[3, 4]]);
        assert_eq!(k4.coloring_number(), 4);
        let c4 = hg(&[&[1, 2], &[2, 3], &[3, 4], &[4, 1]]);
        assert_eq!(c4.coloring_number(), 3);
        assert_eq!(hg(&[&[1, 2, 3]]).coloring_number(), 3);
        assert_eq!(Hypergraph::edgeless([1]).coloring_number(), 1);
    }

    #[test]
    fn user_constructor_rejects_bad_edges() {
        assert!(matches!(
            Hypergraph::new([1, 2], [vec![1]]),
            Err(Error::EdgeTooSmall { .. })
        ));
        assert!(matches!(
            Hypergraph::new([1, 2], [vec![1, 1, 2]]),
            Err(Error::RepeatedVertex { vertex: 1, .. })
        ));
        assert_eq!(
            Hypergraph::new([1, 2], [vec![1, 5]]),
            Err(Error::UnknownVertex(5))
        );
        let h = Hypergraph::new([1, 2, 3], [vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(h.m(), 1);
    }
}
