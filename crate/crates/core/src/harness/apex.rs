//! Covers of `K_1 ∨ H` split by the color of the apex.

use serde::Serialize;

use crate::covers::{count_colorings_brute, positions, Cover, Kernel};
use crate::error::{Error, Result};
use crate::format::{parse_hypergraph, ParsedHypergraph};
use crate::hypergraph::{Hypergraph, VertexId};

pub const TABLE1_HYPERGRAPH: &str = include_str!("../../data/table1.hg");
pub const TABLE1_COVER: &str = include_str!("../../data/table1.json");

/// A cover of `M = K_1 ∨ H` with apex `w`. Every vertex of `H` has a pair
/// edge `{w, v}` carrying `k` maps; every other edge is a hyperedge of `H`.
#[derive(Clone, Debug)]
pub struct ApexCover {
    pub join: Hypergraph,
    pub apex: VertexId,
    /// `M - w`, with edges in the order of the hyperedges of `M`.
    pub base: Hypergraph,
    pub cover: Cover,
    /// `pair_edge[i]`: edge of `M` joining `w` to the `i`-th vertex of `H`.
    pair_edge: Vec<usize>,
    /// `hyper_edge[p]`: edge of `M` equal to the `p`-th edge of `H`.
    hyper_edge: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelFailure {
    /// Index of the hyperedge in `M`.
    pub edge: usize,
    /// The pattern the slice induces on it, absent from its maps.
    pub pattern: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelCheck {
    pub level: u32,
    pub is_level_mapping: bool,
    /// The slice: the color each vertex of `H` receives from its pair-edge
    /// row with apex color `level`.
    pub slice: Vec<u32>,
    /// 1-based row index `q_p` matched in each hyperedge, up to any failure.
    pub matches: Vec<usize>,
    pub failure: Option<LevelFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApexDecomposition {
    /// `per_level[j - 1]`: colorings with the apex colored `j`.
    pub per_level: Vec<u64>,
    pub sum: u64,
    pub brute_total: u64,
    pub consistent: bool,
}

fn malformed(why: impl Into<String>) -> Error {
    Error::InvalidCover(format!("malformed apex labeling: {}", why.into()))
}

impl ApexCover {
    pub fn new(join: Hypergraph, apex: VertexId, cover: Cover) -> Result<Self> {
        if !join.contains_vertex(apex) {
            return Err(Error::UnknownVertex(apex));
        }
        cover
            .validate(&join)
            .map_err(|v| Error::InvalidCover(v.to_string()))?;
        let base = join.remove_vertex(apex)?;
        let mut pair_edge = vec![usize::MAX; base.n()];
        let mut hyper_edge = Vec::with_capacity(base.m());
        for (i, e) in join.edges().iter().enumerate() {
            if e.binary_search(&apex).is_err() {
                hyper_edge.push(i);
                continue;
            }
            if e.len() != 2 {
                return Err(malformed(format!(
                    "edge {i} contains the apex but is not a pair"
                )));
            }
            let v = if e[0] == apex { e[1] } else { e[0] };
            pair_edge[base.index_of(v).expect("vertex of M - w")] = i;
            if cover.maps[i].len() != cover.k as usize {
                return Err(malformed(format!("pair edge {i} needs {} maps", cover.k)));
            }
        }
        if let Some(i) = pair_edge.iter().position(|&e| e == usize::MAX) {
            return Err(malformed(format!(
                "vertex {} is not joined to the apex",
                base.vertices()[i]
            )));
        }
        Ok(ApexCover {
            join,
            apex,
            base,
            cover,
            pair_edge,
            hyper_edge,
        })
    }

    /// Uses the sole apex tag of `join`.
    pub fn from_tagged(join: Hypergraph, cover: Cover) -> Result<Self> {
        match *join.apex_vertices() {
            [w] => ApexCover::new(join, w, cover),
            _ => Err(malformed("expected exactly one apex vertex")),
        }
    }

    pub fn k(&self) -> u32 {
        self.cover.k
    }

    /// Position of the apex and of the other endpoint in pair edge `e`.
    fn pair_positions(&self, e: usize) -> (usize, usize) {
        if self.join.edges()[e][0] == self.apex {
            (0, 1)
        } else {
            (1, 0)
        }
    }

    /// `Φ_j` as one color per vertex of `H`; `j` is 1-based.
    pub fn slice(&self, j: u32) -> Vec<u32> {
        self.pair_edge
            .iter()
            .map(|&e| {
                let (wp, vp) = self.pair_positions(e);
                let row = self.cover.maps[e]
                    .iter()
                    .find(|row| row[wp] == j)
                    .expect("pair edges carry every apex color");
                row[vp]
            })
            .collect()
    }

    pub fn level_mapping_check(&self, j: u32) -> Result<LevelCheck> {
        if j == 0 || j > self.k() {
            return Err(Error::InvalidParameters(format!(
                "level {j} outside 1..={}",
                self.k()
            )));
        }
        let slice = self.slice(j);
        let mut matches = Vec::with_capacity(self.hyper_edge.len());
        for &e in &self.hyper_edge {
            let pattern: Vec<u32> = self.join.edges()[e]
                .iter()
                .map(|&v| slice[self.base.index_of(v).unwrap()])
                .collect();
            match self.cover.maps[e].iter().position(|row| *row == pattern) {
                Some(q) => matches.push(q + 1),
                None => {
                    return Ok(LevelCheck {
                        level: j,
                        is_level_mapping: false,
                        slice,
                        matches,
                        failure: Some(LevelFailure { edge: e, pattern }),
                    })
                }
            }
        }
        Ok(LevelCheck {
            level: j,
            is_level_mapping: true,
            slice,
            matches,
            failure: None,
        })
    }

    pub fn level_checks(&self) -> Vec<LevelCheck> {
        (1..=self.k())
            .map(|j| self.level_mapping_check(j).expect("level in range"))
            .collect()
    }

    pub fn level_mapping_count(&self) -> usize {
        self.level_checks()
            .iter()
            .filter(|c| c.is_level_mapping)
            .count()
    }

    /// Colorings of `H` avoiding its hyperedge maps and the slice `Φ_j`,
    /// i.e. the colorings of `M` with the apex colored `j`.
    pub fn level_count(&self, j: u32) -> u64 {
        let mut kernel = Kernel::new(self.base.n(), self.k());
        for (p, &e) in self.hyper_edge.iter().enumerate() {
            kernel.forbid(&positions(&self.base, p), &self.cover.maps[e]);
        }
        for (i, c) in self.slice(j).into_iter().enumerate() {
            kernel.forbid(&[i], &[vec![c]]);
        }
        kernel.count()
    }

    pub fn apex_decomposition(&self, budget: u64) -> Result<ApexDecomposition> {
        let brute_total = count_colorings_brute(&self.join, &self.cover, budget)?;
        let per_level: Vec<u64> = (1..=self.k()).map(|j| self.level_count(j)).collect();
        let sum = per_level.iter().sum();
        Ok(ApexDecomposition {
            consistent: sum == brute_total,
            per_level,
            sum,
            brute_total,
        })
    }
}

/// The shipped example: `K_1 ∨ H` on `w, v1..v5` with a 3-fold cover.
pub fn table1() -> Result<(ParsedHypergraph, ApexCover)> {
    let parsed = parse_hypergraph(TABLE1_HYPERGRAPH, false)?;
    let cover = Cover::from_json(&parsed.hypergraph, TABLE1_COVER, |s| parsed.labels.id_of(s))?;
    let ac = ApexCover::from_tagged(parsed.hypergraph.clone(), cover)?;
    Ok((parsed, ac))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chromatic::chromatic_polynomial;

    #[test]
    fn table1_levels() {
        let (_, ac) = table1().unwrap();
        let checks = ac.level_checks();
        let flags: Vec<bool> = checks.iter().map(|c| c.is_level_mapping).collect();
        assert_eq!(flags, [false, true, false]);
        assert_eq!(checks[1].matches, [2, 1]);
        assert_eq!(checks[0].failure.as_ref().unwrap().pattern, [3, 1, 1]);
        assert_eq!(checks[2].failure.as_ref().unwrap().pattern, [2, 3, 2]);
        let d = ac.apex_decomposition(1_000_000).unwrap();
        assert!(d.consistent);
    }

    #[test]
    fn natural_apex_cover_counts_the_join() {
        let h = Hypergraph::from_edges([[0, 1, 2]]).unwrap();
        let m = h.join_clique(1).unwrap();
        let ac = ApexCover::from_tagged(m.clone(), Cover::natural(&m, 3)).unwrap();
        assert_eq!(ac.level_mapping_count(), 3);
        let d = ac.apex_decomposition(1_000_000).unwrap();
        let p = chromatic_polynomial(&m).unwrap().eval_i64(3);
        assert_eq!(d.sum, u64::try_from(p).unwrap());
        assert_eq!(d.per_level, [6, 6, 6]);
    }

    #[test]
    fn degenerate_k1_counts_nothing() {
        let h = Hypergraph::from_edges([[0, 1]]).unwrap();
        let m = h.join_clique(1).unwrap();
        let ac = ApexCover::from_tagged(m.clone(), Cover::natural(&m, 1)).unwrap();
        assert_eq!(ac.apex_decomposition(100).unwrap().per_level, [0]);
    }

    #[test]
    fn rejects_missing_pairs() {
        let m = Hypergraph::from_edges([[0, 1], [1, 2]]).unwrap();
        let err = ApexCover::new(m.clone(), 0, Cover::natural(&m, 2)).unwrap_err();
        assert!(matches!(err, Error::InvalidCover(ref s) if s.contains("not joined")));
    }
}
