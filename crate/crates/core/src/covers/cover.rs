use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexId};

/// One partial map: colors for the vertices of `edge`, aligned with the
/// edge's ascending vertex order. Colors are `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartialMap {
    pub edge: usize,
    pub colors: Vec<u32>,
}

/// A `k`-fold cover: `maps[e]` lists the rows of `F_e`, each aligned with
/// `h.edge(e)`. Values of this type may be invalid; see [`Cover::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cover {
    pub k: u32,
    pub maps: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CoverViolation {
    EdgeCount {
        expected: usize,
        found: usize,
    },
    Arity {
        edge: usize,
        row: usize,
        expected: usize,
        found: usize,
    },
    ColorOutOfRange {
        edge: usize,
        row: usize,
        color: u32,
    },
    TooManyMaps {
        edge: usize,
        count: usize,
    },
    /// Rows `first` and `second` of `F_edge` agree at `vertex`.
    Overlap {
        edge: usize,
        first: usize,
        second: usize,
        vertex: VertexId,
    },
}

impl fmt::Display for CoverViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverViolation::EdgeCount { expected, found } => {
                write!(
                    f,
                    "cover lists {found} edge families, hypergraph has {expected} edges"
                )
            }
            CoverViolation::Arity {
                edge,
                row,
                expected,
                found,
            } => write!(
                f,
                "edge {edge} row {row} has {found} colors, edge has {expected} vertices"
            ),
            CoverViolation::ColorOutOfRange { edge, row, color } => {
                write!(f, "edge {edge} row {row} uses color {color} outside 1..k")
            }
            CoverViolation::TooManyMaps { edge, count } => {
                write!(f, "edge {edge} carries {count} maps, more than k")
            }
            CoverViolation::Overlap {
                edge,
                first,
                second,
                vertex,
            } => write!(
                f,
                "edge {edge}: rows {first} and {second} agree at vertex {vertex}"
            ),
        }
    }
}

impl Cover {
    /// The natural cover: row `i` colors every vertex of the edge with `i`.
    pub fn natural(h: &Hypergraph, k: u32) -> Cover {
        let maps = h
            .edges()
            .iter()
            .map(|e| (1..=k).map(|i| vec![i; e.len()]).collect())
            .collect();
        Cover { k, maps }
    }

    /// No maps at all; every assignment is an F-coloring.
    pub fn empty(h: &Hypergraph, k: u32) -> Cover {
        Cover {
            k,
            maps: vec![Vec::new(); h.m()],
        }
    }

    pub fn partial_maps(&self) -> impl Iterator<Item = PartialMap> + '_ {
        self.maps.iter().enumerate().flat_map(|(e, rows)| {
            rows.iter().map(move |r| PartialMap {
                edge: e,
                colors: r.clone(),
            })
        })
    }

    pub fn map_count(&self) -> usize {
        self.maps.iter().map(Vec::len).sum()
    }

    pub fn is_perfect(&self) -> bool {
        self.maps.iter().all(|rows| rows.len() == self.k as usize)
    }

    /// Checks shape, color ranges, `|F_e| <= k` and pairwise everywhere
    /// disagreement, reporting the first problem found.
    pub fn validate(&self, h: &Hypergraph) -> std::result::Result<(), CoverViolation> {
        if self.maps.len() != h.m() {
            return Err(CoverViolation::EdgeCount {
                expected: h.m(),
                found: self.maps.len(),
            });
        }
        for (e, rows) in self.maps.iter().enumerate() {
            let edge = &h.edges()[e];
            for (r, row) in rows.iter().enumerate() {
                if row.len() != edge.len() {
                    return Err(CoverViolation::Arity {
                        edge: e,
                        row: r,
                        expected: edge.len(),
                        found: row.len(),
                    });
                }
                if let Some(&color) = row.iter().find(|&&c| c == 0 || c > self.k) {
                    return Err(CoverViolation::ColorOutOfRange {
                        edge: e,
                        row: r,
                        color,
                    });
                }
            }
            if rows.len() > self.k as usize {
                return Err(CoverViolation::TooManyMaps {
                    edge: e,
                    count: rows.len(),
                });
            }
            for a in 0..rows.len() {
                for b in a + 1..rows.len() {
                    if let Some(pos) = (0..edge.len()).find(|&p| rows[a][p] == rows[b][p]) {
                        return Err(CoverViolation::Overlap {
                            edge: e,
                            first: a,
                            second: b,
                            vertex: edge[pos],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Fills every deficient `F_e` up to `k` rows, each new row taking the
    /// smallest color unused at each position.
    pub fn saturate(&self) -> Cover {
        let k = self.k;
        let maps = self
            .maps
            .iter()
            .map(|rows| {
                let mut rows = rows.clone();
                let arity = rows.first().map_or(0, Vec::len);
                if arity == 0 {
                    return rows;
                }
                while rows.len() < k as usize {
                    let row = (0..arity)
                        .map(|p| {
                            (1..=k)
                                .find(|c| rows.iter().all(|r| r[p] != *c))
                                .expect("fewer than k rows leave a free color")
                        })
                        .collect();
                    rows.push(row);
                }
                rows
            })
            .collect();
        Cover { k, maps }
    }

    /// Like [`Cover::saturate`], but also fills edges that carry no rows.
    pub fn saturate_in(&self, h: &Hypergraph) -> Cover {
        let mut seeded = self.clone();
        for (e, rows) in seeded.maps.iter_mut().enumerate() {
            if rows.is_empty() && self.k > 0 {
                rows.push(vec![1; h.edges()[e].len()]);
            }
        }
        seeded.saturate()
    }

    /// Replaces every color `c` at vertex `v` by `gauge[pos(v)][c - 1]`.
    /// `gauge` holds one permutation of `1..=k` per vertex position.
    pub fn apply_gauge(&self, h: &Hypergraph, gauge: &[Vec<u32>]) -> Result<Cover> {
        if gauge.len() != h.n() {
            return Err(Error::InvalidParameters(format!(
                "gauge has {} permutations for {} vertices",
                gauge.len(),
                h.n()
            )));
        }
        for g in gauge {
            check_permutation(g, self.k)?;
        }
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(e, rows)| {
                let pos: Vec<usize> = h.edges()[e]
                    .iter()
                    .map(|&v| h.index_of(v).unwrap())
                    .collect();
                rows.iter()
                    .map(|row| {
                        row.iter()
                            .zip(&pos)
                            .map(|(&c, &p)| gauge[p][c as usize - 1])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Cover { k: self.k, maps })
    }

    /// Adds one row to `F_e` if it keeps the cover valid.
    pub fn with_map(&self, h: &Hypergraph, map: PartialMap) -> Result<Cover> {
        let mut out = self.clone();
        out.maps
            .get_mut(map.edge)
            .ok_or(Error::EdgeOutOfRange {
                index: map.edge,
                len: h.m(),
            })?
            .push(map.colors);
        out.validate(h)
            .map_err(|v| Error::InvalidCover(v.to_string()))?;
        Ok(out)
    }
}

/// Errors unless `perm` lists each of `1..=k` exactly once.
pub fn check_permutation(perm: &[u32], k: u32) -> Result<()> {
    let mut seen = vec![false; k as usize];
    if perm.len() != k as usize {
        return Err(Error::MalformedPermutation(format!(
            "{perm:?} has length {}, expected {k}",
            perm.len()
        )));
    }
    for &c in perm {
        if c == 0 || c > k || std::mem::replace(&mut seen[c as usize - 1], true) {
            return Err(Error::MalformedPermutation(format!(
                "{perm:?} is not a permutation of 1..={k}"
            )));
        }
    }
    Ok(())
}

/// A vertex in a cover file: a numeric id or a label from the instance file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexRef {
    Id(VertexId),
    Label(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct EdgeRecord {
    edge: Vec<VertexRef>,
    maps: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CoverRecord {
    k: u32,
    edges: Vec<EdgeRecord>,
}

impl Cover {
    /// `{"k": .., "edges": [{"edge": [ids], "maps": [[colors], ..]}, ..]}`.
    pub fn to_json_value(&self, h: &Hypergraph) -> serde_json::Value {
        let edges = self
            .maps
            .iter()
            .enumerate()
            .map(|(e, rows)| EdgeRecord {
                edge: h.edges()[e].iter().map(|&v| VertexRef::Id(v)).collect(),
                maps: rows.clone(),
            })
            .collect();
        serde_json::to_value(CoverRecord { k: self.k, edges }).expect("cover serializes")
    }

    pub fn to_json(&self, h: &Hypergraph) -> String {
        serde_json::to_string_pretty(&self.to_json_value(h)).expect("cover serializes")
    }

    /// Parses and validates a cover file. Edges may list their vertices in
    /// any order; rows are realigned to the ascending order. Edges absent
    /// from the file carry no maps. `label` resolves string vertex refs.
    pub fn from_json(
        h: &Hypergraph,
        text: &str,
        label: impl Fn(&str) -> Option<VertexId>,
    ) -> Result<Cover> {
        let record: CoverRecord = serde_json::from_str(text)?;
        let mut maps: Vec<Option<Vec<Vec<u32>>>> = vec![None; h.m()];
        for rec in record.edges {
            let ids = rec
                .edge
                .iter()
                .map(|r| match r {
                    VertexRef::Id(v) => Ok(*v),
                    VertexRef::Label(s) => label(s)
                        .ok_or_else(|| Error::InvalidCover(format!("unknown vertex label {s:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            let mut sorted = ids.clone();
            sorted.sort_unstable();
            let e = h
                .edges()
                .iter()
                .position(|edge| *edge == sorted)
                .ok_or_else(|| Error::InvalidCover(format!("{ids:?} is not an edge")))?;
            if maps[e].is_some() {
                return Err(Error::InvalidCover(format!("edge {ids:?} listed twice")));
            }
            let order: Vec<usize> = sorted
                .iter()
                .map(|v| ids.iter().position(|u| u == v).unwrap())
                .collect();
            let rows = rec
                .maps
                .iter()
                .map(|row| {
                    if row.len() != ids.len() {
                        return Err(Error::InvalidCover(format!(
                            "row {row:?} does not match edge {ids:?}"
                        )));
                    }
                    Ok(order.iter().map(|&i| row[i]).collect())
                })
                .collect::<Result<Vec<_>>>()?;
            maps[e] = Some(rows);
        }
        let cover = Cover {
            k: record.k,
            maps: maps.into_iter().map(Option::unwrap_or_default).collect(),
        };
        cover
            .validate(h)
            .map_err(|v| Error::InvalidCover(v.to_string()))?;
        Ok(cover)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge3() -> Hypergraph {
        Hypergraph::from_edges([[1, 2, 3]]).unwrap()
    }

    #[test]
    fn natural_cover_is_valid_and_perfect() {
        let c = Cover::natural(&edge3(), 2);
        assert_eq!(c.maps[0], vec![vec![1, 1, 1], vec![2, 2, 2]]);
        assert!(c.is_perfect());
        assert_eq!(c.validate(&edge3()), Ok(()));
    }

    #[test]
    fn duplicate_row_is_reported() {
        let c = Cover {
            k: 2,
            maps: vec![vec![vec![1, 2, 1], vec![1, 2, 1]]],
        };
        assert_eq!(
            c.validate(&edge3()),
            Err(CoverViolation::Overlap {
                edge: 0,
                first: 0,
                second: 1,
                vertex: 1
            })
        );
    }

    #[test]
    fn saturation_fills_families() {
        let h = edge3();
        let c = Cover {
            k: 3,
            maps: vec![vec![vec![1, 2, 3]]],
        };
        let s = c.saturate();
        assert!(s.is_perfect());
        assert_eq!(s.validate(&h), Ok(()));
        let natural = Cover::natural(&h, 3);
        assert_eq!(natural.saturate(), natural);
        let filled = Cover::empty(&h, 2).saturate_in(&h);
        assert!(filled.is_perfect());
        assert_eq!(filled.validate(&h), Ok(()));
    }

    #[test]
    fn json_round_trip_and_reordering() {
        let h = Hypergraph::from_edges([[1, 2], [2, 3]]).unwrap();
        let c = Cover {
            k: 2,
            maps: vec![vec![vec![1, 2], vec![2, 1]], vec![vec![1, 1]]],
        };
        let back = Cover::from_json(&h, &c.to_json(&h), |_| None).unwrap();
        assert_eq!(back, c);
        let text = r#"{"k": 2, "edges": [{"edge": [2, 1], "maps": [[2, 1]]}]}"#;
        let parsed = Cover::from_json(&h, text, |_| None).unwrap();
        assert_eq!(parsed.maps, vec![vec![vec![1, 2]], vec![]]);
        let labeled = r#"{"k": 2, "edges": [{"edge": ["b", "c"], "maps": [[1, 2]]}]}"#;
        let parsed = Cover::from_json(&h, labeled, |s| match s {
            "b" => Some(2),
            "c" => Some(3),
            _ => None,
        })
        .unwrap();
        assert_eq!(parsed.maps[1], vec![vec![1, 2]]);
        let bad = r#"{"k": 2, "edges": [{"edge": [1, 3], "maps": []}]}"#;
        assert!(Cover::from_json(&h, bad, |_| None).is_err());
    }

    #[test]
    fn permutations_are_checked() {
        assert!(check_permutation(&[2, 1, 3], 3).is_ok());
        assert!(check_permutation(&[1, 1, 3], 3).is_err());
        assert!(check_permutation(&[1, 2], 3).is_err());
        assert!(check_permutation(&[0, 1, 2], 3).is_err());
    }
}
