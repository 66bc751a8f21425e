//! Normal forms for perfect covers.
//!
//! Every column of a perfect `F_e` lists `k` distinct colors, so it is a
//! permutation of `[k]`. Reordering rows so that the anchor column reads
//! `1, 2, .., k` leaves one permutation per non-anchor vertex, and every
//! perfect cover arises this way up to row order.

use serde::{Deserialize, Serialize};

use super::cover::{check_permutation, Cover};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Column permutations for one edge, aligned with its ascending vertex
/// order. `columns[anchor]` must be the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgePerms {
    pub anchor: usize,
    pub columns: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PermCoverSpec {
    pub k: u32,
    pub edges: Vec<EdgePerms>,
}

/// Cyclic sub-family: `σ_{e,v}(i) = i + s_{e,v} (mod k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShiftSpec {
    pub k: u32,
    pub shifts: Vec<Vec<u32>>,
}

pub fn identity(k: u32) -> Vec<u32> {
    (1..=k).collect()
}

impl PermCoverSpec {
    /// Every column the identity; expands to the natural cover.
    pub fn natural(h: &Hypergraph, k: u32) -> Self {
        let edges = h
            .edges()
            .iter()
            .map(|e| EdgePerms {
                anchor: 0,
                columns: vec![identity(k); e.len()],
            })
            .collect();
        PermCoverSpec { k, edges }
    }

    pub fn expand(&self, h: &Hypergraph) -> Result<Cover> {
        if self.edges.len() != h.m() {
            return Err(Error::InvalidParameters(format!(
                "spec has {} edges, hypergraph has {}",
                self.edges.len(),
                h.m()
            )));
        }
        let mut maps = Vec::with_capacity(h.m());
        for (e, spec) in self.edges.iter().enumerate() {
            let arity = h.edges()[e].len();
            if spec.columns.len() != arity || spec.anchor >= arity {
                return Err(Error::InvalidParameters(format!(
                    "edge {e}: spec does not match an edge of size {arity}"
                )));
            }
            for col in &spec.columns {
                check_permutation(col, self.k)?;
            }
            if spec.columns[spec.anchor] != identity(self.k) {
                return Err(Error::MalformedPermutation(format!(
                    "edge {e}: anchor column is not the identity"
                )));
            }
            let rows = (0..self.k as usize)
                .map(|i| spec.columns.iter().map(|col| col[i]).collect())
                .collect();
            maps.push(rows);
        }
        Ok(Cover { k: self.k, maps })
    }
}

impl ShiftSpec {
    pub fn zero(h: &Hypergraph, k: u32) -> Self {
        ShiftSpec {
            k,
            shifts: h.edges().iter().map(|e| vec![0; e.len()]).collect(),
        }
    }

    /// The permutation spec with anchor at position 0. Shifts are taken
    /// relative to the anchor's shift.
    pub fn to_perm_spec(&self) -> Result<PermCoverSpec> {
        if self.k == 0 {
            return Err(Error::InvalidParameters("k must be positive".into()));
        }
        let k = self.k;
        let edges = self
            .shifts
            .iter()
            .map(|s| {
                let base = s.first().copied().unwrap_or(0);
                let columns = s
                    .iter()
                    .map(|&x| {
                        let rel = (x + k - base % k) % k;
                        (0..k).map(|i| (i + rel) % k + 1).collect()
                    })
                    .collect();
                EdgePerms { anchor: 0, columns }
            })
            .collect();
        Ok(PermCoverSpec { k, edges })
    }

    pub fn expand(&self, h: &Hypergraph) -> Result<Cover> {
        self.to_perm_spec()?.expand(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_spec_is_natural() {
        let h = Hypergraph::from_edges([[1, 2, 3], [3, 4, 5]]).unwrap();
        for k in 1..4 {
            let c = PermCoverSpec::natural(&h, k).expand(&h).unwrap();
            assert_eq!(c, Cover::natural(&h, k));
            assert_eq!(ShiftSpec::zero(&h, k).expand(&h).unwrap(), c);
        }
    }

    #[test]
    fn shifted_rows() {
        let h = Hypergraph::from_edges([[1, 2, 3]]).unwrap();
        let s = ShiftSpec {
            k: 3,
            shifts: vec![vec![0, 1, 2]],
        };
        let c = s.expand(&h).unwrap();
        assert_eq!(c.maps[0], vec![vec![1, 2, 3], vec![2, 3, 1], vec![3, 1, 2]]);
        assert_eq!(c.validate(&h), Ok(()));
    }

    #[test]
    fn twisted_c4_edge() {
        let h = Hypergraph::from_edges([[1, 2], [2, 3], [3, 4], [1, 4]]).unwrap();
        let mut s = ShiftSpec::zero(&h, 2);
        s.shifts[3][1] = 1;
        let c = s.expand(&h).unwrap();
        // rows on {1,4}: (1,2), (2,1); forbids f(4) = f(1) + 1 mod 2
        assert_eq!(c.maps[3], vec![vec![1, 2], vec![2, 1]]);
    }

    #[test]
    fn malformed_specs_are_rejected() {
        let h = Hypergraph::from_edges([[1, 2]]).unwrap();
        let bad = PermCoverSpec {
            k: 2,
            edges: vec![EdgePerms {
                anchor: 0,
                columns: vec![vec![1, 2], vec![1, 1]],
            }],
        };
        assert!(matches!(
            bad.expand(&h),
            Err(Error::MalformedPermutation(_))
        ));
        let bad_anchor = PermCoverSpec {
            k: 2,
            edges: vec![EdgePerms {
                anchor: 1,
                columns: vec![vec![1, 2], vec![2, 1]],
            }],
        };
        assert!(bad_anchor.expand(&h).is_err());
    }
}
