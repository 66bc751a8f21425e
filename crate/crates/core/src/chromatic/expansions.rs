//! The girth expansion of `P(H, k)`, the even-`ℓ(e)` deficit and the
//! connecting family of an edge.

use num_bigint::BigInt;
use serde::Serialize;

use super::{chromatic_dc, subset_sum, to_masks, ChromaticCache, Mask};
use crate::error::{Error, Result};
use crate::hypergraph::{Girth, Hypergraph, VertexId};
use crate::poly::{IntPoly, Threshold};

/// `P(H, k) = binomial_part + cycle_term + residual`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GirthExpansion {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub z: usize,
    pub t: usize,
    pub binomial_part: IntPoly,
    pub cycle_term: IntPoly,
    pub residual: IntPoly,
    /// `n - z(r-1)`.
    pub residual_degree_bound: i64,
}

impl GirthExpansion {
    pub fn residual_within_bound(&self) -> bool {
        match self.residual.degree() {
            None => true,
            Some(d) => (d as i64) <= self.residual_degree_bound,
        }
    }
}

fn binomial(m: usize, i: usize) -> BigInt {
    (0..i).fold(BigInt::from(1), |acc, j| acc * (m - j) / (j + 1))
}

/// Splits `P(H, k)` into the terms forced by the shortest cycles. Requires a
/// connected, linear, uniform hypergraph with a cycle.
pub fn girth_expansion(h: &Hypergraph, cache: &mut ChromaticCache) -> Result<GirthExpansion> {
    let class = h.classify();
    let r = class.uniform_rank.ok_or(Error::NonUniform)?;
    if !class.linear {
        return Err(Error::HypothesisUnmet("hypergraph is not linear".into()));
    }
    if !h.is_connected() {
        return Err(Error::HypothesisUnmet("hypergraph is not connected".into()));
    }
    let census = h.shortest_cycle_census()?;
    let (n, m, z, t) = (h.n(), h.m(), census.length, census.count);
    let exponent = |i: usize| -> Result<usize> {
        let e = n as i64 - (i * (r - 1)) as i64;
        usize::try_from(e)
            .map_err(|_| Error::HypothesisUnmet(format!("negative exponent at i = {i}")))
    };
    let mut binomial_part = IntPoly::zero();
    for i in 0..z {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let term = IntPoly::monomial(binomial(m, i) * sign, exponent(i)?);
        binomial_part = &binomial_part + &term;
    }
    let sign = if z % 2 == 0 { 1 } else { -1 };
    let cycle_term = IntPoly::monomial(BigInt::from(t) * sign, exponent(z)? + 1);
    let p = chromatic_dc(h, cache)?;
    let residual = &(&p - &binomial_part) - &cycle_term;
    Ok(GirthExpansion {
        n,
        m,
        r,
        z,
        t,
        binomial_part,
        cycle_term,
        residual,
        residual_degree_bound: n as i64 - (z * (r - 1)) as i64,
    })
}

/// `delta(k) = (k^{n_e-1} - 1) P(H - e, k) - k^{n_e-1} P(H, k)`. The strict
/// inequality `P(H-e) < k^{n_e-1} / (k^{n_e-1} - 1) P(H)` at `k` is exactly
/// `delta(k) < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Deficit {
    pub edge: usize,
    pub edge_size: usize,
    pub delta: IntPoly,
    pub threshold: Threshold,
}

pub fn even_cycle_deficit(h: &Hypergraph, e: usize, cache: &mut ChromaticCache) -> Result<Deficit> {
    let ne = h.edge(e)?.len();
    if ne < 2 {
        return Err(Error::DegenerateEdge(e));
    }
    let a = IntPoly::monomial(1, ne - 1);
    let p = chromatic_dc(h, cache)?;
    let p_del = chromatic_dc(&h.delete_edge(e)?, cache)?;
    let delta = &(&(&a - &IntPoly::one()) * &p_del) - &(&a * &p);
    let threshold = delta.threshold();
    Ok(Deficit {
        edge: e,
        edge_size: ne,
        delta,
        threshold,
    })
}

/// Checks `P(H-e) - a/(a-1) P(H) = (a P(H/e) - P(H-e)) / (a-1)` with
/// `a = k^{n_e-1}`, by cross-multiplication.
pub fn deficit_identity_holds(
    h: &Hypergraph,
    e: usize,
    cache: &mut ChromaticCache,
) -> Result<bool> {
    let ne = h.edge(e)?.len();
    let a = IntPoly::monomial(1, ne.saturating_sub(1));
    let p = chromatic_dc(h, cache)?;
    let p_del = chromatic_dc(&h.delete_edge(e)?, cache)?;
    let p_con = chromatic_dc(&h.contract_edge(e)?, cache)?;
    let a1 = &a - &IntPoly::one();
    // left side over (a-1): (a-1) P(H-e) - a P(H)
    let left = &(&a1 * &p_del) - &(&a * &p);
    let right = &(&a * &p_con) - &p_del;
    Ok(left == right)
}

/// The edge sets `S ⊆ E - e` whose spanning subhypergraph puts `v1` and `v2`
/// in one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectingFamily {
    pub edge: usize,
    pub anchor_pair: (VertexId, VertexId),
    pub member_sets: Vec<Vec<usize>>,
    pub min_size: Option<usize>,
    pub girth_of_edge: Girth,
    /// Whether `min_size = ℓ(e) - 1` (both sides absent also counts).
    pub min_matches_girth: bool,
}

/// Connected components of `edges[S]` as masks, plus the covered set.
fn components(edges: &[Mask], subset: u64) -> (Vec<Mask>, Mask) {
    let mut comps: Vec<Mask> = Vec::new();
    let mut covered = 0;
    let mut bits = subset;
    while bits != 0 {
        let e = edges[bits.trailing_zeros() as usize];
        bits &= bits - 1;
        covered |= e;
        let mut merged = e;
        comps.retain(|&c| {
            if c & merged != 0 {
                merged |= c;
                false
            } else {
                true
            }
        });
        comps.push(merged);
    }
    (comps, covered)
}

struct Anchored {
    others: Vec<usize>,
    masks: Vec<Mask>,
    pair: Mask,
}

fn anchored(
    h: &Hypergraph,
    e: usize,
    v1: VertexId,
    v2: VertexId,
    budget: usize,
) -> Result<Anchored> {
    let edge = h.edge(e)?;
    if v1 == v2 || edge.binary_search(&v1).is_err() || edge.binary_search(&v2).is_err() {
        return Err(Error::InvalidParameters(format!(
            "anchor pair ({v1}, {v2}) must be two distinct vertices of edge {e}"
        )));
    }
    if h.m() - 1 > budget.min(62) {
        return Err(Error::budget("subset", h.m() - 1, budget as u64));
    }
    let (_, all) = to_masks(h)?;
    let others: Vec<usize> = (0..h.m()).filter(|&i| i != e).collect();
    let masks = others.iter().map(|&i| all[i]).collect();
    let pair = (1 << h.index_of(v1).unwrap()) | (1 << h.index_of(v2).unwrap());
    Ok(Anchored {
        others,
        masks,
        pair,
    })
}

fn connects(masks: &[Mask], pair: Mask, s: u64) -> bool {
    components(masks, s).0.iter().any(|&c| c & pair == pair)
}

pub fn connecting_family(
    h: &Hypergraph,
    e: usize,
    v1: VertexId,
    v2: VertexId,
    budget: usize,
) -> Result<ConnectingFamily> {
    let a = anchored(h, e, v1, v2, budget)?;
    let mut member_sets: Vec<Vec<usize>> = (0..1u64 << a.masks.len())
        .filter(|&s| connects(&a.masks, a.pair, s))
        .map(|s| {
            (0..a.masks.len())
                .filter(|&i| s >> i & 1 == 1)
                .map(|i| a.others[i])
                .collect()
        })
        .collect();
    member_sets.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    let min_size = member_sets.first().map(Vec::len);
    let (girth_of_edge, _) = h.girth_of_edge(e)?;
    let min_matches_girth = match (min_size, girth_of_edge) {
        (Some(s), Girth::Finite(l)) => s + 1 == l,
        (None, Girth::Infinite) => true,
        _ => false,
    };
    Ok(ConnectingFamily {
        edge: e,
        anchor_pair: (v1, v2),
        member_sets,
        min_size,
        girth_of_edge,
        min_matches_girth,
    })
}

/// How `n(S)` and `c(S)` are read in the connecting-family sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// Both on the vertices covered by `S`.
    Covered,
    /// Both on the spanning subhypergraph `(V, S)`.
    Spanning,
    /// `n(S)` covered, `c(S)` spanning.
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConventionCheck {
    pub convention: Convention,
    pub rhs: IntPoly,
    pub equal: bool,
    pub leading_terms_agree: bool,
    /// `lhs - rhs`.
    pub discrepancy: IntPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma9Audit {
    pub edge: usize,
    pub anchor_pair: (VertexId, VertexId),
    pub family_size: usize,
    /// `k^{n_e-1} P(H/e, k) - P(H-e, k)`.
    pub lhs: IntPoly,
    pub checks: Vec<ConventionCheck>,
}

/// Compares `k^{n_e-1} P(H/e) - P(H-e)` with the signed sum over the
/// connecting family under each reading of `n(S)`, `c(S)`. Reports; never
/// asserts.
pub fn lemma9_audit(
    h: &Hypergraph,
    e: usize,
    v1: VertexId,
    v2: VertexId,
    budget: usize,
    cache: &mut ChromaticCache,
) -> Result<Lemma9Audit> {
    let a = anchored(h, e, v1, v2, budget)?;
    let ne = h.edge(e)?.len();
    let lhs = &IntPoly::monomial(1, ne - 1) * &chromatic_dc(&h.contract_edge(e)?, cache)?
        - chromatic_dc(&h.delete_edge(e)?, cache)?;
    let n = h.n();
    let keep = |s: u64| connects(&a.masks, a.pair, s);
    let family_size = (0..1u64 << a.masks.len()).filter(|&s| keep(s)).count();
    let checks = [Convention::Covered, Convention::Spanning, Convention::Mixed]
        .into_iter()
        .map(|convention| {
            let exponent = |s: u64| {
                let (comps, covered) = components(&a.masks, s);
                let n_cov = covered.count_ones() as usize;
                let c_cov = comps.len();
                let c_span = c_cov + n - n_cov;
                match convention {
                    Convention::Covered => n - n_cov + c_cov,
                    Convention::Spanning => c_span,
                    Convention::Mixed => n - n_cov + c_span,
                }
            };
            let rhs = subset_sum(2 * n, &a.masks, keep, exponent);
            let discrepancy = &lhs - &rhs;
            ConventionCheck {
                convention,
                equal: discrepancy.is_zero(),
                leading_terms_agree: lhs.leading_term() == rhs.leading_term(),
                rhs,
                discrepancy,
            }
        })
        .collect();
    Ok(Lemma9Audit {
        edge: e,
        anchor_pair: (v1, v2),
        family_size,
        lhs,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Sign;

    fn hg(edges: &[&[VertexId]]) -> Hypergraph {
        Hypergraph::from_edges(edges.iter().map(|e| e.to_vec())).unwrap()
    }

    fn c4() -> Hypergraph {
        hg(&[&[1, 2], &[2, 3], &[3, 4], &[4, 1]])
    }

    fn k3() -> Hypergraph {
        hg(&[&[1, 2], &[2, 3], &[1, 3]])
    }

    #[test]
    fn girth_expansion_residuals_vanish_on_cycles() {
        let mut cache = ChromaticCache::new();
        for h in [
            c4(),
            hg(&[&[1, 2, 3], &[3, 4, 5], &[5, 6, 1]]),
            hg(&[&[1, 2, 3], &[3, 4, 5], &[5, 6, 7], &[7, 8, 1]]),
        ] {
            let x = girth_expansion(&h, &mut cache).unwrap();
            assert!(x.residual.is_zero(), "{}", h.describe());
            assert_eq!(x.t, 1);
            assert!(x.residual_within_bound());
        }
    }

    #[test]
    fn girth_expansion_rejects_trees_and_mixed_ranks() {
        let mut cache = ChromaticCache::new();
        assert_eq!(
            girth_expansion(&hg(&[&[1, 2, 3], &[3, 4, 5]]), &mut cache),
            Err(Error::Acyclic)
        );
        assert_eq!(
            girth_expansion(&hg(&[&[1, 2, 3], &[1, 2]]), &mut cache),
            Err(Error::NonUniform)
        );
    }

    #[test]
    fn deficit_examples() {
        let mut cache = ChromaticCache::new();
        let d = even_cycle_deficit(&c4(), 0, &mut cache).unwrap();
        assert_eq!(d.delta, IntPoly::from_i64(&[0, 1, -1]));
        assert_eq!(d.threshold.sign, Sign::Negative);
        assert_eq!(d.threshold.n, Some(2.into()));
        let d = even_cycle_deficit(&k3(), 0, &mut cache).unwrap();
        assert_eq!(d.delta, IntPoly::from_i64(&[0, -1, 1]));
        assert_eq!(d.threshold.sign, Sign::Positive);
        let mixed = hg(&[&[1, 2, 3], &[1, 2]]);
        let d = even_cycle_deficit(&mixed, 0, &mut cache).unwrap();
        assert_eq!(d.delta, IntPoly::from_i64(&[0, 0, 1, -1]));
    }

    #[test]
    fn deficit_identity_on_small_instances() {
        let mut cache = ChromaticCache::new();
        for h in [
            c4(),
            k3(),
            hg(&[&[1, 2, 3], &[1, 2]]),
            hg(&[&[1, 2, 3], &[2, 3, 4]]),
        ] {
            for e in 0..h.m() {
                assert!(deficit_identity_holds(&h, e, &mut cache).unwrap());
            }
        }
    }

    #[test]
    fn connecting_family_examples() {
        let f = connecting_family(&k3(), 0, 1, 2, 20).unwrap();
        assert_eq!(f.member_sets, vec![vec![1, 2]]);
        let f = connecting_family(&c4(), 0, 1, 2, 20).unwrap();
        assert_eq!(f.member_sets, vec![vec![1, 2, 3]]);
        assert_eq!(f.min_size, Some(3));
        assert!(f.min_matches_girth);
        let tree = hg(&[&[1, 2, 3], &[3, 4, 5]]);
        let f = connecting_family(&tree, 0, 1, 2, 20).unwrap();
        assert!(f.member_sets.is_empty());
        assert!(f.min_matches_girth);
        assert!(connecting_family(&tree, 0, 1, 4, 20).is_err());
    }

    #[test]
    fn lemma9_on_the_triangle() {
        let mut cache = ChromaticCache::new();
        let audit = lemma9_audit(&k3(), 0, 1, 2, 20, &mut cache).unwrap();
        assert_eq!(audit.lhs, IntPoly::from_i64(&[0, -1, 1]));
        let covered = &audit.checks[0];
        assert_eq!(covered.rhs, IntPoly::k());
        assert!(!covered.equal);
        assert!(!covered.leading_terms_agree);
        // the two full readings give identical exponents
        assert_eq!(audit.checks[0].rhs, audit.checks[1].rhs);
    }

    #[test]
    fn lemma9_with_empty_family() {
        let mut cache = ChromaticCache::new();
        let tree = hg(&[&[1, 2, 3], &[3, 4, 5]]);
        let audit = lemma9_audit(&tree, 0, 1, 2, 20, &mut cache).unwrap();
        assert_eq!(audit.family_size, 0);
        assert!(audit.checks.iter().all(|c| c.rhs.is_zero()));
        assert_eq!(audit.checks[0].equal, audit.lhs.is_zero());
    }
}
