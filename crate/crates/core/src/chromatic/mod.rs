//! Chromatic polynomials by deletion–contraction and by the subset
//! expansion, a brute-force coloring counter, and the structural expansions
//! built on top of them.

mod dc;
mod expansions;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::poly::IntPoly;

pub use dc::{ChromaticCache, ComponentKey};
pub use expansions::{
    connecting_family, deficit_identity_holds, even_cycle_deficit, girth_expansion, lemma9_audit,
    ConnectingFamily, Convention, ConventionCheck, Deficit, GirthExpansion, Lemma9Audit,
};

pub(crate) use dc::Mask;

/// Default cap on `m` for the `2^m`-term subset expansion.
pub const DEFAULT_SUBSET_BUDGET: usize = 20;
/// Default cap on the number of assignments a brute-force count may visit.
pub const DEFAULT_ASSIGNMENT_BUDGET: u64 = 100_000_000;

/// Vertex set and edges as bitmasks over vertex positions.
pub(crate) fn to_masks(h: &Hypergraph) -> Result<(Mask, Vec<Mask>)> {
    if h.n() > Mask::BITS as usize {
        return Err(Error::TooManyVertices(h.n()));
    }
    let alive = if h.n() == Mask::BITS as usize {
        !0
    } else {
        (1 << h.n()) - 1
    };
    let edges = h
        .edges()
        .iter()
        .map(|e| {
            e.iter()
                .fold(0 as Mask, |m, &v| m | 1 << h.index_of(v).unwrap())
        })
        .collect();
    Ok((alive, edges))
}

/// `P(H, k)` by memoized deletion–contraction.
pub fn chromatic_dc(h: &Hypergraph, cache: &mut ChromaticCache) -> Result<IntPoly> {
    if h.is_degenerate() {
        return Ok(IntPoly::zero());
    }
    let (alive, edges) = to_masks(h)?;
    Ok(cache.polynomial(alive, edges))
}

/// `P(H, k)` with a throwaway cache.
pub fn chromatic_polynomial(h: &Hypergraph) -> Result<IntPoly> {
    chromatic_dc(h, &mut ChromaticCache::new())
}

/// Components of the spanning subhypergraph on the edges selected by `subset`.
fn spanning_components(n: usize, edges: &[Mask], subset: u64) -> usize {
    let mut comps: Vec<Mask> = Vec::new();
    let mut covered: Mask = 0;
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
    n - covered.count_ones() as usize + comps.len()
}

/// Signed term counts per exponent of `k`, summed over every subset of
/// `edges` accepted by `keep`. The exponent is computed by `exponent`.
pub(crate) fn subset_sum<K, X>(n: usize, edges: &[Mask], keep: K, exponent: X) -> IntPoly
where
    K: Fn(u64) -> bool + Sync,
    X: Fn(u64) -> usize + Sync,
{
    let m = edges.len();
    let total: u64 = 1 << m;
    let counts = (0..total)
        .into_par_iter()
        .fold(
            || vec![0i64; n + 2],
            |mut acc, s| {
                if keep(s) {
                    let sign = if s.count_ones() % 2 == 0 { 1 } else { -1 };
                    acc[exponent(s)] += sign;
                }
                acc
            },
        )
        .reduce(
            || vec![0i64; n + 2],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    IntPoly::from_coeffs(counts.into_iter().map(BigInt::from).collect())
}

/// `P(H, k) = Σ_S (-1)^{|S|} k^{n - n(S) + c(S)}` over all edge subsets,
/// with `n(S)`, `c(S)` taken on the vertices covered by `S`.
pub fn chromatic_subset_expansion(h: &Hypergraph, max_edges: usize) -> Result<IntPoly> {
    if h.m() > max_edges.min(62) {
        return Err(Error::budget("subset", h.m(), max_edges as u64));
    }
    let (_, edges) = to_masks(h)?;
    if edges.iter().any(|e| e.count_ones() < 2) {
        return Ok(IntPoly::zero());
    }
    let n = h.n();
    Ok(subset_sum(
        n,
        &edges,
        |_| true,
        |s| spanning_components(n, &edges, s),
    ))
}

/// Number of maps `V -> [k]` with no monochromatic edge, by enumeration.
pub fn chromatic_brute_count(h: &Hypergraph, k: u32, budget: u64) -> Result<u64> {
    let n = h.n();
    let total = (k as u64)
        .checked_pow(n as u32)
        .filter(|&t| t <= budget)
        .ok_or_else(|| Error::budget("assignment", format!("{k}^{n}"), budget))?;
    if k == 0 {
        return Ok(if n == 0 { 1 } else { 0 });
    }
    let edges: Vec<Vec<usize>> = h
        .edges()
        .iter()
        .map(|e| e.iter().map(|&v| h.index_of(v).unwrap()).collect())
        .collect();
    Ok(count_assignments(n, k, total, |colors| {
        edges
            .iter()
            .all(|e| e.iter().any(|&v| colors[v] != colors[e[0]]))
    }))
}

/// Counts colorings in `[0, k)^n` accepted by `proper`, in parallel chunks.
pub(crate) fn count_assignments<F>(n: usize, k: u32, total: u64, proper: F) -> u64
where
    F: Fn(&[u32]) -> bool + Sync,
{
    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut colors = vec![0u32; n];
            let mut x = start;
            for slot in colors.iter_mut() {
                *slot = (x % k as u64) as u32;
                x /= k as u64;
            }
            let mut count = 0;
            for _ in start..end {
                if proper(&colors) {
                    count += 1;
                }
                for slot in colors.iter_mut() {
                    *slot += 1;
                    if *slot < k {
                        break;
                    }
                    *slot = 0;
                }
            }
            count
        })
        .sum()
}
