//! Counting F-colorings: a pruned exhaustive search and an independent
//! inclusion–exclusion over compatible sets of partial maps.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::cover::Cover;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Default cap on inclusion–exclusion search nodes.
pub const DEFAULT_IE_BUDGET: u64 = 10_000_000;

/// Forbidden patterns over vertex positions `0..n`, colors `0..k`.
///
/// A constraint closes at its largest position; the depth-first count
/// checks it as soon as that position is colored.
#[derive(Clone, Debug)]
pub(crate) struct Kernel {
    n: usize,
    k: u32,
    /// `closing[p]`: constraints whose largest position is `p`.
    closing: Vec<Vec<Constraint>>,
}

#[derive(Clone, Debug)]
struct Constraint {
    positions: Vec<usize>,
    /// Sorted encodings `Σ c_j k^j` of the forbidden rows, colors 0-based.
    patterns: Vec<u64>,
}

impl Kernel {
    pub(crate) fn new(n: usize, k: u32) -> Self {
        Kernel {
            n,
            k,
            closing: vec![Vec::new(); n],
        }
    }

    /// Forbids each row (1-based colors aligned with `positions`).
    pub(crate) fn forbid(&mut self, positions: &[usize], rows: &[Vec<u32>]) {
        if positions.is_empty() || rows.is_empty() {
            return;
        }
        let k = self.k as u64;
        let mut patterns: Vec<u64> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .rev()
                    .fold(0u64, |acc, &c| acc * k + (c as u64 - 1))
            })
            .collect();
        patterns.sort_unstable();
        patterns.dedup();
        let last = *positions.iter().max().unwrap();
        self.closing[last].push(Constraint {
            positions: positions.to_vec(),
            patterns,
        });
    }

    pub(crate) fn from_cover(h: &Hypergraph, cover: &Cover) -> Self {
        let mut kernel = Kernel::new(h.n(), cover.k);
        for (e, rows) in cover.maps.iter().enumerate() {
            kernel.forbid(&positions(h, e), rows);
        }
        kernel
    }

    fn violates(&self, colors: &[u32], at: usize) -> bool {
        let k = self.k as u64;
        self.closing[at].iter().any(|c| {
            let code = c
                .positions
                .iter()
                .rev()
                .fold(0u64, |acc, &p| acc * k + colors[p] as u64);
            c.patterns.binary_search(&code).is_ok()
        })
    }

    fn dfs(&self, colors: &mut [u32], at: usize) -> u64 {
        if at == self.n {
            return 1;
        }
        let mut total = 0;
        for c in 0..self.k {
            colors[at] = c;
            if !self.violates(colors, at) {
                total += self.dfs(colors, at + 1);
            }
        }
        total
    }

    /// Sequential count of admissible colorings.
    pub(crate) fn count(&self) -> u64 {
        if self.n == 0 {
            return 1;
        }
        self.dfs(&mut vec![0; self.n], 0)
    }

    /// Count split over the colors of the first two positions.
    pub(crate) fn count_parallel(&self) -> u64 {
        if self.n < 2 {
            return self.count();
        }
        let k = self.k;
        (0..k * k)
            .into_par_iter()
            .map(|x| {
                let mut colors = vec![0; self.n];
                colors[0] = x / k;
                if self.violates(&colors, 0) {
                    return 0;
                }
                colors[1] = x % k;
                if self.violates(&colors, 1) {
                    return 0;
                }
                self.dfs(&mut colors, 2)
            })
            .sum()
    }
}

pub(crate) fn positions(h: &Hypergraph, e: usize) -> Vec<usize> {
    h.edges()[e]
        .iter()
        .map(|&v| h.index_of(v).unwrap())
        .collect()
}

pub(crate) fn check_assignment_budget(n: usize, k: u32, budget: u64) -> Result<()> {
    match (k as u64).checked_pow(n as u32) {
        Some(t) if t <= budget => Ok(()),
        _ => Err(Error::budget("assignment", format!("{k}^{n}"), budget)),
    }
}

fn check_shape(h: &Hypergraph, cover: &Cover) -> Result<()> {
    if cover.maps.len() != h.m() {
        return Err(Error::InvalidCover(format!(
            "cover has {} edge families, hypergraph has {} edges",
            cover.maps.len(),
            h.m()
        )));
    }
    for (e, rows) in cover.maps.iter().enumerate() {
        let arity = h.edges()[e].len();
        if rows
            .iter()
            .any(|r| r.len() != arity || r.iter().any(|&c| c == 0 || c > cover.k))
        {
            return Err(Error::InvalidCover(format!("edge {e} has a malformed row")));
        }
    }
    Ok(())
}

/// `P_DP(H, F)`: maps `V -> [k]` that avoid every partial map of `F`.
pub fn count_colorings_brute(h: &Hypergraph, cover: &Cover, budget: u64) -> Result<u64> {
    check_shape(h, cover)?;
    check_assignment_budget(h.n(), cover.k, budget)?;
    if cover.k == 0 {
        return Ok(u64::from(h.n() == 0));
    }
    Ok(Kernel::from_cover(h, cover).count_parallel())
}

/// The same count by inclusion–exclusion: sum over sets `A` of partial maps
/// that agree wherever their domains meet of `(-1)^{|A|} k^{n - |dom A|}`.
/// `budget` caps the number of compatible sets visited.
pub fn count_colorings_ie(h: &Hypergraph, cover: &Cover, budget: u64) -> Result<u64> {
    check_shape(h, cover)?;
    let maps: Vec<(Vec<usize>, &[u32])> = cover
        .maps
        .iter()
        .enumerate()
        .flat_map(|(e, rows)| {
            let pos = positions(h, e);
            rows.iter().map(move |r| (pos.clone(), r.as_slice()))
        })
        .collect();
    let mut terms = vec![0i64; h.n() + 1];
    let mut assigned = vec![0u32; h.n()];
    let mut visited = 0u64;
    ie_extend(
        &maps,
        0,
        &mut assigned,
        0,
        1,
        &mut terms,
        &mut visited,
        budget,
    )?;
    let k = BigInt::from(cover.k);
    let total: BigInt = terms
        .iter()
        .enumerate()
        .map(|(pinned, &c)| BigInt::from(c) * num_traits::pow(k.clone(), h.n() - pinned))
        .sum();
    total.to_u64().ok_or_else(|| {
        Error::InvalidCover(format!("inclusion-exclusion total {total} out of range"))
    })
}

#[allow(clippy::too_many_arguments)]
fn ie_extend(
    maps: &[(Vec<usize>, &[u32])],
    from: usize,
    assigned: &mut [u32],
    pinned: usize,
    sign: i64,
    terms: &mut [i64],
    visited: &mut u64,
    budget: u64,
) -> Result<()> {
    *visited += 1;
    if *visited > budget {
        return Err(Error::budget(
            "inclusion-exclusion",
            format!("> {budget}"),
            budget,
        ));
    }
    terms[pinned] += sign;
    for j in from..maps.len() {
        let (pos, colors) = &maps[j];
        let compatible = pos
            .iter()
            .zip(colors.iter())
            .all(|(&p, &c)| assigned[p] == 0 || assigned[p] == c);
        if !compatible {
            continue;
        }
        let fresh: Vec<usize> = pos.iter().copied().filter(|&p| assigned[p] == 0).collect();
        for (&p, &c) in pos.iter().zip(colors.iter()) {
            assigned[p] = c;
        }
        ie_extend(
            maps,
            j + 1,
            assigned,
            pinned + fresh.len(),
            -sign,
            terms,
            visited,
            budget,
        )?;
        for p in fresh {
            assigned[p] = 0;
        }
    }
    Ok(())
}
