//! Exhaustive and heuristic minimization of F-coloring counts over perfect
//! covers in normal form.
//!
//! # Gauge fixing
//!
//! A vertex recoloring `g_v` changes column `π_{e,v}` to `g_v π_{e,v}`, and
//! reordering the rows of `F_e` multiplies every column of that edge on the
//! right by a common permutation. Process the edges in breadth-first order
//! and give each vertex its gauge at the first edge containing it. For an
//! edge whose previously seen vertices are `O`, row reordering makes the
//! column at `min O` the identity and the new vertices' gauges make their
//! columns the identity, so only the columns at `O \ {min O}` stay free.
//! Hypertrees therefore have no free columns at all.
//!
//! Conjugating every column of a connected component by the same `g` keeps
//! the identities and the count, so the first free column of a component
//! only needs one permutation per cycle type.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::count::{check_assignment_budget, positions, Kernel};
use super::spec::{identity, PermCoverSpec};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Default cap on the number of covers a search may examine.
pub const DEFAULT_COVER_BUDGET: u64 = 2_000_000;
const MAX_PERMUTATION_K: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub covers: u64,
    pub assignments: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            covers: DEFAULT_COVER_BUDGET,
            assignments: crate::chromatic::DEFAULT_ASSIGNMENT_BUDGET,
        }
    }
}

/// A free column: position `pos` of edge `edge`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Slot {
    pub edge: usize,
    pub pos: usize,
    /// Ranges over cycle-type representatives only.
    pub representatives_only: bool,
}

/// The free columns left after gauge fixing, in processing order.
pub fn gauge_fixed_slots(h: &Hypergraph) -> Vec<Slot> {
    let inc = h.incidence();
    let mut seen_vertex = vec![false; h.n()];
    let mut done = vec![false; h.m()];
    let mut slots = Vec::new();
    for start in 0..h.m() {
        if done[start] {
            continue;
        }
        let mut component_has_slot = false;
        let mut queue = std::collections::VecDeque::from([start]);
        done[start] = true;
        while let Some(e) = queue.pop_front() {
            let pos = positions(h, e);
            let old: Vec<usize> = (0..pos.len()).filter(|&i| seen_vertex[pos[i]]).collect();
            for &i in old.iter().skip(1) {
                slots.push(Slot {
                    edge: e,
                    pos: i,
                    representatives_only: !component_has_slot,
                });
                component_has_slot = true;
            }
            for &p in &pos {
                seen_vertex[p] = true;
            }
            let next: BTreeSet<usize> = pos
                .iter()
                .flat_map(|&p| inc[p].iter().copied())
                .filter(|&f| !done[f])
                .collect();
            for f in next {
                done[f] = true;
                queue.push_back(f);
            }
        }
    }
    slots
}

/// Every non-anchor column, with no symmetry reduction.
pub fn all_slots(h: &Hypergraph) -> Vec<Slot> {
    h.edges()
        .iter()
        .enumerate()
        .flat_map(|(e, edge)| {
            (1..edge.len()).map(move |pos| Slot {
                edge: e,
                pos,
                representatives_only: false,
            })
        })
        .collect()
}

/// All permutations of `1..=k` in lexicographic order.
pub fn permutations(k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = identity(k);
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..current.len())
            .rev()
            .find(|&i| current[i - 1] < current[i])
        else {
            break;
        };
        let j = (i..current.len())
            .rev()
            .find(|&j| current[j] > current[i - 1])
            .unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

fn cycle_type(perm: &[u32]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut lengths = Vec::new();
    for s in 0..perm.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x] as usize - 1;
            len += 1;
        }
        if len > 0 {
            lengths.push(len);
        }
    }
    lengths.sort_unstable();
    lengths
}

/// The lexicographically first permutation of each cycle type.
pub fn conjugacy_representatives(k: u32) -> Vec<Vec<u32>> {
    let mut types = BTreeSet::new();
    permutations(k)
        .into_iter()
        .filter(|p| types.insert(cycle_type(p)))
        .collect()
}

/// Radix-indexed family of specs: slot `i` takes one of `choices[i]`.
struct Family<'a> {
    h: &'a Hypergraph,
    k: u32,
    slots: Vec<Slot>,
    choices: Vec<&'a [Vec<u32>]>,
    base: PermCoverSpec,
}

impl Family<'_> {
    fn size(&self) -> Option<u64> {
        self.choices
            .iter()
            .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
    }

    fn spec(&self, mut index: u64) -> PermCoverSpec {
        let mut spec = self.base.clone();
        // the last slot varies fastest, so index order is lexicographic
        for (slot, choices) in self.slots.iter().zip(&self.choices).rev() {
            let r = choices.len() as u64;
            spec.edges[slot.edge].columns[slot.pos] = choices[(index % r) as usize].clone();
            index /= r;
        }
        spec
    }

    fn count(&self, spec: &PermCoverSpec) -> u64 {
        count_spec(self.h, self.k, spec)
    }
}

/// F-colorings of the cover described by a (validated) spec.
pub(crate) fn count_spec(h: &Hypergraph, k: u32, spec: &PermCoverSpec) -> u64 {
    let mut kernel = Kernel::new(h.n(), k);
    for (e, perms) in spec.edges.iter().enumerate() {
        let rows: Vec<Vec<u32>> = (0..k as usize)
            .map(|i| perms.columns.iter().map(|c| c[i]).collect())
            .collect();
        kernel.forbid(&positions(h, e), &rows);
    }
    kernel.count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DpExact {
    pub k: u32,
    pub value: u64,
    pub witness: PermCoverSpec,
    pub covers_examined: u64,
    pub free_slots: usize,
    pub pruned: bool,
}

/// Minimum over `indices` of `(count, index)`.
fn minimize(family: &Family<'_>, indices: impl ParallelIterator<Item = u64>) -> (u64, u64) {
    indices
        .map(|i| (family.count(&family.spec(i)), i))
        .min()
        .expect("family is nonempty")
}

/// `P_DP(H, k)` by exhaustive search over normal-form perfect covers,
/// optionally with gauge fixing.
pub fn dp_exact(h: &Hypergraph, k: u32, prune: bool, budget: SearchBudget) -> Result<DpExact> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be positive".into()));
    }
    check_assignment_budget(h.n(), k, budget.assignments)?;
    let slots = if prune {
        gauge_fixed_slots(h)
    } else {
        all_slots(h)
    };
    let needed = || format!("{}!^{}", k, slots.len());
    // listing k! permutations is itself the bottleneck past this point
    if !slots.is_empty() && k > MAX_PERMUTATION_K {
        return Err(Error::budget("cover", needed(), budget.covers));
    }
    let perms = if slots.is_empty() {
        Vec::new()
    } else {
        permutations(k)
    };
    let reps = if slots.is_empty() {
        Vec::new()
    } else {
        conjugacy_representatives(k)
    };
    let choices = slots
        .iter()
        .map(|s| {
            if s.representatives_only {
                reps.as_slice()
            } else {
                perms.as_slice()
            }
        })
        .collect();
    let family = Family {
        h,
        k,
        slots: slots.clone(),
        choices,
        base: PermCoverSpec::natural(h, k),
    };
    let total = family
        .size()
        .filter(|&t| t <= budget.covers)
        .ok_or_else(|| {
            Error::budget(
                "cover",
                family.size().map_or_else(needed, |t| t.to_string()),
                budget.covers,
            )
        })?;
    let (value, index) = minimize(&family, (0..total).into_par_iter());
    Ok(DpExact {
        k,
        value,
        witness: family.spec(index),
        covers_examined: total,
        free_slots: slots.len(),
        pruned: prune,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "strategy", rename_all = "kebab-case")]
pub enum UpperStrategy {
    /// Cyclic shifts on the free columns; index 0 is the natural cover.
    Shifts,
    /// Uniformly random permutations on the free columns, plus the natural
    /// cover. Sample `i` uses stream `i` of a ChaCha8 generator.
    RandomPerms { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpperSearch {
    pub k: u32,
    pub bound: u64,
    pub witness: PermCoverSpec,
    pub covers_examined: u64,
    /// Whether the whole strategy family was examined.
    pub exhaustive: bool,
}

fn shift_column(k: u32, s: u32) -> Vec<u32> {
    (0..k).map(|i| (i + s) % k + 1).collect()
}

/// Smallest count found within a cover family. Always includes the natural
/// cover, so the bound never exceeds `P(H, k)`.
pub fn dp_upper_search(
    h: &Hypergraph,
    k: u32,
    strategy: UpperStrategy,
    budget: SearchBudget,
) -> Result<UpperSearch> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be positive".into()));
    }
    check_assignment_budget(h.n(), k, budget.assignments)?;
    let slots = gauge_fixed_slots(h);
    let base = PermCoverSpec::natural(h, k);
    match strategy {
        UpperStrategy::Shifts => {
            let shifts: Vec<Vec<u32>> = (0..k).map(|s| shift_column(k, s)).collect();
            let family = Family {
                h,
                k,
                slots: slots.clone(),
                choices: vec![shifts.as_slice(); slots.len()],
                base,
            };
            let full = family.size();
            let total = full.map_or(budget.covers, |t| t.min(budget.covers)).max(1);
            let (bound, index) = minimize(&family, (0..total).into_par_iter());
            Ok(UpperSearch {
                k,
                bound,
                witness: family.spec(index),
                covers_examined: total,
                exhaustive: full == Some(total),
            })
        }
        UpperStrategy::RandomPerms { samples, seed } => {
            let total = samples.clamp(1, budget.covers.max(1));
            let (bound, spec) = (0..total)
                .into_par_iter()
                .map(|i| {
                    let mut spec = base.clone();
                    if i > 0 {
                        let mut rng = ChaCha8Rng::seed_from_u64(seed);
                        rng.set_stream(i);
                        for s in &slots {
                            let mut col = identity(k);
                            col.shuffle(&mut rng);
                            spec.edges[s.edge].columns[s.pos] = col;
                        }
                    }
                    (count_spec(h, k, &spec), spec)
                })
                .min()
                .expect("at least one sample");
            Ok(UpperSearch {
                k,
                bound,
                witness: spec,
                covers_examined: total,
                exhaustive: slots.is_empty(),
            })
        }
    }
}

/// Minimum count over covers that are natural off `e` and arbitrary perfect
/// on `e`: the covers whose restriction to `H - e` colors like `H - e`.
pub fn natural_off_edge_min(
    h: &Hypergraph,
    e: usize,
    k: u32,
    budget: SearchBudget,
) -> Result<DpExact> {
    let arity = h.edge(e)?.len();
    check_assignment_budget(h.n(), k, budget.assignments)?;
    if k > MAX_PERMUTATION_K {
        return Err(Error::budget(
            "cover",
            format!("{k}!^{}", arity - 1),
            budget.covers,
        ));
    }
    let slots: Vec<Slot> = (1..arity)
        .map(|pos| Slot {
            edge: e,
            pos,
            representatives_only: false,
        })
        .collect();
    let perms = permutations(k);
    let family = Family {
        h,
        k,
        slots: slots.clone(),
        choices: vec![perms.as_slice(); slots.len()],
        base: PermCoverSpec::natural(h, k),
    };
    let total = family
        .size()
        .filter(|&t| t <= budget.covers)
        .ok_or_else(|| Error::budget("cover", format!("{k}!^{}", arity - 1), budget.covers))?;
    let (value, index) = minimize(&family, (0..total).into_par_iter());
    Ok(DpExact {
        k,
        value,
        witness: family.spec(index),
        covers_examined: total,
        free_slots: slots.len(),
        pruned: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::count::count_colorings_brute;

    fn hg<const N: usize>(edges: &[[u32; N]]) -> Hypergraph {
        Hypergraph::from_edges(edges.iter().copied()).unwrap()
    }

    fn c4() -> Hypergraph {
        hg(&[[1, 2], [2, 3], [3, 4], [1, 4]])
    }

    #[test]
    fn permutation_listing() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![1, 3, 2]);
        assert_eq!(conjugacy_representatives(3).len(), 3);
        assert_eq!(conjugacy_representatives(4).len(), 5);
    }

    #[test]
    fn hypertrees_have_no_free_columns() {
        assert!(gauge_fixed_slots(&hg(&[[1, 2, 3], [3, 4, 5]])).is_empty());
        assert_eq!(gauge_fixed_slots(&c4()).len(), 1);
    }

    #[test]
    fn four_cycle_values() {
        let b = SearchBudget::default();
        let r = dp_exact(&c4(), 3, true, b).unwrap();
        assert_eq!(r.value, 15);
        let cover = r.witness.expand(&c4()).unwrap();
        assert_eq!(cover.validate(&c4()), Ok(()));
        assert_eq!(count_colorings_brute(&c4(), &cover, 1000).unwrap(), 15);
        assert_eq!(dp_exact(&c4(), 2, true, b).unwrap().value, 0);
        assert_eq!(dp_exact(&c4(), 3, false, b).unwrap().value, 15);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let b = SearchBudget {
            covers: 10,
            assignments: 1000,
        };
        assert!(matches!(
            dp_exact(&c4(), 3, false, b),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn upper_search_includes_natural() {
        let h = hg(&[[1, 2, 3], [3, 4, 5], [5, 6, 7], [7, 8, 1]]);
        let b = SearchBudget::default();
        let s = dp_upper_search(&h, 2, UpperStrategy::Shifts, b).unwrap();
        assert!(s.bound <= 81);
        assert!(s.exhaustive);
        let r = dp_upper_search(
            &h,
            2,
            UpperStrategy::RandomPerms {
                samples: 1,
                seed: 7,
            },
            b,
        )
        .unwrap();
        assert_eq!(r.bound, 82);
    }

    #[test]
    fn natural_off_edge_family() {
        let r = natural_off_edge_min(&c4(), 0, 3, SearchBudget::default()).unwrap();
        assert_eq!(r.value, 15);
        assert_eq!(r.covers_examined, 6);
    }
}
