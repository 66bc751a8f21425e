mod common;

use common::{brute_chromatic, hypergraph};
use hyperchroma::chromatic::{
    chromatic_brute_count, chromatic_dc, chromatic_polynomial, chromatic_subset_expansion,
    even_cycle_deficit, girth_expansion, ChromaticCache,
};
use hyperchroma::hypergraph::Girth;
use hyperchroma::instance::{cycle, hypertree};
use hyperchroma::{Hypergraph, IntPoly, VertexId};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Shortest cycle through edge `e` by exhaustive path search: a cycle is a
/// path `v_1 .. v_p` over distinct edges and vertices, closed by `e`.
fn brute_ell(h: &Hypergraph, e: usize) -> Option<usize> {
    fn extend(
        h: &Hypergraph,
        at: VertexId,
        target: VertexId,
        used_e: &mut Vec<usize>,
        used_v: &mut Vec<VertexId>,
        best: &mut Option<usize>,
    ) {
        for (i, edge) in h.edges().iter().enumerate() {
            if used_e.contains(&i) || !edge.contains(&at) {
                continue;
            }
            for &next in edge {
                if next == at {
                    continue;
                }
                if next == target {
                    let len = used_e.len() + 1;
                    if best.is_none_or(|b| len < b) {
                        *best = Some(len);
                    }
                } else if !used_v.contains(&next) {
                    used_e.push(i);
                    used_v.push(next);
                    extend(h, next, target, used_e, used_v, best);
                    used_v.pop();
                    used_e.pop();
                }
            }
        }
    }
    let edge = &h.edges()[e];
    let mut best = None;
    for &a in edge {
        for &b in edge {
            if a != b {
                extend(h, a, b, &mut vec![e], &mut vec![a, b], &mut best);
            }
        }
    }
    best
}

/// `col(H)` by trying every vertex ordering.
fn brute_coloring_number(h: &Hypergraph) -> usize {
    fn perms(items: &[usize]) -> Vec<Vec<usize>> {
        if items.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for (i, &x) in items.iter().enumerate() {
            let mut rest = items.to_vec();
            rest.remove(i);
            for mut p in perms(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }
    let adj = h.two_section();
    perms(&(0..h.n()).collect::<Vec<_>>())
        .iter()
        .map(|order| {
            (0..order.len())
                .map(|i| {
                    order[..i]
                        .iter()
                        .filter(|&&u| adj[order[i]].contains(&u))
                        .count()
                })
                .max()
                .unwrap_or(0)
                + 1
        })
        .min()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn engines_agree(h in hypergraph(7, 6)) {
        let dc = chromatic_polynomial(&h).unwrap();
        let subset = chromatic_subset_expansion(&h, 20).unwrap();
        prop_assert_eq!(&dc, &subset);
        for k in 1..=3u32 {
            let expected = brute_chromatic(&h, k);
            prop_assert_eq!(dc.eval_i64(k as i64), BigInt::from(expected));
            prop_assert_eq!(chromatic_brute_count(&h, k, 1 << 24).unwrap(), expected);
        }
    }

    #[test]
    fn deletion_contraction_on_every_edge(h in hypergraph(6, 5)) {
        let mut cache = ChromaticCache::new();
        let p = chromatic_dc(&h, &mut cache).unwrap();
        for e in 0..h.m() {
            let del = chromatic_dc(&h.delete_edge(e).unwrap(), &mut cache).unwrap();
            let con = chromatic_dc(&h.contract_edge(e).unwrap(), &mut cache).unwrap();
            prop_assert_eq!(&p, &(&del - &con));
        }
    }

    #[test]
    fn chromatic_polynomial_shape(h in hypergraph(7, 6)) {
        let p = chromatic_polynomial(&h).unwrap();
        prop_assert_eq!(p.degree(), Some(h.n()));
        prop_assert_eq!(p.leading(), Some(&BigInt::from(1)));
        prop_assert_eq!(p.coeff(0), BigInt::from(0));
    }

    #[test]
    fn join_identity(h in hypergraph(5, 4), p in 1usize..=3) {
        let join = chromatic_polynomial(&h.join_clique(p).unwrap()).unwrap();
        let expected = &IntPoly::falling_factorial(p as u32)
            * &chromatic_polynomial(&h).unwrap().substitute_shift(-(p as i64));
        prop_assert_eq!(join, expected);
    }

    #[test]
    fn girth_of_edge_matches_path_search(h in hypergraph(6, 5)) {
        for e in 0..h.m() {
            let (g, witness) = h.girth_of_edge(e).unwrap();
            prop_assert_eq!(g.finite(), brute_ell(&h, e));
            if let Some(w) = witness {
                prop_assert!(w.is_valid_in(&h));
                prop_assert!(w.edges.contains(&e));
                prop_assert_eq!(Girth::Finite(w.len()), g);
            }
        }
        let brute_girth = (0..h.m()).filter_map(|e| brute_ell(&h, e)).min();
        prop_assert_eq!(h.girth().finite(), brute_girth);
    }

    #[test]
    fn coloring_number_matches_orderings(h in hypergraph(6, 5)) {
        prop_assert_eq!(h.coloring_number(), brute_coloring_number(&h));
    }

    #[test]
    fn deficit_definition(h in hypergraph(6, 5)) {
        let mut cache = ChromaticCache::new();
        for e in 0..h.m() {
            let d = even_cycle_deficit(&h, e, &mut cache).unwrap();
            let ne = h.edges()[e].len() as u32;
            let p = chromatic_dc(&h, &mut cache).unwrap();
            let pd = chromatic_dc(&h.delete_edge(e).unwrap(), &mut cache).unwrap();
            for k in 2..=5i64 {
                let a = BigInt::from(k).pow(ne - 1);
                let expected = (&a - 1) * pd.eval_i64(k) - &a * p.eval_i64(k);
                prop_assert_eq!(d.delta.eval_i64(k), expected);
            }
        }
    }
}

#[test]
fn hypertree_closed_form() {
    // a hypertree is built edge by edge, each new edge sharing one vertex:
    // P = k (k^{r-1} - 1)^m
    for r in 2..=4 {
        for m in 1..=3 {
            for seed in 0..3 {
                let h = hypertree(r, m, seed).unwrap();
                let p = chromatic_polynomial(&h).unwrap();
                let expected =
                    &IntPoly::k() * &(&IntPoly::monomial(1, r - 1) - &IntPoly::one()).pow(m as u32);
                assert_eq!(p, expected, "r={r} m={m} seed={seed}");
            }
        }
    }
}

#[test]
fn linear_cycle_polynomial() {
    let h = cycle(3, 4).unwrap();
    let p = chromatic_polynomial(&h).unwrap();
    assert_eq!(p, IntPoly::from_i64(&[0, 1, -4, 0, 6, 0, -4, 0, 1]));
    let g = girth_expansion(&h, &mut ChromaticCache::new()).unwrap();
    assert_eq!((g.z, g.t), (4, 1));
    assert!(g.residual.is_zero());
}

#[test]
fn census_counts_graph_cycles() {
    // K4 has four triangles
    let k4 = Hypergraph::from_edges([[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]).unwrap();
    let c = k4.shortest_cycle_census().unwrap();
    assert_eq!((c.length, c.count), (3, 4));
    // two triangles sharing an edge, plus the outer 4-cycle
    let kite = Hypergraph::from_edges([[0, 1], [1, 2], [0, 2], [1, 3], [2, 3]]).unwrap();
    let c = kite.shortest_cycle_census().unwrap();
    assert_eq!((c.length, c.count), (3, 2));
    for s in &c.edge_sets {
        assert_eq!(s.len(), 3);
    }
}

#[test]
fn cache_is_reused_across_calls() {
    let mut cache = ChromaticCache::new();
    let h = cycle(2, 6).unwrap();
    let first = chromatic_dc(&h, &mut cache).unwrap();
    let misses = cache.misses();
    assert_eq!(chromatic_dc(&h, &mut cache).unwrap(), first);
    assert_eq!(cache.misses(), misses);
    assert!(cache.hits() > 0);
}
