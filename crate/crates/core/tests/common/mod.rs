#![allow(dead_code)]

use hyperchroma::covers::Cover;
use hyperchroma::{Hypergraph, VertexId};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Hypergraphs on `2..=max_n` vertices with up to `max_m` edges of size >= 2.
pub fn hypergraph(max_n: usize, max_m: usize) -> impl Strategy<Value = Hypergraph> {
    (2..=max_n).prop_flat_map(move |n| {
        let edge =
            proptest::sample::subsequence((0..n as VertexId).collect::<Vec<_>>(), 2..=n.min(4));
        proptest::collection::vec(edge, 0..=max_m)
            .prop_map(move |edges| Hypergraph::new(0..n as VertexId, edges).expect("valid edges"))
    })
}

/// Counts proper colorings by enumerating every map `V -> [k]`.
pub fn brute_chromatic(h: &Hypergraph, k: u32) -> u64 {
    let n = h.n();
    let mut colors = vec![0u32; n];
    let mut count = 0;
    loop {
        let proper = h.edges().iter().all(|e| {
            let first = colors[h.index_of(e[0]).unwrap()];
            e.iter().any(|&v| colors[h.index_of(v).unwrap()] != first)
        });
        if proper {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            colors[i] += 1;
            if colors[i] < k {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

/// Counts F-colorings directly from the row lists.
pub fn brute_cover_count(h: &Hypergraph, cover: &Cover) -> u64 {
    let n = h.n();
    let k = cover.k;
    let pos: Vec<Vec<usize>> = h
        .edges()
        .iter()
        .map(|e| e.iter().map(|&v| h.index_of(v).unwrap()).collect())
        .collect();
    let mut colors = vec![1u32; n];
    let mut count = 0;
    loop {
        let ok = cover.maps.iter().zip(&pos).all(|(rows, p)| {
            rows.iter()
                .all(|row| row.iter().zip(p).any(|(&c, &i)| colors[i] != c))
        });
        if ok {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            colors[i] += 1;
            if colors[i] <= k {
                break;
            }
            colors[i] = 1;
            i += 1;
        }
    }
}

/// A random `k`-fold cover: every edge gets `k` rows built from one random
/// permutation per position, and then loses up to `drop` rows.
pub fn random_cover(h: &Hypergraph, k: u32, seed: u64, drop: usize) -> Cover {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let maps = h
        .edges()
        .iter()
        .map(|e| {
            let columns: Vec<Vec<u32>> = e
                .iter()
                .map(|_| {
                    let mut p: Vec<u32> = (1..=k).collect();
                    p.shuffle(&mut rng);
                    p
                })
                .collect();
            let mut rows: Vec<Vec<u32>> = (0..k as usize)
                .map(|i| columns.iter().map(|c| c[i]).collect())
                .collect();
            let d = rng.gen_range(0..=drop.min(rows.len()));
            for _ in 0..d {
                let i = rng.gen_range(0..rows.len());
                rows.remove(i);
            }
            rows
        })
        .collect();
    Cover { k, maps }
}

pub fn random_gauge(n: usize, k: u32, seed: u64) -> Vec<Vec<u32>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let mut p: Vec<u32> = (1..=k).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect()
}
