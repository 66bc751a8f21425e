//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use hyperchroma::chromatic::{
    chromatic_brute_count, chromatic_polynomial, chromatic_subset_expansion, even_cycle_deficit,
    girth_expansion, ChromaticCache,
};
use hyperchroma::covers::{
    count_colorings_brute, count_colorings_ie, cwd1_value, cwd_bound, dp_exact, dp_upper_search,
    Cover, SearchBudget, UpperStrategy,
};
use hyperchroma::harness::{table1, Status, Verifier};
use hyperchroma::instance::{cycle, hypertree, random};
use hyperchroma::{ExactRational, Hypergraph, IntPoly};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Name, check, runtime limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const BUDGET: u64 = 1 << 24;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn poly(c: &[i64]) -> IntPoly {
    IntPoly::from_i64(c)
}

/// The 200 seeded random hypergraphs shared by criteria 1 and 7.
fn random_corpus() -> Result<Vec<Hypergraph>, String> {
    (0..200u64)
        .map(|seed| {
            let n = 4 + (seed % 5) as usize;
            let m = (seed / 5 % 7) as usize;
            random(n, m, seed).map_err(err)
        })
        .collect()
}

fn criterion1() -> Outcome {
    let corpus = random_corpus()?;
    for (i, h) in corpus.iter().enumerate() {
        ensure!(h.n() <= 8 && h.m() <= 6, "instance {i} out of range");
        let dc = chromatic_polynomial(h).map_err(err)?;
        let subset = chromatic_subset_expansion(h, 20).map_err(err)?;
        ensure!(dc == subset, "instance {i}: {dc} vs {subset}");
        for k in [2u32, 3] {
            let brute = chromatic_brute_count(h, k, BUDGET).map_err(err)?;
            ensure!(
                dc.eval_i64(k as i64) == BigInt::from(brute),
                "instance {i} k={k}"
            );
        }
    }
    Ok(format!(
        "{} instances, DC = subset expansion = brute force",
        corpus.len()
    ))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperchroma"))
}

fn run(cmd: &mut Command) -> Result<Output, String> {
    cmd.output().map_err(err)
}

fn criterion2() -> Outcome {
    let c4 = cycle(2, 4).map_err(err)?;
    let p = chromatic_polynomial(&c4).map_err(err)?.eval_i64(3);
    ensure!(p == BigInt::from(18), "P(C4,3) = {p}");
    let b = SearchBudget::default();
    let dp3 = dp_exact(&c4, 3, true, b).map_err(err)?;
    ensure!(dp3.value == 15, "dpExact(C4,3) = {}", dp3.value);
    let dp2 = dp_exact(&c4, 2, true, b).map_err(err)?.value;
    ensure!(dp2 == 0, "dpExact(C4,2) = {dp2}");
    let cwd1 = cwd1_value(&c4, 0, 3, &mut ChromaticCache::new()).map_err(err)?;
    ensure!(
        cwd1.value == ExactRational::from_integer(15.into()),
        "cwd1 = {}",
        cwd1.value
    );
    // the CLI round trip: emit the witness, then count it again
    let dir = tempfile::tempdir().map_err(err)?;
    let witness = dir.path().join("witness.json");
    let out = run(bin()
        .args([
            "dp-exact",
            "--gen",
            "cycle:2:4",
            "--k",
            "3",
            "--emit-witness",
        ])
        .arg(&witness))?;
    ensure!(
        out.status.success(),
        "dp-exact exited {:?}",
        out.status.code()
    );
    let out = run(bin()
        .args([
            "dp-count",
            "--gen",
            "cycle:2:4",
            "--format",
            "json",
            "--cover",
        ])
        .arg(&witness))?;
    ensure!(
        out.status.success(),
        "dp-count exited {:?}",
        out.status.code()
    );
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(err)?;
    ensure!(
        json["count"] == serde_json::json!(15),
        "dp-count gave {}",
        json["count"]
    );
    Ok("P = 18, dpExact = 15 (witness recounts 15), dpExact(k=2) = 0, cwd1 = 15".into())
}

fn criterion3() -> Outcome {
    let h = cycle(3, 4).map_err(err)?;
    let p = chromatic_polynomial(&h).map_err(err)?;
    ensure!(p == poly(&[0, 1, -4, 0, 6, 0, -4, 0, 1]), "P = {p}");
    let bound = cwd_bound(&h).map_err(err)?;
    let bp = bound
        .as_poly()
        .ok_or("cwd bound is not a polynomial")?
        .clone();
    ensure!(bp == poly(&[-1, 0, 1]).pow(4), "bound = {bp}");
    let diff = &p - &bp;
    ensure!(diff == IntPoly::k_minus(1), "difference = {diff}");
    let t = diff.threshold();
    ensure!(t.n == Some(BigInt::from(2)), "threshold {:?}", t.n);
    ensure!(
        p.eval_i64(2) == BigInt::from(82) && bp.eval_i64(2) == BigInt::from(81),
        "spot values"
    );
    let up = dp_upper_search(&h, 2, UpperStrategy::Shifts, SearchBudget::default()).map_err(err)?;
    ensure!(up.bound <= 81, "upper search found {}", up.bound);
    let g = girth_expansion(&h, &mut ChromaticCache::new()).map_err(err)?;
    ensure!(g.residual.is_zero(), "residual = {}", g.residual);
    Ok(format!(
        "difference k - 1, N = 2, 82 vs 81, search bound {}",
        up.bound
    ))
}

fn criterion4() -> Outcome {
    let c4 = cycle(2, 4).map_err(err)?;
    let k3 = cycle(2, 3).map_err(err)?;
    let mixed = Hypergraph::from_edges([vec![1, 2, 3], vec![1, 2]]).map_err(err)?;
    let kk1 = &IntPoly::k() * &IntPoly::k_minus(1);
    let mut cache = ChromaticCache::new();
    let cases = [
        ("C4", &c4, -&kk1, Status::Verified),
        ("K3", &k3, kk1.clone(), Status::HypothesisUnmet),
        ("mixed", &mixed, -&(&IntPoly::k() * &kk1), Status::Verified),
    ];
    let mut v = Verifier::default();
    for (name, h, delta, status) in cases {
        let d = even_cycle_deficit(h, 0, &mut cache).map_err(err)?;
        ensure!(d.delta == delta, "{name}: delta = {}", d.delta);
        let rep = v.evencyc(name, h, 0).map_err(err)?;
        ensure!(rep.status == status, "{name}: status {}", rep.status);
    }
    Ok("deltas -k(k-1), +k(k-1), -k^2(k-1); verified, unmet, verified".into())
}

fn criterion5() -> Outcome {
    let mut checked = 0;
    for m in 1..=2 {
        for seed in 0..4 {
            let h = hypertree(3, m, seed).map_err(err)?;
            let p = chromatic_polynomial(&h).map_err(err)?;
            for k in [2u32, 3] {
                let dp = dp_exact(&h, k, true, SearchBudget::default())
                    .map_err(err)?
                    .value;
                ensure!(
                    BigInt::from(dp) == p.eval_i64(k as i64),
                    "m={m} seed={seed} k={k}: {dp}"
                );
                if m == 2 && k == 2 {
                    ensure!(dp == 18, "m=2 k=2 gave {dp}");
                }
                checked += 1;
            }
        }
    }
    Ok(format!("dpExact = P on {checked} cases, 18 at m=2, k=2"))
}

fn criterion6() -> Outcome {
    let (_, ac) = table1().map_err(err)?;
    let flags: Vec<bool> = (1..=3)
        .map(|j| ac.level_mapping_check(j).map(|c| c.is_level_mapping))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    ensure!(flags == [false, true, false], "level flags {flags:?}");
    let d = ac.apex_decomposition(BUDGET).map_err(err)?;
    ensure!(
        d.sum == d.brute_total,
        "sum {} vs brute {}",
        d.sum,
        d.brute_total
    );
    Ok(format!(
        "levels (false, true, false), per-level {:?} sums to {}",
        d.per_level, d.brute_total
    ))
}

fn criterion7() -> Outcome {
    let corpus = random_corpus()?;
    for (i, h) in corpus.iter().enumerate() {
        let p = chromatic_polynomial(h).map_err(err)?;
        for q in 1..=3usize {
            let join = chromatic_polynomial(&h.join_clique(q).map_err(err)?).map_err(err)?;
            let expected = &IntPoly::falling_factorial(q as u32) * &p.substitute_shift(-(q as i64));
            ensure!(join == expected, "instance {i} p={q}");
        }
    }
    let c4 = cycle(2, 4).map_err(err)?.join_clique(1).map_err(err)?;
    let spot = chromatic_polynomial(&c4).map_err(err)?.eval_i64(4);
    ensure!(spot == BigInt::from(72), "P(C4 v K1, 4) = {spot}");
    Ok(format!(
        "{} instances x p = 1..3, P(C4 v K1, 4) = 72",
        corpus.len()
    ))
}

fn random_cover(h: &Hypergraph, k: u32, rng: &mut ChaCha8Rng) -> Cover {
    let maps = h
        .edges()
        .iter()
        .map(|e| {
            let cols: Vec<Vec<u32>> = e
                .iter()
                .map(|_| {
                    let mut p: Vec<u32> = (1..=k).collect();
                    p.shuffle(rng);
                    p
                })
                .collect();
            let mut rows: Vec<Vec<u32>> = (0..k as usize)
                .map(|i| cols.iter().map(|c| c[i]).collect())
                .collect();
            let keep = rng.gen_range(0..=rows.len());
            rows.truncate(keep);
            rows
        })
        .collect();
    Cover { k, maps }
}

fn criterion8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..100u64 {
        let n = rng.gen_range(3..=6);
        let m = rng.gen_range(0..=4);
        let h = random(n, m, i).map_err(err)?;
        let k = rng.gen_range(2..=3);
        let cover = random_cover(&h, k, &mut rng);
        ensure!(cover.validate(&h).is_ok(), "cover {i} invalid");
        let brute = count_colorings_brute(&h, &cover, BUDGET).map_err(err)?;
        let ie = count_colorings_ie(&h, &cover, BUDGET).map_err(err)?;
        ensure!(brute == ie, "cover {i}: brute {brute} vs IE {ie}");
        let natural = count_colorings_brute(&h, &Cover::natural(&h, k), BUDGET).map_err(err)?;
        let proper = chromatic_brute_count(&h, k, BUDGET).map_err(err)?;
        ensure!(
            natural == proper,
            "instance {i}: natural {natural} vs {proper}"
        );
        let gauge: Vec<Vec<u32>> = (0..h.n())
            .map(|_| {
                let mut p: Vec<u32> = (1..=k).collect();
                p.shuffle(&mut rng);
                p
            })
            .collect();
        let gauged = cover.apply_gauge(&h, &gauge).map_err(err)?;
        let g = count_colorings_brute(&h, &gauged, BUDGET).map_err(err)?;
        ensure!(g == brute, "cover {i}: gauge changed {brute} to {g}");
        let sat = count_colorings_brute(&h, &cover.saturate_in(&h), BUDGET).map_err(err)?;
        ensure!(
            sat <= brute,
            "cover {i}: saturation raised {brute} to {sat}"
        );
    }
    Ok("100 covers: brute = IE, natural = proper, gauge and saturation hold".into())
}

fn criterion9() -> Outcome {
    let h = Hypergraph::from_edges([[0, 1, 2]]).map_err(err)?;
    let rep = Verifier::default()
        .lemma2p1("edge k=2", &h, 2)
        .map_err(err)?;
    if rep.status != Status::Verified {
        let failed: Vec<_> = rep
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| &c.detail)
            .collect();
        return Err(format!(
            "status {}: {failed:?} {}",
            rep.status,
            serde_json::json!(rep.payload)
        ));
    }
    let examined = &rep.payload["coverage"];
    Ok(format!(
        "every qualifying apex cover counts P; coverage {examined}"
    ))
}

fn criterion10() -> Outcome {
    let audit = |extra: &[&str]| -> Result<Output, String> {
        run(bin()
            .args(["verify", "audit", "--format", "json", "--seed", "1"])
            .args(extra))
    };
    let a = audit(&[])?;
    let b = audit(&[])?;
    ensure!(
        a.status.code() == Some(0),
        "audit exited {:?}",
        a.status.code()
    );
    ensure!(a.stdout == b.stdout, "audit output differs between runs");
    let f = audit(&["--inject-fault", "cwd-exponent"])?;
    ensure!(
        f.status.code() == Some(1),
        "faulted audit exited {:?}",
        f.status.code()
    );
    let json: serde_json::Value = serde_json::from_slice(&f.stdout).map_err(err)?;
    let found = json["reports"].as_array().is_some_and(|r| {
        r.iter()
            .any(|r| r["status"] == "violated" && r["payload"].get("counterexample").is_some())
    });
    ensure!(found, "no counterexample report under fault injection");
    Ok(format!(
        "exit 0 twice, {} identical bytes; fault gives exit 1 with counterexample",
        a.stdout.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("dual-oracle chromatic equality", criterion1, 60),
        ("C4 DP suite", criterion2, 10),
        ("Gir-1 desk instance", criterion3, 30),
        ("even-cycle certificates", criterion4, 5),
        ("hypertree rigidity", criterion5, 60),
        ("Table 1 golden test", criterion6, 5),
        ("join identity", criterion7, 60),
        ("cover-counting oracles", criterion8, 60),
        ("apex covers at desk scale", criterion9, 120),
        ("audit determinism and fault sensitivity", criterion10, 120),
    ];
    // the audit binary must exist before timing starts
    assert!(Path::new(env!("CARGO_BIN_EXE_hyperchroma")).exists());
    let mut failures = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if took > Duration::from_secs(*limit) {
                Err(format!(
                    "took {:.1}s, limit {limit}s ({msg})",
                    took.as_secs_f64()
                ))
            } else {
                Ok(msg)
            }
        });
        match outcome {
            Ok(msg) => println!(
                "PASS criterion {:>2} {name}: {msg} [{:.2}s < {limit}s]",
                i + 1,
                took.as_secs_f64()
            ),
            Err(msg) => {
                failures += 1;
                println!(
                    "FAIL criterion {:>2} {name}: {msg} [{:.2}s]",
                    i + 1,
                    took.as_secs_f64()
                );
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
