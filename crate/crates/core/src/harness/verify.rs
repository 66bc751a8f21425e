//! One verifier per claim. Each returns a report carrying exact sub-checks;
//! asymptotic statements are certified by a leading sign, an explicit `N`,
//! and exact evaluations on `N..=N+10`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::apex::ApexCover;
use super::report::{ClaimId, ReportBuilder, VerificationReport};
use crate::chromatic::{
    chromatic_brute_count, chromatic_dc, connecting_family, deficit_identity_holds,
    even_cycle_deficit, girth_expansion, lemma9_audit, ChromaticCache, DEFAULT_SUBSET_BUDGET,
};
use crate::covers::{
    all_slots, count_colorings_brute, cwd1_hypothesis, cwd1_value, cwd_bound_with_offset, dp_exact,
    dp_upper_search, identity, natural_off_edge_min, permutations, Cover, Cwd1Value, PermCoverSpec,
    SearchBudget, Slot, UpperStrategy,
};
use crate::error::{Error, Result};
use crate::hypergraph::{Girth, Hypergraph, VertexId};
use crate::poly::{bigint_to_json, rational_to_json, ExactRational, IntPoly, Sign};

/// Extra evaluations past `N` in every asymptotic certificate.
pub const CERTIFICATE_WINDOW: i64 = 10;

/// Largest `k` for which a verifier lists all `k!` permutations.
const MAX_ENUMERATION_K: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub budget: SearchBudget,
    /// Cap on `k^n` for brute-force colorings.
    pub brute_budget: u64,
    /// Cap on the number of edges enumerated by subset sums.
    pub subset_budget: usize,
    pub seed: u64,
    /// Random covers drawn when an enumeration exceeds its budget.
    pub samples: u64,
    /// Added to the exponent of the CWD bound. Nonzero only for
    /// fault-injection runs.
    pub cwd_exponent_offset: i64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: SearchBudget::default(),
            brute_budget: crate::chromatic::DEFAULT_ASSIGNMENT_BUDGET,
            subset_budget: DEFAULT_SUBSET_BUDGET,
            seed: 1,
            samples: 10_000,
            cwd_exponent_offset: 0,
        }
    }
}

/// Options plus a chromatic-polynomial memo shared across verifications.
#[derive(Debug, Default)]
pub struct Verifier {
    pub options: VerifyOptions,
    pub cache: ChromaticCache,
}

fn poly_json(p: &IntPoly) -> Value {
    json!({ "coefficients": p, "text": p.to_string() })
}

fn int(x: impl Into<BigInt>) -> Value {
    bigint_to_json(&x.into())
}

fn cwd1_json(v: &Cwd1Value) -> Value {
    json!({
        "k": v.k,
        "value": rational_to_json(&v.value),
        "branch": v.branch,
        "chromatic": bigint_to_json(&v.chromatic),
        "quotient": rational_to_json(&v.quotient),
    })
}

/// Turns budget exhaustion into `None`.
fn budgeted<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExceeded { .. }) | Err(Error::TooManyVertices(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `(k - c)^e` as an integer; `e` is a vertex count difference.
fn power_term(k: i64, c: i64, e: i64) -> BigInt {
    if e < 0 {
        return BigInt::zero();
    }
    num_traits::pow(BigInt::from(k - c), e as usize)
}

fn threshold_start(n: &Option<BigInt>) -> Option<i64> {
    n.as_ref().and_then(|n| n.to_i64()).map(|n| n.max(1))
}

fn to_k(k: i64) -> Result<u32> {
    u32::try_from(k)
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| Error::InvalidParameters(format!("k = {k} must be a positive integer")))
}

impl Verifier {
    pub fn new(options: VerifyOptions) -> Self {
        Verifier {
            options,
            cache: ChromaticCache::new(),
        }
    }

    fn chromatic(&mut self, h: &Hypergraph) -> Result<IntPoly> {
        chromatic_dc(h, &mut self.cache)
    }

    fn dp_exact(&self, h: &Hypergraph, k: i64) -> Result<Option<crate::covers::DpExact>> {
        budgeted(dp_exact(h, to_k(k)?, true, self.options.budget))
    }

    /// Dominance of `P` over the CWD bound on a linear uniform even-girth
    /// hypergraph.
    pub fn gir1(&mut self, instance: &str, h: &Hypergraph) -> Result<VerificationReport> {
        let class = h.classify();
        let r = class.uniform_rank.ok_or(Error::NonUniform)?;
        if !class.linear {
            return Err(Error::HypothesisUnmet(
                "the hypergraph is not linear".into(),
            ));
        }
        let mut b = ReportBuilder::new(ClaimId::Gir1, instance);
        let p = self.chromatic(h)?;
        let bound = cwd_bound_with_offset(h, self.options.cwd_exponent_offset)?;
        let dpow = bound.denominator_power;
        // D = P - bound, kept over k^dpow
        let d = &p.shift_up(dpow) - &bound.numerator;
        b.put("P", poly_json(&p));
        b.put(
            "cwdBound",
            json!({
                "numerator": poly_json(&bound.numerator),
                "denominatorPower": dpow,
                "exponent": bound.exponent,
            }),
        );
        b.put(
            "D",
            json!({ "numerator": poly_json(&d), "denominatorPower": dpow }),
        );
        let girth = h.girth();
        b.put("girth", girth);
        if !h.is_connected() {
            b.hypothesis_unmet("the hypergraph is not connected");
            return Ok(b.finish());
        }
        match girth {
            Girth::Infinite => {
                b.hypothesis_unmet("the hypergraph has no cycle");
                return Ok(b.finish());
            }
            Girth::Finite(g) if g % 2 == 1 => {
                b.hypothesis_unmet(format!("girth {g} is odd"));
                return Ok(b.finish());
            }
            Girth::Finite(_) => {}
        }
        let exp = girth_expansion(h, &mut self.cache)?;
        b.put(
            "expansion",
            json!({
                "z": exp.z,
                "t": exp.t,
                "binomialPart": poly_json(&exp.binomial_part),
                "cycleTerm": poly_json(&exp.cycle_term),
                "residual": poly_json(&exp.residual),
                "residualDegreeBound": exp.residual_degree_bound,
            }),
        );
        b.check(
            "residual-degree",
            None,
            exp.residual_within_bound(),
            format!(
                "deg residual = {:?}, bound {}",
                exp.residual.degree(),
                exp.residual_degree_bound
            ),
        );
        let lead_exp = exp.n as i64 - (exp.z * (r - 1)) as i64 + 1 + dpow as i64;
        let expected = if lead_exp >= 0 {
            IntPoly::monomial(exp.t as i64, lead_exp as usize)
        } else {
            IntPoly::zero()
        };
        b.check(
            "leading-term",
            None,
            d.leading_term() == expected,
            format!("leading term {} (expected {expected})", d.leading_term()),
        );
        let threshold = d.threshold();
        b.put("threshold", &threshold);
        let positive = b.check(
            "sign",
            None,
            threshold.sign == Sign::Positive,
            format!("D is eventually {}", threshold.sign.symbol()),
        );
        let Some(n0) = threshold_start(&threshold.n) else {
            b.inconclusive("threshold does not fit in i64");
            return Ok(b.finish());
        };
        let bound_at = |k: i64| bound.at(k);
        if positive {
            for k in n0..=n0 + CERTIFICATE_WINDOW {
                let v = d.eval_i64(k);
                b.check(
                    "strict-inequality",
                    Some(k),
                    v.is_positive(),
                    format!("D({k}) numerator = {v}"),
                );
            }
        } else if let Some(k) =
            (2..=n0.max(2) + CERTIFICATE_WINDOW).find(|&k| !d.eval_i64(k).is_positive())
        {
            b.put(
                "counterexample",
                json!({
                    "k": k,
                    "P": bigint_to_json(&p.eval_i64(k)),
                    "bound": rational_to_json(&bound_at(k)?),
                    "Dnumerator": bigint_to_json(&d.eval_i64(k)),
                }),
            );
        }
        let k0 = n0.max(2);
        let pk = p.eval_i64(k0);
        b.put(
            "spot",
            json!({
                "k": k0,
                "P": bigint_to_json(&pk),
                "bound": rational_to_json(&bound_at(k0)?),
                "P(k+1)": bigint_to_json(&p.eval_i64(k0 + 1)),
                "bound(k+1)": rational_to_json(&bound_at(k0 + 1)?),
            }),
        );
        if let Some(brute) = budgeted(chromatic_brute_count(
            h,
            to_k(k0)?,
            self.options.brute_budget,
        ))? {
            b.check(
                "brute-count",
                Some(k0),
                BigInt::from(brute) == pk,
                format!("brute force {brute}, polynomial {pk}"),
            );
        }
        match budgeted(dp_upper_search(
            h,
            to_k(k0)?,
            UpperStrategy::Shifts,
            self.options.budget,
        ))? {
            Some(up) => {
                let cover = up.witness.expand(h)?;
                let attains = ExactRational::from_integer(up.bound.into()) <= bound_at(k0)?;
                b.check(
                    "upper-search-at-most-P",
                    Some(k0),
                    BigInt::from(up.bound) <= pk,
                    format!("shift search found {} <= P = {pk}", up.bound),
                );
                b.put(
                    "upperSearch",
                    json!({
                        "k": k0,
                        "bound": up.bound,
                        "coversExamined": up.covers_examined,
                        "exhaustive": up.exhaustive,
                        "attainsCwdBound": attains,
                        "cover": cover.to_json_value(h),
                    }),
                );
            }
            None => {
                b.note(format!("shift search at k = {k0} exceeds the budget"));
            }
        }
        Ok(b.finish())
    }

    pub fn evencyc(
        &mut self,
        instance: &str,
        h: &Hypergraph,
        e: usize,
    ) -> Result<VerificationReport> {
        self.deficit_report(ClaimId::EvenCyc, instance, h, e)
    }

    pub fn prop1p1(
        &mut self,
        instance: &str,
        h: &Hypergraph,
        e: usize,
    ) -> Result<VerificationReport> {
        self.deficit_report(ClaimId::Prop1p1, instance, h, e)
    }

    fn deficit_report(
        &mut self,
        claim: ClaimId,
        instance: &str,
        h: &Hypergraph,
        e: usize,
    ) -> Result<VerificationReport> {
        let mut b = ReportBuilder::new(claim, instance);
        let edge = h.edge(e)?.to_vec();
        b.put("edge", json!({ "index": e, "vertices": edge }));
        let components = h.delete_edge(e)?.components().count();
        let (ell, cycle) = h.girth_of_edge(e)?;
        b.put("girthOfEdge", ell);
        if let Some(c) = &cycle {
            b.put("cycle", c);
        }
        let deficit = even_cycle_deficit(h, e, &mut self.cache)?;
        b.put("delta", poly_json(&deficit.delta));
        b.put("threshold", &deficit.threshold);
        if !cwd1_hypothesis(h, e)? {
            b.hypothesis_unmet(format!(
                "c(H - e) = {components} but |e| - 1 = {}",
                edge.len() - 1
            ));
        }
        match claim {
            ClaimId::EvenCyc if !ell.is_even() => {
                b.hypothesis_unmet(format!(
                    "the shortest cycle through e has length {ell}, not even"
                ));
            }
            ClaimId::Prop1p1 if deficit.threshold.sign != Sign::Negative => {
                b.hypothesis_unmet("delta is not eventually negative");
            }
            _ => {}
        }
        if b.is_unmet() {
            return Ok(b.finish());
        }
        let identity = deficit_identity_holds(h, e, &mut self.cache)?;
        b.check(
            "deficit-identity",
            None,
            identity,
            "cross-multiplied rational identity",
        );
        let negative = b.check(
            "sign",
            None,
            deficit.threshold.sign == Sign::Negative,
            format!("delta is eventually {}", deficit.threshold.sign.symbol()),
        );
        let Some(n0) = threshold_start(&deficit.threshold.n) else {
            b.inconclusive("threshold does not fit in i64");
            return Ok(b.finish());
        };
        if negative {
            for k in n0..=n0 + CERTIFICATE_WINDOW {
                let v = deficit.delta.eval_i64(k);
                b.check(
                    "strict-inequality",
                    Some(k),
                    v.is_negative(),
                    format!("delta({k}) = {v}"),
                );
            }
        }
        let k0 = n0.max(2);
        let p = self.chromatic(h)?;
        let cwd1 = cwd1_value(h, e, k0, &mut self.cache)?;
        let pk = ExactRational::from_integer(p.eval_i64(k0));
        b.check(
            "cwd1-quotient-below-P",
            Some(k0),
            cwd1.quotient < pk,
            format!("quotient {} vs P = {}", cwd1.quotient, pk),
        );
        b.put("cwd1", cwd1_json(&cwd1));
        let mut witnesses = BTreeMap::new();
        for k in [k0, k0 + 1] {
            if let Some(w) = self.witness(&mut b, h, e, k, &p.eval_i64(k))? {
                witnesses.insert(k.to_string(), w);
            }
        }
        b.put("witnesses", witnesses);
        Ok(b.finish())
    }

    /// A cover with fewer than `P(H, k)` colorings, by exact search when
    /// feasible and by the shift family otherwise.
    fn witness(
        &mut self,
        b: &mut ReportBuilder,
        h: &Hypergraph,
        e: usize,
        k: i64,
        pk: &BigInt,
    ) -> Result<Option<Value>> {
        if let Some(exact) = self.dp_exact(h, k)? {
            let cover = exact.witness.expand(h)?;
            b.check(
                "dp-exact-below-P",
                Some(k),
                BigInt::from(exact.value) < *pk,
                format!("P_DP = {} vs P = {pk}", exact.value),
            );
            if let Some(recount) =
                budgeted(count_colorings_brute(h, &cover, self.options.brute_budget))?
            {
                b.check(
                    "witness-recount",
                    Some(k),
                    recount == exact.value,
                    format!("recounted {recount}"),
                );
            }
            let mut w = json!({
                "method": "dp-exact",
                "count": exact.value,
                "coversExamined": exact.covers_examined,
                "cover": cover.to_json_value(h),
            });
            if let Some(nat) = budgeted(natural_off_edge_min(h, e, to_k(k)?, self.options.budget))?
            {
                let v = cwd1_value(h, e, k, &mut self.cache)?;
                b.check(
                    "cwd1-lower-bound",
                    Some(k),
                    v.value <= ExactRational::from_integer(nat.value.into()),
                    format!(
                        "cwd1 value {} vs minimum {} over covers natural off e",
                        v.value, nat.value
                    ),
                );
                w["naturalOffEdgeMin"] = json!(nat.value);
            }
            return Ok(Some(w));
        }
        match budgeted(dp_upper_search(
            h,
            to_k(k)?,
            UpperStrategy::Shifts,
            self.options.budget,
        ))? {
            Some(up) if BigInt::from(up.bound) < *pk => {
                let cover = up.witness.expand(h)?;
                b.check(
                    "upper-search-below-P",
                    Some(k),
                    true,
                    format!("shift cover with {} < P = {pk}", up.bound),
                );
                Ok(Some(json!({
                    "method": "shift-search",
                    "count": up.bound,
                    "coversExamined": up.covers_examined,
                    "cover": cover.to_json_value(h),
                })))
            }
            Some(up) => {
                b.note(format!(
                    "no cover below P at k = {k} among {} shift covers",
                    up.covers_examined
                ));
                Ok(None)
            }
            None => {
                b.note(format!("no witness search fits the budget at k = {k}"));
                Ok(None)
            }
        }
    }

    /// The connecting-family identity is audited, not asserted: its checks
    /// are the derived algebraic facts; the sum comparison is data.
    pub fn lemma9(
        &mut self,
        instance: &str,
        h: &Hypergraph,
        e: usize,
        pair: Option<(VertexId, VertexId)>,
    ) -> Result<VerificationReport> {
        let mut b = ReportBuilder::new(ClaimId::Lemma9, instance);
        let edge = h.edge(e)?.to_vec();
        if edge.len() < 2 {
            return Err(Error::DegenerateEdge(e));
        }
        let (v1, v2) = pair.unwrap_or((edge[0], edge[1]));
        let budget = self.options.subset_budget;
        let Some(family) = budgeted(connecting_family(h, e, v1, v2, budget))? else {
            b.inconclusive(format!(
                "{} edges exceed the subset budget {budget}",
                h.m() - 1
            ));
            return Ok(b.finish());
        };
        let audit = lemma9_audit(h, e, v1, v2, budget, &mut self.cache)?;
        let deficit = even_cycle_deficit(h, e, &mut self.cache)?;
        b.check(
            "lhs-equals-deficit",
            None,
            audit.lhs == deficit.delta,
            format!("lhs {} vs delta {}", audit.lhs, deficit.delta),
        );
        b.check(
            "deficit-identity",
            None,
            deficit_identity_holds(h, e, &mut self.cache)?,
            "cross-multiplied rational identity",
        );
        for c in &audit.checks {
            if !c.equal {
                b.note(format!(
                    "{:?} reading: the signed family sum differs from the exact difference by {}{}",
                    c.convention,
                    c.discrepancy,
                    if c.leading_terms_agree {
                        " (leading terms agree)"
                    } else {
                        ""
                    }
                ));
            }
        }
        b.put("family", &family);
        b.put(
            "audit",
            json!({
                "lhs": poly_json(&audit.lhs),
                "familySize": audit.family_size,
                "anchorPair": [v1, v2],
                "conventions": audit.checks.iter().map(|c| json!({
                    "convention": c.convention,
                    "rhs": poly_json(&c.rhs),
                    "equal": c.equal,
                    "leadingTermsAgree": c.leading_terms_agree,
                    "discrepancy": poly_json(&c.discrepancy),
                })).collect::<Vec<_>>(),
            }),
        );
        Ok(b.finish())
    }

    pub fn join_identity(
        &mut self,
        instance: &str,
        h: &Hypergraph,
        p: usize,
        ks: &[i64],
    ) -> Result<VerificationReport> {
        let joined = h.join_clique(p)?;
        let mut b = ReportBuilder::new(ClaimId::JoinIdentity, instance);
        let left = self.chromatic(&joined)?;
        let right = &IntPoly::falling_factorial(p as u32)
            * &self.chromatic(h)?.substitute_shift(-(p as i64));
        b.put("p", p);
        b.put("left", poly_json(&left));
        b.put("right", poly_json(&right));
        b.check(
            "polynomial-identity",
            None,
            left == right,
            "P(H v K_p) against the shifted product",
        );
        for &k in ks {
            let (l, r) = (left.eval_i64(k), right.eval_i64(k));
            b.check("spot", Some(k), l == r, format!("{l} = {r}"));
            if k >= 1 {
                if let Some(brute) = budgeted(chromatic_brute_count(
                    &joined,
                    to_k(k)?,
                    self.options.brute_budget,
                ))? {
                    b.check(
                        "brute-count",
                        Some(k),
                        BigInt::from(brute) == l,
                        format!("brute force {brute}"),
                    );
                }
            }
        }
        Ok(b.finish())
    }

    pub fn level(&mut self, instance: &str, ac: &ApexCover) -> Result<VerificationReport> {
        let mut b = ReportBuilder::new(ClaimId::Level, instance);
        let k = ac.k() as i64;
        b.k(k);
        let checks = ac.level_checks();
        b.put(
            "levelMappings",
            checks.iter().filter(|c| c.is_level_mapping).count(),
        );
        b.put("levels", &checks);
        match budgeted(ac.apex_decomposition(self.options.brute_budget))? {
            Some(d) => {
                b.check(
                    "decomposition-sum",
                    Some(k),
                    d.consistent,
                    format!("per-level sum {} vs brute total {}", d.sum, d.brute_total),
                );
                b.put("decomposition", d);
            }
            None => {
                b.inconclusive("brute-force total exceeds the budget");
            }
        }
        b.note("level counts use the unary-restriction semantics of F_j");
        Ok(b.finish())
    }

    /// Enumerates the normal-form covers of `K_1 ∨ H` and recounts every
    /// cover with at least `k - 1` level mappings.
    pub fn lemma2p1(
        &mut self,
        instance: &str,
        h: &Hypergraph,
        k: u32,
    ) -> Result<VerificationReport> {
        let join = h.join_clique(1)?;
        let apex = *join.apex_vertices().last().expect("join adds an apex");
        let mut b = ReportBuilder::new(ClaimId::Lemma2p1, instance);
        b.k(k as i64);
        let target = self.chromatic(&join)?.eval_i64(k as i64);
        b.put("P", bigint_to_json(&target));
        if k > MAX_ENUMERATION_K {
            b.inconclusive(format!("k = {k} is too large to list permutations"));
            return Ok(b.finish());
        }
        let slots = all_slots(&join);
        let perms = permutations(k);
        let full = (perms.len() as u64).checked_pow(slots.len() as u32);
        let exhaustive = full.is_some_and(|t| t <= self.options.budget.covers);
        let total = if exhaustive {
            full.unwrap()
        } else {
            self.options.samples.max(1)
        };
        let brute = self.options.brute_budget;
        let seed = self.options.seed;
        let base = PermCoverSpec::natural(&join, k);
        let spec_at = |i: u64| -> PermCoverSpec {
            if exhaustive {
                spec_from_index(&base, &slots, &perms, i)
            } else {
                random_spec(&base, &slots, k, seed, i)
            }
        };
        let stats = (0..total)
            .into_par_iter()
            .map(|i| -> Result<Stats> {
                let spec = spec_at(i);
                let cover = spec.expand(&join)?;
                let ac = ApexCover::new(join.clone(), apex, cover)?;
                let levels = ac.level_mapping_count();
                let mut s = Stats::default();
                *s.histogram.entry(levels).or_default() += 1;
                if levels + 1 >= k as usize {
                    s.qualifying = 1;
                    let count = count_colorings_brute(&join, &ac.cover, brute)?;
                    if BigInt::from(count) != target {
                        s.violation = Some((i, count));
                    }
                }
                Ok(s)
            })
            .try_reduce(Stats::default, |a, b| Ok(a.merge(b)))?;
        b.put(
            "coverage",
            json!({
                "exhaustive": exhaustive,
                "coversExamined": total,
                "familySize": full,
                "qualifying": stats.qualifying,
                "levelMappingHistogram": stats.histogram,
            }),
        );
        match stats.violation {
            Some((i, count)) => {
                let cover = spec_at(i).expand(&join)?;
                b.check(
                    "count-equals-P",
                    Some(k as i64),
                    false,
                    format!("cover {i} has {count} colorings, P = {target}"),
                );
                b.put(
                    "counterexample",
                    json!({ "count": count, "cover": cover.to_json_value(&join) }),
                );
            }
            None => {
                b.check(
                    "count-equals-P",
                    Some(k as i64),
                    true,
                    format!(
                        "{} qualifying covers all give P = {target}",
                        stats.qualifying
                    ),
                );
            }
        }
        if !exhaustive {
            b.inconclusive(format!(
                "sampled {total} covers; the family exceeds the cover budget"
            ));
        }
        Ok(b.finish())
    }

    pub fn lemma2p2(&mut self, instance: &str, ac: &ApexCover) -> Result<VerificationReport> {
        let mut b = ReportBuilder::new(ClaimId::Lemma2p2, instance);
        let k = ac.k() as i64;
        b.k(k);
        let h = &ac.base;
        let (n, d, r_max) = (
            h.n() as i64,
            h.coloring_number() as i64,
            h.max_edge_size() as i64,
        );
        let checks = ac.level_checks();
        let s = checks.iter().filter(|c| !c.is_level_mapping).count() as i64;
        b.put("s", s);
        b.put("coloringNumber", d);
        b.put("maxEdgeSize", r_max);
        let Some(dec) = budgeted(ac.apex_decomposition(self.options.brute_budget))? else {
            b.inconclusive("brute-force total exceeds the budget");
            return Ok(b.finish());
        };
        b.check(
            "decomposition-sum",
            Some(k),
            dec.consistent,
            format!(
                "per-level sum {} vs brute total {}",
                dec.sum, dec.brute_total
            ),
        );
        let total = BigInt::from(dec.brute_total);
        b.put("total", int(dec.brute_total));
        if k < 2 {
            b.hypothesis_unmet("k must be at least 2");
            return Ok(b.finish());
        }
        if k < d + r_max {
            b.hypothesis_unmet(format!("k = {k} < col(H) + r_max = {}", d + r_max));
        }
        let Some(dp) = self.dp_exact(h, k - 1)? else {
            b.inconclusive(format!("P_DP(H, {}) exceeds the search budget", k - 1));
            return Ok(b.finish());
        };
        let base = BigInt::from(k) * dp.value;
        let rmax_rhs = &base + BigInt::from(s) * power_term(k, d + r_max, n - r_max);
        let literal_holds = h.edges().iter().any(|e| {
            let ne = e.len() as i64;
            total >= &base + BigInt::from(s) * power_term(k, d + ne, n - ne)
        });
        let proof_rhs =
            checks
                .iter()
                .filter_map(|c| c.failure.as_ref())
                .fold(base.clone(), |acc, f| {
                    let ne = ac.join.edges()[f.edge].len() as i64;
                    acc + power_term(k, d + ne, n - ne)
                });
        b.put(
            "readings",
            json!({
                "dpExactHkMinus1": dp.value,
                "base": bigint_to_json(&base),
                "rMax": { "rhs": bigint_to_json(&rmax_rhs), "holds": total >= rmax_rhs },
                "someEdge": { "holds": literal_holds },
                "failingEdge": { "rhs": bigint_to_json(&proof_rhs), "holds": total >= proof_rhs },
            }),
        );
        if (total >= rmax_rhs) != literal_holds || (total >= rmax_rhs) != (total >= proof_rhs) {
            b.note("the edge-size readings of the lower bound disagree on this cover");
        }
        b.note("level counts use the unary-restriction semantics of F_j");
        if b.is_unmet() {
            return Ok(b.finish());
        }
        b.check(
            "base-inequality",
            Some(k),
            total >= base,
            format!("total {total} vs k P_DP(H, k-1) = {base}"),
        );
        b.check(
            "r-max-reading",
            Some(k),
            total >= rmax_rhs,
            format!("total {total} vs {rmax_rhs}"),
        );
        Ok(b.finish())
    }

    /// The `K_1` join bound, its `K_p` extension and the equality claim,
    /// as three reports.
    pub fn join_theorems(
        &mut self,
        instance: &str,
        h: &Hypergraph,
        p: usize,
        ks: &[i64],
    ) -> Result<Vec<VerificationReport>> {
        if p == 0 {
            return Err(Error::InvalidParameters("join needs p >= 1".into()));
        }
        Ok(vec![
            self.th2p1(instance, h, ks)?,
            self.co2p1(instance, h, p, ks)?,
            self.ans3(instance, h, p, ks)?,
        ])
    }

    /// `P_DP(H ∨ K_1, k) >= min{P, k P_DP(H, k-1) + 2(k - col - r)^{n-r}}`.
    pub fn th2p1(
        &mut self,
        instance: &str,
        h: &Hypergraph,
        ks: &[i64],
    ) -> Result<VerificationReport> {
        let mut b = ReportBuilder::new(ClaimId::Th2p1, instance);
        let (n, col) = (h.n() as i64, h.coloring_number() as i64);
        b.put("coloringNumber", col);
        let Some(r) = h.classify().uniform_rank.map(|r| r as i64) else {
            b.hypothesis_unmet("only the r-uniform bound is instantiated");
            return Ok(b.finish());
        };
        if col < 3 {
            b.hypothesis_unmet(format!("col(H) = {col} < 3"));
            return Ok(b.finish());
        }
        let join = h.join_clique(1)?;
        let p_join = self.chromatic(&join)?;
        let mut rows = Vec::new();
        for &k in ks {
            if k < col + r {
                b.note(format!("k = {k} is below col(H) + r = {}", col + r));
                continue;
            }
            let Some(dp_h) = self.dp_exact(h, k - 1)? else {
                b.inconclusive(format!("P_DP(H, {}) exceeds the budget", k - 1));
                continue;
            };
            let pk = p_join.eval_i64(k);
            let lead = BigInt::from(k) * dp_h.value;
            let corrected =
                (&lead + BigInt::from(2) * power_term(k, col + r, n - r)).min(pk.clone());
            let literal = (&lead + BigInt::from(2) * power_term(k * col, r, n - r)).min(pk.clone());
            let row = self.lower_bound_check(&mut b, "corrected-bound", &join, k, &corrected)?;
            rows.push(json!({
                "k": k,
                "P": bigint_to_json(&pk),
                "dpExactHkMinus1": dp_h.value,
                "corrected": bigint_to_json(&corrected),
                "literal": bigint_to_json(&literal),
                "join": row,
            }));
        }
        if rows.is_empty() && !b.is_unmet() {
            b.hypothesis_unmet("no k in range satisfies k >= col(H) + r");
        }
        b.put("rows", rows);
        Ok(b.finish())
    }

    /// `f_p` with `f_1 = 2(k - col(H) - r)^{n-r}` and
    /// `f_p(k) = k f_{p-1}(k-1) + 2(k - col(K_{p-1} ∨ H) - r)^{n-r-1+p}`.
    pub fn co2p1_f(h: &Hypergraph, p: usize, r: usize) -> Result<IntPoly> {
        let n = h.n();
        let mut f = IntPoly::zero();
        for i in 1..=p {
            let col = if i == 1 {
                h.coloring_number()
            } else {
                h.join_clique(i - 1)?.coloring_number()
            };
            let e = (n + i) as i64 - r as i64 - 1;
            let term = if e >= 0 {
                IntPoly::k_minus((col + r) as i64)
                    .pow(e as u32)
                    .scale(&BigInt::from(2))
            } else {
                IntPoly::zero()
            };
            f = &f.substitute_shift(-1).shift_up(1) + &term;
        }
        Ok(f)
    }

    pub fn co2p1(
        &mut self,
        instance: &str,
        h: &Hypergraph,
        p: usize,
        ks: &[i64],
    ) -> Result<VerificationReport> {
        let mut b = ReportBuilder::new(ClaimId::Co2p1, instance);
        b.put("p", p);
        let (n, col) = (h.n() as i64, h.coloring_number() as i64);
        b.put("coloringNumber", col);
        let Some(r) = h.classify().uniform_rank else {
            b.hypothesis_unmet("the hypergraph is not uniform");
            return Ok(b.finish());
        };
        if col < 3 {
            b.hypothesis_unmet(format!("col(H) = {col} < 3"));
            return Ok(b.finish());
        }
        let ri = r as i64;
        let pi = p as i64;
        let f = Self::co2p1_f(h, p, r)?;
        b.put("f", poly_json(&f));
        b.check(
            "f-leading-coefficient",
            None,
            f.leading() == Some(&BigInt::from(2 * pi)),
            format!(
                "leading coefficient {}, expected {}",
                f.leading().map_or("none".to_string(), ToString::to_string),
                2 * pi
            ),
        );
        let degree = n - ri - 1 + pi;
        b.check(
            "f-degree",
            None,
            f.degree().map(|d| d as i64) == Some(degree),
            format!(
                "degree {}, expected n - r - 1 + p = {degree}",
                f.degree().map_or("none".to_string(), |d| d.to_string())
            ),
        );
        if degree != n - 3 + pi {
            b.note(format!(
                "the stated degree n - 3 + p = {} holds only for r = 2",
                n - 3 + pi
            ));
        }
        let join = h.join_clique(p)?;
        let p_join = self.chromatic(&join)?;
        let falling = IntPoly::falling_factorial(p as u32);
        let mut rows = Vec::new();
        for &k in ks {
            if k < col + ri + pi {
                b.note(format!(
                    "k = {k} is below col(H) + r + p = {}",
                    col + ri + pi
                ));
                continue;
            }
            let Some(dp_h) = self.dp_exact(h, k - pi)? else {
                b.inconclusive(format!("P_DP(H, {}) exceeds the budget", k - pi));
                continue;
            };
            let pk = p_join.eval_i64(k);
            let rhs = (falling.eval_i64(k) * dp_h.value + f.eval_i64(k)).min(pk.clone());
            let row = self.lower_bound_check(&mut b, "lower-bound", &join, k, &rhs)?;
            rows.push(json!({
                "k": k,
                "P": bigint_to_json(&pk),
                "dpExactHkMinusP": dp_h.value,
                "rhs": bigint_to_json(&rhs),
                "join": row,
            }));
        }
        if rows.is_empty() && !b.is_unmet() && ks.iter().all(|&k| k < col + ri + pi) {
            b.hypothesis_unmet("no k in range satisfies k >= col(H) + r + p");
        }
        b.put("rows", rows);
        Ok(b.finish())
    }

    /// Checks `P_DP(join, k) >= rhs`, exactly when feasible and otherwise
    /// by bracketing with a witness search.
    fn lower_bound_check(
        &mut self,
        b: &mut ReportBuilder,
        name: &str,
        join: &Hypergraph,
        k: i64,
        rhs: &BigInt,
    ) -> Result<Value> {
        if let Some(dp) = self.dp_exact(join, k)? {
            b.check(
                name,
                Some(k),
                BigInt::from(dp.value) >= *rhs,
                format!("P_DP = {} vs bound {rhs}", dp.value),
            );
            return Ok(json!({ "dpExact": dp.value, "coversExamined": dp.covers_examined }));
        }
        let strategy = UpperStrategy::RandomPerms {
            samples: self.options.samples,
            seed: self.options.seed,
        };
        match budgeted(dp_upper_search(
            join,
            to_k(k)?,
            strategy,
            self.options.budget,
        ))? {
            Some(up) if BigInt::from(up.bound) < *rhs => {
                b.check(
                    name,
                    Some(k),
                    false,
                    format!("cover with {} colorings is below {rhs}", up.bound),
                );
                Ok(
                    json!({ "upper": up.bound, "cover": up.witness.expand(join)?.to_json_value(join) }),
                )
            }
            Some(up) => {
                b.inconclusive(format!(
                    "k = {k}: bracket [?, {}] does not decide the bound {rhs}",
                    up.bound
                ));
                Ok(json!({ "upper": up.bound }))
            }
            None => {
                b.inconclusive(format!("k = {k}: no search fits the budget"));
                Ok(Value::Null)
            }
        }
    }

    pub fn ans3(
        &mut self,
        instance: &str,
        h: &Hypergraph,
        p: usize,
        ks: &[i64],
    ) -> Result<VerificationReport> {
        let mut b = ReportBuilder::new(ClaimId::Ans3, instance);
        b.put("p", p);
        let Some(r) = h.classify().uniform_rank else {
            b.hypothesis_unmet("the hypergraph is not uniform");
            return Ok(b.finish());
        };
        let e = h.n() as i64 - r as i64 - 1;
        let ph = self.chromatic(h)?;
        let mut gaps = Vec::new();
        for &k in ks {
            if let Some(dp) = self.dp_exact(h, k)? {
                gaps.push((k, ph.eval_i64(k) - dp.value));
            }
        }
        let label = gap_label(&gaps, e);
        b.put(
            "gap",
            json!({
                "exponent": e,
                "values": gaps.iter().map(|(k, g)| json!({ "k": k, "gap": bigint_to_json(g) })).collect::<Vec<_>>(),
                "label": label,
            }),
        );
        if label == "exceeds" {
            b.hypothesis_unmet(format!("observed gaps are not O(k^{e})"));
        }
        let join = h.join_clique(p)?;
        let pj = self.chromatic(&join)?;
        let mut rows = Vec::new();
        let mut unequal = Vec::new();
        for &k in ks {
            let pk = pj.eval_i64(k);
            match self.dp_exact(&join, k)? {
                Some(dp) => {
                    let equal = BigInt::from(dp.value) == pk;
                    if equal {
                        b.check("dp-equals-P", Some(k), true, format!("P_DP = P = {pk}"));
                    } else {
                        unequal.push(k);
                        b.k(k);
                    }
                    rows.push(json!({ "k": k, "P": bigint_to_json(&pk), "dpExact": dp.value, "equal": equal }));
                }
                None => {
                    b.inconclusive(format!("P_DP(H v K_{p}, {k}) exceeds the budget"));
                }
            }
        }
        if !unequal.is_empty() {
            b.inconclusive(format!(
                "equality not observed at k = {unequal:?}; the claim is asymptotic"
            ));
        }
        if rows.is_empty() {
            b.inconclusive("no k in range was checked");
        }
        b.put("rows", rows);
        Ok(b.finish())
    }
}

/// "zero" when every observed gap vanishes, "consistent" when
/// `gap(k) / k^e` does not grow across the observed k, "exceeds" when it
/// does, "undetermined" with fewer than two nonzero points.
fn gap_label(gaps: &[(i64, BigInt)], e: i64) -> &'static str {
    if gaps.iter().all(|(_, g)| g.is_zero()) {
        return "zero";
    }
    if e < 0 || gaps.len() < 2 {
        return "undetermined";
    }
    // gap(k1) k2^e >= gap(k2) k1^e for consecutive k1 < k2
    let ok = gaps.windows(2).all(|w| {
        let (k1, g1) = &w[0];
        let (k2, g2) = &w[1];
        g1 * num_traits::pow(BigInt::from(*k2), e as usize)
            >= g2 * num_traits::pow(BigInt::from(*k1), e as usize)
    });
    if ok {
        "consistent"
    } else {
        "exceeds"
    }
}

#[derive(Default)]
struct Stats {
    qualifying: u64,
    histogram: BTreeMap<usize, u64>,
    /// Smallest violating index with its count.
    violation: Option<(u64, u64)>,
}

impl Stats {
    fn merge(mut self, other: Stats) -> Stats {
        self.qualifying += other.qualifying;
        for (l, c) in other.histogram {
            *self.histogram.entry(l).or_default() += c;
        }
        self.violation = match (self.violation, other.violation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Mixed-radix decoding; the last slot varies fastest.
fn spec_from_index(
    base: &PermCoverSpec,
    slots: &[Slot],
    perms: &[Vec<u32>],
    mut index: u64,
) -> PermCoverSpec {
    let mut spec = base.clone();
    let r = perms.len() as u64;
    for s in slots.iter().rev() {
        spec.edges[s.edge].columns[s.pos] = perms[(index % r) as usize].clone();
        index /= r;
    }
    spec
}

fn random_spec(base: &PermCoverSpec, slots: &[Slot], k: u32, seed: u64, i: u64) -> PermCoverSpec {
    let mut spec = base.clone();
    if i == 0 {
        return spec;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    for s in slots {
        let mut col = identity(k);
        col.shuffle(&mut rng);
        spec.edges[s.edge].columns[s.pos] = col;
    }
    spec
}

/// A random perfect cover of `h`, natural when `seed` is `None`.
pub fn random_cover(h: &Hypergraph, k: u32, seed: Option<u64>) -> Result<Cover> {
    let base = PermCoverSpec::natural(h, k);
    match seed {
        None => base.expand(h),
        Some(s) => random_spec(&base, &all_slots(h), k, s, 1).expand(h),
    }
}

#[cfg(test)]
mod tests {
    use super::super::apex::table1;
    use super::super::report::Status;
    use super::*;

    fn hg(edges: &[&[VertexId]]) -> Hypergraph {
        Hypergraph::from_edges(edges.iter().map(|e| e.to_vec())).unwrap()
    }

    fn c4() -> Hypergraph {
        hg(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]])
    }

    #[test]
    fn gir1_on_cycles() {
        let mut v = Verifier::default();
        let h = crate::instance::cycle(3, 4).unwrap();
        let rep = v.gir1("cycle:3:4", &h).unwrap();
        assert_eq!(rep.status, Status::Verified, "{rep:#?}");
        assert_eq!(rep.payload["threshold"]["n"], json!(2));
        assert_eq!(rep.payload["spot"]["P"], json!(82));
        assert_eq!(rep.payload["spot"]["bound"], json!(81));
        assert!(rep.payload["upperSearch"]["bound"].as_u64().unwrap() <= 81);
        let rep = v.gir1("c4", &c4()).unwrap();
        assert_eq!(rep.status, Status::Verified);
        let odd = crate::instance::cycle(3, 3).unwrap();
        assert_eq!(v.gir1("odd", &odd).unwrap().status, Status::HypothesisUnmet);
    }

    #[test]
    fn gir1_fault_is_caught() {
        let mut v = Verifier::new(VerifyOptions {
            cwd_exponent_offset: 1,
            ..VerifyOptions::default()
        });
        let rep = v.gir1("c4", &c4()).unwrap();
        assert_eq!(rep.status, Status::Violated);
        assert!(rep.payload.contains_key("counterexample"));
    }

    #[test]
    fn evencyc_examples() {
        let mut v = Verifier::default();
        let rep = v.evencyc("c4", &c4(), 0).unwrap();
        assert_eq!(rep.status, Status::Verified, "{rep:#?}");
        assert_eq!(rep.payload["threshold"]["n"], json!(2));
        assert_eq!(rep.payload["witnesses"]["3"]["count"], json!(15));
        let mixed = hg(&[&[1, 2, 3], &[1, 2]]);
        let rep = v.evencyc("mixed", &mixed, 0).unwrap();
        assert_eq!(rep.status, Status::Verified, "{rep:#?}");
        let k3 = hg(&[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(
            v.evencyc("k3", &k3, 0).unwrap().status,
            Status::HypothesisUnmet
        );
        assert_eq!(
            v.prop1p1("k3", &k3, 0).unwrap().status,
            Status::HypothesisUnmet
        );
        assert_eq!(v.prop1p1("c4", &c4(), 1).unwrap().status, Status::Verified);
    }

    #[test]
    fn lemma9_reports_discrepancy_without_failing() {
        let mut v = Verifier::default();
        let k3 = hg(&[&[1, 2], &[2, 3], &[1, 3]]);
        let rep = v.lemma9("k3", &k3, 0, None).unwrap();
        assert_eq!(rep.status, Status::Verified);
        assert!(rep.notes.iter().any(|n| n.contains("differs")));
    }

    #[test]
    fn join_identity_spot() {
        let mut v = Verifier::default();
        let rep = v.join_identity("c4", &c4(), 1, &[4]).unwrap();
        assert_eq!(rep.status, Status::Verified);
        let spot = rep.checks.iter().find(|c| c.name == "spot").unwrap();
        assert_eq!(spot.detail, "72 = 72");
    }

    #[test]
    fn level_and_lemma2p2_on_table1() {
        let mut v = Verifier::default();
        let (_, ac) = table1().unwrap();
        assert_eq!(v.level("table1", &ac).unwrap().status, Status::Verified);
        let rep = v.lemma2p2("table1", &ac).unwrap();
        assert_eq!(rep.status, Status::HypothesisUnmet, "{rep:#?}");
        assert_eq!(rep.payload["s"], json!(2));
        assert!(rep.payload.contains_key("readings"));
    }

    #[test]
    fn lemma2p1_single_edge_k2() {
        let mut v = Verifier::default();
        let h = hg(&[&[0, 1, 2]]);
        let rep = v.lemma2p1("edge", &h, 2).unwrap();
        assert_eq!(rep.status, Status::Verified, "{rep:#?}");
        assert_eq!(rep.payload["coverage"]["coversExamined"], json!(32));
    }

    #[test]
    fn co2p1_f_shape() {
        let h = hg(&[&[0, 1, 2], &[2, 3, 4]]);
        for p in 1..=3 {
            let f = Verifier::co2p1_f(&h, p, 3).unwrap();
            assert_eq!(f.leading(), Some(&BigInt::from(2 * p as i64)));
            assert_eq!(f.degree(), Some(5 - 3 - 1 + p));
        }
    }

    #[test]
    fn gap_labels() {
        let z = |v: &[(i64, i64)]| {
            v.iter()
                .map(|&(k, g)| (k, BigInt::from(g)))
                .collect::<Vec<_>>()
        };
        assert_eq!(gap_label(&z(&[(2, 0), (3, 0)]), 1), "zero");
        assert_eq!(gap_label(&z(&[(2, 2), (3, 3)]), 1), "consistent");
        assert_eq!(gap_label(&z(&[(2, 1), (3, 9)]), 1), "exceeds");
    }
}
