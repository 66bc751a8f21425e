use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::chromatic::{chromatic_dc, ChromaticCache};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::poly::{rational_eval, ExactRational, IntPoly};

/// `k^{n-(r-1)m} (k^{r-1} - 1)^m`, stored as `numerator / k^denominator_power`
/// because the exponent of `k` can be negative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CwdBound {
    pub numerator: IntPoly,
    pub denominator_power: usize,
    /// `n - (r-1)m`, plus any injected offset.
    pub exponent: i64,
}

impl CwdBound {
    /// The bound as a polynomial when the exponent is nonnegative.
    pub fn as_poly(&self) -> Option<&IntPoly> {
        (self.denominator_power == 0).then_some(&self.numerator)
    }

    pub fn at(&self, k: i64) -> Result<ExactRational> {
        rational_eval(
            &self.numerator,
            &IntPoly::monomial(1, self.denominator_power),
            k,
        )
    }
}

pub fn cwd_bound(h: &Hypergraph) -> Result<CwdBound> {
    cwd_bound_with_offset(h, 0)
}

/// [`cwd_bound`] with `offset` added to the exponent of `k`. Only used for
/// fault-injection runs of the audit.
pub fn cwd_bound_with_offset(h: &Hypergraph, offset: i64) -> Result<CwdBound> {
    let r = h.classify().uniform_rank.ok_or(Error::NonUniform)?;
    let m = h.m();
    let exponent = h.n() as i64 - ((r - 1) * m) as i64 + offset;
    let base = &IntPoly::monomial(1, r - 1) - &IntPoly::one();
    let power = base.pow(m as u32);
    Ok(if exponent >= 0 {
        CwdBound {
            numerator: power.shift_up(exponent as usize),
            denominator_power: 0,
            exponent,
        }
    } else {
        CwdBound {
            numerator: power,
            denominator_power: exponent.unsigned_abs() as usize,
            exponent,
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cwd1Branch {
    Chromatic,
    Quotient,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cwd1Value {
    pub k: i64,
    pub value: ExactRational,
    pub branch: Cwd1Branch,
    pub chromatic: BigInt,
    pub quotient: ExactRational,
}

/// Numerator and denominator of the second branch:
/// `((k^{n_e-1} - 1) P(H-e) - k^{n_e-2} P(H)) / (k^{n_e-2} (k - 1))`.
pub fn cwd1_quotient(
    h: &Hypergraph,
    e: usize,
    cache: &mut ChromaticCache,
) -> Result<(IntPoly, IntPoly)> {
    let ne = h.edge(e)?.len();
    if ne < 2 {
        return Err(Error::DegenerateEdge(e));
    }
    let p = chromatic_dc(h, cache)?;
    let p_del = chromatic_dc(&h.delete_edge(e)?, cache)?;
    let a = &IntPoly::monomial(1, ne - 1) - &IntPoly::one();
    let num = &(&a * &p_del) - &p.shift_up(ne - 2);
    let den = IntPoly::k_minus(1).shift_up(ne - 2);
    Ok((num, den))
}

/// Whether `c(H - e) = |e| - 1`.
pub fn cwd1_hypothesis(h: &Hypergraph, e: usize) -> Result<bool> {
    let ne = h.edge(e)?.len();
    Ok(h.delete_edge(e)?.components().count() == ne - 1)
}

/// `min{P(H,k), quotient(k)}` for covers natural on `H - e`.
pub fn cwd1_value(
    h: &Hypergraph,
    e: usize,
    k: i64,
    cache: &mut ChromaticCache,
) -> Result<Cwd1Value> {
    if !cwd1_hypothesis(h, e)? {
        return Err(Error::HypothesisUnmet(format!(
            "c(H - e) != |e| - 1 for edge {e}"
        )));
    }
    if k < 2 {
        return Err(Error::InvalidParameters("k must be at least 2".into()));
    }
    let (num, den) = cwd1_quotient(h, e, cache)?;
    let quotient = rational_eval(&num, &den, k)?;
    let chromatic = chromatic_dc(h, cache)?.eval_i64(k);
    let as_rational = ExactRational::from_integer(chromatic.clone());
    let (value, branch) = if as_rational <= quotient {
        (as_rational, Cwd1Branch::Chromatic)
    } else {
        (quotient.clone(), Cwd1Branch::Quotient)
    };
    debug_assert!(!value.denom().is_zero());
    Ok(Cwd1Value {
        k,
        value,
        branch,
        chromatic,
        quotient,
    })
}
