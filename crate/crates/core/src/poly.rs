//! Dense univariate polynomials in `k` with arbitrary-precision integer
//! coefficients.
//!
//! Coefficients are stored in ascending order: `coeffs[i]` multiplies `k^i`.
//! The vector is empty for the zero polynomial and otherwise ends in a
//! nonzero coefficient.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type ExactRational = BigRational;

/// Upper limit on single-step downward tightening in [`IntPoly::threshold`].
const MAX_TIGHTEN_STEPS: u64 = 1_000_000;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
    Zero,
}

impl Sign {
    pub fn of(x: &BigInt) -> Sign {
        match x.sign() {
            num_bigint::Sign::Plus => Sign::Positive,
            num_bigint::Sign::Minus => Sign::Negative,
            num_bigint::Sign::NoSign => Sign::Zero,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
            Sign::Zero => "0",
        }
    }
}

/// Sign of a polynomial for all sufficiently large `k`, with an explicit
/// integer from which on the sign is guaranteed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Threshold {
    pub sign: Sign,
    /// `None` only for the zero polynomial.
    pub n: Option<BigInt>,
}

impl Serialize for Threshold {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Threshold", 2)?;
        st.serialize_field("sign", &self.sign)?;
        st.serialize_field("n", &self.n.as_ref().map(bigint_to_json))?;
        st.end()
    }
}

impl IntPoly {
    fn normalize(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The indeterminate `k`.
    pub fn k() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPoly {
            coeffs: vec![c.into()],
        }
        .normalize()
    }

    pub fn monomial(c: impl Into<BigInt>, deg: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c;
        IntPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        IntPoly { coeffs }.normalize()
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `k - c`.
    pub fn k_minus(c: i64) -> Self {
        Self::from_i64(&[-c, 1])
    }

    /// `k(k-1)...(k-p+1)`.
    pub fn falling_factorial(p: u32) -> Self {
        (0..p as i64).fold(Self::one(), |acc, i| acc * Self::k_minus(i))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// The leading term as a monomial, zero for the zero polynomial.
    pub fn leading_term(&self) -> IntPoly {
        match self.degree() {
            Some(d) => Self::monomial(self.coeffs[d].clone(), d),
            None => Self::zero(),
        }
    }

    pub fn eval(&self, k: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * k + c)
    }

    pub fn eval_i64(&self, k: i64) -> BigInt {
        self.eval(&BigInt::from(k))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplies by `k^e`.
    pub fn shift_up(&self, e: usize) -> Self {
        if self.is_zero() || e == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Substitutes `k -> k + c`.
    pub fn substitute_shift(&self, c: i64) -> Self {
        let lin = Self::from_i64(&[c, 1]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, a| {
            &(&acc * &lin) + &Self::constant(a.clone())
        })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Sign for large `k` and an explicit `N` such that `sign(p(k))` is that
    /// sign for every integer `k >= N`.
    ///
    /// Starts from the Cauchy root bound `1 + max |a_i / a_d|` and walks
    /// downward while exact evaluation keeps the sign. The result is a valid
    /// threshold, not necessarily the least one.
    pub fn threshold(&self) -> Threshold {
        let Some(lead) = self.leading() else {
            return Threshold {
                sign: Sign::Zero,
                n: None,
            };
        };
        let sign = Sign::of(lead);
        let lead_abs = lead.abs();
        let d = self.coeffs.len() - 1;
        let mut bound = BigInt::one();
        for a in &self.coeffs[..d] {
            let c = a.abs().div_ceil(&lead_abs) + 1;
            if c > bound {
                bound = c;
            }
        }
        let mut n = bound;
        let one = BigInt::one();
        let mut steps = 0;
        while n > one && steps < MAX_TIGHTEN_STEPS {
            let prev = &n - 1;
            if Sign::of(&self.eval(&prev)) != sign {
                break;
            }
            n = prev;
            steps += 1;
        }
        Threshold { sign, n: Some(n) }
    }

    pub fn to_coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

/// `num(k) / den(k)` in lowest terms.
pub fn rational_eval(num: &IntPoly, den: &IntPoly, k: i64) -> Result<ExactRational> {
    let d = den.eval_i64(k);
    if d.is_zero() {
        return Err(Error::ZeroDenominator(k));
    }
    Ok(BigRational::new(num.eval_i64(k), d))
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = abs.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "k")?,
                (1, false) => write!(f, "{abs}k")?,
                (_, true) => write!(f, "k^{i}")?,
                (_, false) => write!(f, "{abs}k^{i}")?,
            }
        }
        Ok(())
    }
}

/// Serializes a big integer as a JSON number of arbitrary length.
pub fn bigint_to_json(x: &BigInt) -> serde_json::Value {
    let n: serde_json::Number = x
        .to_string()
        .parse()
        .expect("decimal integers are valid json numbers");
    serde_json::Value::Number(n)
}

pub fn rational_to_json(q: &ExactRational) -> serde_json::Value {
    if q.is_integer() {
        bigint_to_json(q.numer())
    } else {
        serde_json::Value::String(format!("{}/{}", q.numer(), q.denom()))
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let values: Vec<serde_json::Value> = self.coeffs.iter().map(bigint_to_json).collect();
        values.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let values = Vec::<serde_json::Value>::deserialize(d)?;
        let coeffs = values
            .into_iter()
            .map(|v| {
                let text = match v {
                    serde_json::Value::Number(n) => n.to_string(),
                    serde_json::Value::String(s) => s,
                    other => return Err(D::Error::custom(format!("bad coefficient {other}"))),
                };
                text.parse::<BigInt>()
                    .map_err(|e| D::Error::custom(format!("bad coefficient {text}: {e}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(IntPoly::from_coeffs(coeffs))
    }
}

impl PartialOrd for Sign {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Sign {
    fn cmp(&self, other: &Self) -> Ordering {
        let rank = |s: &Sign| match s {
            Sign::Negative => 0,
            Sign::Zero => 1,
            Sign::Positive => 2,
        };
        rank(self).cmp(&rank(other))
    }
}
