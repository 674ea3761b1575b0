//! Finite generalized power series `sum q_e t^e` with rational exponents and
//! rational coefficients, the valuation `nu`, and precision-tracked inversion.
//!
//! A series may carry a precision bound `B`: terms with exponent `>= B` are
//! unknown. Exact series have no bound. Every operation keeps the canonical
//! form (no zero coefficients, no stored exponent at or beyond the bound), so
//! structural equality is equality of series.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{fmt_rat, rat_from_json, rat_to_json, Q};

/// Value of `nu`: a rational or `+inf` (the valuation of zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(Q),
    Infinite,
}

impl Valuation {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn min(self, other: Valuation) -> Valuation {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Valuation::Finite(v) => rat_to_json(v),
            Valuation::Infinite => Value::String("inf".into()),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) if s == "inf" => Ok(Valuation::Infinite),
            other => rat_from_json(other).map(Valuation::Finite),
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => f.write_str(&fmt_rat(v)),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PuiseuxSeries {
    terms: BTreeMap<Q, Q>,
    precision: Option<Q>,
}

impl PuiseuxSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, Q::zero())
    }

    /// `c * t^e`.
    pub fn monomial(c: Q, e: Q) -> Self {
        Self::from_terms([(e, c)])
    }

    /// Exact series from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(terms: impl IntoIterator<Item = (Q, Q)>) -> Self {
        let mut map: BTreeMap<Q, Q> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(Q::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        PuiseuxSeries {
            terms: map,
            precision: None,
        }
    }

    /// Forgets every term with exponent `>= bound` (tightens an existing bound).
    pub fn truncated(mut self, bound: Q) -> Self {
        let bound = match self.precision.take() {
            Some(b) if b < bound => b,
            _ => bound,
        };
        self.terms.retain(|e, _| *e < bound);
        self.precision = Some(bound);
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Q, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn precision(&self) -> Option<&Q> {
        self.precision.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_none()
    }

    /// True only for the exact zero series.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.precision.is_none()
    }

    pub fn coefficient(&self, e: &Q) -> Option<&Q> {
        self.terms.get(e)
    }

    /// `nu(a)`: the least exponent with nonzero coefficient, `inf` for zero.
    ///
    /// Fails with `PrecisionLoss` when every known term cancelled and the
    /// leading exponent hides behind the precision bound.
    pub fn valuation(&self) -> Result<Valuation> {
        match (self.terms.keys().next(), &self.precision) {
            (Some(e), _) => Ok(Valuation::Finite(e.clone())),
            (None, None) => Ok(Valuation::Infinite),
            (None, Some(b)) => Err(Error::PrecisionLoss(format!(
                "no known term below t^{}",
                fmt_rat(b)
            ))),
        }
    }

    /// Leading `(exponent, coefficient)`, if a term is known.
    pub fn leading_term(&self) -> Option<(&Q, &Q)> {
        self.terms.iter().next()
    }

    /// Lower bound on the true valuation used for precision bookkeeping.
    fn order_bound(&self) -> Option<Q> {
        self.terms
            .keys()
            .next()
            .cloned()
            .or_else(|| self.precision.clone())
    }

    fn with_bound(terms: BTreeMap<Q, Q>, precision: Option<Q>) -> Self {
        let mut out = PuiseuxSeries { terms, precision };
        out.terms.retain(|_, c| !c.is_zero());
        if let Some(b) = &out.precision {
            out.terms.retain(|e, _| e < b);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = PuiseuxSeries::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return PuiseuxSeries::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, x)| (e.clone(), x * c))
            .collect();
        PuiseuxSeries {
            terms,
            precision: self.precision.clone(),
        }
    }

    /// Multiplies by `t^shift`.
    pub fn shift(&self, shift: &Q) -> Self {
        PuiseuxSeries {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + shift, c.clone()))
                .collect(),
            precision: self.precision.as_ref().map(|b| b + shift),
        }
    }

    /// Inverse known modulo `t^order` after multiplying back: the result `b`
    /// carries precision `nu(b) + order` and satisfies `a*b = 1 + O(t^order)`.
    pub fn inverse(&self, order: &Q) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let (lead_e, lead_c) = match self.leading_term() {
            Some((e, c)) => (e.clone(), c.clone()),
            None => {
                return Err(Error::PrecisionLoss(
                    "cannot invert a series with unknown leading term".into(),
                ))
            }
        };
        if !order.is_positive() {
            return Err(Error::PrecisionLoss(format!(
                "inverse order must be positive, got {}",
                fmt_rat(order)
            )));
        }
        // a = lead_c * t^lead_e * (1 + u) with every exponent of u positive.
        let mut rel_prec = order.clone();
        if let Some(b) = &self.precision {
            let rel = b - &lead_e;
            if rel < rel_prec {
                rel_prec = rel;
            }
        }
        let inv_c = lead_c.recip();
        let u: BTreeMap<Q, Q> = self
            .terms
            .iter()
            .skip(1)
            .map(|(e, c)| (e - &lead_e, c * &inv_c))
            .filter(|(e, _)| *e < rel_prec)
            .collect();
        // Fixed point of g = 1 - u*g, truncated at rel_prec; each pass fixes
        // at least one more multiple of the smallest exponent of u.
        let mut g: BTreeMap<Q, Q> = BTreeMap::from([(Q::zero(), Q::one())]);
        loop {
            let mut next: BTreeMap<Q, Q> = BTreeMap::from([(Q::zero(), Q::one())]);
            for (eu, cu) in &u {
                for (eg, cg) in &g {
                    let e = eu + eg;
                    if e >= rel_prec {
                        break;
                    }
                    *next.entry(e).or_insert_with(Q::zero) -= cu * cg;
                }
            }
            next.retain(|_, c| !c.is_zero());
            if next == g {
                break;
            }
            g = next;
        }
        let terms = g
            .into_iter()
            .map(|(e, c)| (e - &lead_e, c * &inv_c))
            .collect();
        Ok(Self::with_bound(terms, Some(rel_prec - &lead_e)))
    }

    /// `self / other` with `other` inverted to the given relative order.
    pub fn div(&self, other: &Self, order: &Q) -> Result<Self> {
        Ok(self * &other.inverse(order)?)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!({"e": rat_to_json(e), "c": rat_to_json(c)}))
            .collect();
        match &self.precision {
            None => Value::Array(terms),
            Some(b) => json!({"terms": terms, "prec": rat_to_json(b)}),
        }
    }

    /// Accepts the exact array form and the `{"terms", "prec"}` object form.
    pub fn from_json(v: &Value) -> Result<Self> {
        let (terms, prec) = match v {
            Value::Array(ts) => (ts, None),
            Value::Object(obj) => {
                let ts = obj
                    .get("terms")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::invalid("series object needs a \"terms\" array"))?;
                let prec = obj.get("prec").map(rat_from_json).transpose()?;
                (ts, prec)
            }
            other => return Err(Error::invalid(format!("not a series: {other}"))),
        };
        let mut map = BTreeMap::new();
        let mut last: Option<Q> = None;
        for t in terms {
            let e = rat_from_json(t.get("e").ok_or_else(|| Error::invalid("term without \"e\""))?)?;
            let c = rat_from_json(t.get("c").ok_or_else(|| Error::invalid("term without \"c\""))?)?;
            if last.as_ref().is_some_and(|l| *l >= e) {
                return Err(Error::invalid("series exponents must be strictly increasing"));
            }
            if c.is_zero() {
                return Err(Error::invalid("series coefficients must be nonzero"));
            }
            if prec.as_ref().is_some_and(|b| e >= *b) {
                return Err(Error::invalid("series term at or beyond its precision bound"));
            }
            last = Some(e.clone());
            map.insert(e, c);
        }
        Ok(PuiseuxSeries {
            terms: map,
            precision: prec,
        })
    }
}

impl Serialize for PuiseuxSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PuiseuxSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        PuiseuxSeries::from_json(&v).map_err(serde::de::Error::custom)
    }
}

fn min_bound(a: Option<Q>, b: Option<Q>) -> Option<Q> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x < y { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Add<&PuiseuxSeries> for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn add(self, rhs: &PuiseuxSeries) -> PuiseuxSeries {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            *terms.entry(e.clone()).or_insert_with(Q::zero) += c;
        }
        let prec = min_bound(self.precision.clone(), rhs.precision.clone());
        PuiseuxSeries::with_bound(terms, prec)
    }
}

impl Neg for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn neg(self) -> PuiseuxSeries {
        PuiseuxSeries {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            precision: self.precision.clone(),
        }
    }
}

impl Sub<&PuiseuxSeries> for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn sub(self, rhs: &PuiseuxSeries) -> PuiseuxSeries {
        self + &(-rhs)
    }
}

impl Mul<&PuiseuxSeries> for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn mul(self, rhs: &PuiseuxSeries) -> PuiseuxSeries {
        if self.is_zero() || rhs.is_zero() {
            return PuiseuxSeries::zero();
        }
        // An unknown tail of one factor pollutes the product from
        // (its bound + the other factor's order) on.
        let from_self = self
            .precision
            .as_ref()
            .and_then(|b| rhs.order_bound().map(|v| b + v));
        let from_rhs = rhs
            .precision
            .as_ref()
            .and_then(|b| self.order_bound().map(|v| b + v));
        let prec = min_bound(from_self, from_rhs);
        let mut terms: BTreeMap<Q, Q> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea + eb;
                if prec.as_ref().is_some_and(|b| e >= *b) {
                    break;
                }
                *terms.entry(e).or_insert_with(Q::zero) += ca * cb;
            }
        }
        PuiseuxSeries::with_bound(terms, prec)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for PuiseuxSeries {
            type Output = PuiseuxSeries;
            fn $method(self, rhs: PuiseuxSeries) -> PuiseuxSeries {
                (&self).$method(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn neg(self) -> PuiseuxSeries {
        -&self
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() && self.precision.is_none() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coeff = fmt_rat(&mag);
            if e.is_zero() {
                f.write_str(&coeff)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{coeff}*")?;
                }
                if e.is_one() {
                    f.write_str("t")?;
                } else if e.is_integer() {
                    write!(f, "t^{}", fmt_rat(e))?;
                } else {
                    write!(f, "t^({})", fmt_rat(e))?;
                }
            }
        }
        if let Some(b) = &self.precision {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "O(t^{})", fmt_rat(b))?;
        }
        Ok(())
    }
}
