use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::puiseux::{PuiseuxSeries, Valuation};
use crate::rational::Q;
use crate::trees::TropicalDegree;

/// A labeled parametrized marked curve in standard form.
///
/// The underlying line is `P^1` with `p_{i0} = (0:1)` and every other point
/// `p_l = (1:a_l)`. The morphism is pinned down by the boundary labels and the
/// image of `p_{i0}`, given by `c`: one nonzero series per ray (homogeneous
/// coordinates `c_0..c_r` in the projective case, Cox coordinates otherwise).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveInput {
    pub degree: TropicalDegree,
    pub marks: Vec<String>,
    pub i0: String,
    pub a: BTreeMap<String, PuiseuxSeries>,
    pub c: Vec<PuiseuxSeries>,
}

impl CurveInput {
    pub fn new(
        degree: TropicalDegree,
        marks: Vec<String>,
        i0: impl Into<String>,
        a: BTreeMap<String, PuiseuxSeries>,
        c: Vec<PuiseuxSeries>,
    ) -> Result<Self> {
        let input = CurveInput {
            degree,
            marks,
            i0: i0.into(),
            a,
            c,
        };
        input.validate()?;
        Ok(input)
    }

    pub fn dim(&self) -> usize {
        self.degree.dim()
    }

    /// `L0 = I ∪ J`: marks in their given order, then the degree labels.
    pub fn labels(&self) -> Vec<String> {
        self.marks
            .iter()
            .cloned()
            .chain(self.degree.labels().iter().map(|l| l.name.clone()))
            .collect()
    }

    pub fn is_mark(&self, label: &str) -> bool {
        self.marks.iter().any(|m| m == label)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.is_mark(&self.i0) {
            return Err(Error::invalid(format!("i0 {:?} is not a mark", self.i0)));
        }
        let mut seen = BTreeSet::new();
        for l in self.labels() {
            if !seen.insert(l.clone()) {
                return Err(Error::invalid(format!("label {l:?} occurs twice in I ∪ J")));
            }
        }
        if seen.len() < 3 {
            return Err(Error::invalid("need at least three marks and labels in total"));
        }
        for l in &seen {
            if *l != self.i0 && !self.a.contains_key(l) {
                return Err(Error::invalid(format!("missing coordinate a for {l:?}")));
            }
        }
        for l in self.a.keys() {
            if *l == self.i0 {
                return Err(Error::invalid("i0 sits at (0:1) and takes no coordinate a"));
            }
            if !seen.contains(l) {
                return Err(Error::UnknownLabel(l.clone()));
            }
        }
        if self.c.len() != self.degree.rays().len() {
            return Err(Error::invalid(format!(
                "expected {} entries in c, found {}",
                self.degree.rays().len(),
                self.c.len()
            )));
        }
        for (k, c) in self.c.iter().enumerate() {
            if c.valuation()?.is_infinite() {
                return Err(Error::invalid(format!("c[{k}] must be nonzero")));
            }
        }
        let names: Vec<&String> = self.a.keys().collect();
        for (x, l) in names.iter().enumerate() {
            for m in &names[x + 1..] {
                if (&self.a[*l] - &self.a[*m]).valuation()?.is_infinite() {
                    return Err(Error::DuplicatePoint((*l).clone(), (*m).clone()));
                }
            }
        }
        Ok(())
    }

    /// `(nu(c_rho))_rho`.
    pub fn c_valuations(&self) -> Result<Vec<Q>> {
        self.c
            .iter()
            .map(|c| match c.valuation()? {
                Valuation::Finite(v) => Ok(v),
                Valuation::Infinite => Err(Error::invalid("c must be nonzero")),
            })
            .collect()
    }

    /// `sum_rho nu(c_rho) u_rho`: the tropical image of `p_{i0}`.
    pub fn anchor(&self) -> Result<Vec<Q>> {
        Ok(self.degree.combine_rays(&self.c_valuations()?))
    }

    pub fn to_json(&self) -> Value {
        let a: Map<String, Value> = self
            .a
            .iter()
            .map(|(k, v)| (k.clone(), v.to_json()))
            .collect();
        json!({
            "r": self.dim(),
            "degree": self.degree.to_json(),
            "i0": self.i0,
            "marks": self.marks,
            "a": a,
            "c": self.c.iter().map(PuiseuxSeries::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let r = v
            .get("r")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::invalid("input needs integer \"r\""))? as usize;
        let degree = TropicalDegree::from_json(
            v.get("degree").ok_or_else(|| Error::invalid("input needs \"degree\""))?,
            r,
        )?;
        let i0 = v
            .get("i0")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::invalid("input needs string \"i0\""))?
            .to_string();
        let marks: Vec<String> = serde_json::from_value(v.get("marks").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::invalid(format!("bad marks: {e}")))?;
        let a = v
            .get("a")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::invalid("input needs object \"a\""))?
            .iter()
            .map(|(k, s)| Ok((k.clone(), PuiseuxSeries::from_json(s)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let c = v
            .get("c")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::invalid("input needs array \"c\""))?
            .iter()
            .map(PuiseuxSeries::from_json)
            .collect::<Result<Vec<_>>>()?;
        CurveInput::new(degree, marks, i0, a, c)
    }
}
