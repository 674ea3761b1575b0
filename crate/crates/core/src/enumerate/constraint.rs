use rand::Rng;
use serde_json::{json, Value};

use super::lattice::{annihilator, is_primitive, rank};
use crate::error::{Error, Result};
use crate::rational::{qi, vec_from_json, vec_to_json, Q};
use crate::trees::TropicalDegree;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Point(Vec<Q>),
    /// `base + span(dirs)`, `dirs` primitive and independent.
    Affine { base: Vec<Q>, dirs: Vec<Vec<i64>> },
}

/// `tev_label` must lie in the target (modulo the label's ray for boundary
/// labels).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceConstraint {
    pub label: String,
    pub target: Target,
}

/// Integer rows `A` and right-hand side `A . base` of one constraint.
#[derive(Clone, Debug)]
pub struct ConstraintRows {
    pub rows: Vec<Vec<i64>>,
    pub rhs: Vec<Q>,
}

impl IncidenceConstraint {
    pub fn point(label: impl Into<String>, p: Vec<Q>) -> Self {
        IncidenceConstraint { label: label.into(), target: Target::Point(p) }
    }

    pub fn affine(label: impl Into<String>, base: Vec<Q>, dirs: Vec<Vec<i64>>) -> Self {
        IncidenceConstraint { label: label.into(), target: Target::Affine { base, dirs } }
    }

    fn base(&self) -> &[Q] {
        match &self.target {
            Target::Point(p) => p,
            Target::Affine { base, .. } => base,
        }
    }

    /// Difference space after the quotient by the label's ray, if any.
    fn difference_space(&self, degree: &TropicalDegree) -> Result<Vec<Vec<i64>>> {
        let r = degree.dim();
        if self.base().len() != r {
            return Err(Error::DimensionMismatch(format!(
                "constraint on {:?} has {} coordinates, expected {r}",
                self.label,
                self.base().len()
            )));
        }
        let mut dirs = match &self.target {
            Target::Point(_) => Vec::new(),
            Target::Affine { dirs, .. } => dirs.clone(),
        };
        for d in &dirs {
            if d.len() != r || !is_primitive(d) {
                return Err(Error::invalid(format!(
                    "direction {d:?} of the constraint on {:?} is not a primitive vector in Z^{r}",
                    self.label
                )));
            }
        }
        if rank(&dirs, r) != dirs.len() {
            return Err(Error::invalid(format!("directions of the constraint on {:?} are dependent", self.label)));
        }
        if let Some(u) = degree.ray_of(&self.label) {
            dirs.push(u.to_vec());
            if rank(&dirs, r) < dirs.len() {
                dirs.pop();
            }
        }
        Ok(dirs)
    }

    pub fn codim(&self, degree: &TropicalDegree) -> Result<usize> {
        Ok(degree.dim() - self.difference_space(degree)?.len())
    }

    pub fn rows(&self, degree: &TropicalDegree) -> Result<ConstraintRows> {
        let dirs = self.difference_space(degree)?;
        let rows = annihilator(&dirs, degree.dim());
        let rhs = rows
            .iter()
            .map(|a| a.iter().zip(self.base()).map(|(x, b)| qi(*x) * b).sum())
            .collect();
        Ok(ConstraintRows { rows, rhs })
    }

    pub fn to_json(&self) -> Value {
        match &self.target {
            Target::Point(p) => json!({"label": self.label, "point": vec_to_json(p)}),
            Target::Affine { base, dirs } => json!({
                "label": self.label,
                "affine": {"base": vec_to_json(base), "dirs": dirs},
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let label = v
            .get("label")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::invalid("constraint needs string \"label\""))?
            .to_string();
        if let Some(p) = v.get("point") {
            return Ok(IncidenceConstraint::point(label, vec_from_json(p)?));
        }
        let aff = v
            .get("affine")
            .ok_or_else(|| Error::invalid("constraint needs \"point\" or \"affine\""))?;
        let base = vec_from_json(aff.get("base").unwrap_or(&Value::Null))?;
        let dirs: Vec<Vec<i64>> = serde_json::from_value(aff.get("dirs").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::invalid(format!("bad affine dirs: {e}")))?;
        Ok(IncidenceConstraint::affine(label, base, dirs))
    }
}

pub fn constraints_from_json(v: &Value) -> Result<Vec<IncidenceConstraint>> {
    let arr = match v {
        Value::Array(a) => a,
        Value::Object(o) => o
            .get("constraints")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::invalid("expected an array of constraints"))?,
        _ => return Err(Error::invalid("expected an array of constraints")),
    };
    arr.iter().map(IncidenceConstraint::from_json).collect()
}

/// Range of random integer coordinates.
pub const RANDOM_COORD: i64 = 100_000;

pub fn random_point(rng: &mut impl Rng, r: usize) -> Vec<Q> {
    (0..r).map(|_| qi(rng.random_range(-RANDOM_COORD..=RANDOM_COORD))).collect()
}

/// Direction of the ray `s_i` up to sign: `(1, ..., 1)` for `i = 0`,
/// otherwise `e_i`.
pub fn standard_direction(r: usize, i: usize) -> Vec<i64> {
    (1..=r).map(|k| i64::from(i == 0 || i == k)).collect()
}

/// Affine subspace through a random point spanned by the standard directions
/// `rays` (indices in `0..=r`, distinct, at most `r` of them).
pub fn random_affine(rng: &mut impl Rng, label: &str, r: usize, rays: &[usize]) -> IncidenceConstraint {
    let base = random_point(rng, r);
    let dirs = rays.iter().map(|&i| standard_direction(r, i)).collect();
    IncidenceConstraint::affine(label, base, dirs)
}
