use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::puiseux::{PuiseuxSeries, Valuation};
use crate::rational::{qi, rat_from_json, rat_to_json, vec_from_json, vec_to_json, Q};
use crate::trees::{MarkedMetricTree, ParametrizedTropCurve};
use crate::tropicalize::CurveInput;

pub type Pair = (String, String);

/// A point of `R^{dPair(L0)} / Im Phi`, `Phi(x) = (x_l + x_m)`, in normal form.
///
/// Both orientations of every pair are stored. Pairs containing `i0` are 0,
/// and so is the pin: the lexicographically smallest pair of labels other
/// than `i0`. Two vectors are in the same class iff their normal forms agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlueckerVector {
    i0: String,
    coords: BTreeMap<Pair, Q>,
}

impl PlueckerVector {
    pub fn i0(&self) -> &str {
        &self.i0
    }

    pub fn coords(&self) -> &BTreeMap<Pair, Q> {
        &self.coords
    }

    pub fn get(&self, l: &str, m: &str) -> Option<&Q> {
        self.coords.get(&(l.to_string(), m.to_string()))
    }

    pub fn labels(&self) -> BTreeSet<&str> {
        self.coords.keys().map(|(l, _)| l.as_str()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.values().all(|v| *v == qi(0))
    }

    /// Pairs `l < m` not containing `i0`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coords
                .iter()
                .filter(|((l, m), _)| l < m && *l != self.i0 && *m != self.i0)
                .map(|((l, m), v)| json!({"pair": [l, m], "v": rat_to_json(v)}))
                .collect(),
        )
    }
}

fn labels_of(raw: &BTreeMap<Pair, Q>) -> BTreeSet<String> {
    raw.keys().flat_map(|(l, m)| [l.clone(), m.clone()]).collect()
}

/// Subtracts `Phi(x)` with `x_m = raw(i0, m)` for `m != i0`, then the
/// remaining one-parameter gauge `x = (c on i0, -c elsewhere)` to zero the pin.
pub fn pluecker_normal_form(raw: &BTreeMap<Pair, Q>, i0: &str) -> Result<PlueckerVector> {
    let labels = labels_of(raw);
    if !labels.contains(i0) {
        return Err(Error::UnknownLabel(i0.to_string()));
    }
    let get = |l: &String, m: &String| -> Result<&Q> {
        raw.get(&(l.clone(), m.clone()))
            .ok_or_else(|| Error::DimensionMismatch(format!("missing pair ({l}, {m})")))
    };
    for l in &labels {
        for m in &labels {
            if l != m && get(l, m)? != get(m, l)? {
                return Err(Error::AsymmetricInput(l.clone(), m.clone()));
            }
        }
    }
    let i0s = i0.to_string();
    let x: BTreeMap<&String, Q> = labels
        .iter()
        .filter(|l| **l != i0s)
        .map(|l| Ok((l, get(&i0s, l)?.clone())))
        .collect::<Result<_>>()?;
    let shifted = |l: &String, m: &String| -> Result<Q> {
        if *l == i0s || *m == i0s {
            return Ok(qi(0));
        }
        Ok(get(l, m)? - &x[l] - &x[m])
    };
    let others: Vec<&String> = labels.iter().filter(|l| **l != i0s).collect();
    let pin = if others.len() >= 2 {
        shifted(others[0], others[1])?
    } else {
        qi(0)
    };
    let mut coords = BTreeMap::new();
    for l in &labels {
        for m in &labels {
            if l == m {
                continue;
            }
            let v = if *l == i0s || *m == i0s {
                qi(0)
            } else {
                shifted(l, m)? - &pin
            };
            coords.insert((l.clone(), m.clone()), v);
        }
    }
    Ok(PlueckerVector { i0: i0s, coords })
}

/// `(-dist(l, m) / 2)` over ordered pairs of leg labels.
pub fn raw_tropical_pluecker(tree: &MarkedMetricTree) -> Result<BTreeMap<Pair, Q>> {
    let labels: Vec<&str> = tree.labels().collect();
    let mut raw = BTreeMap::new();
    for l in &labels {
        let v = tree.leg_vertex(l)?;
        let dist = tree.distances_from(v);
        for m in &labels {
            if l == m {
                continue;
            }
            let w = tree.leg_vertex(m)?;
            let d = dist[w]
                .clone()
                .ok_or_else(|| Error::invalid("tree is disconnected"))?;
            raw.insert((l.to_string(), m.to_string()), -d / qi(2));
        }
    }
    Ok(raw)
}

pub fn tropical_pluecker(tree: &MarkedMetricTree, i0: &str) -> Result<PlueckerVector> {
    pluecker_normal_form(&raw_tropical_pluecker(tree)?, i0)
}

/// The `2x2` minors `d(l, m)` of the standard-form matrix with columns
/// `(0, 1)` for `i0` and `(1, a_m)` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgPlueckerVector {
    i0: String,
    coords: BTreeMap<Pair, PuiseuxSeries>,
}

impl AlgPlueckerVector {
    pub fn from_coords(i0: impl Into<String>, coords: BTreeMap<Pair, PuiseuxSeries>) -> Self {
        AlgPlueckerVector { i0: i0.into(), coords }
    }

    pub fn i0(&self) -> &str {
        &self.i0
    }

    pub fn coords(&self) -> &BTreeMap<Pair, PuiseuxSeries> {
        &self.coords
    }

    pub fn get(&self, l: &str, m: &str) -> Result<&PuiseuxSeries> {
        self.coords
            .get(&(l.to_string(), m.to_string()))
            .ok_or_else(|| Error::DimensionMismatch(format!("missing pair ({l}, {m})")))
    }

    /// Coordinatewise valuation; every minor must be nonzero.
    pub fn tropicalize(&self) -> Result<BTreeMap<Pair, Q>> {
        self.coords
            .iter()
            .map(|(k, d)| match d.valuation()? {
                Valuation::Finite(v) => Ok((k.clone(), v)),
                Valuation::Infinite => Err(Error::ZeroDivisor(k.0.clone(), k.1.clone())),
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coords
                .iter()
                .map(|((l, m), d)| json!({"pair": [l, m], "d": d.to_json()}))
                .collect(),
        )
    }
}

pub fn algebraic_pluecker(input: &CurveInput) -> Result<AlgPlueckerVector> {
    input.validate()?;
    let labels = input.labels();
    let mut coords = BTreeMap::new();
    for l in &labels {
        for m in &labels {
            if l == m {
                continue;
            }
            let d = if *l == input.i0 {
                -PuiseuxSeries::one()
            } else if *m == input.i0 {
                PuiseuxSeries::one()
            } else {
                &input.a[m] - &input.a[l]
            };
            coords.insert((l.clone(), m.clone()), d);
        }
    }
    Ok(AlgPlueckerVector {
        i0: input.i0.clone(),
        coords,
    })
}

/// Plücker vector together with the image of the `i0` leg.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliPoint {
    pub pluecker: PlueckerVector,
    pub anchor: Vec<Q>,
}

impl ModuliPoint {
    pub fn to_json(&self) -> Value {
        json!({"pluecker": self.pluecker.to_json(), "anchor": vec_to_json(&self.anchor)})
    }

    pub fn from_json(v: &Value, i0: &str, labels: &[String]) -> Result<Self> {
        let mut raw: BTreeMap<Pair, Q> = BTreeMap::new();
        for l in labels {
            for m in labels {
                if l != m {
                    raw.insert((l.clone(), m.clone()), qi(0));
                }
            }
        }
        for entry in v
            .get("pluecker")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::invalid("moduli point needs array \"pluecker\""))?
        {
            let pair: (String, String) = serde_json::from_value(entry.get("pair").cloned().unwrap_or(Value::Null))
                .map_err(|e| Error::invalid(format!("bad pair: {e}")))?;
            let val = rat_from_json(entry.get("v").unwrap_or(&Value::Null))?;
            for key in [(pair.0.clone(), pair.1.clone()), (pair.1, pair.0)] {
                if !raw.contains_key(&key) {
                    return Err(Error::UnknownLabel(format!("{key:?}")));
                }
                raw.insert(key, val.clone());
            }
        }
        Ok(ModuliPoint {
            pluecker: pluecker_normal_form(&raw, i0)?,
            anchor: vec_from_json(v.get("anchor").unwrap_or(&Value::Null))?,
        })
    }
}

/// Normal form of `nu(d)` together with `sum nu(c_rho) u_rho`.
pub fn trop_moduli_point(input: &CurveInput) -> Result<ModuliPoint> {
    let apl = algebraic_pluecker(input)?;
    Ok(ModuliPoint {
        pluecker: pluecker_normal_form(&apl.tropicalize()?, &input.i0)?,
        anchor: input.anchor()?,
    })
}

/// Tropical Plücker vector of the tree together with `tev_{i0}`.
pub fn curve_moduli_point(curve: &ParametrizedTropCurve, i0: &str) -> Result<ModuliPoint> {
    Ok(ModuliPoint {
        pluecker: tropical_pluecker(&curve.tree, i0)?,
        anchor: curve.leg_position(i0)?.clone(),
    })
}
