//! Plücker coordinates and evaluation maps on both sides of tropicalization,
//! and the check that tropicalization commutes with them.

mod evaluation;
mod pluecker;

pub use evaluation::{
    ev_boundary, ev_marked, ev_marked_extended, tev_boundary, tev_marked, OrbitClass, OrbitPoint,
    SeriesRatio, TorusPoint,
};
pub use pluecker::{
    algebraic_pluecker, curve_moduli_point, pluecker_normal_form, raw_tropical_pluecker,
    trop_moduli_point, tropical_pluecker, AlgPlueckerVector, ModuliPoint, Pair, PlueckerVector,
};

use serde_json::{json, Value};

use crate::error::Result;
use crate::rational::{vec_to_json, Q};
use crate::trees::ParametrizedTropCurve;
use crate::tropicalize::{corresponding_curve, CurveInput};

#[derive(Clone, Debug)]
pub enum CheckValue {
    Point(Vec<Q>),
    Orbit(OrbitClass),
    Moduli(Box<ModuliPoint>),
}

impl CheckValue {
    fn to_json(&self) -> Value {
        match self {
            CheckValue::Point(p) => vec_to_json(p),
            CheckValue::Orbit(o) => o.to_json(),
            CheckValue::Moduli(m) => m.to_json(),
        }
    }
}

/// One comparison `trop(algebraic) = tropical`.
#[derive(Clone, Debug)]
pub struct Check {
    pub label: String,
    pub kind: &'static str,
    pub algebraic: CheckValue,
    pub tropical: CheckValue,
    pub pass: bool,
}

#[derive(Clone, Debug, Default)]
pub struct CommutativityReport {
    pub checks: Vec<Check>,
}

impl CommutativityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.all_pass(),
            "checks": self.checks.iter().map(|c| json!({
                "label": c.label,
                "kind": c.kind,
                "pass": c.pass,
                "trop_of_algebraic": c.algebraic.to_json(),
                "tropical": c.tropical.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Compares `trop(ev_i)` with `tev_i` for every mark, `trop(ev_j)` with
/// `tev_j` for every boundary label, and the two moduli points, against the
/// given tropical curve.
pub fn verify_against(input: &CurveInput, curve: &ParametrizedTropCurve) -> Result<CommutativityReport> {
    let mut checks = Vec::new();
    for iota in &input.marks {
        let alg = ev_marked(input, iota)?.trop()?;
        let trop = tev_marked(curve, iota)?;
        checks.push(Check {
            label: iota.clone(),
            kind: "mark",
            pass: alg == trop,
            algebraic: CheckValue::Point(alg),
            tropical: CheckValue::Point(trop),
        });
    }
    for l in input.degree.labels() {
        let alg = ev_boundary(input, &l.name)?.trop()?;
        let trop = tev_boundary(curve, &l.name)?;
        checks.push(Check {
            label: l.name.clone(),
            kind: "boundary",
            pass: alg.same_class(&trop),
            algebraic: CheckValue::Orbit(alg),
            tropical: CheckValue::Orbit(trop),
        });
    }
    let alg = trop_moduli_point(input)?;
    let trop = curve_moduli_point(curve, &input.i0)?;
    checks.push(Check {
        label: input.i0.clone(),
        kind: "moduli",
        pass: alg == trop,
        algebraic: CheckValue::Moduli(Box::new(alg)),
        tropical: CheckValue::Moduli(Box::new(trop)),
    });
    Ok(CommutativityReport { checks })
}

pub fn verify_commutativity(input: &CurveInput) -> Result<CommutativityReport> {
    verify_against(input, &corresponding_curve(input)?)
}
