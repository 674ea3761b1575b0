use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::puiseux::{PuiseuxSeries, Valuation};
use crate::rational::{qi, vec_to_json, Q};
use crate::trees::{ParametrizedTropCurve, TropicalDegree};
use crate::tropicalize::CurveInput;

use super::pluecker::AlgPlueckerVector;

/// `num / den`, kept unreduced so that no series division is needed.
#[derive(Clone, Debug)]
pub struct SeriesRatio {
    pub num: PuiseuxSeries,
    pub den: PuiseuxSeries,
}

impl SeriesRatio {
    pub fn new(num: PuiseuxSeries, den: PuiseuxSeries) -> Self {
        SeriesRatio { num, den }
    }

    pub fn series(s: PuiseuxSeries) -> Self {
        SeriesRatio { num: s, den: PuiseuxSeries::one() }
    }

    pub fn mul(&self, other: &SeriesRatio) -> SeriesRatio {
        SeriesRatio {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    /// `self^k` for a signed exponent.
    pub fn powi(&self, k: i64) -> SeriesRatio {
        let e = k.unsigned_abs() as u32;
        if k >= 0 {
            SeriesRatio { num: self.num.pow(e), den: self.den.pow(e) }
        } else {
            SeriesRatio { num: self.den.pow(e), den: self.num.pow(e) }
        }
    }

    pub fn valuation(&self) -> Result<Q> {
        match (self.num.valuation()?, self.den.valuation()?) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Ok(a - b),
            _ => Err(Error::invalid("torus coordinate is zero or undefined")),
        }
    }

    /// Equality as elements of the field: `a d = b c`.
    pub fn same_value(&self, other: &SeriesRatio) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Truncated expansion of the quotient.
    pub fn expand(&self, order: &Q) -> Result<PuiseuxSeries> {
        self.num.div(&self.den, order)
    }

    pub fn to_json(&self) -> Value {
        json!({"num": self.num.to_json(), "den": self.den.to_json()})
    }
}

/// A point of the torus given by one Cox coordinate `X_rho` per ray.
///
/// The `k`-th torus coordinate is `prod_rho X_rho^{u_rho[k]}`; in the
/// projective chart this is `X_k / X_0`. Cox tuples are compared through
/// these coordinates, so the gauge of the Cox description never matters.
#[derive(Clone, Debug)]
pub struct TorusPoint {
    pub cox: Vec<SeriesRatio>,
    pub rays: Vec<Vec<i64>>,
}

impl TorusPoint {
    pub fn from_cox(cox: Vec<SeriesRatio>, degree: &TropicalDegree) -> Self {
        TorusPoint { cox, rays: degree.rays().to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.rays.first().map_or(0, Vec::len)
    }

    pub fn coordinate(&self, k: usize) -> SeriesRatio {
        self.cox
            .iter()
            .zip(&self.rays)
            .fold(SeriesRatio::series(PuiseuxSeries::one()), |acc, (x, u)| {
                if u[k] == 0 {
                    acc
                } else {
                    acc.mul(&x.powi(u[k]))
                }
            })
    }

    pub fn coordinates(&self) -> Vec<SeriesRatio> {
        (0..self.dim()).map(|k| self.coordinate(k)).collect()
    }

    /// `sum_rho nu(X_rho) u_rho`.
    pub fn trop(&self) -> Result<Vec<Q>> {
        let mut acc = vec![qi(0); self.dim()];
        for (x, u) in self.cox.iter().zip(&self.rays) {
            let v = x.valuation()?;
            for (a, ui) in acc.iter_mut().zip(u) {
                *a += &v * qi(*ui);
            }
        }
        Ok(acc)
    }

    pub fn same_point(&self, other: &TorusPoint) -> bool {
        self.dim() == other.dim()
            && (0..self.dim()).all(|k| self.coordinate(k).same_value(&other.coordinate(k)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "cox": self.cox.iter().map(SeriesRatio::to_json).collect::<Vec<_>>(),
            "torus": self.coordinates().iter().map(SeriesRatio::to_json).collect::<Vec<_>>(),
        })
    }
}

fn require_mark(input: &CurveInput, iota: &str) -> Result<()> {
    if input.is_mark(iota) {
        Ok(())
    } else {
        Err(Error::UnknownLabel(iota.to_string()))
    }
}

/// `f(p_iota)`: Cox coordinates `c_rho prod_{l on rho} (a_iota - a_l)^omega(l)`,
/// and `c` itself at `i0`.
pub fn ev_marked(input: &CurveInput, iota: &str) -> Result<TorusPoint> {
    require_mark(input, iota)?;
    let cox = (0..input.degree.rays().len())
        .map(|rho| {
            if iota == input.i0 {
                return SeriesRatio::series(input.c[rho].clone());
            }
            let a = &input.a[iota];
            let mut x = input.c[rho].clone();
            for l in input.degree.labels_on_ray(rho) {
                x = &x * &(a - &input.a[&l.name]).pow(l.omega);
            }
            SeriesRatio::series(x)
        })
        .collect();
    Ok(TorusPoint::from_cox(cox, &input.degree))
}

/// Evaluation through the Plücker coordinates:
/// `c_rho prod_{l on rho} (d(l, iota) / d(l, i0))^omega(l)`.
pub fn ev_marked_extended(
    apl: &AlgPlueckerVector,
    c: &[PuiseuxSeries],
    degree: &TropicalDegree,
    iota: &str,
) -> Result<TorusPoint> {
    if c.len() != degree.rays().len() {
        return Err(Error::DimensionMismatch(format!(
            "{} Cox coordinates for {} rays",
            c.len(),
            degree.rays().len()
        )));
    }
    let i0 = apl.i0();
    let mut cox = Vec::with_capacity(c.len());
    for (rho, c_rho) in c.iter().enumerate() {
        let mut x = SeriesRatio::series(c_rho.clone());
        for l in degree.labels_on_ray(rho) {
            if iota == i0 {
                break;
            }
            let den = apl.get(&l.name, i0)?;
            if den.is_zero() {
                return Err(Error::ZeroDivisor(l.name.clone(), i0.to_string()));
            }
            let ratio = SeriesRatio::new(apl.get(&l.name, iota)?.clone(), den.clone());
            x = x.mul(&ratio.powi(l.omega as i64));
        }
        cox.push(x);
    }
    Ok(TorusPoint::from_cox(cox, degree))
}

/// Position of the vertex carrying the contracted leg `iota`.
pub fn tev_marked(curve: &ParametrizedTropCurve, iota: &str) -> Result<Vec<Q>> {
    if !curve.marks.iter().any(|m| m == iota) {
        return Err(Error::UnknownLabel(iota.to_string()));
    }
    Ok(curve.leg_position(iota)?.clone())
}

/// A point of the torus orbit of the boundary divisor met by label `j`:
/// Cox coordinates for every ray except `excluded`.
#[derive(Clone, Debug)]
pub struct OrbitPoint {
    pub excluded: usize,
    pub cox: Vec<Option<PuiseuxSeries>>,
    pub rays: Vec<Vec<i64>>,
}

impl OrbitPoint {
    /// `sum_{rho != excluded} nu(X_rho) u_rho`, modulo `u_excluded`.
    pub fn trop(&self) -> Result<OrbitClass> {
        let dim = self.rays[self.excluded].len();
        let mut acc = vec![qi(0); dim];
        for (x, u) in self.cox.iter().zip(&self.rays) {
            let Some(x) = x else { continue };
            let v = x
                .valuation()?
                .finite()
                .cloned()
                .ok_or_else(|| Error::invalid("orbit coordinate vanishes"))?;
            for (a, ui) in acc.iter_mut().zip(u) {
                *a += &v * qi(*ui);
            }
        }
        Ok(OrbitClass::new(acc, self.rays[self.excluded].clone()))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "excluded_ray": self.excluded,
            "cox": self.cox.iter().map(|x| x.as_ref().map_or(Value::Null, PuiseuxSeries::to_json)).collect::<Vec<_>>(),
        })
    }
}

/// A class in `T^r / Q u`, represented by any vector of the class.
#[derive(Clone, Debug)]
pub struct OrbitClass {
    pub rep: Vec<Q>,
    pub ray: Vec<i64>,
}

impl OrbitClass {
    pub fn new(rep: Vec<Q>, ray: Vec<i64>) -> Self {
        OrbitClass { rep, ray }
    }

    /// Equal rays and `rep - other.rep` a rational multiple of the ray.
    pub fn same_class(&self, other: &OrbitClass) -> bool {
        if self.ray != other.ray || self.rep.len() != other.rep.len() {
            return false;
        }
        let diff: Vec<Q> = self.rep.iter().zip(&other.rep).map(|(a, b)| a - b).collect();
        let Some(k) = self.ray.iter().position(|x| *x != 0) else {
            return diff.iter().all(Zero::is_zero);
        };
        let lambda = &diff[k] / qi(self.ray[k]);
        diff.iter().zip(&self.ray).all(|(d, u)| *d == &lambda * qi(*u))
    }

    pub fn to_json(&self) -> Value {
        json!({"rep": vec_to_json(&self.rep), "modulo": self.ray})
    }
}

impl PartialEq for OrbitClass {
    fn eq(&self, other: &Self) -> bool {
        self.same_class(other)
    }
}

fn label_ray(degree: &TropicalDegree, j: &str) -> Result<usize> {
    degree
        .label(j)
        .map(|l| l.ray)
        .ok_or_else(|| Error::UnknownLabel(j.to_string()))
}

/// `(c_rho prod_{l on rho} (a_j - a_l)^omega(l))_{rho != pi(j)}`.
pub fn ev_boundary(input: &CurveInput, j: &str) -> Result<OrbitPoint> {
    let excluded = label_ray(&input.degree, j)?;
    let a_j = &input.a[j];
    let cox = (0..input.degree.rays().len())
        .map(|rho| {
            (rho != excluded).then(|| {
                let mut x = input.c[rho].clone();
                for l in input.degree.labels_on_ray(rho) {
                    x = &x * &(a_j - &input.a[&l.name]).pow(l.omega);
                }
                x
            })
        })
        .collect();
    Ok(OrbitPoint {
        excluded,
        cox,
        rays: input.degree.rays().to_vec(),
    })
}

/// Class of the vertex carrying leg `j` modulo the ray of `j`.
pub fn tev_boundary(curve: &ParametrizedTropCurve, j: &str) -> Result<OrbitClass> {
    let ray = label_ray(&curve.degree, j)?;
    Ok(OrbitClass::new(
        curve.leg_position(j)?.clone(),
        curve.degree.rays()[ray].clone(),
    ))
}
