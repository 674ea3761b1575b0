use num_integer::Integer;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{qi, Q};

/// One end label `j` of a tropical degree: it sits on ray `ray` with
/// intersection multiplicity `omega`, so its direction is `omega * u_ray`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeLabel {
    pub name: String,
    pub ray: usize,
    pub omega: u32,
}

/// A tangency condition `(J, pi, omega)` over explicit primitive rays in `Z^r`.
///
/// The projective degree `d` in `T^r` uses the rays `s_0 = (-1, ..., -1)` and
/// `s_i = e_i`, the images of the standard basis of `R^{r+1}` in the chart
/// that subtracts coordinate 0 and drops it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalDegree {
    dim: usize,
    rays: Vec<Vec<i64>>,
    labels: Vec<DegreeLabel>,
    projective_d: Option<u32>,
}

/// Name of the projective label `(i, j)`: the `j`-th intersection with `H_i`.
pub fn projective_label(i: usize, j: u32) -> String {
    format!("({i},{j})")
}

fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, x| g.gcd(x))
}

impl TropicalDegree {
    pub fn projective(r: usize, d: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidDegree("ambient dimension must be positive".into()));
        }
        if d == 0 {
            return Err(Error::InvalidDegree("projective degree must be positive".into()));
        }
        let mut rays = vec![vec![-1i64; r]];
        for i in 0..r {
            let mut e = vec![0i64; r];
            e[i] = 1;
            rays.push(e);
        }
        let labels = (0..=r)
            .flat_map(|i| {
                (1..=d).map(move |j| DegreeLabel {
                    name: projective_label(i, j),
                    ray: i,
                    omega: 1,
                })
            })
            .collect();
        Ok(TropicalDegree {
            dim: r,
            rays,
            labels,
            projective_d: Some(d),
        })
    }

    pub fn toric(rays: Vec<Vec<i64>>, labels: Vec<DegreeLabel>) -> Result<Self> {
        let dim = rays
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidDegree("no rays".into()))?;
        if dim == 0 {
            return Err(Error::InvalidDegree("rays must have positive length".into()));
        }
        for (k, u) in rays.iter().enumerate() {
            if u.len() != dim {
                return Err(Error::InvalidDegree(format!("ray {k} has the wrong length")));
            }
            if gcd_all(u) != 1 {
                return Err(Error::InvalidDegree(format!("ray {k} is not primitive")));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut total = vec![0i64; dim];
        for l in &labels {
            if l.ray >= rays.len() {
                return Err(Error::InvalidDegree(format!("label {:?} points at no ray", l.name)));
            }
            if l.omega == 0 {
                return Err(Error::InvalidDegree(format!("label {:?} has omega 0", l.name)));
            }
            if !seen.insert(l.name.clone()) {
                return Err(Error::InvalidDegree(format!("duplicate label {:?}", l.name)));
            }
            for (t, u) in total.iter_mut().zip(&rays[l.ray]) {
                *t += l.omega as i64 * u;
            }
        }
        if total.iter().any(|x| *x != 0) {
            return Err(Error::InvalidDegree(format!(
                "directions sum to {total:?}, not 0"
            )));
        }
        Ok(TropicalDegree {
            dim,
            rays,
            labels,
            projective_d: None,
        })
    }

    /// Dimension `r` of the tropical torus.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn labels(&self) -> &[DegreeLabel] {
        &self.labels
    }

    pub fn projective_d(&self) -> Option<u32> {
        self.projective_d
    }

    pub fn label(&self, name: &str) -> Option<&DegreeLabel> {
        self.labels.iter().find(|l| l.name == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.label(name).is_some()
    }

    /// `Delta(j) = omega(j) * u_{pi(j)}`.
    pub fn direction(&self, name: &str) -> Option<Vec<i64>> {
        self.label(name).map(|l| {
            self.rays[l.ray]
                .iter()
                .map(|x| x * l.omega as i64)
                .collect()
        })
    }

    pub fn ray_of(&self, name: &str) -> Option<&[i64]> {
        self.label(name).map(|l| self.rays[l.ray].as_slice())
    }

    /// `s_A`: sum of `Delta(j)` over the degree labels in `names`.
    pub fn s_of<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Vec<i64> {
        let mut acc = vec![0i64; self.dim];
        for n in names {
            if let Some(dir) = self.direction(n) {
                for (a, x) in acc.iter_mut().zip(dir) {
                    *a += x;
                }
            }
        }
        acc
    }

    /// Labels on ray `ray` together with their multiplicities.
    pub fn labels_on_ray(&self, ray: usize) -> impl Iterator<Item = &DegreeLabel> {
        self.labels.iter().filter(move |l| l.ray == ray)
    }

    /// `sum_rho w_rho * u_rho` as a rational vector.
    pub fn combine_rays(&self, weights: &[Q]) -> Vec<Q> {
        let mut acc = vec![qi(0); self.dim];
        for (w, u) in weights.iter().zip(&self.rays) {
            for (a, x) in acc.iter_mut().zip(u) {
                *a += w * qi(*x);
            }
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        match self.projective_d {
            Some(d) => json!({"kind": "projective", "d": d}),
            None => json!({
                "kind": "toric",
                "rays": self.rays,
                "labels": self.labels.iter().map(|l| json!({
                    "ray": l.ray, "omega": l.omega, "name": l.name
                })).collect::<Vec<_>>(),
            }),
        }
    }

    /// Parses the degree object; `r` is needed for the projective kind.
    pub fn from_json(v: &Value, r: usize) -> Result<Self> {
        let kind = v.get("kind").and_then(Value::as_str).unwrap_or("");
        match kind {
            "projective" => {
                let d = v
                    .get("d")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::invalid("projective degree needs integer \"d\""))?;
                Self::projective(r, d as u32)
            }
            "toric" => {
                let rays: Vec<Vec<i64>> = serde_json::from_value(
                    v.get("rays").cloned().unwrap_or(Value::Null),
                )
                .map_err(|e| Error::invalid(format!("bad rays: {e}")))?;
                let labels = v
                    .get("labels")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::invalid("toric degree needs \"labels\""))?
                    .iter()
                    .map(|l| {
                        Ok(DegreeLabel {
                            name: l
                                .get("name")
                                .and_then(Value::as_str)
                                .ok_or_else(|| Error::invalid("label needs \"name\""))?
                                .to_string(),
                            ray: l
                                .get("ray")
                                .and_then(Value::as_u64)
                                .ok_or_else(|| Error::invalid("label needs \"ray\""))?
                                as usize,
                            omega: l.get("omega").and_then(Value::as_u64).unwrap_or(1) as u32,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let deg = Self::toric(rays, labels)?;
                if deg.dim != r {
                    return Err(Error::InvalidDegree(format!(
                        "rays live in Z^{} but r = {r}",
                        deg.dim
                    )));
                }
                Ok(deg)
            }
            other => Err(Error::invalid(format!("unknown degree kind {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_rays_in_chart() {
        let deg = TropicalDegree::projective(2, 2).unwrap();
        assert_eq!(deg.rays(), &[vec![-1, -1], vec![1, 0], vec![0, 1]]);
        assert_eq!(deg.labels().len(), 6);
        assert_eq!(deg.direction("(0,2)"), Some(vec![-1, -1]));
        let all: Vec<&str> = deg.labels().iter().map(|l| l.name.as_str()).collect();
        assert_eq!(deg.s_of(all), vec![0, 0]);
    }

    #[test]
    fn toric_validation() {
        let rays = vec![vec![1, 0], vec![0, 1], vec![-1, -1]];
        let lab = |n: &str, ray, omega| DegreeLabel { name: n.into(), ray, omega };
        let ok = TropicalDegree::toric(rays.clone(), vec![lab("a", 0, 2), lab("b", 1, 2), lab("c", 2, 1), lab("d", 2, 1)]);
        assert!(ok.is_ok());
        assert_eq!(ok.unwrap().direction("a"), Some(vec![2, 0]));
        let unbalanced = TropicalDegree::toric(rays.clone(), vec![lab("a", 0, 1), lab("b", 1, 1)]);
        assert!(matches!(unbalanced, Err(Error::InvalidDegree(_))));
        let nonprimitive = TropicalDegree::toric(vec![vec![2, 0], vec![-2, 0]], vec![]);
        assert!(matches!(nonprimitive, Err(Error::InvalidDegree(_))));
        let dup = TropicalDegree::toric(vec![vec![1], vec![-1]], vec![lab("a", 0, 1), lab("a", 1, 1)]);
        assert!(matches!(dup, Err(Error::InvalidDegree(_))));
    }

    #[test]
    fn json_roundtrip() {
        let deg = TropicalDegree::projective(3, 1).unwrap();
        assert_eq!(TropicalDegree::from_json(&deg.to_json(), 3).unwrap(), deg);
        let t = TropicalDegree::toric(
            vec![vec![1], vec![-1]],
            vec![DegreeLabel { name: "x".into(), ray: 0, omega: 2 }, DegreeLabel { name: "y".into(), ray: 1, omega: 2 }],
        )
        .unwrap();
        assert_eq!(TropicalDegree::from_json(&t.to_json(), 1).unwrap(), t);
        assert!(TropicalDegree::from_json(&t.to_json(), 2).is_err());
    }
}
