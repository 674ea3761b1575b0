use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use super::{EdgeId, EdgeLength, MarkedMetricTree, TropicalDegree, VertexId, VertexKind};
use crate::error::{Error, Result};
use crate::rational::{qi, vec_from_json, vec_to_json, Q};

/// A marked metric tree mapped into `T^r` (in the normal-form chart) by the
/// positions of its inner vertices. Legs of marks are contracted, the leg of
/// a degree label `j` points in direction `Delta(j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametrizedTropCurve {
    pub tree: MarkedMetricTree,
    pub positions: BTreeMap<VertexId, Vec<Q>>,
    pub degree: TropicalDegree,
    pub marks: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BalanceReport {
    Balanced,
    Unbalanced { vertex: VertexId, excess: Vec<Q> },
}

impl ParametrizedTropCurve {
    pub fn dim(&self) -> usize {
        self.degree.dim()
    }

    pub fn position(&self, v: VertexId) -> Result<&Vec<Q>> {
        self.positions
            .get(&v)
            .ok_or_else(|| Error::invalid(format!("no position for vertex {v}")))
    }

    /// `dir(e)` of a leg: 0 for marks, `Delta(j)` for degree labels.
    pub fn leg_direction(&self, label: &str) -> Result<Vec<Q>> {
        if self.marks.iter().any(|m| m == label) {
            return Ok(vec![Q::zero(); self.dim()]);
        }
        self.degree
            .direction(label)
            .map(|d| d.into_iter().map(qi).collect())
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Direction of a bounded edge leaving `from`: `(q_w - q_v) / l(e)`,
    /// required to be an integer vector.
    pub fn edge_direction(&self, edge: EdgeId, from: VertexId) -> Result<Vec<Q>> {
        let e = &self.tree.edges()[edge];
        let len = e
            .length
            .finite()
            .ok_or_else(|| Error::invalid(format!("edge {edge} is a leg")))?;
        let to = if e.ends[0] == from { e.ends[1] } else { e.ends[0] };
        let (p, q) = (self.position(from)?, self.position(to)?);
        let dir: Vec<Q> = p.iter().zip(q).map(|(a, b)| (b - a) / len).collect();
        if dir.iter().any(|x| !x.is_integer()) {
            return Err(Error::NonIntegralDirection { edge });
        }
        Ok(dir)
    }

    /// Checks integrality of every bounded-edge direction and the balancing
    /// condition at every inner vertex.
    pub fn check_balancing(&self) -> Result<BalanceReport> {
        let r = self.dim();
        for v in self.tree.inner_vertices() {
            let p = self.position(v)?;
            if p.len() != r {
                return Err(Error::invalid(format!("position of vertex {v} has wrong length")));
            }
        }
        let mut leg_label: BTreeMap<EdgeId, &str> = BTreeMap::new();
        for (l, &e) in self.tree.legs() {
            leg_label.insert(e, l);
        }
        let adj = self.tree.adjacency();
        for v in self.tree.inner_vertices() {
            let mut sum = vec![Q::zero(); r];
            for &(e, _) in &adj[v] {
                let dir = match self.tree.edges()[e].length {
                    EdgeLength::Finite(_) => self.edge_direction(e, v)?,
                    EdgeLength::Infinite => {
                        let label = leg_label
                            .get(&e)
                            .ok_or_else(|| Error::invalid(format!("leg {e} has no label")))?;
                        self.leg_direction(label)?
                    }
                };
                for (s, d) in sum.iter_mut().zip(dir) {
                    *s += d;
                }
            }
            if sum.iter().any(|x| !x.is_zero()) {
                return Ok(BalanceReport::Unbalanced { vertex: v, excess: sum });
            }
        }
        Ok(BalanceReport::Balanced)
    }

    /// Position of the vertex carrying the leg of `label`.
    pub fn leg_position(&self, label: &str) -> Result<&Vec<Q>> {
        let v = self.tree.leg_vertex(label)?;
        self.position(v)
    }

    pub fn to_json(&self) -> Value {
        let positions: Vec<Value> = self
            .positions
            .iter()
            .map(|(v, p)| json!({"vertex": v, "q": vec_to_json(p)}))
            .collect();
        json!({
            "r": self.dim(),
            "degree": self.degree.to_json(),
            "marks": self.marks,
            "tree": self.tree.to_json(),
            "positions": positions,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let r = v
            .get("r")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::invalid("curve needs integer \"r\""))? as usize;
        let degree = TropicalDegree::from_json(
            v.get("degree").ok_or_else(|| Error::invalid("curve needs \"degree\""))?,
            r,
        )?;
        let marks: Vec<String> = serde_json::from_value(v.get("marks").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::invalid(format!("bad marks: {e}")))?;
        let tree = MarkedMetricTree::from_json(v.get("tree").ok_or_else(|| Error::invalid("curve needs \"tree\""))?)?;
        let mut positions = BTreeMap::new();
        for p in v
            .get("positions")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::invalid("curve needs \"positions\""))?
        {
            let id = p
                .get("vertex")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::invalid("position needs \"vertex\""))? as usize;
            if id >= tree.num_vertices() || tree.kind(id) != VertexKind::Inner {
                return Err(Error::invalid(format!("position for non-inner vertex {id}")));
            }
            positions.insert(id, vec_from_json(p.get("q").unwrap_or(&Value::Null))?);
        }
        Ok(ParametrizedTropCurve {
            tree,
            positions,
            degree,
            marks,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::{Edge, EdgeLength};
    use super::*;

    fn star_curve(center: Vec<Q>) -> ParametrizedTropCurve {
        let degree = TropicalDegree::projective(2, 1).unwrap();
        let labels = ["1", "(0,1)", "(1,1)", "(2,1)"];
        let mut kinds = vec![VertexKind::Inner];
        let mut edges = Vec::new();
        let mut legs = BTreeMap::new();
        for (k, l) in labels.iter().enumerate() {
            kinds.push(VertexKind::Foot);
            edges.push(Edge { ends: [0, k + 1], length: EdgeLength::Infinite });
            legs.insert(l.to_string(), k);
        }
        ParametrizedTropCurve {
            tree: MarkedMetricTree::new(kinds, edges, legs),
            positions: BTreeMap::from([(0, center)]),
            degree,
            marks: vec!["1".into()],
        }
    }

    #[test]
    fn star_balances() {
        let c = star_curve(vec![qi(3), qi(-1)]);
        assert_eq!(c.check_balancing().unwrap(), BalanceReport::Balanced);
        assert_eq!(c.leg_position("1").unwrap(), &vec![qi(3), qi(-1)]);
    }

    /// Two inner vertices: {mark, s0} -- {s1, s2}, edge direction s1 + s2 = -s0.
    fn split_curve(far: Vec<Q>) -> ParametrizedTropCurve {
        let degree = TropicalDegree::projective(2, 1).unwrap();
        let kinds = vec![
            VertexKind::Inner,
            VertexKind::Inner,
            VertexKind::Foot,
            VertexKind::Foot,
            VertexKind::Foot,
            VertexKind::Foot,
        ];
        let edges = vec![
            Edge { ends: [0, 1], length: EdgeLength::Finite(qi(2)) },
            Edge { ends: [0, 2], length: EdgeLength::Infinite },
            Edge { ends: [0, 3], length: EdgeLength::Infinite },
            Edge { ends: [1, 4], length: EdgeLength::Infinite },
            Edge { ends: [1, 5], length: EdgeLength::Infinite },
        ];
        let legs = BTreeMap::from([
            ("1".to_string(), 1),
            ("(0,1)".to_string(), 2),
            ("(1,1)".to_string(), 3),
            ("(2,1)".to_string(), 4),
        ]);
        ParametrizedTropCurve {
            tree: MarkedMetricTree::new(kinds, edges, legs),
            positions: BTreeMap::from([(0, vec![qi(0), qi(0)]), (1, far)]),
            degree,
            marks: vec!["1".into()],
        }
    }

    #[test]
    fn perturbation_is_detected() {
        let good = split_curve(vec![qi(2), qi(2)]);
        assert_eq!(good.tree.validate(), Ok(()));
        assert_eq!(good.check_balancing().unwrap(), BalanceReport::Balanced);
        let bad = split_curve(vec![qi(4), qi(2)]);
        assert!(matches!(bad.check_balancing().unwrap(), BalanceReport::Unbalanced { vertex: 0, .. }));
        let skew = split_curve(vec![qi(3), qi(2)]);
        assert_eq!(skew.check_balancing(), Err(Error::NonIntegralDirection { edge: 0 }));
    }

    #[test]
    fn json_roundtrip() {
        let c = split_curve(vec![qi(2), qi(2)]);
        assert_eq!(ParametrizedTropCurve::from_json(&c.to_json()).unwrap(), c);
    }
}
