//! Abstract rational tropical curves: metric trees whose legs are labeled.

mod curve;
mod degree;

pub use curve::{BalanceReport, ParametrizedTropCurve};
pub use degree::{projective_label, DegreeLabel, TropicalDegree};

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{fmt_rat, rat_from_json, rat_to_json, Q};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Inner,
    Foot,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeLength {
    Finite(Q),
    Infinite,
}

impl EdgeLength {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            EdgeLength::Finite(l) => Some(l),
            EdgeLength::Infinite => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub ends: [VertexId; 2],
    pub length: EdgeLength,
}

/// First violated invariant found by [`MarkedMetricTree::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeViolation {
    BadEndpoint { edge: EdgeId },
    EdgeCount { vertices: usize, edges: usize },
    Disconnected,
    Pathological,
    LegLength { edge: EdgeId },
    NonPositiveLength { edge: EdgeId },
    FootValence { vertex: VertexId },
    TwoValent { vertex: VertexId },
    LowValence { vertex: VertexId },
    LabelNotLeg { label: String },
    UnlabeledLeg { edge: EdgeId },
    SharedLeg { edge: EdgeId },
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeViolation::BadEndpoint { edge } => write!(f, "edge {edge} has an unknown endpoint"),
            TreeViolation::EdgeCount { vertices, edges } => {
                write!(f, "{edges} edges on {vertices} vertices is not a tree")
            }
            TreeViolation::Disconnected => f.write_str("graph is disconnected"),
            TreeViolation::Pathological => f.write_str("two-vertex graph"),
            TreeViolation::LegLength { edge } => {
                write!(f, "edge {edge}: infinite length must coincide with having a foot")
            }
            TreeViolation::NonPositiveLength { edge } => {
                write!(f, "edge {edge} has non-positive length")
            }
            TreeViolation::FootValence { vertex } => write!(f, "foot {vertex} is not 1-valent"),
            TreeViolation::TwoValent { vertex } => write!(f, "2-valent vertex {vertex}"),
            TreeViolation::LowValence { vertex } => {
                write!(f, "inner vertex {vertex} has valence below 3")
            }
            TreeViolation::LabelNotLeg { label } => write!(f, "label {label:?} is not on a leg"),
            TreeViolation::UnlabeledLeg { edge } => write!(f, "leg {edge} carries no label"),
            TreeViolation::SharedLeg { edge } => write!(f, "leg {edge} carries two labels"),
        }
    }
}

/// Genus-0 metric graph with labeled legs. Vertex and edge ids are indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedMetricTree {
    kinds: Vec<VertexKind>,
    names: Vec<String>,
    edges: Vec<Edge>,
    legs: BTreeMap<String, EdgeId>,
}

impl MarkedMetricTree {
    /// Assembles a tree without checking it; see [`validate`](Self::validate).
    pub fn new(kinds: Vec<VertexKind>, edges: Vec<Edge>, legs: BTreeMap<String, EdgeId>) -> Self {
        let names = vec![String::new(); kinds.len()];
        MarkedMetricTree {
            kinds,
            names,
            edges,
            legs,
        }
    }

    /// Attaches display names (e.g. cluster label sets) to vertices.
    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.kinds.len());
        self.names = names;
        self
    }

    pub fn num_vertices(&self) -> usize {
        self.kinds.len()
    }

    pub fn kind(&self, v: VertexId) -> VertexKind {
        self.kinds[v]
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn legs(&self) -> &BTreeMap<String, EdgeId> {
        &self.legs
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.legs.keys().map(String::as_str)
    }

    pub fn inner_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.kinds.len()).filter(|&v| self.kinds[v] == VertexKind::Inner)
    }

    pub fn bounded_edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| matches!(e.length, EdgeLength::Finite(_)))
    }

    /// Incident `(edge, other endpoint)` pairs for every vertex.
    pub fn adjacency(&self) -> Vec<Vec<(EdgeId, VertexId)>> {
        let mut adj = vec![Vec::new(); self.kinds.len()];
        for (id, e) in self.edges.iter().enumerate() {
            let [a, b] = e.ends;
            if a < adj.len() && b < adj.len() {
                adj[a].push((id, b));
                adj[b].push((id, a));
            }
        }
        adj
    }

    pub fn validate(&self) -> Result<(), TreeViolation> {
        let n = self.kinds.len();
        for (id, e) in self.edges.iter().enumerate() {
            if e.ends.iter().any(|&v| v >= n) || e.ends[0] == e.ends[1] {
                return Err(TreeViolation::BadEndpoint { edge: id });
            }
        }
        if n == 2 {
            return Err(TreeViolation::Pathological);
        }
        if self.edges.len() + 1 != n {
            return Err(TreeViolation::EdgeCount {
                vertices: n,
                edges: self.edges.len(),
            });
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        if n > 0 {
            seen[0] = true;
        }
        while let Some(v) = queue.pop_front() {
            for &(_, w) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(TreeViolation::Disconnected);
        }
        for (id, e) in self.edges.iter().enumerate() {
            let feet = e
                .ends
                .iter()
                .filter(|&&v| self.kinds[v] == VertexKind::Foot)
                .count();
            match &e.length {
                EdgeLength::Infinite if feet != 1 => return Err(TreeViolation::LegLength { edge: id }),
                EdgeLength::Finite(_) if feet != 0 => return Err(TreeViolation::LegLength { edge: id }),
                EdgeLength::Finite(l) if !l.is_positive() => {
                    return Err(TreeViolation::NonPositiveLength { edge: id })
                }
                _ => {}
            }
        }
        for (v, kind) in self.kinds.iter().enumerate() {
            let valence = adj[v].len();
            match kind {
                VertexKind::Foot if valence != 1 => return Err(TreeViolation::FootValence { vertex: v }),
                VertexKind::Inner if valence == 2 => return Err(TreeViolation::TwoValent { vertex: v }),
                VertexKind::Inner if valence < 3 => return Err(TreeViolation::LowValence { vertex: v }),
                _ => {}
            }
        }
        let mut owner: BTreeMap<EdgeId, &str> = BTreeMap::new();
        for (label, &edge) in &self.legs {
            if edge >= self.edges.len() || self.edges[edge].length != EdgeLength::Infinite {
                return Err(TreeViolation::LabelNotLeg {
                    label: label.clone(),
                });
            }
            if owner.insert(edge, label).is_some() {
                return Err(TreeViolation::SharedLeg { edge });
            }
        }
        for (id, e) in self.edges.iter().enumerate() {
            if e.length == EdgeLength::Infinite && !owner.contains_key(&id) {
                return Err(TreeViolation::UnlabeledLeg { edge: id });
            }
        }
        Ok(())
    }

    /// Inner vertex `v_e` carrying the leg of `label`.
    pub fn leg_vertex(&self, label: &str) -> Result<VertexId> {
        let &edge = self
            .legs
            .get(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        let [a, b] = self.edges[edge].ends;
        Ok(if self.kinds[a] == VertexKind::Inner { a } else { b })
    }

    /// Bounded-edge distances from `start` to every inner vertex.
    pub fn distances_from(&self, start: VertexId) -> Vec<Option<Q>> {
        let adj = self.adjacency();
        let mut dist: Vec<Option<Q>> = vec![None; self.kinds.len()];
        dist[start] = Some(Q::zero());
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let here = dist[v].clone().unwrap();
            for &(e, w) in &adj[v] {
                if dist[w].is_none() {
                    if let EdgeLength::Finite(l) = &self.edges[e].length {
                        dist[w] = Some(&here + l);
                        stack.push(w);
                    }
                }
            }
        }
        dist
    }

    /// `dist(i, j)`: length of the path between the inner endpoints of two legs.
    pub fn leg_distance(&self, i: &str, j: &str) -> Result<Q> {
        let vi = self.leg_vertex(i)?;
        let vj = self.leg_vertex(j)?;
        self.distances_from(vi)[vj]
            .clone()
            .ok_or_else(|| Error::invalid("leg vertices are not connected by bounded edges"))
    }

    /// Canonical string of the tree rooted at the leg vertex of `root_label`:
    /// a vertex encodes as its sorted leg labels and sorted child encodings,
    /// each child prefixed by the length of the edge leading to it.
    pub fn canonical_form(&self, root_label: &str) -> Result<String> {
        let root = self.leg_vertex(root_label)?;
        let adj = self.adjacency();
        let mut leg_label: BTreeMap<EdgeId, &str> = BTreeMap::new();
        for (l, &e) in &self.legs {
            leg_label.insert(e, l);
        }
        fn encode(
            tree: &MarkedMetricTree,
            adj: &[Vec<(EdgeId, VertexId)>],
            leg_label: &BTreeMap<EdgeId, &str>,
            v: VertexId,
            parent: Option<VertexId>,
        ) -> String {
            let mut parts: Vec<String> = Vec::new();
            for &(e, w) in &adj[v] {
                if Some(w) == parent {
                    continue;
                }
                match &tree.edges[e].length {
                    EdgeLength::Infinite => parts.push(format!("{:?}", leg_label.get(&e).unwrap_or(&"?"))),
                    EdgeLength::Finite(l) => parts.push(format!(
                        "{}:{}",
                        fmt_rat(l),
                        encode(tree, adj, leg_label, w, Some(v))
                    )),
                }
            }
            parts.sort();
            format!("({})", parts.join(","))
        }
        Ok(encode(self, &adj, &leg_label, root, None))
    }

    pub fn to_json(&self) -> Value {
        let vertices: Vec<Value> = self
            .kinds
            .iter()
            .enumerate()
            .map(|(id, k)| {
                let mut v = json!({
                    "id": id,
                    "kind": match k { VertexKind::Inner => "inner", VertexKind::Foot => "foot" },
                });
                if !self.names[id].is_empty() {
                    v["name"] = Value::String(self.names[id].clone());
                }
                v
            })
            .collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| {
                let len = match &e.length {
                    EdgeLength::Finite(l) => rat_to_json(l),
                    EdgeLength::Infinite => Value::String("inf".into()),
                };
                json!([e.ends[0], e.ends[1], len])
            })
            .collect();
        json!({"vertices": vertices, "edges": edges, "legs": self.legs})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let vertices = v
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::invalid("tree needs \"vertices\""))?;
        let mut index: BTreeMap<u64, VertexId> = BTreeMap::new();
        let mut kinds = Vec::new();
        let mut names = Vec::new();
        for vert in vertices {
            let id = vert
                .get("id")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::invalid("vertex needs integer \"id\""))?;
            let kind = match vert.get("kind").and_then(Value::as_str) {
                Some("inner") => VertexKind::Inner,
                Some("foot") => VertexKind::Foot,
                _ => return Err(Error::invalid("vertex kind must be \"inner\" or \"foot\"")),
            };
            if index.insert(id, kinds.len()).is_some() {
                return Err(Error::invalid(format!("duplicate vertex id {id}")));
            }
            kinds.push(kind);
            names.push(vert.get("name").and_then(Value::as_str).unwrap_or("").to_string());
        }
        let lookup = |x: &Value| -> Result<VertexId> {
            x.as_u64()
                .and_then(|id| index.get(&id).copied())
                .ok_or_else(|| Error::invalid(format!("unknown vertex {x}")))
        };
        let edges = v
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::invalid("tree needs \"edges\""))?
            .iter()
            .map(|e| {
                let parts = e
                    .as_array()
                    .filter(|p| p.len() == 3)
                    .ok_or_else(|| Error::invalid("edge must be [v, w, length]"))?;
                let length = match &parts[2] {
                    Value::String(s) if s == "inf" => EdgeLength::Infinite,
                    other => EdgeLength::Finite(rat_from_json(other)?),
                };
                Ok(Edge {
                    ends: [lookup(&parts[0])?, lookup(&parts[1])?],
                    length,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let legs: BTreeMap<String, EdgeId> = serde_json::from_value(
            v.get("legs").cloned().unwrap_or(Value::Null),
        )
        .map_err(|e| Error::invalid(format!("bad legs map: {e}")))?;
        Ok(MarkedMetricTree {
            kinds,
            names,
            edges,
            legs,
        })
    }

    /// Graphviz rendering; bounded edges carry their lengths, legs their labels.
    pub fn to_dot(&self) -> String {
        let mut leg_label: BTreeMap<EdgeId, &str> = BTreeMap::new();
        for (l, &e) in &self.legs {
            leg_label.insert(e, l);
        }
        let mut out = String::from("graph tropical_curve {\n");
        for (v, kind) in self.kinds.iter().enumerate() {
            let label = if self.names[v].is_empty() {
                v.to_string()
            } else {
                self.names[v].clone()
            };
            let shape = match kind {
                VertexKind::Inner => "point",
                VertexKind::Foot => "plaintext",
            };
            out.push_str(&format!(
                "  v{v} [shape={shape}, xlabel=\"{}\"];\n",
                label.replace('"', "\\\"")
            ));
        }
        for (id, e) in self.edges.iter().enumerate() {
            let label = match &e.length {
                EdgeLength::Finite(l) => fmt_rat(l),
                EdgeLength::Infinite => format!("{} (inf)", leg_label.get(&id).unwrap_or(&"")),
            };
            out.push_str(&format!(
                "  v{} -- v{} [label=\"{}\"];\n",
                e.ends[0],
                e.ends[1],
                label.replace('"', "\\\"")
            ));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rational::qi;
    use proptest::prelude::*;

    /// Inner vertex 0 with `labels.len()` legs.
    fn star(labels: &[&str]) -> MarkedMetricTree {
        let mut kinds = vec![VertexKind::Inner];
        let mut edges = Vec::new();
        let mut legs = BTreeMap::new();
        for (k, l) in labels.iter().enumerate() {
            kinds.push(VertexKind::Foot);
            edges.push(Edge { ends: [0, k + 1], length: EdgeLength::Infinite });
            legs.insert(l.to_string(), k);
        }
        MarkedMetricTree::new(kinds, edges, legs)
    }

    /// Builds a tree from bounded edges between inner vertices `0..inner` and
    /// a leg list `(label, inner vertex)`.
    fn build(inner: usize, bounded: &[(usize, usize, i64)], legs: &[(&str, usize)]) -> MarkedMetricTree {
        let mut kinds = vec![VertexKind::Inner; inner];
        let mut edges: Vec<Edge> = bounded
            .iter()
            .map(|&(a, b, l)| Edge { ends: [a, b], length: EdgeLength::Finite(qi(l)) })
            .collect();
        let mut map = BTreeMap::new();
        for (label, v) in legs {
            kinds.push(VertexKind::Foot);
            map.insert(label.to_string(), edges.len());
            edges.push(Edge { ends: [*v, kinds.len() - 1], length: EdgeLength::Infinite });
        }
        MarkedMetricTree::new(kinds, edges, map)
    }

    /// The abstract curve of the worked example: vertices are the clusters
    /// L, {01,21}, {11,02,12,22,2}, {02,12,22,2}, {12,22,2}, {12,2}.
    pub(crate) fn example_tree() -> MarkedMetricTree {
        build(
            6,
            &[(0, 1, 2), (0, 2, 1), (2, 3, 2), (3, 4, 2), (4, 5, 1)],
            &[
                ("1", 0),
                ("(0,1)", 1),
                ("(2,1)", 1),
                ("(1,1)", 2),
                ("(0,2)", 3),
                ("(2,2)", 4),
                ("(1,2)", 5),
                ("2", 5),
            ],
        )
    }

    /// Distance oracle: breadth-first search over an explicit edge list.
    fn bfs_distance(t: &MarkedMetricTree, i: &str, j: &str) -> Q {
        let (vi, vj) = (t.leg_vertex(i).unwrap(), t.leg_vertex(j).unwrap());
        let mut best: BTreeMap<VertexId, Q> = BTreeMap::from([(vi, qi(0))]);
        let mut queue = VecDeque::from([vi]);
        while let Some(v) = queue.pop_front() {
            for e in t.edges() {
                let EdgeLength::Finite(l) = &e.length else { continue };
                for (a, b) in [(e.ends[0], e.ends[1]), (e.ends[1], e.ends[0])] {
                    if a == v && !best.contains_key(&b) {
                        let d = &best[&v] + l;
                        best.insert(b, d);
                        queue.push_back(b);
                    }
                }
            }
        }
        best[&vj].clone()
    }

    #[test]
    fn star_is_valid() {
        assert_eq!(star(&["a", "b", "c", "d"]).validate(), Ok(()));
    }

    #[test]
    fn two_valent_rejected() {
        let t = build(3, &[(0, 1, 1), (1, 2, 1)], &[("a", 0), ("b", 0), ("c", 2), ("d", 2)]);
        assert_eq!(t.validate(), Err(TreeViolation::TwoValent { vertex: 1 }));
        assert!(TreeViolation::TwoValent { vertex: 1 }.to_string().contains("2-valent vertex"));
    }

    #[test]
    fn other_violations() {
        let two = MarkedMetricTree::new(
            vec![VertexKind::Foot, VertexKind::Foot],
            vec![Edge { ends: [0, 1], length: EdgeLength::Infinite }],
            BTreeMap::from([("a".to_string(), 0)]),
        );
        assert_eq!(two.validate(), Err(TreeViolation::Pathological));
        let mut t = star(&["a", "b", "c"]);
        t.edges[0].length = EdgeLength::Finite(qi(1));
        assert_eq!(t.validate(), Err(TreeViolation::LegLength { edge: 0 }));
        let t = build(2, &[(0, 1, 0)], &[("a", 0), ("b", 0), ("c", 1), ("d", 1)]);
        assert_eq!(t.validate(), Err(TreeViolation::NonPositiveLength { edge: 0 }));
        let mut t = star(&["a", "b", "c"]);
        t.legs.remove("c");
        assert_eq!(t.validate(), Err(TreeViolation::UnlabeledLeg { edge: 2 }));
        let mut t = star(&["a", "b", "c"]);
        t.edges.push(Edge { ends: [1, 2], length: EdgeLength::Finite(qi(1)) });
        assert!(matches!(t.validate(), Err(TreeViolation::EdgeCount { .. })));
    }

    #[test]
    fn example_tree_is_valid() {
        assert_eq!(example_tree().validate(), Ok(()));
    }

    #[test]
    fn example_distances() {
        let t = example_tree();
        assert_eq!(t.leg_distance("(1,2)", "2").unwrap(), qi(0));
        assert_eq!(bfs_distance(&t, "(1,2)", "2"), qi(0));
        assert_eq!(t.leg_distance("(0,1)", "(1,1)").unwrap(), qi(3));
        assert_eq!(bfs_distance(&t, "(0,1)", "(1,1)"), qi(3));
        assert_eq!(t.leg_distance("(1,1)", "(0,1)").unwrap(), qi(3));
        assert!(matches!(t.leg_distance("zz", "2"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn distances_match_bfs_and_four_point_condition() {
        let t = example_tree();
        let labels: Vec<&str> = t.labels().collect();
        for i in &labels {
            for j in &labels {
                if i != j {
                    assert_eq!(t.leg_distance(i, j).unwrap(), bfs_distance(&t, i, j));
                }
            }
        }
        let d = |a: &str, b: &str| if a == b { qi(0) } else { t.leg_distance(a, b).unwrap() };
        for (a, i) in labels.iter().enumerate() {
            for (b, j) in labels.iter().enumerate().skip(a + 1) {
                for (c, k) in labels.iter().enumerate().skip(b + 1) {
                    for l in labels.iter().skip(c + 1) {
                        let mut sums = [d(i, j) + d(k, l), d(i, k) + d(j, l), d(i, l) + d(j, k)];
                        sums.sort();
                        assert_eq!(sums[1], sums[2]);
                    }
                }
            }
        }
    }

    #[test]
    fn json_and_dot() {
        let t = example_tree();
        let back = MarkedMetricTree::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        let dot = t.to_dot();
        assert!(dot.starts_with("graph"));
        assert!(dot.contains("[label=\"2\"]"));
        assert!(dot.contains("(inf)"));
    }

    #[test]
    fn canonical_form_ignores_ids() {
        let t = example_tree();
        let relabeled = build(
            6,
            &[(5, 4, 2), (5, 3, 1), (3, 2, 2), (2, 1, 2), (1, 0, 1)],
            &[
                ("2", 0),
                ("(1,2)", 0),
                ("(2,2)", 1),
                ("(0,2)", 2),
                ("(1,1)", 3),
                ("(2,1)", 4),
                ("(0,1)", 4),
                ("1", 5),
            ],
        );
        assert_eq!(relabeled.validate(), Ok(()));
        assert_eq!(t.canonical_form("1").unwrap(), relabeled.canonical_form("1").unwrap());
        let mut other = relabeled.clone();
        other.edges[0].length = EdgeLength::Finite(qi(3));
        assert_ne!(t.canonical_form("1").unwrap(), other.canonical_form("1").unwrap());
    }

    /// Random caterpillar trees with random positive lengths.
    fn arb_caterpillar() -> impl Strategy<Value = MarkedMetricTree> {
        (2usize..6).prop_flat_map(|spine| {
            prop::collection::vec(1i64..7, spine - 1).prop_map(move |lens| {
                let bounded: Vec<(usize, usize, i64)> =
                    lens.iter().enumerate().map(|(k, &l)| (k, k + 1, l)).collect();
                let names: Vec<String> = (0..spine + 2).map(|k| format!("x{k}")).collect();
                let mut legs: Vec<(&str, usize)> = vec![(names[0].as_str(), 0), (names[1].as_str(), 0)];
                for k in 1..spine - 1 {
                    legs.push((names[k + 1].as_str(), k));
                }
                legs.push((names[spine].as_str(), spine - 1));
                legs.push((names[spine + 1].as_str(), spine - 1));
                build(spine, &bounded, &legs)
            })
        })
    }

    proptest! {
        #[test]
        fn caterpillars_are_tree_metrics(t in arb_caterpillar()) {
            prop_assert_eq!(t.validate(), Ok(()));
            let labels: Vec<&str> = t.labels().collect();
            for i in &labels {
                for j in &labels {
                    if i != j {
                        prop_assert_eq!(t.leg_distance(i, j).unwrap(), t.leg_distance(j, i).unwrap());
                    }
                }
            }
            let d = |a: &str, b: &str| if a == b { qi(0) } else { t.leg_distance(a, b).unwrap() };
            for w in labels.windows(4) {
                let mut sums = [d(w[0], w[1]) + d(w[2], w[3]), d(w[0], w[2]) + d(w[1], w[3]), d(w[0], w[3]) + d(w[1], w[2])];
                sums.sort();
                prop_assert_eq!(&sums[1], &sums[2]);
            }
        }
    }
}
