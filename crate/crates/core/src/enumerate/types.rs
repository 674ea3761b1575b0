use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::trees::{Edge, EdgeLength, MarkedMetricTree, VertexKind};
use crate::rational::Q;

/// `(2n - 5)!!`, the number of trivalent trees with `n >= 3` labeled leaves.
pub fn type_count(n: usize) -> u128 {
    (3..n).map(|k| (2 * k - 3) as u128).product()
}

/// Number of insertion choices for leaves `3..n`.
pub(crate) fn radices(n: usize) -> Vec<u32> {
    (3..n).map(|k| (2 * k - 3) as u32).collect()
}

/// Builds the tree whose leaf `k` (`k >= 3`) was inserted into edge
/// `choices[k - 3]` of the tree on leaves `0..k`.
///
/// Leaves are nodes `0..n`; the inner node created with leaf `k` is
/// `n + k - 2`, the first one is `n`.
pub(crate) fn build_edges(n: usize, choices: &[u32], edges: &mut Vec<[usize; 2]>) {
    edges.clear();
    edges.extend([[n, 0], [n, 1], [n, 2]]);
    for (i, &c) in choices.iter().enumerate() {
        let k = 3 + i;
        let w = n + k - 2;
        let [a, b] = edges[c as usize];
        edges[c as usize] = [a, w];
        edges.push([w, b]);
        edges.push([w, k]);
    }
}

/// A trivalent tree whose leaves are the labels, in deterministic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialType {
    pub index: u128,
    pub labels: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

impl CombinatorialType {
    pub fn num_leaves(&self) -> usize {
        self.labels.len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        v < self.labels.len()
    }

    /// Edge ids with two inner ends, in id order.
    pub fn bounded_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].iter().all(|&v| !self.is_leaf(v)))
            .collect()
    }

    pub fn from_index(labels: &[String], index: u128) -> Option<Self> {
        let n = labels.len();
        if n < 3 || index >= type_count(n) {
            return None;
        }
        let rad = radices(n);
        let mut choices = vec![0u32; rad.len()];
        let mut rest = index;
        for (c, r) in choices.iter_mut().zip(&rad).rev() {
            *c = (rest % *r as u128) as u32;
            rest /= *r as u128;
        }
        let mut edges = Vec::new();
        build_edges(n, &choices, &mut edges);
        Some(CombinatorialType { index, labels: labels.to_vec(), edges })
    }

    /// Metric tree with the given bounded lengths (in [`bounded_edges`]
    /// order) or unit lengths when `lengths` is `None`.
    ///
    /// [`bounded_edges`]: Self::bounded_edges
    pub fn to_tree(&self, lengths: Option<&[Q]>) -> MarkedMetricTree {
        let n = self.num_leaves();
        let kinds: Vec<VertexKind> = (0..2 * n - 2)
            .map(|v| if v < n { VertexKind::Foot } else { VertexKind::Inner })
            .collect();
        let mut next = 0;
        let mut legs = BTreeMap::new();
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(id, &[a, b])| {
                let length = if let Some(leaf) = [a, b].into_iter().find(|&v| v < n) {
                    legs.insert(self.labels[leaf].clone(), id);
                    EdgeLength::Infinite
                } else {
                    let l = lengths.map_or_else(|| Q::from_integer(1.into()), |ls| ls[next].clone());
                    next += 1;
                    EdgeLength::Finite(l)
                };
                Edge { ends: [a, b], length }
            })
            .collect();
        let names = (0..2 * n - 2)
            .map(|v| if v < n { format!("leaf {}", self.labels[v]) } else { format!("v{v}") })
            .collect();
        MarkedMetricTree::new(kinds, edges, legs).with_names(names)
    }

    pub fn to_json(&self) -> Value {
        json!({"index": self.index.to_string(), "labels": self.labels, "edges": self.edges})
    }
}

/// Every type on `labels`, in index order.
pub struct TypeStream {
    labels: Vec<String>,
    radices: Vec<u32>,
    choices: Vec<u32>,
    index: u128,
    done: bool,
}

impl Iterator for TypeStream {
    type Item = CombinatorialType;

    fn next(&mut self) -> Option<CombinatorialType> {
        if self.done {
            return None;
        }
        let mut edges = Vec::new();
        build_edges(self.labels.len(), &self.choices, &mut edges);
        let out = CombinatorialType { index: self.index, labels: self.labels.clone(), edges };
        self.index += 1;
        self.done = !advance(&mut self.choices, &self.radices);
        Some(out)
    }
}

/// Odometer step, last digit fastest. Returns false after the last value.
pub(crate) fn advance(choices: &mut [u32], radices: &[u32]) -> bool {
    for i in (0..choices.len()).rev() {
        choices[i] += 1;
        if choices[i] < radices[i] {
            return true;
        }
        choices[i] = 0;
    }
    false
}

pub fn enumerate_types(labels: &[String]) -> TypeStream {
    let n = labels.len();
    let radices = radices(n.max(3));
    TypeStream {
        labels: labels.to_vec(),
        choices: vec![0; radices.len()],
        radices,
        index: 0,
        done: n < 3,
    }
}
