//! From a standard-form algebraic curve to its tropical curve.
//!
//! The abstract curve is the cluster family of the points `a_l` ordered by
//! inclusion, with an extra leg for `i0` at the root `L`. An edge
//! `{v ⊂ w}` has length `nu(v) - nu(w)` and the map to `T^r` sends the root to
//! `sum nu(c_rho) u_rho` and moves along `{v ⊂ w}` in direction
//! `s_v = sum of Delta(j)` over the degree labels `j` in `v`.

mod cluster;
mod input;

pub use cluster::{cluster_tree, Cluster, ClusterFamily};
pub use input::CurveInput;

use std::collections::{BTreeMap, VecDeque};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::puiseux::{PuiseuxSeries, Valuation};
use crate::rational::{qi, Q};
use crate::trees::{
    Edge, EdgeId, EdgeLength, MarkedMetricTree, ParametrizedTropCurve, VertexId, VertexKind,
};

/// A tropicalized curve together with the cluster behind each vertex.
#[derive(Clone, Debug)]
pub struct Tropicalization {
    pub curve: ParametrizedTropCurve,
    pub clusters: ClusterFamily,
    /// Vertex of the tree for each member of `clusters`, same order.
    pub cluster_vertex: Vec<VertexId>,
}

fn set_name<'a>(labels: impl IntoIterator<Item = &'a String>) -> String {
    let parts: Vec<&str> = labels.into_iter().map(String::as_str).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn tropicalize(input: &CurveInput) -> Result<Tropicalization> {
    input.validate()?;
    let clusters = cluster_tree(&input.a)?;
    let order: BTreeMap<String, usize> = input
        .labels()
        .into_iter()
        .enumerate()
        .map(|(k, l)| (l, k))
        .collect();
    let members = clusters.members();
    let root = members
        .iter()
        .position(|c| c.labels.len() == input.a.len())
        .expect("the full set is always a cluster");

    let mut children: Vec<Vec<usize>> = vec![Vec::new(); members.len()];
    for k in 0..members.len() {
        if let Some(p) = clusters.parent(k) {
            children[p].push(k);
        }
    }
    let min_rank = |k: usize| members[k].labels.iter().map(|l| order[l]).min().unwrap_or(0);
    for ch in &mut children {
        ch.sort_by_key(|&k| min_rank(k));
    }

    let mut kinds = Vec::new();
    let mut names = Vec::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut legs: BTreeMap<String, EdgeId> = BTreeMap::new();
    let mut cluster_vertex = vec![usize::MAX; members.len()];
    let mut positions: BTreeMap<VertexId, Vec<Q>> = BTreeMap::new();

    let mut add_vertex = |kind: VertexKind, name: String, kinds: &mut Vec<VertexKind>| {
        kinds.push(kind);
        names.push(name);
        kinds.len() - 1
    };

    let root_vertex = add_vertex(VertexKind::Inner, set_name(&members[root].labels), &mut kinds);
    cluster_vertex[root] = root_vertex;
    positions.insert(root_vertex, input.anchor()?);

    let i0_foot = add_vertex(VertexKind::Foot, format!("{{{}}}", input.i0), &mut kinds);
    legs.insert(input.i0.clone(), edges.len());
    edges.push(Edge {
        ends: [root_vertex, i0_foot],
        length: EdgeLength::Infinite,
    });

    let mut queue = VecDeque::from([root]);
    while let Some(k) = queue.pop_front() {
        let v = cluster_vertex[k];
        let nu_v = members[k].nu.finite().cloned().expect("inner clusters have finite nu");
        for &ch in &children[k] {
            let child = &members[ch];
            match &child.nu {
                Valuation::Infinite => {
                    let label = child.labels.iter().next().unwrap().clone();
                    let foot = add_vertex(VertexKind::Foot, set_name(&child.labels), &mut kinds);
                    cluster_vertex[ch] = foot;
                    legs.insert(label, edges.len());
                    edges.push(Edge {
                        ends: [v, foot],
                        length: EdgeLength::Infinite,
                    });
                }
                Valuation::Finite(nu_w) => {
                    let len = nu_w - &nu_v;
                    let w = add_vertex(VertexKind::Inner, set_name(&child.labels), &mut kinds);
                    cluster_vertex[ch] = w;
                    let s = input.degree.s_of(child.labels.iter().map(String::as_str));
                    let q: Vec<Q> = positions[&v]
                        .iter()
                        .zip(&s)
                        .map(|(p, d)| p + &len * qi(*d))
                        .collect();
                    positions.insert(w, q);
                    edges.push(Edge {
                        ends: [v, w],
                        length: EdgeLength::Finite(len),
                    });
                    queue.push_back(ch);
                }
            }
        }
    }

    let tree = MarkedMetricTree::new(kinds, edges, legs).with_names(names);
    Ok(Tropicalization {
        curve: ParametrizedTropCurve {
            tree,
            positions,
            degree: input.degree.clone(),
            marks: input.marks.clone(),
        },
        clusters,
        cluster_vertex,
    })
}

/// The corresponding tropical curve of a standard-form curve.
pub fn corresponding_curve(input: &CurveInput) -> Result<ParametrizedTropCurve> {
    Ok(tropicalize(input)?.curve)
}

/// `trop(f(1:a))` computed from the valuations `nu(a - a_j)`, `j` in `J`:
/// with `r_1 < ... < r_k` their distinct values and
/// `D_i = { j : nu(a - a_j) >= r_i }`, the point is
/// `sum nu(c_rho) u_rho + sum_{i>=2} (r_i - r_{i-1}) s_{D_i}`.
pub fn trop_image_point(input: &CurveInput, a: &PuiseuxSeries) -> Result<Vec<Q>> {
    let mut vals: Vec<(Q, &str)> = Vec::new();
    for l in input.degree.labels() {
        match (a - &input.a[&l.name]).valuation()? {
            Valuation::Finite(v) => vals.push((v, l.name.as_str())),
            Valuation::Infinite => return Err(Error::OnBoundary(l.name.clone())),
        }
    }
    let mut levels: Vec<Q> = vals.iter().map(|(v, _)| v.clone()).collect();
    levels.sort();
    levels.dedup();
    let mut point = input.anchor()?;
    for w in levels.windows(2) {
        let (prev, cur) = (&w[0], &w[1]);
        let step = cur - prev;
        let s = input
            .degree
            .s_of(vals.iter().filter(|(v, _)| v >= cur).map(|(_, l)| *l));
        for (p, d) in point.iter_mut().zip(s) {
            *p += &step * qi(d);
        }
    }
    Ok(point)
}

/// Location of a point on the image of a curve: `position(start) + t * dir`
/// where `start` is the first endpoint of `edge` (the inner end, for legs).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnCurve {
    pub edge: EdgeId,
    pub t: Q,
}

/// Finds the smallest edge id whose image contains `p`.
pub fn image_membership(curve: &ParametrizedTropCurve, p: &[Q]) -> Result<Option<OnCurve>> {
    let mut leg_label: BTreeMap<EdgeId, &str> = BTreeMap::new();
    for (l, &e) in curve.tree.legs() {
        leg_label.insert(e, l);
    }
    for (id, e) in curve.tree.edges().iter().enumerate() {
        let (start, dir, bound) = match &e.length {
            EdgeLength::Finite(len) => (e.ends[0], curve.edge_direction(id, e.ends[0])?, Some(len)),
            EdgeLength::Infinite => {
                let start = if curve.tree.kind(e.ends[0]) == VertexKind::Inner {
                    e.ends[0]
                } else {
                    e.ends[1]
                };
                let label = leg_label
                    .get(&id)
                    .ok_or_else(|| Error::invalid(format!("leg {id} has no label")))?;
                (start, curve.leg_direction(label)?, None)
            }
        };
        let base = curve.position(start)?;
        let diff: Vec<Q> = p.iter().zip(base).map(|(x, b)| x - b).collect();
        let t = match dir.iter().position(|d| !d.is_zero()) {
            None => {
                if diff.iter().all(Zero::is_zero) {
                    Q::zero()
                } else {
                    continue;
                }
            }
            Some(k) => &diff[k] / &dir[k],
        };
        if t.is_negative() || bound.is_some_and(|b| t > *b) {
            continue;
        }
        if diff.iter().zip(&dir).all(|(x, d)| *x == &t * d) {
            return Ok(Some(OnCurve { edge: id, t }));
        }
    }
    Ok(None)
}

#[cfg(test)]
pub(crate) mod tests;
