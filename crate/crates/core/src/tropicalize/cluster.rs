use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::puiseux::{PuiseuxSeries, Valuation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub labels: BTreeSet<String>,
    pub nu: Valuation,
}

/// The laminar family `V` of subsets `A` of `L` that are maximal among sets
/// with the same `nu(A) = min nu(a_m - a_l)` over distinct pairs in `A`.
///
/// Members are sorted by `(nu, labels)`, so the whole set `L` comes first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterFamily {
    members: Vec<Cluster>,
}

impl ClusterFamily {
    pub fn from_members(mut members: Vec<Cluster>) -> Self {
        members.sort_by(|x, y| (&x.nu, &x.labels).cmp(&(&y.nu, &y.labels)));
        ClusterFamily { members }
    }

    pub fn members(&self) -> &[Cluster] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn find(&self, labels: &BTreeSet<String>) -> Option<&Cluster> {
        self.members.iter().find(|c| &c.labels == labels)
    }

    /// Index of the covering member (smallest strict superset) of member `k`.
    pub fn parent(&self, k: usize) -> Option<usize> {
        let me = &self.members[k].labels;
        self.members
            .iter()
            .enumerate()
            .filter(|(_, c)| c.labels.len() > me.len() && c.labels.is_superset(me))
            .min_by_key(|(_, c)| c.labels.len())
            .map(|(idx, _)| idx)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.members
                .iter()
                .map(|c| json!({"labels": c.labels, "nu": c.nu.to_json()}))
                .collect(),
        )
    }
}

struct DisjointSets {
    parent: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            members: (0..n).map(|i| vec![i]).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        if self.members[ra].len() < self.members[rb].len() {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        let moved = std::mem::take(&mut self.members[rb]);
        self.members[ra].extend(moved);
        Some(ra)
    }
}

/// Builds the cluster family by single linkage: pairs are merged in order of
/// decreasing `nu(a_m - a_l)`, and every component that grows at a level
/// becomes a member with that level as its valuation.
pub fn cluster_tree(a: &BTreeMap<String, PuiseuxSeries>) -> Result<ClusterFamily> {
    let names: Vec<&String> = a.keys().collect();
    let n = names.len();
    if n == 0 {
        return Err(Error::invalid("cluster family of an empty point set"));
    }
    let mut pairs: Vec<(Valuation, usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let nu = (&a[names[j]] - &a[names[i]]).valuation()?;
            if nu.is_infinite() {
                return Err(Error::DuplicatePoint(names[i].clone(), names[j].clone()));
            }
            pairs.push((nu, i, j));
        }
    }
    pairs.sort_by(|x, y| y.0.cmp(&x.0));

    let mut members: Vec<Cluster> = names
        .iter()
        .map(|l| Cluster {
            labels: BTreeSet::from([(*l).clone()]),
            nu: Valuation::Infinite,
        })
        .collect();
    let mut sets = DisjointSets::new(n);
    let mut start = 0;
    while start < pairs.len() {
        let level = pairs[start].0.clone();
        let mut end = start;
        let mut grown = Vec::new();
        while end < pairs.len() && pairs[end].0 == level {
            if let Some(root) = sets.union(pairs[end].1, pairs[end].2) {
                grown.push(root);
            }
            end += 1;
        }
        let roots: BTreeSet<usize> = grown.into_iter().map(|r| sets.find(r)).collect();
        for root in roots {
            members.push(Cluster {
                labels: sets.members[root].iter().map(|&i| names[i].clone()).collect(),
                nu: level.clone(),
            });
        }
        start = end;
    }
    Ok(ClusterFamily::from_members(members))
}
