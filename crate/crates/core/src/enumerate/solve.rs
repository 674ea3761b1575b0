//! Incidence conditions on one combinatorial type.
//!
//! Unknowns are the bounded-edge lengths (in edge-id order) followed by the
//! position of the root, the inner vertex next to leaf 0. The vertex of
//! leaf `l` sits at `root + sum l_e dir_e` over the path from the root, where
//! `dir_e` is the sum of `Delta` over the leaves beyond `e`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::constraint::IncidenceConstraint;
use crate::error::{Error, Result};
use crate::rational::{qi, Q};
use crate::trees::TropicalDegree;

const NONE: usize = usize::MAX;
const PIVOT_TOL: f64 = 1e-9;
const MARGIN: f64 = 1e-6;

/// Constraint data in the layout the per-type solver needs.
#[derive(Clone, Debug)]
pub(crate) struct Compiled {
    pub n: usize,
    pub r: usize,
    pub nb: usize,
    pub size: usize,
    deltas: Vec<i64>,
    row_leaf: Vec<usize>,
    row_coef: Vec<i64>,
    rhs: Vec<Q>,
    rhs_f: Vec<f64>,
    margin: f64,
}

impl Compiled {
    pub fn new(labels: &[String], degree: &TropicalDegree, constraints: &[IncidenceConstraint]) -> Result<Self> {
        let n = labels.len();
        let r = degree.dim();
        let mut deltas = vec![0i64; n * r];
        for (i, l) in labels.iter().enumerate() {
            if let Some(d) = degree.direction(l) {
                deltas[i * r..(i + 1) * r].copy_from_slice(&d);
            }
        }
        let mut row_leaf = Vec::new();
        let mut row_coef = Vec::new();
        let mut rhs = Vec::new();
        for c in constraints {
            let leaf = labels
                .iter()
                .position(|l| *l == c.label)
                .ok_or_else(|| Error::UnknownLabel(c.label.clone()))?;
            let block = c.rows(degree)?;
            for (row, b) in block.rows.into_iter().zip(block.rhs) {
                row_leaf.push(leaf);
                row_coef.extend(row);
                rhs.push(b);
            }
        }
        let nb = n - 3;
        let size = nb + r;
        if rhs.len() != size {
            return Err(Error::DimensionMismatch(format!(
                "constraints impose {} conditions but the moduli cells have dimension {} + {r}",
                rhs.len(),
                nb
            )));
        }
        let rhs_f: Vec<f64> = rhs.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
        let scale = rhs_f.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        Ok(Compiled {
            n,
            r,
            nb,
            size,
            deltas,
            row_leaf,
            row_coef,
            rhs,
            rhs_f,
            margin: MARGIN * scale,
        })
    }
}

/// Reusable buffers for one worker.
pub(crate) struct Workspace {
    pub edges: Vec<[usize; 2]>,
    adj: Vec<[(usize, usize); 3]>,
    deg: Vec<u8>,
    parent: Vec<usize>,
    parent_edge: Vec<usize>,
    order: Vec<usize>,
    stack: Vec<usize>,
    sums: Vec<i64>,
    col_of_edge: Vec<usize>,
    root: usize,
    mat: Vec<i64>,
    f: Vec<f64>,
    perm: Vec<usize>,
    x: Vec<f64>,
}

impl Workspace {
    pub fn new(c: &Compiled) -> Self {
        let nodes = 2 * c.n - 2;
        Workspace {
            edges: Vec::with_capacity(2 * c.n),
            adj: vec![[(NONE, NONE); 3]; nodes],
            deg: vec![0; nodes],
            parent: vec![NONE; nodes],
            parent_edge: vec![NONE; nodes],
            order: Vec::with_capacity(nodes),
            stack: Vec::with_capacity(nodes),
            sums: vec![0; nodes * c.r],
            col_of_edge: vec![NONE; 2 * c.n],
            root: NONE,
            mat: vec![0; c.size * c.size],
            f: vec![0.0; c.size * (c.size + 1)],
            perm: vec![0; c.size],
            x: vec![0.0; c.size],
        }
    }
}

pub(crate) enum Outcome {
    Reject,
    Accept { lengths: Vec<Q>, anchor: Vec<Q>, multiplicity: u64 },
    Degenerate(String),
}

/// Roots the tree in `ws.edges` and fills the integer condition matrix.
pub(crate) fn fill(c: &Compiled, ws: &mut Workspace) {
    let n = c.n;
    let r = c.r;
    let nodes = 2 * n - 2;
    ws.deg[..nodes].fill(0);
    for (e, &[a, b]) in ws.edges.iter().enumerate() {
        ws.adj[a][ws.deg[a] as usize] = (b, e);
        ws.deg[a] += 1;
        ws.adj[b][ws.deg[b] as usize] = (a, e);
        ws.deg[b] += 1;
    }
    let root = ws.adj[0][0].0;
    ws.root = root;
    ws.order.clear();
    ws.stack.clear();
    ws.stack.push(root);
    ws.parent[root] = NONE;
    ws.parent_edge[root] = NONE;
    while let Some(v) = ws.stack.pop() {
        ws.order.push(v);
        for k in 0..ws.deg[v] as usize {
            let (w, e) = ws.adj[v][k];
            if w != ws.parent[v] {
                ws.parent[w] = v;
                ws.parent_edge[w] = e;
                ws.stack.push(w);
            }
        }
    }
    ws.sums[..nodes * r].fill(0);
    for idx in (0..ws.order.len()).rev() {
        let v = ws.order[idx];
        if v < n {
            for k in 0..r {
                ws.sums[v * r + k] = c.deltas[v * r + k];
            }
        }
        let p = ws.parent[v];
        if p != NONE {
            for k in 0..r {
                ws.sums[p * r + k] += ws.sums[v * r + k];
            }
        }
    }
    let mut next = 0;
    for (e, &[a, b]) in ws.edges.iter().enumerate() {
        if a >= n && b >= n {
            ws.col_of_edge[e] = next;
            next += 1;
        } else {
            ws.col_of_edge[e] = NONE;
        }
    }
    let size = c.size;
    ws.mat.fill(0);
    for i in 0..size {
        let leaf = c.row_leaf[i];
        let a = &c.row_coef[i * r..(i + 1) * r];
        let row = &mut ws.mat[i * size..(i + 1) * size];
        row[c.nb..].copy_from_slice(a);
        let mut v = if leaf == 0 { root } else { ws.parent[leaf] };
        while v != root {
            let col = ws.col_of_edge[ws.parent_edge[v]];
            let s = &ws.sums[v * r..(v + 1) * r];
            row[col] = a.iter().zip(s).map(|(x, y)| x * y).sum();
            v = ws.parent[v];
        }
    }
}

/// Floating-point screen. `false` only when the exact answer is certainly
/// `Reject`: a clear inconsistency residual or a clearly negative length.
pub(crate) fn prefilter(c: &Compiled, ws: &mut Workspace) -> bool {
    let n = c.size;
    let w = n + 1;
    let f = &mut ws.f;
    for i in 0..n {
        for j in 0..n {
            f[i * w + j] = ws.mat[i * n + j] as f64;
        }
        f[i * w + n] = c.rhs_f[i];
    }
    for (j, p) in ws.perm.iter_mut().enumerate() {
        *p = j;
    }
    let mut rank = n;
    for k in 0..n {
        let (mut bi, mut bj, mut best) = (k, k, 0.0f64);
        for i in k..n {
            for j in k..n {
                let v = f[i * w + j].abs();
                if v > best {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        }
        if best < PIVOT_TOL {
            rank = k;
            break;
        }
        if bi != k {
            for j in 0..w {
                f.swap(k * w + j, bi * w + j);
            }
        }
        if bj != k {
            for i in 0..n {
                f.swap(i * w + k, i * w + bj);
            }
            ws.perm.swap(k, bj);
        }
        let piv = f[k * w + k];
        for i in k + 1..n {
            let factor = f[i * w + k] / piv;
            if factor != 0.0 {
                for j in k..w {
                    f[i * w + j] -= factor * f[k * w + j];
                }
            }
        }
    }
    if rank < n {
        return (rank..n).all(|i| f[i * w + n].abs() <= c.margin);
    }
    for k in (0..n).rev() {
        let mut s = f[k * w + n];
        for j in k + 1..n {
            s -= f[k * w + j] * ws.x[j];
        }
        ws.x[k] = s / f[k * w + k];
    }
    (0..n).all(|k| ws.perm[k] >= c.nb || ws.x[k] >= -c.margin)
}

/// Exact rational solve of the filled system.
pub(crate) fn exact(c: &Compiled, ws: &Workspace, index: u128) -> Outcome {
    let n = c.size;
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = ws.mat[i * n..(i + 1) * n].iter().map(|&x| qi(x)).collect();
            row.push(c.rhs[i].clone());
            row
        })
        .collect();
    let mut det = qi(1);
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (rank..n).find(|&i| !m[i][col].is_zero()) else {
            det = qi(0);
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            det = -det;
        }
        let pivot_row = m[rank].clone();
        let piv = &pivot_row[col];
        det *= piv;
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let factor = &row[col] / piv;
                for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rank < n {
        return if (rank..n).all(|i| m[i][n].is_zero()) {
            Outcome::Degenerate(format!(
                "type {index}: singular condition matrix with a consistent right-hand side"
            ))
        } else {
            Outcome::Reject
        };
    }
    let x: Vec<Q> = (0..n).map(|i| &m[i][n] / &m[i][pivots[i]]).collect();
    let lengths = &x[..c.nb];
    if lengths.iter().any(Signed::is_negative) {
        return Outcome::Reject;
    }
    if lengths.iter().any(Zero::is_zero) {
        return Outcome::Degenerate(format!("type {index}: solution with a contracted bounded edge"));
    }
    let det: BigInt = det.to_integer();
    Outcome::Accept {
        lengths: lengths.to_vec(),
        anchor: x[c.nb..].to_vec(),
        multiplicity: det.abs().to_u64().expect("determinant fits in u64"),
    }
}

/// Positions of all inner vertices after [`fill`], given a solution.
pub(crate) fn positions(c: &Compiled, ws: &Workspace, lengths: &[Q], anchor: &[Q]) -> Vec<(usize, Vec<Q>)> {
    let mut pos: Vec<Option<Vec<Q>>> = vec![None; 2 * c.n - 2];
    pos[ws.root] = Some(anchor.to_vec());
    for &v in &ws.order {
        if v == ws.root || v < c.n {
            continue;
        }
        let p = pos[ws.parent[v]].clone().expect("parents come first");
        let l = &lengths[ws.col_of_edge[ws.parent_edge[v]]];
        let s = &ws.sums[v * c.r..(v + 1) * c.r];
        pos[v] = Some(p.iter().zip(s).map(|(x, d)| x + l * qi(*d)).collect());
    }
    pos.into_iter()
        .enumerate()
        .filter_map(|(v, p)| p.map(|p| (v, p)))
        .collect()
}
