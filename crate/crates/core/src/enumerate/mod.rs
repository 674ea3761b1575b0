//! Tropical enumerative degrees by brute force over combinatorial types.
//!
//! For each trivalent tree on `L0` the tropical evaluation maps are linear in
//! the bounded edge lengths and the root position. Incidence conditions cut
//! out a square integer system; a type contributes `|det|` when the unique
//! solution has all lengths positive.

mod constraint;
mod lattice;
mod solve;
mod types;

pub use constraint::{
    constraints_from_json, random_affine, random_point, standard_direction, ConstraintRows,
    IncidenceConstraint, Target, RANDOM_COORD,
};
pub use lattice::annihilator;
pub use types::{enumerate_types, type_count, CombinatorialType, TypeStream};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::random::seeded;
use crate::rational::{rat_to_json, vec_to_json, Q};
use crate::trees::{ParametrizedTropCurve, TropicalDegree};
use solve::{exact, fill, positions, prefilter, Compiled, Outcome, Workspace};

/// Largest number of types a run will attempt.
pub const MAX_TYPES: u128 = 100_000_000;

/// Degree, marks and one constraint per constrained label.
#[derive(Clone, Debug)]
pub struct CountProblem {
    pub degree: TropicalDegree,
    pub marks: Vec<String>,
    pub constraints: Vec<IncidenceConstraint>,
}

impl CountProblem {
    /// `L0`: marks, then degree labels. Leaf 0 is the first mark.
    pub fn labels(&self) -> Vec<String> {
        self.marks
            .iter()
            .cloned()
            .chain(self.degree.labels().iter().map(|l| l.name.clone()))
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let labels = self.labels();
        if labels.len() < 3 {
            return Err(Error::invalid("need at least three marks and labels in total"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::invalid(format!("label {l:?} occurs twice")));
            }
        }
        let mut constrained = std::collections::BTreeSet::new();
        for c in &self.constraints {
            if !seen.contains(&c.label) {
                return Err(Error::UnknownLabel(c.label.clone()));
            }
            if !constrained.insert(&c.label) {
                return Err(Error::invalid(format!("label {:?} is constrained twice", c.label)));
            }
        }
        let total: usize = self
            .constraints
            .iter()
            .map(|c| c.codim(&self.degree))
            .sum::<Result<usize>>()?;
        let cells = labels.len() - 3 + self.degree.dim();
        if total != cells {
            return Err(Error::DimensionMismatch(format!(
                "constraints have total codimension {total}, moduli cells have dimension {cells}"
            )));
        }
        let count = type_count(labels.len());
        if count > MAX_TYPES {
            return Err(Error::invalid(format!(
                "infeasible enumeration size: {count} combinatorial types (limit {MAX_TYPES})"
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "r": self.degree.dim(),
            "degree": self.degree.to_json(),
            "marks": self.marks,
            "constraints": self.constraints.iter().map(IncidenceConstraint::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Number of marks so that `m` constraints of codimension `codim` match the
/// dimension `m + |J| - 3 + r` of the moduli cells.
pub fn marks_for(degree: &TropicalDegree, codim: usize) -> Result<usize> {
    let free = degree.labels().len() + degree.dim();
    if codim < 2 || free < 3 || !(free - 3).is_multiple_of(codim - 1) {
        return Err(Error::DimensionMismatch(format!(
            "no number of codimension-{codim} conditions matches this degree"
        )));
    }
    Ok((free - 3) / (codim - 1))
}

pub fn mark_names(m: usize) -> Vec<String> {
    (1..=m).map(|k| k.to_string()).collect()
}

/// Random conditions on marks: affine subspaces of dimension `dim` (points
/// for `dim = 0`).
pub fn random_problem(rng: &mut impl Rng, degree: &TropicalDegree, dim: usize) -> Result<CountProblem> {
    let r = degree.dim();
    if dim >= r {
        return Err(Error::DimensionMismatch(format!("subspaces of dimension {dim} in T^{r} impose no condition")));
    }
    let marks = mark_names(marks_for(degree, r - dim)?);
    // Subspaces take their directions from a shuffled cycle of the standard
    // rays, so consecutive ones share no direction.
    let mut rays: Vec<usize> = (0..=r).collect();
    rays.shuffle(rng);
    let constraints = marks
        .iter()
        .enumerate()
        .map(|(k, m)| {
            if dim == 0 {
                IncidenceConstraint::point(m.clone(), random_point(rng, r))
            } else {
                let pick: Vec<usize> = (0..dim).map(|j| rays[(k * dim + j) % (r + 1)]).collect();
                random_affine(rng, m, r, &pick)
            }
        })
        .collect();
    Ok(CountProblem { degree: degree.clone(), marks, constraints })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    /// Data-parallel over type prefixes; sequential without the `parallel`
    /// feature.
    Parallel,
}

#[derive(Clone, Copy, Debug)]
pub struct CountOptions {
    pub strategy: Strategy,
    /// Screen types in floating point before the exact solve.
    pub prefilter: bool,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { strategy: Strategy::Parallel, prefilter: true }
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub ctype: CombinatorialType,
    pub lengths: Vec<Q>,
    pub anchor: Vec<Q>,
    pub multiplicity: u64,
    pub curve: ParametrizedTropCurve,
}

impl Solution {
    pub fn to_json(&self) -> Value {
        json!({
            "type": self.ctype.to_json(),
            "lengths": vec_to_json(&self.lengths),
            "anchor": vec_to_json(&self.anchor),
            "multiplicity": self.multiplicity,
            "curve": self.curve.to_json(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct CountResult {
    /// Labeled tropical degree: sum of multiplicities.
    pub degree: u64,
    /// `degree / (d!)^{r+1}` for a projective degree `d`.
    pub unlabeled: Option<Q>,
    pub solutions: Vec<Solution>,
    /// Zero-length solutions seen; nonzero only in aborted runs.
    pub rejected_degenerate: u64,
    pub types: u128,
    pub exact_solves: u64,
}

impl CountResult {
    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "labeled_degree": self.degree,
            "unlabeled_degree": self.unlabeled.as_ref().map(rat_to_json),
            "solutions": self.solutions.iter().map(Solution::to_json).collect::<Vec<_>>(),
            "rejected_degenerate": self.rejected_degenerate,
            "types": self.types.to_string(),
            "exact_solves": self.exact_solves,
        })
    }
}

#[derive(Default)]
struct Tally {
    degree: u64,
    found: Vec<(u128, Vec<Q>, Vec<Q>, u64)>,
    degenerate: Option<(u128, String)>,
    zero_length: u64,
    exact_solves: u64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.degree += other.degree;
        self.found.extend(other.found);
        if self.degenerate.is_none() {
            self.degenerate = other.degenerate;
        }
        self.zero_length += other.zero_length;
        self.exact_solves += other.exact_solves;
        self
    }
}

fn run_chunk(c: &Compiled, radices: &[u32], prefix_len: usize, chunk: u128, prefilter_on: bool) -> Tally {
    let suffix_radices = &radices[prefix_len..];
    let suffix_count: u128 = suffix_radices.iter().map(|&r| r as u128).product();
    let mut choices = vec![0u32; radices.len()];
    let mut rest = chunk;
    for i in (0..prefix_len).rev() {
        choices[i] = (rest % radices[i] as u128) as u32;
        rest /= radices[i] as u128;
    }
    let mut ws = Workspace::new(c);
    let mut tally = Tally::default();
    let mut index = chunk * suffix_count;
    loop {
        types::build_edges(c.n, &choices, &mut ws.edges);
        fill(c, &mut ws);
        if !prefilter_on || prefilter(c, &mut ws) {
            tally.exact_solves += 1;
            match exact(c, &ws, index) {
                Outcome::Reject => {}
                Outcome::Accept { lengths, anchor, multiplicity } => {
                    tally.degree += multiplicity;
                    tally.found.push((index, lengths, anchor, multiplicity));
                }
                Outcome::Degenerate(msg) => {
                    if msg.contains("contracted") {
                        tally.zero_length += 1;
                    }
                    if tally.degenerate.is_none() {
                        tally.degenerate = Some((index, msg));
                    }
                }
            }
        }
        index += 1;
        if !types::advance(&mut choices[prefix_len..], suffix_radices) {
            break;
        }
    }
    tally
}

fn run_all(c: &Compiled, strategy: Strategy, prefilter_on: bool) -> Tally {
    let radices = types::radices(c.n);
    let mut prefix_len = 0;
    let mut chunks: u128 = 1;
    while prefix_len < radices.len() && chunks < 512 {
        chunks *= radices[prefix_len] as u128;
        prefix_len += 1;
    }
    let work = |k: u128| run_chunk(c, &radices, prefix_len, k, prefilter_on);
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            let parts: Vec<Tally> = (0..chunks as u64).into_par_iter().map(|k| work(k as u128)).collect();
            parts.into_iter().fold(Tally::default(), Tally::merge)
        }
        _ => (0..chunks).map(work).fold(Tally::default(), Tally::merge),
    }
}

fn factorial(d: u32) -> BigInt {
    (1..=d).fold(BigInt::one(), |acc, k| acc * k)
}

/// Sums multiplicities over every type. Fails with `Degenerate` when some
/// type has a singular consistent system or a solution with a contracted
/// bounded edge.
pub fn count_curves(problem: &CountProblem, opts: &CountOptions) -> Result<CountResult> {
    problem.validate()?;
    let labels = problem.labels();
    let c = Compiled::new(&labels, &problem.degree, &problem.constraints)?;
    let tally = run_all(&c, opts.strategy, opts.prefilter);
    if let Some((_, msg)) = tally.degenerate {
        return Err(Error::Degenerate(msg));
    }
    let mut found = tally.found;
    found.sort_by_key(|f| f.0);
    let mut ws = Workspace::new(&c);
    let solutions = found
        .into_iter()
        .map(|(index, lengths, anchor, multiplicity)| {
            let ctype = CombinatorialType::from_index(&labels, index).expect("index in range");
            ws.edges.clone_from(&ctype.edges);
            fill(&c, &mut ws);
            let pos: BTreeMap<usize, Vec<Q>> = positions(&c, &ws, &lengths, &anchor).into_iter().collect();
            let curve = ParametrizedTropCurve {
                tree: ctype.to_tree(Some(&lengths)),
                positions: pos,
                degree: problem.degree.clone(),
                marks: problem.marks.clone(),
            };
            Solution { ctype, lengths, anchor, multiplicity, curve }
        })
        .collect();
    let unlabeled = problem.degree.projective_d().map(|d| {
        let denom = num_traits::pow(factorial(d), problem.degree.dim() + 1);
        Q::new(BigInt::from(tally.degree), denom)
    });
    Ok(CountResult {
        degree: tally.degree,
        unlabeled,
        solutions,
        rejected_degenerate: tally.zero_length,
        types: type_count(labels.len()),
        exact_solves: tally.exact_solves,
    })
}

/// Outcome of a count over freshly drawn random conditions.
#[derive(Clone, Debug)]
pub struct RandomRun {
    pub seed: u64,
    pub attempts: usize,
    pub problem: CountProblem,
    pub result: CountResult,
}

/// Draws conditions from `seed` and counts, redrawing after `Degenerate`
/// up to `retries` attempts in total.
pub fn count_random(
    degree: &TropicalDegree,
    dim: usize,
    seed: u64,
    retries: usize,
    opts: &CountOptions,
) -> Result<RandomRun> {
    let mut rng = seeded(seed);
    let mut last = None;
    for attempt in 1..=retries.max(1) {
        let problem = random_problem(&mut rng, degree, dim)?;
        problem.validate()?;
        match count_curves(&problem, opts) {
            Ok(result) => return Ok(RandomRun { seed, attempts: attempt, problem, result }),
            Err(Error::Degenerate(msg)) => last = Some(msg),
            Err(e) => return Err(e),
        }
    }
    Err(Error::Degenerate(format!(
        "no generic conditions after {} attempts; last: {}",
        retries.max(1),
        last.unwrap_or_default()
    )))
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Number of rational plane curves of degree `d` through `3d - 1` general
/// points, by Kontsevich's recursion.
pub fn kontsevich_oracle(d: u32) -> BigInt {
    let mut n: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    for dd in 2..=d as u64 {
        let mut total = BigInt::zero();
        for d1 in 1..dd {
            let d2 = dd - d1;
            let a = BigInt::from(d1 * d1 * d2 * d2) * binomial(3 * dd - 4, 3 * d1 - 2);
            let b = BigInt::from(d1 * d1 * d1 * d2) * binomial(3 * dd - 4, 3 * d1 - 1);
            total += &n[d1 as usize] * &n[d2 as usize] * (a - b);
        }
        n.push(total);
    }
    n[d.max(1) as usize].clone()
}
