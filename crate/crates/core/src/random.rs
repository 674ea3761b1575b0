//! Seeded generators for random curves and constraint sets.

use std::collections::BTreeMap;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::puiseux::PuiseuxSeries;
use crate::rational::{q, qi, Q};
use crate::trees::{DegreeLabel, TropicalDegree};
use crate::tropicalize::CurveInput;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of random series: up to `max_terms` terms, exponents `k / den` in
/// `[min_exp, max_exp]` with `den` drawn from `denominators`.
#[derive(Clone, Debug)]
pub struct SeriesShape {
    pub max_terms: usize,
    pub min_exp: i64,
    pub max_exp: i64,
    pub denominators: Vec<i64>,
    pub max_coeff: i64,
}

impl Default for SeriesShape {
    fn default() -> Self {
        SeriesShape {
            max_terms: 5,
            min_exp: -3,
            max_exp: 5,
            denominators: vec![1, 1, 1, 2],
            max_coeff: 3,
        }
    }
}

/// Nonzero random series.
pub fn random_series(rng: &mut impl Rng, shape: &SeriesShape) -> PuiseuxSeries {
    loop {
        let n = rng.random_range(1..=shape.max_terms);
        let terms: Vec<(Q, Q)> = (0..n)
            .map(|_| {
                let den = shape.denominators[rng.random_range(0..shape.denominators.len())];
                let e = q(rng.random_range(shape.min_exp * den..=shape.max_exp * den), den);
                let mut c = rng.random_range(-shape.max_coeff..shape.max_coeff);
                if c >= 0 {
                    c += 1;
                }
                (e, qi(c))
            })
            .collect();
        let s = PuiseuxSeries::from_terms(terms);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Random coordinates for `labels`: most points are small perturbations of
/// earlier ones so that the cluster family has some depth. Every series keeps
/// the term bound of `shape`.
pub fn random_points(
    rng: &mut impl Rng,
    labels: &[String],
    shape: &SeriesShape,
) -> BTreeMap<String, PuiseuxSeries> {
    let mut out: BTreeMap<String, PuiseuxSeries> = BTreeMap::new();
    let mut chosen: Vec<PuiseuxSeries> = Vec::new();
    for l in labels {
        loop {
            let candidate = if !chosen.is_empty() && rng.random_bool(0.6) {
                let base = &chosen[rng.random_range(0..chosen.len())];
                let e = rng.random_range(shape.min_exp..=shape.max_exp);
                let mut c = rng.random_range(-shape.max_coeff..shape.max_coeff);
                if c >= 0 {
                    c += 1;
                }
                base + &PuiseuxSeries::monomial(qi(c), qi(e))
            } else {
                random_series(rng, shape)
            };
            let fits = !candidate.is_zero() && candidate.num_terms() <= shape.max_terms;
            if fits && chosen.iter().all(|x| !(x - &candidate).is_zero()) {
                chosen.push(candidate.clone());
                out.insert(l.clone(), candidate);
                break;
            }
        }
    }
    out
}

pub fn mark_names(n: usize) -> Vec<String> {
    (1..=n).map(|k| k.to_string()).collect()
}

/// Random standard-form curve of projective degree `d` in `P^r`.
pub fn random_projective_input(
    rng: &mut impl Rng,
    r: usize,
    d: u32,
    n_marks: usize,
    shape: &SeriesShape,
) -> CurveInput {
    let degree = TropicalDegree::projective(r, d).expect("r, d positive");
    random_input_for(rng, degree, n_marks, shape)
}

pub fn random_input_for(
    rng: &mut impl Rng,
    degree: TropicalDegree,
    n_marks: usize,
    shape: &SeriesShape,
) -> CurveInput {
    let marks = mark_names(n_marks.max(1));
    let i0 = marks[0].clone();
    let others: Vec<String> = marks[1..]
        .iter()
        .cloned()
        .chain(degree.labels().iter().map(|l| l.name.clone()))
        .collect();
    let a = random_points(rng, &others, shape);
    let c = (0..degree.rays().len())
        .map(|_| random_series(rng, shape))
        .collect();
    CurveInput::new(degree, marks, i0, a, c).expect("generated input is valid")
}

fn random_primitive(rng: &mut impl Rng, r: usize) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..r).map(|_| rng.random_range(-2..=2)).collect();
        let g = v.iter().fold(0i64, |g, x| g.gcd(x));
        if g == 1 {
            return v;
        }
    }
}

/// Random balanced toric degree in `Z^r` with a handful of labels.
pub fn random_toric_degree(rng: &mut impl Rng, r: usize) -> TropicalDegree {
    loop {
        let mut rays: Vec<Vec<i64>> = Vec::new();
        let mut labels = Vec::new();
        let mut total = vec![0i64; r];
        let count = rng.random_range(2..=4);
        for k in 0..count {
            let u = random_primitive(rng, r);
            let omega = rng.random_range(1..=2u32);
            for (t, x) in total.iter_mut().zip(&u) {
                *t += omega as i64 * x;
            }
            let ray = rays.iter().position(|v| *v == u).unwrap_or_else(|| {
                rays.push(u.clone());
                rays.len() - 1
            });
            labels.push(DegreeLabel { name: format!("j{k}"), ray, omega });
        }
        let g = total.iter().fold(0i64, |g, x| g.gcd(x));
        if g != 0 {
            let u: Vec<i64> = total.iter().map(|x| -x / g).collect();
            let ray = rays.iter().position(|v| *v == u).unwrap_or_else(|| {
                rays.push(u.clone());
                rays.len() - 1
            });
            labels.push(DegreeLabel { name: format!("j{count}"), ray, omega: g as u32 });
        }
        if labels.len() >= 2 {
            if let Ok(deg) = TropicalDegree::toric(rays, labels) {
                return deg;
            }
        }
    }
}

/// One member of the random verification suites: projective, `d <= 3`,
/// `r <= 3`, one to three marks.
pub fn random_suite_input(rng: &mut impl Rng) -> CurveInput {
    let r = rng.random_range(1..=3);
    let d = rng.random_range(1..=3);
    let n = rng.random_range(1..=3);
    random_projective_input(rng, r, d, n, &SeriesShape::default())
}

/// A fresh evaluation parameter, distinct from every boundary label's point.
pub fn random_parameter(rng: &mut impl Rng, input: &CurveInput, shape: &SeriesShape) -> PuiseuxSeries {
    let labels: Vec<&PuiseuxSeries> = input
        .degree
        .labels()
        .iter()
        .map(|l| &input.a[&l.name])
        .collect();
    loop {
        let a = if rng.random_bool(0.5) {
            let base = labels[rng.random_range(0..labels.len())];
            let e = q(rng.random_range(2 * shape.min_exp..=2 * shape.max_exp + 4), 2);
            base + &PuiseuxSeries::monomial(qi(rng.random_range(1..=3)), e)
        } else {
            random_series(rng, shape)
        };
        if labels.iter().all(|b| !(*b - &a).is_zero()) {
            return a;
        }
    }
}
