use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::Rng;

use super::*;
use crate::random::{random_parameter, random_points, random_suite_input, seeded, SeriesShape};
use crate::rational::{q, qi};
use crate::trees::{BalanceReport, TropicalDegree};

fn s(terms: &[(i64, i64)]) -> PuiseuxSeries {
    PuiseuxSeries::from_terms(terms.iter().map(|&(e, c)| (qi(e), qi(c))))
}

pub(crate) fn conic_example() -> CurveInput {
    let a = BTreeMap::from([
        ("(0,1)".to_string(), s(&[(-2, 1), (0, 1)])),
        ("(1,1)".to_string(), s(&[(-1, 1)])),
        ("(2,1)".to_string(), s(&[(-2, 1)])),
        ("(0,2)".to_string(), s(&[(0, 2)])),
        ("(1,2)".to_string(), s(&[(0, 2), (1, 1), (3, 4)])),
        ("(2,2)".to_string(), s(&[(0, 2), (1, 1)])),
        ("2".to_string(), s(&[(0, 2), (1, 1), (3, 4), (4, -1)])),
    ]);
    let c = vec![s(&[(-1, 1)]), s(&[(-1, 2), (1, 3)]), s(&[(0, 1), (1, 1)])];
    CurveInput::new(
        TropicalDegree::projective(2, 2).unwrap(),
        vec!["1".into(), "2".into()],
        "1",
        a,
        c,
    )
    .unwrap()
}

fn set(labels: &[&str]) -> BTreeSet<String> {
    labels.iter().map(|l| l.to_string()).collect()
}

/// Definition-level oracle: `nu(A)` over every nonempty subset, then the
/// maximal elements of the preorder `A ⊆ B, nu(A) = nu(B)`.
fn brute_force_clusters(a: &BTreeMap<String, PuiseuxSeries>) -> Vec<Cluster> {
    let names: Vec<&String> = a.keys().collect();
    let n = names.len();
    let nu_of = |mask: u32| -> Valuation {
        let mut best = Valuation::Infinite;
        for i in 0..n {
            for j in i + 1..n {
                if mask & (1 << i) != 0 && mask & (1 << j) != 0 {
                    let v = (&a[names[i]] - &a[names[j]]).valuation().unwrap();
                    best = best.min(v);
                }
            }
        }
        best
    };
    let all: Vec<(u32, Valuation)> = (1u32..(1 << n)).map(|m| (m, nu_of(m))).collect();
    all.iter()
        .filter(|(m, v)| {
            !all.iter()
                .any(|(m2, v2)| *m2 != *m && m2 & m == *m && v2 == v)
        })
        .map(|(m, v)| Cluster {
            labels: (0..n).filter(|i| m & (1 << i) != 0).map(|i| names[i].clone()).collect(),
            nu: v.clone(),
        })
        .collect()
}

#[test]
fn example_cluster_family() {
    let input = conic_example();
    let fam = cluster_tree(&input.a).unwrap();
    let expect = [
        (set(&["(0,1)", "(1,1)", "(2,1)", "(0,2)", "(1,2)", "(2,2)", "2"]), qi(-2)),
        (set(&["(0,1)", "(2,1)"]), qi(0)),
        (set(&["(1,1)", "(0,2)", "(1,2)", "(2,2)", "2"]), qi(-1)),
        (set(&["(0,2)", "(1,2)", "(2,2)", "2"]), qi(1)),
        (set(&["(1,2)", "(2,2)", "2"]), qi(3)),
        (set(&["(1,2)", "2"]), qi(4)),
    ];
    for (labels, nu) in &expect {
        let c = fam.find(labels).unwrap_or_else(|| panic!("missing {labels:?}"));
        assert_eq!(c.nu, Valuation::Finite(nu.clone()));
    }
    assert_eq!(fam.len(), expect.len() + 7);
    assert!(fam.members().iter().filter(|c| c.labels.len() == 1).all(|c| c.nu.is_infinite()));
    assert_eq!(fam.members()[0].labels.len(), 7);
}

#[test]
fn small_cluster_families() {
    let a = BTreeMap::from([
        ("x".to_string(), s(&[(0, 1)])),
        ("y".to_string(), s(&[(0, 1), (1, 1)])),
        ("z".to_string(), s(&[(0, 2)])),
    ]);
    let fam = cluster_tree(&a).unwrap();
    assert_eq!(fam.len(), 5);
    assert_eq!(fam.find(&set(&["x", "y", "z"])).unwrap().nu, Valuation::Finite(qi(0)));
    assert_eq!(fam.find(&set(&["x", "y"])).unwrap().nu, Valuation::Finite(qi(1)));
    let mut brute = brute_force_clusters(&a);
    brute.sort_by(|x, y| (&x.nu, &x.labels).cmp(&(&y.nu, &y.labels)));
    assert_eq!(fam.members(), brute.as_slice());

    let star = BTreeMap::from([
        ("x".to_string(), s(&[(0, 1)])),
        ("y".to_string(), s(&[(0, 2)])),
        ("z".to_string(), s(&[(0, 3)])),
    ]);
    let fam = cluster_tree(&star).unwrap();
    assert_eq!(fam.len(), 4);
}

#[test]
fn duplicate_points_rejected() {
    let a = BTreeMap::from([
        ("x".to_string(), s(&[(0, 1)])),
        ("y".to_string(), s(&[(0, 1)])),
    ]);
    assert!(matches!(cluster_tree(&a), Err(Error::DuplicatePoint(_, _))));
}

#[test]
fn truncation_propagates() {
    let a = BTreeMap::from([
        ("x".to_string(), s(&[(0, 1)])),
        ("y".to_string(), s(&[(0, 1)]).truncated(qi(2))),
    ]);
    assert!(matches!(cluster_tree(&a), Err(Error::PrecisionLoss(_))));
}

#[test]
fn example_curve() {
    let trop = tropicalize(&conic_example()).unwrap();
    let curve = &trop.curve;
    assert_eq!(curve.tree.validate(), Ok(()));
    assert_eq!(curve.tree.inner_vertices().count(), 6);
    let mut lengths: Vec<Q> = curve.tree.bounded_edges().map(|(_, e)| e.length.finite().unwrap().clone()).collect();
    lengths.sort();
    assert_eq!(lengths, vec![qi(1), qi(1), qi(2), qi(2), qi(2)]);
    assert_eq!(curve.check_balancing().unwrap(), BalanceReport::Balanced);
    assert_eq!(curve.leg_position("1").unwrap(), &vec![qi(0), qi(1)]);
    assert_eq!(curve.leg_position("2").unwrap(), &vec![qi(4), qi(3)]);
    assert_eq!(curve.leg_position("(0,1)").unwrap(), &vec![qi(-2), qi(1)]);
    assert_eq!(curve.leg_position("(0,2)").unwrap(), &vec![qi(1), qi(1)]);
    assert_eq!(curve.leg_position("(2,2)").unwrap(), &vec![qi(3), qi(3)]);
    // Same tree as the hand-built example in the trees module.
    let hand = crate::trees::tests::example_tree();
    assert_eq!(curve.tree.canonical_form("1").unwrap(), hand.canonical_form("1").unwrap());
}

#[test]
fn line_with_one_bounded_edge() {
    let a = BTreeMap::from([
        ("(0,1)".to_string(), s(&[(1, 1)])),
        ("(1,1)".to_string(), s(&[(0, 1)])),
        ("(2,1)".to_string(), s(&[(0, 1), (1, 1)])),
    ]);
    let input = CurveInput::new(
        TropicalDegree::projective(2, 1).unwrap(),
        vec!["1".into()],
        "1",
        a,
        vec![PuiseuxSeries::one(); 3],
    )
    .unwrap();
    let trop = tropicalize(&input).unwrap();
    assert_eq!(trop.clusters.len(), 5);
    assert_eq!(trop.clusters.find(&set(&["(1,1)", "(2,1)"])).unwrap().nu, Valuation::Finite(qi(1)));
    let curve = &trop.curve;
    let bounded: Vec<_> = curve.tree.bounded_edges().collect();
    assert_eq!(bounded.len(), 1);
    let (id, e) = bounded[0];
    assert_eq!(e.length, EdgeLength::Finite(qi(1)));
    assert_eq!(curve.position(e.ends[0]).unwrap(), &vec![qi(0), qi(0)]);
    assert_eq!(curve.edge_direction(id, e.ends[0]).unwrap(), vec![qi(1), qi(1)]);
    assert_eq!(curve.check_balancing().unwrap(), BalanceReport::Balanced);
}

#[test]
fn image_point_of_a_tropical_line() {
    let a = BTreeMap::from([
        ("(0,1)".to_string(), s(&[(1, 1)])),
        ("(1,1)".to_string(), s(&[(0, 1)])),
    ]);
    let input = CurveInput::new(
        TropicalDegree::projective(1, 1).unwrap(),
        vec!["1".into()],
        "1",
        a,
        vec![PuiseuxSeries::one(); 2],
    )
    .unwrap();
    assert_eq!(trop_image_point(&input, &PuiseuxSeries::zero()).unwrap(), vec![qi(-1)]);
    assert_eq!(direct_image_point(&input, &PuiseuxSeries::zero()), vec![qi(-1)]);
    // Generic constant: all nu(a - a_j) equal, the anchor itself.
    assert_eq!(trop_image_point(&input, &s(&[(0, 5)])).unwrap(), input.anchor().unwrap());
    assert!(matches!(trop_image_point(&input, &s(&[(0, 1)])), Err(Error::OnBoundary(_))));
}

#[test]
fn image_point_at_a_mark_is_its_evaluation() {
    let input = conic_example();
    let curve = corresponding_curve(&input).unwrap();
    let p = trop_image_point(&input, &input.a["2"]).unwrap();
    assert_eq!(&p, curve.leg_position("2").unwrap());
}

/// Substitution oracle: `sum_rho nu(c_rho prod (a - a_l)^omega) u_rho`.
fn direct_image_point(input: &CurveInput, a: &PuiseuxSeries) -> Vec<Q> {
    let weights: Vec<Q> = (0..input.degree.rays().len())
        .map(|rho| {
            let mut x = input.c[rho].clone();
            for l in input.degree.labels_on_ray(rho) {
                x = &x * &(a - &input.a[&l.name]).pow(l.omega);
            }
            x.valuation().unwrap().finite().unwrap().clone()
        })
        .collect();
    input.degree.combine_rays(&weights)
}

#[test]
fn membership_basics() {
    let input = conic_example();
    let curve = corresponding_curve(&input).unwrap();
    for v in curve.tree.inner_vertices() {
        let p = curve.position(v).unwrap().clone();
        let hit = image_membership(&curve, &p).unwrap().expect("vertex lies on the curve");
        let e = &curve.tree.edges()[hit.edge];
        assert!(hit.t >= qi(0));
        let start = curve.position(if curve.tree.kind(e.ends[0]) == VertexKind::Inner { e.ends[0] } else { e.ends[1] }).unwrap();
        assert!(start == &p || hit.t > qi(0));
    }
    let root = curve.position(0).unwrap().clone();
    assert_eq!(image_membership(&curve, &root).unwrap(), Some(OnCurve { edge: 0, t: qi(0) }));
    let off = vec![&root[0] + q(1, 3), &root[1] + q(2, 7)];
    assert_eq!(image_membership(&curve, &off).unwrap(), None);
}

#[test]
fn example_image_points_lie_on_curve() {
    let input = conic_example();
    let curve = corresponding_curve(&input).unwrap();
    let mut rng = seeded(7);
    let shape = SeriesShape::default();
    for _ in 0..20 {
        let a = random_parameter(&mut rng, &input, &shape);
        let p = trop_image_point(&input, &a).unwrap();
        assert_eq!(p, direct_image_point(&input, &a));
        assert!(image_membership(&curve, &p).unwrap().is_some(), "{a} -> {p:?}");
    }
}

#[test]
fn cluster_tree_matches_power_set_definition() {
    let mut rng = seeded(11);
    let shape = SeriesShape::default();
    for case in 0..300 {
        let n = 1 + case % 6;
        let labels: Vec<String> = (0..n).map(|k| format!("p{k}")).collect();
        let a = random_points(&mut rng, &labels, &shape);
        let mut brute = brute_force_clusters(&a);
        brute.sort_by(|x, y| (&x.nu, &x.labels).cmp(&(&y.nu, &y.labels)));
        assert_eq!(cluster_tree(&a).unwrap().members(), brute.as_slice());
    }
}

fn affine_reparametrize(input: &CurveInput, alpha: &PuiseuxSeries, beta: &PuiseuxSeries) -> CurveInput {
    let mut out = input.clone();
    for v in out.a.values_mut() {
        *v = &(alpha * &*v) + beta;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn curves_are_valid_and_balanced(seed in any::<u64>()) {
        let input = random_suite_input(&mut seeded(seed));
        let curve = corresponding_curve(&input).unwrap();
        prop_assert_eq!(curve.tree.validate(), Ok(()));
        prop_assert_eq!(curve.check_balancing().unwrap(), BalanceReport::Balanced);
        let mut total = vec![qi(0); input.dim()];
        for l in curve.tree.labels() {
            for (t, d) in total.iter_mut().zip(curve.leg_direction(l).unwrap()) {
                *t += d;
            }
        }
        prop_assert!(total.iter().all(|x| *x == qi(0)));
    }

    #[test]
    fn invariant_under_affine_reparametrization(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let input = random_suite_input(&mut rng);
        let shape = SeriesShape::default();
        let alpha = crate::random::random_series(&mut rng, &shape);
        let beta = if rng.random_bool(0.3) { PuiseuxSeries::zero() } else { crate::random::random_series(&mut rng, &shape) };
        let moved = affine_reparametrize(&input, &alpha, &beta);
        prop_assert_eq!(corresponding_curve(&moved).unwrap(), corresponding_curve(&input).unwrap());
    }

    #[test]
    fn invariant_under_common_scaling_of_c(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let input = random_suite_input(&mut rng);
        let gamma = crate::random::random_series(&mut rng, &SeriesShape::default());
        let mut scaled = input.clone();
        for c in &mut scaled.c {
            *c = &*c * &gamma;
        }
        prop_assert_eq!(corresponding_curve(&scaled).unwrap(), corresponding_curve(&input).unwrap());
    }

    #[test]
    fn image_points_are_contained(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let input = random_suite_input(&mut rng);
        let curve = corresponding_curve(&input).unwrap();
        let a = random_parameter(&mut rng, &input, &SeriesShape::default());
        let p = trop_image_point(&input, &a).unwrap();
        prop_assert_eq!(&p, &direct_image_point(&input, &a));
        prop_assert!(image_membership(&curve, &p).unwrap().is_some());
    }

    #[test]
    fn toric_curves_are_balanced(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let r = rng.random_range(1..=3);
        let degree = crate::random::random_toric_degree(&mut rng, r);
        let input = crate::random::random_input_for(&mut rng, degree, 2, &SeriesShape::default());
        let curve = corresponding_curve(&input).unwrap();
        prop_assert_eq!(curve.tree.validate(), Ok(()));
        prop_assert_eq!(curve.check_balancing().unwrap(), BalanceReport::Balanced);
        let a = random_parameter(&mut rng, &input, &SeriesShape::default());
        let p = trop_image_point(&input, &a).unwrap();
        prop_assert_eq!(&p, &direct_image_point(&input, &a));
        prop_assert!(image_membership(&curve, &p).unwrap().is_some());
    }
}
