//! Algebraic and pipeline invariants on random instances.

mod common;

use common::{any_relation, grid_values, labels, nested, relation};
use fuzzyrel::io::{
    parse_grade_counts, parse_relation, parse_solution_set, serialize_solution_set,
    write_grade_counts, write_relation,
};
use fuzzyrel::{
    inverse_assessment, learner_profile, FreProblem, FuzzyRelation, FuzzySet, GradeDistribution,
    Rational, Scale,
};
use proptest::prelude::*;

/// Three relations that chain: `a: x×y`, `b: y×z`, `c: z×w`.
fn chain(max: usize) -> impl Strategy<Value = [FuzzyRelation<f64>; 3]> {
    (1..=max, 1..=max, 1..=max, 1..=max).prop_flat_map(|(n, m, s, t)| {
        (grid_values(n, m), grid_values(m, s), grid_values(s, t)).prop_map(move |(a, b, c)| {
            let (x, y, z, w) = (
                labels("x", n),
                labels("y", m),
                labels("z", s),
                labels("w", t),
            );
            [
                relation(&x, &y, a),
                relation(&y, &z, b),
                relation(&z, &w, c),
            ]
        })
    })
}

/// `k` relations sharing the same `x×y` labels.
fn same_shape(max: usize, k: usize) -> impl Strategy<Value = Vec<FuzzyRelation<f64>>> {
    (1..=max, 1..=max).prop_flat_map(move |(n, m)| {
        prop::collection::vec(grid_values(n, m), k).prop_map(move |all| {
            let (x, y) = (labels("x", n), labels("y", m));
            all.into_iter().map(|v| relation(&x, &y, v)).collect()
        })
    })
}

/// `lo <= hi` on the same labels, plus a right operand for both.
fn ordered_pair(max: usize) -> impl Strategy<Value = [FuzzyRelation<f64>; 3]> {
    (1..=max, 1..=max, 1..=max).prop_flat_map(|(n, m, s)| {
        (grid_values(n, m), grid_values(n, m), grid_values(m, s)).prop_map(move |(a, b, q)| {
            let (x, y, z) = (labels("x", n), labels("y", m), labels("z", s));
            let lo: Vec<f64> = a.iter().zip(&b).map(|(u, v)| u.min(*v)).collect();
            let hi: Vec<f64> = a.iter().zip(&b).map(|(u, v)| u.max(*v)).collect();
            [
                relation(&x, &y, lo),
                relation(&x, &y, hi),
                relation(&y, &z, q),
            ]
        })
    })
}

fn grade_counts() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..50, 5)
        .prop_filter("at least one student", |c| c.iter().any(|&n| n > 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn composition_is_associative([a, b, c] in chain(3)) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn composition_matches_reference_and_stays_bounded([a, b, _c] in chain(4)) {
        let r = a.compose(&b).unwrap();
        prop_assert_eq!(nested(&r), fuzzyrel_testkit::compose(&nested(&a), &nested(&b), 0.0));
        for i in 0..r.n_rows() {
            let row_max = a.row(i).iter().copied().fold(0.0, f64::max);
            for (j, col_max) in b.column_maxima().into_iter().enumerate() {
                let v = r.get(i, j);
                prop_assert!((0.0..=1.0).contains(&v));
                prop_assert!(v <= row_max.min(col_max));
            }
        }
    }

    #[test]
    fn identity_is_neutral(p in any_relation(4, 4)) {
        let left = FuzzyRelation::identity(p.row_labels().clone());
        let right = FuzzyRelation::identity(p.col_labels().clone());
        prop_assert_eq!(&left.compose(&p).unwrap(), &p);
        prop_assert_eq!(&p.compose(&right).unwrap(), &p);
    }

    #[test]
    fn composition_is_monotone_on_the_left([lo, hi, q] in ordered_pair(4)) {
        prop_assert!(lo.leq(&hi).unwrap());
        prop_assert!(lo.compose(&q).unwrap().leq(&hi.compose(&q).unwrap()).unwrap());
    }

    #[test]
    fn order_axioms(rels in same_shape(2, 3)) {
        let (a, b, c) = (&rels[0], &rels[1], &rels[2]);
        prop_assert!(a.leq(a).unwrap());
        if a.leq(b).unwrap() && b.leq(a).unwrap() {
            prop_assert_eq!(a, b);
        }
        if a.leq(b).unwrap() && b.leq(c).unwrap() {
            prop_assert!(a.leq(c).unwrap());
        }
    }

    #[test]
    fn order_is_transitive_on_sorted_triples(rels in same_shape(4, 3)) {
        let entrywise = |pick: fn(&mut [f64; 3]) -> f64| {
            let values = (0..rels[0].entries().len())
                .map(|i| {
                    let mut t = [rels[0].entries()[i], rels[1].entries()[i], rels[2].entries()[i]];
                    t.sort_by(f64::total_cmp);
                    pick(&mut t)
                })
                .collect();
            relation(rels[0].row_labels(), rels[0].col_labels(), values)
        };
        let (lo, mid, hi) = (entrywise(|t| t[0]), entrywise(|t| t[1]), entrywise(|t| t[2]));
        prop_assert!(lo.leq(&mid).unwrap() && mid.leq(&hi).unwrap());
        prop_assert!(lo.leq(&hi).unwrap());
        if lo != hi {
            prop_assert!(!hi.leq(&lo).unwrap());
        }
    }

    #[test]
    fn rounded_degrees_sum_near_one(counts in grade_counts(), digits in 0u32..=4) {
        let dist = GradeDistribution::new(Scale::grades(), counts).unwrap();
        let exact: FuzzySet<Rational> = dist.to_fuzzy_set(None).unwrap();
        let sum = exact.degrees().iter().fold(Rational::from_integer(0), |a, &b| a + b);
        prop_assert_eq!(sum, Rational::from_integer(1));

        let rounded: FuzzySet<Rational> = dist.to_fuzzy_set(Some(digits)).unwrap();
        let sum = rounded.degrees().iter().fold(Rational::from_integer(0), |a, &b| a + b);
        // half a unit in the last place per grade
        let slack = Rational::new(5, 2 * 10i64.pow(digits));
        let diff = sum - Rational::from_integer(1);
        prop_assert!(-slack <= diff && diff <= slack);
    }

    #[test]
    fn profile_round_trips_through_inverse_assessment(
        m in grid_values(1, 5),
        q in grid_values(5, 4),
    ) {
        let grades = Scale::grades().labels().clone();
        let stages = Scale::stages().labels().clone();
        let m = FuzzySet::new(grades.clone(), m).unwrap();
        let q = relation(&grades, &stages, q);
        let profile = learner_profile(&m, &q).unwrap();
        let composed = m.as_row().compose(&q).unwrap();
        prop_assert_eq!(profile.degrees(), composed.entries());
        prop_assert!(profile.degrees().iter().all(|&d| d <= m.height()));

        let set = inverse_assessment(&q, &profile, 0.0).unwrap();
        prop_assert!(set.solvable());
        let c = set.locate(&m.as_row(), &q, &profile.as_row(), 0.0).unwrap();
        prop_assert!(c.contains() && c.is_consistent());
    }

    #[test]
    fn relation_text_round_trips(rel in any_relation(5, 5), noise in prop::collection::vec(0.0f64..=1.0, 25)) {
        let values: Vec<f64> = rel.entries().iter().zip(&noise).map(|(_, &v)| v).collect();
        let rel = relation(rel.row_labels(), rel.col_labels(), values);
        let text = write_relation(&rel);
        let back = parse_relation::<f64>(&text).unwrap();
        prop_assert_eq!(&back, &rel);
        prop_assert_eq!(write_relation(&back), text);
    }

    #[test]
    fn grade_counts_round_trip(counts in grade_counts()) {
        let dist = GradeDistribution::new(Scale::grades(), counts).unwrap();
        let text = write_grade_counts(&dist);
        let back = parse_grade_counts(&text, &Scale::grades()).unwrap();
        prop_assert_eq!(&back, &dist);
        prop_assert_eq!(write_grade_counts(&back), text);
    }

    #[test]
    fn solution_documents_round_trip(q in grid_values(4, 3), p in grid_values(1, 4), r in grid_values(1, 3), reachable in any::<bool>()) {
        let q = relation(&labels("g", 4), &labels("s", 3), q);
        let r = if reachable {
            relation(&labels("M", 1), &labels("g", 4), p).compose(&q).unwrap()
        } else {
            relation(&labels("M", 1), &labels("s", 3), r)
        };
        let set = FreProblem::new(q, r).unwrap().solve().unwrap();
        let text = serialize_solution_set(&set);
        let back = parse_solution_set::<f64>(&text).unwrap();
        prop_assert_eq!(&back, &set);
        prop_assert_eq!(serialize_solution_set(&back), text);
    }
}
