#![allow(dead_code)]

use fuzzyrel::{FuzzyRelation, LabelSet};
use proptest::prelude::*;

pub const GRID: [f64; 11] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];

pub fn labels(prefix: &str, n: usize) -> LabelSet {
    LabelSet::new((0..n).map(|i| format!("{prefix}{i}"))).unwrap()
}

pub fn relation(rows: &LabelSet, cols: &LabelSet, values: Vec<f64>) -> FuzzyRelation<f64> {
    FuzzyRelation::from_row_major(rows.clone(), cols.clone(), values).unwrap()
}

pub fn nested(rel: &FuzzyRelation<f64>) -> Vec<Vec<f64>> {
    rel.rows().map(<[f64]>::to_vec).collect()
}

/// Row-major values of an `n x m` matrix drawn from [`GRID`].
pub fn grid_values(n: usize, m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop::sample::select(GRID.to_vec()), n * m)
}

/// A relation with the given label prefixes and random dimensions in
/// `1..=max_rows` x `1..=max_cols`.
pub fn any_relation(max_rows: usize, max_cols: usize) -> impl Strategy<Value = FuzzyRelation<f64>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(n, m)| {
        grid_values(n, m).prop_map(move |v| relation(&labels("x", n), &labels("y", m), v))
    })
}
