//! Labeled fuzzy sets and fuzzy binary relations over finite label sets.
//!
//! A [`FuzzyRelation`] is a membership matrix whose rows and columns are
//! named by [`LabelSet`]s. Composition is max-min: entry `(i, j)` of
//! `P ∘ Q` is the largest `min(p_ik, q_kj)` over the shared inner labels.
//! Because max and min only select existing values, composition never
//! introduces rounding.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Row label used when a fuzzy set is lifted to a one-row relation.
pub const DEFAULT_ROW_LABEL: &str = "M";

/// An ordered set of distinct, non-empty labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabelSet {
    labels: Vec<String>,
}

impl LabelSet {
    pub fn new<I, T>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyLabelSet);
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for label in &labels {
            if label.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; construction rejects empty sets.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&str> {
        self.labels.get(index).map(String::as_str)
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.position(label).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> + '_ {
        self.labels.iter().map(String::as_str)
    }

    pub fn as_slice(&self) -> &[String] {
        &self.labels
    }

    pub(crate) fn expect_same(&self, other: &LabelSet, context: &'static str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::LabelMismatch {
                context,
                left: self.labels.clone(),
                right: other.labels.clone(),
            })
        }
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(", "))
    }
}

/// A value in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct MembershipDegree<S>(S);

impl<S: Scalar> MembershipDegree<S> {
    /// Rejects anything outside `[0, 1]`, including NaN. Never clamps.
    pub fn new(value: S) -> Result<Self> {
        if value >= S::zero() && value <= S::one() {
            Ok(Self(value))
        } else {
            Err(Error::DegreeOutOfRange(value.to_string()))
        }
    }

    pub fn zero() -> Self {
        Self(S::zero())
    }

    pub fn one() -> Self {
        Self(S::one())
    }

    pub fn value(self) -> S {
        self.0
    }
}

fn check_degrees<S: Scalar>(values: &[S]) -> Result<()> {
    values
        .iter()
        .try_for_each(|&v| MembershipDegree::new(v).map(drop))
}

/// A fuzzy set on a finite label set.
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzySet<S> {
    domain: LabelSet,
    degrees: Vec<S>,
}

impl<S: Scalar> FuzzySet<S> {
    pub fn new(domain: LabelSet, degrees: Vec<S>) -> Result<Self> {
        if degrees.len() != domain.len() {
            return Err(Error::DimensionMismatch {
                what: "degrees",
                expected: domain.len(),
                found: degrees.len(),
            });
        }
        check_degrees(&degrees)?;
        Ok(Self { domain, degrees })
    }

    pub fn zeros(domain: LabelSet) -> Self {
        let degrees = vec![S::zero(); domain.len()];
        Self { domain, degrees }
    }

    pub fn domain(&self) -> &LabelSet {
        &self.domain
    }

    pub fn degrees(&self) -> &[S] {
        &self.degrees
    }

    pub fn degree(&self, label: &str) -> Option<MembershipDegree<S>> {
        self.domain
            .position(label)
            .map(|i| MembershipDegree(self.degrees[i]))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, S)> + '_ {
        self.domain.iter().zip(self.degrees.iter().copied())
    }

    /// Largest degree in the set (the height).
    pub fn height(&self) -> S {
        self.degrees.iter().copied().fold(S::zero(), scalar::max)
    }

    /// The one-row relation induced by this set, with row label `M`.
    pub fn as_row(&self) -> FuzzyRelation<S> {
        self.to_row(DEFAULT_ROW_LABEL)
    }

    pub fn to_row(&self, row_label: &str) -> FuzzyRelation<S> {
        FuzzyRelation {
            rows: LabelSet {
                labels: vec![row_label.to_owned()],
            },
            cols: self.domain.clone(),
            entries: self.degrees.clone(),
        }
    }
}

/// A fuzzy binary relation stored as a labeled, row-major membership matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzyRelation<S> {
    rows: LabelSet,
    cols: LabelSet,
    entries: Vec<S>,
}

impl<S: Scalar> FuzzyRelation<S> {
    pub fn new(rows: LabelSet, cols: LabelSet, grid: Vec<Vec<S>>) -> Result<Self> {
        if grid.len() != rows.len() {
            return Err(Error::DimensionMismatch {
                what: "rows",
                expected: rows.len(),
                found: grid.len(),
            });
        }
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for row in grid {
            if row.len() != cols.len() {
                return Err(Error::DimensionMismatch {
                    what: "columns",
                    expected: cols.len(),
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Self::from_row_major(rows, cols, entries)
    }

    pub fn from_row_major(rows: LabelSet, cols: LabelSet, entries: Vec<S>) -> Result<Self> {
        let expected = rows.len() * cols.len();
        if entries.len() != expected {
            return Err(Error::DimensionMismatch {
                what: "entries",
                expected,
                found: entries.len(),
            });
        }
        check_degrees(&entries)?;
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Square relation with 1 on the diagonal and 0 elsewhere; neutral for
    /// max-min composition on either side.
    pub fn identity(labels: LabelSet) -> Self {
        let n = labels.len();
        let entries = (0..n * n)
            .map(|idx| {
                if idx / n == idx % n {
                    S::one()
                } else {
                    S::zero()
                }
            })
            .collect();
        Self {
            rows: labels.clone(),
            cols: labels,
            entries,
        }
    }

    pub fn row_labels(&self) -> &LabelSet {
        &self.rows
    }

    pub fn col_labels(&self) -> &LabelSet {
        &self.cols
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, row: usize, col: usize) -> S {
        assert!(col < self.n_cols(), "column index out of bounds");
        self.entries[row * self.n_cols() + col]
    }

    pub fn row(&self, row: usize) -> &[S] {
        let n = self.n_cols();
        &self.entries[row * n..(row + 1) * n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> + '_ {
        self.entries.chunks(self.n_cols())
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn is_row(&self) -> bool {
        self.n_rows() == 1
    }

    /// Row `i` as a fuzzy set on the column labels.
    pub fn row_set(&self, row: usize) -> FuzzySet<S> {
        FuzzySet {
            domain: self.cols.clone(),
            degrees: self.row(row).to_vec(),
        }
    }

    /// The single row of a one-row relation as a fuzzy set.
    pub fn to_fuzzy_set(&self) -> Result<FuzzySet<S>> {
        if !self.is_row() {
            return Err(Error::NotARow(self.n_rows()));
        }
        Ok(self.row_set(0))
    }

    /// Largest entry of each column.
    pub fn column_maxima(&self) -> Vec<S> {
        let mut maxima = vec![S::zero(); self.n_cols()];
        for row in self.rows() {
            for (m, &v) in maxima.iter_mut().zip(row) {
                *m = scalar::max(*m, v);
            }
        }
        maxima
    }

    /// Max-min composition `self ∘ rhs`.
    pub fn compose(&self, rhs: &FuzzyRelation<S>) -> Result<FuzzyRelation<S>> {
        self.cols
            .expect_same(&rhs.rows, "inner labels of composition")?;
        let inner = self.n_cols();
        let out_cols = rhs.n_cols();
        let mut entries = Vec::with_capacity(self.n_rows() * out_cols);
        for left in self.rows() {
            for j in 0..out_cols {
                let value = (0..inner)
                    .map(|k| scalar::min(left[k], rhs.entries[k * out_cols + j]))
                    .fold(S::zero(), scalar::max);
                entries.push(value);
            }
        }
        Ok(FuzzyRelation {
            rows: self.rows.clone(),
            cols: rhs.cols.clone(),
            entries,
        })
    }

    /// Component-wise order: true iff every entry of `self` is at most the
    /// matching entry of `other`.
    pub fn leq(&self, other: &FuzzyRelation<S>) -> Result<bool> {
        self.rows
            .expect_same(&other.rows, "row labels of comparison")?;
        self.cols
            .expect_same(&other.cols, "column labels of comparison")?;
        Ok(self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b))
    }

    /// Maps degrees through `f`, re-validating the results.
    pub fn try_map<T: Scalar>(&self, f: impl Fn(S) -> T) -> Result<FuzzyRelation<T>> {
        FuzzyRelation::from_row_major(
            self.rows.clone(),
            self.cols.clone(),
            self.entries.iter().map(|&v| f(v)).collect(),
        )
    }
}

/// `p ∘ q` under max-min composition.
pub fn compose_maxmin<S: Scalar>(
    p: &FuzzyRelation<S>,
    q: &FuzzyRelation<S>,
) -> Result<FuzzyRelation<S>> {
    p.compose(q)
}

pub fn relation_leq<S: Scalar>(a: &FuzzyRelation<S>, b: &FuzzyRelation<S>) -> Result<bool> {
    a.leq(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> LabelSet {
        LabelSet::new(names.iter().copied()).unwrap()
    }

    fn composition_pair() -> (FuzzyRelation<f64>, FuzzyRelation<f64>) {
        let p = FuzzyRelation::new(
            labels(&["x1", "x2", "x3"]),
            labels(&["y1", "y2", "y3"]),
            vec![
                vec![0.2, 0.4, 0.8],
                vec![0.1, 0.5, 1.0],
                vec![0.4, 0.7, 0.3],
            ],
        )
        .unwrap();
        let q = FuzzyRelation::new(
            labels(&["y1", "y2", "y3"]),
            labels(&["z1", "z2", "z3", "z4"]),
            vec![
                vec![0.2, 0.7, 0.0, 0.4],
                vec![0.8, 0.1, 0.5, 0.6],
                vec![1.0, 0.3, 0.2, 0.9],
            ],
        )
        .unwrap();
        (p, q)
    }

    #[test]
    fn label_set_validation() {
        assert_eq!(
            LabelSet::new(Vec::<String>::new()),
            Err(Error::EmptyLabelSet)
        );
        assert_eq!(LabelSet::new(["a", ""]), Err(Error::EmptyLabel));
        assert_eq!(
            LabelSet::new(["a", "b", "a"]),
            Err(Error::DuplicateLabel("a".into()))
        );
        let set = labels(&["b", "a"]);
        assert_eq!(set.position("a"), Some(1));
        assert_eq!(set.to_string(), "{b, a}");
    }

    #[test]
    fn new_relation_rejects_bad_input() {
        let err = FuzzyRelation::new(labels(&["a"]), labels(&["b"]), vec![vec![1.5]]);
        assert_eq!(err, Err(Error::DegreeOutOfRange("1.5".into())));
        let err = FuzzyRelation::new(labels(&["a"]), labels(&["b"]), vec![vec![-0.0001]]);
        assert!(matches!(err, Err(Error::DegreeOutOfRange(_))));
        let err = FuzzyRelation::new(labels(&["a"]), labels(&["b"]), vec![vec![f64::NAN]]);
        assert!(matches!(err, Err(Error::DegreeOutOfRange(_))));
        let err = FuzzyRelation::new(labels(&["a"]), labels(&["b", "c"]), vec![vec![0.5]]);
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
        let err = FuzzyRelation::<f64>::new(labels(&["a", "b"]), labels(&["c"]), vec![vec![0.5]]);
        assert!(matches!(
            err,
            Err(Error::DimensionMismatch { what: "rows", .. })
        ));
    }

    #[test]
    fn boundary_values_are_admitted() {
        let rel =
            FuzzyRelation::new(labels(&["a"]), labels(&["b", "c"]), vec![vec![0.0, 1.0]]).unwrap();
        assert_eq!(rel.entries(), &[0.0, 1.0]);
        assert_eq!((rel.n_rows(), rel.n_cols()), (1, 2));
    }

    #[test]
    fn composes_worked_example() {
        let (p, q) = composition_pair();
        let r = p.compose(&q).unwrap();
        assert_eq!(r.row_labels(), p.row_labels());
        assert_eq!(r.col_labels(), q.col_labels());
        assert_eq!(
            r.rows().map(<[f64]>::to_vec).collect::<Vec<_>>(),
            vec![
                vec![0.8, 0.3, 0.4, 0.8],
                vec![1.0, 0.3, 0.5, 0.9],
                vec![0.7, 0.4, 0.5, 0.6],
            ]
        );
    }

    #[test]
    fn composition_requires_matching_inner_labels() {
        let (p, q) = composition_pair();
        assert!(matches!(q.compose(&p), Err(Error::LabelMismatch { .. })));
        // same size, different order
        let reordered = FuzzyRelation::new(
            labels(&["y2", "y1", "y3"]),
            labels(&["z1"]),
            vec![vec![0.1], vec![0.2], vec![0.3]],
        )
        .unwrap();
        assert!(p.compose(&reordered).is_err());
    }

    #[test]
    fn identity_is_neutral() {
        let (p, _) = composition_pair();
        let left = FuzzyRelation::identity(p.row_labels().clone());
        let right = FuzzyRelation::identity(p.col_labels().clone());
        assert_eq!(left.compose(&p).unwrap(), p);
        assert_eq!(p.compose(&right).unwrap(), p);
        let id = FuzzyRelation::<f64>::identity(labels(&["a", "b"]));
        assert_eq!(id.entries(), &[1.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn all_ones_row_selects_column_maxima() {
        let grades = labels(&["A", "B", "C", "D", "F"]);
        let q = FuzzyRelation::new(
            grades.clone(),
            labels(&["R", "I", "G", "Ca"]),
            vec![
                vec![0.7, 0.5, 0.3, 0.0],
                vec![0.4, 0.6, 0.3, 0.1],
                vec![0.2, 0.7, 0.6, 0.2],
                vec![0.1, 0.5, 0.7, 0.5],
                vec![0.0, 0.1, 0.5, 0.8],
            ],
        )
        .unwrap();
        let ones = FuzzySet::new(grades, vec![1.0; 5]).unwrap().as_row();
        assert_eq!(ones.compose(&q).unwrap().entries(), &[0.7, 0.7, 0.7, 0.8]);
        assert_eq!(q.column_maxima(), vec![0.7, 0.7, 0.7, 0.8]);
    }

    #[test]
    fn partial_order() {
        let dom = labels(&["A", "B", "C", "D", "F"]);
        let p = FuzzySet::new(dom.clone(), vec![0.33, 0.25, 0.12, 0.17, 0.13]).unwrap();
        let g = FuzzySet::new(dom, vec![0.33, 0.33, 0.17, 0.17, 0.17]).unwrap();
        assert!(relation_leq(&p.as_row(), &g.as_row()).unwrap());
        assert!(!relation_leq(&g.as_row(), &p.as_row()).unwrap());
        assert!(p.as_row().leq(&p.as_row()).unwrap());

        let two = labels(&["u", "v"]);
        let a = FuzzySet::new(two.clone(), vec![0.5, 0.1]).unwrap().as_row();
        let b = FuzzySet::new(two, vec![0.1, 0.5]).unwrap().as_row();
        assert!(!a.leq(&b).unwrap());
        assert!(!b.leq(&a).unwrap());

        let other = FuzzySet::new(labels(&["u", "w"]), vec![0.5, 0.1])
            .unwrap()
            .as_row();
        assert!(a.leq(&other).is_err());
    }

    #[test]
    fn fuzzy_set_row_round_trip() {
        let dom = labels(&["A", "B", "C", "D", "F"]);
        let m = FuzzySet::new(dom.clone(), vec![0.33, 0.25, 0.12, 0.17, 0.13]).unwrap();
        let row = m.as_row();
        assert_eq!(row.row_labels().as_slice(), &["M".to_string()]);
        assert_eq!(row.entries(), &[0.33, 0.25, 0.12, 0.17, 0.13]);
        assert_eq!(row.to_fuzzy_set().unwrap(), m);
        assert_eq!(m.degree("D").map(MembershipDegree::value), Some(0.17));
        assert_eq!(m.height(), 0.33);

        let zero = FuzzySet::<f64>::zeros(dom);
        assert!(zero.as_row().entries().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn non_row_cannot_become_a_set() {
        let (p, _) = composition_pair();
        assert_eq!(p.to_fuzzy_set(), Err(Error::NotARow(3)));
    }
}
