//! Inverse max-min equations: given `Q` and a one-row `R`, find every row
//! `P` with `P ∘ Q = R`.
//!
//! When the solution set is non-empty it has a unique greatest element and
//! finitely many minimal elements, and every solution lies between the
//! greatest and at least one minimal solution. The greatest candidate is
//! built from the residuum of `min`:
//!
//! ```text
//! resid(a, b) = 1 if a <= b, otherwise b
//! p̂_j        = min over k of resid(q_jk, r_k)
//! ```
//!
//! `p̂` is a solution exactly when any solution exists. Minimal solutions come
//! from choosing, for each equation with positive right-hand side, one
//! unknown that attains `r_k` under `p̂`.
//!
//! A component that no equation needs is still not free over all of [0, 1]:
//! the greatest solution caps it. With `q = 0.7` and `r = 0.33`, for instance,
//! any `p > 0.33` overshoots.
//!
//! Multi-row unknowns decompose into independent one-row problems.

use crate::error::{Error, Result};
use crate::relation::{FuzzyRelation, LabelSet};
use crate::scalar::{self, Scalar};

/// Default tolerance for comparing composed degrees against the target.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Upper limits on problem size for minimal-solution enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationCap {
    /// Rows of `Q` (components of the unknown `P`).
    pub max_unknowns: usize,
    /// Columns of `Q` (number of equations).
    pub max_equations: usize,
}

impl Default for EnumerationCap {
    fn default() -> Self {
        Self {
            max_unknowns: 12,
            max_equations: 12,
        }
    }
}

/// `resid(a, b)`: the largest `x` with `min(x, a) <= b`.
pub fn residuum<S: Scalar>(a: S, b: S) -> S {
    if a <= b {
        S::one()
    } else {
        b
    }
}

/// True iff `|(p ∘ q)_k - r_k| <= tolerance` for every column `k`.
pub fn is_solution<S: Scalar>(
    p: &FuzzyRelation<S>,
    q: &FuzzyRelation<S>,
    r: &FuzzyRelation<S>,
    tolerance: S,
) -> Result<bool> {
    for rel in [p, r] {
        if !rel.is_row() {
            return Err(Error::NotARow(rel.n_rows()));
        }
    }
    r.col_labels()
        .expect_same(q.col_labels(), "target columns vs. Q columns")?;
    let composed = p.compose(q)?;
    Ok(composed
        .entries()
        .iter()
        .zip(r.entries())
        .all(|(&a, &b)| scalar::approx_eq(a, b, tolerance)))
}

/// An instance of `P ∘ Q = R` with `Q` and `R` known and `P` a single row.
#[derive(Clone, Debug, PartialEq)]
pub struct FreProblem<S> {
    q: FuzzyRelation<S>,
    r: FuzzyRelation<S>,
    tolerance: S,
    cap: EnumerationCap,
}

impl<S: Scalar> FreProblem<S> {
    pub fn new(q: FuzzyRelation<S>, r: FuzzyRelation<S>) -> Result<Self> {
        if !r.is_row() {
            return Err(Error::NotARow(r.n_rows()));
        }
        q.col_labels()
            .expect_same(r.col_labels(), "Q columns vs. target columns")?;
        let tolerance = S::from_f64(DEFAULT_TOLERANCE).unwrap_or_else(S::zero);
        Ok(Self {
            q,
            r,
            tolerance,
            cap: EnumerationCap::default(),
        })
    }

    pub fn with_tolerance(mut self, tolerance: S) -> Result<Self> {
        if tolerance < S::zero() {
            return Err(Error::NegativeTolerance(tolerance.to_string()));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    pub fn with_cap(mut self, cap: EnumerationCap) -> Self {
        self.cap = cap;
        self
    }

    pub fn q(&self) -> &FuzzyRelation<S> {
        &self.q
    }

    pub fn r(&self) -> &FuzzyRelation<S> {
        &self.r
    }

    pub fn tolerance(&self) -> S {
        self.tolerance
    }

    pub fn cap(&self) -> EnumerationCap {
        self.cap
    }

    fn target(&self) -> &[S] {
        self.r.entries()
    }

    fn row_of(&self, values: Vec<S>) -> FuzzyRelation<S> {
        FuzzyRelation::from_row_major(
            self.r.row_labels().clone(),
            self.q.row_labels().clone(),
            values,
        )
        .expect("solver rows stay within [0, 1]")
    }

    fn satisfies(&self, p: &FuzzyRelation<S>) -> bool {
        is_solution(p, &self.q, &self.r, self.tolerance).expect("solver rows have problem labels")
    }

    /// The residuum candidate `p̂`, whether or not it solves the system.
    pub fn greatest_candidate(&self) -> FuzzyRelation<S> {
        let values = self
            .q
            .rows()
            .map(|q_row| {
                q_row
                    .iter()
                    .zip(self.target())
                    .map(|(&q, &r)| residuum(q, r))
                    .fold(S::one(), scalar::min)
            })
            .collect();
        self.row_of(values)
    }

    /// The componentwise-greatest solution, or `None` if there is none.
    pub fn greatest_solution(&self) -> Option<FuzzyRelation<S>> {
        let candidate = self.greatest_candidate();
        self.satisfies(&candidate).then_some(candidate)
    }

    pub fn check_solvable(&self) -> SolvabilityVerdict {
        let maxima = self.q.column_maxima();
        let violated_columns = self
            .q
            .col_labels()
            .iter()
            .zip(maxima.iter().zip(self.target()))
            .filter(|(_, (&max, &r))| max < r - self.tolerance)
            .map(|(label, _)| label.to_owned())
            .collect();
        let residual_check_passed = self.satisfies(&self.greatest_candidate());
        SolvabilityVerdict {
            solvable: residual_check_passed,
            violated_columns,
            residual_check_passed,
        }
    }

    fn check_cap(&self) -> Result<()> {
        let (unknowns, equations) = (self.q.n_rows(), self.q.n_cols());
        if unknowns > self.cap.max_unknowns || equations > self.cap.max_equations {
            return Err(Error::EnumerationCapExceeded {
                unknowns,
                equations,
                max_unknowns: self.cap.max_unknowns,
                max_equations: self.cap.max_equations,
            });
        }
        Ok(())
    }

    /// All minimal solutions, sorted lexicographically. Empty when the
    /// system has no solution.
    pub fn minimal_solutions(&self) -> Result<Vec<FuzzyRelation<S>>> {
        self.check_cap()?;
        let Some(greatest) = self.greatest_solution() else {
            return Ok(Vec::new());
        };
        let greatest = greatest.entries();
        let m = self.q.n_rows();

        // Only minimal partial candidates are kept after each equation: if
        // a <= b then every extension of b dominates the same extension of a.
        let mut partials: Vec<Vec<S>> = vec![vec![S::zero(); m]];
        for (k, &r_k) in self.target().iter().enumerate() {
            if r_k <= self.tolerance {
                continue;
            }
            let witnesses: Vec<usize> = (0..m)
                .filter(|&j| scalar::min(greatest[j], self.q.get(j, k)) >= r_k - self.tolerance)
                .collect();
            let mut next = Vec::with_capacity(partials.len() * witnesses.len());
            for partial in &partials {
                for &j in &witnesses {
                    let mut candidate = partial.clone();
                    candidate[j] = scalar::max(candidate[j], r_k);
                    next.push(candidate);
                }
            }
            partials = minimal_elements(next);
        }

        let mut minimals: Vec<FuzzyRelation<S>> = partials
            .into_iter()
            .map(|values| self.row_of(values))
            .filter(|row| self.satisfies(row))
            .collect();
        minimals.sort_by(|a, b| scalar::cmp_rows(a.entries(), b.entries()));
        Ok(minimals)
    }

    pub fn solve(&self) -> Result<SolutionSet<S>> {
        let verdict = self.check_solvable();
        let greatest = self.greatest_solution();
        let minimals = self.minimal_solutions()?;
        debug_assert_eq!(verdict.solvable, greatest.is_some());
        Ok(SolutionSet {
            row_label: self.r.row_labels().get(0).unwrap_or_default().to_owned(),
            unknown_labels: self.q.row_labels().clone(),
            equation_labels: self.q.col_labels().clone(),
            verdict,
            greatest,
            minimals,
        })
    }
}

/// Deduplicated elements of `rows` with no other element strictly below.
fn minimal_elements<S: Scalar>(mut rows: Vec<Vec<S>>) -> Vec<Vec<S>> {
    rows.sort_by(|a, b| scalar::cmp_rows(a, b));
    rows.dedup();
    let leq = |a: &[S], b: &[S]| a.iter().zip(b).all(|(x, y)| x <= y);
    let mut kept: Vec<Vec<S>> = Vec::new();
    for row in rows {
        // lexicographic order puts every strictly smaller row first
        if !kept.iter().any(|k| leq(k, &row)) {
            kept.push(row);
        }
    }
    kept
}

/// Outcome of the solvability test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvabilityVerdict {
    pub solvable: bool,
    /// Columns whose target exceeds every entry of the matching `Q` column.
    /// Non-empty implies unsolvable; empty does not imply solvable.
    pub violated_columns: Vec<String>,
    /// Whether the greatest candidate composes back to the target.
    pub residual_check_passed: bool,
}

/// The solution set of one inverse problem, described by its extremes.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSet<S> {
    pub(crate) row_label: String,
    pub(crate) unknown_labels: LabelSet,
    pub(crate) equation_labels: LabelSet,
    pub(crate) verdict: SolvabilityVerdict,
    pub(crate) greatest: Option<FuzzyRelation<S>>,
    pub(crate) minimals: Vec<FuzzyRelation<S>>,
}

impl<S: Scalar> SolutionSet<S> {
    pub fn solvable(&self) -> bool {
        self.verdict.solvable
    }

    pub fn verdict(&self) -> &SolvabilityVerdict {
        &self.verdict
    }

    pub fn greatest(&self) -> Option<&FuzzyRelation<S>> {
        self.greatest.as_ref()
    }

    pub fn minimals(&self) -> &[FuzzyRelation<S>] {
        &self.minimals
    }

    pub fn row_label(&self) -> &str {
        &self.row_label
    }

    pub fn unknown_labels(&self) -> &LabelSet {
        &self.unknown_labels
    }

    pub fn equation_labels(&self) -> &LabelSet {
        &self.equation_labels
    }

    /// Checks `p` against the system and locates it within the
    /// greatest/minimal characterization.
    pub fn locate(
        &self,
        p: &FuzzyRelation<S>,
        q: &FuzzyRelation<S>,
        r: &FuzzyRelation<S>,
        tolerance: S,
    ) -> Result<Containment> {
        let is_solution = is_solution(p, q, r, tolerance)?;
        p.col_labels()
            .expect_same(&self.unknown_labels, "candidate vs. solution set")?;
        let below =
            |bound: &FuzzyRelation<S>| bound.entries().iter().zip(p.entries()).all(|(b, v)| b <= v);
        let below_greatest = self
            .greatest
            .as_ref()
            .is_some_and(|g| p.entries().iter().zip(g.entries()).all(|(v, g)| v <= g));
        Ok(Containment {
            is_solution,
            below_greatest,
            dominated_minimal: self.minimals.iter().position(below),
        })
    }
}

/// Where a candidate row sits relative to a [`SolutionSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Containment {
    pub is_solution: bool,
    /// `p <= greatest` componentwise.
    pub below_greatest: bool,
    /// Index of the first (lexicographically smallest) minimal `<= p`.
    pub dominated_minimal: Option<usize>,
}

impl Containment {
    pub fn contains(&self) -> bool {
        self.is_solution
    }

    /// A solution must sit between the greatest and some minimal solution.
    pub fn is_consistent(&self) -> bool {
        !self.is_solution || (self.below_greatest && self.dominated_minimal.is_some())
    }
}

pub fn solution_set_contains<S: Scalar>(
    solution_set: &SolutionSet<S>,
    p: &FuzzyRelation<S>,
    q: &FuzzyRelation<S>,
    r: &FuzzyRelation<S>,
    tolerance: S,
) -> Result<Containment> {
    solution_set.locate(p, q, r, tolerance)
}
