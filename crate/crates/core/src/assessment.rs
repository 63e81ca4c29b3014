//! Class-level learning assessment.
//!
//! A class's grade distribution becomes the "average student" fuzzy set on
//! the grade scale (degree `n_i / n` per grade). Composing that set with a
//! grade-to-stage relation `Q` gives a learner profile over the stages of
//! learning. The inverse direction asks which grade sets explain a given
//! profile.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::relation::{FuzzyRelation, FuzzySet, LabelSet};
use crate::scalar::Scalar;
use crate::solver::{FreProblem, SolutionSet};

const DEFAULT_GRADES: [(&str, &str); 5] = [
    ("A", "Excellent"),
    ("B", "Very Good"),
    ("C", "Good"),
    ("D", "Fair"),
    ("F", "Failed"),
];

const DEFAULT_STAGES: [(&str, &str); 4] = [
    ("R", "Representation"),
    ("I", "Interpretation"),
    ("G", "Generalization"),
    ("Ca", "Categorization"),
];

/// Ordered labels with human-readable display names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scale {
    labels: LabelSet,
    names: Vec<String>,
}

pub type GradeScale = Scale;
pub type StageScale = Scale;

impl Scale {
    pub fn new(labels: LabelSet, names: Vec<String>) -> Result<Self> {
        if names.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                what: "display names",
                expected: labels.len(),
                found: names.len(),
            });
        }
        Ok(Self { labels, names })
    }

    /// A, B, C, D, F.
    pub fn grades() -> Self {
        Self::from_pairs(&DEFAULT_GRADES)
    }

    /// R, I, G, Ca.
    pub fn stages() -> Self {
        Self::from_pairs(&DEFAULT_STAGES)
    }

    /// Labels with display names taken from the default grade and stage
    /// vocabularies where they match, otherwise the label itself.
    pub fn with_known_names(labels: LabelSet) -> Self {
        let names = labels
            .iter()
            .map(|label| {
                DEFAULT_GRADES
                    .iter()
                    .chain(&DEFAULT_STAGES)
                    .find(|(l, _)| *l == label)
                    .map_or(label, |(_, name)| name)
                    .to_owned()
            })
            .collect();
        Self { labels, names }
    }

    fn from_pairs(pairs: &[(&str, &str)]) -> Self {
        let labels =
            LabelSet::new(pairs.iter().map(|(l, _)| *l)).expect("default labels are valid");
        let names = pairs.iter().map(|(_, n)| (*n).to_owned()).collect();
        Self { labels, names }
    }

    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn name_of(&self, label: &str) -> Option<&str> {
        self.labels.position(label).map(|i| self.names[i].as_str())
    }
}

/// Number of students per grade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradeDistribution {
    scale: GradeScale,
    counts: Vec<u64>,
}

impl GradeDistribution {
    pub fn new(scale: GradeScale, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != scale.len() {
            return Err(Error::DimensionMismatch {
                what: "grade counts",
                expected: scale.len(),
                found: counts.len(),
            });
        }
        if counts.iter().all(|&c| c == 0) {
            return Err(Error::EmptyDistribution);
        }
        Ok(Self { scale, counts })
    }

    pub fn scale(&self) -> &GradeScale {
        &self.scale
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// The average-student fuzzy set: degree `n_i / n` for each grade,
    /// optionally rounded half-up to `round_digits` decimals.
    pub fn to_fuzzy_set<S: Scalar>(&self, round_digits: Option<u32>) -> Result<FuzzySet<S>> {
        let total = self.total();
        let degrees = match round_digits {
            None => self
                .counts
                .iter()
                .map(|&c| S::from_fraction(c, total))
                .collect(),
            Some(digits) if digits <= 9 => {
                let scale = 10u64.pow(digits);
                self.counts
                    .iter()
                    .map(|&c| S::from_fraction(round_half_up(c, total, scale), scale))
                    .collect()
            }
            Some(digits) => return Err(Error::RoundDigits(digits)),
        };
        FuzzySet::new(self.scale.labels.clone(), degrees)
    }
}

/// `round(count / total * scale)` with ties going up, in exact integers.
fn round_half_up(count: u64, total: u64, scale: u64) -> u64 {
    let (count, total, scale) = (u128::from(count), u128::from(total), u128::from(scale));
    let rounded = (2 * count * scale + total) / (2 * total);
    u64::try_from(rounded).expect("rounded numerator is at most the scale")
}

pub fn distribution_to_fuzzy_set<S: Scalar>(
    dist: &GradeDistribution,
    round_digits: Option<u32>,
) -> Result<FuzzySet<S>> {
    dist.to_fuzzy_set(round_digits)
}

/// Degrees of the average student on each learning stage.
#[derive(Clone, Debug, PartialEq)]
pub struct LearnerProfile<S> {
    stages: StageScale,
    degrees: Vec<S>,
}

impl<S: Scalar> LearnerProfile<S> {
    pub fn new(stages: StageScale, degrees: Vec<S>) -> Result<Self> {
        // validates length and range
        FuzzySet::new(stages.labels.clone(), degrees.clone())?;
        Ok(Self { stages, degrees })
    }

    pub fn stages(&self) -> &StageScale {
        &self.stages
    }

    pub fn degrees(&self) -> &[S] {
        &self.degrees
    }

    pub fn degree(&self, stage: &str) -> Option<S> {
        self.stages.labels.position(stage).map(|i| self.degrees[i])
    }

    pub fn to_fuzzy_set(&self) -> FuzzySet<S> {
        FuzzySet::new(self.stages.labels.clone(), self.degrees.clone())
            .expect("profile degrees are validated")
    }

    pub fn as_row(&self) -> FuzzyRelation<S> {
        self.to_fuzzy_set().as_row()
    }
}

/// Composes the average-student set with the grade-to-stage relation `q`.
pub fn learner_profile<S: Scalar>(
    m: &FuzzySet<S>,
    q: &FuzzyRelation<S>,
) -> Result<LearnerProfile<S>> {
    let composed = m.as_row().compose(q)?;
    Ok(LearnerProfile {
        stages: Scale::with_known_names(q.col_labels().clone()),
        degrees: composed.entries().to_vec(),
    })
}

/// Solves for the grade sets that would produce `profile` through `q`.
pub fn inverse_assessment<S: Scalar>(
    q: &FuzzyRelation<S>,
    profile: &LearnerProfile<S>,
    tolerance: S,
) -> Result<SolutionSet<S>> {
    FreProblem::new(q.clone(), profile.as_row())?
        .with_tolerance(tolerance)?
        .solve()
}

/// Degree ratio between two stages.
#[derive(Clone, Debug, PartialEq)]
pub struct Retention<S> {
    pub from: String,
    pub to: String,
    /// `degree(to) / degree(from)`; `None` when `degree(from)` is zero.
    pub ratio: Option<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProfileReport<S> {
    pub profile: LearnerProfile<S>,
    pub stage_fractions: Vec<S>,
    /// One entry per stage after the first, relative to its predecessor.
    pub retention_ratios: Vec<Retention<S>>,
    pub narrative: String,
}

impl<S: Scalar> ProfileReport<S> {
    /// Ratio of the degree at `to` over the degree at `from`.
    pub fn retention_between(&self, from: &str, to: &str) -> Option<S> {
        let from = self.profile.degree(from)?;
        let to = self.profile.degree(to)?;
        ratio(to, from)
    }
}

fn ratio<S: Scalar>(numer: S, denom: S) -> Option<S> {
    (denom > S::zero()).then(|| numer / denom)
}

fn percent<S: Scalar>(value: S) -> String {
    format!("{:.1}%", value.to_f64().unwrap_or(f64::NAN) * 100.0)
}

pub fn profile_report<S: Scalar>(profile: &LearnerProfile<S>) -> ProfileReport<S> {
    let stages = profile.stages();
    let degrees = profile.degrees();
    let labels: Vec<&str> = stages.labels().iter().collect();

    let retention_ratios: Vec<Retention<S>> = labels
        .windows(2)
        .zip(degrees.windows(2))
        .map(|(l, d)| Retention {
            from: l[0].to_owned(),
            to: l[1].to_owned(),
            ratio: ratio(d[1], d[0]),
        })
        .collect();

    let mut narrative = String::new();
    for (i, (&label, &degree)) in labels.iter().zip(degrees).enumerate() {
        let name = &stages.names()[i];
        let _ = write!(
            narrative,
            "{name} ({label}): degree {degree} ({})",
            percent(degree)
        );
        if i > 0 {
            let prev = &stages.names()[i - 1];
            match retention_ratios[i - 1].ratio {
                Some(r) => {
                    let r = r.to_f64().unwrap_or(f64::NAN);
                    let _ = write!(narrative, ", {r:.3} of the {prev} level");
                }
                None => {
                    let _ = write!(narrative, ", no ratio ({prev} level is 0)");
                }
            }
        }
        narrative.push('\n');
    }

    // Retention from the strongest stage to the last one.
    if let (Some((peak, &peak_degree)), Some(&last_degree)) = (
        degrees
            .iter()
            .enumerate()
            .fold(None, |best: Option<(usize, &S)>, (i, d)| match best {
                Some((_, b)) if b >= d => best,
                _ => Some((i, d)),
            }),
        degrees.last(),
    ) {
        let last = labels.len() - 1;
        if peak != last {
            if let Some(r) = ratio(last_degree, peak_degree) {
                let r = r.to_f64().unwrap_or(f64::NAN);
                let _ = writeln!(
                    narrative,
                    "{} retains {r:.3} of the peak {} level; {:.1}% of that group does not reach it.",
                    stages.names()[last],
                    stages.names()[peak],
                    (1.0 - r) * 100.0,
                );
            }
        }
    }

    ProfileReport {
        profile: profile.clone(),
        stage_fractions: degrees.to_vec(),
        retention_ratios,
        narrative,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn classroom_q() -> FuzzyRelation<f64> {
        FuzzyRelation::new(
            Scale::grades().labels().clone(),
            Scale::stages().labels().clone(),
            vec![
                vec![0.7, 0.5, 0.3, 0.0],
                vec![0.4, 0.6, 0.3, 0.1],
                vec![0.2, 0.7, 0.6, 0.2],
                vec![0.1, 0.5, 0.7, 0.5],
                vec![0.0, 0.1, 0.5, 0.8],
            ],
        )
        .unwrap()
    }

    fn dist(counts: [u64; 5]) -> GradeDistribution {
        GradeDistribution::new(Scale::grades(), counts.to_vec()).unwrap()
    }

    fn profile(values: [f64; 4]) -> LearnerProfile<f64> {
        LearnerProfile::new(Scale::stages(), values.to_vec()).unwrap()
    }

    #[test]
    fn default_scales() {
        let g = Scale::grades();
        assert_eq!(g.labels().as_slice(), &["A", "B", "C", "D", "F"]);
        assert_eq!(g.name_of("B"), Some("Very Good"));
        let s = Scale::stages();
        assert_eq!(s.name_of("Ca"), Some("Categorization"));
        let custom = Scale::with_known_names(LabelSet::new(["I", "X"]).unwrap());
        assert_eq!(custom.names(), &["Interpretation", "X"]);
    }

    #[test]
    fn distribution_validation() {
        assert_eq!(
            GradeDistribution::new(Scale::grades(), vec![0; 5]),
            Err(Error::EmptyDistribution)
        );
        assert!(GradeDistribution::new(Scale::grades(), vec![1; 4]).is_err());
        assert_eq!(dist([20, 15, 7, 10, 8]).total(), 60);
    }

    #[test]
    fn classroom_fuzzy_set_rounded() {
        let m: FuzzySet<f64> = dist([20, 15, 7, 10, 8]).to_fuzzy_set(Some(2)).unwrap();
        assert_eq!(m.degrees(), &[0.33, 0.25, 0.12, 0.17, 0.13]);
    }

    #[test]
    fn simple_distributions() {
        let m: FuzzySet<f64> = dist([60, 0, 0, 0, 0]).to_fuzzy_set(None).unwrap();
        assert_eq!(m.degrees(), &[1.0, 0.0, 0.0, 0.0, 0.0]);
        let m: FuzzySet<f64> = dist([30, 30, 0, 0, 0]).to_fuzzy_set(None).unwrap();
        assert_eq!(m.degrees(), &[0.5, 0.5, 0.0, 0.0, 0.0]);
        assert_eq!(
            dist([1, 0, 0, 0, 0]).to_fuzzy_set::<f64>(Some(10)),
            Err(Error::RoundDigits(10))
        );
    }

    #[test]
    fn rounding_is_half_up() {
        // 1/8 = 0.125 exactly
        let m: FuzzySet<f64> = dist([1, 7, 0, 0, 0]).to_fuzzy_set(Some(2)).unwrap();
        assert_eq!(m.degrees()[..2], [0.13, 0.88]);
        let m: FuzzySet<f64> = dist([1, 1, 0, 0, 0]).to_fuzzy_set(Some(0)).unwrap();
        assert_eq!(m.degrees()[..2], [1.0, 1.0]);
    }

    #[test]
    fn exact_fractions_sum_to_one() {
        let m: FuzzySet<Rational> = dist([20, 15, 7, 10, 8]).to_fuzzy_set(None).unwrap();
        let sum = m
            .degrees()
            .iter()
            .fold(Rational::from_integer(0), |a, &b| a + b);
        assert_eq!(sum, Rational::from_integer(1));
        assert_eq!(m.degrees()[0], Rational::new(1, 3));
    }

    #[test]
    fn classroom_profile() {
        let m = FuzzySet::new(
            Scale::grades().labels().clone(),
            vec![0.33, 0.25, 0.12, 0.17, 0.13],
        )
        .unwrap();
        let p = learner_profile(&m, &classroom_q()).unwrap();
        assert_eq!(p.degrees(), &[0.33, 0.33, 0.3, 0.17]);
        assert_eq!(p.stages(), &Scale::stages());
    }

    #[test]
    fn one_hot_and_zero_profiles() {
        let grades = Scale::grades().labels().clone();
        let one_hot = FuzzySet::new(grades.clone(), vec![1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let p = learner_profile(&one_hot, &classroom_q()).unwrap();
        assert_eq!(p.degrees(), &[0.7, 0.5, 0.3, 0.0]);
        let p = learner_profile(&FuzzySet::zeros(grades), &classroom_q()).unwrap();
        assert_eq!(p.degrees(), &[0.0; 4]);
    }

    #[test]
    fn profile_requires_matching_grades() {
        let m = FuzzySet::new(LabelSet::new(["A", "B"]).unwrap(), vec![0.5, 0.5]).unwrap();
        assert!(matches!(
            learner_profile(&m, &classroom_q()),
            Err(Error::LabelMismatch { .. })
        ));
    }

    #[test]
    fn inverse_assessment_cases() {
        let q = classroom_q();
        let set = inverse_assessment(&q, &profile([0.33, 0.33, 0.3, 0.17]), 1e-9).unwrap();
        assert!(set.solvable());
        assert_eq!(
            set.greatest().unwrap().entries(),
            &[0.33, 0.33, 0.17, 0.17, 0.17]
        );
        assert_eq!(set.minimals().len(), 6);

        let set = inverse_assessment(&q, &profile([1.0, 0.33, 0.3, 0.17]), 1e-9).unwrap();
        assert!(!set.solvable());

        let set = inverse_assessment(&q, &profile([0.0; 4]), 1e-9).unwrap();
        assert!(set.solvable());
        assert_eq!(set.minimals()[0].entries(), &[0.0; 5]);
    }

    #[test]
    fn classroom_report() {
        let report = profile_report(&profile([0.33, 0.33, 0.3, 0.17]));
        assert_eq!(report.stage_fractions, vec![0.33, 0.33, 0.3, 0.17]);
        let ratios: Vec<f64> = report
            .retention_ratios
            .iter()
            .map(|r| r.ratio.unwrap())
            .collect();
        assert_eq!(ratios[0], 1.0);
        assert!((ratios[1] - 0.3 / 0.33).abs() < 1e-12);
        assert!((ratios[2] - 0.567).abs() < 1e-3);
        let i_to_ca = report.retention_between("I", "Ca").unwrap();
        assert!((i_to_ca - 0.515).abs() < 1e-3);
        assert!(report
            .narrative
            .contains("Categorization (Ca): degree 0.17"));
        assert!(report
            .narrative
            .contains("retains 0.515 of the peak Representation level"));
    }

    #[test]
    fn flat_report() {
        let report = profile_report(&profile([1.0; 4]));
        assert!(report.retention_ratios.iter().all(|r| r.ratio == Some(1.0)));
    }

    #[test]
    fn zero_predecessor_has_no_ratio() {
        let report = profile_report(&profile([0.5, 0.0, 0.3, 0.1]));
        assert_eq!(report.retention_ratios[0].ratio, Some(0.0));
        assert_eq!(report.retention_ratios[1].ratio, None);
        assert!(report
            .narrative
            .contains("no ratio (Interpretation level is 0)"));
    }
}
