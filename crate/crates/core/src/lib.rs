//! Fuzzy binary relations with max-min composition, an inverse solver for
//! `P ∘ Q = R`, and a grade-to-learning-stage assessment pipeline.
//!
//! All types are generic over the degree type ([`Scalar`]); `f64`, `f32` and
//! exact [`Rational`] are supported. The aliases below fix the common
//! choices.
//!
//! ```
//! use fuzzyrel::io::{parse_grade_counts, parse_relation};
//! use fuzzyrel::{dataset, learner_profile, profile_report, Problem, Relation, Scale};
//!
//! let q: Relation = parse_relation(dataset::CLASSROOM_Q)?;
//! let grades = parse_grade_counts(dataset::CLASSROOM_GRADES, &Scale::grades())?;
//! let m = grades.to_fuzzy_set::<f64>(Some(2))?;
//! let profile = learner_profile(&m, &q)?;
//! assert_eq!(profile.as_row().entries(), &[0.33, 0.33, 0.3, 0.17]);
//! println!("{}", profile_report(&profile).narrative);
//!
//! // which grade sets reproduce that profile?
//! let set = Problem::new(q, profile.as_row())?.solve()?;
//! assert_eq!(set.greatest().unwrap().entries(), &[0.33, 0.33, 0.17, 0.17, 0.17]);
//! assert_eq!(set.minimals().len(), 6);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod assessment;
pub mod dataset;
mod error;
pub mod io;
pub mod relation;
mod scalar;
pub mod solver;

pub use assessment::{
    distribution_to_fuzzy_set, inverse_assessment, learner_profile, profile_report,
    GradeDistribution, GradeScale, LearnerProfile, ProfileReport, Retention, Scale, StageScale,
};
pub use error::{Error, Result};
pub use io::{ParseError, ParseErrorKind};
pub use relation::{
    compose_maxmin, relation_leq, FuzzyRelation, FuzzySet, LabelSet, MembershipDegree,
};
pub use scalar::{Rational, Scalar};
pub use solver::{
    is_solution, residuum, solution_set_contains, Containment, EnumerationCap, FreProblem,
    SolutionSet, SolvabilityVerdict,
};

/// Relation with `f64` degrees.
pub type Relation = FuzzyRelation<f64>;
/// Fuzzy set with `f64` degrees.
pub type Set = FuzzySet<f64>;
pub type Problem = FreProblem<f64>;
pub type Solutions = SolutionSet<f64>;
pub type Profile = LearnerProfile<f64>;

/// Relation with exact rational degrees.
pub type ExactRelation = FuzzyRelation<Rational>;
pub type ExactSet = FuzzySet<Rational>;
pub type ExactProblem = FreProblem<Rational>;
pub type ExactSolutions = SolutionSet<Rational>;
pub type ExactProfile = LearnerProfile<Rational>;
