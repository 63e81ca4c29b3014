//! Bundled example data: a 60-student classroom with a grade-to-stage
//! relation, plus a small composition example.
//!
//! These are sample inputs for demos and tests. Nothing in the library uses
//! them as defaults.

/// Grade counts for the example class (n = 60).
pub const CLASSROOM_GRADES: &str = include_str!("../data/classroom_grades.csv");

/// Example grade-to-stage relation for the same class.
pub const CLASSROOM_Q: &str = include_str!("../data/classroom_q.csv");

/// The class profile obtained from the rounded grade set and [`CLASSROOM_Q`].
pub const CLASSROOM_PROFILE: &str = include_str!("../data/classroom_profile.csv");

/// A profile no grade set can produce through [`CLASSROOM_Q`]: its first
/// stage exceeds the largest entry of that column.
pub const UNREACHABLE_PROFILE: &str = include_str!("../data/unreachable_profile.csv");

pub const COMPOSITION_LEFT: &str = include_str!("../data/composition_left.csv");
pub const COMPOSITION_RIGHT: &str = include_str!("../data/composition_right.csv");
/// `COMPOSITION_LEFT ∘ COMPOSITION_RIGHT`.
pub const COMPOSITION_PRODUCT: &str = include_str!("../data/composition_product.csv");
