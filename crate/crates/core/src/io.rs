//! Text formats for relations, grade data and solution sets.
//!
//! Tables are comma-delimited UTF-8 with `.` as the decimal separator.
//! Cells are trimmed and may be double-quoted; blank lines are ignored.
//!
//! A relation table starts with a header whose first cell is empty or
//! `label`, followed by the column labels:
//!
//! ```text
//! label,R,I,G,Ca
//! A,0.7,0.5,0.3,0
//! B,0.4,0.6,0.3,0.1
//! ```
//!
//! Solution sets are written as pretty-printed JSON with stable key order.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assessment::{GradeDistribution, GradeScale};
use crate::error::Error;
use crate::relation::{FuzzyRelation, LabelSet, MembershipDegree};
use crate::scalar::{self, Scalar};
use crate::solver::{SolutionSet, SolvabilityVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("document is empty")]
    Empty,
    #[error("header must start with an empty cell or `label`, found `{0}`")]
    BadHeader(String),
    #[error("table has a header but no rows")]
    NoRows,
    #[error("expected {expected} cells, found {found}")]
    Ragged { expected: usize, found: usize },
    #[error("`{0}` is not a number")]
    NotANumber(String),
    #[error("`{0}` is not a non-negative integer count")]
    NotACount(String),
    #[error("grade `{0}` is not part of the grade scale")]
    UnknownGrade(String),
    #[error("grade `{0}` appears more than once")]
    DuplicateGrade(String),
    #[error("student `{0}` appears more than once")]
    DuplicateStudent(String),
    #[error("student identifier is empty")]
    EmptyStudent,
    #[error("stated total {stated} does not match the sum of counts {actual}")]
    TotalMismatch { stated: u64, actual: u64 },
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error(transparent)]
    Invalid(#[from] Error),
}

impl ParseError {
    fn new(line: usize, kind: impl Into<ParseErrorKind>) -> Self {
        Self {
            line,
            kind: kind.into(),
        }
    }
}

/// Records with their 1-based line numbers, cells trimmed. Blank lines are
/// skipped; cells may be double-quoted to hold commas.
fn table_lines(text: &str) -> Result<Vec<(usize, Vec<String>)>, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    // the reader does not count the blank lines it skips
    let line_at = |pos: Option<&csv::Position>| {
        let bytes = text.as_bytes();
        let mut byte = pos.map_or(0, |p| p.byte() as usize).min(bytes.len());
        while matches!(bytes.get(byte), Some(b'\n' | b'\r')) {
            byte += 1;
        }
        bytes[..byte].iter().filter(|&&b| b == b'\n').count() + 1
    };
    let mut lines = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = line_at(e.position());
            ParseError::new(line, ParseErrorKind::Malformed(e.to_string()))
        })?;
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        let line = line_at(record.position());
        lines.push((line, record.iter().map(str::to_owned).collect()));
    }
    Ok(lines)
}

fn write_record<'a>(out: &mut String, cells: impl IntoIterator<Item = &'a str>) {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(cells).expect("writing to memory");
    let bytes = writer.into_inner().expect("writing to memory");
    out.push_str(std::str::from_utf8(&bytes).expect("cells are UTF-8"));
}

pub fn parse_relation<S: Scalar>(text: &str) -> Result<FuzzyRelation<S>, ParseError> {
    let table = table_lines(text)?;
    let mut lines = table.iter();
    let (header_line, header) = lines
        .next()
        .ok_or(ParseError::new(1, ParseErrorKind::Empty))?;
    let header_line = *header_line;
    if !(header[0].is_empty() || header[0] == "label") {
        return Err(ParseError::new(
            header_line,
            ParseErrorKind::BadHeader(header[0].clone()),
        ));
    }
    let cols = LabelSet::new(header[1..].iter().map(String::as_str))
        .map_err(|e| ParseError::new(header_line, e))?;

    let mut row_labels = Vec::new();
    let mut seen = HashSet::new();
    let mut entries = Vec::new();
    for &(line, ref cells) in lines {
        if cells.len() != header.len() {
            return Err(ParseError::new(
                line,
                ParseErrorKind::Ragged {
                    expected: header.len(),
                    found: cells.len(),
                },
            ));
        }
        let label = cells[0].as_str();
        if label.is_empty() {
            return Err(ParseError::new(line, Error::EmptyLabel));
        }
        if !seen.insert(label) {
            return Err(ParseError::new(line, Error::DuplicateLabel(label.into())));
        }
        row_labels.push(label);
        for cell in &cells[1..] {
            let value = S::parse_text(cell)
                .ok_or_else(|| ParseError::new(line, ParseErrorKind::NotANumber(cell.clone())))?;
            MembershipDegree::new(value).map_err(|e| ParseError::new(line, e))?;
            entries.push(value);
        }
    }
    if row_labels.is_empty() {
        return Err(ParseError::new(header_line, ParseErrorKind::NoRows));
    }
    let rows = LabelSet::new(row_labels).map_err(|e| ParseError::new(header_line, e))?;
    FuzzyRelation::from_row_major(rows, cols, entries).map_err(|e| ParseError::new(header_line, e))
}

/// Renders a relation table. Degrees use their shortest exact text form, so
/// [`parse_relation`] reproduces the relation exactly.
pub fn write_relation<S: Scalar>(rel: &FuzzyRelation<S>) -> String {
    let mut out = String::new();
    write_record(
        &mut out,
        std::iter::once("label").chain(rel.col_labels().iter()),
    );
    for (label, row) in rel.row_labels().iter().zip(rel.rows()) {
        let degrees: Vec<String> = row.iter().map(ToString::to_string).collect();
        write_record(
            &mut out,
            std::iter::once(label).chain(degrees.iter().map(String::as_str)),
        );
    }
    out
}

/// Parses `grade,count` lines against `scale`.
///
/// A leading header line is skipped when its first cell is not a grade and
/// its second is not a number. A `Total` line, if present, must match the
/// sum. Grades that do not appear get count 0.
pub fn parse_grade_counts(text: &str, scale: &GradeScale) -> Result<GradeDistribution, ParseError> {
    let mut counts: Vec<Option<u64>> = vec![None; scale.len()];
    let mut stated_total = None;
    let mut last_line = 1;
    for (index, (line, cells)) in table_lines(text)?.into_iter().enumerate() {
        last_line = line;
        if cells.len() != 2 {
            return Err(ParseError::new(
                line,
                ParseErrorKind::Ragged {
                    expected: 2,
                    found: cells.len(),
                },
            ));
        }
        let (grade, count) = (cells[0].as_str(), cells[1].as_str());
        let position = scale.labels().position(grade);
        if index == 0 && position.is_none() && count.parse::<f64>().is_err() {
            continue;
        }
        let count: u64 = count
            .parse()
            .map_err(|_| ParseError::new(line, ParseErrorKind::NotACount(count.into())))?;
        match position {
            Some(i) if counts[i].is_some() => {
                return Err(ParseError::new(
                    line,
                    ParseErrorKind::DuplicateGrade(grade.into()),
                ))
            }
            Some(i) => counts[i] = Some(count),
            None if grade.eq_ignore_ascii_case("total") => stated_total = Some((line, count)),
            None => {
                return Err(ParseError::new(
                    line,
                    ParseErrorKind::UnknownGrade(grade.into()),
                ))
            }
        }
    }
    let counts: Vec<u64> = counts.into_iter().map(Option::unwrap_or_default).collect();
    let actual: u64 = counts.iter().sum();
    if let Some((line, stated)) = stated_total {
        if stated != actual {
            return Err(ParseError::new(
                line,
                ParseErrorKind::TotalMismatch { stated, actual },
            ));
        }
    }
    GradeDistribution::new(scale.clone(), counts).map_err(|e| ParseError::new(last_line, e))
}

pub fn write_grade_counts(dist: &GradeDistribution) -> String {
    let mut out = String::from("grade,count\n");
    for (grade, count) in dist.scale().labels().iter().zip(dist.counts()) {
        write_record(&mut out, [grade, count.to_string().as_str()]);
    }
    out
}

/// One `student,grade` line of a roster.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RosterEntry {
    pub line: usize,
    pub student: String,
    pub grade: String,
}

/// Per-student grades, the raw form behind a grade distribution.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Roster {
    pub entries: Vec<RosterEntry>,
}

/// Parses `student,grade` lines. A first line whose second cell is `grade`
/// (any case) is treated as a header.
pub fn parse_roster(text: &str) -> Result<Roster, ParseError> {
    let mut entries = Vec::new();
    for (index, (line, cells)) in table_lines(text)?.into_iter().enumerate() {
        if cells.len() != 2 {
            return Err(ParseError::new(
                line,
                ParseErrorKind::Ragged {
                    expected: 2,
                    found: cells.len(),
                },
            ));
        }
        if index == 0 && cells[1].eq_ignore_ascii_case("grade") {
            continue;
        }
        if cells[0].is_empty() {
            return Err(ParseError::new(line, ParseErrorKind::EmptyStudent));
        }
        entries.push(RosterEntry {
            line,
            student: cells[0].clone(),
            grade: cells[1].clone(),
        });
    }
    Ok(Roster { entries })
}

pub fn roster_to_counts(
    roster: &Roster,
    scale: &GradeScale,
) -> Result<GradeDistribution, ParseError> {
    let mut counts = vec![0u64; scale.len()];
    let mut students = HashSet::new();
    for entry in &roster.entries {
        let i = scale.labels().position(&entry.grade).ok_or_else(|| {
            ParseError::new(
                entry.line,
                ParseErrorKind::UnknownGrade(entry.grade.clone()),
            )
        })?;
        if !students.insert(entry.student.as_str()) {
            return Err(ParseError::new(
                entry.line,
                ParseErrorKind::DuplicateStudent(entry.student.clone()),
            ));
        }
        counts[i] += 1;
    }
    let line = roster.entries.last().map_or(1, |e| e.line);
    GradeDistribution::new(scale.clone(), counts).map_err(|e| ParseError::new(line, e))
}

/// Labeled matrix in the structured output format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationDocument<S> {
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub entries: Vec<Vec<S>>,
}

impl<S: Scalar> From<&FuzzyRelation<S>> for RelationDocument<S> {
    fn from(rel: &FuzzyRelation<S>) -> Self {
        Self {
            rows: rel.row_labels().as_slice().to_vec(),
            columns: rel.col_labels().as_slice().to_vec(),
            entries: rel.rows().map(<[S]>::to_vec).collect(),
        }
    }
}

impl<S: Scalar> TryFrom<RelationDocument<S>> for FuzzyRelation<S> {
    type Error = Error;

    fn try_from(doc: RelationDocument<S>) -> Result<Self, Error> {
        FuzzyRelation::new(
            LabelSet::new(doc.rows)?,
            LabelSet::new(doc.columns)?,
            doc.entries,
        )
    }
}

/// Wire form of a [`SolutionSet`]. Minimal rows are in lexicographic order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionSetDocument<S> {
    pub solvable: bool,
    pub residual_check_passed: bool,
    pub violated_columns: Vec<String>,
    pub row_label: String,
    pub unknowns: Vec<String>,
    pub equations: Vec<String>,
    pub greatest: Option<Vec<S>>,
    pub minimals: Vec<Vec<S>>,
}

impl<S: Scalar> From<&SolutionSet<S>> for SolutionSetDocument<S> {
    fn from(set: &SolutionSet<S>) -> Self {
        let mut minimals: Vec<Vec<S>> = set
            .minimals()
            .iter()
            .map(|m| m.entries().to_vec())
            .collect();
        minimals.sort_by(|a, b| scalar::cmp_rows(a, b));
        Self {
            solvable: set.solvable(),
            residual_check_passed: set.verdict().residual_check_passed,
            violated_columns: set.verdict().violated_columns.clone(),
            row_label: set.row_label().to_owned(),
            unknowns: set.unknown_labels().as_slice().to_vec(),
            equations: set.equation_labels().as_slice().to_vec(),
            greatest: set.greatest().map(|g| g.entries().to_vec()),
            minimals,
        }
    }
}

impl<S: Scalar> SolutionSetDocument<S> {
    pub fn into_solution_set(self) -> Result<SolutionSet<S>, ParseError> {
        let invalid = |e: Error| ParseError::new(1, e);
        let malformed = |msg: &str| ParseError::new(1, ParseErrorKind::Malformed(msg.into()));
        if self.solvable != self.greatest.is_some() {
            return Err(malformed("`solvable` disagrees with `greatest`"));
        }
        if !self.solvable && !self.minimals.is_empty() {
            return Err(malformed("unsolvable set lists minimal solutions"));
        }
        let unknowns = LabelSet::new(self.unknowns).map_err(invalid)?;
        let equations = LabelSet::new(self.equations).map_err(invalid)?;
        let row_labels = LabelSet::new([self.row_label.clone()]).map_err(invalid)?;
        for col in &self.violated_columns {
            if !equations.contains(col) {
                return Err(malformed("violated column is not an equation label"));
            }
        }
        let to_row = |values: Vec<S>| {
            FuzzyRelation::from_row_major(row_labels.clone(), unknowns.clone(), values)
                .map_err(invalid)
        };
        let greatest = self.greatest.map(to_row).transpose()?;
        let minimals = self
            .minimals
            .into_iter()
            .map(to_row)
            .collect::<Result<_, _>>()?;
        Ok(SolutionSet {
            row_label: self.row_label,
            unknown_labels: unknowns,
            equation_labels: equations,
            verdict: SolvabilityVerdict {
                solvable: self.solvable,
                violated_columns: self.violated_columns,
                residual_check_passed: self.residual_check_passed,
            },
            greatest,
            minimals,
        })
    }
}

pub fn serialize_solution_set<S: Scalar>(set: &SolutionSet<S>) -> String {
    let doc = SolutionSetDocument::from(set);
    let mut out = serde_json::to_string_pretty(&doc).expect("solution documents serialize");
    out.push('\n');
    out
}

pub fn parse_solution_set<S: Scalar>(text: &str) -> Result<SolutionSet<S>, ParseError> {
    let doc: SolutionSetDocument<S> = serde_json::from_str(text)
        .map_err(|e| ParseError::new(e.line().max(1), ParseErrorKind::Malformed(e.to_string())))?;
    doc.into_solution_set()
}
