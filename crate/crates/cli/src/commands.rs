use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use fuzzyrel::io::{
    parse_grade_counts, parse_relation, parse_roster, roster_to_counts, serialize_solution_set,
    write_relation, RelationDocument,
};
use fuzzyrel::{
    dataset, is_solution, learner_profile, profile_report, Error, FreProblem, FuzzyRelation,
    FuzzySet, GradeDistribution, ProfileReport, Scalar, Scale, SolutionSet,
};
use serde_json::json;

use crate::{Cli, Command, Format, Options, Verdict};

const DEFAULT_ROUND_DIGITS: u32 = 2;

type Output = (String, Verdict);

pub fn run<S: Scalar>(cli: &Cli) -> Result<Output> {
    let options = &cli.options;
    match &cli.command {
        Command::Compose { p, q } => compose::<S>(options, p, q),
        Command::Profile { grades, roster, q } => {
            let q: FuzzyRelation<S> = read_relation(q, "Q")?;
            let scale = Scale::with_known_names(q.row_labels().clone());
            let dist = match (grades, roster) {
                (Some(path), _) => {
                    let text = read(path)?;
                    parse_grade_counts(&text, &scale)
                        .with_context(|| format!("grade counts {}", path.display()))?
                }
                (None, Some(path)) => {
                    let text = read(path)?;
                    parse_roster(&text)
                        .and_then(|roster| roster_to_counts(&roster, &scale))
                        .with_context(|| format!("roster {}", path.display()))?
                }
                (None, None) => anyhow::bail!("either --grades or --roster is required"),
            };
            profile(options, &dist, &q)
        }
        Command::Solve { q, r } => {
            let problem = problem::<S>(options, read_relation(q, "Q")?, read_relation(r, "R")?)?;
            solve(options, &problem)
        }
        Command::Check { p, q, r } => check::<S>(
            options,
            &read_relation(p, "P")?,
            &read_relation(q, "Q")?,
            &read_relation(r, "R")?,
        ),
        Command::PaperDemo => demo::<S>(options),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_relation<S: Scalar>(path: &Path, role: &str) -> Result<FuzzyRelation<S>> {
    let text = read(path)?;
    parse_relation(&text).with_context(|| format!("{role} table {}", path.display()))
}

fn tolerance<S: Scalar>(options: &Options) -> Result<S> {
    S::from_f64(options.tolerance)
        .with_context(|| format!("tolerance {} is not representable", options.tolerance))
}

fn problem<S: Scalar>(
    options: &Options,
    q: FuzzyRelation<S>,
    r: FuzzyRelation<S>,
) -> Result<FreProblem<S>> {
    Ok(FreProblem::new(q, r)?
        .with_tolerance(tolerance(options)?)?
        .with_cap(options.cap))
}

fn joined<S: Scalar>(values: &[S]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn pretty(value: &serde_json::Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("JSON values serialize");
    out.push('\n');
    out
}

fn relation_json<S: Scalar>(rel: &FuzzyRelation<S>) -> serde_json::Value {
    serde_json::to_value(RelationDocument::from(rel)).expect("relations serialize")
}

fn compose<S: Scalar>(options: &Options, p: &Path, q: &Path) -> Result<Output> {
    let p: FuzzyRelation<S> = read_relation(p, "P")?;
    let q: FuzzyRelation<S> = read_relation(q, "Q")?;
    let r = p.compose(&q)?;
    let body = match options.format {
        Format::Text => write_relation(&r),
        Format::Structured => pretty(&relation_json(&r)),
    };
    Ok((body, Verdict::Affirmative))
}

fn report_json<S: Scalar>(report: &ProfileReport<S>) -> serde_json::Value {
    let ratios: Vec<_> = report
        .retention_ratios
        .iter()
        .map(|r| json!({ "from": r.from, "to": r.to, "ratio": r.ratio }))
        .collect();
    json!({
        "stage_fractions": report.stage_fractions,
        "retention_ratios": ratios,
        "narrative": report.narrative,
    })
}

fn profile_sections<S: Scalar>(
    options: &Options,
    dist: &GradeDistribution,
    q: &FuzzyRelation<S>,
) -> Result<(FuzzySet<S>, ProfileReport<S>)> {
    let round = if options.exact {
        None
    } else {
        Some(options.round_digits.unwrap_or(DEFAULT_ROUND_DIGITS))
    };
    let m = dist.to_fuzzy_set::<S>(round)?;
    let profile = learner_profile(&m, q)?;
    Ok((m, profile_report(&profile)))
}

fn profile<S: Scalar>(
    options: &Options,
    dist: &GradeDistribution,
    q: &FuzzyRelation<S>,
) -> Result<Output> {
    let (m, report) = profile_sections(options, dist, q)?;
    let body = match options.format {
        Format::Text => {
            let mut out = format!("# grade set (n = {})\n", dist.total());
            out.push_str(&write_relation(&m.as_row()));
            out.push_str("\n# stage profile\n");
            out.push_str(&write_relation(&report.profile.as_row()));
            out.push_str("\n# report\n");
            out.push_str(&report.narrative);
            out
        }
        Format::Structured => pretty(&json!({
            "students": dist.total(),
            "grade_set": relation_json(&m.as_row()),
            "profile": relation_json(&report.profile.as_row()),
            "report": report_json(&report),
        })),
    };
    Ok((body, Verdict::Affirmative))
}

fn solution_text<S: Scalar>(problem: &FreProblem<S>, set: &SolutionSet<S>) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "unknowns: {}",
        set.unknown_labels().as_slice().join(",")
    );
    match set.greatest() {
        Some(greatest) => {
            let _ = writeln!(out, "solvable: yes");
            let _ = writeln!(out, "greatest: {}", joined(greatest.entries()));
            let _ = writeln!(out, "minimal solutions: {}", set.minimals().len());
            for m in set.minimals() {
                let _ = writeln!(out, "  {}", joined(m.entries()));
            }
        }
        None => {
            let _ = writeln!(out, "solvable: no");
            let maxima = problem.q().column_maxima();
            let labels = problem.q().col_labels();
            for col in &set.verdict().violated_columns {
                let k = labels
                    .position(col)
                    .expect("violated columns are equation labels");
                let _ = writeln!(
                    out,
                    "violated column {col}: column maximum {} < target {}",
                    maxima[k],
                    problem.r().get(0, k)
                );
            }
            if set.verdict().violated_columns.is_empty() {
                let _ = writeln!(
                    out,
                    "every column can reach its target, but no single row reaches all of them"
                );
            }
        }
    }
    out
}

fn solve<S: Scalar>(options: &Options, problem: &FreProblem<S>) -> Result<Output> {
    let set = problem.solve()?;
    let body = match options.format {
        Format::Text => solution_text(problem, &set),
        Format::Structured => serialize_solution_set(&set),
    };
    let verdict = if set.solvable() {
        Verdict::Affirmative
    } else {
        Verdict::Negative
    };
    Ok((body, verdict))
}

fn check<S: Scalar>(
    options: &Options,
    p: &FuzzyRelation<S>,
    q: &FuzzyRelation<S>,
    r: &FuzzyRelation<S>,
) -> Result<Output> {
    let tol = tolerance::<S>(options)?;
    let solves = is_solution(p, q, r, tol)?;
    let composed = p.compose(q)?;
    let problem = problem(options, q.clone(), r.clone())?;

    let greatest = problem.greatest_solution();
    let below_greatest = greatest.as_ref().map(|g| p.leq(g)).transpose()?;
    let minimal = match problem.minimal_solutions() {
        Ok(minimals) => Ok(minimals.into_iter().find(|m| m.leq(p).unwrap_or(false))),
        Err(err @ Error::EnumerationCapExceeded { .. }) => Err(err),
        Err(err) => return Err(err.into()),
    };

    let body = match options.format {
        Format::Text => {
            let mut out = String::new();
            let verb = if solves { "solves" } else { "does not solve" };
            let _ = writeln!(out, "P {verb} P ∘ Q = R (tolerance {})", options.tolerance);
            let _ = writeln!(out, "composed: {}", joined(composed.entries()));
            let _ = writeln!(out, "target:   {}", joined(r.entries()));
            if solves {
                if let Some(g) = &greatest {
                    let yes = if below_greatest == Some(true) {
                        "yes"
                    } else {
                        "no"
                    };
                    let _ = writeln!(out, "below greatest {}: {yes}", joined(g.entries()));
                }
                match &minimal {
                    Ok(Some(m)) => {
                        let _ = writeln!(out, "above minimal {}", joined(m.entries()));
                    }
                    Ok(None) => {
                        let _ = writeln!(out, "above no minimal solution");
                    }
                    Err(err) => {
                        let _ = writeln!(out, "minimal solutions not enumerated: {err}");
                    }
                }
            }
            out
        }
        Format::Structured => pretty(&json!({
            "is_solution": solves,
            "composed": composed.entries(),
            "target": r.entries(),
            "greatest": greatest.as_ref().map(|g| g.entries().to_vec()),
            "below_greatest": below_greatest,
            "dominated_minimal": minimal.as_ref().ok().and_then(|m| m.as_ref().map(|m| m.entries().to_vec())),
        })),
    };
    let verdict = if solves {
        Verdict::Affirmative
    } else {
        Verdict::Negative
    };
    Ok((body, verdict))
}

fn demo<S: Scalar>(options: &Options) -> Result<Output> {
    let q: FuzzyRelation<S> = parse_relation(dataset::CLASSROOM_Q)?;
    let scale = Scale::with_known_names(q.row_labels().clone());
    let dist = parse_grade_counts(dataset::CLASSROOM_GRADES, &scale)?;
    let (m, report) = profile_sections(options, &dist, &q)?;

    let observed = problem(options, q.clone(), report.profile.as_row())?;
    let observed_set = observed.solve()?;
    let unreachable = problem(
        options,
        q.clone(),
        parse_relation(dataset::UNREACHABLE_PROFILE)?,
    )?;
    let unreachable_set = unreachable.solve()?;

    let body = match options.format {
        Format::Text => {
            let mut out = String::from("# grade counts\n");
            out.push_str(dataset::CLASSROOM_GRADES);
            let _ = write!(out, "\n# grade set (n = {})\n", dist.total());
            out.push_str(&write_relation(&m.as_row()));
            out.push_str("\n# grade-to-stage relation Q (example data)\n");
            out.push_str(&write_relation(&q));
            out.push_str("\n# stage profile\n");
            out.push_str(&write_relation(&report.profile.as_row()));
            out.push_str("\n# report\n");
            out.push_str(&report.narrative);
            out.push_str("\n# grade sets that reproduce this profile\n");
            out.push_str(&solution_text(&observed, &observed_set));
            out.push_str("\n# a profile no grade set reproduces\n");
            out.push_str(&write_relation(unreachable.r()));
            out.push_str(&solution_text(&unreachable, &unreachable_set));
            out
        }
        Format::Structured => pretty(&json!({
            "grade_counts": dist.counts(),
            "grade_set": relation_json(&m.as_row()),
            "q": relation_json(&q),
            "profile": relation_json(&report.profile.as_row()),
            "report": report_json(&report),
            "inverse": serde_json::from_str::<serde_json::Value>(&serialize_solution_set(&observed_set))?,
            "unreachable": serde_json::from_str::<serde_json::Value>(&serialize_solution_set(&unreachable_set))?,
        })),
    };
    Ok((body, Verdict::Affirmative))
}
