//! Comparison of two knots by the lexicographic order of their
//! representation-variety dimension lists.
//!
//! If `A ≥ B` under ribbon concordance then `A`'s list is at least `B`'s
//! for every model. A strict inequality in one model therefore rules out
//! one direction; strict inequalities of both signs rule out both.

use std::cmp::Ordering;
use std::fmt;

use knotrep_algebra::Budget;
use serde::Serialize;

use crate::knot::Diagram;
use crate::presentation::{tietze_simplify, wirtinger, Presentation};
use crate::repvar::{build_rep_ideal, variety_dimension, DimInvariant, Gauge, Target};

/// Move cap for the Tietze pass in the comparison pipeline.
pub const TIETZE_MOVES: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ObstructionError {
    #[error("dimension list {0:?} is not sorted in descending order")]
    UnsortedInput(Vec<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LexVerdict {
    Less,
    Equal,
    Greater,
    Incomplete,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CombinedVerdict {
    /// Only `A ≥ B` remains possible.
    #[serde(rename = "ConsistentWith(A>=B)")]
    ConsistentWithAGeqB,
    /// Only `B ≥ A` remains possible.
    #[serde(rename = "ConsistentWith(B>=A)")]
    ConsistentWithBGeqA,
    ConsistentBothOrEqual,
    ExcludedBothDirections,
    Inconclusive,
}

impl fmt::Display for CombinedVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CombinedVerdict::ConsistentWithAGeqB => "ConsistentWith(A>=B)",
            CombinedVerdict::ConsistentWithBGeqA => "ConsistentWith(B>=A)",
            CombinedVerdict::ConsistentBothOrEqual => "ConsistentBothOrEqual",
            CombinedVerdict::ExcludedBothDirections => "ExcludedBothDirections",
            CombinedVerdict::Inconclusive => "Inconclusive",
        })
    }
}

fn check_sorted(v: &[usize]) -> Result<(), ObstructionError> {
    if v.windows(2).all(|w| w[0] >= w[1]) {
        Ok(())
    } else {
        Err(ObstructionError::UnsortedInput(v.to_vec()))
    }
}

/// Lexicographic comparison of descending lists, the shorter padded with
/// `-1`; so `[3, 1] > [3]`.
pub fn lex_compare(a: &[usize], b: &[usize]) -> Result<LexVerdict, ObstructionError> {
    check_sorted(a)?;
    check_sorted(b)?;
    let at = |v: &[usize], i: usize| v.get(i).map_or(-1, |&x| x as i64);
    for i in 0..a.len().max(b.len()) {
        match at(a, i).cmp(&at(b, i)) {
            Ordering::Less => return Ok(LexVerdict::Less),
            Ordering::Greater => return Ok(LexVerdict::Greater),
            Ordering::Equal => {}
        }
    }
    Ok(LexVerdict::Equal)
}

/// Combined verdict over per-model verdicts; incomplete entries are ignored.
pub fn combine(verdicts: &[LexVerdict]) -> CombinedVerdict {
    let done: Vec<LexVerdict> = verdicts.iter().copied().filter(|v| *v != LexVerdict::Incomplete).collect();
    let less = done.contains(&LexVerdict::Less);
    let greater = done.contains(&LexVerdict::Greater);
    match (done.is_empty(), less, greater) {
        (true, _, _) => CombinedVerdict::Inconclusive,
        (_, true, true) => CombinedVerdict::ExcludedBothDirections,
        (_, false, true) => CombinedVerdict::ConsistentWithAGeqB,
        (_, true, false) => CombinedVerdict::ConsistentWithBGeqA,
        (_, false, false) => CombinedVerdict::ConsistentBothOrEqual,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ModelSpec {
    pub target: Target,
    pub gauge: Gauge,
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} gauge={}", self.target, self.gauge.key())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelEntry {
    pub model: String,
    pub a: DimInvariant,
    pub b: DimInvariant,
    pub verdict: LexVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub schema: u32,
    pub a: String,
    pub b: String,
    pub entries: Vec<ModelEntry>,
    pub combined: CombinedVerdict,
    /// Some dimension used in the verdict is an unverified Krull bound.
    pub heuristic: bool,
    pub real_radical_caveat: bool,
    pub budget_caveat: bool,
}

impl ComparisonReport {
    pub fn has_incomplete(&self) -> bool {
        self.entries.iter().any(|e| e.verdict == LexVerdict::Incomplete)
    }
}

/// Builds the report from per-model dimension invariants. An entry is
/// incomplete when either side is.
pub fn assemble_report(a: &str, b: &str, dims: Vec<(String, DimInvariant, DimInvariant)>) -> ComparisonReport {
    let mut entries = Vec::new();
    let mut heuristic = false;
    let mut real_radical_caveat = false;
    let mut budget_caveat = false;
    for (model, da, db) in dims {
        budget_caveat |= da.budget_caveat || db.budget_caveat;
        let verdict = if da.complete && db.complete {
            // dimension lists are emitted sorted
            lex_compare(&da.dimension_list, &db.dimension_list).unwrap_or(LexVerdict::Incomplete)
        } else {
            LexVerdict::Incomplete
        };
        if verdict != LexVerdict::Incomplete {
            let caveat = da.real_radical_caveat || db.real_radical_caveat;
            real_radical_caveat |= caveat;
            heuristic |= caveat || !da.certified || !db.certified;
        }
        entries.push(ModelEntry { model, a: da, b: db, verdict });
    }
    let verdicts: Vec<LexVerdict> = entries.iter().map(|e| e.verdict).collect();
    ComparisonReport {
        schema: 1,
        a: a.to_string(),
        b: b.to_string(),
        entries,
        combined: combine(&verdicts),
        heuristic,
        real_radical_caveat,
        budget_caveat,
    }
}

/// Wirtinger presentation followed by Tietze simplification.
pub fn knot_group(d: &Diagram) -> Presentation {
    tietze_simplify(&wirtinger(d), TIETZE_MOVES).presentation
}

pub fn knot_dimension(p: &Presentation, model: ModelSpec, budget: &Budget) -> DimInvariant {
    variety_dimension(&build_rep_ideal(p, model.target, model.gauge), budget)
}

/// Runs the full pipeline for both knots under every model. `a` and `b`
/// label the knots in the report.
pub fn compare_knots(
    a: (&str, &Diagram),
    b: (&str, &Diagram),
    models: &[ModelSpec],
    budget: &Budget,
) -> ComparisonReport {
    let (pa, pb) = (knot_group(a.1), knot_group(b.1));
    let dims = models
        .iter()
        .map(|&m| (m.to_string(), knot_dimension(&pa, m, budget), knot_dimension(&pb, m, budget)))
        .collect();
    assemble_report(a.0, b.0, dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use LexVerdict::*;

    #[test]
    fn lex_examples() {
        assert_eq!(lex_compare(&[3], &[3]), Ok(Equal));
        assert_eq!(lex_compare(&[4, 3], &[3]), Ok(Greater));
        assert_eq!(lex_compare(&[3, 1], &[3]), Ok(Greater));
        assert_eq!(lex_compare(&[], &[0]), Ok(Less));
        assert_eq!(lex_compare(&[1, 3], &[3]), Err(ObstructionError::UnsortedInput(vec![1, 3])));
    }

    #[test]
    fn combine_examples() {
        assert_eq!(combine(&[]), CombinedVerdict::Inconclusive);
        assert_eq!(combine(&[Incomplete, Incomplete]), CombinedVerdict::Inconclusive);
        assert_eq!(combine(&[Less, Greater]), CombinedVerdict::ExcludedBothDirections);
        assert_eq!(combine(&[Less, Incomplete, Equal]), CombinedVerdict::ConsistentWithBGeqA);
        assert_eq!(combine(&[Greater, Greater]), CombinedVerdict::ConsistentWithAGeqB);
        assert_eq!(combine(&[Equal]), CombinedVerdict::ConsistentBothOrEqual);
    }
}
