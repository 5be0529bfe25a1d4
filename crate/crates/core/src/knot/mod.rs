//! Oriented knot diagrams and their parsers.
//!
//! A [`Diagram`] is a list of crossings in PD convention: entry 0 is the
//! incoming under-strand, the other three follow counterclockwise. Entry 2
//! is therefore the outgoing under-strand and entries 1, 3 carry the
//! over-strand. A crossing is positive when the over-strand runs from
//! entry 3 to entry 1.

mod braid;
mod dt;
mod pd;

use std::fmt;
use std::path::Path;

use serde::Serialize;

pub use braid::{parse_braid, parse_braid_text};
pub use dt::{parse_dt, parse_dt_text};
pub use pd::{parse_pd, parse_pd_text, PdTuple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceFormat {
    Braid,
    Dt,
    Pd,
}

impl SourceFormat {
    pub fn name(self) -> &'static str {
        match self {
            SourceFormat::Braid => "braid",
            SourceFormat::Dt => "dt",
            SourceFormat::Pd => "pd",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "braid" => Some(SourceFormat::Braid),
            "dt" => Some(SourceFormat::Dt),
            "pd" => Some(SourceFormat::Pd),
            _ => None,
        }
    }

    /// Format implied by a file extension (`.braid`, `.dt`, `.pd`).
    pub fn sniff(path: &Path) -> Option<Self> {
        path.extension().and_then(|e| e.to_str()).and_then(Self::from_name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Crossing {
    pub arcs: [usize; 4],
    pub sign: i8,
}

impl Crossing {
    /// Incoming and outgoing arc of the over-strand.
    pub fn over(&self) -> (usize, usize) {
        if self.sign > 0 {
            (self.arcs[3], self.arcs[1])
        } else {
            (self.arcs[1], self.arcs[3])
        }
    }

    pub fn under(&self) -> (usize, usize) {
        (self.arcs[0], self.arcs[2])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Diagram {
    pub crossings: Vec<Crossing>,
    /// Number of edges of the underlying 4-valent graph (`2n`), or 1 for
    /// the crossingless unknot.
    pub arc_count: usize,
    pub source_format: SourceFormat,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KnotError {
    #[error("braid generator {entry} out of range for {strands} strands")]
    OutOfRange { entry: i64, strands: usize },
    #[error("closure has {components} components; only knots are supported")]
    MultiComponent { components: usize },
    #[error("braid generator 0 is not valid")]
    InvalidGenerator,
    #[error("DT code entry {0} is odd")]
    OddValue(i64),
    #[error("DT code is not realizable: {0}")]
    NotRealizable(String),
    #[error("arc {arc} appears {count} times (expected 2)")]
    ArcDegree { arc: i64, count: usize },
    #[error("inconsistent orientation: {0}")]
    InconsistentOrientation(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("cannot determine input format of `{0}` (use .braid, .dt or .pd, or pass a format)")]
    UnknownFormat(String),
}

impl Diagram {
    pub fn unknot(source_format: SourceFormat) -> Self {
        Diagram { crossings: Vec::new(), arc_count: 1, source_format }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Re-checks arc degrees, signs and orientation.
    pub fn validate(&self) -> Result<(), KnotError> {
        if self.crossings.is_empty() {
            return if self.arc_count == 1 { Ok(()) } else { Err(KnotError::ArcDegree { arc: 0, count: 0 }) };
        }
        if self.arc_count != 2 * self.crossings.len() {
            return Err(KnotError::ArcDegree { arc: self.arc_count as i64, count: 0 });
        }
        let raw: Vec<[usize; 4]> = self.crossings.iter().map(|c| c.arcs).collect();
        check_degrees(&raw, self.arc_count)?;
        for c in &self.crossings {
            if c.sign != 1 && c.sign != -1 {
                return Err(KnotError::InconsistentOrientation(format!("sign {} is not ±1", c.sign)));
            }
        }
        let signs = orient(&raw)?;
        for (k, (c, s)) in self.crossings.iter().zip(signs).enumerate() {
            if c.sign != s {
                return Err(KnotError::InconsistentOrientation(format!("crossing {k} has the wrong sign")));
            }
        }
        Ok(())
    }

    /// PD text with explicit signs, re-parseable by [`parse_pd_text`].
    pub fn to_pd_text(&self) -> String {
        let mut out = format!("# format: {}\n", self.source_format.name());
        for c in &self.crossings {
            let tag = if c.sign > 0 { "Xp" } else { "Xm" };
            let [a, b, cc, d] = c.arcs;
            out.push_str(&format!("{tag}[{a},{b},{cc},{d}]\n"));
        }
        out
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_text())
    }
}

/// Parses knot text in the given format.
pub fn parse_knot_text(text: &str, format: SourceFormat) -> Result<Diagram, KnotError> {
    match format {
        SourceFormat::Braid => parse_braid_text(text),
        SourceFormat::Dt => parse_dt_text(text),
        SourceFormat::Pd => parse_pd_text(text),
    }
}

/// Every label in `0..arc_count` appears exactly twice.
fn check_degrees(raw: &[[usize; 4]], arc_count: usize) -> Result<(), KnotError> {
    let mut deg = vec![0usize; arc_count];
    for c in raw {
        for &a in c {
            if a >= arc_count {
                return Err(KnotError::ArcDegree { arc: a as i64, count: 1 });
            }
            deg[a] += 1;
        }
    }
    match deg.iter().position(|&d| d != 2) {
        Some(a) => Err(KnotError::ArcDegree { arc: a as i64, count: deg[a] }),
        None => Ok(()),
    }
}

/// Walks the knot starting along the under-strand of crossing 0 and
/// returns the sign of every crossing. The walk must enter each crossing
/// once at entry 0 and once at entry 1 or 3, and cover every slot.
fn orient(raw: &[[usize; 4]]) -> Result<Vec<i8>, KnotError> {
    let n = raw.len();
    let arc_count = 2 * n;
    let mut occ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); arc_count];
    for (c, arcs) in raw.iter().enumerate() {
        for (p, &a) in arcs.iter().enumerate() {
            occ[a].push((c, p));
        }
    }
    let mut seen = vec![[false; 4]; n];
    let mut signs: Vec<Option<i8>> = vec![None; n];
    let mut visited = 0;
    let (mut c, mut p) = (0usize, 0usize);
    loop {
        if p == 2 {
            return Err(KnotError::InconsistentOrientation(format!(
                "the walk enters crossing {c} along its outgoing under-strand"
            )));
        }
        let exit = (p + 2) % 4;
        if seen[c][p] || seen[c][exit] {
            return Err(KnotError::InconsistentOrientation(format!("crossing {c} is traversed twice")));
        }
        seen[c][p] = true;
        seen[c][exit] = true;
        visited += 2;
        if p != 0 {
            let s = if p == 3 { 1 } else { -1 };
            if signs[c].replace(s).is_some() {
                return Err(KnotError::InconsistentOrientation(format!("crossing {c} has two over-passes")));
            }
        }
        let a = raw[c][exit];
        let next = occ[a].iter().copied().find(|&slot| slot != (c, exit)).expect("degree checked");
        (c, p) = next;
        if (c, p) == (0, 0) {
            break;
        }
    }
    if visited < 4 * n {
        return Err(KnotError::MultiComponent { components: 2 });
    }
    Ok(signs.into_iter().map(|s| s.expect("every crossing is passed over once")).collect())
}

/// Relabels arcs in order of traversal, starting with the incoming
/// under-strand of crossing 0 as arc 0.
fn relabel_by_traversal(crossings: &mut [Crossing]) {
    let n = crossings.len();
    if n == 0 {
        return;
    }
    let arc_count = 2 * n;
    // successor of every arc: the arc leaving the crossing it enters
    let mut next = vec![usize::MAX; arc_count];
    for c in crossings.iter() {
        let (ui, uo) = c.under();
        let (oi, oo) = c.over();
        next[ui] = uo;
        next[oi] = oo;
    }
    let mut label = vec![usize::MAX; arc_count];
    let mut a = crossings[0].arcs[0];
    for k in 0..arc_count {
        label[a] = k;
        a = next[a];
    }
    for c in crossings.iter_mut() {
        for x in c.arcs.iter_mut() {
            *x = label[*x];
        }
    }
}
