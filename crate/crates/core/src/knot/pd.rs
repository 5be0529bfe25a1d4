//! Planar diagram codes: `X[a,b,c,d]`, `Xp[...]`, `Xm[...]`.
//!
//! Labels may be any integers; they are compressed to `0..2n` in numeric
//! order. `Xp`/`Xm` assert the crossing sign, which must agree with the
//! sign implied by the orientation. A `# format: <name>` line records the
//! format the diagram was originally parsed from.

use std::sync::OnceLock;

use regex::Regex;

use super::{check_degrees, orient, Crossing, Diagram, KnotError, SourceFormat};

/// One PD entry as written, with its optional sign assertion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PdTuple {
    pub arcs: [i64; 4],
    pub sign: Option<i8>,
}

impl PdTuple {
    pub fn new(arcs: [i64; 4]) -> Self {
        PdTuple { arcs, sign: None }
    }
}

pub fn parse_pd(tuples: &[PdTuple]) -> Result<Diagram, KnotError> {
    parse_pd_as(tuples, SourceFormat::Pd)
}

fn parse_pd_as(tuples: &[PdTuple], source_format: SourceFormat) -> Result<Diagram, KnotError> {
    if tuples.is_empty() {
        return Ok(Diagram::unknot(source_format));
    }
    let mut labels: Vec<i64> = tuples.iter().flat_map(|t| t.arcs).collect();
    labels.sort_unstable();
    for chunk in labels.chunk_by(|a, b| a == b) {
        if chunk.len() != 2 {
            return Err(KnotError::ArcDegree { arc: chunk[0], count: chunk.len() });
        }
    }
    labels.dedup();
    let n = tuples.len();
    let raw: Vec<[usize; 4]> =
        tuples.iter().map(|t| t.arcs.map(|a| labels.binary_search(&a).expect("label collected"))).collect();
    check_degrees(&raw, 2 * n)?;
    let signs = orient(&raw)?;
    let mut crossings = Vec::with_capacity(n);
    for (k, (t, s)) in tuples.iter().zip(signs).enumerate() {
        if let Some(given) = t.sign {
            if given != s {
                return Err(KnotError::InconsistentOrientation(format!(
                    "crossing {k} is marked {} but the orientation makes it {}",
                    sign_name(given),
                    sign_name(s)
                )));
            }
        }
        crossings.push(Crossing { arcs: raw[k], sign: s });
    }
    Ok(Diagram { crossings, arc_count: 2 * n, source_format })
}

fn sign_name(s: i8) -> &'static str {
    if s > 0 {
        "positive"
    } else {
        "negative"
    }
}

fn tuple_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"X([pm]?)\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]").expect("valid regex")
    })
}

/// PD text: `X[...]` entries anywhere in the text (so `PD[X[..], X[..]]`
/// works too), one crossing each.
pub fn parse_pd_text(text: &str) -> Result<Diagram, KnotError> {
    let mut tuples = Vec::new();
    let mut format = SourceFormat::Pd;
    for (k, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if let Some(rest) = trimmed.strip_prefix('#') {
            if let Some(name) = rest.trim().strip_prefix("format:") {
                format = SourceFormat::from_name(name.trim()).ok_or_else(|| KnotError::Syntax {
                    line: k + 1,
                    msg: format!("unknown format `{}`", name.trim()),
                })?;
            }
            continue;
        }
        let mut matched = 0;
        for cap in tuple_regex().captures_iter(trimmed) {
            let sign = match &cap[1] {
                "p" => Some(1),
                "m" => Some(-1),
                _ => None,
            };
            let mut arcs = [0i64; 4];
            for (i, a) in arcs.iter_mut().enumerate() {
                *a = cap[i + 2]
                    .parse()
                    .map_err(|_| KnotError::Syntax { line: k + 1, msg: "arc label out of range".into() })?;
            }
            tuples.push(PdTuple { arcs, sign });
            matched += 1;
        }
        let stray = trimmed.matches('X').count();
        if stray != matched {
            return Err(KnotError::Syntax { line: k + 1, msg: "malformed crossing entry".into() });
        }
    }
    parse_pd_as(&tuples, format)
}
