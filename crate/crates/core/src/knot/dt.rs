//! Dowker–Thistlethwaite codes.
//!
//! Walking the knot labels the passages through crossings `1..=2n`; each
//! crossing gets one odd and one even label and the code lists the even
//! partner of `1, 3, 5, ...`. A positive entry means the odd passage goes
//! over. The planar embedding is recovered by trying both cyclic orders at
//! every crossing but the first and keeping the first choice whose face
//! count gives a sphere (`F = n + 2`). The mirror image is never examined.

use super::{Crossing, Diagram, KnotError, SourceFormat};

/// Largest crossing count accepted (the embedding search is exponential).
pub const MAX_DT_CROSSINGS: usize = 20;

pub fn parse_dt(code: &[i64]) -> Result<Diagram, KnotError> {
    for &v in code {
        if v % 2 != 0 {
            return Err(KnotError::OddValue(v));
        }
    }
    let n = code.len();
    if n == 0 {
        return Ok(Diagram::unknot(SourceFormat::Dt));
    }
    if n > MAX_DT_CROSSINGS {
        return Err(KnotError::NotRealizable(format!("more than {MAX_DT_CROSSINGS} crossings")));
    }
    let mut used = vec![false; n];
    for &v in code {
        let k = v.unsigned_abs() as usize;
        if k == 0 || k > 2 * n || used[k / 2 - 1] {
            return Err(KnotError::NotRealizable(format!(
                "entries must be a signed permutation of 2, 4, ..., {}",
                2 * n
            )));
        }
        used[k / 2 - 1] = true;
    }

    // edge e (0-based) leaves passage e + 1 and enters passage e + 2
    let edges = 2 * n;
    let out_edge = |p: usize| p - 1;
    let in_edge = |p: usize| (p + edges - 2) % edges;

    for mask in 0u32..(1 << (n - 1)) {
        // rotation[c]: the four edge-ends at crossing c in cyclic order, as
        // (edge, is_head)
        let mut rotation = Vec::with_capacity(n);
        for (c, &v) in code.iter().enumerate() {
            let o = 2 * c + 1;
            let e = v.unsigned_abs() as usize;
            let flip = c > 0 && mask >> (c - 1) & 1 == 1;
            let (io, oo, ie, oe) = ((in_edge(o), true), (out_edge(o), false), (in_edge(e), true), (out_edge(e), false));
            rotation.push(if flip { [io, oe, oo, ie] } else { [io, ie, oo, oe] });
        }
        if count_faces(&rotation, edges) == n + 2 {
            let crossings = code
                .iter()
                .enumerate()
                .map(|(c, &v)| {
                    let r = rotation[c];
                    // odd passage over: the even strand is under
                    let start = if v > 0 {
                        r.iter().position(|&(edge, head)| head && edge == in_edge(v.unsigned_abs() as usize)).unwrap()
                    } else {
                        0
                    };
                    let arcs = [r[start].0, r[(start + 1) % 4].0, r[(start + 2) % 4].0, r[(start + 3) % 4].0];
                    // over-strand runs from entry 3 to entry 1 for a positive crossing
                    let sign = if r[(start + 3) % 4].1 { 1 } else { -1 };
                    Crossing { arcs, sign }
                })
                .collect();
            let d = Diagram { crossings, arc_count: edges, source_format: SourceFormat::Dt };
            debug_assert!(d.validate().is_ok(), "{d:?}");
            return Ok(d);
        }
    }
    Err(KnotError::NotRealizable("no planar embedding".into()))
}

/// Faces of the ribbon graph given by a rotation system.
fn count_faces(rotation: &[[(usize, bool); 4]], edges: usize) -> usize {
    // dart index: 4 * crossing + slot; partner: other end of the same edge
    let n = rotation.len();
    let mut end_at = vec![[usize::MAX; 2]; edges];
    for (c, r) in rotation.iter().enumerate() {
        for (s, &(e, head)) in r.iter().enumerate() {
            end_at[e][head as usize] = 4 * c + s;
        }
    }
    let partner = |d: usize| {
        let (e, head) = rotation[d / 4][d % 4];
        end_at[e][!head as usize]
    };
    let mut seen = vec![false; 4 * n];
    let mut faces = 0;
    for start in 0..4 * n {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            let q = partner(d);
            d = 4 * (q / 4) + (q % 4 + 1) % 4;
        }
    }
    faces
}

/// DT text: comma- or whitespace-separated even integers, optionally in
/// brackets. Empty text is the unknot.
pub fn parse_dt_text(text: &str) -> Result<Diagram, KnotError> {
    let mut code = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        for tok in line
            .split(|c: char| c.is_whitespace() || c == ',' || c == '[' || c == ']' || c == '(' || c == ')')
            .filter(|t| !t.is_empty())
        {
            let v: i64 = tok.parse().map_err(|_| KnotError::Syntax {
                line: k + 1,
                msg: format!("expected an even integer, found `{tok}`"),
            })?;
            code.push(v);
        }
    }
    parse_dt(&code)
}
