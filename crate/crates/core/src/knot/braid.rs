//! Braid closures. Strands run upwards; generator `i` crosses the strands
//! at positions `i` and `i + 1` (1-based), with the left strand passing
//! over for a positive letter.

use super::{relabel_by_traversal, Crossing, Diagram, KnotError, SourceFormat};

pub fn parse_braid(word: &[i64], strands: usize) -> Result<Diagram, KnotError> {
    if strands == 0 {
        return Err(KnotError::OutOfRange { entry: 0, strands });
    }
    for &g in word {
        if g == 0 {
            return Err(KnotError::InvalidGenerator);
        }
        if g.unsigned_abs() as usize >= strands {
            return Err(KnotError::OutOfRange { entry: g, strands });
        }
    }
    let components = closure_cycles(word, strands);
    if components != 1 {
        return Err(KnotError::MultiComponent { components });
    }
    if word.is_empty() {
        return Ok(Diagram::unknot(SourceFormat::Braid));
    }

    // raw edge labels: one per strand segment; closure glues top to bottom
    let mut at: Vec<usize> = (0..strands).collect();
    let mut next_label = strands;
    let mut crossings = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        let (a_in, b_in) = (at[i], at[i + 1]);
        let (a_out, b_out) = (next_label, next_label + 1);
        next_label += 2;
        let (arcs, sign) = if g > 0 { ([b_in, a_out, b_out, a_in], 1) } else { ([a_in, b_in, a_out, b_out], -1) };
        crossings.push(Crossing { arcs, sign });
        // the left strand moves right and vice versa
        at[i] = b_out;
        at[i + 1] = a_out;
    }
    let mut glue: Vec<usize> = (0..next_label).collect();
    for (p, &top) in at.iter().enumerate() {
        glue[top] = p;
    }
    let mut dense = vec![usize::MAX; next_label];
    let mut count = 0;
    for c in crossings.iter_mut() {
        for a in c.arcs.iter_mut() {
            let root = glue[*a];
            if dense[root] == usize::MAX {
                dense[root] = count;
                count += 1;
            }
            *a = dense[root];
        }
    }
    debug_assert_eq!(count, 2 * word.len());
    relabel_by_traversal(&mut crossings);
    let d = Diagram { crossings, arc_count: count, source_format: SourceFormat::Braid };
    debug_assert!(d.validate().is_ok());
    Ok(d)
}

/// Number of cycles of the closure permutation.
fn closure_cycles(word: &[i64], strands: usize) -> usize {
    let mut perm: Vec<usize> = (0..strands).collect();
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        perm.swap(i, i + 1);
    }
    let mut seen = vec![false; strands];
    let mut cycles = 0;
    for s in 0..strands {
        if !seen[s] {
            cycles += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
            }
        }
    }
    cycles
}

/// Braid text: a `strands=N` header line, then whitespace- or
/// comma-separated signed generators. Without a header the strand count
/// is one more than the largest generator. `#` starts a comment.
pub fn parse_braid_text(text: &str) -> Result<Diagram, KnotError> {
    let mut strands: Option<usize> = None;
    let mut word = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("strands") {
            let v = rest.trim_start().strip_prefix('=').map(str::trim).unwrap_or("");
            strands =
                Some(v.parse().map_err(|_| KnotError::Syntax { line: k + 1, msg: format!("bad strand count `{v}`") })?);
            continue;
        }
        for tok in line.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let g: i64 = tok.parse().map_err(|_| KnotError::Syntax {
                line: k + 1,
                msg: format!("expected a signed integer, found `{tok}`"),
            })?;
            word.push(g);
        }
    }
    let strands = strands.unwrap_or_else(|| word.iter().map(|g| g.unsigned_abs() as usize).max().unwrap_or(0) + 1);
    parse_braid(&word, strands)
}
