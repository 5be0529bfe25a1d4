//! Greedy Tietze simplification with a replayable trace.
//!
//! Each round applies the first available move of: cyclic reduction of a
//! relator, removal of an empty relator, removal of a relator equal to an
//! earlier one up to rotation and inversion, and elimination of a
//! generator occurring exactly once in some relator. Eliminations prefer
//! relators of length at most 2, then shorter relators, then lower
//! generator indices, and are only taken if the total relator length does
//! not grow.

use serde::Serialize;

use super::{Presentation, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum TietzeMove {
    /// Replace a relator by its cyclic reduction (a conjugate).
    CyclicReduce {
        relator: usize,
    },
    RemoveTrivialRelator {
        relator: usize,
    },
    RemoveDuplicateRelator {
        relator: usize,
        duplicate_of: usize,
    },
    /// Solve `relator` for `generator`, substitute `definition` everywhere,
    /// drop the relator and the generator; higher generators shift down.
    EliminateGenerator {
        generator: usize,
        relator: usize,
        definition: Word,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TietzeTrace {
    pub moves: Vec<TietzeMove>,
}

impl TietzeTrace {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Applies the moves in order, checking every witness.
    pub fn replay(&self, p: &Presentation) -> Result<Presentation, String> {
        let mut cur = p.clone();
        for (k, m) in self.moves.iter().enumerate() {
            cur = apply(&cur, m).map_err(|e| format!("move {k}: {e}"))?;
        }
        Ok(cur)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TietzeResult {
    pub presentation: Presentation,
    pub trace: TietzeTrace,
    /// The move budget ran out; the presentation is the best found so far.
    pub exhausted: bool,
}

/// `g` solved from a relator containing it exactly once:
/// `u g^e v = 1` gives `g = (u^-1 v^-1)^e`.
fn solve(r: &Word, g: usize) -> Option<Word> {
    if r.occurrences(g) != 1 {
        return None;
    }
    let letters = r.letters();
    let pos = letters.iter().position(|l| l.gen == g)?;
    let u = Word::new(letters[..pos].iter().copied());
    let v = Word::new(letters[pos + 1..].iter().copied());
    let def = u.inverse().concat(&v.inverse());
    Some(if letters[pos].inverse { def.inverse() } else { def })
}

fn apply(p: &Presentation, m: &TietzeMove) -> Result<Presentation, String> {
    let rels = p.relators();
    let check = |i: usize| if i < rels.len() { Ok(()) } else { Err(format!("no relator {i}")) };
    let mut out = rels.to_vec();
    let mut gens = p.generator_count();
    match m {
        TietzeMove::CyclicReduce { relator } => {
            check(*relator)?;
            out[*relator] = rels[*relator].cyclically_reduced();
        }
        TietzeMove::RemoveTrivialRelator { relator } => {
            check(*relator)?;
            if !rels[*relator].is_empty() {
                return Err(format!("relator {relator} is not trivial"));
            }
            out.remove(*relator);
        }
        TietzeMove::RemoveDuplicateRelator { relator, duplicate_of } => {
            check(*relator)?;
            check(*duplicate_of)?;
            if relator == duplicate_of
                || rels[*relator].cyclic_normal_form() != rels[*duplicate_of].cyclic_normal_form()
            {
                return Err(format!("relator {relator} does not duplicate relator {duplicate_of}"));
            }
            out.remove(*relator);
        }
        TietzeMove::EliminateGenerator { generator, relator, definition } => {
            check(*relator)?;
            let g = *generator;
            if gens <= 1 {
                return Err("cannot eliminate the last generator".into());
            }
            match solve(&rels[*relator], g) {
                Some(d) if d == *definition => {}
                _ => return Err(format!("relator {relator} does not define generator {g} as stated")),
            }
            out.remove(*relator);
            let shift = |x: usize| if x > g { x - 1 } else { x };
            out = out.iter().map(|w| w.substitute(g, definition).map_gens(shift)).collect();
            gens -= 1;
        }
    }
    let mut next = Presentation::new(gens, out).map_err(|e| e.to_string())?;
    if let Some(labels) = p.labels() {
        let mut labels = labels.to_vec();
        if let TietzeMove::EliminateGenerator { generator, .. } = m {
            labels.remove(*generator);
        }
        next = next.with_labels(labels);
    }
    Ok(next)
}

/// Next move, or `None` when no rule applies.
fn next_move(p: &Presentation) -> Option<(TietzeMove, Presentation)> {
    let rels = p.relators();
    for (i, r) in rels.iter().enumerate() {
        if r.cyclically_reduced() != *r {
            let m = TietzeMove::CyclicReduce { relator: i };
            let q = apply(p, &m).expect("valid move");
            return Some((m, q));
        }
    }
    if let Some(i) = rels.iter().position(Word::is_empty) {
        let m = TietzeMove::RemoveTrivialRelator { relator: i };
        let q = apply(p, &m).expect("valid move");
        return Some((m, q));
    }
    let forms: Vec<Word> = rels.iter().map(Word::cyclic_normal_form).collect();
    for i in 0..forms.len() {
        if let Some(j) = (0..i).find(|&j| forms[j] == forms[i]) {
            let m = TietzeMove::RemoveDuplicateRelator { relator: i, duplicate_of: j };
            let q = apply(p, &m).expect("valid move");
            return Some((m, q));
        }
    }
    if p.generator_count() <= 1 {
        return None;
    }
    let mut candidates: Vec<(usize, usize, usize, usize)> = Vec::new();
    for (i, r) in rels.iter().enumerate() {
        for g in 0..p.generator_count() {
            if r.occurrences(g) == 1 {
                candidates.push(((r.len() > 2) as usize, r.len(), g, i));
            }
        }
    }
    candidates.sort_unstable();
    let before = p.total_length();
    for (_, _, g, i) in candidates {
        let definition = solve(&rels[i], g).expect("single occurrence");
        let m = TietzeMove::EliminateGenerator { generator: g, relator: i, definition };
        let q = apply(p, &m).expect("valid move");
        if q.total_length() <= before {
            return Some((m, q));
        }
    }
    None
}

pub fn tietze_simplify(p: &Presentation, max_moves: usize) -> TietzeResult {
    let mut cur = p.clone();
    let mut trace = TietzeTrace::default();
    while let Some((m, q)) = next_move(&cur) {
        if trace.len() >= max_moves {
            return TietzeResult { presentation: cur, trace, exhausted: true };
        }
        trace.moves.push(m);
        cur = q;
    }
    TietzeResult { presentation: cur, trace, exhausted: false }
}
