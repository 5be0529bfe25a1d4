//! Finite group presentations, Wirtinger presentations of knot diagrams,
//! Tietze simplification and abelianization.
//!
//! Text format:
//!
//! ```text
//! gens: 2
//! rel: g0 g1 g0 g1^-1 g0^-1 g1^-1
//! ```

mod snf;
mod tietze;
mod wirtinger;
mod word;

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

pub use snf::{cokernel, invariant_factors};
pub use tietze::{tietze_simplify, TietzeMove, TietzeResult, TietzeTrace};
pub use wirtinger::{wirtinger, wirtinger_arcs};
pub use word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Presentation {
    generator_count: usize,
    relators: Vec<Word>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("relator {relator} uses generator {gen} but there are only {count} generators")]
    GeneratorOutOfRange { relator: usize, gen: usize, count: usize },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("a presentation needs at least one generator")]
    NoGenerators,
}

/// Rank and torsion coefficients of the abelianization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub rank: usize,
    #[serde(serialize_with = "crate::serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

impl Abelianization {
    /// `ℤ`, the abelianization of every knot group.
    pub fn is_infinite_cyclic(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = match self.rank {
            0 => vec![],
            1 => vec!["Z".to_string()],
            r => vec![format!("Z^{r}")],
        };
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl Presentation {
    /// Relators are freely reduced on the way in.
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Self, PresentationError> {
        if generator_count == 0 {
            return Err(PresentationError::NoGenerators);
        }
        for (k, r) in relators.iter().enumerate() {
            if let Some(g) = r.max_gen().filter(|&g| g >= generator_count) {
                return Err(PresentationError::GeneratorOutOfRange { relator: k, gen: g, count: generator_count });
            }
        }
        let relators = relators.into_iter().map(|r| Word::new(r.letters().iter().copied())).collect();
        Ok(Presentation { generator_count, relators, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.generator_count);
        self.labels = Some(labels);
        self
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn deficiency(&self) -> i64 {
        self.generator_count as i64 - self.relators.len() as i64
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// The presentation with one more relator.
    pub fn with_relator(&self, r: Word) -> Result<Self, PresentationError> {
        let mut rels = self.relators.clone();
        rels.push(r);
        Presentation::new(self.generator_count, rels)
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn relation_matrix(&self) -> Vec<Vec<BigInt>> {
        self.relators
            .iter()
            .map(|r| (0..self.generator_count).map(|g| BigInt::from(r.exponent_sum(g))).collect())
            .collect()
    }

    pub fn abelianization(&self) -> Abelianization {
        let (rank, torsion) = cokernel(&self.relation_matrix(), self.generator_count);
        Abelianization { rank, torsion }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("gens: {}\n", self.generator_count);
        for r in &self.relators {
            out.push_str(&format!("rel: {r}\n"));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self, PresentationError> {
        let mut gens: Option<usize> = None;
        let mut rels = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |msg: String| PresentationError::Syntax { line: k + 1, msg };
            if let Some(rest) = line.strip_prefix("gens:") {
                gens = Some(rest.trim().parse().map_err(|_| syntax(format!("bad generator count `{}`", rest.trim())))?);
            } else if let Some(rest) = line.strip_prefix("rel:") {
                if gens.is_none() {
                    return Err(syntax("`rel:` before `gens:`".into()));
                }
                rels.push(Word::parse(rest).map_err(syntax)?);
            } else {
                return Err(syntax(format!("expected `gens:` or `rel:`, found `{line}`")));
            }
        }
        let k = gens.ok_or(PresentationError::Syntax { line: 0, msg: "missing `gens:` line".into() })?;
        Presentation::new(k, rels)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `⟨x, y | x y x y^-1 x^-1 y^-1⟩`, the braid-relation presentation of the
/// trefoil group.
pub fn trefoil_two_generator() -> Presentation {
    Presentation::new(2, vec![Word::from_signed(&[1, 2, 1, -2, -1, -2])]).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelianizations() {
        let free = Presentation::new(1, vec![]).unwrap();
        assert!(free.abelianization().is_infinite_cyclic());
        let c3 = Presentation::new(1, vec![Word::from_signed(&[1, 1, 1])]).unwrap();
        let a = c3.abelianization();
        assert_eq!((a.rank, a.torsion.clone()), (0, vec![BigInt::from(3)]));
        assert_eq!(a.to_string(), "Z/3");
        let mixed = Abelianization { rank: 2, torsion: vec![BigInt::from(2), BigInt::from(4)] };
        assert_eq!(mixed.to_string(), "Z^2 + Z/2 + Z/4");
        assert!(trefoil_two_generator().abelianization().is_infinite_cyclic());
    }

    #[test]
    fn text_round_trip() {
        let p = trefoil_two_generator().with_relator(Word::identity()).unwrap();
        let t = p.to_text();
        assert_eq!(t, "gens: 2\nrel: g0 g1 g0 g1^-1 g0^-1 g1^-1\nrel: 1\n");
        assert_eq!(Presentation::parse_text(&t).unwrap(), p);
    }

    #[test]
    fn validation() {
        assert!(matches!(
            Presentation::new(1, vec![Word::gen(1)]),
            Err(PresentationError::GeneratorOutOfRange { gen: 1, .. })
        ));
        assert!(matches!(Presentation::parse_text("rel: g0\n"), Err(PresentationError::Syntax { line: 1, .. })));
        assert!(Presentation::new(0, vec![]).is_err());
    }
}
