use std::fmt;

use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    /// `+1` or `-1`.
    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word in the generators; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Freely reduces the given letters.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn gen(g: usize) -> Self {
        Word(vec![Letter::new(g, false)])
    }

    /// From signed 1-based indices: `k` is generator `k - 1`, `-k` its
    /// inverse. Zero entries are ignored.
    pub fn from_signed(entries: &[i64]) -> Self {
        Word::new(entries.iter().filter(|&&e| e != 0).map(|&e| Letter::new(e.unsigned_abs() as usize - 1, e < 0)))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0.iter().filter(|l| l.gen == g).map(|l| l.exponent()).sum()
    }

    pub fn occurrences(&self, g: usize) -> usize {
        self.0.iter().filter(|l| l.gen == g).count()
    }

    /// Strips matching first/last letters (a conjugate of the word).
    pub fn cyclically_reduced(&self) -> Word {
        let mut lo = 0;
        let mut hi = self.0.len();
        while hi - lo >= 2 && self.0[lo] == self.0[hi - 1].inv() {
            lo += 1;
            hi -= 1;
        }
        Word(self.0[lo..hi].to_vec())
    }

    /// Replaces every occurrence of generator `g` by `image` (inverse
    /// occurrences by its inverse).
    pub fn substitute(&self, g: usize, image: &Word) -> Word {
        let inv = image.inverse();
        let mut out = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if l.gen == g {
                out.extend_from_slice(if l.inverse { &inv.0 } else { &image.0 });
            } else {
                out.push(l);
            }
        }
        Word::new(out)
    }

    /// Applies `f` to every generator index.
    pub fn map_gens(&self, f: impl Fn(usize) -> usize) -> Word {
        Word::new(self.0.iter().map(|l| Letter::new(f(l.gen), l.inverse)))
    }

    /// Least cyclic rotation of the word or of its inverse, so that two
    /// relators with the same normal closure up to these moves compare
    /// equal.
    pub fn cyclic_normal_form(&self) -> Word {
        let w = self.cyclically_reduced();
        let mut best: Option<Vec<Letter>> = None;
        for cand in [w.0.clone(), w.inverse().0] {
            for k in 0..cand.len().max(1) {
                let mut r = cand.clone();
                r.rotate_left(k.min(cand.len()));
                if best.as_ref().is_none_or(|b| r < *b) {
                    best = Some(r);
                }
            }
        }
        Word(best.unwrap_or_default())
    }

    /// Parses `g0 g1^-1 g2` (also `1` for the empty word).
    pub fn parse(s: &str) -> Result<Word, String> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (base, inverse) = match tok.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (tok.strip_suffix("^1").unwrap_or(tok), false),
            };
            let idx = base
                .strip_prefix('g')
                .and_then(|d| d.parse::<usize>().ok())
                .ok_or_else(|| format!("bad generator token `{tok}`"))?;
            letters.push(Letter::new(idx, inverse));
        }
        Ok(Word::new(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "g{}", l.gen)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w = Word::from_signed(&[1, 2, -2, -1, 3]);
        assert_eq!(w, Word::from_signed(&[3]));
        assert!(Word::from_signed(&[1, -1]).is_empty());
        assert_eq!(w.inverse(), Word::from_signed(&[-3]));
    }

    #[test]
    fn cyclic_reduction_and_normal_form() {
        let w = Word::from_signed(&[1, 2, 3, -1]);
        assert_eq!(w.cyclically_reduced(), Word::from_signed(&[2, 3]));
        let a = Word::from_signed(&[2, 1, 1]);
        let b = Word::from_signed(&[-1, -1, -2]);
        assert_eq!(a.cyclic_normal_form(), b.cyclic_normal_form());
    }

    #[test]
    fn substitution() {
        let w = Word::from_signed(&[1, -2, 1]);
        let img = Word::from_signed(&[1, 3]);
        // g0 (g0 g2)^-1 g0 = g0 g2^-1
        assert_eq!(w.substitute(1, &img), Word::from_signed(&[1, -3]));
    }

    #[test]
    fn text() {
        let w = Word::parse("g0 g1^-1 g0").unwrap();
        assert_eq!(w.to_string(), "g0 g1^-1 g0");
        assert_eq!(Word::parse("1").unwrap(), Word::identity());
        assert_eq!(Word::identity().to_string(), "1");
        assert!(Word::parse("x").is_err());
    }
}
