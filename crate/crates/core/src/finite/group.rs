//! Permutation groups with enumerated element tables.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

/// Largest group order that will be enumerated.
pub const MAX_ORDER: usize = 10_000;
/// Groups up to this order get a full multiplication table.
const TABLE_LIMIT: usize = 2048;

/// A permutation of `0..n`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u16>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u16).collect())
    }

    /// From an image list; `None` unless it is a permutation of `0..len`.
    pub fn from_images(images: Vec<u16>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i as usize >= images.len() || std::mem::replace(&mut seen[i as usize], true) {
                return None;
            }
        }
        Some(Perm(images))
    }

    /// From 0-based cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Option<Self> {
        let mut img: Vec<u16> = (0..n as u16).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x >= n || std::mem::replace(&mut used[x], true) {
                    return None;
                }
                img[x] = c[(k + 1) % c.len()] as u16;
            }
        }
        Some(Perm(img))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Cycle notation on 1-based points, `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for s in 0..self.0.len() {
            if seen[s] || self.0[s] as usize == s {
                continue;
            }
            out.push('(');
            let mut x = s;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&(x + 1).to_string());
                first = false;
                x = self.0[x] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    /// Order of the permutation.
    pub fn order(&self) -> u64 {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.then(self);
            k += 1;
        }
        k
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("unknown group `{0}` (try Cn, Dn, Sn, An or a permutation file)")]
    UnknownGroup(String),
    #[error("group order exceeds {0}")]
    TooLarge(usize),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

/// A permutation group with every element listed. Element 0 is the
/// identity; the order of the list is breadth-first from the generators,
/// which fixes the lexicographic order used by searches.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    inverse: Vec<u32>,
    table: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub name: String,
    pub degree: usize,
    pub order: usize,
    pub generators: Vec<String>,
}

impl FiniteGroup {
    pub fn generate(name: impl Into<String>, degree: usize, generators: Vec<Perm>) -> Result<Self, GroupError> {
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0u32);
        let mut head = 0;
        while head < elements.len() {
            for g in &generators {
                let p = elements[head].then(g);
                if !index.contains_key(&p) {
                    if elements.len() >= MAX_ORDER {
                        return Err(GroupError::TooLarge(MAX_ORDER));
                    }
                    index.insert(p.clone(), elements.len() as u32);
                    elements.push(p);
                }
            }
            head += 1;
        }
        let inverse = elements.iter().map(|e| index[&e.inverse()]).collect();
        let mut group = FiniteGroup { name: name.into(), degree, generators, elements, index, inverse, table: None };
        let n = group.order();
        if n <= TABLE_LIMIT {
            let mut t = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    t.push(group.index[&group.elements[a].then(&group.elements[b])]);
                }
            }
            group.table = Some(t);
        }
        Ok(group)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.index.get(p).copied()
    }

    /// Product `a·b` (apply `a`, then `b`).
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.index[&self.elements[a as usize].then(&self.elements[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    /// `h^-1 a h`.
    pub fn conjugate(&self, a: u32, h: u32) -> u32 {
        self.mul(self.mul(self.inv(h), a), h)
    }

    /// Conjugacy classes, each sorted, listed by smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let n = self.order();
        let gens: Vec<u32> = self.generators.iter().map(|g| self.index[g]).collect();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for a in 0..n as u32 {
            if class_of[a as usize] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class = vec![a];
            class_of[a as usize] = id;
            let mut head = 0;
            while head < class.len() {
                let x = class[head];
                for &g in &gens {
                    let y = self.conjugate(x, g);
                    if class_of[y as usize] == usize::MAX {
                        class_of[y as usize] = id;
                        class.push(y);
                    }
                }
                head += 1;
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Membership mask of the centralizer of `h`.
    pub fn centralizer(&self, h: u32) -> Vec<bool> {
        (0..self.order() as u32).map(|a| self.mul(a, h) == self.mul(h, a)).collect()
    }

    pub fn summary(&self) -> GroupSummary {
        GroupSummary {
            name: self.name.clone(),
            degree: self.degree,
            order: self.order(),
            generators: self.generators.iter().map(Perm::cycle_string).collect(),
        }
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        let n = n.max(1);
        let rot = Perm::from_images((0..n).map(|i| ((i + 1) % n) as u16).collect()).expect("rotation");
        Self::generate(format!("C{n}"), n, vec![rot])
    }

    /// Symmetries of the regular `n`-gon, order `2n`.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n < 3 {
            return Err(GroupError::UnknownGroup(format!("D{n}")));
        }
        let rot = Perm::from_images((0..n).map(|i| ((i + 1) % n) as u16).collect()).expect("rotation");
        let refl = Perm::from_images((0..n).map(|i| ((n - i) % n) as u16).collect()).expect("reflection");
        Self::generate(format!("D{n}"), n, vec![rot, refl])
    }

    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        let n = n.max(1);
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[vec![0, 1]]).expect("transposition"));
        }
        if n >= 3 {
            gens.push(Perm::from_cycles(n, &[(0..n).collect()]).expect("long cycle"));
        }
        Self::generate(format!("S{n}"), n, gens)
    }

    pub fn alternating(n: usize) -> Result<Self, GroupError> {
        let n = n.max(1);
        let gens = (2..n).map(|k| Perm::from_cycles(n, &[vec![0, 1, k]]).expect("3-cycle")).collect();
        Self::generate(format!("A{n}"), n, gens)
    }

    /// `Cn`, `Dn`, `Sn` or `An` (case-insensitive).
    pub fn by_name(name: &str) -> Result<Self, GroupError> {
        let unknown = || GroupError::UnknownGroup(name.to_string());
        let name = name.trim();
        let mut chars = name.chars();
        let kind = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        match kind {
            'C' | 'Z' => Self::cyclic(n),
            'D' => Self::dihedral(n),
            'S' if n <= 7 => Self::symmetric(n),
            'A' if n <= 7 => Self::alternating(n),
            'S' | 'A' => Err(GroupError::TooLarge(MAX_ORDER)),
            _ => Err(unknown()),
        }
    }

    /// Permutation-list text: optional `name:` and `degree:` lines, then one
    /// generator per line in 1-based cycle notation, e.g. `(1 2 3)(4 5)` or
    /// `(1,2)`. `#` starts a comment.
    pub fn parse_text(text: &str) -> Result<Self, GroupError> {
        let mut name = String::from("custom");
        let mut degree: Option<usize> = None;
        let mut cycles_per_gen: Vec<(usize, Vec<Vec<usize>>)> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |msg: String| GroupError::Syntax { line: k + 1, msg };
            if let Some(rest) = line.strip_prefix("name:") {
                name = rest.trim().to_string();
                continue;
            }
            if let Some(rest) = line.strip_prefix("degree:") {
                degree = Some(rest.trim().parse().map_err(|_| syntax(format!("bad degree `{}`", rest.trim())))?);
                continue;
            }
            let mut cycles = Vec::new();
            let mut rest = line;
            while !rest.is_empty() {
                let open = rest.strip_prefix('(').ok_or_else(|| syntax(format!("expected `(` in `{line}`")))?;
                let close = open.find(')').ok_or_else(|| syntax("unclosed cycle".into()))?;
                let body = &open[..close];
                let pts: Result<Vec<usize>, _> = body
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<usize>())
                    .collect();
                let pts = pts.map_err(|_| syntax(format!("bad point in `({body})`")))?;
                if pts.contains(&0) {
                    return Err(syntax("points are numbered from 1".into()));
                }
                cycles.push(pts.into_iter().map(|p| p - 1).collect::<Vec<_>>());
                rest = open[close + 1..].trim_start();
            }
            cycles_per_gen.push((k + 1, cycles));
        }
        let max_point =
            cycles_per_gen.iter().flat_map(|(_, cs)| cs.iter().flatten()).map(|&p| p + 1).max().unwrap_or(1);
        let degree = degree.unwrap_or(max_point);
        if degree < max_point {
            return Err(GroupError::Syntax { line: 0, msg: format!("point {max_point} exceeds degree {degree}") });
        }
        let mut gens = Vec::new();
        for (line, cycles) in cycles_per_gen {
            gens.push(
                Perm::from_cycles(degree, &cycles)
                    .ok_or(GroupError::Syntax { line, msg: "cycles are not disjoint".into() })?,
            );
        }
        Self::generate(name, degree, gens)
    }
}
