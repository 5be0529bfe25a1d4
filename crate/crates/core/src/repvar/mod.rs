//! Representation varieties of finitely presented groups in `SO(N)`
//! (matrix entries) and `SU(2)` (unit quaternions).
//!
//! A relator `w = u·s` with `|u| = ⌈|w|/2⌉` contributes the entries of
//! `u - s^-1`, inverses being transposes or quaternion conjugates. On the
//! group this cuts out the same set as `w - 1` at half the degree.

mod dimension;

use std::fmt;
use std::str::FromStr;

use knotrep_algebra::{rat, AlgebraError, BigRational, Budget, Ideal, Polynomial};
use serde::Serialize;

use crate::presentation::{Presentation, Word};

pub use dimension::{substitute_linear, variety_dimension, DimInvariant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Target {
    /// `SO(N)` for `2 ≤ N ≤ 4`.
    So(usize),
    /// `SU(2)` as unit quaternions; a different variety from `SO(3)`.
    Su2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Gauge {
    None,
    /// Pin the first generator to a maximal torus: `(a, b, 0, 0)` for
    /// `SU(2)`, a rotation about the last axis for `SO(3)`, a pair of plane
    /// rotations for `SO(4)`. Nothing is pinned for the abelian `SO(2)`.
    FixFirstGenerator,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("SO({0}) is not supported (N must be 2, 3 or 4)")]
    UnsupportedN(usize),
    #[error("unknown model `{0}` (expected su2, so2, so3 or so4)")]
    UnknownModel(String),
    #[error("unknown gauge `{0}` (expected none or fix1)")]
    UnknownGauge(String),
    #[error("relator {relator} does not vanish when all generators are identified")]
    RelatorSurvived { relator: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl Target {
    pub fn so(n: usize) -> Result<Target, RepError> {
        if (2..=4).contains(&n) {
            Ok(Target::So(n))
        } else {
            Err(RepError::UnsupportedN(n))
        }
    }

    /// Variables per generator.
    pub fn block_size(self) -> usize {
        match self {
            Target::So(n) => n * n,
            Target::Su2 => 4,
        }
    }

    /// Dimension of the target group.
    pub fn group_dimension(self) -> usize {
        match self {
            Target::So(n) => n * (n - 1) / 2,
            Target::Su2 => 3,
        }
    }

    /// Matrix size `N` for `SO(N)`.
    pub fn n(self) -> Option<usize> {
        match self {
            Target::So(n) => Some(n),
            Target::Su2 => None,
        }
    }

    /// Short name as accepted by [`FromStr`]: `su2`, `so3`, ...
    pub fn key(self) -> String {
        match self {
            Target::So(n) => format!("so{n}"),
            Target::Su2 => "su2".into(),
        }
    }

    fn var_names(self, g: usize) -> Vec<String> {
        match self {
            Target::So(n) => (0..n).flat_map(|i| (0..n).map(move |j| format!("m{g}_{i}{j}"))).collect(),
            Target::Su2 => ["a", "b", "c", "d"].iter().map(|c| format!("{c}{g}")).collect(),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::So(n) => write!(f, "SO({n})"),
            Target::Su2 => f.write_str("SU(2)"),
        }
    }
}

impl FromStr for Target {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase().replace(['(', ')'], "");
        if t == "su2" {
            return Ok(Target::Su2);
        }
        match t.strip_prefix("so").and_then(|n| n.parse::<usize>().ok()) {
            Some(n) => Target::so(n),
            None => Err(RepError::UnknownModel(s.to_string())),
        }
    }
}

impl Gauge {
    pub fn key(self) -> &'static str {
        match self {
            Gauge::None => "none",
            Gauge::FixFirstGenerator => "fix1",
        }
    }
}

impl FromStr for Gauge {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "none" => Ok(Gauge::None),
            "fix1" => Ok(Gauge::FixFirstGenerator),
            other => Err(RepError::UnknownGauge(other.to_string())),
        }
    }
}

/// Variables of one generator: indices `first..first + names.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariableBlock {
    pub generator: usize,
    pub first: usize,
    pub names: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct RepVarietyModel {
    presentation: Presentation,
    target: Target,
    gauge: Gauge,
    ideal: Ideal,
    group_equations: usize,
    relator_equations: usize,
    gauge_equations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelHeader {
    pub schema: u32,
    pub target: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub gauge: &'static str,
    pub generators: usize,
    pub variables: usize,
    pub group_equations: usize,
    pub relator_equations: usize,
    pub gauge_equations: usize,
    pub variable_scheme: Vec<VariableBlock>,
    pub presentation: String,
}

/// A group element with polynomial entries: row-major matrix or quaternion
/// `(a, b, c, d) = a + bi + cj + dk`.
type Elem = Vec<Polynomial>;

fn identity(t: Target, nvars: usize) -> Elem {
    match t {
        Target::So(n) => {
            (0..n * n).map(|k| if k / n == k % n { Polynomial::one(nvars) } else { Polynomial::zero(nvars) }).collect()
        }
        Target::Su2 => {
            let mut e = vec![Polynomial::zero(nvars); 4];
            e[0] = Polynomial::one(nvars);
            e
        }
    }
}

fn block(t: Target, g: usize, nvars: usize) -> Elem {
    let s = t.block_size();
    (0..s).map(|k| Polynomial::var(nvars, g * s + k)).collect()
}

fn mul(t: Target, x: &Elem, y: &Elem) -> Elem {
    match t {
        Target::So(n) => {
            let nvars = x[0].nvars();
            let mut out = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let mut acc = Polynomial::zero(nvars);
                    for k in 0..n {
                        acc = &acc + &(&x[i * n + k] * &y[k * n + j]);
                    }
                    out.push(acc);
                }
            }
            out
        }
        Target::Su2 => {
            let (a1, b1, c1, d1) = (&x[0], &x[1], &x[2], &x[3]);
            let (a2, b2, c2, d2) = (&y[0], &y[1], &y[2], &y[3]);
            vec![
                &(&(&(a1 * a2) - &(b1 * b2)) - &(c1 * c2)) - &(d1 * d2),
                &(&(&(a1 * b2) + &(b1 * a2)) + &(c1 * d2)) - &(d1 * c2),
                &(&(&(a1 * c2) - &(b1 * d2)) + &(c1 * a2)) + &(d1 * b2),
                &(&(&(a1 * d2) + &(b1 * c2)) - &(c1 * b2)) + &(d1 * a2),
            ]
        }
    }
}

fn inverse(t: Target, x: &Elem) -> Elem {
    match t {
        Target::So(n) => (0..n * n).map(|k| x[(k % n) * n + k / n].clone()).collect(),
        Target::Su2 => vec![x[0].clone(), -&x[1], -&x[2], -&x[3]],
    }
}

fn eval(t: Target, w: &Word, nvars: usize) -> Elem {
    let mut acc = identity(t, nvars);
    for l in w.letters() {
        let b = block(t, l.gen, nvars);
        let b = if l.inverse { inverse(t, &b) } else { b };
        acc = mul(t, &acc, &b);
    }
    acc
}

fn determinant(m: &[Polynomial], n: usize) -> Polynomial {
    let nvars = m[0].nvars();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut det = Polynomial::zero(nvars);
    // Heap's algorithm; the sign flips with every swap
    fn heap(k: usize, perm: &mut Vec<usize>, sign: &mut i64, m: &[Polynomial], n: usize, det: &mut Polynomial) {
        if k == 1 {
            let mut term = Polynomial::constant(m[0].nvars(), rat(*sign));
            for (i, &j) in perm.iter().enumerate() {
                term = &term * &m[i * n + j];
            }
            *det = &*det + &term;
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, sign, m, n, det);
            if i + 1 < k {
                let j = if k.is_multiple_of(2) { i } else { 0 };
                perm.swap(j, k - 1);
                *sign = -*sign;
            }
        }
    }
    let mut sign = 1;
    heap(n, &mut perm, &mut sign, m, n, &mut det);
    det
}

/// Equations saying generator `g`'s block lies in the target group.
fn group_equations(t: Target, g: usize, nvars: usize) -> Vec<Polynomial> {
    let x = block(t, g, nvars);
    match t {
        Target::So(n) => {
            let mut eqs = Vec::new();
            for i in 0..n {
                for j in i..n {
                    let mut acc = Polynomial::zero(nvars);
                    for k in 0..n {
                        acc = &acc + &(&x[k * n + i] * &x[k * n + j]);
                    }
                    if i == j {
                        acc = &acc - &Polynomial::one(nvars);
                    }
                    eqs.push(acc);
                }
            }
            eqs.push(&determinant(&x, n) - &Polynomial::one(nvars));
            eqs
        }
        Target::Su2 => {
            let norm = x.iter().fold(Polynomial::zero(nvars), |acc, v| &acc + &(v * v));
            vec![&norm - &Polynomial::one(nvars)]
        }
    }
}

fn relator_equations(t: Target, r: &Word, nvars: usize) -> Vec<Polynomial> {
    if r.is_empty() {
        return Vec::new();
    }
    let letters = r.letters();
    let half = letters.len().div_ceil(2);
    let u = Word::new(letters[..half].iter().copied());
    let s = Word::new(letters[half..].iter().copied());
    let lhs = eval(t, &u, nvars);
    let rhs = eval(t, &s.inverse(), nvars);
    lhs.iter().zip(&rhs).map(|(a, b)| a - b).filter(|p| !p.is_zero()).collect()
}

fn gauge_equations(t: Target, nvars: usize) -> Vec<Polynomial> {
    let v = |k: usize| Polynomial::var(nvars, k);
    let one = Polynomial::one(nvars);
    match t {
        Target::Su2 => vec![v(2), v(3)],
        Target::So(2) => Vec::new(),
        Target::So(3) => {
            let m = |i: usize, j: usize| v(i * 3 + j);
            vec![m(0, 2), m(1, 2), m(2, 0), m(2, 1), &m(2, 2) - &one, &m(0, 0) - &m(1, 1), &m(0, 1) + &m(1, 0)]
        }
        Target::So(n) => {
            let m = |i: usize, j: usize| v(i * n + j);
            let mut eqs = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i / 2 != j / 2 {
                        eqs.push(m(i, j));
                    }
                }
            }
            for b in (0..n).step_by(2) {
                eqs.push(&m(b, b) - &m(b + 1, b + 1));
                eqs.push(&m(b, b + 1) + &m(b + 1, b));
            }
            eqs
        }
    }
}

/// Defining ideal of the target group in one generator's variables.
pub fn group_ideal(t: Target) -> Ideal {
    let nvars = t.block_size();
    Ideal::new(t.var_names(0), group_equations(t, 0, nvars))
}

/// Representation variety of `p` in `target`: group equations for every
/// generator, then relator equations, then gauge equations.
pub fn build_rep_ideal(p: &Presentation, target: Target, gauge: Gauge) -> RepVarietyModel {
    let k = p.generator_count();
    let nvars = k * target.block_size();
    let names: Vec<String> = (0..k).flat_map(|g| target.var_names(g)).collect();
    let mut gens = Vec::new();
    for g in 0..k {
        gens.extend(group_equations(target, g, nvars));
    }
    let group_count = gens.len();
    for r in p.relators() {
        gens.extend(relator_equations(target, r, nvars));
    }
    let relator_count = gens.len() - group_count;
    if gauge == Gauge::FixFirstGenerator {
        gens.extend(gauge_equations(target, nvars));
    }
    let gauge_count = gens.len() - group_count - relator_count;
    RepVarietyModel {
        presentation: p.clone(),
        target,
        gauge,
        ideal: Ideal::new(names, gens),
        group_equations: group_count,
        relator_equations: relator_count,
        gauge_equations: gauge_count,
    }
}

/// Ideal obtained by setting every generator's block equal to the first:
/// the representations with a single image. For a presentation whose
/// relators all have exponent sum zero (every knot group presentation) this
/// is exactly the group ideal.
pub fn abelian_slice(m: &RepVarietyModel, budget: &Budget) -> Result<Ideal, RepError> {
    let t = m.target;
    let s = t.block_size();
    let group = group_ideal(t);
    let images: Vec<Polynomial> = (0..m.ideal.nvars()).map(|i| Polynomial::var(s, i % s)).collect();
    let mut extra = Vec::new();
    for (idx, r) in m.presentation.relators().iter().enumerate() {
        for eq in relator_equations(t, r, m.ideal.nvars()) {
            let q = eq.substitute(&images);
            if q.is_zero() {
                continue;
            }
            if !group.contains(&q, budget)? {
                return Err(RepError::RelatorSurvived { relator: idx });
            }
            extra.push(q);
        }
    }
    if m.gauge == Gauge::FixFirstGenerator {
        extra.extend(gauge_equations(t, m.ideal.nvars()).iter().map(|e| e.substitute(&images)));
        return Ok(group.extend(extra));
    }
    // surviving relator equations lie in the group ideal, so nothing is added
    Ok(group)
}

impl RepVarietyModel {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn gauge(&self) -> Gauge {
        self.gauge
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn nvars(&self) -> usize {
        self.ideal.nvars()
    }

    pub fn group_equation_count(&self) -> usize {
        self.group_equations
    }

    pub fn relator_equation_count(&self) -> usize {
        self.relator_equations
    }

    pub fn gauge_equation_count(&self) -> usize {
        self.gauge_equations
    }

    pub fn variable_scheme(&self) -> Vec<VariableBlock> {
        let s = self.target.block_size();
        (0..self.presentation.generator_count())
            .map(|g| VariableBlock { generator: g, first: g * s, names: self.target.var_names(g) })
            .collect()
    }

    /// Coordinates of the representation sending generator `g` to
    /// `images[g]` (row-major matrix or quaternion).
    pub fn point(&self, images: &[Vec<BigRational>]) -> Vec<BigRational> {
        assert_eq!(images.len(), self.presentation.generator_count());
        images
            .iter()
            .flat_map(|im| {
                assert_eq!(im.len(), self.target.block_size());
                im.iter().cloned()
            })
            .collect()
    }

    /// Every defining equation vanishes at `point`.
    pub fn contains_point(&self, point: &[BigRational]) -> bool {
        self.ideal.generators().iter().all(|g| num_traits::Zero::is_zero(&g.eval(point)))
    }

    pub fn header(&self) -> ModelHeader {
        ModelHeader {
            schema: 1,
            target: self.target.to_string(),
            n: self.target.n(),
            gauge: self.gauge.key(),
            generators: self.presentation.generator_count(),
            variables: self.nvars(),
            group_equations: self.group_equations,
            relator_equations: self.relator_equations,
            gauge_equations: self.gauge_equations,
            variable_scheme: self.variable_scheme(),
            presentation: self.presentation.to_text(),
        }
    }

    /// One JSON header line followed by the ideal in text form.
    pub fn dump(&self) -> String {
        let header = serde_json::to_string(&self.header()).expect("header serializes");
        format!("{header}\n{}", self.ideal.to_text())
    }
}
