//! Buchberger's algorithm with the Gebauer–Möller pair criteria.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::{AlgebraError, Budget, MAX_VARIABLES};

/// Pair selection strategy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Selection {
    /// Smallest lcm of leading monomials first.
    #[default]
    Normal,
    /// Smallest sugar degree first, ties by the normal strategy.
    Sugar,
}

/// Polynomial with terms sorted in descending order for a fixed, already
/// unpermuted monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct OrdPoly {
    pub(crate) terms: Vec<(Monomial, BigRational)>,
}

impl OrdPoly {
    pub(crate) fn from_poly(p: &Polynomial, order: &MonomialOrder) -> OrdPoly {
        let mut terms: Vec<(Monomial, BigRational)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        OrdPoly { terms }
    }

    pub(crate) fn to_poly(&self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(nvars, self.terms.iter().cloned())
    }

    fn lead(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.recip();
                for t in &mut self.terms {
                    t.1 *= &inv;
                }
            }
        }
    }
}

/// `a - c * q * b`, where `a` and `b` are descending and `q` a monomial.
fn sub_scaled(
    a: &[(Monomial, BigRational)],
    b: &[(Monomial, BigRational)],
    q: &Monomial,
    c: &BigRational,
    order: &MonomialOrder,
) -> Vec<(Monomial, BigRational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let mut pending: Option<(Monomial, BigRational)> = None;
    while i < a.len() || j < b.len() {
        if pending.is_none() && j < b.len() {
            pending = Some((b[j].0.mul(q), -(&b[j].1 * c)));
        }
        match (a.get(i), &pending) {
            (Some(ta), Some(tb)) => match order.cmp(&ta.0, &tb.0) {
                Ordering::Greater => {
                    out.push(ta.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pending.take().unwrap());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &ta.1 + &tb.1;
                    if !s.is_zero() {
                        out.push((ta.0.clone(), s));
                    }
                    pending = None;
                    i += 1;
                    j += 1;
                }
            },
            (Some(ta), None) => {
                out.push(ta.clone());
                i += 1;
            }
            (None, Some(_)) => {
                out.push(pending.take().unwrap());
                j += 1;
            }
            (None, None) => break,
        }
    }
    out
}

struct Reducer<'a> {
    polys: Vec<&'a OrdPoly>,
    masks: Vec<u128>,
    degrees: Vec<u32>,
}

impl<'a> Reducer<'a> {
    fn new(polys: Vec<&'a OrdPoly>) -> Self {
        let masks = polys.iter().map(|p| p.lead().support_mask()).collect();
        let degrees = polys.iter().map(|p| p.lead().degree()).collect();
        Reducer { polys, masks, degrees }
    }

    fn find(&self, m: &Monomial) -> Option<&'a OrdPoly> {
        let mask = m.support_mask();
        let deg = m.degree();
        for k in 0..self.polys.len() {
            if self.degrees[k] <= deg && self.masks[k] & !mask == 0 && self.polys[k].lead().divides(m) {
                return Some(self.polys[k]);
            }
        }
        None
    }
}

/// Full normal form of `f` modulo monic polynomials in `reducer`.
fn normal_form_inner(
    f: OrdPoly,
    reducer: &Reducer<'_>,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<OrdPoly, AlgebraError> {
    let mut p = f.terms;
    let mut start = 0;
    let mut steps = 0usize;
    while start < p.len() {
        let found = reducer.find(&p[start].0);
        match found {
            Some(g) => {
                let q = g.lead().quotient_of(&p[start].0).expect("divisor checked");
                let c = p[start].1.clone();
                let tail = sub_scaled(&p[start + 1..], &g.terms[1..], &q, &c, order);
                p.truncate(start);
                p.extend(tail);
                if p.len() > budget.max_terms {
                    return Err(AlgebraError::TermBudgetExceeded { limit: budget.max_terms, reached: p.len() });
                }
                steps += 1;
                if steps.is_multiple_of(256) {
                    budget.check_time()?;
                }
            }
            None => start += 1,
        }
    }
    Ok(OrdPoly { terms: p })
}

fn s_polynomial(f: &OrdPoly, g: &OrdPoly, order: &MonomialOrder) -> OrdPoly {
    let lcm = f.lead().lcm(g.lead());
    let qf = f.lead().quotient_of(&lcm).unwrap();
    let qg = g.lead().quotient_of(&lcm).unwrap();
    // both monic: qf*f - qg*g, leading terms cancel
    let left: Vec<(Monomial, BigRational)> = f.terms[1..].iter().map(|(m, c)| (m.mul(&qf), c.clone())).collect();
    OrdPoly { terms: sub_scaled(&left, &g.terms[1..], &qg, &BigRational::one(), order) }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn check_size(p: &OrdPoly, budget: &Budget) -> Result<(), AlgebraError> {
    let d = p.degree();
    if d > budget.max_degree {
        return Err(AlgebraError::DegreeBudgetExceeded { limit: budget.max_degree, reached: d });
    }
    if p.terms.len() > budget.max_terms {
        return Err(AlgebraError::TermBudgetExceeded { limit: budget.max_terms, reached: p.terms.len() });
    }
    Ok(())
}

struct Engine<'o> {
    order: &'o MonomialOrder,
    polys: Vec<OrdPoly>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    stats: GroebnerStats,
}

impl<'o> Engine<'o> {
    fn active_reducer(&self) -> Reducer<'_> {
        Reducer::new(self.polys.iter().zip(&self.active).filter(|(_, a)| **a).map(|(p, _)| p).collect())
    }

    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let li = self.polys[i].lead();
        let lj = self.polys[j].lead();
        let lcm = li.lcm(lj);
        let d = lcm.degree();
        let sugar = (self.sugar[i] + d - li.degree()).max(self.sugar[j] + d - lj.degree());
        Pair { i, j, lcm, sugar }
    }

    /// Gebauer–Möller update with the new element at index `h`.
    fn update(&mut self, h: usize) {
        let lh = self.polys[h].lead().clone();
        let candidates: Vec<Pair> = (0..h).filter(|&g| self.active[g]).map(|g| self.make_pair(g, h)).collect();

        // chain criterion among the new pairs
        let mut kept: Vec<Pair> = Vec::new();
        for (k, p) in candidates.iter().enumerate() {
            let coprime = lh.is_coprime(self.polys[p.i].lead());
            let dominated = candidates[k + 1..].iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p.clone());
            }
        }
        let fresh: Vec<Pair> = kept.into_iter().filter(|p| !lh.is_coprime(self.polys[p.i].lead())).collect();

        // prune old pairs made redundant by h
        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !lh.divides(&p.lcm) {
                return true;
            }
            let l1 = polys[p.i].lead().lcm(&lh);
            let l2 = polys[p.j].lead().lcm(&lh);
            l1 == p.lcm || l2 == p.lcm
        });
        self.pairs.extend(fresh);

        for g in 0..h {
            if self.active[g] && lh.divides(self.polys[g].lead()) {
                self.active[g] = false;
            }
        }
        self.active[h] = true;
    }

    fn select(&mut self, strategy: Selection) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let key = |a: &Pair, b: &Pair| -> Ordering {
            let by_lcm = order.cmp(&a.lcm, &b.lcm).then((a.i, a.j).cmp(&(b.i, b.j)));
            match strategy {
                Selection::Normal => by_lcm,
                Selection::Sugar => a.sugar.cmp(&b.sugar).then(by_lcm),
            }
        };
        let best = (0..self.pairs.len()).min_by(|&x, &y| key(&self.pairs[x], &self.pairs[y]))?;
        Some(self.pairs.swap_remove(best))
    }

    fn insert(&mut self, mut p: OrdPoly, sugar: u32) -> usize {
        p.make_monic();
        self.polys.push(p);
        self.sugar.push(sugar);
        self.active.push(false);
        let h = self.polys.len() - 1;
        self.update(h);
        h
    }
}

/// Counters from one Buchberger run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroebnerStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub max_degree: u32,
}

fn buchberger(
    gens: Vec<OrdPoly>,
    order: &MonomialOrder,
    budget: &Budget,
    strategy: Selection,
) -> Result<(Vec<OrdPoly>, GroebnerStats), AlgebraError> {
    let mut eng = Engine {
        order,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        stats: GroebnerStats::default(),
    };
    for g in gens {
        check_size(&g, budget)?;
        let sugar = g.degree();
        let r = {
            let red = eng.active_reducer();
            normal_form_inner(g, &red, order, budget)?
        };
        if r.is_zero() {
            continue;
        }
        if r.lead().is_one() {
            return Ok((vec![r_unit(r)], eng.stats));
        }
        eng.stats.max_degree = eng.stats.max_degree.max(r.degree());
        eng.insert(r, sugar);
    }
    while let Some(pair) = eng.select(strategy) {
        budget.check_time()?;
        let s = s_polynomial(&eng.polys[pair.i], &eng.polys[pair.j], order);
        check_size(&s, budget)?;
        let r = {
            let red = eng.active_reducer();
            normal_form_inner(s, &red, order, budget)?
        };
        eng.stats.pairs_reduced += 1;
        if r.is_zero() {
            eng.stats.zero_reductions += 1;
            continue;
        }
        check_size(&r, budget)?;
        if r.lead().is_one() {
            return Ok((vec![r_unit(r)], eng.stats));
        }
        eng.stats.max_degree = eng.stats.max_degree.max(r.degree());
        eng.insert(r, pair.sugar);
    }

    // The active set is a minimal basis; interreduce tails.
    let minimal: Vec<OrdPoly> =
        eng.polys.iter().zip(&eng.active).filter(|(_, a)| **a).map(|(p, _)| p.clone()).collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&OrdPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p).collect();
        let red = Reducer::new(others);
        let head = minimal[k].terms[0].clone();
        let tail = normal_form_inner(OrdPoly { terms: minimal[k].terms[1..].to_vec() }, &red, order, budget)?;
        let mut terms = vec![head];
        terms.extend(tail.terms);
        reduced.push(OrdPoly { terms });
    }
    reduced.sort_by(|a, b| order.cmp(b.lead(), a.lead()));
    Ok((reduced, eng.stats))
}

fn r_unit(r: OrdPoly) -> OrdPoly {
    let m = r.lead().clone();
    OrdPoly { terms: vec![(m, BigRational::one())] }
}

/// A reduced Gröbner basis, monic and sorted by leading monomial
/// (largest first).
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    /// Permutation taking original variable `v` to internal position.
    to_inner: Vec<usize>,
    inner: Vec<OrdPoly>,
    polys: Vec<Polynomial>,
    stats: GroebnerStats,
}

impl GroebnerBasis {
    pub fn polynomials(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn stats(&self) -> &GroebnerStats {
        &self.stats
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant() && !self.polys[0].is_zero()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.polys.is_empty()
    }

    /// Leading monomials in original variable coordinates.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p.leading_term(&self.order).expect("basis elements are nonzero").0.clone()).collect()
    }

    fn to_inner_poly(&self, f: &Polynomial) -> OrdPoly {
        let inner_order = self.order.unpermuted();
        OrdPoly::from_poly(&f.remap(&self.to_inner, self.nvars), &inner_order)
    }

    fn outer_poly(&self, f: &OrdPoly) -> Polynomial {
        let mut back = vec![0; self.nvars];
        for (v, &k) in self.to_inner.iter().enumerate() {
            back[k] = v;
        }
        f.to_poly(self.nvars).remap(&back, self.nvars)
    }

    /// Normal form of `f` modulo the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        assert_eq!(f.nvars(), self.nvars, "ring mismatch");
        let inner_order = self.order.unpermuted();
        let red = Reducer::new(self.inner.iter().collect());
        let unlimited = Budget { max_terms: usize::MAX, deadline: None, ..Budget::default() };
        let r = normal_form_inner(self.to_inner_poly(f), &red, &inner_order, &unlimited).expect("unlimited budget");
        self.outer_poly(&r)
    }

    /// Ideal membership.
    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Re-checks Buchberger's criterion: every S-polynomial of the basis
    /// reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        let inner_order = self.order.unpermuted();
        let red = Reducer::new(self.inner.iter().collect());
        let unlimited = Budget { max_terms: usize::MAX, deadline: None, ..Budget::default() };
        for i in 0..self.inner.len() {
            for j in i + 1..self.inner.len() {
                let s = s_polynomial(&self.inner[i], &self.inner[j], &inner_order);
                match normal_form_inner(s, &red, &inner_order, &unlimited) {
                    Ok(r) if r.is_zero() => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`.
pub fn groebner(
    nvars: usize,
    gens: &[Polynomial],
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis, AlgebraError> {
    groebner_with(nvars, gens, order, budget, Selection::default())
}

pub fn groebner_with(
    nvars: usize,
    gens: &[Polynomial],
    order: &MonomialOrder,
    budget: &Budget,
    strategy: Selection,
) -> Result<GroebnerBasis, AlgebraError> {
    if nvars > MAX_VARIABLES {
        return Err(AlgebraError::TooManyVariables(nvars));
    }
    for g in gens {
        if g.nvars() != nvars {
            return Err(AlgebraError::RingMismatch { expected: nvars, found: g.nvars() });
        }
    }
    let to_inner: Vec<usize> = match &order.permutation {
        None => (0..nvars).collect(),
        Some(p) => {
            let mut inv = vec![0; nvars];
            for (k, &v) in p.iter().enumerate() {
                inv[v] = k;
            }
            inv
        }
    };
    let inner_order = order.unpermuted();
    let inner_gens: Vec<OrdPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| OrdPoly::from_poly(&g.remap(&to_inner, nvars), &inner_order))
        .collect();
    let (inner, stats) = buchberger(inner_gens, &inner_order, budget, strategy)?;
    let mut basis = GroebnerBasis { nvars, order: order.clone(), to_inner, inner, polys: Vec::new(), stats };
    basis.polys = basis.inner.iter().map(|p| basis.outer_poly(p)).collect();
    Ok(basis)
}
