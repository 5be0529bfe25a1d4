//! Ideals: cached Gröbner bases, dimension, elimination, radical
//! membership and containment.

use std::sync::OnceLock;

use serde::Serialize;

use crate::groebner::{groebner, GroebnerBasis};
use crate::monomial::MonomialOrder;
use crate::poly::{rat, Polynomial};
use crate::{AlgebraError, Budget};

/// A finitely generated ideal of ℚ[x_0, ..., x_{n-1}] together with the
/// monomial order used for its Gröbner basis.
///
/// The basis is computed on first request and cached; a failed (budget)
/// computation leaves the cache empty.
#[derive(Debug)]
pub struct Ideal {
    names: Vec<String>,
    generators: Vec<Polynomial>,
    order: MonomialOrder,
    basis: OnceLock<GroebnerBasis>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        Ideal { names: self.names.clone(), generators: self.generators.clone(), order: self.order.clone(), basis }
    }
}

impl PartialEq for Ideal {
    /// Same ring, order and generator list (not ideal equality; see
    /// [`Ideal::relation`]).
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.generators == other.generators && self.order == other.order
    }
}

/// Containment of two ideals up to radical, i.e. of their zero sets with
/// the arrow reversed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IdealRelation {
    Equal,
    /// `√I ⊊ √J` for the receiver `I` and argument `J`.
    ProperSubLeft,
    /// `√J ⊊ √I`.
    ProperSubRight,
    Incomparable,
}

/// Krull dimension together with the variables witnessing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    /// Krull dimension of ℚ[x]/I, or -1 for the unit ideal.
    pub dimension: i64,
    /// A maximal set of variables independent modulo the leading-term ideal.
    pub independent_variables: Vec<usize>,
    /// The dimension is only an upper bound for the real zero set: set
    /// unless the reduced basis is linear (or the ideal is the unit ideal).
    pub real_radical_caveat: bool,
}

impl Ideal {
    /// Ideal under grevlex.
    pub fn new(names: Vec<String>, generators: Vec<Polynomial>) -> Self {
        Self::with_order(names, generators, MonomialOrder::grevlex())
    }

    pub fn with_order(names: Vec<String>, generators: Vec<Polynomial>, order: MonomialOrder) -> Self {
        let n = names.len();
        for g in &generators {
            assert_eq!(g.nvars(), n, "generator lives in a ring of {} variables, expected {n}", g.nvars());
        }
        Ideal { names, generators, order, basis: OnceLock::new() }
    }

    /// Ideal with default names `x0, x1, ...`.
    pub fn from_generators(nvars: usize, generators: Vec<Polynomial>) -> Self {
        Self::new(crate::poly::default_names(nvars), generators)
    }

    pub fn zero(names: Vec<String>) -> Self {
        Self::new(names, Vec::new())
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn cached_basis(&self) -> Option<&GroebnerBasis> {
        self.basis.get()
    }

    /// `self + (extra)`.
    pub fn extend(&self, extra: impl IntoIterator<Item = Polynomial>) -> Ideal {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        Ideal::with_order(self.names.clone(), gens, self.order.clone())
    }

    pub fn groebner(&self, budget: &Budget) -> Result<&GroebnerBasis, AlgebraError> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let b = groebner(self.nvars(), &self.generators, &self.order, budget)?;
        let _ = self.basis.set(b);
        Ok(self.basis.get().expect("just set"))
    }

    pub fn contains(&self, f: &Polynomial, budget: &Budget) -> Result<bool, AlgebraError> {
        Ok(self.groebner(budget)?.contains(f))
    }

    pub fn is_unit(&self, budget: &Budget) -> Result<bool, AlgebraError> {
        Ok(self.groebner(budget)?.is_unit())
    }

    pub fn krull_dimension(&self, budget: &Budget) -> Result<i64, AlgebraError> {
        Ok(self.dimension_report(budget)?.dimension)
    }

    pub fn dimension_report(&self, budget: &Budget) -> Result<DimensionReport, AlgebraError> {
        let gb = self.groebner(budget)?;
        if gb.is_unit() {
            return Ok(DimensionReport {
                dimension: -1,
                independent_variables: Vec::new(),
                real_radical_caveat: false,
            });
        }
        let masks: Vec<u128> = gb.leading_monomials().iter().map(|m| m.support_mask()).collect();
        let set = max_independent_set(self.nvars(), &masks);
        let linear = gb.polynomials().iter().all(|p| p.total_degree().unwrap_or(0) <= 1);
        Ok(DimensionReport { dimension: set.len() as i64, independent_variables: set, real_radical_caveat: !linear })
    }

    /// `I ∩ ℚ[kept variables]`, returned as an ideal of the ring on the
    /// kept variables (original relative order). Its generators form a
    /// reduced Gröbner basis for grevlex on that ring.
    pub fn eliminate(&self, drop: &[usize], budget: &Budget) -> Result<Ideal, AlgebraError> {
        let n = self.nvars();
        let mut dropped = vec![false; n];
        for &v in drop {
            if v >= n {
                return Err(AlgebraError::InvalidVariable(v));
            }
            dropped[v] = true;
        }
        let kept: Vec<usize> = (0..n).filter(|&v| !dropped[v]).collect();
        let drop_list: Vec<usize> = (0..n).filter(|&v| dropped[v]).collect();
        let mut perm = drop_list.clone();
        perm.extend(kept.iter().copied());
        let order = MonomialOrder::block(drop_list.len()).with_permutation(perm);
        let gb = groebner(n, &self.generators, &order, budget)?;
        let mut drop_mask = 0u128;
        for &v in &drop_list {
            drop_mask |= 1 << v;
        }
        let mut map = vec![0; n];
        for (k, &v) in kept.iter().enumerate() {
            map[v] = k;
        }
        let names: Vec<String> = kept.iter().map(|&v| self.names[v].clone()).collect();
        let gens: Vec<Polynomial> = gb
            .polynomials()
            .iter()
            .filter(|p| p.support_mask() & drop_mask == 0)
            .map(|p| p.remap(&map, kept.len()))
            .collect();
        Ok(Ideal::new(names, gens))
    }

    /// Whether `f` vanishes on the complex zero set of the ideal, decided by
    /// `1 ∈ I + (1 - t f)` in a ring with one extra variable `t`.
    pub fn radical_member(&self, f: &Polynomial, budget: &Budget) -> Result<bool, AlgebraError> {
        let n = self.nvars();
        if f.nvars() != n {
            return Err(AlgebraError::RingMismatch { expected: n, found: f.nvars() });
        }
        if f.is_zero() {
            return Ok(true);
        }
        let t = Polynomial::var(n + 1, n);
        let mut gens: Vec<Polynomial> = self.generators.iter().map(|g| g.extend_vars(1)).collect();
        gens.push(&Polynomial::one(n + 1) - &(&t * &f.extend_vars(1)));
        let gb = groebner(n + 1, &gens, &MonomialOrder::grevlex(), budget)?;
        Ok(gb.is_unit())
    }

    /// Compares radicals through radical membership of generators in both
    /// directions.
    pub fn relation(&self, other: &Ideal, budget: &Budget) -> Result<IdealRelation, AlgebraError> {
        if other.nvars() != self.nvars() {
            return Err(AlgebraError::RingMismatch { expected: self.nvars(), found: other.nvars() });
        }
        let left_in_right = self.radical_contained_in(other, budget)?;
        let right_in_left = other.radical_contained_in(self, budget)?;
        Ok(match (left_in_right, right_in_left) {
            (true, true) => IdealRelation::Equal,
            (true, false) => IdealRelation::ProperSubLeft,
            (false, true) => IdealRelation::ProperSubRight,
            (false, false) => IdealRelation::Incomparable,
        })
    }

    /// `I ⊆ √J` for receiver `I` and argument `J`.
    pub fn radical_contained_in(&self, other: &Ideal, budget: &Budget) -> Result<bool, AlgebraError> {
        for g in &self.generators {
            if !other.radical_member(g, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact ideal containment `I ⊆ J`.
    pub fn contained_in(&self, other: &Ideal, budget: &Budget) -> Result<bool, AlgebraError> {
        let gb = other.groebner(budget)?;
        Ok(self.generators.iter().all(|g| gb.contains(g)))
    }

    /// Same ideal, decided by comparing reduced Gröbner bases under the
    /// receiver's order.
    pub fn same_ideal(&self, other: &Ideal, budget: &Budget) -> Result<bool, AlgebraError> {
        let a = self.groebner(budget)?;
        let b = groebner(other.nvars(), other.generators(), &self.order, budget)?;
        Ok(a.polynomials() == b.polynomials())
    }

    /// Text form: a `vars:` header and one generator per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("vars: {}\n", self.names.join(" "));
        for g in &self.generators {
            out.push_str(&g.to_string_with(&self.names, &self.order));
            out.push('\n');
        }
        out
    }

    /// Text form of the reduced Gröbner basis (same format as
    /// [`Ideal::to_text`]).
    pub fn basis_text(&self, budget: &Budget) -> Result<String, AlgebraError> {
        let gb = self.groebner(budget)?;
        let mut out = format!("vars: {}\n", self.names.join(" "));
        for g in gb.polynomials() {
            out.push_str(&g.to_string_with(&self.names, &self.order));
            out.push('\n');
        }
        Ok(out)
    }
}

/// Largest set of variables `S` such that no leading monomial is supported
/// inside `S`. Branch and bound over include/exclude decisions, variables
/// in index order, so the result is the lexicographically first maximum.
pub(crate) fn max_independent_set(nvars: usize, lead_masks: &[u128]) -> Vec<usize> {
    fn independent(set: u128, masks: &[u128]) -> bool {
        masks.iter().all(|&m| m & !set != 0)
    }
    fn search(i: usize, n: usize, set: u128, size: usize, masks: &[u128], best: &mut (usize, u128)) {
        if size + (n - i) <= best.0 {
            return;
        }
        if i == n {
            if size > best.0 {
                *best = (size, set);
            }
            return;
        }
        let with = set | 1u128 << i;
        if independent(with, masks) {
            search(i + 1, n, with, size + 1, masks, best);
        }
        search(i + 1, n, set, size, masks, best);
    }
    // a constant leading monomial (mask 0) means the unit ideal: no set is independent
    if lead_masks.contains(&0) {
        return Vec::new();
    }
    let mut best = (0usize, 0u128);
    search(0, nvars, 0, 0, lead_masks, &mut best);
    (0..nvars).filter(|&v| best.1 >> v & 1 == 1).collect()
}

/// Convenience constructor used across tests and fixtures: `x*y - 1` style
/// polynomials from integer coefficient/exponent lists.
pub fn poly_from_ints(nvars: usize, terms: &[(i64, &[u32])]) -> Polynomial {
    Polynomial::from_terms(nvars, terms.iter().map(|(c, e)| (crate::Monomial::from_exponents(e.to_vec()), rat(*c))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ideal_text;

    fn ideal(text: &str) -> Ideal {
        parse_ideal_text(text).unwrap()
    }

    #[test]
    fn zero_ideal_dimension_is_ring_dimension() {
        for n in 1..=8 {
            let i = Ideal::zero(crate::poly::default_names(n));
            assert_eq!(i.krull_dimension(&Budget::default()).unwrap(), n as i64);
        }
    }

    #[test]
    fn hyperbola_dimension_one() {
        let i = ideal("vars: x y\nx*y - 1\n");
        let r = i.dimension_report(&Budget::default()).unwrap();
        assert_eq!(r.dimension, 1);
        assert!(r.real_radical_caveat);
    }

    #[test]
    fn sum_of_squares_raises_caveat() {
        let i = ideal("vars: x y\nx^2 + y^2\n");
        let r = i.dimension_report(&Budget::default()).unwrap();
        assert_eq!(r.dimension, 1);
        assert!(r.real_radical_caveat);
    }

    #[test]
    fn unit_ideal_dimension_minus_one() {
        let i = ideal("vars: x y\nx*y - 1\nx\n");
        assert_eq!(i.krull_dimension(&Budget::default()).unwrap(), -1);
    }

    #[test]
    fn linear_ideal_has_no_caveat() {
        let i = ideal("vars: x y z\nx - y\nz + 1\n");
        let r = i.dimension_report(&Budget::default()).unwrap();
        assert_eq!(r.dimension, 1);
        assert!(!r.real_radical_caveat);
    }

    #[test]
    fn eliminate_hyperbola_gives_zero_ideal() {
        let i = ideal("vars: x y\nx*y - 1\n");
        let e = i.eliminate(&[1], &Budget::default()).unwrap();
        assert_eq!(e.names(), &["x".to_string()]);
        assert!(e.generators().is_empty());
    }

    #[test]
    fn eliminate_nothing_keeps_basis() {
        let i = ideal("vars: x y\nx^2 + y^2 - 1\nx - y\n");
        let e = i.eliminate(&[], &Budget::default()).unwrap();
        assert_eq!(e.generators(), i.groebner(&Budget::default()).unwrap().polynomials());
    }

    #[test]
    fn radical_membership() {
        let b = Budget::default();
        assert!(ideal("vars: x\nx^2\n").radical_member(&Polynomial::var(1, 0), &b).unwrap());
        assert!(!ideal("vars: x\nx\n").radical_member(&Polynomial::one(1), &b).unwrap());
        assert!(!ideal("vars: x y\nx*y - 1\n").radical_member(&Polynomial::var(2, 1), &b).unwrap());
    }

    #[test]
    fn relations() {
        let b = Budget::default();
        assert_eq!(ideal("vars: x\nx\n").relation(&ideal("vars: x\nx^2\n"), &b).unwrap(), IdealRelation::Equal);
        assert_eq!(
            ideal("vars: x y\nx*y - 1\n").relation(&ideal("vars: x y\nx*y - 1\nx - 1\n"), &b).unwrap(),
            IdealRelation::ProperSubLeft
        );
        assert_eq!(
            ideal("vars: x y\nx\n").relation(&ideal("vars: x y\ny\n"), &b).unwrap(),
            IdealRelation::Incomparable
        );
    }

    #[test]
    fn independent_set_search() {
        // LT ideal (x^2) in k[x,y]: {y} independent, {x,y} not
        assert_eq!(max_independent_set(2, &[0b01]), vec![1]);
        // LT ideal (x*y): {x} and {y} both maximal, lexicographically first wins
        assert_eq!(max_independent_set(2, &[0b11]), vec![0]);
        assert_eq!(max_independent_set(3, &[]), vec![0, 1, 2]);
        assert!(max_independent_set(2, &[0]).is_empty());
    }

    #[test]
    fn text_round_trip() {
        let i = ideal("vars: x y\nx^2 + 3/2*y - 1\n");
        let again = ideal(&i.to_text());
        assert_eq!(i, again);
    }
}
