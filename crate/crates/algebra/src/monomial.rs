//! Exponent vectors and monomial orders.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Exponent vector over a fixed ambient ring.
///
/// The derived `Ord` is the pure lexicographic order on exponent vectors
/// (variable 0 largest); it is what keeps [`crate::Polynomial`] storage
/// canonical. Term orders used by Gröbner computations go through
/// [`MonomialOrder`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    /// The monomial `x_var`.
    pub fn variable(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit set of the variables that occur. Rings wider than 128 variables
    /// are rejected before a mask is ever requested.
    pub fn support_mask(&self) -> u128 {
        let mut m = 0u128;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                m |= 1u128 << i;
            }
        }
        m
    }

    /// Reindex into a ring with `nvars` variables: exponent of variable `i`
    /// moves to position `map[i]`.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Monomial {
        let mut e = vec![0; nvars];
        for (i, &x) in self.0.iter().enumerate() {
            if x > 0 {
                e[map[i]] += x;
            }
        }
        Monomial(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderKind {
    Lex,
    GrevLex,
    /// Elimination order: grevlex on the first `split` variables, ties
    /// broken by grevlex on the rest. Any monomial involving the first block
    /// is larger than every monomial free of it.
    Block {
        split: usize,
    },
}

/// A term order, optionally applied after a permutation of the variables.
///
/// With `permutation = Some(p)`, position `k` of the order looks at
/// variable `p[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub permutation: Option<Vec<usize>>,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::grevlex()
    }
}

impl MonomialOrder {
    pub fn lex() -> Self {
        MonomialOrder { kind: OrderKind::Lex, permutation: None }
    }

    pub fn grevlex() -> Self {
        MonomialOrder { kind: OrderKind::GrevLex, permutation: None }
    }

    pub fn block(split: usize) -> Self {
        MonomialOrder { kind: OrderKind::Block { split }, permutation: None }
    }

    pub fn with_permutation(mut self, permutation: Vec<usize>) -> Self {
        self.permutation = Some(permutation);
        self
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match &self.permutation {
            None => compare_kind(self.kind, a.exponents(), b.exponents()),
            Some(p) => {
                let pa: Vec<u32> = p.iter().map(|&i| a.0[i]).collect();
                let pb: Vec<u32> = p.iter().map(|&i| b.0[i]).collect();
                compare_kind(self.kind, &pa, &pb)
            }
        }
    }

    /// The same order with the permutation stripped, for use on exponent
    /// vectors that were already permuted.
    pub(crate) fn unpermuted(&self) -> MonomialOrder {
        MonomialOrder { kind: self.kind, permutation: None }
    }
}

pub(crate) fn compare_kind(kind: OrderKind, a: &[u32], b: &[u32]) -> Ordering {
    match kind {
        OrderKind::Lex => a.cmp(b),
        OrderKind::GrevLex => grevlex(a, b),
        OrderKind::Block { split } => {
            let s = split.min(a.len());
            grevlex(&a[..s], &b[..s]).then_with(|| grevlex(&a[s..], &b[s..]))
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        let o = MonomialOrder::grevlex();
        // x*z < y^2 in grevlex with x > y > z
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_and_block() {
        let lex = MonomialOrder::lex();
        assert_eq!(lex.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        let blk = MonomialOrder::block(1);
        assert_eq!(blk.cmp(&m(&[1, 0, 0]), &m(&[0, 3, 3])), Ordering::Greater);
        assert_eq!(blk.cmp(&m(&[0, 2, 0]), &m(&[0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn permutation_reorders_variables() {
        let o = MonomialOrder::lex().with_permutation(vec![1, 0]);
        assert_eq!(o.cmp(&m(&[5, 0]), &m(&[0, 1])), Ordering::Less);
    }

    #[test]
    fn divisibility_and_lcm() {
        assert!(m(&[1, 0]).divides(&m(&[2, 1])));
        assert_eq!(m(&[2, 1]).lcm(&m(&[0, 3])), m(&[2, 3]));
        assert_eq!(m(&[1, 0]).quotient_of(&m(&[2, 1])), Some(m(&[1, 1])));
        assert!(m(&[1, 0]).is_coprime(&m(&[0, 4])));
    }
}
