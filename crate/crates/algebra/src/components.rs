//! Partial splitting of an ideal into components.
//!
//! The splitter computes a reduced basis, factors its elements, and branches
//! on the first element with more than one factor, replacing it by each
//! factor in turn. Unit branches are dropped and branches whose zero set
//! lies inside another branch's zero set are removed. The intersection of
//! the surviving branches has the same radical as the input.

use serde::Serialize;

use crate::factor::split_polynomial;
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::{AlgebraError, Budget};

#[derive(Clone, Debug)]
pub struct Components {
    /// Branch ideals, each generated by its reduced basis, sorted by text.
    pub branches: Vec<Ideal>,
    /// Per branch: the branch is proven prime over ℚ.
    pub certified: Vec<bool>,
    /// Branches visited, including dropped ones.
    pub explored: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub count: usize,
    pub certified: bool,
    pub branches: Vec<String>,
}

impl Components {
    /// Every branch is proven prime: the list is the set of irreducible
    /// components over ℚ.
    pub fn all_certified(&self) -> bool {
        self.certified.iter().all(|&c| c)
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    pub fn summary(&self) -> ComponentSummary {
        ComponentSummary {
            count: self.branches.len(),
            certified: self.all_certified(),
            branches: self.branches.iter().map(Ideal::to_text).collect(),
        }
    }
}

struct Leaf {
    ideal: Ideal,
    certified: bool,
}

pub fn split_components(ideal: &Ideal, budget: &Budget) -> Result<Components, AlgebraError> {
    let names = ideal.names().to_vec();
    let order = ideal.order().clone();
    let mut stack = vec![ideal.generators().to_vec()];
    let mut leaves: Vec<Leaf> = Vec::new();
    let mut explored = 0usize;

    while let Some(gens) = stack.pop() {
        budget.check_time()?;
        explored += 1;
        if explored > budget.max_branches {
            return Err(AlgebraError::BranchBudgetExceeded(budget.max_branches));
        }
        let branch = Ideal::with_order(names.clone(), gens, order.clone());
        let basis: Vec<Polynomial> = {
            let gb = branch.groebner(budget)?;
            if gb.is_unit() {
                continue;
            }
            gb.polynomials().to_vec()
        };
        let mut split_at = None;
        let mut all_factors_certified = true;
        let mut nonlinear = 0usize;
        let mut nonlinear_certified = true;
        for (k, p) in basis.iter().enumerate() {
            if p.total_degree().unwrap_or(0) <= 1 {
                continue;
            }
            nonlinear += 1;
            let f = split_polynomial(p, budget)?;
            if f.factors.len() > 1 {
                split_at = Some((k, f.factors));
                break;
            }
            all_factors_certified &= f.certified;
            nonlinear_certified &= f.certified;
        }
        match split_at {
            Some((k, factors)) => {
                // push in reverse so branches are explored in factor order
                for f in factors.into_iter().rev() {
                    let mut next = basis.clone();
                    next[k] = f;
                    stack.push(next);
                }
            }
            None => {
                // a reduced basis made of linear forms plus one irreducible
                // polynomial in the remaining free variables is prime
                let certified = all_factors_certified && nonlinear <= 1 && nonlinear_certified;
                let ideal = Ideal::with_order(names.clone(), basis, order.clone());
                leaves.push(Leaf { ideal, certified });
            }
        }
    }

    leaves.sort_by_key(|l| l.ideal.to_text());
    leaves.dedup_by(|a, b| a.ideal == b.ideal);

    // drop branches whose zero set lies inside another branch's zero set
    let mut keep = vec![true; leaves.len()];
    for i in 0..leaves.len() {
        for j in 0..leaves.len() {
            if i == j || !keep[j] || !keep[i] {
                continue;
            }
            if leaves[j].ideal.radical_contained_in(&leaves[i].ideal, budget)? {
                keep[i] = false;
            }
        }
    }
    let mut branches = Vec::new();
    let mut certified = Vec::new();
    for (leaf, k) in leaves.into_iter().zip(keep) {
        if k {
            branches.push(leaf.ideal);
            certified.push(leaf.certified);
        }
    }
    Ok(Components { branches, certified, explored })
}
