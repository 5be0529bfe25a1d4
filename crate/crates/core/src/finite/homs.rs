//! Homomorphisms from finitely presented groups to permutation groups.
//!
//! Assignments are enumerated by backtracking over generator images in
//! element-table order; a relator is checked as soon as its largest
//! generator has an image.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use super::group::FiniteGroup;
use crate::presentation::{Presentation, Word};

/// Default cap on the nominal search space `|G|^k`.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HomError {
    #[error(
        "search space {search_space} exceeds the budget of {budget} assignments (simplify the presentation first)"
    )]
    BudgetExceeded { search_space: BigUint, budget: u64 },
    #[error("word uses generator {gen} but the presentation has {count}")]
    GeneratorOutOfRange { gen: usize, count: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomOptions {
    pub budget: u64,
    /// Restrict the first constrained generator to conjugacy class
    /// representatives and weight by class size.
    pub prune: bool,
    pub parallel: bool,
}

impl Default for HomOptions {
    fn default() -> Self {
        HomOptions { budget: DEFAULT_SEARCH_BUDGET, prune: true, parallel: true }
    }
}

/// Generator images, as indices into the target's element table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomAssignment {
    pub images: Vec<u32>,
    pub satisfied: bool,
}

impl HomAssignment {
    /// Re-evaluates every relator.
    pub fn new(p: &Presentation, g: &FiniteGroup, images: Vec<u32>) -> Self {
        let satisfied = p.relators().iter().all(|r| eval_word(g, r, &images) == 0);
        HomAssignment { images, satisfied }
    }

    pub fn cycles(&self, g: &FiniteGroup) -> Vec<String> {
        self.images.iter().map(|&i| g.element(i).cycle_string()).collect()
    }

    pub fn eval(&self, g: &FiniteGroup, w: &Word) -> u32 {
        eval_word(g, w, &self.images)
    }
}

/// Image of `w` under the assignment, reading letters left to right.
pub fn eval_word(g: &FiniteGroup, w: &Word, images: &[u32]) -> u32 {
    w.letters().iter().fold(0, |acc, l| {
        let x = images[l.gen];
        g.mul(acc, if l.inverse { g.inv(x) } else { x })
    })
}

pub fn search_space(p: &Presentation, g: &FiniteGroup) -> BigUint {
    BigUint::from(g.order()).pow(p.generator_count() as u32)
}

fn check_budget(p: &Presentation, g: &FiniteGroup, budget: u64) -> Result<(), HomError> {
    let size = search_space(p, g);
    if size > BigUint::from(budget) {
        return Err(HomError::BudgetExceeded { search_space: size, budget });
    }
    Ok(())
}

struct Search<'a> {
    g: &'a FiniteGroup,
    /// Generators in assignment order.
    order: Vec<usize>,
    /// Relators to check once `order[i]` is assigned.
    checks: Vec<Vec<&'a Word>>,
    allowed: Option<&'a [bool]>,
}

impl<'a> Search<'a> {
    fn new(p: &'a Presentation, g: &'a FiniteGroup, order: Vec<usize>, allowed: Option<&'a [bool]>) -> Self {
        let mut pos = vec![usize::MAX; p.generator_count()];
        for (i, &gen) in order.iter().enumerate() {
            pos[gen] = i;
        }
        let mut checks = vec![Vec::new(); order.len()];
        for r in p.relators() {
            if let Some(last) = r.letters().iter().map(|l| pos[l.gen]).max() {
                checks[last].push(r);
            }
        }
        Search { g, order, checks, allowed }
    }

    fn candidates(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.g.order() as u32).filter(move |&a| self.allowed.is_none_or(|m| m[a as usize]))
    }

    fn ok_at(&self, level: usize, images: &[u32]) -> bool {
        self.checks[level].iter().all(|r| eval_word(self.g, r, images) == 0)
    }

    fn count(&self, level: usize, images: &mut [u32]) -> u64 {
        if level == self.order.len() {
            return 1;
        }
        let gen = self.order[level];
        let mut total = 0;
        for a in self.candidates() {
            images[gen] = a;
            if self.ok_at(level, images) {
                total += self.count(level + 1, images);
            }
        }
        total
    }

    fn count_with_first(&self, first: u32, k: usize) -> u64 {
        let mut images = vec![0u32; k];
        images[self.order[0]] = first;
        if self.ok_at(0, &images) {
            self.count(1, &mut images)
        } else {
            0
        }
    }

    /// Visits assignments in lexicographic order; stops when `f` returns false.
    fn walk(&self, level: usize, images: &mut [u32], f: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if level == self.order.len() {
            return f(images);
        }
        let gen = self.order[level];
        for a in 0..self.g.order() as u32 {
            if self.allowed.is_some_and(|m| !m[a as usize]) {
                continue;
            }
            images[gen] = a;
            if self.ok_at(level, images) && !self.walk(level + 1, images, f) {
                return false;
            }
        }
        true
    }
}

fn is_constrained(p: &Presentation) -> Vec<bool> {
    let mut used = vec![false; p.generator_count()];
    for r in p.relators() {
        for l in r.letters() {
            used[l.gen] = true;
        }
    }
    used
}

/// Number of homomorphisms `p → g` whose generator images all lie in
/// `allowed` (every element when `None`).
pub fn count_homs_in(
    p: &Presentation,
    g: &FiniteGroup,
    allowed: Option<&[bool]>,
    opts: &HomOptions,
) -> Result<u64, HomError> {
    check_budget(p, g, opts.budget)?;
    let k = p.generator_count();
    let used = is_constrained(p);
    let free = used.iter().filter(|u| !**u).count() as u32;
    let choices = allowed.map_or(g.order(), |m| m.iter().filter(|b| **b).count()) as u64;
    let factor = choices.pow(free);
    let order: Vec<usize> = (0..k).filter(|&i| used[i]).collect();
    if order.is_empty() {
        return Ok(factor);
    }
    let search = Search::new(p, g, order, allowed);
    // (first image, weight)
    let firsts: Vec<(u32, u64)> = if opts.prune && allowed.is_none() {
        g.conjugacy_classes().iter().map(|c| (c[0], c.len() as u64)).collect()
    } else {
        search.candidates().map(|a| (a, 1)).collect()
    };
    let sum = if opts.parallel {
        firsts.par_iter().map(|&(a, w)| w * search.count_with_first(a, k)).sum::<u64>()
    } else {
        firsts.iter().map(|&(a, w)| w * search.count_with_first(a, k)).sum::<u64>()
    };
    Ok(sum * factor)
}

/// Number of homomorphisms `p → g`.
pub fn count_homs(p: &Presentation, g: &FiniteGroup, opts: &HomOptions) -> Result<u64, HomError> {
    count_homs_in(p, g, None, opts)
}

/// Number of homomorphisms `p → g` up to conjugation in `g`, by Burnside:
/// the average over `h ∈ g` of the homs fixed by `h`, i.e. those landing
/// in the centralizer of `h`.
pub fn count_homs_up_to_conjugacy(p: &Presentation, g: &FiniteGroup, opts: &HomOptions) -> Result<u64, HomError> {
    check_budget(p, g, opts.budget)?;
    let inner = HomOptions { prune: false, ..*opts };
    let mut total = 0u64;
    for class in g.conjugacy_classes() {
        let mask = g.centralizer(class[0]);
        total += class.len() as u64 * count_homs_in(p, g, Some(&mask), &inner)?;
    }
    debug_assert_eq!(total % g.order() as u64, 0);
    Ok(total / g.order() as u64)
}

/// Calls `f` on each homomorphism in lexicographic order of image indices
/// until it returns false.
pub fn for_each_hom(
    p: &Presentation,
    g: &FiniteGroup,
    allowed: Option<&[bool]>,
    budget: u64,
    mut f: impl FnMut(&[u32]) -> bool,
) -> Result<(), HomError> {
    check_budget(p, g, budget)?;
    let k = p.generator_count();
    let search = Search::new(p, g, (0..k).collect(), allowed);
    let mut images = vec![0u32; k];
    search.walk(0, &mut images, &mut f);
    Ok(())
}

pub fn enumerate_homs(p: &Presentation, g: &FiniteGroup, budget: u64) -> Result<Vec<HomAssignment>, HomError> {
    let mut out = Vec::new();
    for_each_hom(p, g, None, budget, |im| {
        out.push(HomAssignment { images: im.to_vec(), satisfied: true });
        true
    })?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    /// `hom` kills every relator and sends the word to `image` ≠ 1.
    Found { target: usize, hom: HomAssignment, image: u32 },
    /// No listed target separates the word.
    NotFound,
    /// The empty word is never separated.
    TrivialWord,
}

/// First homomorphism, in target order and then lexicographic order, that
/// sends `c` to a non-identity element. Targets over the budget are skipped;
/// if nothing is found and some target was skipped the budget error is
/// returned instead of `NotFound`.
pub fn find_separating_hom(
    p: &Presentation,
    c: &Word,
    targets: &[FiniteGroup],
    budget: u64,
) -> Result<Separation, HomError> {
    if let Some(gen) = c.max_gen().filter(|&g| g >= p.generator_count()) {
        return Err(HomError::GeneratorOutOfRange { gen, count: p.generator_count() });
    }
    if c.is_empty() {
        return Ok(Separation::TrivialWord);
    }
    let mut skipped = None;
    for (t, g) in targets.iter().enumerate() {
        let mut found = None;
        match for_each_hom(p, g, None, budget, |im| {
            let v = eval_word(g, c, im);
            if v != 0 {
                found = Some((im.to_vec(), v));
                return false;
            }
            true
        }) {
            Ok(()) => {}
            Err(e) => {
                skipped.get_or_insert(e);
                continue;
            }
        }
        if let Some((images, image)) = found {
            let hom = HomAssignment::new(p, g, images);
            assert!(hom.satisfied && image != 0, "separating hom failed re-verification");
            return Ok(Separation::Found { target: t, hom, image });
        }
    }
    match skipped {
        Some(e) => Err(e),
        None => Ok(Separation::NotFound),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::trefoil_two_generator;

    fn group(name: &str) -> FiniteGroup {
        FiniteGroup::by_name(name).unwrap()
    }

    #[test]
    fn small_counts() {
        let o = HomOptions::default();
        let free = Presentation::new(1, vec![]).unwrap();
        assert_eq!(count_homs(&free, &group("S3"), &o).unwrap(), 6);
        let t = trefoil_two_generator();
        assert_eq!(count_homs(&t, &group("C3"), &o).unwrap(), 3);
        assert_eq!(count_homs(&t, &group("S3"), &o).unwrap(), 12);
    }

    #[test]
    fn pruning_and_parallelism_agree() {
        let t = trefoil_two_generator();
        for name in ["S3", "S4", "A4", "D5", "A5"] {
            let g = group(name);
            let base = count_homs(&t, &g, &HomOptions { prune: false, parallel: false, ..Default::default() }).unwrap();
            assert_eq!(count_homs(&t, &g, &HomOptions::default()).unwrap(), base, "{name}");
            assert_eq!(enumerate_homs(&t, &g, DEFAULT_SEARCH_BUDGET).unwrap().len() as u64, base);
        }
    }

    #[test]
    fn conjugacy_orbits() {
        // ℤ → S3 up to conjugacy: one orbit per conjugacy class
        let free = Presentation::new(1, vec![]).unwrap();
        assert_eq!(count_homs_up_to_conjugacy(&free, &group("S3"), &HomOptions::default()).unwrap(), 3);
        // trefoil → S3: 3 abelian classes plus one surjective class
        let t = trefoil_two_generator();
        assert_eq!(count_homs_up_to_conjugacy(&t, &group("S3"), &HomOptions::default()).unwrap(), 4);
    }

    #[test]
    fn budget() {
        let t = trefoil_two_generator();
        let o = HomOptions { budget: 35, ..Default::default() };
        match count_homs(&t, &group("S3"), &o) {
            Err(HomError::BudgetExceeded { search_space, budget: 35 }) => {
                assert_eq!(search_space, BigUint::from(36u32))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn separation() {
        let free = Presentation::new(1, vec![]).unwrap();
        let c2 = group("C2");
        match find_separating_hom(&free, &Word::gen(0), std::slice::from_ref(&c2), 100).unwrap() {
            Separation::Found { target: 0, hom, image } => {
                assert_eq!(hom.images, vec![1]);
                assert_eq!(image, 1);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(find_separating_hom(&free, &Word::identity(), &[c2], 100).unwrap(), Separation::TrivialWord);

        let t = trefoil_two_generator();
        let comm = Word::from_signed(&[1, 2, -1, -2]);
        let targets = [group("C2"), group("C3"), group("S3")];
        match find_separating_hom(&t, &comm, &targets, 1000).unwrap() {
            Separation::Found { target: 2, hom, image } => {
                assert!(hom.satisfied);
                assert_eq!(targets[2].element(image).order(), 3);
            }
            other => panic!("{other:?}"),
        }
        let abelian = [group("C2"), group("C3")];
        assert_eq!(find_separating_hom(&t, &comm, &abelian, 1000).unwrap(), Separation::NotFound);
    }
}
