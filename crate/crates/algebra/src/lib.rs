//! Exact commutative algebra over ℚ for small polynomial systems.
//!
//! The crate provides sparse multivariate polynomials with
//! arbitrary-precision rational coefficients, Buchberger's algorithm,
//! Krull dimension, elimination, radical membership and a partial splitter
//! into components, plus executable checks of two facts about real
//! algebraic sets (an irreducible set has no proper algebraic subset of the
//! same dimension; a projection can have a Zariski-dense image that is not
//! closed).
//!
//! Everything is computed over the rationals. Dimensions are Krull
//! dimensions of the *given* ideal, which bound the dimension of the real
//! zero set from above; reports carry a caveat flag whenever that bound is
//! not known to be tight.

pub mod components;
pub mod factor;
pub mod groebner;
pub mod ideal;
pub mod lemmas;
pub mod monomial;
pub mod parse;
pub mod poly;

use std::time::Instant;

pub use components::{split_components, ComponentSummary, Components};
pub use groebner::{groebner, GroebnerBasis, Selection};
pub use ideal::{DimensionReport, Ideal, IdealRelation};
pub use lemmas::{check_dimension_lemma, image_closure_demo, LemmaReport, LemmaVerdict, PolynomialMap};
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use parse::{parse_ideal_text, parse_polynomial, ParseError};
pub use poly::{rat, ratio, Polynomial};

pub use num_rational::BigRational;

/// Widest ring the kernel accepts (variable supports are `u128` masks).
pub const MAX_VARIABLES: usize = 128;

/// Resource limits for Gröbner-based computations.
#[derive(Clone, Debug)]
pub struct Budget {
    /// Largest total degree any intermediate polynomial may reach.
    pub max_degree: u32,
    /// Largest number of terms any intermediate polynomial may hold.
    pub max_terms: usize,
    /// Wall-clock cut-off.
    pub deadline: Option<Instant>,
    /// Cap on branches explored by the component splitter.
    pub max_branches: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_degree: 40, max_terms: 200_000, deadline: None, max_branches: 64 }
    }
}

impl Budget {
    pub fn with_degree(max_degree: u32) -> Self {
        Budget { max_degree, ..Budget::default() }
    }

    pub fn with_deadline(mut self, deadline: Instant) -> Self {
        self.deadline = Some(deadline);
        self
    }

    pub(crate) fn check_time(&self) -> Result<(), AlgebraError> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(AlgebraError::TimeBudgetExceeded),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("degree budget exceeded: reached degree {reached}, limit {limit}")]
    DegreeBudgetExceeded { limit: u32, reached: u32 },
    #[error("term budget exceeded: reached {reached} terms, limit {limit}")]
    TermBudgetExceeded { limit: usize, reached: usize },
    #[error("time budget exceeded")]
    TimeBudgetExceeded,
    #[error("branch budget exceeded while splitting components (limit {0})")]
    BranchBudgetExceeded(usize),
    #[error("ring mismatch: expected {expected} variables, found {found}")]
    RingMismatch { expected: usize, found: usize },
    #[error("too many variables: {0} (limit {MAX_VARIABLES})")]
    TooManyVariables(usize),
    #[error("ideals are not nested: {0}")]
    NotNested(String),
    #[error("invalid variable index {0}")]
    InvalidVariable(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl AlgebraError {
    /// True for the resource-limit variants, which mean "no answer within
    /// budget" rather than "bad input".
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            AlgebraError::DegreeBudgetExceeded { .. }
                | AlgebraError::TermBudgetExceeded { .. }
                | AlgebraError::TimeBudgetExceeded
                | AlgebraError::BranchBudgetExceeded(_)
        )
    }
}
