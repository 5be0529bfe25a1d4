//! Executable checks of two facts about algebraic sets.
//!
//! * A subset `Y ⊆ X` cut out by more equations has the same dimension as
//!   `X` only if it equals `X`, provided `X` is irreducible.
//! * The image of an algebraic set under a polynomial map need not be
//!   closed: `{xy = 1}` projects onto the punctured line, whose closure is
//!   the whole line.

use serde::Serialize;

use crate::components::split_components;
use crate::ideal::{Ideal, IdealRelation};
use crate::poly::Polynomial;
use crate::{AlgebraError, Budget};

/// A polynomial map ℚ^source → ℚ^target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialMap {
    source_vars: usize,
    coordinates: Vec<Polynomial>,
    target_names: Vec<String>,
}

impl PolynomialMap {
    /// Target variables are named `y0, y1, ...`.
    pub fn new(source_vars: usize, coordinates: Vec<Polynomial>) -> Result<Self, AlgebraError> {
        let names = (0..coordinates.len()).map(|k| format!("y{k}")).collect();
        Self::with_names(source_vars, coordinates, names)
    }

    pub fn with_names(
        source_vars: usize,
        coordinates: Vec<Polynomial>,
        target_names: Vec<String>,
    ) -> Result<Self, AlgebraError> {
        for c in &coordinates {
            if c.nvars() != source_vars {
                return Err(AlgebraError::RingMismatch { expected: source_vars, found: c.nvars() });
            }
        }
        assert_eq!(target_names.len(), coordinates.len(), "one name per coordinate");
        Ok(PolynomialMap { source_vars, coordinates, target_names })
    }

    pub fn identity(nvars: usize, names: Vec<String>) -> Self {
        let coords = (0..nvars).map(|i| Polynomial::var(nvars, i)).collect();
        PolynomialMap { source_vars: nvars, coordinates: coords, target_names: names }
    }

    pub fn source_vars(&self) -> usize {
        self.source_vars
    }

    pub fn target_vars(&self) -> usize {
        self.coordinates.len()
    }

    pub fn coordinates(&self) -> &[Polynomial] {
        &self.coordinates
    }

    pub fn apply(&self, point: &[num_rational::BigRational]) -> Vec<num_rational::BigRational> {
        self.coordinates.iter().map(|c| c.eval(point)).collect()
    }
}

/// Defining ideal of the Zariski closure of `φ(V(I))`: eliminate the
/// source variables from the graph ideal `I + (y_k - φ_k(x))`.
pub fn image_closure_demo(phi: &PolynomialMap, ideal: &Ideal, budget: &Budget) -> Result<Ideal, AlgebraError> {
    let n = ideal.nvars();
    if phi.source_vars != n {
        return Err(AlgebraError::RingMismatch { expected: n, found: phi.source_vars });
    }
    let m = phi.target_vars();
    let mut names: Vec<String> = ideal.names().to_vec();
    names.extend(phi.target_names.iter().cloned());
    let mut gens: Vec<Polynomial> = ideal.generators().iter().map(|g| g.extend_vars(m)).collect();
    for (k, c) in phi.coordinates.iter().enumerate() {
        gens.push(&Polynomial::var(n + m, n + k) - &c.extend_vars(m));
    }
    let graph = Ideal::new(names, gens);
    let drop: Vec<usize> = (0..n).collect();
    graph.eliminate(&drop, budget)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaVerdict {
    /// `Y` is a proper subset of smaller dimension.
    DimensionsDiffer,
    /// Equal dimensions and equal zero sets.
    EqualSets,
    /// Equal dimensions, different sets, and `X` splits into the listed
    /// number of branches: the irreducibility hypothesis is false.
    IrreducibilityAssertionViolated { branches: usize },
    /// Equal dimensions, different sets, and the splitter could not
    /// decide whether `X` is irreducible. Krull dimensions over ℚ only
    /// bound real dimensions, so the real-radical gap may also be the cause.
    HypothesisUnverified,
    /// Equal dimensions, different sets, irreducibility not asserted.
    NoClaim,
}

impl LemmaVerdict {
    /// The outcome agrees with the lemma (diagnostics about hypotheses are
    /// never counted as refutations).
    pub fn consistent(&self) -> bool {
        matches!(self, LemmaVerdict::DimensionsDiffer | LemmaVerdict::EqualSets)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub dim_x: i64,
    pub dim_y: i64,
    pub relation: IdealRelation,
    pub x_irreducible_asserted: bool,
    pub real_radical_caveat: bool,
    pub verdict: LemmaVerdict,
}

impl LemmaReport {
    pub fn message(&self) -> &'static str {
        match self.verdict {
            LemmaVerdict::DimensionsDiffer => "proper subset, dimensions differ",
            LemmaVerdict::EqualSets => "dimensions equal, sets equal",
            LemmaVerdict::IrreducibilityAssertionViolated { .. } => "irreducibility assertion violated",
            LemmaVerdict::HypothesisUnverified => "irreducibility not verified (real-radical caveat may apply)",
            LemmaVerdict::NoClaim => "dimensions equal, sets differ, irreducibility not asserted",
        }
    }
}

/// Checks `dim Y = dim X ⇔ Y = X` for `Y = V(I_Y) ⊆ X = V(I_X)`.
///
/// Nesting is tested up to radical: every generator of `I_X` must vanish
/// on `V(I_Y)`.
pub fn check_dimension_lemma(
    ix: &Ideal,
    iy: &Ideal,
    x_irreducible: bool,
    budget: &Budget,
) -> Result<LemmaReport, AlgebraError> {
    if ix.nvars() != iy.nvars() {
        return Err(AlgebraError::RingMismatch { expected: ix.nvars(), found: iy.nvars() });
    }
    if !ix.radical_contained_in(iy, budget)? {
        return Err(AlgebraError::NotNested("some generator of I_X does not vanish on V(I_Y)".into()));
    }
    let rx = ix.dimension_report(budget)?;
    let ry = iy.dimension_report(budget)?;
    let relation = ix.relation(iy, budget)?;
    let verdict = if rx.dimension != ry.dimension {
        LemmaVerdict::DimensionsDiffer
    } else if relation == IdealRelation::Equal {
        LemmaVerdict::EqualSets
    } else if !x_irreducible {
        LemmaVerdict::NoClaim
    } else {
        let comps = split_components(ix, budget)?;
        if comps.len() > 1 {
            LemmaVerdict::IrreducibilityAssertionViolated { branches: comps.len() }
        } else {
            LemmaVerdict::HypothesisUnverified
        }
    };
    Ok(LemmaReport {
        dim_x: rx.dimension,
        dim_y: ry.dimension,
        relation,
        x_irreducible_asserted: x_irreducible,
        real_radical_caveat: rx.real_radical_caveat || ry.real_radical_caveat,
        verdict,
    })
}
