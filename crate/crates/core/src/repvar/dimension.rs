use knotrep_algebra::{rat, split_components, AlgebraError, Budget, Ideal, Monomial, Polynomial};
use serde::Serialize;

use super::RepVarietyModel;

/// Ordered component dimensions of a representation variety, with the
/// convention it was computed under.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimInvariant {
    pub target: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub gauge: &'static str,
    /// Ring size after solving away linear equations.
    pub variables: usize,
    /// Krull dimensions of the branches, descending.
    pub dimension_list: Vec<usize>,
    /// The branches are proven prime over ℚ.
    pub certified: bool,
    /// Some dimension is only an upper bound for the real zero set.
    pub real_radical_caveat: bool,
    /// A resource limit was hit somewhere.
    pub budget_caveat: bool,
    /// False when no dimension could be computed within budget.
    pub complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl DimInvariant {
    pub fn top(&self) -> Option<usize> {
        self.dimension_list.first().copied()
    }
}

/// Repeatedly solves a degree-one generator for its last variable and
/// substitutes, shrinking the ring. Returns the smaller ideal and, for each
/// of its variables, the original index.
pub fn substitute_linear(ideal: &Ideal) -> (Ideal, Vec<usize>) {
    let mut names = ideal.names().to_vec();
    let mut kept: Vec<usize> = (0..names.len()).collect();
    let mut gens: Vec<Polynomial> = ideal.generators().to_vec();
    loop {
        let n = names.len();
        let pick = gens.iter().enumerate().find_map(|(k, g)| {
            if g.total_degree() != Some(1) {
                return None;
            }
            g.variables().last().map(|&v| (k, v))
        });
        let Some((k, v)) = pick else { break };
        let g = gens.remove(k);
        let coeff = g.coefficient(&Monomial::variable(n, v));
        // v = v - g / coeff
        let solved = &Polynomial::var(n, v) - &g.scale(&(rat(1) / coeff));
        let map: Vec<usize> = (0..n).map(|i| if i < v { i } else { i.saturating_sub(1) }).collect();
        let mut images: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
        images[v] = solved;
        gens =
            gens.iter().map(|p| p.substitute(&images)).filter(|p| !p.is_zero()).map(|p| p.remap(&map, n - 1)).collect();
        names.remove(v);
        kept.remove(v);
    }
    (Ideal::with_order(names, gens, ideal.order().clone()), kept)
}

fn incomplete(base: DimInvariant, e: &AlgebraError) -> DimInvariant {
    DimInvariant { complete: false, budget_caveat: true, note: Some(e.to_string()), ..base }
}

/// Component dimensions from the partial splitter, or the top dimension
/// alone (uncertified) when splitting runs out of budget.
pub fn variety_dimension(m: &RepVarietyModel, budget: &Budget) -> DimInvariant {
    let (reduced, _) = substitute_linear(m.ideal());
    let base = DimInvariant {
        target: m.target().to_string(),
        n: m.target().n(),
        gauge: m.gauge().key(),
        variables: reduced.nvars(),
        dimension_list: Vec::new(),
        certified: false,
        real_radical_caveat: false,
        budget_caveat: false,
        complete: true,
        note: None,
    };
    let top = match reduced.dimension_report(budget) {
        Ok(r) => r,
        Err(e) => return incomplete(base, &e),
    };
    if top.dimension < 0 {
        return DimInvariant { certified: true, note: Some("empty variety".into()), ..base };
    }
    let fallback = |e: &AlgebraError| DimInvariant {
        dimension_list: vec![top.dimension as usize],
        real_radical_caveat: top.real_radical_caveat,
        budget_caveat: true,
        note: Some(format!("components not split: {e}")),
        ..base.clone()
    };
    let comps = match split_components(&reduced, budget) {
        Ok(c) => c,
        Err(e) => return fallback(&e),
    };
    let mut dims = Vec::new();
    let mut caveat = false;
    for b in &comps.branches {
        match b.dimension_report(budget) {
            Ok(r) if r.dimension >= 0 => {
                dims.push(r.dimension as usize);
                caveat |= r.real_radical_caveat;
            }
            Ok(_) => {}
            Err(e) => return fallback(&e),
        }
    }
    dims.sort_unstable_by(|a, b| b.cmp(a));
    debug_assert_eq!(dims.first().copied(), Some(top.dimension as usize));
    DimInvariant { dimension_list: dims, certified: comps.all_certified(), real_radical_caveat: caveat, ..base }
}
