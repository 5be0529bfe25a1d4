use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Signed;

use crate::knot::Diagram;
use crate::presentation::{invariant_factors, wirtinger_arcs};

/// Coloring matrix over Wirtinger arcs: at every crossing,
/// `under_in + under_out - 2·over`.
pub fn coloring_matrix(d: &Diagram) -> (Vec<Vec<BigInt>>, usize) {
    let (arc_of, count) = wirtinger_arcs(d);
    let rows = d
        .crossings
        .iter()
        .map(|c| {
            let mut row = vec![0i64; count];
            let (ui, uo) = c.under();
            row[arc_of[ui]] += 1;
            row[arc_of[uo]] += 1;
            row[arc_of[c.over().0]] -= 2;
            row.into_iter().map(BigInt::from).collect()
        })
        .collect();
    (rows, count)
}

/// Number of Fox `n`-colorings: solutions of the coloring equations over
/// `ℤ/n`, which is `n^(arcs - r) · ∏ gcd(d_i, n)` for the invariant factors
/// `d_1..d_r` of the coloring matrix.
pub fn fox_colorings(d: &Diagram, n: u64) -> BigUint {
    assert!(n >= 2, "modulus must be at least 2");
    let (m, cols) = coloring_matrix(d);
    let factors = invariant_factors(&m);
    let nb = BigInt::from(n);
    let mut count = BigUint::from(n).pow((cols - factors.len()) as u32);
    for f in &factors {
        count *= f.gcd(&nb).abs().to_biguint().expect("positive");
    }
    count
}
