use std::path::{Path, PathBuf};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use knotrep_core::finite::{
    count_homs, count_homs_in, count_homs_up_to_conjugacy, enumerate_homs, find_separating_hom, fox_colorings,
    FiniteGroup, HomOptions, Perm, Separation, DEFAULT_SEARCH_BUDGET,
};
use knotrep_core::knot::{parse_braid, parse_dt, parse_knot_text, parse_pd, Diagram, KnotError, SourceFormat};
use knotrep_core::obstruction::knot_group;
use knotrep_core::presentation::{
    invariant_factors, tietze_simplify, trefoil_two_generator, wirtinger, Presentation, Word,
};

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn load(name: &str) -> Diagram {
    let path = fixture_dir().join(name);
    let text = std::fs::read_to_string(&path).unwrap();
    parse_knot_text(&text, SourceFormat::sniff(&path).unwrap()).unwrap()
}

const KNOT_FIXTURES: [&str; 10] = [
    "unknot.pd",
    "unknot.braid",
    "kinked-unknot.braid",
    "trefoil.braid",
    "trefoil.dt",
    "trefoil.pd",
    "figure8.braid",
    "figure8.dt",
    "figure8.pd",
    "cinquefoil.braid",
];

fn targets() -> Vec<FiniteGroup> {
    ["C2", "C3", "S3", "S4", "A4"].iter().map(|n| FiniteGroup::by_name(n).unwrap()).collect()
}

// ---------- oracles ----------

/// Fox colorings by trying every coloring of the diagram's edges: both
/// edges of an over-strand get the same color and
/// `under_in + under_out = 2·over` at every crossing.
fn brute_colorings(d: &Diagram, n: u64) -> u64 {
    if d.crossings.is_empty() {
        return n;
    }
    let e = d.arc_count;
    let mut count = 0;
    let mut colors = vec![0u64; e];
    'outer: loop {
        let ok = d.crossings.iter().all(|c| {
            let (o1, o2) = c.over();
            let (u1, u2) = c.under();
            colors[o1] == colors[o2] && (colors[u1] + colors[u2]) % n == (2 * colors[o1]) % n
        });
        count += ok as u64;
        for slot in colors.iter_mut() {
            *slot += 1;
            if *slot < n {
                continue 'outer;
            }
            *slot = 0;
        }
        return count;
    }
}

/// Homomorphism count by trying every tuple of permutations, composing
/// permutations directly.
fn brute_homs(p: &Presentation, elements: &[Perm]) -> u64 {
    let k = p.generator_count();
    let degree = elements[0].degree();
    let mut idx = vec![0usize; k];
    let mut count = 0;
    loop {
        let ok = p.relators().iter().all(|r| {
            let mut acc = Perm::identity(degree);
            for l in r.letters() {
                let x = &elements[idx[l.gen]];
                acc = acc.then(&if l.inverse { x.inverse() } else { x.clone() });
            }
            acc.is_identity()
        });
        count += ok as u64;
        let mut i = 0;
        loop {
            if i == k {
                return count;
            }
            idx[i] += 1;
            if idx[i] < elements.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

fn all_perms(n: usize) -> Vec<Perm> {
    fn rec(prefix: &mut Vec<u16>, n: usize, out: &mut Vec<Perm>) {
        if prefix.len() == n {
            out.push(Perm::from_images(prefix.clone()).unwrap());
            return;
        }
        for i in 0..n as u16 {
            if !prefix.contains(&i) {
                prefix.push(i);
                rec(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for (j, v) in m[0].iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = v * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors as quotients of determinantal divisors (gcd of all
/// k×k minors).
fn determinantal_factors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<BigInt>> =
                    rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push((&g / &prev).abs());
        prev = g;
    }
    out
}

// ---------- knot input ----------

#[test]
fn parser_examples() {
    let u = parse_braid(&[], 1).unwrap();
    assert_eq!((u.crossing_count(), u.arc_count), (0, 1));
    let t = parse_braid(&[1, 1, 1], 2).unwrap();
    assert_eq!(t.crossing_count(), 3);
    assert!(t.crossings.iter().all(|c| c.sign == 1));
    assert!(matches!(parse_braid(&[2], 2), Err(KnotError::OutOfRange { .. })));
    assert!(matches!(parse_braid(&[1, 1], 2), Err(KnotError::MultiComponent { .. })));
    assert!(matches!(parse_braid(&[0], 2), Err(KnotError::InvalidGenerator)));
    assert_eq!(parse_dt(&[]).unwrap().crossing_count(), 0);
    assert_eq!(parse_dt(&[4, 6, 2]).unwrap().crossing_count(), 3);
    assert!(matches!(parse_dt(&[4, 6, 3]), Err(KnotError::OddValue(3))));
    assert_eq!(parse_pd(&[]).unwrap().crossing_count(), 0);
}

#[test]
fn pd_round_trip_on_fixtures() {
    for name in KNOT_FIXTURES {
        let d = load(name);
        d.validate().unwrap();
        let again = parse_knot_text(&d.to_pd_text(), SourceFormat::Pd).unwrap();
        assert_eq!(again, d, "{name}");
    }
}

#[test]
fn cross_format_invariants() {
    let groups = targets();
    let opts = HomOptions::default();
    for family in [["trefoil.braid", "trefoil.dt", "trefoil.pd"], ["figure8.braid", "figure8.dt", "figure8.pd"]] {
        let ds: Vec<Diagram> = family.iter().map(|n| load(n)).collect();
        let reference: Vec<u64> = groups.iter().map(|g| count_homs(&wirtinger(&ds[0]), g, &opts).unwrap()).collect();
        for (d, name) in ds.iter().zip(family) {
            let w = wirtinger(d);
            assert!(w.abelianization().is_infinite_cyclic(), "{name}");
            let counts: Vec<u64> = groups.iter().map(|g| count_homs(&w, g, &opts).unwrap()).collect();
            assert_eq!(counts, reference, "{name}");
            for n in 2..8 {
                assert_eq!(fox_colorings(d, n), fox_colorings(&ds[0], n), "{name} n={n}");
            }
        }
    }
    // unknot diagrams agree with ℤ
    for name in ["unknot.pd", "unknot.braid", "kinked-unknot.braid"] {
        let w = wirtinger(&load(name));
        for g in &groups {
            assert_eq!(count_homs(&w, g, &opts).unwrap(), g.order() as u64, "{name} {}", g.name());
        }
    }
}

#[test]
fn dt_and_pd_trefoil_match_braid_closure() {
    let opts = HomOptions::default();
    let braid = wirtinger(&parse_braid(&[1, 1, 1], 2).unwrap());
    let dt = wirtinger(&parse_dt(&[4, 6, 2]).unwrap());
    let pd = wirtinger(&load("trefoil.pd"));
    for name in ["C2", "C3", "S3"] {
        let g = FiniteGroup::by_name(name).unwrap();
        let c = count_homs(&braid, &g, &opts).unwrap();
        assert_eq!(count_homs(&dt, &g, &opts).unwrap(), c);
        assert_eq!(count_homs(&pd, &g, &opts).unwrap(), c);
    }
}

// ---------- colorings ----------

#[test]
fn colorings_match_enumeration() {
    assert_eq!(brute_colorings(&load("trefoil.braid"), 3), 9);
    assert_eq!(brute_colorings(&load("figure8.dt"), 5), 25);
    for n in 2..=9 {
        assert_eq!(brute_colorings(&load("unknot.pd"), n), n);
        assert_eq!(fox_colorings(&load("unknot.pd"), n), BigUint::from(n));
    }
    for name in ["trefoil.braid", "trefoil.pd", "figure8.dt", "figure8.pd", "kinked-unknot.braid"] {
        let d = load(name);
        for n in 2..=5 {
            assert_eq!(fox_colorings(&d, n), BigUint::from(brute_colorings(&d, n)), "{name} n={n}");
        }
    }
}

#[test]
fn colorings_are_homs_to_reflections() {
    let s3 = FiniteGroup::by_name("S3").unwrap();
    let transpositions: Vec<bool> = (0..6).map(|i| s3.element(i).order() == 2).collect();
    let d5 = FiniteGroup::by_name("D5").unwrap();
    let reflections: Vec<bool> = (0..10).map(|i| d5.element(i).order() == 2).collect();
    let opts = HomOptions { prune: false, ..Default::default() };
    for name in KNOT_FIXTURES {
        let d = load(name);
        let w = wirtinger(&d);
        assert_eq!(BigUint::from(count_homs_in(&w, &s3, Some(&transpositions), &opts).unwrap()), fox_colorings(&d, 3));
        assert_eq!(BigUint::from(count_homs_in(&w, &d5, Some(&reflections), &opts).unwrap()), fox_colorings(&d, 5));
    }
}

// ---------- homomorphisms ----------

#[test]
fn hom_counts_match_brute_force() {
    let s3 = all_perms(3);
    assert_eq!(s3.len(), 6);
    let t = trefoil_two_generator();
    assert_eq!(brute_homs(&t, &s3), 12);
    let opts = HomOptions::default();
    assert_eq!(count_homs(&t, &FiniteGroup::by_name("S3").unwrap(), &opts).unwrap(), 12);
    let c3g = FiniteGroup::by_name("C3").unwrap();
    let c3: Vec<Perm> = (0..3).map(|i| c3g.element(i).clone()).collect();
    assert_eq!(brute_homs(&t, &c3), 3);
    assert_eq!(count_homs(&t, &FiniteGroup::by_name("C3").unwrap(), &opts).unwrap(), 3);
    let free = Presentation::new(1, vec![]).unwrap();
    assert_eq!(count_homs(&free, &FiniteGroup::by_name("S3").unwrap(), &opts).unwrap(), 6);

    let s4 = all_perms(4);
    for name in ["trefoil.braid", "figure8.dt", "cinquefoil.braid"] {
        let p = knot_group(&load(name));
        assert_eq!(count_homs(&p, &FiniteGroup::by_name("S4").unwrap(), &opts).unwrap(), brute_homs(&p, &s4), "{name}");
        assert_eq!(count_homs(&p, &FiniteGroup::by_name("S3").unwrap(), &opts).unwrap(), brute_homs(&p, &s3), "{name}");
    }
}

#[test]
fn pruned_search_matches_unpruned() {
    let plain = HomOptions { prune: false, parallel: false, ..Default::default() };
    for name in KNOT_FIXTURES {
        let p = wirtinger(&load(name));
        for g in targets() {
            if p.generator_count() > 4 && g.order() > 12 {
                continue;
            }
            let a = count_homs(&p, &g, &HomOptions::default()).unwrap();
            assert_eq!(a, count_homs(&p, &g, &plain).unwrap(), "{name} {}", g.name());
            assert!(a >= g.order() as u64, "homs through ℤ");
        }
    }
}

#[test]
fn tietze_preserves_counts_and_is_idempotent() {
    for name in KNOT_FIXTURES {
        let w = wirtinger(&load(name));
        let r = tietze_simplify(&w, 10_000);
        assert!(!r.exhausted);
        assert_eq!(r.trace.replay(&w).unwrap(), r.presentation);
        assert!(r.presentation.abelianization().is_infinite_cyclic());
        let again = tietze_simplify(&r.presentation, 10_000);
        assert!(again.trace.is_empty(), "{name}");
        for g in targets() {
            if w.generator_count() > 5 && g.order() > 12 {
                continue;
            }
            let opts = HomOptions::default();
            assert_eq!(
                count_homs(&w, &g, &opts).unwrap(),
                count_homs(&r.presentation, &g, &opts).unwrap(),
                "{name} {}",
                g.name()
            );
        }
    }
}

#[test]
fn conjugacy_orbits_by_enumeration() {
    // orbits of the conjugation action counted by explicit union of orbits
    let t = trefoil_two_generator();
    for name in ["S3", "S4", "A4"] {
        let g = FiniteGroup::by_name(name).unwrap();
        let homs = enumerate_homs(&t, &g, DEFAULT_SEARCH_BUDGET).unwrap();
        let mut seen = std::collections::HashSet::new();
        let mut orbits = 0;
        for h in &homs {
            if seen.contains(&h.images) {
                continue;
            }
            orbits += 1;
            for c in 0..g.order() as u32 {
                seen.insert(h.images.iter().map(|&x| g.conjugate(x, c)).collect::<Vec<_>>());
            }
        }
        assert_eq!(count_homs_up_to_conjugacy(&t, &g, &HomOptions::default()).unwrap(), orbits, "{name}");
    }
}

#[test]
fn separating_hom_is_reverified() {
    let t = trefoil_two_generator();
    let c = Word::from_signed(&[1, 2, -1, -2]);
    let targets: Vec<FiniteGroup> = ["C2", "C3", "S3"].iter().map(|n| FiniteGroup::by_name(n).unwrap()).collect();
    let Separation::Found { target, hom, image } =
        find_separating_hom(&t, &c, &targets, DEFAULT_SEARCH_BUDGET).unwrap()
    else {
        panic!("no separating hom");
    };
    let g = &targets[target];
    assert_eq!(g.name(), "S3");
    // direct evaluation with permutations
    let perms: Vec<Perm> = hom.images.iter().map(|&i| g.element(i).clone()).collect();
    let eval = |w: &Word| {
        w.letters().iter().fold(Perm::identity(3), |acc, l| {
            let x = &perms[l.gen];
            acc.then(&if l.inverse { x.inverse() } else { x.clone() })
        })
    };
    assert!(t.relators().iter().all(|r| eval(r).is_identity()));
    let img = eval(&c);
    assert_eq!(&img, g.element(image));
    assert_eq!(img.order(), 3);
}

#[test]
fn custom_group_files() {
    let text = std::fs::read_to_string(fixture_dir().join("groups/q8.perm")).unwrap();
    let q8 = FiniteGroup::parse_text(&text).unwrap();
    assert_eq!(q8.order(), 8);
    let mut sizes: Vec<usize> = q8.conjugacy_classes().iter().map(Vec::len).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    let v4 = FiniteGroup::parse_text(&std::fs::read_to_string(fixture_dir().join("groups/v4.perm")).unwrap()).unwrap();
    let t = trefoil_two_generator();
    let opts = HomOptions::default();
    // trefoil has no quotient onto V4 or Q8: every hom is abelian and factors through ℤ
    assert_eq!(count_homs(&t, &v4, &opts).unwrap(), 4);
    assert_eq!(count_homs(&t, &q8, &opts).unwrap(), 8);
}

// ---------- abelianization ----------

#[test]
fn wirtinger_presentations_on_fixtures() {
    for name in KNOT_FIXTURES {
        let d = load(name);
        let w = wirtinger(&d);
        assert_eq!(w.deficiency(), 1, "{name}");
        let f = determinantal_factors(&w.relation_matrix());
        assert_eq!(f.len(), w.generator_count() - 1);
        assert!(f.iter().all(|x| *x == BigInt::from(1)), "{name}");
        let a = w.abelianization();
        assert_eq!((a.rank, a.torsion.len()), (1, 0));
    }
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

proptest! {
    #[test]
    fn smith_form_matches_determinantal_divisors(m in small_matrix()) {
        let m: Vec<Vec<BigInt>> = m.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        prop_assert_eq!(invariant_factors(&m), determinantal_factors(&m));
    }

    #[test]
    fn braid_closures_are_valid(word in prop::collection::vec(prop_oneof![-3i64..=-1, 1i64..=3], 0..10)) {
        match parse_braid(&word, 4) {
            Ok(d) => {
                d.validate().unwrap();
                let w = wirtinger(&d);
                prop_assert!(w.abelianization().is_infinite_cyclic());
                prop_assert_eq!(parse_knot_text(&d.to_pd_text(), SourceFormat::Pd).unwrap(), d);
            }
            Err(e) => prop_assert!(matches!(e, KnotError::MultiComponent { .. }), "unexpected {:?}", e),
        }
    }

    #[test]
    fn pd_parser_never_accepts_bad_degrees(tuples in prop::collection::vec(prop::array::uniform4(1i64..=8), 0..5)) {
        let text: String = tuples.iter().map(|t| format!("X[{},{},{},{}]\n", t[0], t[1], t[2], t[3])).collect();
        if let Ok(d) = parse_knot_text(&text, SourceFormat::Pd) {
            let mut deg = vec![0; d.arc_count];
            for c in &d.crossings {
                for &a in &c.arcs {
                    deg[a] += 1;
                }
            }
            prop_assert!(deg.iter().all(|&k| k == 2) || d.crossings.is_empty());
        }
    }
}
