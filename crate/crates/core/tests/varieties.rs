use std::path::Path;

use knotrep_algebra::{rat, ratio, BigRational, Budget, Ideal, Polynomial};
use num_traits::Zero;
use proptest::prelude::*;

use knotrep_core::finite::{for_each_hom, FiniteGroup, Perm};
use knotrep_core::knot::{parse_knot_text, Diagram, SourceFormat};
use knotrep_core::obstruction::{
    assemble_report, combine, compare_knots, knot_group, lex_compare, CombinedVerdict, LexVerdict, ModelSpec,
};
use knotrep_core::presentation::{trefoil_two_generator, wirtinger, Presentation, Word};
use knotrep_core::repvar::{
    abelian_slice, build_rep_ideal, group_ideal, variety_dimension, DimInvariant, Gauge, RepError, Target,
};

fn load(name: &str) -> Diagram {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    parse_knot_text(&std::fs::read_to_string(&path).unwrap(), SourceFormat::sniff(&path).unwrap()).unwrap()
}

const KNOTS: [&str; 4] = ["unknot.pd", "trefoil.braid", "figure8.dt", "cinquefoil.braid"];

/// Rank of the Jacobian of `gens` at `point`, by exact Gaussian elimination.
fn jacobian_rank(gens: &[Polynomial], point: &[BigRational]) -> usize {
    let n = point.len();
    let mut m: Vec<Vec<BigRational>> =
        gens.iter().map(|g| (0..n).map(|v| g.derivative(v).eval(point)).collect()).collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = &m[r][col] / &m[rank][col];
                for c in 0..n {
                    let d = &f * &m[rank][c];
                    m[r][c] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn signed_permutation_matrix(p: &Perm) -> Vec<BigRational> {
    // σ ↦ sign(σ)·P(σ) lands in SO(3)
    let n = p.degree();
    let sign = if (0..n).filter(|&i| p.images()[i] as usize != i).count() == 2 { -1 } else { 1 };
    let mut m = vec![rat(0); n * n];
    for (i, &j) in p.images().iter().enumerate() {
        m[j as usize * n + i] = rat(sign);
    }
    m
}

#[test]
fn construction_examples() {
    let unknot = Presentation::new(1, vec![]).unwrap();
    let m = build_rep_ideal(&unknot, Target::So(3), Gauge::None);
    assert_eq!((m.nvars(), m.ideal().generators().len()), (9, 7));
    let t = trefoil_two_generator();
    let m = build_rep_ideal(&t, Target::Su2, Gauge::None);
    assert_eq!((m.nvars(), m.group_equation_count(), m.relator_equation_count()), (8, 2, 4));
    let g = build_rep_ideal(&t, Target::Su2, Gauge::FixFirstGenerator);
    assert_eq!(variety_dimension(&g, &Budget::default()).variables, 6);
    assert_eq!("so5".parse::<Target>(), Err(RepError::UnsupportedN(5)));
}

#[test]
fn group_ideals_have_dimension_three() {
    let b = Budget::default();
    for t in [Target::Su2, Target::So(3)] {
        let g = group_ideal(t);
        assert_eq!(g.krull_dimension(&b).unwrap(), 3, "{t}");
        // tangent space at the identity
        let id: Vec<BigRational> = match t {
            Target::Su2 => vec![rat(1), rat(0), rat(0), rat(0)],
            _ => (0..9).map(|k| rat((k / 3 == k % 3) as i64)).collect(),
        };
        assert_eq!(id.len() - jacobian_rank(g.generators(), &id), 3, "{t}");
    }
    assert_eq!(group_ideal(Target::So(2)).krull_dimension(&b).unwrap(), 1);
}

#[test]
fn dimension_examples() {
    let b = Budget::default();
    let trivial = Presentation::new(1, vec![Word::gen(0)]).unwrap();
    assert_eq!(variety_dimension(&build_rep_ideal(&trivial, Target::So(3), Gauge::None), &b).dimension_list, vec![0]);
    let unknot = Presentation::new(1, vec![]).unwrap();
    assert_eq!(variety_dimension(&build_rep_ideal(&unknot, Target::Su2, Gauge::None), &b).dimension_list, vec![3]);
    assert_eq!(variety_dimension(&build_rep_ideal(&unknot, Target::So(3), Gauge::None), &b).dimension_list, vec![3]);
}

#[test]
fn abelian_slice_is_the_group() {
    let b = Budget::default();
    for name in KNOTS {
        let d = load(name);
        for p in [wirtinger(&d), knot_group(&d)] {
            for t in [Target::Su2, Target::So(3)] {
                let m = build_rep_ideal(&p, t, Gauge::None);
                let slice = abelian_slice(&m, &b).unwrap();
                let g = group_ideal(t);
                assert_eq!(slice, g, "{name} {t}");
                assert_eq!(slice.krull_dimension(&b).unwrap(), 3);
            }
        }
    }
    let torsion = Presentation::new(1, vec![Word::from_signed(&[1, 1])]).unwrap();
    let m = build_rep_ideal(&torsion, Target::Su2, Gauge::None);
    assert!(matches!(abelian_slice(&m, &b), Err(RepError::RelatorSurvived { relator: 0 })));
}

#[test]
fn finite_reps_are_points() {
    // every hom to S3, pushed into SO(3) by signed permutation matrices
    let s3 = FiniteGroup::by_name("S3").unwrap();
    for name in ["trefoil.braid", "figure8.dt"] {
        let p = knot_group(&load(name));
        let m = build_rep_ideal(&p, Target::So(3), Gauge::None);
        let mut seen = 0;
        for_each_hom(&p, &s3, None, 1_000_000, |im| {
            let mats: Vec<Vec<BigRational>> = im.iter().map(|&i| signed_permutation_matrix(s3.element(i))).collect();
            assert!(m.contains_point(&m.point(&mats)), "{name} {im:?}");
            seen += 1;
            true
        })
        .unwrap();
        assert!(seen >= 6);
    }
    // x ↦ -P(12), y ↦ -P(23) on the braid-relation presentation
    let t = trefoil_two_generator();
    let m = build_rep_ideal(&t, Target::So(3), Gauge::None);
    let x = signed_permutation_matrix(&Perm::from_cycles(3, &[vec![0, 1]]).unwrap());
    let y = signed_permutation_matrix(&Perm::from_cycles(3, &[vec![1, 2]]).unwrap());
    assert!(m.contains_point(&m.point(&[x.clone(), y])));
    let z = signed_permutation_matrix(&Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap());
    assert!(!m.contains_point(&m.point(&[x, z])));
    // Hurwitz units in SU(2)
    let m = build_rep_ideal(&t, Target::Su2, Gauge::None);
    let h = ratio(1, 2);
    let x = vec![h.clone(), h.clone(), h.clone(), h.clone()];
    let y = vec![h.clone(), h.clone(), -h.clone(), -h.clone()];
    assert!(m.contains_point(&m.point(&[x, y])));
}

#[test]
fn extra_relator_gives_subvariety() {
    let t = trefoil_two_generator();
    let extra = t.with_relator(Word::from_signed(&[1, 2, -1, -2])).unwrap();
    let b = Budget::default();
    for target in [Target::Su2, Target::So(3)] {
        let small = build_rep_ideal(&t, target, Gauge::None);
        let big = build_rep_ideal(&extra, target, Gauge::None);
        for g in small.ideal().generators() {
            assert!(big.ideal().generators().contains(g));
        }
    }
    let d_small = variety_dimension(&build_rep_ideal(&t, Target::Su2, Gauge::None), &b);
    let d_big = variety_dimension(&build_rep_ideal(&extra, Target::Su2, Gauge::None), &b);
    assert!(d_big.top() <= d_small.top());
    assert_eq!(d_big.dimension_list, vec![3]);
}

#[test]
fn gauge_slice_contains_unsliced_ideal() {
    let b = Budget::default();
    let t = trefoil_two_generator();
    // the ungauged SO(3) variety is out of reach for the kernel
    for target in [Target::Su2, Target::So(2)] {
        let free = build_rep_ideal(&t, target, Gauge::None);
        let fixed = build_rep_ideal(&t, target, Gauge::FixFirstGenerator);
        assert!(free.ideal().contained_in(fixed.ideal(), &b).unwrap());
        let (df, dx) = (variety_dimension(&free, &b), variety_dimension(&fixed, &b));
        if df.complete && dx.complete {
            let drop = df.top().unwrap() - dx.top().unwrap();
            assert!(drop <= fixed.gauge_equation_count(), "{target}");
        }
    }
}

#[test]
fn model_dump_is_reproducible() {
    let t = trefoil_two_generator();
    let m = build_rep_ideal(&t, Target::Su2, Gauge::FixFirstGenerator);
    let dump = m.dump();
    let (header, body) = dump.split_once('\n').unwrap();
    let v: serde_json::Value = serde_json::from_str(header).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["gauge"], "fix1");
    assert_eq!(v["variables"], 8);
    let reparsed = knotrep_algebra::parse_ideal_text(body).unwrap();
    let again = Ideal::new(reparsed.names().to_vec(), reparsed.generators().to_vec());
    assert!(again.same_ideal(m.ideal(), &Budget::default()).unwrap());
}

// ---------- comparison ----------

fn dims(list: &[usize], complete: bool) -> DimInvariant {
    DimInvariant {
        target: "SU(2)".into(),
        n: None,
        gauge: "fix1",
        variables: 0,
        dimension_list: list.to_vec(),
        certified: true,
        real_radical_caveat: false,
        budget_caveat: !complete,
        complete,
        note: None,
    }
}

fn descending() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..6, 0..5).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100_000))]

    #[test]
    fn lex_is_a_total_order(a in descending(), b in descending(), c in descending()) {
        let ab = lex_compare(&a, &b).unwrap();
        let ba = lex_compare(&b, &a).unwrap();
        let flip = |v: LexVerdict| match v {
            LexVerdict::Less => LexVerdict::Greater,
            LexVerdict::Greater => LexVerdict::Less,
            v => v,
        };
        prop_assert_eq!(ab, flip(ba));
        prop_assert_ne!(ab, LexVerdict::Incomplete);
        prop_assert_eq!(ab == LexVerdict::Equal, a == b);
        let bc = lex_compare(&b, &c).unwrap();
        if ab != LexVerdict::Greater && bc != LexVerdict::Greater {
            prop_assert_ne!(lex_compare(&a, &c).unwrap(), LexVerdict::Greater);
        }
        // padded comparison agrees with comparing -1-padded vectors
        let pad = |v: &[usize]| {
            let mut w: Vec<i64> = v.iter().map(|&x| x as i64).collect();
            w.resize(5, -1);
            w
        };
        let expected = match pad(&a).cmp(&pad(&b)) {
            std::cmp::Ordering::Less => LexVerdict::Less,
            std::cmp::Ordering::Equal => LexVerdict::Equal,
            std::cmp::Ordering::Greater => LexVerdict::Greater,
        };
        prop_assert_eq!(ab, expected);
    }
}

#[test]
fn combined_verdict_table() {
    use LexVerdict::*;
    let all = [Less, Equal, Greater, Incomplete];
    let mut lists: Vec<Vec<LexVerdict>> = vec![vec![]];
    for len in 1..=3 {
        let mut idx = vec![0; len];
        loop {
            lists.push(idx.iter().map(|&i| all[i]).collect());
            let mut k = 0;
            while k < len {
                idx[k] += 1;
                if idx[k] < 4 {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == len {
                break;
            }
        }
    }
    assert_eq!(lists.len(), 1 + 4 + 16 + 64);
    for v in &lists {
        // directions still possible after each completed entry
        let mut a_geq_b = true;
        let mut b_geq_a = true;
        let mut any = false;
        for x in v {
            match x {
                Less => {
                    a_geq_b = false;
                    any = true
                }
                Greater => {
                    b_geq_a = false;
                    any = true
                }
                Equal => any = true,
                Incomplete => {}
            }
        }
        let expected = match (any, a_geq_b, b_geq_a) {
            (false, _, _) => CombinedVerdict::Inconclusive,
            (true, true, true) => CombinedVerdict::ConsistentBothOrEqual,
            (true, true, false) => CombinedVerdict::ConsistentWithAGeqB,
            (true, false, true) => CombinedVerdict::ConsistentWithBGeqA,
            (true, false, false) => CombinedVerdict::ExcludedBothDirections,
        };
        assert_eq!(combine(v), expected, "{v:?}");
        // order does not matter
        let mut r = v.clone();
        r.reverse();
        assert_eq!(combine(&r), expected);
        if v.len() == 1 {
            assert_ne!(combine(v), CombinedVerdict::ExcludedBothDirections);
        }
    }
}

#[test]
fn reversed_across_two_models_excludes_both() {
    let report = assemble_report(
        "A",
        "B",
        vec![
            ("SO(3)".into(), dims(&[3], true), dims(&[4, 3], true)),
            ("SO(4)".into(), dims(&[6, 2], true), dims(&[6], true)),
        ],
    );
    assert_eq!(report.entries[0].verdict, LexVerdict::Less);
    assert_eq!(report.entries[1].verdict, LexVerdict::Greater);
    assert_eq!(report.combined, CombinedVerdict::ExcludedBothDirections);
    assert!(!report.heuristic);

    let partial = assemble_report(
        "A",
        "B",
        vec![
            ("SO(3)".into(), dims(&[3], true), dims(&[4, 3], true)),
            ("SO(4)".into(), dims(&[], false), dims(&[6], true)),
        ],
    );
    assert_eq!(partial.entries[1].verdict, LexVerdict::Incomplete);
    assert_eq!(partial.combined, CombinedVerdict::ConsistentWithBGeqA);
    assert!(partial.has_incomplete());
}

#[test]
fn unknot_against_itself() {
    let u = load("unknot.pd");
    let models = [ModelSpec { target: Target::Su2, gauge: Gauge::None }];
    let r = compare_knots(("unknot", &u), ("unknot", &u), &models, &Budget::default());
    assert!(r.entries.iter().all(|e| e.verdict == LexVerdict::Equal));
    assert_eq!(r.combined, CombinedVerdict::ConsistentBothOrEqual);
}

#[test]
fn trefoil_is_at_least_the_unknot() {
    let u = load("unknot.pd");
    let t = load("trefoil.braid");
    let models = [ModelSpec { target: Target::Su2, gauge: Gauge::FixFirstGenerator }];
    let r = compare_knots(("unknot", &u), ("trefoil", &t), &models, &Budget::default());
    let e = &r.entries[0];
    if e.verdict != LexVerdict::Incomplete {
        assert!(e.b.top() >= e.a.top());
        assert_ne!(r.combined, CombinedVerdict::ConsistentWithAGeqB);
    } else {
        assert!(e.a.budget_caveat || e.b.budget_caveat);
    }
    let json1 = serde_json::to_string(&r).unwrap();
    let json2 =
        serde_json::to_string(&compare_knots(("unknot", &u), ("trefoil", &t), &models, &Budget::default())).unwrap();
    assert_eq!(json1, json2);
}
