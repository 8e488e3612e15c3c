use super::*;
use crate::lietorus::QuantumFactor;

fn input(p: ConstructionParams) -> ClosedFormInput {
    ClosedFormInput::new(p).unwrap()
}

fn sp(r: usize, k: usize, p: u8, q: usize) -> ClosedFormInput {
    input(ConstructionParams::Sp { r, k, p, q })
}

#[test]
fn closed_form_examples() {
    let t = closed_form_tuple(&sp(1, 1, 2, 0)).unwrap();
    assert_eq!((t.root_type.to_string(), t.nullity, t.crk, t.rkv.clone()), ("A1".into(), 4, 28, vec![6]));
    assert_eq!(t.quotient.torsion, vec![2, 2, 2, 2]);

    let t = closed_form_tuple(&input(ConstructionParams::Su { r: 2, k: 0, p: 1, q: 0, delta: vec![vec![0]] })).unwrap();
    assert_eq!((t.root_type.to_string(), t.nullity, t.crk, t.rkv.clone()), ("BC2".into(), 1, 24, vec![2, 2, 1]));
    assert_eq!(t.quotient.torsion, vec![2]);

    let t = closed_form_tuple(&input(ConstructionParams::Sl { r: 1, quantum: vec![], q: 0 })).unwrap();
    assert_eq!((t.root_type.to_string(), t.nullity, t.crk, t.rkv.clone()), ("A1".into(), 0, 3, vec![1]));
    assert_eq!(t.quotient, QuotientGroup::trivial());

    let t = closed_form_tuple(&sp(3, 0, 0, 0)).unwrap();
    assert_eq!((t.crk, t.rkv.clone()), (21, vec![1, 1]));
    let t = closed_form_tuple(&input(ConstructionParams::O { r: 4, q: 0 })).unwrap();
    assert_eq!((t.crk, t.rkv.clone()), (28, vec![1]));
    let q = QuantumFactor { order: 2, exponent: 1 };
    let t = closed_form_tuple(&input(ConstructionParams::Sl { r: 2, quantum: vec![q], q: 0 })).unwrap();
    assert_eq!((t.crk, t.rkv.clone(), t.quotient.torsion.clone()), (35, vec![4], vec![2, 2]));
}

#[test]
fn inadmissible_inputs_mirror_construct() {
    let err = ClosedFormInput::new(ConstructionParams::Sp { r: 2, k: 1, p: 0, q: 0 }).unwrap_err();
    assert!(matches!(err, ClassifyError::Construction(ConstructionError::SymplecticExcluded { .. })));
}

#[test]
fn f_values() {
    assert_eq!(f_value(0, 0), 1);
    assert_eq!(f_value(1, 0), 1);
    assert_eq!(f_value(0, 1), 1);
    assert_eq!(f_value(1, 2), 6);
    assert_eq!(f_value(0, 2), 3);
    assert!(f_injectivity_scan(12).unwrap().passed);
    assert!(f_injectivity_scan(2).unwrap().passed);
    assert!(matches!(f_injectivity_scan(1), Err(ClassifyError::BadBound(_))));
}

#[test]
fn f_is_the_long_rank_entry() {
    for k in 0..4 {
        for p in [0u8, 2] {
            let t = closed_form_tuple(&sp(3, k, p, 0)).unwrap();
            assert_eq!(*t.rkv.last().unwrap() as u64, f_value(k, p));
        }
    }
}

#[test]
fn decisions() {
    let v = |a, b| decide_isomorphic(&a, &b).unwrap().verdict;
    assert_eq!(v(sp(3, 1, 0, 0), sp(3, 1, 0, 0)), Verdict::Isomorphic);
    assert_eq!(v(sp(3, 1, 0, 0), sp(3, 0, 2, 0)), Verdict::NotIsomorphic);
    let o = |r, q| input(ConstructionParams::O { r, q });
    assert_eq!(v(o(4, 2), o(5, 2)), Verdict::NotIsomorphic);
    let sl = |e| input(ConstructionParams::Sl { r: 2, quantum: vec![QuantumFactor { order: 5, exponent: e }], q: 0 });
    assert!(matches!(v(sl(1), sl(2)), Verdict::Undecided(_)));
    assert_eq!(v(sp(3, 1, 0, 0), o(4, 2)), Verdict::NotIsomorphic);
    let d = decide_isomorphic(&sp(3, 1, 0, 0), &sp(3, 0, 2, 0)).unwrap();
    assert_eq!(d.invariants_agree, Some(true));
    let json = serde_json::to_value(decide_isomorphic(&sl(1), &sl(2)).unwrap()).unwrap();
    assert_eq!(json["verdict"], "UNDECIDED");
    assert!(json["reason"].is_string());
}

#[test]
fn exceptional_table() {
    assert_eq!(exceptional_rows().len(), 27);
    for r in exceptional_rows() {
        assert!([14, 28, 52, 78, 133, 248].contains(&r.crk));
        assert_eq!(r.rkv.len(), r.root_type.rkv_len(), "row {}", r.id);
    }
    let row7 = exceptional_lookup(&ExceptionalFilter { id: Some(7), ..Default::default() });
    assert_eq!(row7[0].root_type.to_string(), "G2");
    assert_eq!((row7[0].crk, row7[0].rkv.clone()), (14, vec![1, 1]));
    let bc1: Vec<usize> = exceptional_lookup(&ExceptionalFilter {
        root_type: Some("BC1".parse().unwrap()),
        crk: Some(133),
        ..Default::default()
    })
    .iter()
    .map(|r| r.id)
    .collect();
    assert_eq!(bc1, vec![17, 20, 22, 23]);
    assert!(exceptional_lookup(&ExceptionalFilter { crk: Some(999), ..Default::default() }).is_empty());
    let row1 = &exceptional_lookup(&ExceptionalFilter { id: Some(1), ..Default::default() })[0];
    assert_eq!((row1.crk, row1.rkv.clone(), row1.quotient.torsion.clone()), (133, vec![27], vec![3, 3, 3]));
}

#[test]
fn disjointness_default_bounds() {
    let report = disjointness_scan(&Bounds::default()).unwrap();
    assert!(report.forbidden.is_empty(), "{:?}", report.forbidden);
    assert_eq!(report.exceptional_groups, vec![vec![20, 22, 23], vec![21, 24]]);
    assert!(report.exceptional_separated_by_quotient);
    assert!(report.passed);
    for a in report.arithmetic.iter().filter(|a| a.crk == 78 || a.crk == 133) {
        assert!(a.solutions.is_empty());
    }
    // the sl_2 / sp_2 (p = 1) coincidence is present and exempt
    assert!(!report.exempt.is_empty());
}

#[test]
fn bounds_parsing() {
    let b: Bounds = "r=3, q=1".parse().unwrap();
    assert_eq!((b.r, b.q, b.k), (3, 1, 2));
    assert!("r=0".parse::<Bounds>().is_err());
    assert!("x=1".parse::<Bounds>().is_err());
    assert!("r".parse::<Bounds>().is_err());
    assert!("p=3".parse::<Bounds>().is_err());
    assert_eq!("".parse::<Bounds>().unwrap(), Bounds::default());
}

#[test]
fn grid_has_enough_delta_configurations() {
    let grid = reproduction_grid(&Bounds::default());
    let configs: std::collections::BTreeSet<Vec<Vec<i64>>> = grid
        .iter()
        .filter_map(|p| match p {
            ConstructionParams::Su { delta, .. } if delta.len() > 1 => Some(delta.clone()),
            _ => None,
        })
        .collect();
    assert!(configs.len() >= 6, "{configs:?}");
    assert!(grid.iter().filter_map(su_ranks).any(|(_, b)| b > 0));
}
