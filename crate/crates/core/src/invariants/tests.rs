use super::*;
use crate::lietorus::{ConstructionParams, QuantumFactor};

fn build(p: ConstructionParams) -> LieTorusModel {
    LieTorusModel::construct(p).unwrap()
}

fn sl(r: usize, quantum: &[(u64, i64)], q: usize) -> LieTorusModel {
    let quantum = quantum.iter().map(|&(order, exponent)| QuantumFactor { order, exponent }).collect();
    build(ConstructionParams::Sl { r, quantum, q })
}

fn tuple(m: &LieTorusModel) -> InvariantTuple {
    invariant_tuple(m, DEFAULT_COSET_BUDGET).unwrap()
}

#[test]
fn sl3_over_quantum_minus_one() {
    let t = tuple(&sl(2, &[(2, 1)], 0));
    assert_eq!(t.root_type.to_string(), "A2");
    assert_eq!((t.nullity, t.crk, t.rkv.clone()), (2, 35, vec![4]));
    assert_eq!(t.quotient.torsion, vec![2, 2]);
}

#[test]
fn symplectic_rows() {
    let t = tuple(&build(ConstructionParams::Sp { r: 3, k: 0, p: 0, q: 0 }));
    assert_eq!((t.root_type.to_string(), t.nullity, t.crk, t.rkv.clone()), ("C3".into(), 0, 21, vec![1, 1]));
    assert_eq!(t.quotient, QuotientGroup::trivial());
    let m = build(ConstructionParams::Sp { r: 3, k: 1, p: 0, q: 0 });
    let t = tuple(&m);
    assert_eq!((t.nullity, t.crk, t.rkv.clone()), (2, 66, vec![4, 1]));
    assert_eq!(t.quotient.torsion, vec![2, 2]);
    let reps = coset_representatives(&m, DEFAULT_COSET_BUDGET).unwrap();
    assert_eq!(rank_of_rootspace(&m, &[2, 0, 0], &reps).unwrap(), 1);
    assert_eq!(rank_of_rootspace(&m, &[1, -1, 0], &reps).unwrap(), 4);
}

#[test]
fn orthogonal_row() {
    let t = tuple(&build(ConstructionParams::O { r: 4, q: 2 }));
    assert_eq!((t.root_type.to_string(), t.nullity, t.crk, t.rkv.clone()), ("D4".into(), 2, 28, vec![1]));
    assert_eq!(t.quotient, QuotientGroup::trivial());
}

#[test]
fn centroid_supports() {
    let m = sl(1, &[(2, 1)], 0);
    assert_eq!(centroid_support(&m), Sublattice::scaled_full(2, 2));
    let m = build(ConstructionParams::O { r: 4, q: 3 });
    assert_eq!(centroid_support(&m), Sublattice::full(3));
    let m = build(ConstructionParams::Sp { r: 3, k: 1, p: 0, q: 0 });
    assert_eq!(centroid_support(&m), Sublattice::scaled_full(2, 2));
}

#[test]
fn budget_is_enforced() {
    let m = sl(1, &[(2, 1)], 0);
    assert!(matches!(invariant_tuple(&m, 3), Err(InvariantError::CosetBudget { index: 4, budget: 3 })));
}

#[test]
fn zero_rank_is_redundant() {
    for m in [sl(2, &[(2, 1)], 1), build(ConstructionParams::Sp { r: 2, k: 1, p: 1, q: 0 })] {
        let d = invariant_detail(&m, DEFAULT_COSET_BUDGET).unwrap();
        assert_eq!(zero_rank_from_invariants(&d.tuple.root_type, d.tuple.crk, &d.tuple.rkv), Some(d.zero_rank));
    }
}

fn oracle_matches(m: &LieTorusModel, b: i64) {
    let gamma = centroid_support(m);
    let dims = centroid_oracle(m, b).unwrap();
    for (g, v) in dims {
        let expect = if gamma.contains(&g).unwrap() { OracleValue::Dim(1) } else { OracleValue::Dim(0) };
        assert_eq!(v, expect, "{:?} at γ = {g:?}", m.params());
    }
}

#[test]
fn centroid_oracle_sl2() {
    oracle_matches(&sl(1, &[], 0), 1);
    let dims = centroid_oracle(&sl(1, &[], 0), 1).unwrap();
    assert_eq!(dims.len(), 1);
    assert!(matches!(centroid_oracle(&sl(1, &[], 0), 0), Err(InvariantError::BoxTooSmall)));
}

#[test]
fn centroid_oracle_quantum_plane() {
    oracle_matches(&sl(1, &[(2, 1)], 0), 2);
}

#[test]
fn centroid_oracle_symplectic() {
    oracle_matches(&build(ConstructionParams::Sp { r: 1, k: 1, p: 1, q: 0 }), 2);
}

#[test]
fn centroid_oracle_unitary_half_degrees() {
    oracle_matches(&build(ConstructionParams::Su { r: 1, k: 1, p: 0, q: 0, delta: vec![vec![0, 0]] }), 2);
}
