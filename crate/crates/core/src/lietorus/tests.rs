use super::*;
use crate::rootsys::{classify, Family as RootFamily, RootTypeLabel};

fn sl(r: usize, quantum: &[(u64, i64)], q: usize) -> LieTorusModel {
    let quantum = quantum.iter().map(|&(order, exponent)| QuantumFactor { order, exponent }).collect();
    LieTorusModel::construct(ConstructionParams::Sl { r, quantum, q }).unwrap()
}

fn sp(r: usize, k: usize, p: u8, q: usize) -> LieTorusModel {
    LieTorusModel::construct(ConstructionParams::Sp { r, k, p, q }).unwrap()
}

fn su(r: usize, k: usize, p: u8, q: usize, delta: Vec<Vec<i64>>) -> LieTorusModel {
    LieTorusModel::construct(ConstructionParams::Su { r, k, p, q, delta }).unwrap()
}

fn label(m: &LieTorusModel) -> RootTypeLabel {
    classify(m.root_support()).unwrap().label
}

fn e(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

#[test]
fn untwisted_sl2() {
    let m = sl(1, &[], 0);
    assert_eq!(m.size(), 2);
    assert_eq!(m.component_dim(&[0, 0], &[]).unwrap(), 1);
    assert_eq!(label(&m), RootTypeLabel::new(RootFamily::A, 1).unwrap());
    let e12 = m.component_basis(&[1, -1], &[]).unwrap().remove(0);
    let e21 = m.component_basis(&[-1, 1], &[]).unwrap().remove(0);
    let h = m.bracket(&e12, &e21);
    assert_eq!(m.component(&[0, 0], &[]).unwrap().coordinates(&h).map(|c| c.len()), Some(1));
    assert!(verify_axioms(&m, 0).passed());
}

#[test]
fn sp6_over_quantum_minus_one() {
    let m = sp(3, 1, 0, 0);
    assert_eq!(m.size(), 6);
    assert_eq!(m.degree_rank(), 2);
    assert_eq!(label(&m), RootTypeLabel::new(RootFamily::C, 3).unwrap());
}

#[test]
fn excluded_symplectic() {
    let err = LieTorusModel::construct(ConstructionParams::Sp { r: 2, k: 1, p: 0, q: 0 }).unwrap_err();
    assert!(matches!(err, ConstructionError::SymplecticExcluded { .. }));
    let err = LieTorusModel::construct(ConstructionParams::O { r: 2, q: 0 }).unwrap_err();
    assert!(matches!(err, ConstructionError::RankTooSmall { .. }));
}

#[test]
fn long_root_space_is_hermitian_part() {
    let m = sp(1, 1, 2, 0);
    let n = m.degree_rank();
    let torus = m.torus().clone();
    for lambda in m.box_degrees(2) {
        let d = m.component_dim(&[2], &lambda).unwrap();
        let herm = torus.involution_factor(&lambda).unwrap() == 1;
        assert_eq!(d == 1, herm, "λ = {lambda:?}");
        assert!(d <= 1);
    }
    assert_eq!(n, 4);
}

#[test]
fn sl2_over_quantum_plane_root_spaces() {
    let m = sl(1, &[(2, 1)], 0);
    for lambda in m.box_degrees(2) {
        assert_eq!(m.component_dim(&[1, -1], &lambda).unwrap(), 1);
    }
}

#[test]
fn unitary_seven_by_seven() {
    let delta = vec![vec![0, 0, 0], e(3, 0), e(3, 1), e(3, 2), vec![1, 1, 0]];
    let m = su(1, 0, 0, 3, delta.clone());
    assert_eq!(m.size(), 7);
    assert_eq!(label(&m), RootTypeLabel::new(RootFamily::A, 1).unwrap());
    assert_eq!(m.root_support().roots().len(), 2);
    let short = LieTorusModel::construct(ConstructionParams::Su { r: 1, k: 0, p: 0, q: 3, delta: delta[..4].to_vec() });
    assert!(matches!(short, Err(ConstructionError::TooFewDiagonalEntries { m: 4 })));
    assert!(m.component(&[1], &[1, 1, 1]).is_ok());
    let thin = su(1, 1, 0, 0, vec![vec![0, 0]]);
    assert!(matches!(thin.component(&[1], &[1, 0]), Err(ModelError::DegreeNotInLattice(_))));
}

#[test]
fn unitary_nontrivial_involution_is_bc() {
    let m = su(1, 1, 0, 0, vec![vec![0, 0]]);
    assert_eq!(label(&m), RootTypeLabel::new(RootFamily::BC, 1).unwrap());
}

#[test]
fn orthogonal_d4() {
    let m = LieTorusModel::construct(ConstructionParams::O { r: 4, q: 1 }).unwrap();
    assert_eq!(label(&m), RootTypeLabel::new(RootFamily::D, 4).unwrap());
    assert_eq!(m.root_support().roots().len(), 24);
}

#[test]
fn cartan_eigenvectors() {
    let m = sp(2, 1, 1, 0);
    let hs = m.cartan_basis();
    for alpha in m.root_support().roots() {
        for lambda in m.box_degrees(1) {
            for x in m.component_basis(alpha, &lambda).unwrap() {
                for (k, h) in hs.iter().enumerate() {
                    let c = crate::exactnum::Cyclotomic::from_integer(m.torus().cyclo_order(), alpha[k]).unwrap();
                    assert_eq!(m.bracket(h, &x), x.scale(&c));
                }
            }
        }
    }
}

#[test]
fn controls() {
    let gl = general_linear(1, vec![QuantumFactor { order: 2, exponent: 1 }], 0).unwrap();
    let report = verify_axioms(&gl, 1);
    assert_eq!(report.status("centreless"), Some(AxiomStatus::Fail));
    let o4 = orthogonal_unchecked(2, 0).unwrap();
    assert!(classify(o4.root_support()).is_err());
}

#[test]
fn axioms_hold_on_small_models() {
    for m in [sl(2, &[(2, 1)], 0), sp(1, 1, 2, 0), su(1, 1, 0, 0, vec![vec![0, 0]])] {
        // doubled models need radius 2 to reach 2e_i
        let report = verify_axioms(&m, if m.is_doubled() { 2 } else { 1 });
        assert!(report.passed(), "{:?}: {:?}", m.params(), report);
    }
}
