//! Associative tori over Q(ζ_M): twisted group algebras of Z^n, optionally
//! with an involution in tensor normal form.

mod element;
mod spec;

use thiserror::Error;

pub use element::TorusElement;
pub use spec::{BasicTag, FactorTag, InvolutionSpec, TorusSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("cyclotomic order {0} exceeds the supported maximum {max}", max = crate::exactnum::MAX_ORDER)]
    OrderTooLarge(u64),
    #[error("quantum parameter must be a root of unity different from 1")]
    TrivialQuantum,
    #[error("commutation matrix must be {rank}x{rank}")]
    Shape { rank: usize },
    #[error("commutation exponents not antisymmetric at ({i},{j})")]
    NotAntisymmetric { i: usize, j: usize },
    #[error("invalid involution: {0}")]
    BadInvolution(String),
    #[error("torus has no involution")]
    NoInvolution,
    #[error("degree has length {got}, expected {expected}")]
    DegreeLength { expected: usize, got: usize },
    #[error("coefficient lives in Q(zeta_{got}), torus is over Q(zeta_{expected})")]
    CoefficientField { expected: u64, got: u64 },
    #[error("elements belong to different tori")]
    SpecMismatch,
    #[error("element is not a nonzero monomial")]
    NotMonomial,
    #[error("degrees must both be skew")]
    NotSkew,
    #[error("lattice computation failed: {0}")]
    Lattice(String),
}

/// Bracket space criterion: x ∈ [A,A] iff every central-degree component is 0.
pub fn bracket_space_contains(x: &TorusElement) -> bool {
    x.in_bracket_space()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactnum::Cyclotomic;
    use crate::zlattice::Sublattice;

    fn q_minus_one() -> Arc<TorusSpec> {
        Arc::new(TorusSpec::make_basic(BasicTag::Quantum { order: 2, exponent: 1 }).unwrap())
    }

    #[test]
    fn quantum_relation() {
        let s = q_minus_one();
        assert_eq!(s.comm_exponents(), &[vec![0, 1], vec![1, 0]]);
        let t1 = TorusElement::unit_monomial(&s, vec![1, 0]).unwrap();
        let t2 = TorusElement::unit_monomial(&s, vec![0, 1]).unwrap();
        assert_eq!(t1.try_mul(&t2).unwrap(), t2.try_mul(&t1).unwrap().neg());
        let z5 = TorusSpec::make_basic(BasicTag::Quantum { order: 5, exponent: 2 }).unwrap();
        let z5 = Arc::new(z5);
        let a = TorusElement::unit_monomial(&z5, vec![1, 0]).unwrap();
        let b = TorusElement::unit_monomial(&z5, vec![0, 1]).unwrap();
        let zeta = Cyclotomic::root_of_unity(5, 2).unwrap();
        assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap().scale(&zeta));
        assert_eq!(
            TorusSpec::make_basic(BasicTag::Quantum { order: 3, exponent: 3 }),
            Err(TorusError::TrivialQuantum)
        );
    }

    #[test]
    fn monomial_units() {
        let s = Arc::new(
            TorusSpec::make_basic(BasicTag::Quantum { order: 3, exponent: 1 })
                .unwrap()
                .tensor(&TorusSpec::make_basic(BasicTag::Laurent(1)).unwrap()),
        );
        let x = TorusElement::unit_monomial(&s, vec![2, -3, 1]).unwrap();
        let inv = x.monomial_inverse().unwrap();
        assert_eq!(x.try_mul(&inv).unwrap(), TorusElement::one(&s));
        assert_eq!(inv.try_mul(&x).unwrap(), TorusElement::one(&s));
    }

    #[test]
    fn tensor_shapes() {
        let a = TorusSpec::make_basic(BasicTag::Quantum { order: 2, exponent: 1 }).unwrap();
        let r1 = TorusSpec::make_basic(BasicTag::Laurent(1)).unwrap();
        let t = a.tensor(&r1);
        assert_eq!(t.rank(), 3);
        assert_eq!(t.comm_exponents()[2], vec![0, 0, 0]);
        let nat = TorusSpec::make_basic(BasicTag::QMinus1Standard).unwrap();
        let star = TorusSpec::make_basic(BasicTag::QMinus1Reversal).unwrap();
        assert_eq!(nat.tensor(&star).involution().unwrap().signs, vec![-1, -1, 1, 1]);
        let z3 = TorusSpec::make_basic(BasicTag::Quantum { order: 3, exponent: 1 }).unwrap();
        let z4 = TorusSpec::make_basic(BasicTag::Quantum { order: 4, exponent: 1 }).unwrap();
        assert_eq!(z3.tensor(&z4).cyclo_order(), 12);
    }

    #[test]
    fn involution_signs() {
        let star = TorusSpec::make_basic(BasicTag::QMinus1Reversal).unwrap();
        let nat = TorusSpec::make_basic(BasicTag::QMinus1Standard).unwrap();
        assert_eq!(star.involution_factor(&[1, 1]), Ok(-1));
        assert_eq!(nat.involution_factor(&[1, 1]), Ok(-1));
        assert_eq!(nat.involution_factor(&[0, 0]), Ok(1));
        assert_eq!(nat.involution_factor(&[1, 0]), Ok(-1));
        assert_eq!(star.involution_factor(&[1, 0]), Ok(1));
    }

    #[test]
    fn centre_supports() {
        assert_eq!(q_minus_one().center_support(), Sublattice::scaled_full(2, 2));
        let r3 = TorusSpec::make_basic(BasicTag::Laurent(3)).unwrap();
        assert_eq!(r3.center_support(), Sublattice::full(3));
        let z4 = TorusSpec::make_basic(BasicTag::Quantum { order: 4, exponent: 1 }).unwrap();
        assert_eq!(z4.center_support(), Sublattice::scaled_full(2, 4));

        let nat = TorusSpec::make_basic(BasicTag::QMinus1Standard).unwrap();
        assert_eq!(nat.hermitian_center_support().unwrap(), Sublattice::scaled_full(2, 2));
        let r1 = TorusSpec::make_basic(BasicTag::R1Involution).unwrap();
        assert_eq!(r1.hermitian_center_support().unwrap(), Sublattice::scaled_full(1, 2));
        assert_eq!(r3.hermitian_center_support().unwrap(), Sublattice::full(3));
    }

    #[test]
    fn bracket_space() {
        let s = q_minus_one();
        assert!(bracket_space_contains(&TorusElement::unit_monomial(&s, vec![1, 0]).unwrap()));
        assert!(!bracket_space_contains(&TorusElement::one(&s)));
        assert!(!bracket_space_contains(&TorusElement::unit_monomial(&s, vec![2, 0]).unwrap()));
    }

    #[test]
    fn skew_square_lemma_and_its_exception() {
        let nat = TorusSpec::make_basic(BasicTag::QMinus1Standard).unwrap();
        assert_eq!(nat.skew_bracket_in_symmetric_square(&[1, 0], &[0, 1]), Ok(false));
        let star = TorusSpec::make_basic(BasicTag::QMinus1Reversal).unwrap();
        let both = nat.tensor(&star);
        assert_eq!(both.skew_bracket_in_symmetric_square(&[1, 0, 0, 0], &[0, 1, 0, 0]), Ok(true));
    }
}
