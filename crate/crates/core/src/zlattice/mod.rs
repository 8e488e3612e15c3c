//! Integer lattices: Smith normal form, quotients Z^n/Γ, congruence kernels
//! and coset enumeration.

mod lattice;
mod matrix;
mod snf;

use thiserror::Error;

pub use lattice::{congruence_kernel, QuotientGroup, Sublattice};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, Snf};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("quotient has free rank {free}; coset enumeration needs a finite quotient")]
    InfiniteQuotient { free: usize },
    #[error("inner lattice is not contained in the outer lattice")]
    NotContained,
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("coordinate does not fit in a machine integer")]
    Overflow,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotients() {
        let g = Sublattice::scaled_full(2, 2);
        assert_eq!(g.quotient_invariants(), QuotientGroup { torsion: vec![2, 2], free: 0 });
        let g = Sublattice::from_vectors(2, &[vec![2, 0], vec![0, 4]]).unwrap();
        assert_eq!(g.quotient_invariants().torsion, vec![2, 4]);
        assert_eq!(Sublattice::full(2).quotient_invariants(), QuotientGroup::trivial());
        let g = Sublattice::from_vectors(3, &[vec![1, 1, 0]]).unwrap();
        assert_eq!(g.quotient_invariants(), QuotientGroup { torsion: vec![], free: 2 });
        assert!(Sublattice::from_vectors(2, &[vec![1, 2, 3]]).is_err());
    }

    #[test]
    fn kernels() {
        let c = IntMatrix::from_i64(2, 2, &[0, 1, -1, 0]).unwrap();
        assert_eq!(congruence_kernel(&c, 2).unwrap(), Sublattice::scaled_full(2, 2));
        let c = IntMatrix::zeros(3, 3);
        assert_eq!(congruence_kernel(&c, 5).unwrap(), Sublattice::full(3));
        let c = IntMatrix::from_i64(2, 2, &[0, 2, -2, 0]).unwrap();
        assert_eq!(congruence_kernel(&c, 4).unwrap(), Sublattice::scaled_full(2, 2));
        assert_eq!(congruence_kernel(&c, 0), Err(LatticeError::ZeroModulus));
    }

    #[test]
    fn cosets() {
        let reps = Sublattice::scaled_full(2, 2).coset_representatives().unwrap();
        assert_eq!(reps.len(), 4);
        assert_eq!(reps[0], vec![0, 0]);
        let g = Sublattice::from_vectors(2, &[vec![2, 0], vec![0, 4]]).unwrap();
        assert_eq!(g.coset_representatives().unwrap().len(), 8);
        assert_eq!(Sublattice::full(1).coset_representatives().unwrap(), vec![vec![0]]);
        let g = Sublattice::from_vectors(2, &[vec![1, 0]]).unwrap();
        assert!(matches!(g.coset_representatives(), Err(LatticeError::InfiniteQuotient { free: 1 })));
    }

    #[test]
    fn relative() {
        let outer = Sublattice::scaled_full(2, 2);
        let inner = Sublattice::scaled_full(2, 4);
        assert_eq!(outer.relative_quotient(&inner).unwrap().torsion, vec![2, 2]);
        let reps = outer.relative_coset_representatives(&inner).unwrap();
        assert_eq!(reps.len(), 4);
        for r in &reps {
            assert!(outer.contains(r).unwrap());
        }
        assert_eq!(inner.relative_quotient(&outer), Err(LatticeError::NotContained));
    }

    #[test]
    fn normalization_of_cyclic_orders() {
        assert_eq!(QuotientGroup::from_cyclic_orders(&[2, 3, 3, 2]).torsion, vec![6, 6]);
        assert_eq!(QuotientGroup::from_cyclic_orders(&[1, 4]).torsion, vec![4]);
        assert_eq!(QuotientGroup::from_cyclic_orders(&[]), QuotientGroup::trivial());
    }

    #[test]
    fn mod_two_rank() {
        let m = IntMatrix::from_i64(2, 3, &[1, 0, 1, 0, 2, 0]).unwrap();
        assert_eq!(m.rank_mod_p(2), 1);
        assert_eq!(IntMatrix::identity(3).rank_mod_p(2), 3);
    }
}
