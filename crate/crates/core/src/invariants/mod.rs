//! Isomorphism and isotopy invariants of classical models.

mod oracle;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lietorus::{AlgebraKind, LieTorusModel, ModelError};
use crate::rootsys::{classify, Family, LengthClass, RootError, RootTypeLabel};
use crate::zlattice::{QuotientGroup, Sublattice};

pub use oracle::{centroid_oracle, OracleValue};

pub const DEFAULT_COSET_BUDGET: u64 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("[Λ:Γ] = {index} exceeds the coset budget {budget}")]
    CosetBudget { index: u64, budget: u64 },
    #[error("Λ/Γ is infinite")]
    InfiniteQuotient,
    #[error("root system: {0}")]
    Root(#[from] RootError),
    #[error("model: {0}")]
    Model(#[from] ModelError),
    #[error("roots {first:?} and {second:?} have equal length but ranks {first_rank} and {second_rank}")]
    RankMismatch { first: Vec<i64>, second: Vec<i64>, first_rank: usize, second_rank: usize },
    #[error("centroid oracle needs box radius >= 1")]
    BoxTooSmall,
}

/// The four isomorphism invariants plus the isotopy invariant Λ/Γ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantTuple {
    #[serde(rename = "type")]
    pub root_type: RootTypeLabel,
    pub nullity: usize,
    pub crk: usize,
    pub rkv: Vec<usize>,
    pub quotient: QuotientGroup,
}

/// Γ(L) inside the internal degree lattice.
pub fn centroid_support(model: &LieTorusModel) -> Sublattice {
    let torus = model.torus();
    match model.kind() {
        AlgebraKind::SpecialLinear | AlgebraKind::GeneralLinear => torus.center_support(),
        AlgebraKind::SpecialSymplectic | AlgebraKind::Orthogonal => {
            torus.hermitian_center_support().expect("skew models carry an involution")
        }
        AlgebraKind::SpecialUnitary => {
            torus.hermitian_center_support().expect("skew models carry an involution").scale(2)
        }
    }
}

/// Representatives of Λ/Γ(L), refusing more than `budget` cosets.
pub fn coset_representatives(model: &LieTorusModel, budget: u64) -> Result<Vec<Vec<i64>>, InvariantError> {
    let gamma = centroid_support(model);
    let quotient = model.lattice().relative_quotient(&gamma).map_err(|_| InvariantError::InfiniteQuotient)?;
    let index = quotient.order().ok_or(InvariantError::InfiniteQuotient)?;
    if index > budget {
        return Err(InvariantError::CosetBudget { index, budget });
    }
    model.lattice().relative_coset_representatives(&gamma).map_err(|_| InvariantError::InfiniteQuotient)
}

/// rank_C(L_α) = Σ_i dim L_α^{λ_i} over coset representatives λ_i.
pub fn rank_of_rootspace(model: &LieTorusModel, alpha: &[i64], reps: &[Vec<i64>]) -> Result<usize, InvariantError> {
    let mut total = 0;
    for lambda in reps {
        total += model.component_dim(alpha, lambda)?;
    }
    Ok(total)
}

/// Number of roots of each length class in rank-vector order.
pub fn class_counts(label: &RootTypeLabel) -> Vec<usize> {
    let l = label.rank;
    match label.family {
        Family::A | Family::D | Family::E => vec![label.root_count()],
        Family::B => vec![2 * l, 2 * l * (l - 1)],
        Family::C => vec![2 * l * (l - 1), 2 * l],
        Family::F => vec![24, 24],
        Family::G => vec![6, 6],
        Family::BC if l == 1 => vec![2, 2],
        Family::BC => vec![2 * l, 2 * l * (l - 1), 2 * l],
    }
}

/// rank_C(L_0) recovered from type, crk and rkv alone.
pub fn zero_rank_from_invariants(label: &RootTypeLabel, crk: usize, rkv: &[usize]) -> Option<usize> {
    let nonzero: usize = class_counts(label).iter().zip(rkv).map(|(n, r)| n * r).sum();
    crk.checked_sub(nonzero)
}

/// Per-model invariant computation together with the rank of L_0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantDetail {
    pub tuple: InvariantTuple,
    pub zero_rank: usize,
}

pub fn invariant_detail(model: &LieTorusModel, coset_budget: u64) -> Result<InvariantDetail, InvariantError> {
    let classification = classify(model.root_support())?;
    let reps = coset_representatives(model, coset_budget)?;
    let quotient = model
        .lattice()
        .relative_quotient(&centroid_support(model))
        .map_err(|_| InvariantError::InfiniteQuotient)?;

    let roots: Vec<&Vec<i64>> = model.root_support().roots().iter().collect();
    let ranks: Vec<usize> = roots
        .par_iter()
        .map(|a| rank_of_rootspace(model, a, &reps))
        .collect::<Result<_, _>>()?;
    let zero = vec![0; model.root_dim()];
    let zero_rank = rank_of_rootspace(model, &zero, &reps)?;

    let mut rkv = Vec::new();
    let classes = if classification.label.rkv_len() == 1 { vec![LengthClass::Short] } else { classification.classes() };
    for class in classes {
        let rep = classification.representative(class).expect("class present");
        let rep_rank = rank_of_rootspace(model, rep, &reps)?;
        // same-length roots share the rank
        for (a, r) in roots.iter().zip(&ranks) {
            let same = classification.lengths.get(*a) == Some(&class)
                || (classification.label.rkv_len() == 1 && classification.lengths.contains_key(*a));
            if same && *r != rep_rank {
                return Err(InvariantError::RankMismatch {
                    first: rep.clone(),
                    second: (*a).clone(),
                    first_rank: rep_rank,
                    second_rank: *r,
                });
            }
        }
        rkv.push(rep_rank);
    }
    let crk = zero_rank + ranks.iter().sum::<usize>();
    let tuple = InvariantTuple { root_type: classification.label, nullity: model.degree_rank(), crk, rkv, quotient };
    Ok(InvariantDetail { tuple, zero_rank })
}

pub fn invariant_tuple(model: &LieTorusModel, coset_budget: u64) -> Result<InvariantTuple, InvariantError> {
    invariant_detail(model, coset_budget).map(|d| d.tuple)
}

#[cfg(test)]
mod tests;
