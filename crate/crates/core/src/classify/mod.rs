//! Closed-form invariants, the exceptional table, isomorphism decisions and
//! disjointness scans.

mod decide;
mod exceptional;
mod harness;
mod scan;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::invariants::InvariantTuple;
use crate::lietorus::{involution_torus, ConstructionError, ConstructionParams};
use crate::rootsys::{Family as RootFamily, RootError, RootTypeLabel};
use crate::zlattice::{IntMatrix, QuotientGroup};

pub use decide::{decide_isomorphic, Verdict};
pub use exceptional::{exceptional_lookup, exceptional_rows, ExceptionalFilter, ExceptionalRow};
pub use harness::{reproduction_grid, run_tables, su_ranks, TablesReport, TablesRow};
pub use scan::{
    classical_parameters, disjointness_scan, ArithmeticCheck, Bounds, Collision, CollisionKey, DisjointnessReport,
    InvariantClass,
};
pub use decide::Decision;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("inadmissible parameters: {0}")]
    Construction(#[from] ConstructionError),
    #[error("root type: {0}")]
    Root(#[from] RootError),
    #[error("bad bound: {0}")]
    BadBound(String),
}

/// Admissible parameters together with the derived integers d and s.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosedFormInput {
    pub params: ConstructionParams,
    pub d: u64,
    pub s: u64,
}

impl ClosedFormInput {
    pub fn new(params: ConstructionParams) -> Result<Self, ClassifyError> {
        params.validate()?;
        let r = params.r() as u64;
        let (d, s) = match &params {
            ConstructionParams::Sl { quantum, .. } => {
                let d: u64 = quantum.iter().map(|f| f.root_order()).product();
                (d, (r + 1) * d)
            }
            ConstructionParams::Su { k, p, delta, .. } => {
                let d = 1u64 << (k + (*p as usize) / 2);
                (d, (2 * r + delta.len() as u64) * d)
            }
            ConstructionParams::Sp { k, p, .. } => {
                let d = 1u64 << (k + (*p as usize) / 2);
                (d, 2 * r * d)
            }
            ConstructionParams::O { .. } => (1, 2 * r),
        };
        Ok(Self { params, d, s })
    }
}

/// (-1)^k as an i64.
fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// s(s + ε)/2.
fn half(s: u64, eps: i64) -> usize {
    let s = s as i64;
    (s * (s + eps) / 2) as usize
}

/// Z₂-dimensions (a, b) spanned by δ in L/2L and in L/(2L + L_{k+2}).
pub fn delta_ranks(k: usize, p: u8, delta: &[Vec<i64>]) -> (usize, usize) {
    if delta.is_empty() {
        return (0, 0);
    }
    let n = delta[0].len();
    let head = 2 * k + p as usize;
    let full: Vec<i64> = delta.iter().flatten().copied().collect();
    let a = if n == 0 { 0 } else { IntMatrix::from_i64(delta.len(), n, &full).expect("shape").rank_mod_p(2) };
    let proj: Vec<i64> = delta.iter().flat_map(|d| d[..head].iter().copied()).collect();
    let b = if head == 0 { 0 } else { IntMatrix::from_i64(delta.len(), head, &proj).expect("shape").rank_mod_p(2) };
    (a, b)
}

/// The invariant tuple given by the closed-form tables.
pub fn closed_form_tuple(input: &ClosedFormInput) -> Result<InvariantTuple, ClassifyError> {
    let (d, s) = (input.d as usize, input.s);
    let r = input.params.r();
    // entries marked as omitted for r = 1 are pushed through `hat`
    let hat = |v: &mut Vec<usize>, x: usize| {
        if r > 1 {
            v.push(x);
        }
    };
    let tuple = match &input.params {
        ConstructionParams::Sl { quantum, q, .. } => {
            let orders: Vec<u64> = quantum.iter().flat_map(|f| [f.root_order(), f.root_order()]).collect();
            InvariantTuple {
                root_type: RootTypeLabel::new(RootFamily::A, r)?,
                nullity: 2 * quantum.len() + q,
                crk: (s * s - 1) as usize,
                rkv: vec![d * d],
                quotient: QuotientGroup::from_cyclic_orders(&orders),
            }
        }
        ConstructionParams::Su { k, p, q, delta, .. } => {
            let m = delta.len();
            let untwisted = (*k, *p) == (0, 0);
            let family = if untwisted { RootFamily::B } else { RootFamily::BC };
            let crk = if *p == 1 { (s * s - 1) as usize } else { half(s, -sign(*k)) };
            let mut rkv = Vec::new();
            if untwisted {
                rkv.push(m);
                hat(&mut rkv, 1);
            } else if *p != 1 {
                rkv.push(m * d * d);
                hat(&mut rkv, d * d);
                rkv.push(half(d as u64, -sign(*k)));
            } else {
                rkv.push(2 * m * d * d);
                hat(&mut rkv, 2 * d * d);
                rkv.push(d * d);
            }
            let (a, b) = delta_ranks(*k, *p, delta);
            let mut orders = vec![2u64; 2 * k + *p as usize + a - 2 * b];
            orders.extend(std::iter::repeat_n(4u64, b));
            InvariantTuple {
                root_type: RootTypeLabel::new(family, r)?,
                nullity: 2 * k + *p as usize + q,
                crk,
                rkv,
                quotient: QuotientGroup::from_cyclic_orders(&orders),
            }
        }
        ConstructionParams::Sp { k, p, q, .. } => {
            let crk = if *p == 1 { (s * s - 1) as usize } else { half(s, sign(*k)) };
            let mut rkv = Vec::new();
            if *p != 1 {
                hat(&mut rkv, d * d);
                rkv.push(half(d as u64, sign(*k)));
            } else {
                hat(&mut rkv, 2 * d * d);
                rkv.push(d * d);
            }
            InvariantTuple {
                root_type: RootTypeLabel::new(RootFamily::C, r)?,
                nullity: 2 * k + *p as usize + q,
                crk,
                rkv,
                quotient: QuotientGroup::from_cyclic_orders(&vec![2; 2 * k + *p as usize]),
            }
        }
        ConstructionParams::O { q, .. } => InvariantTuple {
            root_type: RootTypeLabel::new(RootFamily::D, r)?,
            nullity: *q,
            crk: half(s, -1),
            rkv: vec![1],
            quotient: QuotientGroup::trivial(),
        },
    };
    Ok(tuple)
}

/// The function f(k, p) separating symplectic long-root ranks.
pub fn f_value(k: usize, p: u8) -> u64 {
    if p == 1 {
        1u64 << (2 * k)
    } else {
        let e = k + (p as usize) / 2;
        let d = 1i64 << e;
        ((d * (d + sign(k))) / 2) as u64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectivityReport {
    pub k_max: usize,
    /// Arguments with f = 1.
    pub ones: Vec<(usize, u8)>,
    /// Distinct arguments outside the three exceptions sharing a value.
    pub collisions: Vec<((usize, u8), (usize, u8))>,
    pub passed: bool,
}

/// Checks that f equals 1 exactly on (0,0), (1,0), (0,1) and is injective elsewhere.
pub fn f_injectivity_scan(k_max: usize) -> Result<InjectivityReport, ClassifyError> {
    if k_max < 2 {
        return Err(ClassifyError::BadBound(format!("k_max must be at least 2, got {k_max}")));
    }
    let args: Vec<(usize, u8)> = (0..=k_max).flat_map(|k| (0..=2u8).map(move |p| (k, p))).collect();
    let ones: Vec<(usize, u8)> = args.iter().copied().filter(|&(k, p)| f_value(k, p) == 1).collect();
    let exceptions = [(0, 0), (1, 0), (0, 1)];
    let rest: Vec<(usize, u8)> = args.iter().copied().filter(|a| !exceptions.contains(a)).collect();
    let mut collisions = Vec::new();
    for (i, a) in rest.iter().enumerate() {
        for b in &rest[i + 1..] {
            if f_value(a.0, a.1) == f_value(b.0, b.1) {
                collisions.push((*a, *b));
            }
        }
    }
    let mut sorted_ones = ones.clone();
    sorted_ones.sort();
    let mut expected = exceptions.to_vec();
    expected.sort();
    let passed = sorted_ones == expected && collisions.is_empty();
    Ok(InjectivityReport { k_max, ones, collisions, passed })
}

/// Residues in {0,1}^n of hermitian degrees for the involution torus, in
/// lexicographic order; these index the admissible δ classes modulo 2L.
pub fn hermitian_residues(k: usize, p: u8, q: usize) -> Result<Vec<Vec<i64>>, ClassifyError> {
    let torus = involution_torus(k, p, q)?;
    let n = torus.rank();
    let mut out: Vec<Vec<i64>> = (0u64..1 << n)
        .map(|mask| (0..n).map(|i| ((mask >> (n - 1 - i)) & 1) as i64).collect::<Vec<_>>())
        .filter(|v| torus.involution_factor(v).expect("involution present") == 1)
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests;
