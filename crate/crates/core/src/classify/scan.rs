use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::lietorus::{ConstructionParams, QuantumFactor};
use crate::rootsys::RootTypeLabel;

use super::{closed_form_tuple, exceptional_rows, hermitian_residues, ClassifyError, ClosedFormInput};

/// Parameter bounds for enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub r: usize,
    pub k: usize,
    pub p: u8,
    pub q: usize,
    pub m: usize,
    /// Largest root-of-unity order for special linear quantum factors.
    pub zeta: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Self { r: 4, k: 2, p: 2, q: 2, m: 5, zeta: 6 }
    }
}

impl FromStr for Bounds {
    type Err = ClassifyError;

    /// `key=value` pairs separated by commas, e.g. `r=3,q=1`; unspecified keys keep defaults.
    fn from_str(s: &str) -> Result<Self, ClassifyError> {
        let mut b = Self::default();
        let bad = |m: String| ClassifyError::BadBound(m);
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(|| bad(format!("expected key=value, got {part:?}")))?;
            let v: u64 = value.trim().parse().map_err(|_| bad(format!("not a nonnegative integer: {value:?}")))?;
            let small = |v: u64, max: u64| if v <= max { Ok(v) } else { Err(bad(format!("{key}={v} exceeds {max}"))) };
            match key.trim() {
                "r" => b.r = small(v, 16)? as usize,
                "k" => b.k = small(v, 8)? as usize,
                "p" => b.p = small(v, 2)? as u8,
                "q" => b.q = small(v, 8)? as usize,
                "m" => b.m = small(v, 16)? as usize,
                "zeta" => b.zeta = small(v, 64)?,
                other => return Err(bad(format!("unknown key {other:?}"))),
            }
        }
        if b.r == 0 {
            return Err(bad("r must be at least 1".into()));
        }
        Ok(b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InvariantClass {
    #[serde(rename = "A")]
    SpecialLinear,
    #[serde(rename = "BC-B")]
    SpecialUnitary,
    #[serde(rename = "C")]
    SpecialSymplectic,
    #[serde(rename = "D")]
    Orthogonal,
    #[serde(rename = "exceptional")]
    Exceptional,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CollisionKey {
    #[serde(rename = "type")]
    pub root_type: RootTypeLabel,
    pub nullity: usize,
    pub crk: usize,
    pub rkv: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collision {
    pub key: CollisionKey,
    pub members: Vec<(InvariantClass, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithmeticCheck {
    pub crk: usize,
    /// Integers s ≥ 1 with s² − 1 = crk.
    pub solutions: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointnessReport {
    pub bounds: Bounds,
    pub classical_tuples: usize,
    pub exceptional_tuples: usize,
    /// Collisions between classes that must be disjoint.
    pub forbidden: Vec<Collision>,
    /// sl_2(A) against sp_2(A',-) with p' = 1: equal invariants, separated by an
    /// argument outside the invariants (central closures).
    pub exempt: Vec<Collision>,
    /// Maximal sets of exceptional rows sharing (type, nullity, crk, rkv).
    pub exceptional_groups: Vec<Vec<usize>>,
    pub exceptional_separated_by_quotient: bool,
    pub arithmetic: Vec<ArithmeticCheck>,
    pub passed: bool,
}

fn describe(p: &ConstructionParams) -> String {
    match p {
        ConstructionParams::Sl { r, quantum, q } => {
            let qs: Vec<String> = quantum.iter().map(|f| format!("{}:{}", f.order, f.exponent)).collect();
            format!("sl r={r} quantum=[{}] q={q}", qs.join(","))
        }
        ConstructionParams::Su { r, k, p, q, delta } => format!("su r={r} k={k} p={p} q={q} m={}", delta.len()),
        ConstructionParams::Sp { r, k, p, q } => format!("sp r={r} k={k} p={p} q={q}"),
        ConstructionParams::O { r, q } => format!("o r={r} q={q}"),
    }
}

/// Multisets of size `len` from 2..=max, as nondecreasing lists.
fn multisets(len: usize, max: u64) -> Vec<Vec<u64>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for tail in multisets(len - 1, max) {
        let start = tail.last().copied().unwrap_or(2);
        for x in start..=max {
            let mut v = tail.clone();
            v.push(x);
            out.push(v);
        }
    }
    out
}

/// All admissible classical parameter sets within `bounds`. Special unitary
/// sets use the first m hermitian residues as δ.
pub fn classical_parameters(bounds: &Bounds) -> Result<Vec<ConstructionParams>, ClassifyError> {
    let mut out = Vec::new();
    for r in 1..=bounds.r {
        for len in 0..=bounds.k {
            for orders in multisets(len, bounds.zeta) {
                for q in 0..=bounds.q {
                    let quantum = orders.iter().map(|&order| QuantumFactor { order, exponent: 1 }).collect();
                    out.push(ConstructionParams::Sl { r, quantum, q });
                }
            }
        }
        for k in 0..=bounds.k {
            for p in 0..=bounds.p {
                for q in 0..=bounds.q {
                    let sp = ConstructionParams::Sp { r, k, p, q };
                    if sp.validate().is_ok() {
                        out.push(sp);
                    }
                    let residues = hermitian_residues(k, p, q)?;
                    for m in 1..=bounds.m.min(residues.len()) {
                        let su = ConstructionParams::Su { r, k, p, q, delta: residues[..m].to_vec() };
                        if su.validate().is_ok() {
                            out.push(su);
                        }
                    }
                }
            }
        }
    }
    for q in 0..=bounds.q {
        for r in 4..=bounds.r.max(4) {
            out.push(ConstructionParams::O { r, q });
        }
    }
    Ok(out)
}

fn class_of(p: &ConstructionParams) -> InvariantClass {
    match p {
        ConstructionParams::Sl { .. } => InvariantClass::SpecialLinear,
        ConstructionParams::Su { .. } => InvariantClass::SpecialUnitary,
        ConstructionParams::Sp { .. } => InvariantClass::SpecialSymplectic,
        ConstructionParams::O { .. } => InvariantClass::Orthogonal,
    }
}

/// Enumerates closed-form tuples within `bounds` and all exceptional rows at
/// the nullities reached, and looks for forbidden coincidences.
pub fn disjointness_scan(bounds: &Bounds) -> Result<DisjointnessReport, ClassifyError> {
    let params = classical_parameters(bounds)?;
    // (class, description, exceptional id, member of the exempt sl_2 / sp_2 family)
    type Member = (InvariantClass, String, Option<usize>, bool);
    let mut groups: BTreeMap<CollisionKey, Vec<Member>> = BTreeMap::new();
    let mut max_nullity = 0;
    for p in &params {
        let t = closed_form_tuple(&ClosedFormInput::new(p.clone())?)?;
        max_nullity = max_nullity.max(t.nullity);
        let key = CollisionKey { root_type: t.root_type, nullity: t.nullity, crk: t.crk, rkv: t.rkv };
        let exempt = matches!(p, ConstructionParams::Sl { r: 1, .. } | ConstructionParams::Sp { r: 1, p: 1, .. });
        groups.entry(key).or_default().push((class_of(p), describe(p), None, exempt));
    }
    let rows = exceptional_rows();
    let top = max_nullity.max(rows.iter().map(|r| r.n0).max().unwrap_or(0));
    let mut exceptional_tuples = 0;
    for row in rows {
        for n in row.n0..=top {
            exceptional_tuples += 1;
            let key = CollisionKey { root_type: row.root_type, nullity: n, crk: row.crk, rkv: row.rkv.clone() };
            groups.entry(key).or_default().push((InvariantClass::Exceptional, format!("row {} n={n}", row.id), Some(row.id), false));
        }
    }

    let mut forbidden = Vec::new();
    let mut exempt = Vec::new();
    let mut id_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut separated = true;
    for (key, members) in &groups {
        let classes: BTreeSet<InvariantClass> = members.iter().map(|m| m.0).collect();
        if classes.len() > 1 {
            let c = Collision { key: key.clone(), members: members.iter().map(|m| (m.0, m.1.clone())).collect() };
            if members.iter().all(|m| m.3) {
                exempt.push(c);
            } else {
                forbidden.push(c);
            }
        }
        let ids: Vec<usize> = members.iter().filter_map(|m| m.2).collect();
        if ids.len() > 1 {
            let quotients: BTreeSet<_> = ids.iter().map(|&id| rows[id - 1].quotient.clone()).collect();
            separated &= quotients.len() == ids.len();
            id_sets.insert(ids);
        }
    }
    let maximal: Vec<Vec<usize>> = id_sets
        .iter()
        .filter(|s| !id_sets.iter().any(|t| t.len() > s.len() && s.iter().all(|x| t.contains(x))))
        .cloned()
        .collect();

    let arithmetic: Vec<ArithmeticCheck> = [14usize, 28, 52, 78, 133, 248]
        .iter()
        .map(|&crk| ArithmeticCheck {
            crk,
            solutions: (1u64..=64).filter(|s| (s * s - 1) as usize == crk).collect(),
        })
        .collect();
    let square_minus_one_clear =
        arithmetic.iter().filter(|a| a.crk == 78 || a.crk == 133).all(|a| a.solutions.is_empty());
    let expected_groups = vec![vec![20, 22, 23], vec![21, 24]];
    let groups_ok = maximal == expected_groups;
    Ok(DisjointnessReport {
        bounds: *bounds,
        classical_tuples: params.len(),
        exceptional_tuples,
        passed: forbidden.is_empty() && groups_ok && separated && square_minus_one_clear,
        forbidden,
        exempt,
        exceptional_groups: maximal,
        exceptional_separated_by_quotient: separated,
        arithmetic,
    })
}
