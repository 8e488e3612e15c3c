//! The construction-versus-closed-form reproduction harness.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::invariants::{invariant_tuple, InvariantTuple, DEFAULT_COSET_BUDGET};
use crate::io::ParamsRepr;
use crate::lietorus::{ConstructionParams, LieTorusModel, QuantumFactor};

use super::{
    closed_form_tuple, delta_ranks, disjointness_scan, f_injectivity_scan, hermitian_residues, Bounds, ClassifyError,
    ClosedFormInput, DisjointnessReport, InjectivityReport,
};

/// How δ is drawn from the hermitian residues.
#[derive(Clone, Copy)]
enum DeltaStyle {
    /// The first m residues in lexicographic order; favours the L_{k+2} part.
    Leading,
    /// 0 followed by the last m-1 residues; favours the twisted part, so b > 0.
    Trailing,
}

fn delta_config(k: usize, p: u8, q: usize, m: usize, style: DeltaStyle) -> Option<Vec<Vec<i64>>> {
    let residues = hermitian_residues(k, p, q).ok()?;
    if m == 0 || m > residues.len() {
        return None;
    }
    Some(match style {
        DeltaStyle::Leading => residues[..m].to_vec(),
        DeltaStyle::Trailing => {
            let mut d = vec![residues[0].clone()];
            d.extend(residues[residues.len() + 1 - m..].iter().cloned());
            d
        }
    })
}

/// The desk-scale grid on which constructions are compared with the closed forms.
pub fn reproduction_grid(bounds: &Bounds) -> Vec<ConstructionParams> {
    let f = |order, exponent| QuantumFactor { order, exponent };
    let quantum_choices: [Vec<QuantumFactor>; 5] =
        [vec![], vec![f(2, 1)], vec![f(3, 1)], vec![f(4, 1)], vec![f(2, 1), f(2, 1)]];
    let mut grid = Vec::new();
    for r in 1..=3 {
        for quantum in &quantum_choices {
            for q in 0..=1 {
                grid.push(ConstructionParams::Sl { r, quantum: quantum.clone(), q });
            }
        }
    }
    for r in 1..=3 {
        for k in 0..=1 {
            for p in 0..=2 {
                for q in 0..=1 {
                    grid.push(ConstructionParams::Sp { r, k, p, q });
                }
            }
        }
    }
    for r in 1..=2 {
        for k in 0..=1 {
            for p in 0..=2 {
                for q in 0..=2 {
                    if let Some(delta) = delta_config(k, p, q, 1, DeltaStyle::Leading) {
                        grid.push(ConstructionParams::Su { r, k, p, q, delta });
                    }
                }
            }
        }
    }
    let extra = [
        (2, 0, 0, 2, 4, DeltaStyle::Leading),
        (1, 1, 0, 1, 3, DeltaStyle::Trailing),
        (2, 1, 1, 0, 2, DeltaStyle::Trailing),
        (1, 0, 2, 2, 5, DeltaStyle::Leading),
        (2, 1, 2, 1, 5, DeltaStyle::Trailing),
        (1, 1, 2, 2, 5, DeltaStyle::Trailing),
        (2, 0, 1, 1, 3, DeltaStyle::Trailing),
        (1, 0, 1, 2, 3, DeltaStyle::Trailing),
        (2, 0, 2, 1, 3, DeltaStyle::Trailing),
        (1, 1, 1, 1, 4, DeltaStyle::Trailing),
        (2, 1, 0, 0, 2, DeltaStyle::Trailing),
    ];
    for (r, k, p, q, m, style) in extra {
        if let Some(delta) = delta_config(k, p, q, m, style) {
            grid.push(ConstructionParams::Su { r, k, p, q, delta });
        }
    }
    for q in 0..=2 {
        grid.push(ConstructionParams::O { r: 4, q });
    }
    grid.retain(|p| p.validate().is_ok() && within(p, bounds));
    grid
}

fn within(p: &ConstructionParams, b: &Bounds) -> bool {
    match p {
        ConstructionParams::Sl { r, quantum, q } => {
            *r <= b.r && quantum.len() <= b.k && *q <= b.q && quantum.iter().all(|f| f.root_order() <= b.zeta)
        }
        ConstructionParams::Su { r, k, p, q, delta } => {
            *r <= b.r && *k <= b.k && *p <= b.p && *q <= b.q && delta.len() <= b.m
        }
        ConstructionParams::Sp { r, k, p, q } => *r <= b.r && *k <= b.k && *p <= b.p && *q <= b.q,
        ConstructionParams::O { r, q } => *r <= b.r.max(4) && *q <= b.q,
    }
}

/// (a, b) for a special unitary parameter set, None otherwise.
pub fn su_ranks(p: &ConstructionParams) -> Option<(usize, usize)> {
    match p {
        ConstructionParams::Su { k, p, delta, .. } => Some(delta_ranks(*k, *p, delta)),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesRow {
    pub params: ParamsRepr,
    pub computed: Option<InvariantTuple>,
    pub closed_form: Option<InvariantTuple>,
    #[serde(rename = "match")]
    pub matches: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesReport {
    pub rows: Vec<TablesRow>,
    pub disjointness: DisjointnessReport,
    pub f_injectivity: InjectivityReport,
    pub all_match: bool,
}

/// Compares construction-side and closed-form tuples on the grid, then runs
/// the disjointness and f scans.
pub fn run_tables(bounds: &Bounds) -> Result<TablesReport, ClassifyError> {
    let grid = reproduction_grid(bounds);
    let rows: Vec<TablesRow> = grid
        .par_iter()
        .map(|params| {
            let computed = LieTorusModel::construct(params.clone())
                .map_err(|e| e.to_string())
                .and_then(|m| invariant_tuple(&m, DEFAULT_COSET_BUDGET).map_err(|e| e.to_string()));
            let closed_form = ClosedFormInput::new(params.clone())
                .and_then(|i| closed_form_tuple(&i))
                .map_err(|e| e.to_string());
            let matches = matches!((&computed, &closed_form), (Ok(a), Ok(b)) if a == b);
            let error = computed.as_ref().err().or(closed_form.as_ref().err()).cloned();
            TablesRow {
                params: ParamsRepr::from_params(params),
                computed: computed.ok(),
                closed_form: closed_form.ok(),
                matches,
                error,
            }
        })
        .collect();
    let disjointness = disjointness_scan(bounds)?;
    let f_injectivity = f_injectivity_scan(bounds.k.max(2) + 10)?;
    let all_match = rows.iter().all(|r| r.matches) && disjointness.passed && f_injectivity.passed;
    Ok(TablesReport { rows, disjointness, f_injectivity, all_match })
}
