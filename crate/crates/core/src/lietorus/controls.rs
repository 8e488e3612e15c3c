//! Deliberately invalid models used as negative controls.

use super::model::{AlgebraKind, LieTorusModel};
use super::{ConstructionError, ConstructionParams, QuantumFactor};

/// gl_{r+1}(A) for the special linear torus parameters: no trace
/// condition, so t^0·I is central.
pub fn general_linear(r: usize, quantum: Vec<QuantumFactor>, q: usize) -> Result<LieTorusModel, ConstructionError> {
    let params = ConstructionParams::Sl { r, quantum, q };
    params.validate()?;
    Ok(LieTorusModel::assemble(params, AlgebraKind::GeneralLinear))
}

/// The orthogonal construction without the r ≥ 4 restriction.
pub fn orthogonal_unchecked(r: usize, q: usize) -> Result<LieTorusModel, ConstructionError> {
    if r == 0 {
        return Err(ConstructionError::RankTooSmall { family: super::Family::O, min: 1 });
    }
    let params = ConstructionParams::O { r, q };
    params.torus()?;
    Ok(LieTorusModel::assemble(params, AlgebraKind::Orthogonal))
}
