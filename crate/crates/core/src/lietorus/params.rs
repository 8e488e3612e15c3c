use serde::{Deserialize, Serialize};

use crate::exactnum::MAX_ORDER;
use crate::torus::{BasicTag, TorusSpec};

use super::ConstructionError;

/// A quantum factor Q(ζ_M^e).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumFactor {
    pub order: u64,
    pub exponent: i64,
}

impl QuantumFactor {
    /// Multiplicative order of ζ_M^e.
    pub fn root_order(&self) -> u64 {
        let e = self.exponent.rem_euclid(self.order as i64) as u64;
        self.order / num_integer::gcd(self.order, e)
    }

    /// The reduced fraction e/M in [0,1), identifying ζ_M^e.
    pub fn reduced(&self) -> (u64, u64) {
        let e = self.exponent.rem_euclid(self.order as i64) as u64;
        let g = num_integer::gcd(self.order, e);
        (e / g, self.order / g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sl,
    Su,
    Sp,
    O,
}

/// Parameters of the four classical constructions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConstructionParams {
    /// sl_{r+1}(Q(ζ_1) ⊗ … ⊗ Q(ζ_k) ⊗ R_q).
    Sl { r: usize, quantum: Vec<QuantumFactor>, q: usize },
    /// Special unitary over k·(Q(-1),♮) ⊗ A_{k+1} ⊗ R_q with D = diag(t^{δ_i}).
    Su { r: usize, k: usize, p: u8, q: usize, delta: Vec<Vec<i64>> },
    /// Special symplectic over k·(Q(-1),♮) ⊗ A_{k+1} ⊗ R_q.
    Sp { r: usize, k: usize, p: u8, q: usize },
    /// o_{2r}(R_q).
    O { r: usize, q: usize },
}

impl ConstructionParams {
    pub fn family(&self) -> Family {
        match self {
            Self::Sl { .. } => Family::Sl,
            Self::Su { .. } => Family::Su,
            Self::Sp { .. } => Family::Sp,
            Self::O { .. } => Family::O,
        }
    }

    pub fn r(&self) -> usize {
        match self {
            Self::Sl { r, .. } | Self::Su { r, .. } | Self::Sp { r, .. } | Self::O { r, .. } => *r,
        }
    }

    /// Rank of the coordinate torus.
    pub fn torus_rank(&self) -> usize {
        match self {
            Self::Sl { quantum, q, .. } => 2 * quantum.len() + q,
            Self::Su { k, p, q, .. } | Self::Sp { k, p, q, .. } => 2 * k + *p as usize + q,
            Self::O { q, .. } => *q,
        }
    }

    /// Checks every admissibility restriction, reporting the first violated one.
    pub fn validate(&self) -> Result<(), ConstructionError> {
        match self {
            Self::Sl { r, quantum, .. } => {
                if *r < 1 {
                    return Err(ConstructionError::RankTooSmall { family: Family::Sl, min: 1 });
                }
                for f in quantum {
                    if f.order == 0 {
                        return Err(ConstructionError::BadQuantum(format!("{}:{}", f.order, f.exponent)));
                    }
                    if f.order > MAX_ORDER || f.root_order() < 2 {
                        return Err(ConstructionError::BadQuantum(format!("{}:{}", f.order, f.exponent)));
                    }
                }
                // the coordinate torus lives over Q(ζ_N) with N the lcm of the orders
                let mut order = 1u64;
                for f in quantum {
                    order = num_integer::lcm(order, f.order);
                    if order > MAX_ORDER {
                        return Err(ConstructionError::BadQuantum(format!(
                            "combined order exceeds the supported maximum {MAX_ORDER}"
                        )));
                    }
                }
                Ok(())
            }
            Self::Sp { r, k, p, .. } => {
                if *r < 1 {
                    return Err(ConstructionError::RankTooSmall { family: Family::Sp, min: 1 });
                }
                check_p(*p)?;
                if *r <= 2 && matches!((*k, *p), (0, 0) | (0, 1) | (1, 0)) {
                    return Err(ConstructionError::SymplecticExcluded { r: *r, k: *k, p: *p });
                }
                Ok(())
            }
            Self::O { r, .. } => {
                if *r < 4 {
                    return Err(ConstructionError::RankTooSmall { family: Family::O, min: 4 });
                }
                Ok(())
            }
            Self::Su { r, k, p, delta, .. } => {
                if *r < 1 {
                    return Err(ConstructionError::RankTooSmall { family: Family::Su, min: 1 });
                }
                check_p(*p)?;
                let m = delta.len();
                if m == 0 {
                    return Err(ConstructionError::EmptyDelta);
                }
                if (*r, *k, *p) == (1, 0, 0) && m < 5 {
                    return Err(ConstructionError::TooFewDiagonalEntries { m });
                }
                let n = self.torus_rank();
                let torus = self.torus()?;
                for (i, d) in delta.iter().enumerate() {
                    if d.len() != n {
                        return Err(ConstructionError::DeltaLength { index: i, expected: n, got: d.len() });
                    }
                }
                if delta[0].iter().any(|&x| x != 0) {
                    return Err(ConstructionError::FirstDeltaNonzero);
                }
                for (i, d) in delta.iter().enumerate() {
                    if torus.involution_factor(d).map_err(|e| ConstructionError::Torus(e.to_string()))? != 1 {
                        return Err(ConstructionError::DeltaNotHermitian { index: i });
                    }
                }
                for i in 0..m {
                    for j in 0..i {
                        if delta[i].iter().zip(&delta[j]).all(|(a, b)| (a - b).rem_euclid(2) == 0) {
                            return Err(ConstructionError::DeltaCollision { first: j, second: i });
                        }
                    }
                }
                Ok(())
            }
        }
    }

    /// The coordinate torus in tensor normal form (with its involution for SU/SP/O).
    pub fn torus(&self) -> Result<TorusSpec, ConstructionError> {
        let err = |e: crate::torus::TorusError| ConstructionError::Torus(e.to_string());
        match self {
            Self::Sl { quantum, q, .. } => {
                let mut t = TorusSpec::point().without_involution();
                for f in quantum {
                    let b = TorusSpec::make_basic(BasicTag::Quantum { order: f.order, exponent: f.exponent })
                        .map_err(err)?;
                    t = t.tensor(&b);
                }
                Ok(t.tensor(&TorusSpec::make_basic(BasicTag::Laurent(*q)).map_err(err)?).without_involution())
            }
            Self::Su { k, p, q, .. } | Self::Sp { k, p, q, .. } => involution_torus(*k, *p, *q),
            Self::O { q, .. } => TorusSpec::make_basic(BasicTag::Laurent(*q)).map_err(err),
        }
    }
}

fn check_p(p: u8) -> Result<(), ConstructionError> {
    if p > 2 {
        Err(ConstructionError::BadP(p))
    } else {
        Ok(())
    }
}

/// k·(Q(-1),♮) ⊗ {(k,1), (R_1,♮), (Q(-1),*)}[p] ⊗ (R_q,1).
pub fn involution_torus(k: usize, p: u8, q: usize) -> Result<TorusSpec, ConstructionError> {
    let err = |e: crate::torus::TorusError| ConstructionError::Torus(e.to_string());
    check_p(p)?;
    let mut t = TorusSpec::point();
    for _ in 0..k {
        t = t.tensor(&TorusSpec::make_basic(BasicTag::QMinus1Standard).map_err(err)?);
    }
    match p {
        1 => t = t.tensor(&TorusSpec::make_basic(BasicTag::R1Involution).map_err(err)?),
        2 => t = t.tensor(&TorusSpec::make_basic(BasicTag::QMinus1Reversal).map_err(err)?),
        _ => {}
    }
    Ok(t.tensor(&TorusSpec::make_basic(BasicTag::Laurent(q)).map_err(err)?))
}
