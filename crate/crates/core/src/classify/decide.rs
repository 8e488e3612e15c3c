use serde::{Deserialize, Serialize};

use crate::lietorus::{ConstructionParams, Family};

use super::{closed_form_tuple, ClassifyError, ClosedFormInput};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Isomorphic,
    NotIsomorphic,
    Undecided(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    #[serde(flatten)]
    pub verdict: Verdict,
    /// How the verdict was reached.
    pub basis: String,
    /// Whether comparing invariants gives the same answer, where that route decides.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants_agree: Option<bool>,
}

/// Decides isomorphism of two classical tori when the invariants settle it.
pub fn decide_isomorphic(a: &ClosedFormInput, b: &ClosedFormInput) -> Result<Decision, ClassifyError> {
    let ta = closed_form_tuple(a)?;
    let tb = closed_form_tuple(b)?;
    let (fa, fb) = (a.params.family(), b.params.family());
    if fa != fb {
        let verdict = Verdict::NotIsomorphic;
        return Ok(Decision {
            verdict,
            basis: "different classical classes are disjoint".into(),
            invariants_agree: Some(ta != tb),
        });
    }
    let decision = match (&a.params, &b.params) {
        (ConstructionParams::Sp { r, k, p, q }, ConstructionParams::Sp { r: r2, k: k2, p: p2, q: q2 }) => {
            let same = (r, k, p, q) == (r2, k2, p2, q2);
            let by_invariants = (ta.root_type, ta.nullity, &ta.rkv) == (tb.root_type, tb.nullity, &tb.rkv);
            Decision {
                verdict: if same { Verdict::Isomorphic } else { Verdict::NotIsomorphic },
                basis: "symplectic tori are determined by (r, k, p, q)".into(),
                invariants_agree: Some(same == by_invariants),
            }
        }
        (ConstructionParams::O { r, q }, ConstructionParams::O { r: r2, q: q2 }) => {
            let same = (r, q) == (r2, q2);
            let by_invariants = (ta.root_type, ta.nullity) == (tb.root_type, tb.nullity);
            Decision {
                verdict: if same { Verdict::Isomorphic } else { Verdict::NotIsomorphic },
                basis: "orthogonal tori are determined by (r, q)".into(),
                invariants_agree: Some(same == by_invariants),
            }
        }
        _ => {
            let name = if fa == Family::Sl { "special linear" } else { "special unitary" };
            if ta != tb {
                Decision {
                    verdict: Verdict::NotIsomorphic,
                    basis: "isomorphism invariants differ".into(),
                    invariants_agree: None,
                }
            } else {
                Decision {
                    verdict: Verdict::Undecided(format!(
                        "equal invariants; isomorphism of {name} tori is not determined by them"
                    )),
                    basis: "isomorphism invariants agree".into(),
                    invariants_agree: None,
                }
            }
        }
    };
    Ok(decision)
}
