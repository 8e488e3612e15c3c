use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::rootsys::RootTypeLabel;
use crate::zlattice::QuotientGroup;

/// One exceptional Lie torus, valid at every nullity n ≥ n0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalRow {
    pub id: usize,
    #[serde(rename = "type")]
    pub root_type: RootTypeLabel,
    pub n0: usize,
    pub crk: usize,
    pub rkv: Vec<usize>,
    /// Torsion pattern at n0; the same for larger nullities.
    pub quotient: QuotientGroup,
    /// Tits index, as an opaque string.
    pub index: String,
    /// Construction class: "untwisted" or "twisted".
    pub reference: String,
}

type RawRow = (&'static str, usize, usize, &'static [usize], &'static [u64], &'static str, &'static str);

const RAW: [RawRow; 27] = [
    ("A1", 3, 133, &[27], &[3, 3, 3], "E7,1^78", "twisted"),
    ("A2", 3, 78, &[8], &[2, 2, 2], "1E6,2^28", "twisted"),
    ("C3", 3, 133, &[8, 1], &[2, 2, 2], "E7,3^28", "twisted"),
    ("E6", 0, 78, &[1], &[], "1E6,6^0", "untwisted"),
    ("E7", 0, 133, &[1], &[], "E7,7^0", "untwisted"),
    ("E8", 0, 248, &[1], &[], "E8,8^0", "untwisted"),
    ("G2", 0, 14, &[1, 1], &[], "G2,2^0", "untwisted"),
    ("G2", 1, 28, &[3, 1], &[3], "3D4,2^2", "twisted"),
    ("G2", 2, 78, &[9, 1], &[3, 3], "1E6,2^16", "twisted"),
    ("G2", 3, 248, &[27, 1], &[3, 3, 3], "E8,2^78", "twisted"),
    ("F4", 0, 52, &[1, 1], &[], "F4,4^0", "untwisted"),
    ("F4", 1, 78, &[2, 1], &[2], "2E6,4^2", "twisted"),
    ("F4", 2, 133, &[4, 1], &[2, 2], "E7,4^9", "twisted"),
    ("F4", 3, 248, &[8, 1], &[2, 2, 2], "E8,4^28", "twisted"),
    ("BC1", 3, 52, &[8, 1], &[2, 2, 2], "F4,1^21", "twisted"),
    ("BC1", 4, 78, &[16, 8], &[2, 2, 2, 2], "2E6,1^29", "twisted"),
    ("BC1", 5, 133, &[32, 10], &[2, 2, 2, 2, 2], "E7,1^48", "twisted"),
    ("BC1", 6, 248, &[64, 14], &[2, 2, 2, 2, 2, 2], "E8,1^91", "twisted"),
    ("BC1", 5, 78, &[20, 1], &[2, 2, 2, 2, 2], "2E6,1^35", "twisted"),
    ("BC1", 6, 133, &[32, 1], &[2, 2, 2, 2, 2, 2], "E7,1^66", "twisted"),
    ("BC1", 7, 248, &[56, 1], &[2, 2, 2, 2, 2, 2, 2], "E8,1^133", "twisted"),
    ("BC1", 5, 133, &[32, 1], &[2, 2, 2, 2, 2], "E7,1^66", "twisted"),
    ("BC1", 3, 133, &[32, 1], &[2, 4, 4], "E7,1^66", "twisted"),
    ("BC1", 3, 248, &[56, 1], &[4, 4, 4], "E8,1^133", "twisted"),
    ("BC2", 3, 78, &[8, 12, 1], &[2, 2, 2], "2E6,2^16'", "twisted"),
    ("BC2", 4, 133, &[16, 16, 1], &[2, 2, 2, 2], "E7,2^31", "twisted"),
    ("BC2", 5, 248, &[32, 24, 1], &[2, 2, 2, 2, 2], "E8,2^66", "twisted"),
];

/// All 27 rows, in table order.
pub fn exceptional_rows() -> &'static [ExceptionalRow] {
    static ROWS: OnceLock<Vec<ExceptionalRow>> = OnceLock::new();
    ROWS.get_or_init(|| {
        RAW.iter()
            .enumerate()
            .map(|(i, &(ty, n0, crk, rkv, torsion, index, reference))| ExceptionalRow {
                id: i + 1,
                root_type: ty.parse().expect("canonical label"),
                n0,
                crk,
                rkv: rkv.to_vec(),
                quotient: QuotientGroup::from_cyclic_orders(torsion),
                index: index.to_string(),
                reference: reference.to_string(),
            })
            .collect()
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExceptionalFilter {
    pub id: Option<usize>,
    pub root_type: Option<RootTypeLabel>,
    pub crk: Option<usize>,
}

pub fn exceptional_lookup(filter: &ExceptionalFilter) -> Vec<ExceptionalRow> {
    exceptional_rows()
        .iter()
        .filter(|r| filter.id.is_none_or(|id| r.id == id))
        .filter(|r| filter.root_type.is_none_or(|t| r.root_type == t))
        .filter(|r| filter.crk.is_none_or(|c| r.crk == c))
        .cloned()
        .collect()
}
