//! Recognition of irreducible finite root systems (reduced or BC) given in
//! ε-coordinates with the standard dot product.
//!
//! Positivity is lexicographic: a root is positive when its first nonzero
//! coordinate is positive.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("root set is empty")]
    Empty,
    #[error("vector {0:?} has the wrong length or is zero")]
    BadVector(Vec<i64>),
    #[error("root set is not closed under negation")]
    NotSymmetric,
    #[error("not crystallographic at {0:?}, {1:?}")]
    NotCrystallographic(Vec<i64>, Vec<i64>),
    #[error("root system is reducible")]
    Reducible,
    #[error("root system not in the catalogue: {0}")]
    Unrecognized(String),
    #[error("unknown root type label {0:?}")]
    BadLabel(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

/// Type of an irreducible root system, always in canonical form
/// (B_1 and C_1 read as A_1, C_2 as B_2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootTypeLabel {
    pub family: Family,
    pub rank: usize,
}

impl RootTypeLabel {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootError> {
        let label = match (family, rank) {
            (Family::B | Family::C, 1) => Self { family: Family::A, rank: 1 },
            (Family::C, 2) => Self { family: Family::B, rank: 2 },
            (Family::A | Family::BC, r) if r >= 1 => Self { family, rank: r },
            (Family::B | Family::C, r) if r >= 2 => Self { family, rank: r },
            (Family::D, 2) | (Family::D, 3) => {
                return Err(RootError::BadLabel(format!("D{rank} is not irreducible as a D type")))
            }
            (Family::D, r) if r >= 4 => Self { family, rank: r },
            (Family::E, 6..=8) | (Family::F, 4) | (Family::G, 2) => Self { family, rank },
            _ => return Err(RootError::BadLabel(format!("{family:?}{rank}"))),
        };
        Ok(label)
    }

    pub fn reduced(&self) -> bool {
        self.family != Family::BC
    }

    /// Number of nonzero roots.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
            Family::BC => 2 * n * n + 2 * n,
        }
    }

    /// Whether roots of two different lengths occur among the indivisible roots.
    pub fn has_two_lengths(&self) -> bool {
        match self.family {
            Family::B | Family::C | Family::F | Family::G => true,
            Family::BC => self.rank >= 2,
            _ => false,
        }
    }

    /// Length of the root-space rank vector.
    pub fn rkv_len(&self) -> usize {
        match self.family {
            Family::BC if self.rank >= 2 => 3,
            Family::BC => 2,
            Family::B | Family::C | Family::F | Family::G => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for RootTypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for RootTypeLabel {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, RootError> {
        let bad = || RootError::BadLabel(s.to_string());
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
        let (fam, rank) = s.split_at(split);
        let rank: usize = rank.parse().map_err(|_| bad())?;
        let family = match fam {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => Family::E,
            "F" => Family::F,
            "G" => Family::G,
            "BC" => Family::BC,
            _ => return Err(bad()),
        };
        let label = Self::new(family, rank).map_err(|_| bad())?;
        if label.family != family || label.rank != rank {
            // only canonical spellings round-trip
            return Err(bad());
        }
        Ok(label)
    }
}

impl Serialize for RootTypeLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootTypeLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LengthClass {
    Short,
    Long,
    ExtraLong,
}

/// Nonzero roots in Z^r; 0 is implicitly a root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSet {
    ambient_dim: usize,
    roots: BTreeSet<Vec<i64>>,
}

impl RootSet {
    pub fn new(ambient_dim: usize, roots: impl IntoIterator<Item = Vec<i64>>) -> Result<Self, RootError> {
        let mut set = BTreeSet::new();
        for r in roots {
            if r.len() != ambient_dim || r.iter().all(|&x| x == 0) {
                return Err(RootError::BadVector(r));
            }
            set.insert(r);
        }
        Ok(Self { ambient_dim, roots: set })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn roots(&self) -> &BTreeSet<Vec<i64>> {
        &self.roots
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.roots.contains(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub label: RootTypeLabel,
    /// Simple roots of the indivisible subsystem.
    pub simple_roots: Vec<Vec<i64>>,
    pub lengths: BTreeMap<Vec<i64>, LengthClass>,
}

impl Classification {
    /// Lexicographically smallest root of the given class.
    pub fn representative(&self, class: LengthClass) -> Option<&Vec<i64>> {
        self.lengths.iter().find(|(_, c)| **c == class).map(|(r, _)| r)
    }

    /// Classes present, in rank-vector order (short, long, extra-long).
    pub fn classes(&self) -> Vec<LengthClass> {
        let present: BTreeSet<LengthClass> = self.lengths.values().copied().collect();
        present.into_iter().collect()
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn is_positive(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// Identifies the type and assigns length classes.
pub fn classify(rs: &RootSet) -> Result<Classification, RootError> {
    if rs.roots.is_empty() {
        return Err(RootError::Empty);
    }
    for a in &rs.roots {
        let neg: Vec<i64> = a.iter().map(|x| -x).collect();
        if !rs.contains(&neg) {
            return Err(RootError::NotSymmetric);
        }
    }
    for a in &rs.roots {
        let aa = dot(a, a);
        for b in &rs.roots {
            let ab = dot(a, b);
            if (2 * ab) % aa != 0 {
                return Err(RootError::NotCrystallographic(a.clone(), b.clone()));
            }
            let k = 2 * ab / aa;
            let refl: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - k * y).collect();
            if !rs.contains(&refl) {
                return Err(RootError::NotCrystallographic(a.clone(), b.clone()));
            }
        }
    }
    let halves = |a: &Vec<i64>| -> Option<Vec<i64>> {
        a.iter().all(|x| x % 2 == 0).then(|| a.iter().map(|x| x / 2).collect())
    };
    let divisible: BTreeSet<Vec<i64>> =
        rs.roots.iter().filter(|a| halves(a).is_some_and(|h| rs.contains(&h))).cloned().collect();
    let indivisible: Vec<Vec<i64>> = rs.roots.iter().filter(|a| !divisible.contains(*a)).cloned().collect();
    let positive: Vec<&Vec<i64>> = indivisible.iter().filter(|a| is_positive(a)).collect();
    let pos_set: BTreeSet<&Vec<i64>> = positive.iter().copied().collect();
    let simple: Vec<Vec<i64>> = positive
        .iter()
        .filter(|a| {
            !positive.iter().any(|b| {
                let rest: Vec<i64> = a.iter().zip(b.iter()).map(|(x, y)| x - y).collect();
                pos_set.contains(&rest)
            })
        })
        .map(|a| (*a).clone())
        .collect();
    let n = simple.len();
    if lattice_rank(&indivisible, rs.ambient_dim) != n {
        return Err(RootError::Unrecognized("simple roots are not a basis".into()));
    }
    let cartan: Vec<Vec<i64>> = simple
        .iter()
        .map(|a| simple.iter().map(|b| 2 * dot(a, b) / dot(a, a)).collect())
        .collect();
    if !connected(&cartan) {
        return Err(RootError::Reducible);
    }
    let base = identify(&cartan, &simple)?;
    let label = if divisible.is_empty() { base } else { RootTypeLabel::new(Family::BC, n)? };
    if label.root_count() != rs.roots.len() {
        return Err(RootError::Unrecognized(format!(
            "{label} needs {} roots, found {}",
            label.root_count(),
            rs.roots.len()
        )));
    }
    let min_norm = rs.roots.iter().map(|a| dot(a, a)).min().expect("nonempty");
    let lengths = rs
        .roots
        .iter()
        .map(|a| {
            let class = if divisible.contains(a) {
                LengthClass::ExtraLong
            } else if dot(a, a) == min_norm {
                LengthClass::Short
            } else {
                LengthClass::Long
            };
            (a.clone(), class)
        })
        .collect();
    Ok(Classification { label, simple_roots: simple, lengths })
}

fn lattice_rank(vs: &[Vec<i64>], dim: usize) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vs
        .iter()
        .map(|v| v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut rank = 0;
    for col in 0..dim {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let f = &rows[i][col] / &pivot;
                for j in 0..dim {
                    let t = &f * &rows[rank][j];
                    rows[i][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn connected(cartan: &[Vec<i64>]) -> bool {
    let n = cartan.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && cartan[i][j] != 0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn identify(cartan: &[Vec<i64>], simple: &[Vec<i64>]) -> Result<RootTypeLabel, RootError> {
    let n = cartan.len();
    let unrecognized = || RootError::Unrecognized(format!("Cartan matrix {cartan:?}"));
    let mut degree = vec![0usize; n];
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if cartan[i][j] != 0 {
                degree[i] += 1;
                degree[j] += 1;
                edges.push((i, j, cartan[i][j] * cartan[j][i]));
            }
        }
    }
    if edges.len() + 1 != n {
        return Err(unrecognized());
    }
    let max_bond = edges.iter().map(|e| e.2).max().unwrap_or(0);
    match max_bond {
        0 => RootTypeLabel::new(Family::A, 1),
        1 => {
            let branch: Vec<usize> = (0..n).filter(|&i| degree[i] >= 3).collect();
            match branch.as_slice() {
                [] => RootTypeLabel::new(Family::A, n),
                [b] if degree[*b] == 3 => {
                    let mut arms: Vec<usize> =
                        (0..n).filter(|&j| cartan[*b][j] != 0 && j != *b).map(|j| arm_length(cartan, *b, j)).collect();
                    arms.sort_unstable();
                    match arms.as_slice() {
                        [1, 1, _] => RootTypeLabel::new(Family::D, n),
                        [1, 2, 2] => RootTypeLabel::new(Family::E, 6),
                        [1, 2, 3] => RootTypeLabel::new(Family::E, 7),
                        [1, 2, 4] => RootTypeLabel::new(Family::E, 8),
                        _ => Err(unrecognized()),
                    }
                }
                _ => Err(unrecognized()),
            }
        }
        2 => {
            if degree.iter().any(|&d| d > 2) || edges.iter().filter(|e| e.2 == 2).count() != 1 {
                return Err(unrecognized());
            }
            if n == 2 {
                return RootTypeLabel::new(Family::B, 2);
            }
            let (i, j, _) = *edges.iter().find(|e| e.2 == 2).expect("double bond");
            let end = if degree[i] == 1 {
                i
            } else if degree[j] == 1 {
                j
            } else if n == 4 {
                return RootTypeLabel::new(Family::F, 4);
            } else {
                return Err(unrecognized());
            };
            let other = if end == i { j } else { i };
            let short_end = dot(&simple[end], &simple[end]) < dot(&simple[other], &simple[other]);
            RootTypeLabel::new(if short_end { Family::B } else { Family::C }, n)
        }
        3 if n == 2 => RootTypeLabel::new(Family::G, 2),
        _ => Err(unrecognized()),
    }
}

/// Number of nodes in the branch starting at `start`, away from `from`.
fn arm_length(cartan: &[Vec<i64>], from: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next = (0..cartan.len()).find(|&k| k != prev && k != cur && cartan[cur][k] != 0);
        match next {
            Some(k) => {
                prev = cur;
                cur = k;
                len += 1;
            }
            None => return len,
        }
    }
}

/// Simple roots, and each root's integer coordinates with respect to them.
pub type SimpleCoordinates = (Vec<Vec<i64>>, BTreeMap<Vec<i64>, Vec<i64>>);

/// Simple roots and the integer coordinates of every root with respect to them.
pub fn root_lattice_coords(rs: &RootSet) -> Result<SimpleCoordinates, RootError> {
    let c = classify(rs)?;
    let n = c.simple_roots.len();
    let dim = rs.ambient_dim;
    let mut coords = BTreeMap::new();
    for root in &rs.roots {
        // solve Σ x_i α_i = root via the Gram system
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..n)
                    .map(|j| BigRational::from_integer(dot(&c.simple_roots[i], &c.simple_roots[j]).into()))
                    .collect();
                row.push(BigRational::from_integer(dot(&c.simple_roots[i], root).into()));
                row
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&i| !m[i][col].is_zero()).expect("Gram matrix is nonsingular");
            m.swap(col, p);
            let inv = BigRational::one() / &m[col][col];
            for v in m[col].iter_mut() {
                *v *= &inv;
            }
            for i in 0..n {
                if i != col && !m[i][col].is_zero() {
                    let f = m[i][col].clone();
                    for j in 0..=n {
                        let t = &f * &m[col][j];
                        m[i][j] -= t;
                    }
                }
            }
        }
        let x: Vec<i64> = m
            .iter()
            .map(|row| {
                let v = &row[n];
                if !v.is_integer() {
                    return Err(RootError::Unrecognized("non-integral root coordinates".into()));
                }
                i64::try_from(v.to_integer()).map_err(|_| RootError::Unrecognized("overflow".into()))
            })
            .collect::<Result<_, _>>()?;
        let back: Vec<i64> =
            (0..dim).map(|k| (0..n).map(|i| x[i] * c.simple_roots[i][k]).sum()).collect();
        if &back != root {
            return Err(RootError::Unrecognized("root outside the span of the simple roots".into()));
        }
        coords.insert(root.clone(), x);
    }
    Ok((c.simple_roots, coords))
}

#[cfg(test)]
mod tests;
