use std::collections::BTreeMap;
use std::sync::Arc;

use crate::exactnum::Cyclotomic;
use crate::torus::{TorusElement, TorusError, TorusSpec};

/// An s×s matrix over a torus, stored sparsely by nonzero entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatElement {
    size: usize,
    spec: Arc<TorusSpec>,
    entries: BTreeMap<(usize, usize), TorusElement>,
}

impl MatElement {
    pub fn zero(size: usize, spec: &Arc<TorusSpec>) -> Self {
        Self { size, spec: spec.clone(), entries: BTreeMap::new() }
    }

    /// a·e_ij.
    pub fn unit(size: usize, i: usize, j: usize, a: TorusElement) -> Self {
        let mut m = Self::zero(size, a.spec());
        m.add_entry(i, j, &a);
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn spec(&self) -> &Arc<TorusSpec> {
        &self.spec
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), TorusElement> {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> TorusElement {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(|| TorusElement::zero(&self.spec))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_entry(&mut self, i: usize, j: usize, a: &TorusElement) {
        assert!(i < self.size && j < self.size, "matrix index out of range");
        if a.is_zero() {
            return;
        }
        let slot = self.entries.entry((i, j)).or_insert_with(|| TorusElement::zero(&self.spec));
        *slot = slot.try_add(a).expect("same torus");
        if slot.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    /// Adds c·t^μ at (i,j).
    pub fn add_term(&mut self, i: usize, j: usize, mu: &[i64], c: &Cyclotomic) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry((i, j)).or_insert_with(|| TorusElement::zero(&self.spec));
        slot.add_term(mu, c);
        if slot.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), a) in &other.entries {
            out.add_entry(*i, *j, a);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Cyclotomic::one(self.spec.cyclo_order()).expect("order")))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Self::zero(self.size, &self.spec);
        }
        Self {
            size: self.size,
            spec: self.spec.clone(),
            entries: self.entries.iter().map(|(k, a)| (*k, a.scale(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut by_row: BTreeMap<usize, Vec<(usize, &TorusElement)>> = BTreeMap::new();
        for ((k, j), b) in &other.entries {
            by_row.entry(*k).or_default().push((*j, b));
        }
        let mut out = Self::zero(self.size, &self.spec);
        for ((i, k), a) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (j, b) in row {
                    out.add_entry(*i, *j, &a.try_mul(b).expect("same torus"));
                }
            }
        }
        out
    }

    /// xy - yx.
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Entrywise involution followed by transposition.
    pub fn bar_transpose(&self) -> Result<Self, TorusError> {
        let mut out = Self::zero(self.size, &self.spec);
        for ((i, j), a) in &self.entries {
            out.add_entry(*j, *i, &a.bar()?);
        }
        Ok(out)
    }

    /// Sum of diagonal entries.
    pub fn trace(&self) -> TorusElement {
        let mut t = TorusElement::zero(&self.spec);
        for ((i, j), a) in &self.entries {
            if i == j {
                t = t.try_add(a).expect("same torus");
            }
        }
        t
    }

    /// Coefficient of t^μ in entry (i,j).
    pub fn coefficient(&self, i: usize, j: usize, mu: &[i64]) -> Option<&Cyclotomic> {
        self.entries.get(&(i, j)).and_then(|a| a.coefficient(mu))
    }

    /// All (i, j, μ, c) with c ≠ 0.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Vec<i64>, &Cyclotomic)> {
        self.entries.iter().flat_map(|((i, j), a)| a.terms().iter().map(move |(mu, c)| (*i, *j, mu, c)))
    }
}
