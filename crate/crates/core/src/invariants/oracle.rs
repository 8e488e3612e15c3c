//! Degreewise centroid computation, independent of the centroid identification.
//!
//! A centroid map c of degree γ commutes with every ad(x), so on a graded-simple
//! algebra it is fixed by its value on one nonzero e ∈ L_{α0}^0, which must lie in
//! the (at most one-dimensional) L_{α0}^γ. The value is propagated along
//! brackets with low-degree generators and every centroid equation met on the
//! way is checked.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactnum::Cyclotomic;
use crate::lietorus::{Component, LieTorusModel, MatElement};
use crate::linalg::{rref, SpanBuilder};

use super::InvariantError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleValue {
    Dim(u8),
    /// The generators did not reach every boxed component.
    Inconclusive,
}

type Key = (Vec<i64>, Vec<i64>);

struct Slot {
    source: std::sync::Arc<Component>,
    target: std::sync::Arc<Component>,
    /// (coordinates of y, c(y)) pairs collected so far
    pairs: Vec<(Vec<Cyclotomic>, MatElement)>,
    span: SpanBuilder,
    /// c on the source basis once the pairs span it
    images: Option<Vec<MatElement>>,
}

struct Truncation<'a> {
    model: &'a LieTorusModel,
    domain: Vec<Vec<i64>>,
    in_domain: std::collections::HashSet<Vec<i64>>,
    alphas: Vec<Vec<i64>>,
    generators: Vec<(Vec<i64>, Vec<i64>, MatElement)>,
    anchor: (Vec<i64>, MatElement),
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl Truncation<'_> {
    /// Outcome for one degree γ: Some(consistent) or None when coverage is incomplete.
    fn run(&self, gamma: &[i64]) -> Option<bool> {
        let model = self.model;
        let order = model.torus().cyclo_order();
        let zero_deg = vec![0; model.degree_rank()];
        let mut slots: HashMap<Key, Slot> = HashMap::new();
        let mut queue: VecDeque<Key> = VecDeque::new();
        let mut consistent = true;

        let slot_for = |slots: &mut HashMap<Key, Slot>, key: &Key| {
            slots.entry(key.clone()).or_insert_with(|| {
                let source = model.component(&key.0, &key.1).expect("domain degree");
                let target = model.component(&key.0, &add(&key.1, gamma)).expect("Λ degree");
                let dim = source.dim();
                Slot { source, target, pairs: Vec::new(), span: SpanBuilder::new(dim), images: None }
            });
        };

        let (alpha0, e) = &self.anchor;
        let seed_key = (alpha0.clone(), zero_deg);
        slot_for(&mut slots, &seed_key);
        let seed_value = match slots[&seed_key].target.basis.first() {
            Some(v) => v.clone(),
            None => MatElement::zero(model.size(), model.torus()),
        };
        let mut pending = vec![(seed_key.clone(), e.clone(), seed_value)];

        loop {
            for (key, y, cy) in pending.drain(..) {
                slot_for(&mut slots, &key);
                let slot = slots.get_mut(&key).expect("inserted");
                let Some(coords) = slot.source.coordinates(&y) else {
                    consistent = false;
                    continue;
                };
                if !cy.is_zero() && slot.target.coordinates(&cy).is_none() {
                    consistent = false;
                    continue;
                }
                slot.span.insert(coords.clone());
                slot.pairs.push((coords, cy));
                if slot.images.is_none() && slot.span.is_full() {
                    slot.images = Some(solve_images(&slot.pairs, slot.source.dim(), order, model));
                    queue.push_back(key.clone());
                }
            }
            let Some(key) = queue.pop_front() else { break };
            let slot = &slots[&key];
            let images = slot.images.clone().expect("queued after solving");
            let basis = slot.source.basis.clone();
            for (b, cb) in basis.iter().zip(&images) {
                for (beta, nu, g) in &self.generators {
                    let alpha = add(&key.0, beta);
                    let lambda = add(&key.1, nu);
                    let y = g.bracket(b);
                    let cy = g.bracket(cb);
                    if y.is_zero() {
                        if !cy.is_zero() {
                            consistent = false;
                        }
                        continue;
                    }
                    if !self.in_domain.contains(&lambda) || !self.alphas.contains(&alpha) {
                        continue;
                    }
                    pending.push(((alpha, lambda), y, cy));
                }
            }
            if !consistent {
                return Some(false);
            }
        }
        for lambda in &self.domain {
            for alpha in &self.alphas {
                let key = (alpha.clone(), lambda.clone());
                let dim = model.component_dim(alpha, lambda).expect("domain degree");
                if dim == 0 {
                    continue;
                }
                match slots.get(&key) {
                    Some(s) if s.images.is_some() => {}
                    _ => return None,
                }
            }
        }
        // every collected pair must agree with the solved map
        for slot in slots.values() {
            let images = slot.images.as_ref().expect("coverage checked");
            for (coords, cy) in &slot.pairs {
                let mut expect = MatElement::zero(model.size(), model.torus());
                for (c, img) in coords.iter().zip(images) {
                    expect = expect.add(&img.scale(c));
                }
                if &expect != cy {
                    return Some(false);
                }
            }
        }
        Some(consistent)
    }
}

/// Values of c on the source basis from pairs whose coordinates span it.
fn solve_images(
    pairs: &[(Vec<Cyclotomic>, MatElement)],
    dim: usize,
    order: u64,
    model: &LieTorusModel,
) -> Vec<MatElement> {
    // rows [coords | unit vector e_p]; after rref the first dim rows express basis vectors via pairs
    let zero = Cyclotomic::zero(order).expect("order");
    let one = Cyclotomic::one(order).expect("order");
    let np = pairs.len();
    let mut rows: Vec<Vec<Cyclotomic>> = pairs
        .iter()
        .enumerate()
        .map(|(p, (coords, _))| {
            let mut row = coords.clone();
            row.extend((0..np).map(|q| if q == p { one.clone() } else { zero.clone() }));
            row
        })
        .collect();
    let pivots = rref(&mut rows, dim + np);
    let mut images = vec![MatElement::zero(model.size(), model.torus()); dim];
    for (row, &pc) in rows.iter().zip(&pivots) {
        if pc >= dim {
            break;
        }
        let mut img = MatElement::zero(model.size(), model.torus());
        for (p, (_, cy)) in pairs.iter().enumerate() {
            if !row[dim + p].is_zero() {
                img = img.add(&cy.scale(&row[dim + p]));
            }
        }
        images[pc] = img;
    }
    images
}

/// Dimension of the degree-γ part of the centroid for every γ ∈ Λ with sup-norm ≤ B.
///
/// The radius is in undoubled degree units; doubled models use 2B internally.
pub fn centroid_oracle(
    model: &LieTorusModel,
    box_radius: i64,
) -> Result<BTreeMap<Vec<i64>, OracleValue>, InvariantError> {
    if box_radius < 1 {
        return Err(InvariantError::BoxTooSmall);
    }
    let stored = if model.is_doubled() { 2 * box_radius } else { box_radius };
    let domain = model.box_degrees(stored);
    let mut alphas: Vec<Vec<i64>> = model.root_support().roots().iter().cloned().collect();
    alphas.push(vec![0; model.root_dim()]);
    let near = model.box_degrees(if model.is_doubled() { 2 } else { 1 });
    let mut generators = Vec::new();
    for nu in &near {
        for beta in model.root_support().roots() {
            for g in model.component(beta, nu)?.basis.iter() {
                generators.push((beta.clone(), nu.clone(), g.clone()));
            }
        }
    }
    let zero_deg = vec![0; model.degree_rank()];
    let anchor = model
        .root_support()
        .roots()
        .iter()
        .find_map(|a| model.component(a, &zero_deg).ok()?.basis.first().map(|e| (a.clone(), e.clone())))
        .ok_or(InvariantError::BoxTooSmall)?;
    let trunc = Truncation {
        model,
        in_domain: domain.iter().cloned().collect(),
        domain: domain.clone(),
        alphas,
        generators,
        anchor,
    };
    let out: BTreeMap<Vec<i64>, OracleValue> = domain
        .par_iter()
        .map(|gamma| {
            let value = match trunc.run(gamma) {
                None => OracleValue::Inconclusive,
                Some(true) if model.component_dim(&trunc.anchor.0, gamma).unwrap_or(0) > 0 => OracleValue::Dim(1),
                Some(_) => OracleValue::Dim(0),
            };
            (gamma.clone(), value)
        })
        .collect();
    Ok(out)
}
