use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock, RwLock};

use crate::exactnum::Cyclotomic;
use crate::linalg::nullspace;
use crate::rootsys::RootSet;
use crate::torus::{TorusElement, TorusSpec};
use crate::zlattice::Sublattice;

use super::{ConstructionError, ConstructionParams, MatElement, ModelError};

/// Which matrix algebra a model realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    SpecialLinear,
    /// gl_{r+1}(A): no trace condition. Used only as a negative control.
    GeneralLinear,
    SpecialUnitary,
    SpecialSymplectic,
    Orthogonal,
}

/// A matrix slot t^μ e_ij.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub i: usize,
    pub j: usize,
    pub mu: Vec<i64>,
}

/// Basis of one homogeneous component L_α^λ.
#[derive(Debug, Clone)]
pub struct Component {
    pub alpha: Vec<i64>,
    pub lambda: Vec<i64>,
    pub positions: Vec<Position>,
    vectors: Vec<Vec<Cyclotomic>>,
    free: Vec<usize>,
    pub basis: Vec<MatElement>,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `x` in [`Component::basis`], or `None` if `x ∉ L_α^λ`.
    pub fn coordinates(&self, x: &MatElement) -> Option<Vec<Cyclotomic>> {
        let order = x.spec().cyclo_order();
        let zero = Cyclotomic::zero(order).expect("order");
        let v: Vec<Cyclotomic> = self
            .positions
            .iter()
            .map(|p| x.coefficient(p.i, p.j, &p.mu).cloned().unwrap_or_else(|| zero.clone()))
            .collect();
        let nonzero = v.iter().filter(|c| !c.is_zero()).count();
        if nonzero != x.terms().count() {
            return None;
        }
        let coords: Vec<Cyclotomic> = self.free.iter().map(|&f| v[f].clone()).collect();
        for (k, vk) in v.iter().enumerate() {
            let mut s = zero.clone();
            for (c, b) in coords.iter().zip(&self.vectors) {
                if !b[k].is_zero() && !c.is_zero() {
                    s += &(c * &b[k]);
                }
            }
            if &s != vk {
                return None;
            }
        }
        Some(coords)
    }
}

const SHARDS: usize = 32;
const CACHE_LIMIT: usize = 1 << 19;

type Key = (Vec<i64>, Vec<i64>);

struct ComponentCache {
    shards: Vec<RwLock<HashMap<Key, Arc<Component>>>>,
}

impl ComponentCache {
    fn new() -> Self {
        Self { shards: (0..SHARDS).map(|_| RwLock::new(HashMap::new())).collect() }
    }

    fn shard(&self, key: &Key) -> &RwLock<HashMap<Key, Arc<Component>>> {
        let mut h = DefaultHasher::new();
        key.hash(&mut h);
        &self.shards[h.finish() as usize % SHARDS]
    }

    fn get(&self, key: &Key) -> Option<Arc<Component>> {
        self.shard(key).read().expect("cache lock").get(key).cloned()
    }

    fn insert(&self, key: Key, value: Arc<Component>) {
        let mut shard = self.shard(&key).write().expect("cache lock");
        if shard.len() < CACHE_LIMIT / SHARDS {
            shard.insert(key, value);
        }
    }
}

/// A classical Lie torus realized inside Mat_s(A).
///
/// For the special unitary family internal degrees are stored doubled:
/// t^μ e_ij has degree 2μ + τ_i - τ_j and Λ is generated by {2e_i} ∪ {δ_i}.
pub struct LieTorusModel {
    params: ConstructionParams,
    kind: AlgebraKind,
    size: usize,
    r: usize,
    torus: Arc<TorusSpec>,
    weights: Vec<Vec<i64>>,
    /// G = Σ g_i e_{i,π(i)}; empty when there is no skewness condition.
    pi: Vec<usize>,
    g: Vec<TorusElement>,
    g_inv: Vec<TorusElement>,
    tau: Vec<Vec<i64>>,
    doubled: bool,
    lattice: Sublattice,
    root_support: OnceLock<RootSet>,
    cache: ComponentCache,
}

impl std::fmt::Debug for LieTorusModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LieTorusModel").field("params", &self.params).field("kind", &self.kind).finish()
    }
}

fn unit(n: usize, i: usize, s: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = s;
    v
}

impl LieTorusModel {
    /// Builds and validates a classical model.
    pub fn construct(params: ConstructionParams) -> Result<Self, ConstructionError> {
        params.validate()?;
        let kind = match params.family() {
            super::Family::Sl => AlgebraKind::SpecialLinear,
            super::Family::Su => AlgebraKind::SpecialUnitary,
            super::Family::Sp => AlgebraKind::SpecialSymplectic,
            super::Family::O => AlgebraKind::Orthogonal,
        };
        Ok(Self::assemble(params, kind))
    }

    /// Builds without admissibility checks; used for negative controls.
    pub(crate) fn assemble(params: ConstructionParams, kind: AlgebraKind) -> Self {
        let r = params.r();
        let torus = Arc::new(params.torus().expect("torus parameters already checked"));
        let n = torus.rank();
        let one = TorusElement::one(&torus);
        let (size, weights, pi, g, tau) = match (&params, kind) {
            (_, AlgebraKind::SpecialLinear | AlgebraKind::GeneralLinear) => {
                let weights = (0..=r).map(|i| unit(r + 1, i, 1)).collect();
                (r + 1, weights, Vec::new(), Vec::new(), vec![vec![0; n]; r + 1])
            }
            (ConstructionParams::Su { delta, .. }, _) => {
                let m = delta.len();
                let size = 2 * r + m;
                let mut weights = sym_weights(r);
                weights.extend((0..m).map(|_| vec![0; r]));
                let mut pi: Vec<usize> = (0..2 * r).map(|i| 2 * r - 1 - i).collect();
                pi.extend(2 * r..size);
                let mut g = vec![one.clone(); 2 * r];
                g.extend(delta.iter().map(|d| TorusElement::unit_monomial(&torus, d.clone()).expect("length checked")));
                let mut tau = vec![vec![0; n]; 2 * r];
                tau.extend(delta.iter().cloned());
                (size, weights, pi, g, tau)
            }
            (_, AlgebraKind::SpecialSymplectic) => {
                let pi = (0..2 * r).map(|i| 2 * r - 1 - i).collect();
                let minus = one.neg();
                let g = (0..2 * r).map(|i| if i < r { one.clone() } else { minus.clone() }).collect();
                (2 * r, sym_weights(r), pi, g, vec![vec![0; n]; 2 * r])
            }
            _ => {
                let pi = (0..2 * r).map(|i| 2 * r - 1 - i).collect();
                (2 * r, sym_weights(r), pi, vec![one.clone(); 2 * r], vec![vec![0; n]; 2 * r])
            }
        };
        let g_inv = g.iter().map(|x| x.monomial_inverse().expect("monomial")).collect();
        let doubled = kind == AlgebraKind::SpecialUnitary;
        let lattice = if doubled {
            let mut gens: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i, 2)).collect();
            gens.extend(tau[2 * r..].iter().cloned());
            Sublattice::from_vectors(n, &gens).expect("consistent lengths")
        } else {
            Sublattice::full(n)
        };
        Self {
            params,
            kind,
            size,
            r,
            torus,
            weights,
            pi,
            g,
            g_inv,
            tau,
            doubled,
            lattice,
            root_support: OnceLock::new(),
            cache: ComponentCache::new(),
        }
    }

    pub fn params(&self) -> &ConstructionParams {
        &self.params
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    /// Matrix size s̄.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn torus(&self) -> &Arc<TorusSpec> {
        &self.torus
    }

    /// Length of root vectors in ε-coordinates.
    pub fn root_dim(&self) -> usize {
        self.weights[0].len()
    }

    /// Rank of the internal degree lattice Z^n.
    pub fn degree_rank(&self) -> usize {
        self.torus.rank()
    }

    pub fn is_doubled(&self) -> bool {
        self.doubled
    }

    /// Λ inside the internal degree lattice.
    pub fn lattice(&self) -> &Sublattice {
        &self.lattice
    }

    pub fn weight(&self, i: usize) -> &[i64] {
        &self.weights[i]
    }

    /// Internal degree of t^μ e_ij.
    pub fn degree_of(&self, i: usize, j: usize, mu: &[i64]) -> Vec<i64> {
        if self.doubled {
            mu.iter().zip(&self.tau[i]).zip(&self.tau[j]).map(|((m, a), b)| 2 * m + a - b).collect()
        } else {
            mu.to_vec()
        }
    }

    fn mu_for(&self, i: usize, j: usize, lambda: &[i64]) -> Option<Vec<i64>> {
        if !self.doubled {
            return Some(lambda.to_vec());
        }
        let raw: Vec<i64> = lambda.iter().zip(&self.tau[i]).zip(&self.tau[j]).map(|((l, a), b)| l - a + b).collect();
        raw.iter().all(|x| x % 2 == 0).then(|| raw.iter().map(|x| x / 2).collect())
    }

    /// (G, G⁻¹) with G = Σ g_i e_{i,π(i)}, or None for SL/GL. Elements are skew
    /// when G⁻¹·x̄ᵗ·G = -x.
    pub fn form(&self) -> Option<(MatElement, MatElement)> {
        if self.pi.is_empty() {
            return None;
        }
        let mut g = MatElement::zero(self.size, &self.torus);
        let mut g_inv = MatElement::zero(self.size, &self.torus);
        for (i, &p) in self.pi.iter().enumerate() {
            g.add_entry(i, p, &self.g[i]);
            g_inv.add_entry(p, i, &self.g_inv[i]);
        }
        Some((g, g_inv))
    }

    fn trace_condition(&self) -> bool {
        !matches!(self.kind, AlgebraKind::GeneralLinear | AlgebraKind::Orthogonal)
    }

    /// θ(c·t^μ e_ij) = -g_j⁻¹ bar(c t^μ) g_i e_{π(j),π(i)}, returned as (π(j), π(i), μ', factor).
    fn theta(&self, i: usize, j: usize, mu: &[i64]) -> (usize, usize, Vec<i64>, Cyclotomic) {
        let a = TorusElement::unit_monomial(&self.torus, mu.to_vec()).expect("degree length");
        let bar = a.bar().expect("skew models carry an involution");
        let img = self.g_inv[j].try_mul(&bar).and_then(|x| x.try_mul(&self.g[i])).expect("same torus");
        let (deg, c) = img.terms().iter().next().expect("monomials are units");
        (self.pi[j], self.pi[i], deg.clone(), -c)
    }

    fn check_degree(&self, alpha: &[i64], lambda: &[i64]) -> Result<(), ModelError> {
        if alpha.len() != self.root_dim() {
            return Err(ModelError::RootLength { expected: self.root_dim(), got: alpha.len() });
        }
        if lambda.len() != self.degree_rank() {
            return Err(ModelError::DegreeLength { expected: self.degree_rank(), got: lambda.len() });
        }
        if self.doubled && !self.lattice.contains(lambda).expect("length checked") {
            return Err(ModelError::DegreeNotInLattice(lambda.to_vec()));
        }
        Ok(())
    }

    /// Basis of L_α^λ, memoized.
    pub fn component(&self, alpha: &[i64], lambda: &[i64]) -> Result<Arc<Component>, ModelError> {
        self.check_degree(alpha, lambda)?;
        let key = (alpha.to_vec(), lambda.to_vec());
        if let Some(c) = self.cache.get(&key) {
            return Ok(c);
        }
        let comp = Arc::new(self.solve_component(alpha, lambda));
        self.cache.insert(key, comp.clone());
        Ok(comp)
    }

    pub fn component_dim(&self, alpha: &[i64], lambda: &[i64]) -> Result<usize, ModelError> {
        Ok(self.component(alpha, lambda)?.dim())
    }

    pub fn component_basis(&self, alpha: &[i64], lambda: &[i64]) -> Result<Vec<MatElement>, ModelError> {
        Ok(self.component(alpha, lambda)?.basis.clone())
    }

    fn solve_component(&self, alpha: &[i64], lambda: &[i64]) -> Component {
        let order = self.torus.cyclo_order();
        let zero = Cyclotomic::zero(order).expect("order");
        let one = Cyclotomic::one(order).expect("order");
        let mut positions = Vec::new();
        for i in 0..self.size {
            for j in 0..self.size {
                let w: Vec<i64> = self.weights[i].iter().zip(&self.weights[j]).map(|(a, b)| a - b).collect();
                if w != alpha {
                    continue;
                }
                if let Some(mu) = self.mu_for(i, j, lambda) {
                    positions.push(Position { i, j, mu });
                }
            }
        }
        let np = positions.len();
        let index: HashMap<(usize, usize), usize> =
            positions.iter().enumerate().map(|(k, p)| ((p.i, p.j), k)).collect();
        let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
        if !self.pi.is_empty() {
            // X = θ(X): coefficient at θ(p) equals factor times coefficient at p
            for (k, p) in positions.iter().enumerate() {
                let (ti, tj, tmu, c) = self.theta(p.i, p.j, &p.mu);
                let kk = index[&(ti, tj)];
                debug_assert_eq!(positions[kk].mu, tmu, "θ preserves the grading");
                let mut row = vec![zero.clone(); np];
                row[kk] = one.clone();
                row[k] = &row[k] - &c;
                rows.push(row);
            }
        }
        if self.trace_condition() && alpha.iter().all(|&a| a == 0) {
            let diag: Vec<usize> = (0..np).filter(|&k| positions[k].i == positions[k].j).collect();
            if let Some(&k0) = diag.first() {
                if self.torus.is_central(&positions[k0].mu) {
                    let mut row = vec![zero.clone(); np];
                    for &k in &diag {
                        row[k] = one.clone();
                    }
                    rows.push(row);
                }
            }
        }
        let (vectors, free) = nullspace(rows, np, order);
        let basis = vectors
            .iter()
            .map(|v| {
                let mut m = MatElement::zero(self.size, &self.torus);
                for (p, c) in positions.iter().zip(v) {
                    m.add_term(p.i, p.j, &p.mu, c);
                }
                m
            })
            .collect();
        Component { alpha: alpha.to_vec(), lambda: lambda.to_vec(), positions, vectors, free, basis }
    }

    /// Root of slot (i, j).
    pub fn position_root(&self, i: usize, j: usize) -> Vec<i64> {
        self.weights[i].iter().zip(&self.weights[j]).map(|(a, b)| a - b).collect()
    }

    /// Distinct ad(h)-weights of matrix slots, 0 included, in lexicographic order.
    pub fn candidate_roots(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> =
            (0..self.size).flat_map(|i| (0..self.size).map(move |j| (i, j))).map(|(i, j)| self.position_root(i, j)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Nonzero roots α with L_α ≠ 0.
    ///
    /// Component dimensions only depend on μ modulo 2 through ε and the
    /// (±1-valued) structure constants, so μ ∈ {0,1}^n is an exhaustive scan.
    pub fn root_support(&self) -> &RootSet {
        self.root_support.get_or_init(|| {
            let n = self.degree_rank();
            let residues: Vec<Vec<i64>> =
                (0u64..1 << n).map(|mask| (0..n).map(|i| ((mask >> i) & 1) as i64).collect()).collect();
            let mut roots = Vec::new();
            for alpha in self.candidate_roots() {
                if alpha.iter().all(|&a| a == 0) {
                    continue;
                }
                let found = (0..self.size).any(|i| {
                    (0..self.size).any(|j| {
                        self.position_root(i, j) == alpha
                            && residues.iter().any(|mu| {
                                let lambda = self.degree_of(i, j, mu);
                                self.component_dim(&alpha, &lambda).unwrap_or(0) > 0
                            })
                    })
                });
                if found {
                    roots.push(alpha);
                }
            }
            RootSet::new(self.root_dim(), roots).expect("weights have the root dimension")
        })
    }

    /// Basis h_1..h_r of the split toral subalgebra.
    pub fn cartan_basis(&self) -> Vec<MatElement> {
        let one = TorusElement::one(&self.torus);
        (0..self.r)
            .map(|k| {
                let other = if self.pi.is_empty() { k + 1 } else { self.pi[k] };
                let mut h = MatElement::unit(self.size, k, k, one.clone());
                h.add_entry(other, other, &one.neg());
                h
            })
            .collect()
    }

    /// Internal degrees in Λ with sup-norm ≤ radius, sorted by norm then lexicographically.
    pub fn box_degrees(&self, radius: i64) -> Vec<Vec<i64>> {
        let n = self.degree_rank();
        let side = (2 * radius + 1) as usize;
        let total = side.pow(n as u32);
        let mut out = Vec::new();
        for idx in 0..total {
            let mut x = idx;
            let v: Vec<i64> = (0..n)
                .map(|_| {
                    let c = (x % side) as i64 - radius;
                    x /= side;
                    c
                })
                .collect();
            if !self.doubled || self.lattice.contains(&v).expect("length") {
                out.push(v);
            }
        }
        out.sort_by_key(|v| (v.iter().map(|x| x.abs()).max().unwrap_or(0), v.iter().map(|x| x * x).sum::<i64>(), v.clone()));
        out
    }
}

/// Weights ε_1..ε_r, -ε_r..-ε_1 of the first 2r slots.
fn sym_weights(r: usize) -> Vec<Vec<i64>> {
    let mut w: Vec<Vec<i64>> = (0..r).map(|i| unit(r, i, 1)).collect();
    w.extend((0..r).rev().map(|i| unit(r, i, -1)));
    w
}

impl LieTorusModel {
    /// xy - yx.
    pub fn bracket(&self, x: &MatElement, y: &MatElement) -> MatElement {
        x.bracket(y)
    }

    /// Splits `x` by internal degree.
    pub fn homogeneous_parts(&self, x: &MatElement) -> std::collections::BTreeMap<Vec<i64>, MatElement> {
        let mut out = std::collections::BTreeMap::new();
        for (i, j, mu, c) in x.terms() {
            out.entry(self.degree_of(i, j, mu))
                .or_insert_with(|| MatElement::zero(self.size, &self.torus))
                .add_term(i, j, mu, c);
        }
        out
    }
}
