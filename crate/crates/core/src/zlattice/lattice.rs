use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::snf::{smith_normal_form, Snf};
use super::{IntMatrix, LatticeError};

/// Finite-plus-free abelian group ⊕ Z_{d_i} ⊕ Z^free, d_1 | d_2 | ... and every d_i > 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuotientGroup {
    pub torsion: Vec<u64>,
    pub free: usize,
}

impl QuotientGroup {
    pub fn trivial() -> Self {
        Self { torsion: Vec::new(), free: 0 }
    }

    /// Normalizes an arbitrary list of cyclic orders to invariant factors.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let diag: Vec<i64> = orders.iter().map(|&d| d as i64).collect();
        let n = diag.len();
        let mut entries = vec![0i64; n * n];
        for (i, d) in diag.iter().enumerate() {
            entries[i * n + i] = *d;
        }
        let m = IntMatrix::from_i64(n, n, &entries).expect("square");
        let snf = smith_normal_form(&m);
        let torsion = snf
            .diagonal()
            .iter()
            .filter(|d| !d.is_one() && !d.is_zero())
            .map(|d| d.to_u64().expect("fits"))
            .collect();
        let free = snf.diagonal().iter().filter(|d| d.is_zero()).count();
        Self { torsion, free }
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        (self.free == 0).then(|| self.torsion.iter().product())
    }
}

impl std::fmt::Display for QuotientGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.torsion.is_empty() && self.free == 0 {
            return write!(f, "{{0}}");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z{d}")).collect();
        if self.free > 0 {
            parts.push(format!("Z^{}", self.free));
        }
        write!(f, "{}", parts.join("+"))
    }
}

/// Subgroup of Z^n given by generating columns.
#[derive(Debug, Clone)]
pub struct Sublattice {
    ambient_rank: usize,
    generators: IntMatrix,
    snf: OnceLock<Snf>,
}

impl PartialEq for Sublattice {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.contains_lattice(other) && other.contains_lattice(self)
    }
}

impl Eq for Sublattice {}

impl Sublattice {
    pub fn new(ambient_rank: usize, generators: IntMatrix) -> Result<Self, LatticeError> {
        if generators.rows() != ambient_rank {
            return Err(LatticeError::LengthMismatch { expected: ambient_rank, got: generators.rows() });
        }
        Ok(Self { ambient_rank, generators, snf: OnceLock::new() })
    }

    pub fn from_vectors(ambient_rank: usize, vectors: &[Vec<i64>]) -> Result<Self, LatticeError> {
        Self::new(ambient_rank, IntMatrix::from_columns(ambient_rank, vectors)?)
    }

    /// k·Z^n.
    pub fn scaled_full(n: usize, k: i64) -> Self {
        let vs: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = k;
                v
            })
            .collect();
        Self::from_vectors(n, &vs).expect("consistent lengths")
    }

    pub fn full(n: usize) -> Self {
        Self::scaled_full(n, 1)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn generator_vectors(&self) -> Vec<Vec<i64>> {
        (0..self.generators.cols())
            .map(|j| self.generators.column_i64(j).expect("generator fits in i64"))
            .collect()
    }

    fn snf(&self) -> &Snf {
        self.snf.get_or_init(|| smith_normal_form(&self.generators))
    }

    pub fn rank(&self) -> usize {
        self.snf().rank()
    }

    /// A Z-basis (columns of U⁻¹·diag(d)).
    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        let snf = self.snf();
        let d = snf.diagonal();
        (0..snf.rank())
            .map(|j| snf.u_inv.column(j).into_iter().map(|x| x * &d[j]).collect())
            .collect()
    }

    pub fn basis_i64(&self) -> Vec<Vec<i64>> {
        self.basis()
            .into_iter()
            .map(|v| v.iter().map(|x| i64::try_from(x).expect("basis fits in i64")).collect())
            .collect()
    }

    /// Coordinates of `x` in [`Self::basis`], or `None` when `x ∉ Γ`.
    pub fn coordinates(&self, x: &[BigInt]) -> Result<Option<Vec<BigInt>>, LatticeError> {
        if x.len() != self.ambient_rank {
            return Err(LatticeError::LengthMismatch { expected: self.ambient_rank, got: x.len() });
        }
        let snf = self.snf();
        let y = snf.u.mul_vec(x)?;
        let d = snf.diagonal();
        let r = snf.rank();
        if y[r..].iter().any(|v| !v.is_zero()) {
            return Ok(None);
        }
        let mut z = Vec::with_capacity(r);
        for i in 0..r {
            let (q, rem) = y[i].div_rem(&d[i]);
            if !rem.is_zero() {
                return Ok(None);
            }
            z.push(q);
        }
        Ok(Some(z))
    }

    pub fn contains(&self, x: &[i64]) -> Result<bool, LatticeError> {
        let big: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        Ok(self.coordinates(&big)?.is_some())
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> bool {
        other.ambient_rank == self.ambient_rank
            && (0..other.generators.cols())
                .all(|j| matches!(self.coordinates(&other.generators.column(j)), Ok(Some(_))))
    }

    /// Z^n / Γ.
    pub fn quotient_invariants(&self) -> QuotientGroup {
        quotient_from_snf(self.snf(), self.ambient_rank)
    }

    /// [Z^n : Γ], `None` if infinite.
    pub fn index(&self) -> Option<u64> {
        self.quotient_invariants().order()
    }

    /// Γ-coordinates of `inner`'s generators; errors if `inner ⊄ self`.
    fn inner_coordinates(&self, inner: &Sublattice) -> Result<IntMatrix, LatticeError> {
        if inner.ambient_rank != self.ambient_rank {
            return Err(LatticeError::LengthMismatch { expected: self.ambient_rank, got: inner.ambient_rank });
        }
        let r = self.rank();
        let mut m = IntMatrix::zeros(r, inner.generators.cols());
        for j in 0..inner.generators.cols() {
            let z = self.coordinates(&inner.generators.column(j))?.ok_or(LatticeError::NotContained)?;
            for (i, v) in z.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(m)
    }

    /// self / inner, for `inner ⊆ self`.
    pub fn relative_quotient(&self, inner: &Sublattice) -> Result<QuotientGroup, LatticeError> {
        let coords = self.inner_coordinates(inner)?;
        Ok(quotient_from_snf(&smith_normal_form(&coords), self.rank()))
    }

    /// Representatives of self / inner, the first being 0.
    pub fn relative_coset_representatives(&self, inner: &Sublattice) -> Result<Vec<Vec<i64>>, LatticeError> {
        let coords = self.inner_coordinates(inner)?;
        let r = self.rank();
        let snf = smith_normal_form(&coords);
        let q = quotient_from_snf(&snf, r);
        if q.free > 0 {
            return Err(LatticeError::InfiniteQuotient { free: q.free });
        }
        let d: Vec<u64> = (0..r).map(|i| snf.s[(i, i)].to_u64().expect("positive factor")).collect();
        let own_basis = self.basis();
        let mut out = Vec::new();
        for x in mixed_radix(&d) {
            let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
            let z = snf.u_inv.mul_vec(&xb)?;
            let mut v = vec![BigInt::zero(); self.ambient_rank];
            for (zi, b) in z.iter().zip(&own_basis) {
                for (vk, bk) in v.iter_mut().zip(b) {
                    *vk += zi * bk;
                }
            }
            out.push(v.iter().map(|x| i64::try_from(x).map_err(|_| LatticeError::Overflow)).collect::<Result<_, _>>()?);
        }
        Ok(out)
    }

    /// Representatives of Z^n / Γ, the first being 0.
    pub fn coset_representatives(&self) -> Result<Vec<Vec<i64>>, LatticeError> {
        Sublattice::full(self.ambient_rank).relative_coset_representatives(self)
    }

    /// Γ + Γ'.
    pub fn sum(&self, other: &Sublattice) -> Result<Sublattice, LatticeError> {
        let mut vs = self.generator_vectors();
        vs.extend(other.generator_vectors());
        Sublattice::from_vectors(self.ambient_rank, &vs)
    }

    /// k·Γ.
    pub fn scale(&self, k: i64) -> Sublattice {
        let vs: Vec<Vec<i64>> =
            self.generator_vectors().into_iter().map(|v| v.into_iter().map(|x| x * k).collect()).collect();
        Sublattice::from_vectors(self.ambient_rank, &vs).expect("same lengths")
    }
}

fn quotient_from_snf(snf: &Snf, ambient: usize) -> QuotientGroup {
    let rank = snf.rank();
    let torsion = snf
        .diagonal()
        .iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .map(|d| d.abs().to_u64().expect("invariant factor fits in u64"))
        .collect();
    QuotientGroup { torsion, free: ambient - rank }
}

/// All x with 0 ≤ x_i < d_i, lexicographic with the first coordinate fastest.
fn mixed_radix(d: &[u64]) -> Vec<Vec<u64>> {
    let total: u64 = d.iter().product();
    let mut out = Vec::with_capacity(total as usize);
    let mut cur = vec![0u64; d.len()];
    for _ in 0..total {
        out.push(cur.clone());
        for (c, &di) in cur.iter_mut().zip(d) {
            *c += 1;
            if *c < di {
                break;
            }
            *c = 0;
        }
    }
    out
}

/// Kernel of λ ↦ c·λ mod M on Z^n.
pub fn congruence_kernel(c: &IntMatrix, modulus: u64) -> Result<Sublattice, LatticeError> {
    if modulus == 0 {
        return Err(LatticeError::ZeroModulus);
    }
    if c.rows() != c.cols() {
        return Err(LatticeError::NotSquare { rows: c.rows(), cols: c.cols() });
    }
    let n = c.cols();
    let snf = smith_normal_form(c);
    let d = snf.diagonal();
    let m = BigInt::from(modulus);
    let mut gens = IntMatrix::zeros(n, n);
    for j in 0..n {
        let factor = match d.get(j) {
            Some(dj) if !dj.is_zero() => &m / dj.gcd(&m),
            _ => BigInt::one(),
        };
        for i in 0..n {
            gens[(i, j)] = &snf.v[(i, j)] * &factor;
        }
    }
    Sublattice::new(n, gens)
}
