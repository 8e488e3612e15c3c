use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::exactnum::Cyclotomic;
use crate::zlattice::{congruence_kernel, IntMatrix, Sublattice};

use super::TorusError;

/// One tensor factor of an involution in normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FactorTag {
    /// (Q(-1), ♮): both generators anti-fixed.
    QNatural,
    /// (Q(-1), *): both generators fixed.
    QStar,
    /// (R_1, ♮): the generator anti-fixed.
    R1Natural,
    /// (R_q, 1).
    Trivial(usize),
}

impl FactorTag {
    pub fn rank(self) -> usize {
        match self {
            FactorTag::QNatural | FactorTag::QStar => 2,
            FactorTag::R1Natural => 1,
            FactorTag::Trivial(q) => q,
        }
    }

    fn signs(self) -> Vec<i8> {
        match self {
            FactorTag::QNatural => vec![-1, -1],
            FactorTag::QStar => vec![1, 1],
            FactorTag::R1Natural => vec![-1],
            FactorTag::Trivial(q) => vec![1; q],
        }
    }
}

/// Involution data: bar(t_i) = s_i t_i, extended anti-multiplicatively.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvolutionSpec {
    pub signs: Vec<i8>,
    pub tags: Vec<FactorTag>,
}

/// Basic building blocks accepted by [`TorusSpec::make_basic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasicTag {
    /// Q(ζ) with ζ = ζ_M^e, no involution.
    Quantum { order: u64, exponent: i64 },
    /// R_q with the trivial involution.
    Laurent(usize),
    R1Involution,
    QMinus1Standard,
    QMinus1Reversal,
}

/// Twisted group algebra of Z^n with t_i t_j = ζ_M^{c_ij} t_j t_i (i > j).
///
/// Monomials are ordered t_1^{λ_1}⋯t_n^{λ_n}, giving the cocycle
/// σ(λ,μ) = Σ_{i>j} c_ij λ_i μ_j. Exponents are stored reduced into [0, M).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TorusSpecRepr", into = "TorusSpecRepr")]
pub struct TorusSpec {
    rank: usize,
    cyclo_order: u64,
    comm: Vec<Vec<i64>>,
    involution: Option<InvolutionSpec>,
}

#[derive(Serialize, Deserialize)]
struct TorusSpecRepr {
    rank: usize,
    cyclo_order: u64,
    comm_exponents: Vec<Vec<i64>>,
    involution: Option<InvolutionSpec>,
}

impl TryFrom<TorusSpecRepr> for TorusSpec {
    type Error = TorusError;
    fn try_from(r: TorusSpecRepr) -> Result<Self, TorusError> {
        TorusSpec::from_parts(r.rank, r.cyclo_order, r.comm_exponents, r.involution)
    }
}

impl From<TorusSpec> for TorusSpecRepr {
    fn from(s: TorusSpec) -> Self {
        TorusSpecRepr { rank: s.rank, cyclo_order: s.cyclo_order, comm_exponents: s.comm, involution: s.involution }
    }
}

impl TorusSpec {
    /// Validated constructor; the involution, if any, must be consistent with its tags.
    pub fn from_parts(
        rank: usize,
        cyclo_order: u64,
        comm: Vec<Vec<i64>>,
        involution: Option<InvolutionSpec>,
    ) -> Result<Self, TorusError> {
        if cyclo_order == 0 {
            return Err(TorusError::ZeroOrder);
        }
        if cyclo_order > crate::exactnum::MAX_ORDER {
            return Err(TorusError::OrderTooLarge(cyclo_order));
        }
        let m = cyclo_order as i64;
        if comm.len() != rank || comm.iter().any(|row| row.len() != rank) {
            return Err(TorusError::Shape { rank });
        }
        let comm: Vec<Vec<i64>> = comm.iter().map(|row| row.iter().map(|c| c.rem_euclid(m)).collect()).collect();
        for i in 0..rank {
            if comm[i][i] != 0 {
                return Err(TorusError::NotAntisymmetric { i, j: i });
            }
            for j in 0..i {
                if (comm[i][j] + comm[j][i]) % m != 0 {
                    return Err(TorusError::NotAntisymmetric { i, j });
                }
            }
        }
        let spec = Self { rank, cyclo_order, comm, involution };
        if let Some(inv) = &spec.involution {
            spec.validate_involution(inv)?;
        }
        Ok(spec)
    }

    fn validate_involution(&self, inv: &InvolutionSpec) -> Result<(), TorusError> {
        if inv.signs.len() != self.rank || inv.signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(TorusError::BadInvolution("sign vector".into()));
        }
        let m = self.cyclo_order as i64;
        for i in 0..self.rank {
            for j in 0..self.rank {
                if (2 * self.comm[i][j]) % m != 0 {
                    return Err(TorusError::BadInvolution(format!("q_{i}{j} squared is not 1")));
                }
            }
        }
        let total: usize = inv.tags.iter().map(|t| t.rank()).sum();
        if total != self.rank {
            return Err(TorusError::BadInvolution("tag ranks do not sum to the torus rank".into()));
        }
        let mut offset = 0;
        let mut block_of = vec![0usize; self.rank];
        let half = if m % 2 == 0 { m / 2 } else { -1 };
        for (b, tag) in inv.tags.iter().enumerate() {
            let r = tag.rank();
            if inv.signs[offset..offset + r] != tag.signs()[..] {
                return Err(TorusError::BadInvolution(format!("signs disagree with tag {tag:?}")));
            }
            if matches!(tag, FactorTag::QNatural | FactorTag::QStar) && self.comm[offset][offset + 1] != half {
                return Err(TorusError::BadInvolution(format!("{tag:?} needs a zeta = -1 block")));
            }
            block_of[offset..offset + r].fill(b);
            offset += r;
        }
        for i in 0..self.rank {
            for j in 0..self.rank {
                let same = block_of[i] == block_of[j];
                let quantum = same && matches!(inv.tags[block_of[i]], FactorTag::QNatural | FactorTag::QStar);
                if !quantum && self.comm[i][j] != 0 {
                    return Err(TorusError::BadInvolution("commutation outside a Q(-1) block".into()));
                }
            }
        }
        Ok(())
    }

    pub fn make_basic(tag: BasicTag) -> Result<Self, TorusError> {
        match tag {
            BasicTag::Quantum { order, exponent } => {
                if order == 0 {
                    return Err(TorusError::ZeroOrder);
                }
                if order > crate::exactnum::MAX_ORDER {
                    return Err(TorusError::OrderTooLarge(order));
                }
                if exponent.rem_euclid(order as i64) == 0 {
                    return Err(TorusError::TrivialQuantum);
                }
                Self::from_parts(2, order, vec![vec![0, exponent], vec![-exponent, 0]], None)
            }
            BasicTag::Laurent(q) => Self::from_parts(
                q,
                1,
                vec![vec![0; q]; q],
                Some(InvolutionSpec { signs: vec![1; q], tags: vec![FactorTag::Trivial(q)] }),
            ),
            BasicTag::R1Involution => Self::from_parts(
                1,
                1,
                vec![vec![0]],
                Some(InvolutionSpec { signs: vec![-1], tags: vec![FactorTag::R1Natural] }),
            ),
            BasicTag::QMinus1Standard | BasicTag::QMinus1Reversal => {
                let t = if tag == BasicTag::QMinus1Standard { FactorTag::QNatural } else { FactorTag::QStar };
                Self::from_parts(
                    2,
                    2,
                    vec![vec![0, 1], vec![-1, 0]],
                    Some(InvolutionSpec { signs: t.signs(), tags: vec![t] }),
                )
            }
        }
    }

    /// Block-diagonal tensor product over the lcm of the cyclotomic orders.
    /// The result carries an involution only when both factors do.
    pub fn tensor(&self, other: &Self) -> Self {
        let m = self.cyclo_order.lcm(&other.cyclo_order);
        let (fa, fb) = ((m / self.cyclo_order) as i64, (m / other.cyclo_order) as i64);
        let n = self.rank + other.rank;
        let mut comm = vec![vec![0i64; n]; n];
        for i in 0..self.rank {
            for j in 0..self.rank {
                comm[i][j] = self.comm[i][j] * fa;
            }
        }
        for i in 0..other.rank {
            for j in 0..other.rank {
                comm[self.rank + i][self.rank + j] = other.comm[i][j] * fb;
            }
        }
        let involution = match (&self.involution, &other.involution) {
            (Some(a), Some(b)) => {
                let mut signs = a.signs.clone();
                signs.extend(&b.signs);
                let mut tags = a.tags.clone();
                tags.extend(&b.tags);
                tags.retain(|t| t.rank() > 0);
                Some(InvolutionSpec { signs, tags })
            }
            _ => None,
        };
        Self::from_parts(n, m, comm, involution).expect("tensor of valid specs is valid")
    }

    /// Laurent polynomials in zero variables: the base field.
    pub fn point() -> Self {
        Self::make_basic(BasicTag::Laurent(0)).expect("valid")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cyclo_order(&self) -> u64 {
        self.cyclo_order
    }

    pub fn comm_exponents(&self) -> &[Vec<i64>] {
        &self.comm
    }

    pub fn involution(&self) -> Option<&InvolutionSpec> {
        self.involution.as_ref()
    }

    pub fn without_involution(&self) -> Self {
        Self { involution: None, ..self.clone() }
    }

    /// σ(λ,μ) mod M.
    pub fn sigma(&self, a: &[i64], b: &[i64]) -> i64 {
        let m = self.cyclo_order as i64;
        let mut s: i64 = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..i {
                let c = self.comm[i][j];
                if c != 0 && b[j] != 0 {
                    s = (s + c * (a[i].rem_euclid(m)) % m * (b[j].rem_euclid(m))) % m;
                }
            }
        }
        s
    }

    pub fn zeta_power(&self, e: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.cyclo_order, e).expect("positive order")
    }

    /// Exponent e with t^λ t^μ = ζ^e t^μ t^λ.
    pub fn commutation_exponent(&self, a: &[i64], b: &[i64]) -> i64 {
        let m = self.cyclo_order as i64;
        (self.sigma(a, b) - self.sigma(b, a)).rem_euclid(m)
    }

    /// ε(λ) with bar(t^λ) = ε(λ) t^λ.
    pub fn involution_factor(&self, degree: &[i64]) -> Result<i8, TorusError> {
        let inv = self.involution.as_ref().ok_or(TorusError::NoInvolution)?;
        let m = self.cyclo_order as i64;
        let mut odd = 0i64;
        for (s, l) in inv.signs.iter().zip(degree) {
            if *s == -1 && l.rem_euclid(2) == 1 {
                odd += 1;
            }
        }
        // reversal of the ordered monomial contributes ζ^{σ(λ,λ)}, which is ±1
        let e = self.sigma(degree, degree);
        let twist = if e == 0 {
            1
        } else {
            debug_assert_eq!(2 * e, m, "period-2 involution forces a sign");
            -1
        };
        Ok(if odd % 2 == 0 { twist } else { -twist })
    }

    /// Γ(A) = supp Z(A).
    pub fn center_support(&self) -> Sublattice {
        let flat: Vec<i64> = self.comm.iter().flatten().copied().collect();
        let c = IntMatrix::from_i64(self.rank, self.rank, &flat).expect("square");
        congruence_kernel(&c, self.cyclo_order).expect("positive order")
    }

    /// Γ(A,-) = supp Z(A,-), the kernel of ε on Γ(A).
    pub fn hermitian_center_support(&self) -> Result<Sublattice, TorusError> {
        if self.involution.is_none() {
            return Err(TorusError::NoInvolution);
        }
        let basis = self.center_support().basis_i64();
        let signs: Vec<i8> = basis.iter().map(|g| self.involution_factor(g)).collect::<Result<_, _>>()?;
        let pivot = signs.iter().position(|&s| s == -1);
        let mut gens = Vec::new();
        for (g, s) in basis.iter().zip(&signs) {
            match (s, pivot) {
                (1, _) => gens.push(g.clone()),
                (_, Some(p)) => gens.push(g.iter().zip(&basis[p]).map(|(a, b)| a + b).collect()),
                _ => unreachable!(),
            }
        }
        if let Some(p) = pivot {
            gens.push(basis[p].iter().map(|x| 2 * x).collect());
        }
        Ok(Sublattice::from_vectors(self.rank, &gens).expect("consistent lengths"))
    }

    pub fn is_central(&self, degree: &[i64]) -> bool {
        let m = self.cyclo_order as i64;
        (0..self.rank).all(|i| (0..self.rank).map(|j| self.comm[i][j] * degree[j]).sum::<i64>().rem_euclid(m) == 0)
    }

    /// [A_-, A_-] ⊆ A_+A_+ restricted to degrees a, b with ε(a) = ε(b) = -1.
    ///
    /// A_+A_+ in degree ν is nonzero iff some c has ε(c) = ε(ν-c) = +1, and ε
    /// only depends on the residue mod 2, so scanning {0,1}^n is exhaustive.
    pub fn skew_bracket_in_symmetric_square(&self, a: &[i64], b: &[i64]) -> Result<bool, TorusError> {
        if self.involution_factor(a)? != -1 || self.involution_factor(b)? != -1 {
            return Err(TorusError::NotSkew);
        }
        if self.commutation_exponent(a, b) == 0 {
            return Ok(true);
        }
        let nu: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        Ok(self.symmetric_square_hits(&nu))
    }

    fn symmetric_square_hits(&self, nu: &[i64]) -> bool {
        let n = self.rank;
        (0u64..1 << n).any(|mask| {
            let c: Vec<i64> = (0..n).map(|i| ((mask >> i) & 1) as i64).collect();
            let rest: Vec<i64> = nu.iter().zip(&c).map(|(x, y)| x - y).collect();
            self.involution_factor(&c) == Ok(1) && self.involution_factor(&rest) == Ok(1)
        })
    }

    /// (rank over Z(A,-) of A, rank over Z(A,-) of A_+), by counting cosets of Γ(A,-).
    pub fn hermitian_ranks(&self) -> Result<(usize, usize), TorusError> {
        let gamma = self.hermitian_center_support()?;
        let reps = gamma.coset_representatives().map_err(|e| TorusError::Lattice(e.to_string()))?;
        let plus = reps.iter().filter(|r| self.involution_factor(r) == Ok(1)).count();
        Ok((reps.len(), plus))
    }
}
