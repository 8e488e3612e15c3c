use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{cached_cyclotomic, gcd_u64, rdivrem, rmul, rsub, rtrim};
use super::{ExactError, Rational};

/// Precomputed reduction data for Q(ζ_M).
pub(crate) struct Field {
    order: u64,
    phi: usize,
    modulus: Vec<BigRational>,
    /// `reduce[k]` holds x^k mod Φ_M for k < 2φ - 1.
    reduce: Vec<Vec<BigInt>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

static FIELDS: OnceLock<Mutex<HashMap<u64, Arc<Field>>>> = OnceLock::new();

pub(crate) fn field(order: u64) -> Result<Arc<Field>, ExactError> {
    if order == 0 {
        return Err(ExactError::ZeroOrder);
    }
    let cache = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&order) {
        return Ok(f.clone());
    }
    let phi_poly = cached_cyclotomic(order)?;
    let phi = phi_poly.len() - 1;
    let mut reduce = Vec::with_capacity(2 * phi);
    let mut cur = vec![BigInt::zero(); phi];
    cur[0] = BigInt::one();
    for _ in 0..(2 * phi).max(1) {
        reduce.push(cur.clone());
        // multiply by x and reduce with the monic modulus
        let top = cur[phi - 1].clone();
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1].clone();
        }
        cur[0] = BigInt::zero();
        if !top.is_zero() {
            for (i, c) in cur.iter_mut().enumerate() {
                *c -= &top * &phi_poly[i];
            }
        }
    }
    let modulus = phi_poly.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let f = Arc::new(Field { order, phi, modulus, reduce });
    cache.lock().unwrap().insert(order, f.clone());
    Ok(f)
}

/// An element of Q(ζ_M) in the power basis 1, ζ, …, ζ^{φ(M)-1}.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<Field>,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(order: u64) -> Result<Self, ExactError> {
        let field = field(order)?;
        let coeffs = vec![BigRational::zero(); field.phi];
        Ok(Self { field, coeffs })
    }

    pub fn one(order: u64) -> Result<Self, ExactError> {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_rational(order: u64, q: Rational) -> Result<Self, ExactError> {
        let mut z = Self::zero(order)?;
        z.coeffs[0] = q;
        Ok(z)
    }

    pub fn from_integer(order: u64, n: i64) -> Result<Self, ExactError> {
        Self::from_rational(order, BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds an element from its power-basis coefficients.
    pub fn from_coeffs(order: u64, coeffs: Vec<Rational>) -> Result<Self, ExactError> {
        let field = field(order)?;
        if coeffs.len() != field.phi {
            return Err(ExactError::BadLength { got: coeffs.len(), expected: field.phi });
        }
        Ok(Self { field, coeffs })
    }

    /// ζ_M^e.
    pub fn root_of_unity(order: u64, e: i64) -> Result<Self, ExactError> {
        let field = field(order)?;
        let e = e.rem_euclid(order as i64) as usize;
        let coeffs = if e < field.reduce.len() {
            field.reduce[e].iter().map(|c| BigRational::from_integer(c.clone())).collect()
        } else {
            let mut mono = vec![BigRational::zero(); e + 1];
            mono[e] = BigRational::one();
            let (_, rem) = rdivrem(&mono, &field.modulus);
            pad(rem, field.phi)
        };
        Ok(Self { field, coeffs })
    }

    pub fn order(&self) -> u64 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<(), ExactError> {
        if self.field.order != other.field.order {
            Err(ExactError::OrderMismatch { left: self.field.order, right: other.field.order })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { field: self.field.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { field: self.field.clone(), coeffs })
    }

    /// Exact product reduced mod Φ_M.
    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        let phi = self.field.phi;
        if phi == 1 {
            return Ok(Self {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let mut prod = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut coeffs: Vec<BigRational> = prod[..phi].to_vec();
        for (k, c) in prod.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (j, r) in self.field.reduce[k].iter().enumerate() {
                if !r.is_zero() {
                    coeffs[j] += c * BigRational::from_integer(r.clone());
                }
            }
        }
        Ok(Self { field: self.field.clone(), coeffs })
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against Φ_M.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if self.field.phi == 1 {
            return Ok(Self { field: self.field.clone(), coeffs: vec![self.coeffs[0].recip()] });
        }
        let mut a = self.coeffs.clone();
        rtrim(&mut a);
        // invariant: r_i ≡ s_i · self (mod Φ_M)
        let mut r0 = self.field.modulus.clone();
        let mut r1 = a;
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = rdivrem(&r0, &r1);
            let s2 = rsub(&s0, &rmul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        debug_assert_eq!(r0.len(), 1, "Φ_M is irreducible");
        let c = r0[0].recip();
        let s: Vec<BigRational> = s0.iter().map(|x| x * &c).collect();
        let (_, rem) = rdivrem(&s, &self.field.modulus);
        Ok(Self { field: self.field.clone(), coeffs: pad(rem, self.field.phi) })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.try_mul(&other.inverse()?)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn pow(&self, e: i64) -> Result<Self, ExactError> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.order())?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            base = base.try_mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Image under the inclusion Q(ζ_M) ⊆ Q(ζ_N), ζ_M ↦ ζ_N^{N/M}.
    pub fn embed(&self, new_order: u64) -> Result<Self, ExactError> {
        let m = self.order();
        if new_order == 0 || !new_order.is_multiple_of(m) {
            return Err(ExactError::BadEmbedding { from: m, to: new_order });
        }
        let step = (new_order / m) as i64;
        let mut out = Self::zero(new_order)?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = Self::root_of_unity(new_order, step * k as i64)?;
            out = out.try_add(&z.scale(c))?;
        }
        Ok(out)
    }
}

fn pad(mut v: Vec<BigRational>, n: usize) -> Vec<BigRational> {
    v.resize(n, BigRational::zero());
    v
}

/// Common order for two elements: the lcm of their orders.
pub fn common_order(a: u64, b: u64) -> u64 {
    a / gcd_u64(a, b) * b
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in Q(zeta_{})", self.field.order)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.try_add(rhs).expect("cyclotomic order mismatch")
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.try_sub(rhs).expect("cyclotomic order mismatch")
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.try_mul(rhs).expect("cyclotomic order mismatch")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(mut self) -> Cyclotomic {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        assert_eq!(self.field.order, rhs.field.order, "cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        assert_eq!(self.field.order, rhs.field.order, "cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

/// Wire form of a [`Cyclotomic`]: `{"order": M, "coeffs": ["num/den", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicRepr {
    pub order: u64,
    pub coeffs: Vec<String>,
}

/// Parses `"n"` or `"n/d"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::ParseRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

impl From<&Cyclotomic> for CyclotomicRepr {
    fn from(c: &Cyclotomic) -> Self {
        Self { order: c.order(), coeffs: c.coeffs.iter().map(format_rational).collect() }
    }
}

impl TryFrom<&CyclotomicRepr> for Cyclotomic {
    type Error = ExactError;
    fn try_from(r: &CyclotomicRepr) -> Result<Self, ExactError> {
        let coeffs = r.coeffs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
        Cyclotomic::from_coeffs(r.order, coeffs)
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CyclotomicRepr::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = CyclotomicRepr::deserialize(deserializer)?;
        Cyclotomic::try_from(&repr).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn roots_of_unity_small_orders() {
        let minus_one = Cyclotomic::from_integer(2, -1).unwrap();
        assert_eq!(Cyclotomic::root_of_unity(2, 1).unwrap(), minus_one);
        let i = Cyclotomic::root_of_unity(4, 1).unwrap();
        assert_eq!(Cyclotomic::root_of_unity(4, 2).unwrap(), Cyclotomic::from_integer(4, -1).unwrap());
        assert_eq!(&i * &i, Cyclotomic::from_integer(4, -1).unwrap());
        assert!(Cyclotomic::root_of_unity(3, 3).unwrap().is_one());
        assert!(Cyclotomic::root_of_unity(5, -5).unwrap().is_one());
    }

    #[test]
    fn gaussian_integer_products_and_inverses() {
        let one = Cyclotomic::one(4).unwrap();
        let i = Cyclotomic::root_of_unity(4, 1).unwrap();
        let a = &one + &i;
        let b = &one - &i;
        assert_eq!(&a * &b, Cyclotomic::from_integer(4, 2).unwrap());
        assert_eq!(i.inverse().unwrap(), -&i);
        let expected = b.scale(&q(1, 2));
        assert_eq!(a.inverse().unwrap(), expected);
        assert_eq!(Cyclotomic::from_integer(4, 2).unwrap().inverse().unwrap(),
            Cyclotomic::from_rational(4, q(1, 2)).unwrap());
    }

    #[test]
    fn errors_are_explicit() {
        let a = Cyclotomic::one(3).unwrap();
        let b = Cyclotomic::one(4).unwrap();
        assert!(matches!(a.try_mul(&b), Err(ExactError::OrderMismatch { left: 3, right: 4 })));
        assert!(matches!(Cyclotomic::zero(5).unwrap().inverse(), Err(ExactError::DivisionByZero)));
        assert!(matches!(Cyclotomic::zero(0), Err(ExactError::ZeroOrder)));
    }

    #[test]
    fn embedding_preserves_roots() {
        let z3 = Cyclotomic::root_of_unity(3, 1).unwrap();
        let e = z3.embed(12).unwrap();
        assert_eq!(e, Cyclotomic::root_of_unity(12, 4).unwrap());
        assert!(z3.embed(8).is_err());
    }

    #[test]
    fn wire_form() {
        let z = Cyclotomic::root_of_unity(3, 2).unwrap();
        let json = serde_json::to_string(&z).unwrap();
        assert_eq!(json, r#"{"order":3,"coeffs":["-1/1","-1/1"]}"#);
        let back: Cyclotomic = serde_json::from_str(&json).unwrap();
        assert_eq!(back, z);
        assert!(serde_json::from_str::<Cyclotomic>(r#"{"order":3,"coeffs":["1/0","0"]}"#).is_err());
        assert!(serde_json::from_str::<Cyclotomic>(r#"{"order":3,"coeffs":["1"]}"#).is_err());
    }
}
