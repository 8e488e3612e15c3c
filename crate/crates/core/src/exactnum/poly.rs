use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ExactError;

/// Euler's totient.
pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

fn trim_int(p: &mut Vec<BigInt>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Exact division of `num` by the monic polynomial `den`; panics if the
/// remainder is nonzero.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    if rem.len() <= dd {
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for shift in (0..quot.len()).rev() {
        let lead = rem[shift + dd].clone();
        if lead.is_zero() {
            continue;
        }
        for (k, c) in den.iter().enumerate() {
            rem[shift + k] -= &lead * c;
        }
        quot[shift] = lead;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    trim_int(&mut quot);
    quot
}

static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();

pub(crate) fn cached_cyclotomic(m: u64) -> Result<Arc<Vec<BigInt>>, ExactError> {
    if m == 0 {
        return Err(ExactError::ZeroOrder);
    }
    if m > super::MAX_ORDER {
        return Err(ExactError::OrderTooLarge(m));
    }
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return Ok(p.clone());
    }
    // x^m - 1
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in divisors(m) {
        if d < m {
            let phi_d = cached_cyclotomic(d)?;
            num = exact_div_monic(&num, &phi_d);
        }
    }
    let arc = Arc::new(num);
    cache.lock().unwrap().insert(m, arc.clone());
    Ok(arc)
}

/// The `m`-th cyclotomic polynomial, coefficients listed from the constant
/// term upwards.
pub fn cyclotomic_polynomial(m: u64) -> Result<Vec<BigInt>, ExactError> {
    cached_cyclotomic(m).map(|p| p.as_ref().clone())
}

// Dense polynomials over Q, constant term first. The empty vector is zero.

pub(crate) fn rtrim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn rdivrem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = num.to_vec();
    rtrim(&mut rem);
    let mut den = den.to_vec();
    rtrim(&mut den);
    assert!(!den.is_empty(), "polynomial division by zero");
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let lead_inv = den[dd].recip();
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    for shift in (0..quot.len()).rev() {
        let lead = &rem[shift + dd] * &lead_inv;
        if lead.is_zero() {
            continue;
        }
        for (k, c) in den.iter().enumerate() {
            let t = &lead * c;
            rem[shift + k] -= t;
        }
        quot[shift] = lead;
    }
    rtrim(&mut quot);
    rtrim(&mut rem);
    (quot, rem)
}

pub(crate) fn rmul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rtrim(&mut out);
    out
}

pub(crate) fn rsub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    rtrim(&mut out);
    out
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2).unwrap(), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4).unwrap(), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6).unwrap(), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12).unwrap(), ints(&[1, 0, -1, 0, 1]));
        assert!(matches!(cyclotomic_polynomial(0), Err(ExactError::ZeroOrder)));
        assert!(matches!(cyclotomic_polynomial(1 << 40), Err(ExactError::OrderTooLarge(_))));
    }

    #[test]
    fn degree_is_totient() {
        for m in 1..=100u64 {
            let p = cyclotomic_polynomial(m).unwrap();
            assert_eq!(p.len() as u64 - 1, euler_phi(m), "m = {m}");
        }
    }

    #[test]
    fn phi_105_has_a_minus_two() {
        // first cyclotomic polynomial with a coefficient outside {-1,0,1}
        let p = cyclotomic_polynomial(105).unwrap();
        assert!(p.contains(&BigInt::from(-2)));
    }
}
