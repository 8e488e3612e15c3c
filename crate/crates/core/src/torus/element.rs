use std::collections::BTreeMap;
use std::sync::Arc;

use crate::exactnum::{Cyclotomic, Rational};

use super::{TorusError, TorusSpec};

/// Finitely supported element Σ a_λ t^λ; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusElement {
    spec: Arc<TorusSpec>,
    terms: BTreeMap<Vec<i64>, Cyclotomic>,
}

impl TorusElement {
    pub fn zero(spec: &Arc<TorusSpec>) -> Self {
        Self { spec: spec.clone(), terms: BTreeMap::new() }
    }

    pub fn monomial(spec: &Arc<TorusSpec>, degree: Vec<i64>, coeff: Cyclotomic) -> Result<Self, TorusError> {
        if degree.len() != spec.rank() {
            return Err(TorusError::DegreeLength { expected: spec.rank(), got: degree.len() });
        }
        if coeff.order() != spec.cyclo_order() {
            return Err(TorusError::CoefficientField { expected: spec.cyclo_order(), got: coeff.order() });
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(degree, coeff);
        }
        Ok(Self { spec: spec.clone(), terms })
    }

    /// t^λ with coefficient 1.
    pub fn unit_monomial(spec: &Arc<TorusSpec>, degree: Vec<i64>) -> Result<Self, TorusError> {
        Self::monomial(spec, degree, Cyclotomic::one(spec.cyclo_order()).expect("positive order"))
    }

    pub fn one(spec: &Arc<TorusSpec>) -> Self {
        Self::unit_monomial(spec, vec![0; spec.rank()]).expect("valid degree")
    }

    pub fn spec(&self) -> &Arc<TorusSpec> {
        &self.spec
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Cyclotomic> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, degree: &[i64]) -> Option<&Cyclotomic> {
        self.terms.get(degree)
    }

    /// The degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self) -> Option<&[i64]> {
        if self.terms.len() == 1 {
            self.terms.keys().next().map(Vec::as_slice)
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<(), TorusError> {
        if Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec {
            Ok(())
        } else {
            Err(TorusError::SpecMismatch)
        }
    }

    /// Adds c·t^λ in place.
    pub fn add_term(&mut self, degree: &[i64], coeff: &Cyclotomic) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(degree) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(degree);
                }
            }
            None => {
                self.terms.insert(degree.to_vec(), coeff.clone());
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, TorusError> {
        self.check(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, TorusError> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { spec: self.spec.clone(), terms: self.terms.iter().map(|(d, c)| (d.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &Cyclotomic) -> Self {
        if s.is_zero() {
            return Self::zero(&self.spec);
        }
        Self { spec: self.spec.clone(), terms: self.terms.iter().map(|(d, c)| (d.clone(), c * s)).collect() }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        if num_traits::Zero::is_zero(q) {
            return Self::zero(&self.spec);
        }
        Self { spec: self.spec.clone(), terms: self.terms.iter().map(|(d, c)| (d.clone(), c.scale(q))).collect() }
    }

    /// Product with t^λ t^μ = ζ^{σ(λ,μ)} t^{λ+μ}.
    pub fn try_mul(&self, other: &Self) -> Result<Self, TorusError> {
        self.check(other)?;
        let mut out = Self::zero(&self.spec);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let deg: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                let e = self.spec.sigma(a, b);
                let mut c = x * y;
                if e != 0 {
                    c = &c * &self.spec.zeta_power(e);
                }
                out.add_term(&deg, &c);
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self, TorusError> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// Inverse of a monomial c·t^μ: c⁻¹ ζ^{-σ(μ,-μ)} t^{-μ}.
    pub fn monomial_inverse(&self) -> Result<Self, TorusError> {
        let (mu, c) = match self.terms.iter().next() {
            Some((d, c)) if self.terms.len() == 1 => (d, c),
            _ => return Err(TorusError::NotMonomial),
        };
        let neg: Vec<i64> = mu.iter().map(|x| -x).collect();
        let e = self.spec.sigma(mu, &neg);
        let coeff = &c.inverse().expect("nonzero") * &self.spec.zeta_power(-e);
        Self::monomial(&self.spec, neg, coeff)
    }

    /// Applies the involution: bar(Σ a_λ t^λ) = Σ a_λ ε(λ) t^λ.
    pub fn bar(&self) -> Result<Self, TorusError> {
        let mut terms = BTreeMap::new();
        for (d, c) in &self.terms {
            let e = self.spec.involution_factor(d)?;
            terms.insert(d.clone(), if e == 1 { c.clone() } else { -c });
        }
        Ok(Self { spec: self.spec.clone(), terms })
    }

    /// Componentwise test for membership in [A,A]: central components must vanish.
    pub fn in_bracket_space(&self) -> bool {
        self.terms.keys().all(|d| !self.spec.is_central(d))
    }
}
