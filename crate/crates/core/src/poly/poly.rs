use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::monomial::{format_factors, Monomial, MonomialKind, Word};
use crate::scalar::Field;

/// A polynomial with exact coefficients over monomials of kind `M`.
///
/// Terms are kept in a `BTreeMap` keyed by the monomial order, so the leading
/// term is the last entry. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F, M> {
    nvars: usize,
    terms: BTreeMap<M, F>,
}

pub type CommPoly<F> = Poly<F, Monomial>;
pub type WordPoly<F> = Poly<F, Word>;

impl<F: Field, M: MonomialKind> Poly<F, M> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::term(M::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::term(M::var(nvars, index), F::one())
    }

    pub fn term(m: M, c: F) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (M, F)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&M, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &M) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&M::one(self.nvars))
    }

    pub fn leading_term(&self) -> Option<(&M, &F)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: M, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCount { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn mul_term(&self, m: &M, c: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            out.add_term(m.mul(ma), c.clone() * ca.clone());
        }
        out
    }

    /// Highest total degree of a term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_components(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_insert_with(|| Self::zero(self.nvars)).add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn parse(input: &str, nvars: usize) -> Result<Self> {
        crate::poly::parse::parse_poly(input, nvars)
    }
}

impl<F: Field> CommPoly<F> {
    /// Substitutes `z_k ↦ 0` for every `k` in `vars`.
    pub fn kill_vars(&self, vars: &[usize]) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|k| m.exponents()[*k] == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<F: Field, M: MonomialKind> fmt::Display for Poly<F, M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c.clone() } else { c.clone() };
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let factors = m.factors();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", format_factors(&factors))?;
            } else {
                write!(f, "{abs}*{}", format_factors(&factors))?;
            }
        }
        Ok(())
    }
}

impl<F: Field, M: MonomialKind> fmt::Debug for Poly<F, M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type P = CommPoly<Rational>;
    type W = WordPoly<Rational>;

    fn p(s: &str) -> P {
        P::parse(s, 2).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = p("z1 + z2");
        let b = p("z1 - z2");
        assert_eq!(a.mul(&b).unwrap(), p("z1^2 - z2^2"));
    }

    #[test]
    fn words_are_distinct() {
        let z1 = W::var(2, 0);
        let z2 = W::var(2, 1);
        assert_ne!(z1.mul(&z2).unwrap(), z2.mul(&z1).unwrap());
        assert_eq!(z1.mul(&z2).unwrap().to_string(), "z1*z2");
    }

    #[test]
    fn components_by_degree() {
        let comps = p("z1^2 + z2").homogeneous_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&2], p("z1^2"));
        assert_eq!(comps[&1], p("z2"));
        assert!(!p("z1^2 + z2").is_homogeneous());
    }

    #[test]
    fn mismatched_variable_counts_are_rejected() {
        let a = P::var(2, 0);
        let b = P::var(3, 0);
        assert!(matches!(a.add(&b), Err(Error::VariableCount { left: 2, right: 3 })));
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn homogeneous_product_degree() {
        let a = p("z1^2 - 3*z1*z2");
        let b = p("1/2*z2^3 + z1^3");
        let c = a.mul(&b).unwrap();
        assert!(c.is_homogeneous());
        assert_eq!(c.degree(), Some(5));
    }

    #[test]
    fn prints_leading_term_first() {
        assert_eq!(p("z2^2 + 3/2*z1^2").to_string(), "3/2*z1^2 + z2^2");
        assert_eq!(p("-z1 + 1").to_string(), "-z1 + 1");
        assert_eq!(P::zero(2).to_string(), "0");
    }
}
