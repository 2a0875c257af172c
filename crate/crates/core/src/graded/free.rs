use std::collections::HashMap;

use crate::poly::{monomials_of_degree, Monomial};
use crate::scalar::binomial;
use crate::Rational;

/// Free module `⊕_j S(-a_j)` over `S = Q[z1, …, zd]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedFree {
    nvars: usize,
    gen_degrees: Vec<i64>,
}

/// Basis element of a degree component: generator index and the monomial
/// multiplying it.
pub type BasisElement = (usize, Monomial);

impl GradedFree {
    pub fn new(nvars: usize, gen_degrees: Vec<i64>) -> Self {
        GradedFree { nvars, gen_degrees }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::new(nvars, Vec::new())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.gen_degrees.len()
    }

    pub fn gen_degrees(&self) -> &[i64] {
        &self.gen_degrees
    }

    pub fn degree(&self, j: usize) -> i64 {
        self.gen_degrees[j]
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.gen_degrees.iter().copied().min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.gen_degrees.iter().copied().max()
    }

    /// Number of monomials of degree `k` in `d` variables.
    pub fn monomial_count(nvars: usize, k: i64) -> usize {
        if k < 0 {
            return 0;
        }
        if nvars == 0 {
            return usize::from(k == 0);
        }
        let c: Rational = binomial(k as u64 + nvars as u64 - 1, nvars as u64 - 1);
        c.to_integer().try_into().expect("dimension fits in usize")
    }

    pub fn component_dim(&self, n: i64) -> usize {
        self.gen_degrees.iter().map(|a| Self::monomial_count(self.nvars, n - a)).sum()
    }

    /// Basis of the degree-`n` component: generators in order, each followed
    /// by its monomials in descending grevlex order.
    pub fn basis(&self, n: i64) -> Vec<BasisElement> {
        let mut out = Vec::with_capacity(self.component_dim(n));
        for (j, a) in self.gen_degrees.iter().enumerate() {
            if n >= *a {
                out.extend(monomials_of_degree(self.nvars, (n - a) as u32).into_iter().map(|m| (j, m)));
            }
        }
        out
    }

    pub fn index(&self, n: i64) -> BasisIndex {
        let basis = self.basis(n);
        let position = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        BasisIndex { basis, position }
    }

    pub fn direct_sum(&self, other: &GradedFree) -> GradedFree {
        assert_eq!(self.nvars, other.nvars);
        let mut g = self.gen_degrees.clone();
        g.extend_from_slice(&other.gen_degrees);
        GradedFree::new(self.nvars, g)
    }

    /// Keeps the generators listed in `keep`, in that order.
    pub fn restrict(&self, keep: &[usize]) -> GradedFree {
        GradedFree::new(self.nvars, keep.iter().map(|j| self.gen_degrees[*j]).collect())
    }
}

/// A degree component's basis together with its inverse lookup.
#[derive(Clone, Debug)]
pub struct BasisIndex {
    basis: Vec<BasisElement>,
    position: HashMap<BasisElement, usize>,
}

impl BasisIndex {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn get(&self, i: usize) -> &BasisElement {
        &self.basis[i]
    }

    pub fn position(&self, gen: usize, m: &Monomial) -> Option<usize> {
        self.position.get(&(gen, m.clone())).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn component_dims() {
        let f = GradedFree::new(2, vec![0]);
        assert_eq!((0..4).map(|n| f.component_dim(n)).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        let g = GradedFree::new(2, vec![0, 1]);
        assert_eq!(g.component_dim(1), 3);
        assert_eq!(g.component_dim(-1), 0);
        assert_eq!(g.basis(2).len(), g.component_dim(2));
    }

    #[test]
    fn closed_form_counts() {
        for d in 1..=4usize {
            let f = GradedFree::new(d, vec![0, 2]);
            for n in 0..=10i64 {
                let expected = f.basis(n).len();
                assert_eq!(f.component_dim(n), expected);
            }
        }
    }

    #[test]
    fn index_round_trips() {
        let f = GradedFree::new(3, vec![1, 0, 2]);
        let idx = f.index(3);
        for (i, (g, m)) in idx.elements().iter().enumerate() {
            assert_eq!(idx.position(*g, m), Some(i));
        }
    }
}
