use crate::linalg::echelon::rref_rows;
use crate::linalg::sparse::{SparseMatrix, SparseVec};
use crate::scalar::Field;

/// A subspace of `F^ambient` held in reduced form: basis vector `k` has a 1
/// at `pivots[k]` and every other basis vector vanishes there. Coordinates of
/// a member are read off at the pivot positions.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: (0..ambient).map(SparseVec::unit).collect(), pivots: (0..ambient).collect() }
    }

    /// Wraps a basis that is already in read-off form.
    pub(crate) fn from_reduced(ambient: usize, basis: Vec<SparseVec<F>>, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(basis.len(), pivots.len());
        debug_assert!(basis.iter().enumerate().all(|(k, b)| pivots
            .iter()
            .enumerate()
            .all(|(l, p)| b.get(*p) == if k == l { F::one() } else { F::zero() })));
        Subspace { ambient, basis, pivots }
    }

    /// Span of arbitrary vectors.
    pub fn span(ambient: usize, vectors: &[SparseVec<F>]) -> Self {
        let (pivots, basis) = rref_rows(ambient, vectors.iter().cloned()).into_iter().unzip();
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is not a member.
    pub fn coords(&self, v: &SparseVec<F>) -> Option<Vec<F>> {
        let c: Vec<F> = self.pivots.iter().map(|p| v.get(*p)).collect();
        let mut rest = v.clone();
        for (b, x) in self.basis.iter().zip(&c) {
            rest = rest.add_scaled(b, &-x.clone());
        }
        rest.is_zero().then_some(c)
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn basis_matrix(&self) -> SparseMatrix<F> {
        SparseMatrix::from_columns(self.ambient, self.basis.clone())
    }

    /// Combination `Σ c_k b_k`.
    pub fn combine(&self, coords: &[F]) -> SparseVec<F> {
        let mut acc = SparseVec::new();
        for (b, c) in self.basis.iter().zip(coords) {
            acc = acc.add_scaled(b, c);
        }
        acc
    }
}

impl<F: std::fmt::Display> std::fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(ambient {}, pivots {:?}, basis {:?})", self.ambient, self.pivots, self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn v(pairs: &[(usize, i64)]) -> SparseVec<Rational> {
        SparseVec::from_pairs(pairs.iter().map(|(i, x)| (*i, Rational::from_i64(*x))))
    }

    #[test]
    fn span_is_reduced() {
        let s = Subspace::span(5, &[v(&[(0, 2), (1, 2)]), v(&[(1, 1), (2, 1)]), v(&[(0, 1), (2, -1)]), v(&[(4, 3)])]);
        assert_eq!(s.dim(), 3);
        assert_eq!(s.pivots(), &[0, 1, 4]);
        assert!(s.contains(&v(&[(0, 1), (2, -1)])));
        assert!(!s.contains(&v(&[(3, 1)])));
        let target = v(&[(0, 3), (1, 1), (2, -2), (4, 6)]);
        let c = s.coords(&target).unwrap();
        assert_eq!(s.combine(&c), target);
    }

    #[test]
    fn nullspace_reads_off_free_columns() {
        let a = SparseMatrix::from_columns(2, vec![v(&[(0, 1)]), v(&[(0, 1), (1, 1)]), v(&[(1, 2)])]);
        let k = a.nullspace();
        assert_eq!(k.dim(), 1);
        let x = k.basis()[0].clone();
        assert!(a.mul_vec(&x).is_zero());
        assert_eq!(k.coords(&x.scale(&Rational::from_i64(5))), Some(vec![Rational::from_i64(5)]));
    }
}
