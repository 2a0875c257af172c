use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::dense::{Ldlt, Matrix, PsdFailure};
use crate::linalg::echelon::{kernel_from_rref, rref_rows};
use crate::linalg::subspace::Subspace;
use crate::scalar::Field;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, F::one())] }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, F)>) -> Self {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (i, v) in pairs {
            if v.is_zero() {
                continue;
            }
            let e = acc.entry(i).or_insert_with(F::zero);
            *e = e.clone() + v;
        }
        SparseVec { entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn from_dense(v: &[F]) -> Self {
        SparseVec { entries: v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect() }
    }

    pub fn to_dense(&self, len: usize) -> Vec<F> {
        let mut out = vec![F::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, F)> {
        self.entries.iter()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> F {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn first_index(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v.clone() * c.clone())).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Self, c: &F) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|e| e.0);
            let ib = other.entries.get(b).map(|e| e.0);
            match (ia, ib) {
                (Some(x), Some(y)) if x == y => {
                    let v = self.entries[a].1.clone() + c.clone() * other.entries[b].1.clone();
                    if !v.is_zero() {
                        out.push((x, v));
                    }
                    a += 1;
                    b += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push(self.entries[a].clone());
                    a += 1;
                }
                (Some(_), None) => {
                    out.push(self.entries[a].clone());
                    a += 1;
                }
                (_, Some(y)) => {
                    out.push((y, c.clone() * other.entries[b].1.clone()));
                    b += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &F::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &-F::one())
    }

    pub fn dot(&self, other: &Self) -> F {
        let (mut a, mut b) = (0, 0);
        let mut acc = F::zero();
        while a < self.entries.len() && b < other.entries.len() {
            let (ia, ib) = (self.entries[a].0, other.entries[b].0);
            if ia == ib {
                acc = acc + self.entries[a].1.clone() * other.entries[b].1.clone();
                a += 1;
                b += 1;
            } else if ia < ib {
                a += 1;
            } else {
                b += 1;
            }
        }
        acc
    }

    /// Renumbers indices through `map`.
    pub fn remap(&self, map: impl Fn(usize) -> usize) -> Self {
        Self::from_pairs(self.entries.iter().map(|(i, v)| (map(*i), v.clone())))
    }
}

impl<F: fmt::Display> fmt::Debug for SparseVec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(i, v)| format!("{i}:{v}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Column-compressed sparse matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseMatrix<F> {
    nrows: usize,
    cols: Vec<SparseVec<F>>,
}

/// A connected component of the row/column incidence graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Block {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, cols: vec![SparseVec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { nrows: n, cols: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_columns(nrows: usize, cols: Vec<SparseVec<F>>) -> Self {
        debug_assert!(cols.iter().all(|c| c.indices().all(|i| i < nrows)));
        SparseMatrix { nrows, cols }
    }

    pub fn from_dense(m: &Matrix<F>) -> Self {
        let cols =
            (0..m.ncols()).map(|j| SparseVec::from_pairs((0..m.nrows()).map(|i| (i, m.get(i, j).clone())))).collect();
        SparseMatrix { nrows: m.nrows(), cols }
    }

    pub fn from_diagonal(diag: Vec<F>) -> Self {
        let n = diag.len();
        let cols = diag.into_iter().enumerate().map(|(i, v)| SparseVec::from_pairs([(i, v)])).collect();
        SparseMatrix { nrows: n, cols }
    }

    pub fn to_dense(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.nrows, self.ncols());
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &SparseVec<F> {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec<F>] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.cols[j].get(i)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                rows[*i].push((j, v.clone()));
            }
        }
        SparseMatrix { nrows: self.ncols(), cols: rows.into_iter().map(|r| SparseVec { entries: r }).collect() }
    }

    pub fn mul_vec(&self, x: &SparseVec<F>) -> SparseVec<F> {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (j, xv) in x.iter() {
            for (i, a) in self.cols[*j].iter() {
                let e = acc.entry(*i).or_insert_with(F::zero);
                *e = e.clone() + a.clone() * xv.clone();
            }
        }
        SparseVec::from_pairs(acc)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols(), other.nrows, "dimension mismatch");
        SparseMatrix { nrows: self.nrows, cols: other.cols.iter().map(|c| self.mul_vec(c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols()), (other.nrows, other.ncols()));
        SparseMatrix { nrows: self.nrows, cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols()), (other.nrows, other.ncols()));
        SparseMatrix { nrows: self.nrows, cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        SparseMatrix { nrows: self.nrows, cols: self.cols.iter().map(|v| v.scale(c)).collect() }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        SparseMatrix { nrows: self.nrows, cols: cols.iter().map(|j| self.cols[*j].clone()).collect() }
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[Self]) -> Self {
        let ncols = parts.first().map_or(0, |p| p.ncols());
        assert!(parts.iter().all(|p| p.ncols() == ncols));
        let mut cols = vec![Vec::new(); ncols];
        let mut offset = 0;
        for p in parts {
            for (j, c) in p.cols.iter().enumerate() {
                cols[j].extend(c.iter().map(|(i, v)| (i + offset, v.clone())));
            }
            offset += p.nrows;
        }
        SparseMatrix { nrows: offset, cols: cols.into_iter().map(|e| SparseVec { entries: e }).collect() }
    }

    pub fn hstack(parts: &[Self]) -> Self {
        let nrows = parts.first().map_or(0, |p| p.nrows);
        assert!(parts.iter().all(|p| p.nrows == nrows));
        SparseMatrix { nrows, cols: parts.iter().flat_map(|p| p.cols.iter().cloned()).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.nrows == self.ncols() && self.transpose() == *self
    }

    /// Connected components of the bipartite row/column graph. Empty columns
    /// come back as blocks without rows; empty rows are omitted.
    pub fn blocks(&self) -> Vec<Block> {
        let n = self.nrows + self.ncols();
        let mut uf = UnionFind::new(n);
        for (j, c) in self.cols.iter().enumerate() {
            for i in c.indices() {
                uf.union(i, self.nrows + j);
            }
        }
        let mut groups: BTreeMap<usize, Block> = BTreeMap::new();
        let mut row_used = vec![false; self.nrows];
        for c in &self.cols {
            for i in c.indices() {
                row_used[i] = true;
            }
        }
        for i in (0..self.nrows).filter(|i| row_used[*i]) {
            let r = uf.find(i);
            groups.entry(r).or_default().rows.push(i);
        }
        for j in 0..self.ncols() {
            let r = uf.find(self.nrows + j);
            groups.entry(r).or_default().cols.push(j);
        }
        groups.into_values().collect()
    }

    pub(crate) fn dense_block(&self, block: &Block) -> Matrix<F> {
        let mut row_pos = BTreeMap::new();
        for (k, i) in block.rows.iter().enumerate() {
            row_pos.insert(*i, k);
        }
        let mut m = Matrix::zeros(block.rows.len(), block.cols.len());
        for (cj, j) in block.cols.iter().enumerate() {
            for (i, v) in self.cols[*j].iter() {
                m.set(row_pos[i], cj, v.clone());
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        rref_rows(self.ncols(), self.transpose().cols).len()
    }

    /// Kernel of the matrix as a subspace of `F^ncols`, with the free columns
    /// as read-off coordinates.
    pub fn nullspace(&self) -> Subspace<F> {
        let n = self.ncols();
        let rref = rref_rows(n, self.transpose().cols);
        let (pivots, basis) = kernel_from_rref(n, &rref).into_iter().unzip();
        Subspace::from_reduced(n, basis, pivots)
    }

    pub fn column_space(&self) -> Subspace<F> {
        Subspace::span(self.nrows, &self.cols)
    }

    /// Exact PSD test of a symmetric matrix, block by block.
    pub fn psd_certificate(&self) -> SparseLdlt<F> {
        assert!(self.nrows == self.ncols(), "psd test needs a square matrix");
        let mut pivots = Vec::new();
        let mut failure = None;
        for b in self.blocks() {
            if b.rows.is_empty() {
                for j in &b.cols {
                    pivots.push((*j, F::zero()));
                }
                continue;
            }
            // symmetric, so rows and cols of a block coincide
            let idx = merge_sorted(&b.rows, &b.cols);
            let block = Block { rows: idx.clone(), cols: idx.clone() };
            let Ldlt { pivots: p, failure: f } = self.dense_block(&block).ldlt();
            for (k, v) in p.into_iter().enumerate() {
                pivots.push((idx[k], v));
            }
            if failure.is_none() {
                failure = f.map(|f| match f {
                    PsdFailure::NegativePivot { index, value } => {
                        PsdFailure::NegativePivot { index: idx[index], value }
                    }
                    PsdFailure::ZeroPivotCoupled { index } => PsdFailure::ZeroPivotCoupled { index: idx[index] },
                });
            }
        }
        pivots.sort_by_key(|(i, _)| *i);
        SparseLdlt { pivots, failure }
    }

    /// Inverse of a symmetric positive definite matrix, computed per block.
    pub fn inverse_spd(&self) -> Option<Self> {
        let n = self.nrows;
        if n != self.ncols() {
            return None;
        }
        let mut cols: Vec<Vec<(usize, F)>> = vec![Vec::new(); n];
        for b in self.blocks() {
            if b.rows.is_empty() {
                return None;
            }
            let idx = merge_sorted(&b.rows, &b.cols);
            let block = Block { rows: idx.clone(), cols: idx.clone() };
            let inv = self.dense_block(&block).inverse()?;
            for (cj, j) in idx.iter().enumerate() {
                for (ci, i) in idx.iter().enumerate() {
                    let v = inv.get(ci, cj);
                    if !v.is_zero() {
                        cols[*j].push((*i, v.clone()));
                    }
                }
            }
        }
        Some(SparseMatrix { nrows: n, cols: cols.into_iter().map(SparseVec::from_pairs).collect() })
    }
}

fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Block-wise `LDLᵀ` certificate keyed by original indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseLdlt<F> {
    pub pivots: Vec<(usize, F)>,
    pub failure: Option<PsdFailure<F>>,
}

impl<F: Field> SparseLdlt<F> {
    pub fn is_psd(&self) -> bool {
        self.failure.is_none()
    }

    pub fn rank(&self) -> usize {
        self.pivots.iter().filter(|(_, p)| p.is_positive()).count()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.failure.is_none() && self.pivots.iter().all(|(_, p)| p.is_positive())
    }
}

impl<F: Field> fmt::Debug for SparseMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_dense())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(x: i64) -> Rational {
        Rational::from_i64(x)
    }

    fn dense(rows: &[&[i64]]) -> SparseMatrix<Rational> {
        SparseMatrix::from_dense(&Matrix::from_rows(
            rows.iter().map(|row| row.iter().map(|x| r(*x)).collect()).collect(),
        ))
    }

    #[test]
    fn block_decomposition_agrees_with_dense_rank() {
        let a = dense(&[&[1, 0, 0, 2], &[0, 1, 1, 0], &[2, 0, 0, 4], &[0, 0, 0, 0]]);
        assert_eq!(a.blocks().len(), 2);
        assert_eq!(a.rank(), a.to_dense().rank());
        let ns = a.nullspace();
        assert_eq!(ns.dim(), 4 - a.rank());
        for v in ns.basis() {
            assert!(a.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn empty_columns_are_free() {
        let a = SparseMatrix::<Rational>::zeros(2, 3);
        assert_eq!(a.nullspace().dim(), 3);
        assert_eq!(a.rank(), 0);
    }

    #[test]
    fn sparse_vector_arithmetic() {
        let a = SparseVec::from_pairs([(0, r(1)), (3, r(2))]);
        let b = SparseVec::from_pairs([(3, r(1)), (5, r(7))]);
        let c = a.add_scaled(&b, &r(-2));
        assert_eq!(c, SparseVec::from_pairs([(0, r(1)), (5, r(-14))]));
        assert_eq!(a.dot(&b), r(2));
    }

    #[test]
    fn psd_by_blocks() {
        let a = dense(&[&[2, 0, 1], &[0, 0, 0], &[1, 0, 1]]);
        let cert = a.psd_certificate();
        assert!(cert.is_psd());
        assert_eq!(cert.rank(), 2);
        let b = dense(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
        assert!(matches!(b.psd_certificate().failure, Some(PsdFailure::NegativePivot { index: 1, .. })));
    }

    #[test]
    fn spd_inverse() {
        let a = dense(&[&[2, 0, 1], &[0, 3, 0], &[1, 0, 1]]);
        let inv = a.inverse_spd().unwrap();
        assert_eq!(a.mul(&inv), SparseMatrix::identity(3));
    }
}
