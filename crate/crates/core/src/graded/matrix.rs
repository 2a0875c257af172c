use std::fmt;

use crate::graded::free::{BasisIndex, GradedFree};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::poly::{CommPoly, MonomialKind};
use crate::scalar::Field;

/// A vector of a free module: one polynomial per generator.
pub type FreeVec<F> = Vec<CommPoly<F>>;

/// Degree-zero map between free modules; `entries[i][j]` is the
/// coefficient of target generator `i` in the image of source generator `j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedMatrix<F> {
    source: GradedFree,
    target: GradedFree,
    entries: Vec<Vec<CommPoly<F>>>,
}

/// A failed homogeneity or bookkeeping check on one matrix entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub row: usize,
    pub col: usize,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Inhomogeneous { degrees: Vec<u32> },
    WrongDegree { expected: i64, found: i64 },
    VariableCount { expected: usize, found: usize },
    Shape { rows: usize, cols: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "entry ({}, {}): ", self.row, self.col)?;
        match &self.kind {
            ViolationKind::Inhomogeneous { degrees } => {
                let d: Vec<String> = degrees.iter().map(|x| x.to_string()).collect();
                write!(f, "inhomogeneous entry with term degrees {{{}}}", d.join(", "))
            }
            ViolationKind::WrongDegree { expected, found } => {
                write!(f, "entry has degree {found}, bookkeeping requires {expected}")
            }
            ViolationKind::VariableCount { expected, found } => {
                write!(f, "entry uses {found} variables, module has {expected}")
            }
            ViolationKind::Shape { rows, cols } => write!(f, "matrix shape {rows}x{cols} does not match the modules"),
        }
    }
}

impl<F: Field> GradedMatrix<F> {
    /// Builds the matrix without checking degrees; see [`GradedMatrix::validate`].
    pub fn new(source: GradedFree, target: GradedFree, entries: Vec<Vec<CommPoly<F>>>) -> Self {
        GradedMatrix { source, target, entries }
    }

    pub fn zero(source: GradedFree, target: GradedFree) -> Self {
        let d = target.nvars();
        let entries = vec![vec![CommPoly::zero(d); source.rank()]; target.rank()];
        GradedMatrix { source, target, entries }
    }

    /// Matrix whose columns are the given vectors of `target`, each placed
    /// at the stated source degree.
    pub fn from_columns(target: GradedFree, source_degrees: Vec<i64>, cols: &[FreeVec<F>]) -> Self {
        let source = GradedFree::new(target.nvars(), source_degrees);
        let entries = (0..target.rank()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        GradedMatrix { source, target, entries }
    }

    pub fn source(&self) -> &GradedFree {
        &self.source
    }

    pub fn target(&self) -> &GradedFree {
        &self.target
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> &CommPoly<F> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<CommPoly<F>>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> FreeVec<F> {
        self.entries.iter().map(|row| row[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<FreeVec<F>> {
        (0..self.ncols()).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|p| p.is_zero())
    }

    /// True if some entry has a nonzero constant term.
    pub fn has_unit_entries(&self) -> bool {
        self.find_unit().is_some()
    }

    /// First entry `(i, j)` with a nonzero constant term, scanning columns
    /// left to right.
    pub fn find_unit(&self) -> Option<(usize, usize)> {
        (0..self.ncols())
            .find_map(|j| (0..self.nrows()).find(|i| !self.entries[*i][j].constant_term().is_zero()).map(|i| (i, j)))
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.entries.len() != self.nrows() || self.entries.iter().any(|r| r.len() != self.ncols()) {
            out.push(Violation {
                row: 0,
                col: 0,
                kind: ViolationKind::Shape {
                    rows: self.entries.len(),
                    cols: self.entries.first().map_or(0, |r| r.len()),
                },
            });
            return out;
        }
        let d = self.target.nvars();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if p.nvars() != d {
                    out.push(Violation {
                        row: i,
                        col: j,
                        kind: ViolationKind::VariableCount { expected: d, found: p.nvars() },
                    });
                    continue;
                }
                if p.is_zero() {
                    continue;
                }
                if !p.is_homogeneous() {
                    let degrees = p.homogeneous_components().keys().copied().collect();
                    out.push(Violation { row: i, col: j, kind: ViolationKind::Inhomogeneous { degrees } });
                    continue;
                }
                let expected = self.source.degree(j) - self.target.degree(i);
                let found = p.degree().unwrap() as i64;
                if found != expected {
                    out.push(Violation { row: i, col: j, kind: ViolationKind::WrongDegree { expected, found } });
                }
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMatrix<F>) -> GradedMatrix<F> {
        assert_eq!(self.ncols(), other.nrows(), "composition shape mismatch");
        let d = self.target.nvars();
        let mut entries = vec![vec![CommPoly::zero(d); other.ncols()]; self.nrows()];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                let mut acc = CommPoly::zero(d);
                for k in 0..self.ncols() {
                    let (a, b) = (&self.entries[i][k], &other.entries[k][j]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b).expect("same ring")).expect("same ring");
                    }
                }
                *e = acc;
            }
        }
        GradedMatrix { source: other.source.clone(), target: self.target.clone(), entries }
    }

    /// Image of a source vector.
    pub fn apply(&self, v: &FreeVec<F>) -> FreeVec<F> {
        let d = self.target.nvars();
        (0..self.nrows())
            .map(|i| {
                let mut acc = CommPoly::zero(d);
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() && !self.entries[i][j].is_zero() {
                        acc = acc.add(&self.entries[i][j].mul(x).expect("same ring")).expect("same ring");
                    }
                }
                acc
            })
            .collect()
    }

    /// The degree-`n` block as a sparse matrix in the bases of
    /// [`GradedFree::basis`].
    pub fn degree_matrix(&self, n: i64) -> SparseMatrix<F> {
        self.degree_matrix_with(n, &self.target.index(n))
    }

    pub fn degree_matrix_with(&self, n: i64, target_index: &BasisIndex) -> SparseMatrix<F> {
        let cols = self
            .source
            .basis(n)
            .into_iter()
            .map(|(j, m)| {
                let mut pairs = Vec::new();
                for i in 0..self.nrows() {
                    for (mono, c) in self.entries[i][j].terms() {
                        let pos = target_index
                            .position(i, &m.mul(mono))
                            .expect("homogeneous entry lands in the target component");
                        pairs.push((pos, c.clone()));
                    }
                }
                SparseVec::from_pairs(pairs)
            })
            .collect();
        SparseMatrix::from_columns(target_index.len(), cols)
    }

    pub fn select_columns(&self, keep: &[usize]) -> GradedMatrix<F> {
        GradedMatrix {
            source: self.source.restrict(keep),
            target: self.target.clone(),
            entries: self.entries.iter().map(|r| keep.iter().map(|j| r[*j].clone()).collect()).collect(),
        }
    }

    pub fn select_rows(&self, keep: &[usize]) -> GradedMatrix<F> {
        GradedMatrix {
            source: self.source.clone(),
            target: self.target.restrict(keep),
            entries: keep.iter().map(|i| self.entries[*i].clone()).collect(),
        }
    }

    pub fn transpose_entries(&self) -> Vec<Vec<CommPoly<F>>> {
        (0..self.ncols()).map(|j| self.column(j)).collect()
    }
}

/// Degree of a nonzero homogeneous free-module vector.
pub fn vector_degree<F: Field>(target: &GradedFree, v: &FreeVec<F>) -> Option<i64> {
    v.iter().enumerate().find(|(_, p)| !p.is_zero()).map(|(i, p)| target.degree(i) + p.degree().unwrap() as i64)
}

/// Converts a degree-`n` coordinate vector back into polynomials.
pub fn vector_from_coords<F: Field>(target: &GradedFree, index: &BasisIndex, v: &SparseVec<F>) -> FreeVec<F> {
    let mut out = vec![CommPoly::zero(target.nvars()); target.rank()];
    for (i, c) in v.iter() {
        let (g, m) = index.get(*i);
        out[*g].add_term(m.clone(), c.clone());
    }
    out
}

/// Coordinates of a homogeneous vector of degree `n`.
pub fn coords_of_vector<F: Field>(index: &BasisIndex, v: &FreeVec<F>) -> SparseVec<F> {
    let mut pairs = Vec::new();
    for (g, p) in v.iter().enumerate() {
        for (m, c) in p.terms() {
            pairs.push((index.position(g, m).expect("vector lies in this component"), c.clone()));
        }
    }
    SparseVec::from_pairs(pairs)
}

impl<F: Field> fmt::Debug for GradedMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GradedMatrix {:?} <- {:?}", self.target.gen_degrees(), self.source.gen_degrees())?;
        for row in &self.entries {
            let r: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn p(s: &str) -> CommPoly<Rational> {
        CommPoly::parse(s, 2).unwrap()
    }

    #[test]
    fn koszul_composes_to_zero() {
        let f0 = GradedFree::new(2, vec![0]);
        let a1 = GradedMatrix::from_columns(f0.clone(), vec![1, 1], &[vec![p("z1")], vec![p("z2")]]);
        let f1 = a1.source().clone();
        let a2 = GradedMatrix::from_columns(f1, vec![2], &[vec![p("z2"), p("-z1")]]);
        assert!(a1.validate().is_empty());
        assert!(a2.validate().is_empty());
        assert!(a1.compose(&a2).is_zero());
        assert!(a1.degree_matrix(3).mul(&a2.degree_matrix(3)).is_zero());
    }

    #[test]
    fn degree_blocks_have_expected_shape() {
        let f0 = GradedFree::new(2, vec![0]);
        let a = GradedMatrix::from_columns(f0, vec![2], &[vec![p("z1^2")]]);
        let m = a.degree_matrix(3);
        assert_eq!((m.nrows(), m.ncols()), (4, 2));
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn detects_units() {
        let f0 = GradedFree::new(2, vec![0, 1]);
        let a = GradedMatrix::from_columns(f0, vec![1, 1], &[vec![p("z1"), p("0")], vec![p("0"), p("1")]]);
        assert_eq!(a.find_unit(), Some((1, 1)));
    }
}
