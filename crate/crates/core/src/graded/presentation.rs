use crate::error::{Error, Result};
use crate::graded::free::GradedFree;
use crate::graded::matrix::{FreeVec, GradedMatrix, Violation, ViolationKind};
use crate::poly::CommPoly;
use crate::scalar::Field;

/// `M = coker(relations)` with `relations: R → generators`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedPresentation<F> {
    generators: GradedFree,
    relations: GradedMatrix<F>,
}

impl<F: Field> GradedPresentation<F> {
    /// Validates and wraps a relation matrix into `generators`.
    pub fn new(relations: GradedMatrix<F>) -> Result<Self> {
        if relations.target().nvars() == 0 {
            return Err(Error::InvalidParameter("at least one variable is required".into()));
        }
        let v = relations.validate();
        if !v.is_empty() {
            return Err(Error::InvalidPresentation(v));
        }
        Ok(GradedPresentation { generators: relations.target().clone(), relations })
    }

    /// Builds a presentation from relation columns, reading each column's
    /// degree off its first nonzero entry.
    pub fn from_columns(nvars: usize, gen_degrees: Vec<i64>, columns: Vec<FreeVec<F>>) -> Result<Self> {
        let target = GradedFree::new(nvars, gen_degrees);
        let mut bad = Vec::new();
        for (j, c) in columns.iter().enumerate() {
            if c.len() != target.rank() {
                bad.push(Violation {
                    row: 0,
                    col: j,
                    kind: ViolationKind::Shape { rows: c.len(), cols: columns.len() },
                });
            }
        }
        if !bad.is_empty() {
            return Err(Error::InvalidPresentation(bad));
        }
        let degrees = columns.iter().map(|c| infer_degree(&target, c)).collect();
        Self::new(GradedMatrix::from_columns(target, degrees, &columns))
    }

    /// The free module on `gen_degrees` with no relations.
    pub fn free(nvars: usize, gen_degrees: Vec<i64>) -> Result<Self> {
        Self::from_columns(nvars, gen_degrees, Vec::new())
    }

    pub fn nvars(&self) -> usize {
        self.generators.nvars()
    }

    pub fn generators(&self) -> &GradedFree {
        &self.generators
    }

    pub fn relations(&self) -> &GradedMatrix<F> {
        &self.relations
    }

    pub fn validate(&self) -> Vec<Violation> {
        self.relations.validate()
    }

    /// `dim M_n`, by exact rank of the degree-`n` block of the relations.
    pub fn hilbert_function(&self, n: i64) -> usize {
        let free = self.generators.component_dim(n);
        if free == 0 || self.relations.ncols() == 0 {
            return free;
        }
        free - self.relations.degree_matrix(n).rank()
    }

    /// Same module with generators permuted: new generator `k` is old
    /// generator `perm[k]`.
    pub fn permute_generators(&self, perm: &[usize]) -> Result<Self> {
        let cols: Vec<FreeVec<F>> =
            self.relations.columns().into_iter().map(|c| perm.iter().map(|k| c[*k].clone()).collect()).collect();
        Self::from_columns(self.nvars(), perm.iter().map(|k| self.generators.degree(*k)).collect(), cols)
    }
}

field_debug!(GradedPresentation { generators, relations });

fn infer_degree<F: Field>(target: &GradedFree, col: &FreeVec<F>) -> i64 {
    col.iter()
        .enumerate()
        .find(|(_, p)| !p.is_zero())
        .map(|(i, p)| {
            target.degree(i) + p.leading_term().map_or(0, |(m, _)| crate::poly::MonomialKind::degree(m) as i64)
        })
        .or_else(|| target.min_degree())
        .unwrap_or(0)
}

/// Zero vector of a free module.
pub fn zero_vector<F: Field>(target: &GradedFree) -> FreeVec<F> {
    vec![CommPoly::zero(target.nvars()); target.rank()]
}
