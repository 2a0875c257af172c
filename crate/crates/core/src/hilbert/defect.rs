use std::collections::BTreeMap;

use crate::hilbert::module::TruncatedHilbertModule;
use crate::linalg::{SparseMatrix, SparseVec, Subspace};
use crate::scalar::Field;

/// Above this dimension of the source component the `ker Σ T_k T_k*`
/// cross-check is skipped; it needs an inverse Gram matrix.
pub const CROSS_CHECK_LIMIT: usize = 400;

#[derive(Clone, PartialEq, Eq)]
pub struct DefectComponent<F> {
    pub degree: i64,
    pub space: Subspace<F>,
    /// Degree of each basis vector (the component degree when graded).
    pub vector_degrees: Vec<i64>,
    /// Whether the kernel of `Σ T_k T_k*` agreed; `None` when skipped.
    pub cross_check: Option<bool>,
}

field_debug!(DefectComponent { degree, space, vector_degrees, cross_check });

/// The wandering subspace `G = H ⊖ Z·H`, one piece per component.
#[derive(Clone, PartialEq, Eq)]
pub struct DefectData<F> {
    pub components: Vec<DefectComponent<F>>,
    pub properly_generated: bool,
    /// Lowest degree where the module generated by `G` misses part of `H`.
    pub first_gap: Option<i64>,
}

field_debug!(DefectData { components, properly_generated, first_gap });

impl<F: Field> DefectData<F> {
    pub fn total(&self) -> usize {
        self.components.iter().map(|c| c.space.dim()).sum()
    }

    /// Degrees of a homogeneous basis, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.components.iter().flat_map(|c| c.vector_degrees.iter().copied()).collect();
        d.sort_unstable();
        d
    }

    pub fn count_by_degree(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for d in self.degrees() {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    /// `(component index, degree, vector)` for every basis vector.
    pub fn vectors(&self) -> Vec<(usize, i64, SparseVec<F>)> {
        let mut out = Vec::new();
        for (c, comp) in self.components.iter().enumerate() {
            for (v, d) in comp.space.basis().iter().zip(&comp.vector_degrees) {
                out.push((c, *d, v.clone()));
            }
        }
        out
    }

    pub fn cross_check_passed(&self) -> bool {
        self.components.iter().all(|c| c.cross_check != Some(false))
    }
}

/// `T_k` into component `c`; escaping columns are already stored as zero.
fn incoming<F: Field>(h: &TruncatedHilbertModule<F>, c: usize) -> &[SparseMatrix<F>] {
    &h.components()[c].incoming
}

/// Computes `G_n` as the joint kernel of `T_kᵀ Gram_n`, i.e. the Gram
/// orthocomplement of the range of the operators, then checks that `G`
/// generates the whole truncated module.
pub fn defect_space<F: Field>(h: &TruncatedHilbertModule<F>) -> DefectData<F> {
    let mut components = Vec::new();
    for (c, comp) in h.components().iter().enumerate() {
        let ops = incoming(h, c);
        let (space, cross_check) = if ops.is_empty() {
            (Subspace::full(comp.dim()), None)
        } else {
            let rows: Vec<SparseMatrix<F>> = ops.iter().map(|t| t.transpose().mul(&comp.gram)).collect();
            let space = SparseMatrix::vstack(&rows).nullspace();
            let prev = h.previous(c).unwrap();
            (space.clone(), cross_check(h, c, prev, &space))
        };
        let vector_degrees = space
            .basis()
            .iter()
            .map(|v| v.indices().map(|i| comp.basis_degrees[i]).max().unwrap_or(comp.degree))
            .collect();
        components.push(DefectComponent { degree: comp.degree, space, vector_degrees, cross_check });
    }
    let first_gap = if h.is_graded() { graded_gap(h, &components) } else { ungraded_gap(h, &components) };
    DefectData { components, properly_generated: first_gap.is_none(), first_gap }
}

fn cross_check<F: Field>(h: &TruncatedHilbertModule<F>, c: usize, prev: usize, space: &Subspace<F>) -> Option<bool> {
    let comp = &h.components()[c];
    let pg = &h.components()[prev].gram;
    if pg.nrows() > CROSS_CHECK_LIMIT || comp.dim() > CROSS_CHECK_LIMIT {
        return None;
    }
    let inv = pg.inverse_spd()?;
    let mut q = SparseMatrix::zeros(comp.dim(), comp.dim());
    for t in &comp.incoming {
        let gt = comp.gram.mul(t);
        q = q.add(&gt.mul(&inv).mul(&gt.transpose()));
    }
    let k = q.nullspace();
    Some(k.contains_subspace(space) && space.contains_subspace(&k))
}

fn graded_gap<F: Field>(h: &TruncatedHilbertModule<F>, g: &[DefectComponent<F>]) -> Option<i64> {
    let mut prev: Option<Subspace<F>> = None;
    for (c, comp) in h.components().iter().enumerate() {
        let mut gens: Vec<SparseVec<F>> = g[c].space.basis().to_vec();
        if let Some(p) = &prev {
            for t in &comp.incoming {
                gens.extend(p.basis().iter().map(|v| t.mul_vec(v)));
            }
        }
        let s = Subspace::span(comp.dim(), &gens);
        if s.dim() != comp.dim() {
            return Some(comp.degree);
        }
        prev = Some(s);
    }
    None
}

fn ungraded_gap<F: Field>(h: &TruncatedHilbertModule<F>, g: &[DefectComponent<F>]) -> Option<i64> {
    let comp = h.components().first()?;
    let mut s = g[0].space.clone();
    loop {
        let mut gens: Vec<SparseVec<F>> = s.basis().to_vec();
        for (k, t) in comp.incoming.iter().enumerate() {
            for v in s.basis() {
                if !v.indices().any(|i| comp.escaping[k][i]) {
                    gens.push(t.mul_vec(v));
                }
            }
        }
        let next = Subspace::span(comp.dim(), &gens);
        if next.dim() == s.dim() {
            break;
        }
        s = next;
    }
    if s.dim() == comp.dim() {
        return None;
    }
    // lowest-degree basis vector that is not reached
    (0..comp.dim()).filter(|i| !s.contains(&SparseVec::unit(*i))).map(|i| comp.basis_degrees[i]).min()
}

#[derive(Clone, PartialEq, Eq)]
pub struct DeltaComponent<F> {
    pub degree: i64,
    pub psd: bool,
    pub rank: usize,
    /// `LDLᵀ` pivots of the Gram form of `Δ²` at this component.
    pub pivots: Vec<F>,
}

field_debug!(DeltaComponent { degree, psd, rank, pivots });

#[derive(Clone, PartialEq, Eq)]
pub struct RowContraction<F> {
    pub components: Vec<DeltaComponent<F>>,
}

field_debug!(RowContraction { components });

impl<F: Field> RowContraction<F> {
    pub fn passed(&self) -> bool {
        self.components.iter().all(|c| c.psd)
    }

    pub fn total_rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    /// First component where `Δ²` is not positive semidefinite.
    pub fn failure_degree(&self) -> Option<i64> {
        self.components.iter().find(|c| !c.psd).map(|c| c.degree)
    }
}

/// Certifies `I − Σ T_k T_k* ≥ 0` degree by degree. In Gram form the check is
/// `Gram_n − Σ_k Gram_n T_k Gram_{n−1}⁻¹ T_kᵀ Gram_n ⪰ 0`.
pub fn check_row_contraction<F: Field>(h: &TruncatedHilbertModule<F>) -> RowContraction<F> {
    let mut components = Vec::new();
    for (c, comp) in h.components().iter().enumerate() {
        let mut q = comp.gram.clone();
        if let Some(p) = h.previous(c).filter(|_| !comp.incoming.is_empty()) {
            let inv = h.components()[p].gram.inverse_spd().expect("Gram matrices are positive definite");
            for t in &comp.incoming {
                let gt = comp.gram.mul(t);
                q = q.sub(&gt.mul(&inv).mul(&gt.transpose()));
            }
        }
        let cert = q.psd_certificate();
        components.push(DeltaComponent {
            degree: comp.degree,
            psd: cert.is_psd(),
            rank: cert.rank(),
            pivots: cert.pivots.iter().map(|(_, p)| p.clone()).collect(),
        });
    }
    RowContraction { components }
}
