use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::hilbert::module::{build_free, Flavor, TruncatedHilbertModule};
use crate::linalg::{SparseMatrix, SparseVec, Subspace};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcStep {
    /// `n`: the new vector lives in degree `n + 1`.
    pub degree: i64,
    /// `dim (M_n ∩ Z^{⊗(n+1)})` for the module generated so far.
    pub dim_next: usize,
    /// `d^{n+1}`.
    pub bound: BigUint,
    pub holds: bool,
}

#[derive(Clone, PartialEq, Eq)]
pub struct NcVector<F> {
    pub degree: i64,
    pub label: String,
    pub vector: SparseVec<F>,
    pub norm_sq: F,
}

field_debug!(NcVector { degree, label, vector, norm_sq });

#[derive(Clone, PartialEq, Eq)]
pub struct NcReport<F> {
    pub nvars: usize,
    pub start: i64,
    pub steps: Vec<NcStep>,
    pub vectors: Vec<NcVector<F>>,
    pub orthonormal: bool,
    /// Defect count of the generated submodule after each stage.
    pub defect_counts: Vec<usize>,
}

field_debug!(NcReport { nvars, start, steps, vectors, orthonormal, defect_counts });

impl<F: Field> NcReport<F> {
    pub fn monotone(&self) -> bool {
        self.defect_counts.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn passed(&self) -> bool {
        self.orthonormal
            && self.steps.iter().all(|s| s.holds)
            && self.monotone()
            && self.defect_counts.last().is_some_and(|c| *c > self.steps.len())
    }
}

/// Builds `ζ_N, ζ_{N+1}, …` in Fock space: each new vector is the first
/// reduced-echelon basis vector of the orthocomplement of the degree-`n+1`
/// part of the submodule generated by the earlier ones.
pub fn nc_counterexample<F: Field>(d: usize, start: i64, steps: usize) -> Result<NcReport<F>> {
    if d < 2 {
        return Err(Error::InvalidParameter("the demo needs at least two variables".into()));
    }
    if start < 0 {
        return Err(Error::InvalidParameter("start degree must be nonnegative".into()));
    }
    let top = start + steps as i64;
    let h = build_free::<F>(d, top, &[0], Flavor::Noncommutative)?;
    let comp = |n: i64| h.component(n).unwrap();

    let first = Subspace::<F>::full(comp(start).dim()).basis()[0].clone();
    let mut gens: Vec<(i64, SparseVec<F>)> = vec![(start, first)];
    let mut parts = generated(&h, &gens);
    let mut defect_counts = vec![defect_count(&h, &parts)];
    let mut out_steps = Vec::new();
    for s in 0..steps {
        let n = start + s as i64;
        let here = &parts[(n + 1) as usize];
        let dim_next = here.dim();
        let bound = BigUint::from(d).pow((n + 1) as u32);
        out_steps.push(NcStep { degree: n, dim_next, bound: bound.clone(), holds: BigUint::from(dim_next) < bound });
        let g = &comp(n + 1).gram;
        let orth = here.basis_matrix().transpose().mul(g).nullspace();
        let Some(v) = orth.basis().first() else {
            return Err(Error::Certificate(format!("no room for a new vector at degree {}", n + 1)));
        };
        gens.push((n + 1, v.clone()));
        parts = generated(&h, &gens);
        defect_counts.push(defect_count(&h, &parts));
    }

    let vectors: Vec<NcVector<F>> = gens
        .iter()
        .map(|(n, v)| NcVector {
            degree: *n,
            label: h.describe((*n - h.min_degree().unwrap()) as usize, v),
            vector: v.clone(),
            norm_sq: v.dot(&comp(*n).gram.mul_vec(v)),
        })
        .collect();
    let orthonormal = vectors.iter().enumerate().all(|(i, a)| {
        vectors.iter().enumerate().all(|(j, b)| {
            let ip =
                if a.degree == b.degree { a.vector.dot(&comp(a.degree).gram.mul_vec(&b.vector)) } else { F::zero() };
            ip == if i == j { F::one() } else { F::zero() }
        })
    });
    Ok(NcReport { nvars: d, start, steps: out_steps, vectors, orthonormal, defect_counts })
}

/// Degree parts (indexed by degree, from 0 to `top`) of the submodule
/// generated by `gens`.
fn generated<F: Field>(h: &TruncatedHilbertModule<F>, gens: &[(i64, SparseVec<F>)]) -> Vec<Subspace<F>> {
    let mut parts: Vec<Subspace<F>> = Vec::new();
    for comp in h.components() {
        let mut vecs: Vec<SparseVec<F>> =
            gens.iter().filter(|(n, _)| *n == comp.degree).map(|(_, v)| v.clone()).collect();
        if let Some(prev) = parts.last() {
            vecs.extend(shifted(&comp.incoming, prev));
        }
        parts.push(Subspace::span(comp.dim(), &vecs));
    }
    parts
}

fn shifted<F: Field>(ops: &[SparseMatrix<F>], s: &Subspace<F>) -> Vec<SparseVec<F>> {
    ops.iter().flat_map(|t| s.basis().iter().map(move |v| t.mul_vec(v))).collect()
}

/// `Σ_n dim M_n − dim (Z·M)_n` over the truncation.
fn defect_count<F: Field>(h: &TruncatedHilbertModule<F>, parts: &[Subspace<F>]) -> usize {
    let mut total = parts[0].dim();
    for (c, comp) in h.components().iter().enumerate().skip(1) {
        let zm = Subspace::span(comp.dim(), &shifted(&comp.incoming, &parts[c - 1]));
        total += parts[c].dim() - zm.dim();
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn demo_from_two() {
        let r = nc_counterexample::<Rational>(2, 2, 4).unwrap();
        assert_eq!(r.vectors.len(), 5);
        assert!(r.orthonormal);
        assert!(r.steps.iter().all(|s| s.holds));
        assert_eq!(r.defect_counts, vec![1, 2, 3, 4, 5]);
        assert!(r.passed());
        assert_eq!(r.vectors[0].label, "z1^2");
    }

    #[test]
    fn single_vector_without_steps() {
        let r = nc_counterexample::<Rational>(3, 1, 0).unwrap();
        assert_eq!(r.vectors.len(), 1);
        assert!(r.passed());
        assert!(nc_counterexample::<Rational>(1, 1, 2).is_err());
    }
}
