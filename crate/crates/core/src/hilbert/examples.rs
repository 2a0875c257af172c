use crate::error::{Error, Result};
use crate::graded::{coords_of_vector, vector_degree, FreeVec, GradedPresentation};
use crate::hilbert::module::{build_free, submodule, Component, Flavor, TruncatedHilbertModule};
use crate::linalg::{SparseMatrix, SparseVec, Subspace};
use crate::poly::{h2_norm_sq, monomials_of_degree, Monomial, MonomialKind};
use crate::scalar::Field;

/// `H²` in `d` variables viewed over `d + r` variables, the extra `r` acting
/// by zero. Over the polynomial ring this is `Q[z1..zd+r]/(w1..wr)`.
pub fn zeros_module<F: Field>(d: usize, r: usize, top: i64) -> Result<TruncatedHilbertModule<F>> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    let h = build_free::<F>(d, top, &[0], Flavor::Commutative)?;
    let mut components = h.components().to_vec();
    for comp in &mut components {
        if !comp.incoming.is_empty() {
            let (rows, cols) = (comp.incoming[0].nrows(), comp.incoming[0].ncols());
            comp.incoming.extend((0..r).map(|_| SparseMatrix::zeros(rows, cols)));
        }
    }
    TruncatedHilbertModule::from_parts(d + r, Flavor::Commutative, true, top, components)
}

/// `H²` in `d = ns.len()` variables under `T_k = M_{z_k^{n_k}}`, truncated at
/// total degree `top`. The module is not graded for these operators, so it is
/// kept as a single component.
pub fn powers_module<F: Field>(ns: &[u32], top: i64) -> Result<TruncatedHilbertModule<F>> {
    let d = ns.len();
    if d == 0 || ns.contains(&0) {
        return Err(Error::InvalidParameter("powers need at least one exponent, all positive".into()));
    }
    if top < 0 {
        return Err(Error::TruncationTooSmall { needed: 0, top });
    }
    let basis: Vec<Monomial> = (0..=top).flat_map(|n| monomials_of_degree(d, n as u32)).collect();
    let pos: std::collections::HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let dim = basis.len();
    let gram = SparseMatrix::from_diagonal(basis.iter().map(h2_norm_sq::<F>).collect());
    let mut incoming = Vec::new();
    let mut escaping = Vec::new();
    for (k, n) in ns.iter().enumerate() {
        let mut cols = Vec::with_capacity(dim);
        let mut esc = Vec::with_capacity(dim);
        for m in &basis {
            let mut e = m.exponents().to_vec();
            e[k] += *n as u16;
            match pos.get(&Monomial::new(e)) {
                Some(p) => {
                    cols.push(SparseVec::unit(*p));
                    esc.push(false);
                }
                None => {
                    cols.push(SparseVec::new());
                    esc.push(true);
                }
            }
        }
        incoming.push(SparseMatrix::from_columns(dim, cols));
        escaping.push(esc);
    }
    let comp = Component {
        degree: 0,
        labels: basis.iter().map(|m| m.to_string()).collect(),
        basis_degrees: basis.iter().map(|m| MonomialKind::degree(m) as i64).collect(),
        gram,
        incoming,
        escaping,
    };
    TruncatedHilbertModule::from_parts(d, Flavor::Commutative, false, top, vec![comp])
}

/// Closed submodule of `H² ⊗ C` generated by homogeneous polynomial vectors,
/// truncated at `top`.
pub fn generated_submodule<F: Field>(
    nvars: usize,
    top: i64,
    coeff_degrees: &[i64],
    vectors: &[FreeVec<F>],
) -> Result<TruncatedHilbertModule<F>> {
    let free = build_free::<F>(nvars, top, coeff_degrees, Flavor::Commutative)?;
    let layout = free.embedding().unwrap().layout.clone();
    let mut gens = Vec::new();
    for v in vectors {
        if v.len() != layout.rank() || v.iter().any(|p| p.nvars() != nvars) {
            return Err(Error::InvalidParameter("generator has the wrong shape".into()));
        }
        let Some(n) = vector_degree(&layout, v) else { continue };
        if v.iter()
            .enumerate()
            .any(|(i, p)| p.terms().any(|(m, _)| layout.degree(i) + MonomialKind::degree(m) as i64 != n))
        {
            return Err(Error::InvalidParameter("generator is not homogeneous".into()));
        }
        gens.push((n, v));
    }
    let mut spaces: Vec<Subspace<F>> = Vec::new();
    for comp in free.components() {
        let idx = layout.index(comp.degree);
        let mut vecs: Vec<SparseVec<F>> =
            gens.iter().filter(|(n, _)| *n == comp.degree).map(|(_, v)| coords_of_vector(&idx, v)).collect();
        if let Some(prev) = spaces.last() {
            for t in &comp.incoming {
                vecs.extend(prev.basis().iter().map(|b| t.mul_vec(b)));
            }
        }
        spaces.push(Subspace::span(comp.dim(), &vecs));
    }
    submodule(&free, &spaces)
}

/// The quotient `(H² ⊗ C) / [relations]` truncated at `top`, realized on
/// coset representatives supported off the pivots of the relation space.
/// Its inner product is that of `M^⊥`.
pub fn quotient_module<F: Field>(p: &GradedPresentation<F>, top: i64) -> Result<TruncatedHilbertModule<F>> {
    let free = build_free::<F>(p.nvars(), top, p.generators().gen_degrees(), Flavor::Commutative)?;
    let layout = p.generators();
    let mut rel_spaces = Vec::new();
    for comp in free.components() {
        let idx = layout.index(comp.degree);
        let m = p.relations().degree_matrix_with(comp.degree, &idx);
        rel_spaces.push(Subspace::span(comp.dim(), m.columns()));
    }
    let mut kept: Vec<Vec<usize>> = Vec::new();
    let mut components = Vec::new();
    for (c, comp) in free.components().iter().enumerate() {
        let rel = &rel_spaces[c];
        let mut is_pivot = vec![false; comp.dim()];
        for q in rel.pivots() {
            is_pivot[*q] = true;
        }
        let keep: Vec<usize> = (0..comp.dim()).filter(|i| !is_pivot[*i]).collect();
        let mut new_pos = vec![usize::MAX; comp.dim()];
        for (k, i) in keep.iter().enumerate() {
            new_pos[*i] = k;
        }
        let e = SparseMatrix::identity(comp.dim()).select_columns(&keep);
        let de = comp.gram.mul(&e);
        let mut gram = e.transpose().mul(&de);
        if rel.dim() > 0 {
            let b = rel.basis_matrix();
            let bde = b.transpose().mul(&de);
            let c_inv = b
                .transpose()
                .mul(&comp.gram.mul(&b))
                .inverse_spd()
                .ok_or_else(|| Error::Certificate("relation Gram matrix is singular".into()))?;
            gram = gram.sub(&bde.transpose().mul(&c_inv.mul(&bde)));
        }
        let incoming = if c == 0 {
            Vec::new()
        } else {
            comp.incoming
                .iter()
                .map(|t| {
                    let cols = kept[c - 1]
                        .iter()
                        .map(|i| {
                            let x = t.mul_vec(&SparseVec::unit(*i));
                            let mut y = x.clone();
                            for (q, v) in x.iter() {
                                if is_pivot[*q] {
                                    let k = rel.pivots().binary_search(q).unwrap();
                                    y = y.add_scaled(&rel.basis()[k], &-v.clone());
                                }
                            }
                            y.remap(|i| new_pos[i])
                        })
                        .collect();
                    SparseMatrix::from_columns(keep.len(), cols)
                })
                .collect()
        };
        components.push(Component {
            degree: comp.degree,
            labels: keep.iter().map(|i| format!("[{}]", comp.labels[*i])).collect(),
            basis_degrees: vec![comp.degree; keep.len()],
            gram,
            incoming,
            escaping: Vec::new(),
        });
        kept.push(keep);
    }
    let skip = components.iter().take_while(|c| c.dim() == 0).count();
    components.drain(..skip);
    if let Some(first) = components.first_mut() {
        first.incoming.clear();
    }
    TruncatedHilbertModule::from_parts(p.nvars(), Flavor::Commutative, true, top, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{defect_space, free_cover};
    use crate::poly::CommPoly;
    use crate::Rational;

    #[test]
    fn zeros_module_defect() {
        let h = zeros_module::<Rational>(2, 3, 4).unwrap();
        assert_eq!(h.nvars(), 5);
        let g = defect_space(&h);
        assert_eq!(g.degrees(), vec![0]);
        assert!(free_cover(&h).unwrap().certificates.passed());
    }

    #[test]
    fn powers_defect_is_a_box() {
        let h = powers_module::<Rational>(&[2, 3], 8).unwrap();
        let g = defect_space(&h);
        assert_eq!(g.total(), 6);
        assert!(g.properly_generated);
        let labels: Vec<&str> =
            g.components[0].space.pivots().iter().map(|p| h.components()[0].labels[*p].as_str()).collect();
        assert_eq!(labels, vec!["1", "z1", "z2", "z1*z2", "z2^2", "z1*z2^2"]);
        let c = free_cover(&h).unwrap();
        assert!(c.certificates.passed(), "{:?}", c.certificates);
    }

    #[test]
    fn principal_submodule_defect() {
        let g = vec![vec![CommPoly::parse("z1^2", 2).unwrap()]];
        let h = generated_submodule::<Rational>(2, 5, &[0], &g).unwrap();
        let d = defect_space(&h);
        assert_eq!(d.degrees(), vec![2]);
        assert_eq!(h.dim(5), 4);
    }

    #[test]
    fn quotient_by_maximal_ideal() {
        let rel = vec![vec![CommPoly::parse("z1", 2).unwrap()], vec![CommPoly::parse("z2", 2).unwrap()]];
        let p = GradedPresentation::<Rational>::from_columns(2, vec![0], rel).unwrap();
        let h = quotient_module(&p, 3).unwrap();
        assert_eq!(h.dims(), vec![(0, 1), (1, 0), (2, 0), (3, 0)]);
        let sq = GradedPresentation::<Rational>::from_columns(
            2,
            vec![0],
            vec![vec![CommPoly::parse("z1^2 - z1*z2", 2).unwrap()]],
        )
        .unwrap();
        let q = quotient_module(&sq, 4).unwrap();
        for n in 0..=4 {
            assert_eq!(q.dim(n), sq.hilbert_function(n));
        }
        assert!(q.operators_commute());
        assert!(free_cover(&q).unwrap().certificates.passed());
    }
}
