use crate::error::{Error, Result};
use crate::graded::GradedFree;
use crate::hilbert::defect::{defect_space, DefectData};
use crate::hilbert::module::{build_free_with_gram, submodule, Flavor, TruncatedHilbertModule};
use crate::linalg::{SparseMatrix, SparseVec, Subspace};
use crate::poly::{Monomial, MonomialKind};
use crate::scalar::Field;

/// A chosen basis vector of the defect space, in the coordinates of
/// component `component` of the covered module.
#[derive(Clone, PartialEq, Eq)]
pub struct Generator<F> {
    pub component: usize,
    pub degree: i64,
    pub vector: SparseVec<F>,
}

field_debug!(Generator { component, degree, vector });

/// The degree-`degree` part of the cover map, landing in component
/// `target`. Columns whose image leaves the truncation are recorded in
/// `live` and stored as zero.
#[derive(Clone, PartialEq, Eq)]
pub struct CoverBlock<F> {
    pub degree: i64,
    pub target: usize,
    pub matrix: SparseMatrix<F>,
    pub live: Vec<bool>,
}

field_debug!(CoverBlock { degree, target, matrix, live });

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct CoverCertificates {
    pub surjective: bool,
    pub module_map: bool,
    pub contractive: bool,
    /// `A` preserves inner products on `F ⊖ Z·F`.
    pub isometry_on_defect: bool,
    /// `ker A ⊆ Z·F`.
    pub kernel_in_zf: bool,
}

impl CoverCertificates {
    pub fn passed(&self) -> bool {
        self.surjective && self.module_map && self.contractive && self.isometry_on_defect && self.kernel_in_zf
    }
}

/// `A: H² ⊗ G → H`, `z^β ⊗ ζ ↦ T^β ζ`, with its certificates.
#[derive(Clone, PartialEq, Eq)]
pub struct CoverMap<F> {
    pub source: TruncatedHilbertModule<F>,
    pub generators: Vec<Generator<F>>,
    pub blocks: Vec<CoverBlock<F>>,
    pub certificates: CoverCertificates,
    /// Whether the covered module is graded; kernels are only meaningful then.
    pub target_graded: bool,
}

field_debug!(CoverMap { source, generators, blocks, certificates, target_graded });

impl<F: Field> CoverMap<F> {
    pub fn layout(&self) -> &GradedFree {
        &self.source.embedding().expect("cover sources are free").layout
    }

    pub fn generator_degrees(&self) -> Vec<i64> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn block(&self, n: i64) -> Option<&CoverBlock<F>> {
        self.blocks.iter().find(|b| b.degree == n)
    }
}

/// Minimal free cover built on the defect space of `h`.
pub fn free_cover<F: Field>(h: &TruncatedHilbertModule<F>) -> Result<CoverMap<F>> {
    let g = defect_space(h);
    if let Some(degree) = g.first_gap {
        return Err(Error::NotProperlyGenerated { degree });
    }
    free_cover_from(h, defect_generators(&g))
}

pub fn defect_generators<F: Field>(g: &DefectData<F>) -> Vec<Generator<F>> {
    g.vectors().into_iter().map(|(component, degree, vector)| Generator { component, degree, vector }).collect()
}

/// Cover built on an explicit basis of the defect space. Any basis works;
/// the coefficient Gram matrix is the one inherited from `h`.
pub fn free_cover_from<F: Field>(h: &TruncatedHilbertModule<F>, generators: Vec<Generator<F>>) -> Result<CoverMap<F>> {
    if h.flavor() != Flavor::Commutative {
        return Err(Error::NotCommutative);
    }
    let degrees: Vec<i64> = generators.iter().map(|g| g.degree).collect();
    let ngens = generators.len();
    let mut coeff = vec![Vec::new(); ngens];
    for (j, gj) in generators.iter().enumerate() {
        let gram = &h.components()[gj.component].gram;
        let gv = gram.mul_vec(&gj.vector);
        for (i, gi) in generators.iter().enumerate() {
            if gi.component == gj.component {
                coeff[j].push((i, gi.vector.dot(&gv)));
            }
        }
    }
    let coeff = SparseMatrix::from_columns(ngens, coeff.into_iter().map(SparseVec::from_pairs).collect());
    let source = build_free_with_gram(h.nvars(), h.top(), &degrees, &coeff, Flavor::Commutative)?;
    let layout = source.embedding().unwrap().layout.clone();

    let mut blocks: Vec<CoverBlock<F>> = Vec::new();
    for comp in source.components() {
        let n = comp.degree;
        let target = if h.is_graded() {
            match h.min_degree() {
                Some(lo) if n >= lo => (n - lo) as usize,
                _ => return Err(Error::Certificate(format!("no target component at degree {n}"))),
            }
        } else {
            0
        };
        let tdim = h.components()[target].dim();
        let idx = layout.index(n);
        let pidx = layout.index(n - 1);
        let mut cols = Vec::with_capacity(idx.len());
        let mut live = Vec::with_capacity(idx.len());
        for (i, m) in idx.elements() {
            let (v, ok) = match m.first_var() {
                None => (generators[*i].vector.clone(), true),
                Some(k) => {
                    let prev = blocks.last().expect("lower degree block");
                    let p = pidx.position(*i, &m.lower(k).unwrap()).unwrap();
                    let src = prev.matrix.col(p);
                    let t = &h.components()[target].incoming[k];
                    let escapes = !h.is_graded() && src.indices().any(|x| h.components()[target].escaping[k][x]);
                    if prev.live[p] && !escapes {
                        (t.mul_vec(src), true)
                    } else {
                        (SparseVec::new(), false)
                    }
                }
            };
            cols.push(v);
            live.push(ok);
        }
        blocks.push(CoverBlock { degree: n, target, matrix: SparseMatrix::from_columns(tdim, cols), live });
    }

    let mut cover = CoverMap {
        source,
        generators,
        blocks,
        certificates: CoverCertificates::default(),
        target_graded: h.is_graded(),
    };
    cover.certificates = certify_cover(h, &cover);
    Ok(cover)
}

fn certify_cover<F: Field>(h: &TruncatedHilbertModule<F>, cover: &CoverMap<F>) -> CoverCertificates {
    CoverCertificates {
        surjective: surjective(h, cover),
        module_map: module_map(h, cover),
        contractive: contractive(h, cover),
        isometry_on_defect: isometry_on_defect(h, cover),
        kernel_in_zf: kernel_in_zf(h, cover),
    }
}

fn surjective<F: Field>(h: &TruncatedHilbertModule<F>, cover: &CoverMap<F>) -> bool {
    if h.is_graded() {
        h.components().iter().enumerate().all(|(c, comp)| {
            let got = cover.blocks.iter().find(|b| b.target == c).map_or(0, |b| b.matrix.rank());
            got == comp.dim()
        })
    } else {
        let (a, _) = global_map(cover);
        h.components().first().is_none_or(|c| a.rank() == c.dim())
    }
}

/// `A(z_k · x) = T_k A(x)` on every basis column where both sides are defined.
fn module_map<F: Field>(h: &TruncatedHilbertModule<F>, cover: &CoverMap<F>) -> bool {
    let layout = cover.layout();
    for w in cover.blocks.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let hidx = layout.index(hi.degree);
        for (p, (i, m)) in layout.index(lo.degree).elements().iter().enumerate() {
            if !lo.live[p] {
                continue;
            }
            for k in 0..h.nvars() {
                let t = &h.components()[hi.target].incoming[k];
                let x = lo.matrix.col(p);
                if !h.is_graded() && x.indices().any(|y| h.components()[hi.target].escaping[k][y]) {
                    continue;
                }
                let q = hidx.position(*i, &m.raise(k)).unwrap();
                if hi.live[q] && *hi.matrix.col(q) != t.mul_vec(x) {
                    return false;
                }
            }
        }
    }
    true
}

/// Ungraded targets: the whole map as one matrix with dead columns zeroed,
/// plus the offset of each block.
fn global_map<F: Field>(cover: &CoverMap<F>) -> (SparseMatrix<F>, Vec<usize>) {
    let mut offsets = Vec::new();
    let mut off = 0;
    for b in &cover.blocks {
        offsets.push(off);
        off += b.matrix.ncols();
    }
    let parts: Vec<SparseMatrix<F>> = cover.blocks.iter().map(|b| b.matrix.clone()).collect();
    (SparseMatrix::hstack(&parts), offsets)
}

fn global_gram<F: Field>(cover: &CoverMap<F>) -> SparseMatrix<F> {
    let mut cols = Vec::new();
    let mut off = 0;
    for comp in cover.source.components() {
        for c in comp.gram.columns() {
            cols.push(c.remap(|i| i + off));
        }
        off += comp.dim();
    }
    SparseMatrix::from_columns(off, cols)
}

fn live_indices<F: Field>(cover: &CoverMap<F>) -> Vec<usize> {
    cover.blocks.iter().flat_map(|b| b.live.iter().copied()).enumerate().filter_map(|(i, l)| l.then_some(i)).collect()
}

fn restrict_square<F: Field>(m: &SparseMatrix<F>, keep: &[usize]) -> SparseMatrix<F> {
    m.select_columns(keep).transpose().select_columns(keep).transpose()
}

/// `Gram_F − Aᵀ Gram_H A ⪰ 0`.
fn contractive<F: Field>(h: &TruncatedHilbertModule<F>, cover: &CoverMap<F>) -> bool {
    if h.is_graded() {
        cover.blocks.iter().zip(cover.source.components()).all(|(b, fc)| {
            let hg = &h.components()[b.target].gram;
            let pulled = b.matrix.transpose().mul(&hg.mul(&b.matrix));
            fc.gram.sub(&pulled).psd_certificate().is_psd()
        })
    } else {
        let (a, _) = global_map(cover);
        let keep = live_indices(cover);
        let a = a.select_columns(&keep);
        let hg = &h.components()[0].gram;
        let gf = restrict_square(&global_gram(cover), &keep);
        gf.sub(&a.transpose().mul(&hg.mul(&a))).psd_certificate().is_psd()
    }
}

/// Exact equality `Vᵀ Aᵀ Gram_H A V = Vᵀ Gram_F V` for a basis `V` of the
/// defect space of the free module.
fn isometry_on_defect<F: Field>(h: &TruncatedHilbertModule<F>, cover: &CoverMap<F>) -> bool {
    let gf = defect_space(&cover.source);
    if h.is_graded() {
        gf.components.iter().zip(cover.source.components()).zip(&cover.blocks).all(|((d, fc), b)| {
            let v = d.space.basis_matrix();
            let hg = &h.components()[b.target].gram;
            let av = b.matrix.mul(&v);
            av.transpose().mul(&hg.mul(&av)) == v.transpose().mul(&fc.gram.mul(&v))
        })
    } else {
        let (a, offsets) = global_map(cover);
        let total = a.ncols();
        let mut vs = Vec::new();
        for (c, d) in gf.components.iter().enumerate() {
            for v in d.space.basis() {
                if v.indices().any(|i| !cover.blocks[c].live[i]) {
                    return false;
                }
                vs.push(v.remap(|i| i + offsets[c]));
            }
        }
        let v = SparseMatrix::from_columns(total, vs);
        let hg = &h.components()[0].gram;
        let av = a.mul(&v);
        av.transpose().mul(&hg.mul(&av)) == v.transpose().mul(&global_gram(cover).mul(&v))
    }
}

/// Kernel vectors have no coordinate on a generator slot `1 ⊗ ζ_i`.
fn kernel_in_zf<F: Field>(h: &TruncatedHilbertModule<F>, cover: &CoverMap<F>) -> bool {
    let layout = cover.layout();
    let one = Monomial::one(h.nvars());
    if h.is_graded() {
        cover.blocks.iter().all(|b| {
            let idx = layout.index(b.degree);
            let slots: Vec<usize> = (0..layout.rank()).filter_map(|i| idx.position(i, &one)).collect();
            b.matrix.nullspace().basis().iter().all(|v| slots.iter().all(|s| v.get(*s).is_zero()))
        })
    } else {
        let (a, offsets) = global_map(cover);
        let keep = live_indices(cover);
        let mut slots = Vec::new();
        for (c, b) in cover.blocks.iter().enumerate() {
            let idx = layout.index(b.degree);
            slots.extend((0..layout.rank()).filter_map(|i| idx.position(i, &one)).map(|p| p + offsets[c]));
        }
        let a = a.select_columns(&keep);
        a.nullspace().basis().iter().all(|v| v.indices().all(|i| !slots.contains(&keep[i])))
    }
}

/// `ker A` as a submodule of the cover's source, with its own defect space.
/// Fails when a kernel generator sits at the truncation degree, since
/// relations above it would be invisible.
pub fn kernel_min_generators<F: Field>(cover: &CoverMap<F>) -> Result<(TruncatedHilbertModule<F>, DefectData<F>)> {
    if !cover.target_graded {
        return Err(Error::Ungraded);
    }
    let spaces: Vec<Subspace<F>> = cover.blocks.iter().map(|b| b.matrix.nullspace()).collect();
    let k = submodule(&cover.source, &spaces)?;
    let g = defect_space(&k);
    let top = k.top();
    if g.components.iter().any(|c| c.degree == top && c.space.dim() > 0) {
        return Err(Error::RaiseTruncation { top });
    }
    Ok((k, g))
}
