use crate::error::{Error, Result};
use crate::graded::{vector_from_coords, FreeVec, GradedMatrix, GradedPresentation};
use crate::hilbert::cover::{
    defect_generators, free_cover, free_cover_from, kernel_min_generators, CoverCertificates, CoverMap,
};
use crate::hilbert::defect::DefectData;
use crate::hilbert::module::{Flavor, TruncatedHilbertModule};
use crate::scalar::Field;
use crate::syzygy::FreeResolution;

/// One cover in the analytic chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalyticStep {
    pub generator_degrees: Vec<i64>,
    pub certificates: CoverCertificates,
    /// `dim ker A` per degree.
    pub kernel_dims: Vec<(i64, usize)>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct AnalyticResolution<F> {
    pub resolution: FreeResolution<F>,
    pub steps: Vec<AnalyticStep>,
}

field_debug!(AnalyticResolution { resolution, steps });

/// A presentation read off the first cover, and the degree through which its
/// Hilbert function was compared with the module's dimensions.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraizedModule<F> {
    pub presentation: GradedPresentation<F>,
    pub certified_through: i64,
}

field_debug!(AlgebraizedModule { presentation, certified_through });

fn require_graded_commutative<F: Field>(h: &TruncatedHilbertModule<F>) -> Result<()> {
    if !h.is_graded() {
        return Err(Error::Ungraded);
    }
    if h.flavor() != Flavor::Commutative {
        return Err(Error::NotCommutative);
    }
    Ok(())
}

fn checked(cover: &CoverMap<impl Field>, step: usize) -> Result<()> {
    if cover.certificates.passed() {
        Ok(())
    } else {
        Err(Error::Certificate(format!("cover {} failed: {:?}", step + 1, cover.certificates)))
    }
}

/// Kernel generators of a cover as polynomial columns over the cover's
/// source, in ascending degree.
fn kernel_columns<F: Field>(
    cover: &CoverMap<F>,
    k: &TruncatedHilbertModule<F>,
    g: &DefectData<F>,
) -> (Vec<i64>, Vec<FreeVec<F>>) {
    let layout = cover.layout();
    let mut degrees = Vec::new();
    let mut cols = Vec::new();
    for (c, n, v) in g.vectors() {
        let ambient = k.ambient_map(c).expect("kernels embed in their cover").mul_vec(&v);
        cols.push(vector_from_coords(layout, &layout.index(n), &ambient));
        degrees.push(n);
    }
    (degrees, cols)
}

/// Iterates covers and kernels: `F_1 → H`, then `F_{k+1} → ker(F_k → ·)`,
/// until the kernel vanishes through the truncation.
pub fn resolve_analytic<F: Field>(h: &TruncatedHilbertModule<F>) -> Result<AnalyticResolution<F>> {
    require_graded_commutative(h)?;
    let nvars = h.nvars();
    if h.total_dim() == 0 {
        return Ok(AnalyticResolution {
            resolution: FreeResolution::new(nvars, Vec::new(), Vec::new()),
            steps: Vec::new(),
        });
    }
    let mut cover = free_cover(h)?;
    let mut modules = vec![cover.layout().clone()];
    let mut differentials = Vec::new();
    let mut steps = Vec::new();
    loop {
        checked(&cover, steps.len())?;
        let (k, g) = kernel_min_generators(&cover)?;
        steps.push(AnalyticStep {
            generator_degrees: cover.generator_degrees(),
            certificates: cover.certificates,
            kernel_dims: k.dims(),
        });
        if g.total() == 0 {
            break;
        }
        if let Some(degree) = g.first_gap {
            return Err(Error::NotProperlyGenerated { degree });
        }
        let (degrees, cols) = kernel_columns(&cover, &k, &g);
        differentials.push(GradedMatrix::from_columns(cover.layout().clone(), degrees, &cols));
        cover = free_cover_from(&k, defect_generators(&g))?;
        modules.push(cover.layout().clone());
    }
    Ok(AnalyticResolution { resolution: FreeResolution::new(nvars, modules, differentials), steps })
}

/// Presentation `coker(F_2 → F_1)` from the first cover and its kernel.
pub fn algebraize<F: Field>(h: &TruncatedHilbertModule<F>) -> Result<AlgebraizedModule<F>> {
    require_graded_commutative(h)?;
    let cover = free_cover(h)?;
    checked(&cover, 0)?;
    let (k, g) = kernel_min_generators(&cover)?;
    let (degrees, cols) = kernel_columns(&cover, &k, &g);
    let certified_through = degrees.iter().max().map_or(h.top(), |m| h.top() - m);
    let relations = GradedMatrix::from_columns(cover.layout().clone(), degrees, &cols);
    let presentation = GradedPresentation::new(relations)?;
    let lo = h.min_degree().unwrap_or(0);
    for n in lo..=certified_through {
        let (want, got) = (h.dim(n), presentation.hilbert_function(n));
        if want != got {
            return Err(Error::Certificate(format!(
                "presentation has Hilbert function {got} at degree {n}, module has {want}"
            )));
        }
    }
    Ok(AlgebraizedModule { presentation, certified_through })
}
