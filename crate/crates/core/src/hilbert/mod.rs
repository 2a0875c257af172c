//! Degree-truncated Hilbert modules over exact Gram matrices: defect spaces,
//! free covers, kernels, and the analytic resolution chain.

mod analytic;
mod cover;
mod defect;
mod examples;
mod module;
mod nc;

pub use analytic::{algebraize, resolve_analytic, AlgebraizedModule, AnalyticResolution, AnalyticStep};
pub use cover::{
    defect_generators, free_cover, free_cover_from, kernel_min_generators, CoverBlock, CoverCertificates, CoverMap,
    Generator,
};
pub use defect::{
    check_row_contraction, defect_space, DefectComponent, DefectData, DeltaComponent, RowContraction, CROSS_CHECK_LIMIT,
};
pub use examples::{generated_submodule, powers_module, quotient_module, zeros_module};
pub use module::{build_free, build_free_with_gram, submodule, Component, Embedding, Flavor, TruncatedHilbertModule};
pub use nc::{nc_counterexample, NcReport, NcStep, NcVector};
