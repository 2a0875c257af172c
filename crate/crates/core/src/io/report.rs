use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::hilbert::{
    kernel_min_generators, CoverCertificates, CoverMap, DefectData, NcReport, RowContraction, TruncatedHilbertModule,
};
use crate::io::json::{resolution_to_json, ResolutionJson, SCHEMA_VERSION};
use crate::pipeline::{summary_line, Resolved};
use crate::scalar::Field;
use crate::syzygy::{Certificate, FreeResolution};

/// Graded Betti numbers in the usual layout: column `i` is `F_{i+1}`, row
/// `r` counts generators of internal degree `i + r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub totals: Vec<usize>,
    pub rows: Vec<(i64, Vec<usize>)>,
}

impl BettiTable {
    pub fn new<F: Field>(r: &FreeResolution<F>) -> Self {
        let graded = r.graded_betti();
        let totals = r.betti();
        let mut rows: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, t) in graded.iter().enumerate() {
            for (deg, count) in t {
                rows.entry(deg - i as i64).or_insert_with(|| vec![0; totals.len()])[i] = *count;
            }
        }
        BettiTable { totals, rows: rows.into_iter().collect() }
    }

    pub fn render(&self) -> String {
        let cell = |x: usize| if x == 0 { ".".to_string() } else { x.to_string() };
        let width = self
            .totals
            .iter()
            .map(|x| x.to_string().len())
            .chain(self.totals.iter().enumerate().map(|(i, _)| i.to_string().len()))
            .max()
            .unwrap_or(1);
        let label_width = self.rows.iter().map(|(r, _)| r.to_string().len() + 1).max().unwrap_or(1).max(6);
        let mut out = String::new();
        let head: Vec<String> = (0..self.totals.len()).map(|i| format!("{i:>width$}")).collect();
        let _ = writeln!(out, "{:>label_width$} {}", "", head.join(" "));
        let tot: Vec<String> = self.totals.iter().map(|x| format!("{x:>width$}")).collect();
        let _ = writeln!(out, "{:>label_width$} {}", "total:", tot.join(" "));
        for (r, counts) in &self.rows {
            let cells: Vec<String> = counts.iter().map(|x| format!("{:>width$}", cell(*x))).collect();
            let _ = writeln!(out, "{:>label_width$} {}", format!("{r}:"), cells.join(" "));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepJson {
    pub generator_degrees: Vec<i64>,
    pub kernel_dims: Vec<(i64, usize)>,
    pub certificates: CoverCertificates,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModeJson {
    pub summary: String,
    pub betti: Vec<usize>,
    pub graded_betti: Vec<Vec<(i64, usize)>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<StepJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckJson {
    pub analytic: Option<ModeJson>,
    pub algebraic: Option<ModeJson>,
    pub agree: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolveReport {
    pub schema_version: u32,
    pub command: String,
    pub mode: String,
    pub summary: String,
    pub betti: Vec<usize>,
    pub euler: i64,
    pub length: usize,
    pub betti_table: BettiTable,
    pub generator_degrees: Vec<Vec<i64>>,
    pub certified_through: Option<i64>,
    pub certificate: Certificate,
    pub cross_check: CrossCheckJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<ResolutionJson>,
    pub passed: bool,
}

fn mode_json<F: Field>(r: &FreeResolution<F>, steps: Vec<StepJson>) -> ModeJson {
    ModeJson {
        summary: summary_line(r),
        betti: r.betti(),
        graded_betti: r.graded_betti().into_iter().map(|t| t.into_iter().collect()).collect(),
        steps,
    }
}

impl ResolveReport {
    pub fn new<F: Field>(command: &str, r: &Resolved<F>, with_resolution: bool) -> Self {
        let res = r.resolution();
        let analytic = r.analytic.as_ref().map(|a| {
            let steps = a
                .steps
                .iter()
                .map(|s| StepJson {
                    generator_degrees: s.generator_degrees.clone(),
                    kernel_dims: s.kernel_dims.clone(),
                    certificates: s.certificates,
                })
                .collect();
            mode_json(&a.resolution, steps)
        });
        ResolveReport {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            mode: r.mode.to_string(),
            summary: summary_line(res),
            betti: res.betti(),
            euler: res.euler(),
            length: res.length(),
            betti_table: BettiTable::new(res),
            generator_degrees: res.modules().iter().map(|m| m.gen_degrees().to_vec()).collect(),
            certified_through: r.certified_through,
            certificate: r.certificate.clone(),
            cross_check: CrossCheckJson {
                analytic,
                algebraic: r.algebraic.as_ref().map(|b| mode_json(b, Vec::new())),
                agree: r.agree,
            },
            resolution: with_resolution.then(|| resolution_to_json(res)),
            passed: r.passed(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.summary);
        out.push_str(&self.betti_table.render());
        if self.command == "betti" {
            return out;
        }
        let gens: Vec<String> =
            self.generator_degrees.iter().enumerate().map(|(k, d)| format!("F{} ({})", k + 1, join(d))).collect();
        let _ = writeln!(out, "generator degrees: {}", if gens.is_empty() { "none".into() } else { gens.join(" | ") });
        if let Some(a) = &self.cross_check.analytic {
            for (k, s) in a.steps.iter().enumerate() {
                let dims: Vec<String> = s.kernel_dims.iter().map(|(n, d)| format!("{n}:{d}")).collect();
                let _ = writeln!(
                    out,
                    "cover {}: generators ({}), kernel dims [{}], certificates {}",
                    k + 1,
                    join(&s.generator_degrees),
                    dims.join(" "),
                    verdict(s.certificates.passed())
                );
            }
        }
        if let Some(n) = self.certified_through {
            let _ = writeln!(out, "presentation certified through degree {n}");
        }
        let c = &self.certificate;
        if c.passed() {
            let _ = writeln!(
                out,
                "certificate: passed (complex, minimal, length bound, exactness and telescope through degree {})",
                c.check_degree
            );
        } else {
            let _ = writeln!(out, "certificate: FAILED");
            for f in c.describe_failures() {
                let _ = writeln!(out, "  {f}");
            }
        }
        match self.cross_check.agree {
            Some(true) => {
                let _ = writeln!(out, "modes: analytic and algebraic agree");
            }
            Some(false) => {
                let _ = writeln!(out, "modes: DISAGREE");
            }
            None => {
                let _ = writeln!(out, "mode: {}", self.mode);
            }
        }
        out
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectVectorJson {
    pub degree: i64,
    pub vector: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaJson {
    pub degree: i64,
    pub psd: bool,
    pub rank: usize,
    pub pivots: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionJson {
    pub passed: bool,
    pub total_rank: usize,
    pub failure_degree: Option<i64>,
    pub components: Vec<DeltaJson>,
}

impl ContractionJson {
    pub fn new<F: Field>(r: &RowContraction<F>) -> Self {
        ContractionJson {
            passed: r.passed(),
            total_rank: r.total_rank(),
            failure_degree: r.failure_degree(),
            components: r
                .components
                .iter()
                .map(|c| DeltaJson {
                    degree: c.degree,
                    psd: c.psd,
                    rank: c.rank,
                    pivots: c.pivots.iter().map(|p| p.to_string()).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectReport {
    pub schema_version: u32,
    pub command: String,
    pub d: usize,
    pub graded: bool,
    pub top: i64,
    pub dims: Vec<(i64, usize)>,
    pub defect: usize,
    pub degrees: Vec<i64>,
    pub basis: Vec<DefectVectorJson>,
    pub properly_generated: bool,
    pub first_gap: Option<i64>,
    /// Degrees where the `ker Σ T_k T_k*` comparison ran, with its verdict.
    pub cross_check: Vec<(i64, bool)>,
    pub row_contraction: ContractionJson,
    pub passed: bool,
}

impl DefectReport {
    pub fn new<F: Field>(
        command: &str,
        h: &TruncatedHilbertModule<F>,
        g: &DefectData<F>,
        contraction: &RowContraction<F>,
    ) -> Self {
        let mut basis: Vec<DefectVectorJson> = g
            .vectors()
            .iter()
            .map(|(c, deg, v)| DefectVectorJson { degree: *deg, vector: h.describe(*c, v) })
            .collect();
        basis.sort_by_key(|b| b.degree);
        let row_contraction = ContractionJson::new(contraction);
        DefectReport {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            d: h.nvars(),
            graded: h.is_graded(),
            top: h.top(),
            dims: h.dims(),
            defect: g.total(),
            degrees: g.degrees(),
            basis,
            properly_generated: g.properly_generated,
            first_gap: g.first_gap,
            cross_check: g.components.iter().filter_map(|c| c.cross_check.map(|ok| (c.degree, ok))).collect(),
            passed: g.properly_generated && g.cross_check_passed() && row_contraction.passed,
            row_contraction,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "defect={} degrees=({})", self.defect, join(&self.degrees));
        let mut by_degree: BTreeMap<i64, Vec<&str>> = BTreeMap::new();
        for b in &self.basis {
            by_degree.entry(b.degree).or_default().push(&b.vector);
        }
        for (n, vs) in by_degree {
            let _ = writeln!(out, "  degree {n}: {}", vs.join(" | "));
        }
        let _ = writeln!(
            out,
            "properly generated through degree {}: {}",
            self.top,
            match self.first_gap {
                None => "yes".to_string(),
                Some(n) => format!("NO (first gap at degree {n})"),
            }
        );
        let checked = self.cross_check.len();
        let agreed = self.cross_check.iter().filter(|(_, ok)| *ok).count();
        let _ = writeln!(out, "kernel of sum T_k T_k* agrees in {agreed}/{checked} checked degrees");
        let rc = &self.row_contraction;
        match rc.failure_degree {
            None => {
                let _ = writeln!(out, "row contraction: passed, rank of defect operator {}", rc.total_rank);
            }
            Some(n) => {
                let _ = writeln!(out, "row contraction: FAILED at degree {n} (negative LDL pivot)");
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockJson {
    pub degree: i64,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub escaped_columns: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelJson {
    pub dims: Vec<(i64, usize)>,
    pub generator_degrees: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub schema_version: u32,
    pub command: String,
    pub generator_degrees: Vec<i64>,
    pub blocks: Vec<BlockJson>,
    pub certificates: CoverCertificates,
    pub kernel: Option<KernelJson>,
    pub kernel_error: Option<String>,
    pub passed: bool,
}

impl CoverReport {
    pub fn new<F: Field>(command: &str, cover: &CoverMap<F>) -> Self {
        let (kernel, kernel_error) = if cover.target_graded {
            match kernel_min_generators(cover) {
                Ok((k, g)) => (Some(KernelJson { dims: k.dims(), generator_degrees: g.degrees() }), None),
                Err(e) => (None, Some(e.to_string())),
            }
        } else {
            (None, None)
        };
        CoverReport {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            generator_degrees: cover.generator_degrees(),
            blocks: cover
                .blocks
                .iter()
                .map(|b| BlockJson {
                    degree: b.degree,
                    source_dim: b.matrix.ncols(),
                    target_dim: b.matrix.nrows(),
                    rank: b.matrix.rank(),
                    escaped_columns: b.live.iter().filter(|l| !**l).count(),
                })
                .collect(),
            certificates: cover.certificates,
            passed: cover.certificates.passed() && kernel_error.is_none(),
            kernel,
            kernel_error,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "cover generators: {} at degrees ({})",
            self.generator_degrees.len(),
            join(&self.generator_degrees)
        );
        for b in &self.blocks {
            let esc = if b.escaped_columns > 0 {
                format!(", {} columns leave the truncation", b.escaped_columns)
            } else {
                String::new()
            };
            let _ = writeln!(out, "  degree {}: {} -> {}, rank {}{esc}", b.degree, b.source_dim, b.target_dim, b.rank);
        }
        let c = &self.certificates;
        let _ = writeln!(
            out,
            "surjective {}, module map {}, contractive {}, isometric on defect {}, kernel in Z*F {}",
            verdict(c.surjective),
            verdict(c.module_map),
            verdict(c.contractive),
            verdict(c.isometry_on_defect),
            verdict(c.kernel_in_zf)
        );
        if let Some(k) = &self.kernel {
            let dims: Vec<String> = k.dims.iter().map(|(n, d)| format!("{n}:{d}")).collect();
            let _ = writeln!(
                out,
                "kernel dims [{}], generators at degrees ({})",
                dims.join(" "),
                join(&k.generator_degrees)
            );
        }
        if let Some(e) = &self.kernel_error {
            let _ = writeln!(out, "kernel: {e}");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NcStepJson {
    pub n: i64,
    pub dim: usize,
    pub bound: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NcVectorJson {
    pub degree: i64,
    pub vector: String,
    pub norm_sq: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NcReportJson {
    pub schema_version: u32,
    pub command: String,
    pub d: usize,
    pub start: i64,
    pub steps: Vec<NcStepJson>,
    pub vectors: Vec<NcVectorJson>,
    pub orthonormal: bool,
    pub defect_counts: Vec<usize>,
    pub monotone: bool,
    pub passed: bool,
}

impl NcReportJson {
    pub fn new<F: Field>(r: &NcReport<F>) -> Self {
        NcReportJson {
            schema_version: SCHEMA_VERSION,
            command: "nc-demo".into(),
            d: r.nvars,
            start: r.start,
            steps: r
                .steps
                .iter()
                .map(|s| NcStepJson { n: s.degree, dim: s.dim_next, bound: s.bound.to_string(), holds: s.holds })
                .collect(),
            vectors: r
                .vectors
                .iter()
                .map(|v| NcVectorJson { degree: v.degree, vector: v.label.clone(), norm_sq: v.norm_sq.to_string() })
                .collect(),
            orthonormal: r.orthonormal,
            defect_counts: r.defect_counts.clone(),
            monotone: r.monotone(),
            passed: r.passed(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "nc-demo d={} start={} steps={}", self.d, self.start, self.steps.len());
        for v in &self.vectors {
            let _ = writeln!(out, "  zeta_{} = {}  (norm^2 {})", v.degree, v.vector, v.norm_sq);
        }
        for s in &self.steps {
            let _ = writeln!(
                out,
                "  n={}: dim(M_n in degree {}) = {} < {} {}",
                s.n,
                s.n + 1,
                s.dim,
                s.bound,
                verdict(s.holds)
            );
        }
        let _ = writeln!(out, "orthonormal: {}", if self.orthonormal { "yes" } else { "NO" });
        let _ = writeln!(
            out,
            "defect counts: {} ({})",
            join(&self.defect_counts),
            if self.monotone { "nondecreasing" } else { "NOT monotone" }
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedPresentation;
    use crate::poly::CommPoly;
    use crate::syzygy::minimal_free_resolution;
    use crate::Rational;

    #[test]
    fn koszul_table() {
        let cols = ["z1", "z2", "z3"].iter().map(|s| vec![CommPoly::parse(s, 3).unwrap()]).collect();
        let p = GradedPresentation::<Rational>::from_columns(3, vec![0], cols).unwrap();
        let t = BettiTable::new(&minimal_free_resolution(&p).unwrap());
        assert_eq!(t.rows, vec![(0, vec![1, 3, 3, 1])]);
        let text = t.render();
        assert!(text.contains("total: 1 3 3 1"), "{text}");
    }
}
