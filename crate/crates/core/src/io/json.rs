use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graded::{FreeVec, GradedPresentation};
use crate::hilbert::{Component, Flavor, TruncatedHilbertModule};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::poly::CommPoly;
use crate::scalar::Field;
use crate::syzygy::FreeResolution;

pub const SCHEMA_VERSION: u32 = 1;

/// Column-major relations: `relations[j][i]` is the entry of relation `j`
/// on generator `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationJson {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub d: usize,
    pub gen_degrees: Vec<i64>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

/// Sparse matrix as `(row, col, "p/q")` triplets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentJson {
    pub degree: i64,
    pub dim: usize,
    pub labels: Vec<String>,
    pub basis_degrees: Vec<i64>,
    pub gram: MatrixJson,
    /// Operators into this component from the previous one (from itself when
    /// the module is ungraded).
    pub operators: Vec<MatrixJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub escaping: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub kind: String,
    pub d: usize,
    pub flavor: String,
    pub graded: bool,
    pub top: i64,
    pub components: Vec<ComponentJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialJson {
    pub source_degrees: Vec<i64>,
    pub target_degrees: Vec<i64>,
    pub columns: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionJson {
    pub d: usize,
    pub modules: Vec<Vec<i64>>,
    pub differentials: Vec<DifferentialJson>,
    pub betti: Vec<usize>,
    /// Per free module, `(degree, count)` pairs.
    pub graded_betti: Vec<Vec<(i64, usize)>>,
    pub euler: i64,
    pub length: usize,
}

/// A parsed job input.
#[derive(Clone, PartialEq, Eq)]
pub enum Input<F> {
    Presentation(GradedPresentation<F>),
    Module(TruncatedHilbertModule<F>),
}

impl<F: crate::Field> std::fmt::Debug for Input<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Input::Presentation(p) => f.debug_tuple("Presentation").field(p).finish(),
            Input::Module(h) => f.debug_tuple("Module").field(h).finish(),
        }
    }
}

fn check_version(v: u32) -> Result<()> {
    if v == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(Error::Schema(format!("unknown schema version {v}; this build reads version {SCHEMA_VERSION}")))
    }
}

/// Reads a presentation or a Hilbert module dump, telling them apart by their
/// fields.
pub fn parse_input<F: Field>(text: &str) -> Result<Input<F>> {
    let value: Value = serde_json::from_str(text)?;
    let obj = value.as_object().ok_or_else(|| Error::Schema("expected a JSON object".into()))?;
    if let Some(v) = obj.get("schema_version") {
        let v = v.as_u64().ok_or_else(|| Error::Schema("schema_version must be an integer".into()))?;
        check_version(v as u32)?;
    }
    if obj.contains_key("gen_degrees") {
        Ok(Input::Presentation(presentation_from_json(&serde_json::from_value(value)?)?))
    } else if obj.contains_key("components") {
        Ok(Input::Module(module_from_json(&serde_json::from_value(value)?)?))
    } else {
        Err(Error::Schema("neither a presentation (gen_degrees) nor a Hilbert module (components)".into()))
    }
}

pub fn presentation_from_json<F: Field>(j: &PresentationJson) -> Result<GradedPresentation<F>> {
    check_version(j.schema_version)?;
    let mut cols: Vec<FreeVec<F>> = Vec::with_capacity(j.relations.len());
    for col in &j.relations {
        cols.push(col.iter().map(|s| CommPoly::parse(s, j.d)).collect::<Result<_>>()?);
    }
    GradedPresentation::from_columns(j.d, j.gen_degrees.clone(), cols)
}

pub fn presentation_to_json<F: Field>(p: &GradedPresentation<F>) -> PresentationJson {
    PresentationJson {
        schema_version: SCHEMA_VERSION,
        d: p.nvars(),
        gen_degrees: p.generators().gen_degrees().to_vec(),
        relations: p.relations().columns().iter().map(|c| c.iter().map(|e| e.to_string()).collect()).collect(),
    }
}

fn matrix_to_json<F: Field>(m: &SparseMatrix<F>) -> MatrixJson {
    let mut entries = Vec::with_capacity(m.nnz());
    for (j, c) in m.columns().iter().enumerate() {
        for (i, v) in c.iter() {
            entries.push((*i, j, v.to_string()));
        }
    }
    entries.sort_by_key(|(i, j, _)| (*i, *j));
    MatrixJson { rows: m.nrows(), cols: m.ncols(), entries }
}

fn matrix_from_json<F: Field>(m: &MatrixJson) -> Result<SparseMatrix<F>> {
    let mut cols: Vec<Vec<(usize, F)>> = vec![Vec::new(); m.cols];
    for (i, j, s) in &m.entries {
        if *i >= m.rows || *j >= m.cols {
            return Err(Error::Schema(format!("entry ({i}, {j}) outside a {}x{} matrix", m.rows, m.cols)));
        }
        let v = F::parse_exact(s).ok_or_else(|| Error::Schema(format!("not an exact rational: {s:?}")))?;
        cols[*j].push((*i, v));
    }
    Ok(SparseMatrix::from_columns(m.rows, cols.into_iter().map(SparseVec::from_pairs).collect()))
}

pub fn module_to_json<F: Field>(h: &TruncatedHilbertModule<F>) -> ModuleJson {
    ModuleJson {
        schema_version: SCHEMA_VERSION,
        kind: "hilbert_module".into(),
        d: h.nvars(),
        flavor: match h.flavor() {
            Flavor::Commutative => "commutative".into(),
            Flavor::Noncommutative => "noncommutative".into(),
        },
        graded: h.is_graded(),
        top: h.top(),
        components: h
            .components()
            .iter()
            .map(|c| ComponentJson {
                degree: c.degree,
                dim: c.dim(),
                labels: c.labels.clone(),
                basis_degrees: c.basis_degrees.clone(),
                gram: matrix_to_json(&c.gram),
                operators: c.incoming.iter().map(matrix_to_json).collect(),
                escaping: c
                    .escaping
                    .iter()
                    .map(|e| e.iter().enumerate().filter_map(|(i, x)| x.then_some(i)).collect())
                    .collect(),
            })
            .collect(),
    }
}

pub fn module_from_json<F: Field>(j: &ModuleJson) -> Result<TruncatedHilbertModule<F>> {
    check_version(j.schema_version)?;
    if j.kind != "hilbert_module" {
        return Err(Error::Schema(format!("unexpected kind {:?}", j.kind)));
    }
    let flavor = match j.flavor.as_str() {
        "commutative" => Flavor::Commutative,
        "noncommutative" => Flavor::Noncommutative,
        other => return Err(Error::Schema(format!("unknown flavor {other:?}"))),
    };
    let mut components = Vec::with_capacity(j.components.len());
    for c in &j.components {
        if c.labels.len() != c.dim {
            return Err(Error::Schema(format!(
                "degree {}: {} labels for dimension {}",
                c.degree,
                c.labels.len(),
                c.dim
            )));
        }
        let incoming = c.operators.iter().map(matrix_from_json).collect::<Result<Vec<_>>>()?;
        let escaping = if j.graded {
            Vec::new()
        } else if c.escaping.is_empty() {
            vec![vec![false; c.dim]; incoming.len()]
        } else {
            c.escaping
                .iter()
                .map(|idx| {
                    let mut e = vec![false; c.dim];
                    for i in idx {
                        if *i >= c.dim {
                            return Err(Error::Schema(format!("escaping index {i} out of range")));
                        }
                        e[*i] = true;
                    }
                    Ok(e)
                })
                .collect::<Result<Vec<_>>>()?
        };
        components.push(Component {
            degree: c.degree,
            labels: c.labels.clone(),
            basis_degrees: c.basis_degrees.clone(),
            gram: matrix_from_json(&c.gram)?,
            incoming,
            escaping,
        });
    }
    TruncatedHilbertModule::from_parts(j.d, flavor, j.graded, j.top, components)
}

pub fn resolution_to_json<F: Field>(r: &FreeResolution<F>) -> ResolutionJson {
    ResolutionJson {
        d: r.nvars(),
        modules: r.modules().iter().map(|m| m.gen_degrees().to_vec()).collect(),
        differentials: r
            .differentials()
            .iter()
            .map(|a| DifferentialJson {
                source_degrees: a.source().gen_degrees().to_vec(),
                target_degrees: a.target().gen_degrees().to_vec(),
                columns: a.columns().iter().map(|c| c.iter().map(|e| e.to_string()).collect()).collect(),
            })
            .collect(),
        betti: r.betti(),
        graded_betti: r.graded_betti().into_iter().map(|t| t.into_iter().collect()).collect(),
        euler: r.euler(),
        length: r.length(),
    }
}

pub fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{build_free, powers_module};
    use crate::Rational;

    #[test]
    fn presentation_example() {
        let text = r#"{"d":2,"gen_degrees":[0],"relations":[["z1"],["z2"]]}"#;
        let Input::Presentation(p) = parse_input::<Rational>(text).unwrap() else { panic!() };
        assert_eq!(p.relations().ncols(), 2);
        assert_eq!(p.hilbert_function(1), 0);
        let printed = to_pretty(&presentation_to_json(&p));
        let Input::Presentation(q) = parse_input::<Rational>(&printed).unwrap() else { panic!() };
        assert_eq!(p, q);
        assert_eq!(printed, to_pretty(&presentation_to_json(&q)));
    }

    #[test]
    fn rejects_bad_inputs() {
        let inhom = r#"{"d":2,"gen_degrees":[0],"relations":[["z1 + z1^2"]]}"#;
        let err = parse_input::<Rational>(inhom).unwrap_err().to_string();
        assert!(err.contains("entry (0, 0)") && err.contains("inhomogeneous"), "{err}");
        assert!(matches!(
            parse_input::<Rational>(r#"{"schema_version":7,"d":1,"gen_degrees":[0]}"#),
            Err(Error::Schema(_))
        ));
        assert!(matches!(parse_input::<Rational>("[1,2"), Err(Error::Json(_))));
    }

    #[test]
    fn module_round_trip() {
        let h = build_free::<Rational>(2, 3, &[0, 1], Flavor::Commutative).unwrap();
        let text = to_pretty(&module_to_json(&h));
        let Input::Module(g) = parse_input::<Rational>(&text).unwrap() else { panic!() };
        assert_eq!(text, to_pretty(&module_to_json(&g)));
        let p = powers_module::<Rational>(&[2, 1], 4).unwrap();
        let text = to_pretty(&module_to_json(&p));
        let Input::Module(q) = parse_input::<Rational>(&text).unwrap() else { panic!() };
        assert_eq!(p, q);
    }
}
