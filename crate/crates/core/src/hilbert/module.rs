use crate::error::{Error, Result};
use crate::graded::GradedFree;
use crate::linalg::{SparseMatrix, SparseVec, Subspace};
use crate::poly::{h2_norm_sq, words_of_length, Word};
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Commutative,
    Noncommutative,
}

/// One truncation piece: the degree-`n` spectral subspace of a graded module,
/// or the whole truncated space of an ungraded one.
#[derive(Clone, PartialEq, Eq)]
pub struct Component<F> {
    pub degree: i64,
    pub labels: Vec<String>,
    /// Total degree of each basis vector; all equal to `degree` when graded.
    pub basis_degrees: Vec<i64>,
    pub gram: SparseMatrix<F>,
    /// `T_k` from the previous component into this one (graded), or from
    /// this component to itself (ungraded). Empty for the lowest graded
    /// component.
    pub incoming: Vec<SparseMatrix<F>>,
    /// Ungraded only: per operator, the columns whose image leaves the
    /// truncation. Those columns are stored as zero.
    pub escaping: Vec<Vec<bool>>,
}

field_debug!(Component { degree, labels, basis_degrees, gram, incoming, escaping });

impl<F: Field> Component<F> {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
}

/// How a module sits inside a free module `H² ⊗ C`: the layout of the free
/// module and, per component, a matrix whose columns are the module's basis
/// vectors in the free module's coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct Embedding<F> {
    pub layout: GradedFree,
    pub maps: Vec<SparseMatrix<F>>,
}

field_debug!(Embedding { layout, maps });

/// Degree-truncated Hilbert module with exact Gram matrices.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedHilbertModule<F> {
    nvars: usize,
    flavor: Flavor,
    graded: bool,
    top: i64,
    components: Vec<Component<F>>,
    embedding: Option<Embedding<F>>,
}

field_debug!(TruncatedHilbertModule { nvars, flavor, graded, top, components, embedding });

impl<F: Field> TruncatedHilbertModule<F> {
    /// Assembles a module and checks the structural invariants: matching
    /// shapes, symmetric positive definite Gram matrices, and commuting
    /// operators for the commutative flavor.
    pub fn from_parts(
        nvars: usize,
        flavor: Flavor,
        graded: bool,
        top: i64,
        components: Vec<Component<F>>,
    ) -> Result<Self> {
        let h = TruncatedHilbertModule { nvars, flavor, graded, top, components, embedding: None };
        h.check_structure()?;
        Ok(h)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    /// Truncation degree `N`.
    pub fn top(&self) -> i64 {
        self.top
    }

    pub fn components(&self) -> &[Component<F>] {
        &self.components
    }

    pub fn embedding(&self) -> Option<&Embedding<F>> {
        self.embedding.as_ref()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.components.first().map(|c| c.degree)
    }

    /// Component of degree `n` (graded modules).
    pub fn component(&self, n: i64) -> Option<&Component<F>> {
        let lo = self.min_degree()?;
        if n < lo {
            return None;
        }
        self.components.get((n - lo) as usize)
    }

    pub fn dim(&self, n: i64) -> usize {
        self.component(n).map_or(0, |c| c.dim())
    }

    pub fn dims(&self) -> Vec<(i64, usize)> {
        self.components.iter().map(|c| (c.degree, c.dim())).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.components.iter().map(|c| c.dim()).sum()
    }

    /// `T_k` from degree `n` to `n + 1` (graded modules).
    pub fn op(&self, k: usize, n: i64) -> Option<&SparseMatrix<F>> {
        self.component(n + 1).and_then(|c| c.incoming.get(k))
    }

    /// Index of the component feeding component `c`.
    pub(crate) fn previous(&self, c: usize) -> Option<usize> {
        if self.graded {
            c.checked_sub(1)
        } else {
            Some(c)
        }
    }

    pub fn check_structure(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Certificate(msg));
        if self.graded {
            for w in self.components.windows(2) {
                if w[1].degree != w[0].degree + 1 {
                    return bad("graded components must have consecutive degrees".into());
                }
            }
            if self.components.last().is_some_and(|c| c.degree != self.top) {
                return bad("last component must sit at the truncation degree".into());
            }
        } else if self.components.len() != 1 {
            return bad("ungraded modules have exactly one component".into());
        }
        for (c, comp) in self.components.iter().enumerate() {
            let n = comp.dim();
            if comp.basis_degrees.len() != n || comp.gram.nrows() != n || comp.gram.ncols() != n {
                return bad(format!("component {} has inconsistent sizes", comp.degree));
            }
            if !comp.gram.is_symmetric() {
                return bad(format!("Gram matrix at degree {} is not symmetric", comp.degree));
            }
            if !comp.gram.psd_certificate().is_positive_definite() {
                return bad(format!("Gram matrix at degree {} is not positive definite", comp.degree));
            }
            match self.previous(c) {
                None => {
                    if !comp.incoming.is_empty() {
                        return bad("lowest component has no incoming operators".into());
                    }
                }
                Some(p) => {
                    let m = self.components[p].dim();
                    if comp.incoming.len() != self.nvars
                        || comp.incoming.iter().any(|t| t.nrows() != n || t.ncols() != m)
                    {
                        return bad(format!("operators into degree {} have the wrong shape", comp.degree));
                    }
                }
            }
        }
        if self.flavor == Flavor::Commutative && !self.operators_commute() {
            return Err(Error::NotCommutative);
        }
        Ok(())
    }

    /// `T_j T_k = T_k T_j` wherever both compositions are represented.
    pub fn operators_commute(&self) -> bool {
        for c in 0..self.components.len() {
            let Some(p) = self.previous(c) else { continue };
            let (into_c, into_p) = (&self.components[c].incoming, &self.components[p].incoming);
            if into_p.is_empty() {
                continue;
            }
            for j in 0..self.nvars {
                for k in j + 1..self.nvars {
                    let mut a = into_c[j].mul(&into_p[k]);
                    let mut b = into_c[k].mul(&into_p[j]);
                    if !self.graded {
                        // compositions through an escaping column are undefined
                        let comp = &self.components[c];
                        let dead: Vec<bool> = (0..comp.dim())
                            .map(|x| {
                                comp.escaping[k][x]
                                    || comp.escaping[j][x]
                                    || into_p[k].col(x).indices().any(|y| comp.escaping[j][y])
                                    || into_p[j].col(x).indices().any(|y| comp.escaping[k][y])
                            })
                            .collect();
                        a = mask_columns(&a, &dead);
                        b = mask_columns(&b, &dead);
                    }
                    if a != b {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Same module with every operator multiplied by `c`.
    pub fn scale_operators(&self, c: &F) -> Self {
        let mut out = self.clone();
        for comp in &mut out.components {
            for t in &mut comp.incoming {
                *t = t.scale(c);
            }
        }
        out
    }

    /// A vector of component `c` written as a combination of basis labels.
    pub fn describe(&self, c: usize, v: &SparseVec<F>) -> String {
        let labels = &self.components[c].labels;
        let terms: Vec<String> = v
            .iter()
            .map(|(i, x)| if *x == F::one() { labels[*i].clone() } else { format!("({x})*{}", labels[*i]) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Coordinates of the degree-`n` basis as vectors of the ambient free
    /// module, when the module is embedded in one.
    pub fn ambient_map(&self, c: usize) -> Option<&SparseMatrix<F>> {
        self.embedding.as_ref().map(|e| &e.maps[c])
    }
}

pub(crate) fn mask_columns<F: Field>(m: &SparseMatrix<F>, dead: &[bool]) -> SparseMatrix<F> {
    let cols = m.columns().iter().zip(dead).map(|(c, d)| if *d { SparseVec::new() } else { c.clone() }).collect();
    SparseMatrix::from_columns(m.nrows(), cols)
}

fn label(gen: usize, ngens: usize, mono: &str) -> String {
    if ngens == 1 {
        mono.to_string()
    } else if mono == "1" {
        format!("e{}", gen + 1)
    } else {
        format!("{mono}*e{}", gen + 1)
    }
}

/// Free module `H² ⊗ C` or `F² ⊗ C` truncated at degree `top`, where `C` has
/// a basis of the given degrees and Gram matrix `coeff_gram` (entries between
/// basis vectors of different degrees are ignored).
pub fn build_free_with_gram<F: Field>(
    nvars: usize,
    top: i64,
    coeff_degrees: &[i64],
    coeff_gram: &SparseMatrix<F>,
    flavor: Flavor,
) -> Result<TruncatedHilbertModule<F>> {
    if nvars == 0 {
        return Err(Error::InvalidParameter("at least one variable is required".into()));
    }
    if let Some(&m) = coeff_degrees.iter().max() {
        if top < m {
            return Err(Error::TruncationTooSmall { needed: m, top });
        }
    }
    let layout = GradedFree::new(nvars, coeff_degrees.to_vec());
    let g = coeff_degrees.len();
    let Some(lo) = layout.min_degree() else {
        return Ok(TruncatedHilbertModule {
            nvars,
            flavor,
            graded: true,
            top,
            components: Vec::new(),
            embedding: Some(Embedding { layout, maps: Vec::new() }),
        });
    };
    let mut components = Vec::new();
    let mut maps = Vec::new();
    match flavor {
        Flavor::Commutative => {
            let mut prev: Option<crate::graded::BasisIndex> = None;
            for n in lo..=top {
                let idx = layout.index(n);
                let dim = idx.len();
                let labels = idx.elements().iter().map(|(j, m)| label(*j, g, &m.to_string())).collect();
                let mut gram_cols = Vec::with_capacity(dim);
                for (j, m) in idx.elements() {
                    let norm: F = h2_norm_sq(m);
                    let pairs = (0..g).filter(|i| coeff_degrees[*i] == coeff_degrees[*j]).filter_map(|i| {
                        let c = coeff_gram.get(i, *j);
                        idx.position(i, m).map(|p| (p, c * norm.clone()))
                    });
                    gram_cols.push(SparseVec::from_pairs(pairs));
                }
                let incoming = match &prev {
                    None => Vec::new(),
                    Some(pidx) => (0..nvars)
                        .map(|k| {
                            let cols = pidx
                                .elements()
                                .iter()
                                .map(|(j, m)| SparseVec::unit(idx.position(*j, &m.raise(k)).unwrap()))
                                .collect();
                            SparseMatrix::from_columns(dim, cols)
                        })
                        .collect(),
                };
                components.push(Component {
                    degree: n,
                    labels,
                    basis_degrees: vec![n; dim],
                    gram: SparseMatrix::from_columns(dim, gram_cols),
                    incoming,
                    escaping: Vec::new(),
                });
                maps.push(SparseMatrix::identity(dim));
                prev = Some(idx);
            }
        }
        Flavor::Noncommutative => {
            let word_basis = |n: i64| -> Vec<(usize, Word)> {
                let mut out = Vec::new();
                for (j, a) in coeff_degrees.iter().enumerate() {
                    if n >= *a {
                        out.extend(words_of_length(nvars, (n - a) as u32).into_iter().map(|w| (j, w)));
                    }
                }
                out
            };
            let mut prev: Option<Vec<(usize, Word)>> = None;
            for n in lo..=top {
                let basis = word_basis(n);
                let pos: std::collections::HashMap<(usize, Word), usize> =
                    basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
                let dim = basis.len();
                let labels = basis.iter().map(|(j, w)| label(*j, g, &w.to_string())).collect();
                let gram_cols = basis
                    .iter()
                    .map(|(j, w)| {
                        SparseVec::from_pairs(
                            (0..g)
                                .filter(|i| coeff_degrees[*i] == coeff_degrees[*j])
                                .filter_map(|i| pos.get(&(i, w.clone())).map(|p| (*p, coeff_gram.get(i, *j)))),
                        )
                    })
                    .collect();
                let incoming = match &prev {
                    None => Vec::new(),
                    Some(pb) => (0..nvars)
                        .map(|k| {
                            let cols = pb.iter().map(|(j, w)| SparseVec::unit(pos[&(*j, w.prepend(k))])).collect();
                            SparseMatrix::from_columns(dim, cols)
                        })
                        .collect(),
                };
                components.push(Component {
                    degree: n,
                    labels,
                    basis_degrees: vec![n; dim],
                    gram: SparseMatrix::from_columns(dim, gram_cols),
                    incoming,
                    escaping: Vec::new(),
                });
                maps.push(SparseMatrix::identity(dim));
                prev = Some(basis);
            }
        }
    }
    let h = TruncatedHilbertModule {
        nvars,
        flavor,
        graded: true,
        top,
        components,
        embedding: Some(Embedding { layout, maps }),
    };
    h.check_structure()?;
    Ok(h)
}

/// Free module with an orthonormal coefficient basis.
pub fn build_free<F: Field>(
    nvars: usize,
    top: i64,
    coeff_degrees: &[i64],
    flavor: Flavor,
) -> Result<TruncatedHilbertModule<F>> {
    build_free_with_gram(nvars, top, coeff_degrees, &SparseMatrix::identity(coeff_degrees.len()), flavor)
}

/// Submodule given by an invariant subspace of each component of `ambient`.
/// Operator matrices are read off at the subspace pivots; the result remembers
/// its embedding into the ambient free module when `ambient` is free.
pub fn submodule<F: Field>(
    ambient: &TruncatedHilbertModule<F>,
    spaces: &[Subspace<F>],
) -> Result<TruncatedHilbertModule<F>> {
    assert_eq!(spaces.len(), ambient.components.len());
    let mut components = Vec::new();
    for (c, (comp, s)) in ambient.components.iter().zip(spaces).enumerate() {
        let b = s.basis_matrix();
        let gram = b.transpose().mul(&comp.gram.mul(&b));
        let incoming = match ambient.previous(c) {
            None => Vec::new(),
            Some(_) if comp.incoming.is_empty() => Vec::new(),
            Some(p) => {
                let prev = &spaces[p];
                let mut ops = Vec::new();
                for t in &comp.incoming {
                    let mut cols = Vec::with_capacity(prev.dim());
                    for v in prev.basis() {
                        let y = t.mul_vec(v);
                        let coords = s.coords(&y).ok_or(Error::NotInvariant { degree: comp.degree })?;
                        cols.push(SparseVec::from_dense(&coords));
                    }
                    ops.push(SparseMatrix::from_columns(s.dim(), cols));
                }
                ops
            }
        };
        let labels = s.pivots().iter().map(|p| format!("<{}>", comp.labels[*p])).collect();
        let basis_degrees =
            s.basis().iter().map(|v| v.indices().map(|i| comp.basis_degrees[i]).max().unwrap_or(comp.degree)).collect();
        let escaping = if ambient.graded {
            Vec::new()
        } else {
            comp.escaping.iter().map(|esc| s.basis().iter().map(|v| v.indices().any(|i| esc[i])).collect()).collect()
        };
        components.push(Component { degree: comp.degree, labels, basis_degrees, gram, incoming, escaping });
    }
    let embedding = ambient.embedding.as_ref().map(|e| Embedding {
        layout: e.layout.clone(),
        maps: e.maps.iter().zip(spaces).map(|(m, s)| m.mul(&s.basis_matrix())).collect(),
    });
    // drop leading zero components of a graded module
    let mut h = TruncatedHilbertModule {
        nvars: ambient.nvars,
        flavor: ambient.flavor,
        graded: ambient.graded,
        top: ambient.top,
        components,
        embedding,
    };
    if h.graded {
        let skip = h.components.iter().take_while(|c| c.dim() == 0).count();
        if skip > 0 {
            h.components.drain(..skip);
            if let Some(e) = &mut h.embedding {
                e.maps.drain(..skip);
            }
            if let Some(first) = h.components.first_mut() {
                first.incoming.clear();
            }
        }
    }
    Ok(h)
}
