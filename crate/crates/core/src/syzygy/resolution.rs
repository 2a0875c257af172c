use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::graded::{GradedFree, GradedMatrix, GradedPresentation};
use crate::poly::CommPoly;
use crate::scalar::Field;
use crate::syzygy::groebner::run_engine;

/// A chain `F_1 ← F_2 ← … ← F_n` of free modules; `differentials[k]` maps
/// `modules[k + 1]` into `modules[k]`. For a resolution of `M`, `F_1` is the
/// free module on the generators of `M`.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeResolution<F> {
    nvars: usize,
    modules: Vec<GradedFree>,
    differentials: Vec<GradedMatrix<F>>,
}

field_debug!(FreeResolution { nvars, modules, differentials });

impl<F: Field> FreeResolution<F> {
    pub fn new(nvars: usize, modules: Vec<GradedFree>, differentials: Vec<GradedMatrix<F>>) -> Self {
        assert_eq!(differentials.len() + 1, modules.len().max(1), "one differential between consecutive modules");
        FreeResolution { nvars, modules, differentials }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn modules(&self) -> &[GradedFree] {
        &self.modules
    }

    pub fn differentials(&self) -> &[GradedMatrix<F>] {
        &self.differentials
    }

    /// Number of free modules in the chain.
    pub fn length(&self) -> usize {
        self.modules.len()
    }

    /// Ranks of `F_1, F_2, …`, padded with zeros to at least `nvars` entries.
    pub fn betti(&self) -> Vec<usize> {
        let mut b: Vec<usize> = self.modules.iter().map(|m| m.rank()).collect();
        while b.len() < self.nvars {
            b.push(0);
        }
        b
    }

    /// `Σ_k (-1)^(k+1) β_k`.
    pub fn euler(&self) -> i64 {
        self.modules
            .iter()
            .enumerate()
            .map(|(k, m)| if k % 2 == 0 { m.rank() as i64 } else { -(m.rank() as i64) })
            .sum()
    }

    /// For each `F_k`, internal degree → number of generators.
    pub fn graded_betti(&self) -> Vec<BTreeMap<i64, usize>> {
        self.modules
            .iter()
            .map(|m| {
                let mut t = BTreeMap::new();
                for d in m.gen_degrees() {
                    *t.entry(*d).or_insert(0) += 1;
                }
                t
            })
            .collect()
    }

    pub fn max_generator_degree(&self) -> Option<i64> {
        self.modules.iter().filter_map(|m| m.max_degree()).max()
    }

    pub fn min_generator_degree(&self) -> Option<i64> {
        self.modules.iter().filter_map(|m| m.min_degree()).min()
    }

    /// Default degree bound for the certificates: largest generator degree
    /// plus `d + 2`.
    pub fn default_check_degree(&self) -> i64 {
        self.max_generator_degree().unwrap_or(0) + self.nvars as i64 + 2
    }

    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().all(|a| !a.has_unit_entries())
    }

    pub fn is_complex(&self) -> bool {
        self.differentials.windows(2).all(|w| w[0].compose(&w[1]).is_zero())
    }
}

/// Removes source generator `j` and target generator `i` of `a`, where
/// `a[i][j]` is a nonzero constant.
fn cancel_entry<F: Field>(a: &GradedMatrix<F>, i: usize, j: usize) -> GradedMatrix<F> {
    let unit = a.entry(i, j).constant_term();
    let rows: Vec<usize> = (0..a.nrows()).filter(|r| *r != i).collect();
    let cols: Vec<usize> = (0..a.ncols()).filter(|l| *l != j).collect();
    let entries = rows
        .iter()
        .map(|r| {
            cols.iter()
                .map(|l| {
                    let corr = a.entry(*r, j).mul(a.entry(i, *l)).expect("same ring").scale(&unit.recip());
                    a.entry(*r, *l).sub(&corr).expect("same ring")
                })
                .collect::<Vec<CommPoly<F>>>()
        })
        .collect();
    GradedMatrix::new(a.source().restrict(&cols), a.target().restrict(&rows), entries)
}

/// Cancels unit entries until every differential has zero constant terms.
/// Graded ranks only go down and the homology is unchanged.
pub fn minimalize<F: Field>(chain: &FreeResolution<F>) -> FreeResolution<F> {
    let mut modules = chain.modules.clone();
    let mut diffs = chain.differentials.clone();
    while let Some((k, (i, j))) = diffs.iter().enumerate().find_map(|(k, a)| a.find_unit().map(|u| (k, u))) {
        let a = cancel_entry(&diffs[k], i, j);
        if k + 1 < diffs.len() {
            let keep: Vec<usize> = (0..diffs[k + 1].nrows()).filter(|r| *r != j).collect();
            diffs[k + 1] = diffs[k + 1].select_rows(&keep);
        }
        if k > 0 {
            let keep: Vec<usize> = (0..diffs[k - 1].ncols()).filter(|l| *l != i).collect();
            diffs[k - 1] = diffs[k - 1].select_columns(&keep);
        }
        modules[k] = a.target().clone();
        modules[k + 1] = a.source().clone();
        diffs[k] = a;
    }
    // drop trailing zero modules
    while modules.len() > 1 && modules.last().is_some_and(|m| m.rank() == 0) {
        modules.pop();
        diffs.pop();
    }
    if modules.len() == 1 && modules[0].rank() == 0 {
        modules.clear();
    }
    FreeResolution { nvars: chain.nvars, modules, differentials: diffs }
}

/// Minimal graded free resolution of a presented module.
pub fn minimal_free_resolution<F: Field>(p: &GradedPresentation<F>) -> Result<FreeResolution<F>> {
    let v = p.validate();
    if !v.is_empty() {
        return Err(Error::InvalidPresentation(v));
    }
    let nvars = p.nvars();
    let mut rel = p.relations().clone();
    // prune to minimal relations and cancel redundant generators until stable
    let (first, mut syz) = loop {
        let out = run_engine(&rel);
        let a = rel.select_columns(&out.min_gens);
        match a.find_unit() {
            Some((i, j)) => rel = cancel_entry(&a, i, j),
            None => {
                let target = a.source().clone();
                let cols: Vec<_> = out.syzygies.iter().map(|(v, _)| v.clone()).collect();
                let degs = out.syzygies.iter().map(|(_, d)| *d).collect();
                break (a, GradedMatrix::from_columns(target, degs, &cols));
            }
        }
    };
    if first.nrows() == 0 {
        return Ok(FreeResolution { nvars, modules: Vec::new(), differentials: Vec::new() });
    }
    let mut modules = vec![first.target().clone()];
    let mut diffs = Vec::new();
    if first.ncols() > 0 {
        modules.push(first.source().clone());
        diffs.push(first);
    }
    while syz.ncols() > 0 {
        let out = run_engine(&syz);
        let a = syz.select_columns(&out.min_gens);
        debug_assert!(!a.has_unit_entries());
        let target = a.source().clone();
        let cols: Vec<_> = out.syzygies.iter().map(|(v, _)| v.clone()).collect();
        let degs = out.syzygies.iter().map(|(_, d)| *d).collect();
        modules.push(a.source().clone());
        diffs.push(a);
        syz = GradedMatrix::from_columns(target, degs, &cols);
    }
    Ok(FreeResolution { nvars, modules, differentials: diffs })
}

/// Outcome of the exact checks run on a resolution.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Certificate {
    pub check_degree: i64,
    pub complex: bool,
    pub minimal: bool,
    pub length_bound: bool,
    /// `(module index, degree)` pairs where exactness failed.
    pub exactness_failures: Vec<(usize, i64)>,
    /// Degrees where the alternating sum differs from the Hilbert function.
    pub telescope_failures: Vec<i64>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.complex
            && self.minimal
            && self.length_bound
            && self.exactness_failures.is_empty()
            && self.telescope_failures.is_empty()
    }

    pub fn describe_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.complex {
            out.push("consecutive differentials do not compose to zero".to_string());
        }
        if !self.minimal {
            out.push("a differential has a unit entry".to_string());
        }
        if !self.length_bound {
            out.push("resolution is longer than the number of variables allows".to_string());
        }
        for (k, n) in &self.exactness_failures {
            out.push(format!("not exact at F_{} in degree {n}", k + 1));
        }
        for n in &self.telescope_failures {
            out.push(format!("alternating dimension sum differs from the Hilbert function in degree {n}"));
        }
        out
    }
}

/// Checks the complex property, minimality, the length bound, exactness and
/// the Hilbert-series telescope for all degrees up to `check_degree`.
pub fn certify<F: Field>(res: &FreeResolution<F>, p: &GradedPresentation<F>, check_degree: i64) -> Certificate {
    let lo = res.min_generator_degree().unwrap_or(0).min(p.generators().min_degree().unwrap_or(0));
    let mut ranks: HashMap<(usize, i64), usize> = HashMap::new();
    let mut rank = |k: usize, n: i64| -> usize {
        if k >= res.differentials.len() {
            return 0;
        }
        *ranks.entry((k, n)).or_insert_with(|| res.differentials[k].degree_matrix(n).rank())
    };
    let mut exactness_failures = Vec::new();
    for k in 1..res.modules.len() {
        for n in lo..=check_degree {
            let dim = res.modules[k].component_dim(n);
            let kernel = dim - rank(k - 1, n);
            if kernel != rank(k, n) {
                exactness_failures.push((k, n));
            }
        }
    }
    let mut telescope_failures = Vec::new();
    for n in lo..=check_degree {
        let alt: i64 = res
            .modules
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let d = m.component_dim(n) as i64;
                if k % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .sum();
        if alt != p.hilbert_function(n) as i64 {
            telescope_failures.push(n);
        }
    }
    Certificate {
        check_degree,
        complex: res.is_complex(),
        minimal: res.is_minimal(),
        length_bound: res.length() <= res.nvars + 1,
        exactness_failures,
        telescope_failures,
    }
}
