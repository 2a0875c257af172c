//! Test-only oracle: graded Betti numbers by brute-force linear algebra in
//! each degree, with its own polynomials and dense rational elimination.
//! Nothing here calls the library's resolution or linear algebra code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use hilres::graded::GradedPresentation;
use hilres::Rational;
use num_traits::{One, Zero};

pub type Exps = Vec<u32>;
pub type Poly = BTreeMap<Exps, Rational>;
/// One polynomial per target generator.
pub type Vector = Vec<Poly>;

/// Presentation data in oracle form: generator degrees and relation columns.
#[derive(Clone, Debug)]
pub struct OraclePresentation {
    pub nvars: usize,
    pub gen_degrees: Vec<i64>,
    pub relations: Vec<Vector>,
}

impl OraclePresentation {
    pub fn from_library(p: &GradedPresentation<Rational>) -> Self {
        let relations = p
            .relations()
            .columns()
            .iter()
            .map(|col| {
                col.iter()
                    .map(|poly| {
                        poly.terms()
                            .map(|(m, c)| (m.exponents().iter().map(|e| *e as u32).collect(), c.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        OraclePresentation { nvars: p.nvars(), gen_degrees: p.generators().gen_degrees().to_vec(), relations }
    }
}

pub fn monomials(nvars: usize, n: i64) -> Vec<Exps> {
    if n < 0 {
        return Vec::new();
    }
    if nvars == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=n as u32).rev() {
        for mut rest in monomials(nvars - 1, n - first as i64) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Basis of a free module in degree `n`: (generator, monomial).
fn basis(nvars: usize, degs: &[i64], n: i64) -> Vec<(usize, Exps)> {
    degs.iter().enumerate().flat_map(|(i, d)| monomials(nvars, n - d).into_iter().map(move |m| (i, m))).collect()
}

fn coords(nvars: usize, degs: &[i64], n: i64, v: &Vector) -> Vec<Rational> {
    let b = basis(nvars, degs, n);
    let mut out = vec![Rational::zero(); b.len()];
    for (k, (i, m)) in b.iter().enumerate() {
        if let Some(c) = v[*i].get(m) {
            out[k] = c.clone();
        }
    }
    // every term must land on a basis element
    let placed = out.iter().filter(|c| !c.is_zero()).count();
    let total: usize = v.iter().map(|p| p.values().filter(|c| !c.is_zero()).count()).sum();
    assert_eq!(placed, total, "vector is not homogeneous of degree {n}");
    out
}

fn vector_of(nvars: usize, degs: &[i64], n: i64, x: &[Rational]) -> Vector {
    let mut v: Vector = vec![Poly::new(); degs.len()];
    for ((i, m), c) in basis(nvars, degs, n).into_iter().zip(x) {
        if !c.is_zero() {
            v[i].insert(m, c.clone());
        }
    }
    v
}

fn times_var(v: &Vector, k: usize) -> Vector {
    v.iter()
        .map(|p| {
            p.iter()
                .map(|(m, c)| {
                    let mut m = m.clone();
                    m[k] += 1;
                    (m, c.clone())
                })
                .collect()
        })
        .collect()
}

/// `z^m · v`.
fn shift(v: &Vector, m: &[u32]) -> Vector {
    v.iter()
        .map(|p| p.iter().map(|(pm, c)| (pm.iter().zip(m).map(|(a, b)| a + b).collect(), c.clone())).collect())
        .collect()
}

/// Row echelon form in place; returns pivot columns.
fn echelon(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|i| !rows[*i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = Rational::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of the null space of the matrix with the given columns.
fn nullspace(ncols: usize, columns: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let nrows = columns.first().map_or(0, |c| c.len());
    let mut rows: Vec<Vec<Rational>> = (0..nrows).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    let pivots = echelon(&mut rows);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![Rational::zero(); ncols];
        x[free] = Rational::one();
        for (r, p) in pivots.iter().enumerate() {
            x[*p] = -rows[r][free].clone();
        }
        out.push(x);
    }
    out
}

/// Reduced row echelon basis that grows one vector at a time.
struct Echelon {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    /// Adds `v` if it is independent of the rows so far.
    fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = Rational::one() / v[p].clone();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Vectors of `candidates` extending `base` to a basis of their joint span.
fn complement(base: &[Vec<Rational>], candidates: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut e = Echelon::new();
    for b in base {
        e.insert(b.clone());
    }
    candidates.iter().filter(|c| e.insert((*c).clone())).cloned().collect()
}

/// Graded Betti numbers `[{degree: count}]` of `coker(relations)` computed
/// through internal degree `max_degree`. The first entry counts minimal
/// generators of the module itself.
pub fn graded_betti(p: &OraclePresentation, max_degree: i64) -> Vec<BTreeMap<i64, usize>> {
    let d = p.nvars;
    let f0 = &p.gen_degrees;
    let rel_degs: Vec<i64> = p
        .relations
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .flat_map(|(i, poly)| poly.keys().map(move |m| f0[i] + m.iter().sum::<u32>() as i64))
                .next()
                .unwrap_or(i64::MIN)
        })
        .collect();
    let relation_space = |n: i64| -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for (v, rd) in p.relations.iter().zip(&rel_degs) {
            if *rd == i64::MIN || *rd > n {
                continue;
            }
            for m in monomials(d, n - rd) {
                out.push(coords(d, f0, n, &shift(v, &m)));
            }
        }
        out
    };

    // Minimal generators of the module, as vectors of the given free module.
    let mut gens_deg = Vec::new();
    let mut gens: Vec<Vector> = Vec::new();
    for n in f0.iter().copied().min().unwrap_or(0)..=max_degree {
        let mut base = relation_space(n);
        for (g, gd) in gens.iter().zip(&gens_deg) {
            for m in monomials(d, n - gd) {
                base.push(coords(d, f0, n, &shift(g, &m)));
            }
        }
        let dim = basis(d, f0, n).len();
        let units: Vec<Vec<Rational>> = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        for x in complement(&base, &units) {
            gens.push(vector_of(d, f0, n, &x));
            gens_deg.push(n);
        }
    }
    let mut betti = vec![count(&gens_deg)];
    if gens.is_empty() {
        return betti;
    }

    // First syzygies: x in F_1 with image in the relation space.
    let mut src = gens_deg.clone();
    let mut images = gens;
    let mut target: Vec<i64> = f0.clone();
    let mut first = true;
    loop {
        let mut new_deg = Vec::new();
        let mut new_images: Vec<Vector> = Vec::new();
        let mut prev_kernel: Vec<Vec<Rational>> = Vec::new();
        for n in src.iter().copied().min().unwrap()..=max_degree {
            let dim = basis(d, &src, n).len();
            let cols: Vec<Vec<Rational>> =
                basis(d, &src, n).into_iter().map(|(g, m)| coords(d, &target, n, &shift(&images[g], &m))).collect();
            let kernel = if first {
                let rel = relation_space(n);
                let mut all = cols.clone();
                all.extend(rel.iter().map(|r| r.iter().map(|c| -c.clone()).collect()));
                nullspace(dim + rel.len(), &all).into_iter().map(|x| x[..dim].to_vec()).collect::<Vec<_>>()
            } else {
                nullspace(dim, &cols)
            };
            let mut shifted = Vec::new();
            for x in &prev_kernel {
                let v = vector_of(d, &src, n - 1, x);
                for k in 0..d {
                    shifted.push(coords(d, &src, n, &times_var(&v, k)));
                }
            }
            for x in complement(&shifted, &kernel) {
                new_images.push(vector_of(d, &src, n, &x));
                new_deg.push(n);
            }
            prev_kernel = kernel;
        }
        if new_deg.is_empty() {
            return betti;
        }
        betti.push(count(&new_deg));
        target = src;
        src = new_deg;
        images = new_images;
        first = false;
    }
}

fn count(degs: &[i64]) -> BTreeMap<i64, usize> {
    let mut m = BTreeMap::new();
    for d in degs {
        *m.entry(*d).or_insert(0) += 1;
    }
    m
}

/// `Q[z1..zd]/(monomials)` as a presentation with one generator in degree 0.
pub fn monomial_quotient(nvars: usize, gens: &[Exps]) -> GradedPresentation<Rational> {
    let cols = gens.iter().map(|e| vec![hilres::QPoly::parse(&monomial_string(e), nvars).unwrap()]).collect();
    GradedPresentation::from_columns(nvars, vec![0], cols).unwrap()
}

pub fn monomial_string(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, x)| **x > 0)
        .map(|(k, x)| if *x == 1 { format!("z{}", k + 1) } else { format!("z{}^{}", k + 1, x) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

pub fn maximal_ideal_quotient(nvars: usize) -> GradedPresentation<Rational> {
    let gens: Vec<Exps> = (0..nvars)
        .map(|k| {
            let mut e = vec![0; nvars];
            e[k] = 1;
            e
        })
        .collect();
    monomial_quotient(nvars, &gens)
}

/// Degree of the lcm of all generators; no syzygy of the quotient lives above it.
pub fn lcm_degree(gens: &[Exps]) -> i64 {
    let d = gens.first().map_or(0, |g| g.len());
    (0..d).map(|k| gens.iter().map(|g| g[k]).max().unwrap_or(0) as i64).sum()
}

/// Graded Betti data with trailing empty modules removed.
pub fn trimmed(mut b: Vec<BTreeMap<i64, usize>>) -> Vec<BTreeMap<i64, usize>> {
    while b.last().is_some_and(|m| m.values().all(|c| *c == 0)) {
        b.pop();
    }
    for m in &mut b {
        m.retain(|_, c| *c > 0);
    }
    b
}

/// `Σ c·z^m` in the input grammar.
pub fn poly_string(terms: &[(Rational, Exps)]) -> String {
    let mut out = String::new();
    for (c, m) in terms.iter().filter(|(c, _)| !c.is_zero()) {
        let neg = *c < Rational::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
            (true, false) => {}
        }
        let mono = monomial_string(m);
        if mono == "1" {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
