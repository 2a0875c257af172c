//! Homogeneous Buchberger for submodules of graded free modules.
//!
//! Terms are ordered position over term: a smaller generator index wins,
//! ties are broken by grevlex. Pairs are processed degree by degree, lowest
//! degree first and then by smallest lcm, so output is deterministic. Every
//! basis element carries its expression in the minimal generators found so
//! far; an S-pair that reduces to zero therefore hands back a syzygy among
//! those generators directly.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::graded::{FreeVec, GradedFree, GradedMatrix};
use crate::poly::{CommPoly, Monomial, MonomialKind};
use crate::scalar::Field;

/// A term `m · e_pos`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub pos: usize,
    pub mono: Monomial,
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        other.pos.cmp(&self.pos).then_with(|| self.mono.cmp(&other.mono))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse free-module vector keyed by [`Term`]; the leading term is last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ModVec<F> {
    terms: BTreeMap<Term, F>,
}

impl<F: Field> ModVec<F> {
    fn zero() -> Self {
        ModVec { terms: BTreeMap::new() }
    }

    pub(crate) fn from_free(v: &FreeVec<F>) -> Self {
        let mut terms = BTreeMap::new();
        for (pos, p) in v.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.insert(Term { pos, mono: m.clone() }, c.clone());
            }
        }
        ModVec { terms }
    }

    pub(crate) fn to_free(&self, nvars: usize, rank: usize) -> FreeVec<F> {
        let mut out = vec![CommPoly::zero(nvars); rank];
        for (t, c) in &self.terms {
            out[t.pos].add_term(t.mono.clone(), c.clone());
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> Option<(&Term, &F)> {
        self.terms.iter().next_back()
    }

    /// `self += c · m · other`.
    fn add_mul(&mut self, other: &Self, m: &Monomial, c: &F) {
        for (t, a) in &other.terms {
            let key = Term { pos: t.pos, mono: t.mono.mul(m) };
            let v = a.clone() * c.clone();
            match self.terms.entry(key) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(v);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get().clone() + v;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
    }

    fn scale(&mut self, c: &F) {
        for v in self.terms.values_mut() {
            *v = v.clone() * c.clone();
        }
    }
}

/// Expression of an element in the minimal generators: generator → coefficient.
type Repr<F> = BTreeMap<usize, CommPoly<F>>;

fn repr_add_mul<F: Field>(acc: &mut Repr<F>, other: &Repr<F>, m: &Monomial, c: &F) {
    for (k, p) in other {
        let term = p.mul_term(m, c);
        let e = acc.entry(*k).or_insert_with(|| CommPoly::zero(m.nvars()));
        *e = e.add(&term).expect("same ring");
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

#[derive(Clone)]
struct Element<F> {
    vec: ModVec<F>,
    lead: Term,
    lc: F,
    repr: Repr<F>,
}

/// What happened to one input column.
#[derive(Clone, PartialEq, Eq)]
pub enum InputFate<F> {
    /// Became minimal generator number `k`.
    Minimal(usize),
    /// Lies in the span of earlier ones; coefficients in the minimal generators.
    Redundant(FreeVec<F>),
}

/// Result of running the engine on the columns of a matrix.
#[derive(Clone)]
pub struct EngineOutput<F> {
    /// Indices of the input columns chosen as minimal generators.
    pub min_gens: Vec<usize>,
    pub fates: Vec<InputFate<F>>,
    /// Syzygies among the minimal generators, with their degrees.
    pub syzygies: Vec<(FreeVec<F>, i64)>,
    /// Gröbner basis of the column span (not interreduced).
    pub basis: Vec<FreeVec<F>>,
}

impl<F: Field> std::fmt::Debug for InputFate<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputFate::Minimal(k) => write!(f, "Minimal({k})"),
            InputFate::Redundant(v) => write!(f, "Redundant({v:?})"),
        }
    }
}

field_debug!(EngineOutput { min_gens, fates, syzygies, basis });

struct Engine<'a, F> {
    ambient: &'a GradedFree,
    elems: Vec<Element<F>>,
    by_pos: Vec<Vec<usize>>,
    pairs: BTreeSet<(i64, Term, usize, usize)>,
}

impl<'a, F: Field> Engine<'a, F> {
    fn term_degree(&self, t: &Term) -> i64 {
        self.ambient.degree(t.pos) + t.mono.degree() as i64
    }

    /// Full reduction with the representation carried along.
    fn reduce(&self, mut v: ModVec<F>, mut repr: Repr<F>) -> (ModVec<F>, Repr<F>) {
        let mut rem = ModVec::zero();
        while let Some((t, c)) = v.lead() {
            let (t, c) = (t.clone(), c.clone());
            let hit = self.by_pos[t.pos].iter().find(|k| self.elems[**k].lead.mono.divides(&t.mono));
            match hit {
                Some(&k) => {
                    let g = &self.elems[k];
                    let q = g.lead.mono.quotient_of(&t.mono).unwrap();
                    let f = -(c / g.lc.clone());
                    v.add_mul(&g.vec, &q, &f);
                    repr_add_mul(&mut repr, &g.repr, &q, &f);
                }
                None => {
                    v.terms.remove(&t);
                    rem.terms.insert(t, c);
                }
            }
        }
        (rem, repr)
    }

    fn insert(&mut self, vec: ModVec<F>, repr: Repr<F>) {
        let (lead, lc) = vec.lead().map(|(t, c)| (t.clone(), c.clone())).unwrap();
        let k = self.elems.len();
        for &i in &self.by_pos[lead.pos] {
            let l = self.elems[i].lead.mono.lcm(&lead.mono);
            let t = Term { pos: lead.pos, mono: l };
            self.pairs.insert((self.term_degree(&t), t, i, k));
        }
        self.by_pos[lead.pos].push(k);
        self.elems.push(Element { vec, lead, lc, repr });
    }

    fn s_vector(&self, i: usize, j: usize, lcm: &Monomial) -> (ModVec<F>, Repr<F>) {
        let (gi, gj) = (&self.elems[i], &self.elems[j]);
        let mi = gi.lead.mono.quotient_of(lcm).unwrap();
        let mj = gj.lead.mono.quotient_of(lcm).unwrap();
        let ci = gi.lc.recip();
        let cj = -gj.lc.recip();
        let mut v = ModVec::zero();
        v.add_mul(&gi.vec, &mi, &ci);
        v.add_mul(&gj.vec, &mj, &cj);
        let mut r = Repr::new();
        repr_add_mul(&mut r, &gi.repr, &mi, &ci);
        repr_add_mul(&mut r, &gj.repr, &mj, &cj);
        (v, r)
    }
}

fn repr_to_free<F: Field>(r: &Repr<F>, nvars: usize, rank: usize) -> FreeVec<F> {
    let mut out = vec![CommPoly::zero(nvars); rank];
    for (k, p) in r {
        out[*k] = p.clone();
    }
    out
}

/// Runs the engine on the columns of `m`, whose source degrees must be the
/// true degrees of the columns.
pub fn run_engine<F: Field>(m: &GradedMatrix<F>) -> EngineOutput<F> {
    let ambient = m.target();
    let nvars = ambient.nvars();
    let mut engine =
        Engine { ambient, elems: Vec::new(), by_pos: vec![Vec::new(); ambient.rank()], pairs: BTreeSet::new() };

    let mut order: Vec<usize> = (0..m.ncols()).collect();
    order.sort_by_key(|j| (m.source().degree(*j), *j));
    let mut next_input = 0;

    let mut min_gens = Vec::new();
    let mut fates: Vec<Option<InputFate<F>>> = vec![None; m.ncols()];
    let mut raw_syz: Vec<(Repr<F>, i64)> = Vec::new();
    let mut redundant: Vec<(usize, Repr<F>)> = Vec::new();

    loop {
        let pair_deg = engine.pairs.first().map(|p| p.0);
        let input_deg = order.get(next_input).map(|j| m.source().degree(*j));
        let delta = match (pair_deg, input_deg) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        while engine.pairs.first().is_some_and(|p| p.0 == delta) {
            let (_, t, i, j) = engine.pairs.pop_first().unwrap();
            let (v, r) = engine.s_vector(i, j, &t.mono);
            let (rem, r) = engine.reduce(v, r);
            if rem.is_zero() {
                if !r.is_empty() {
                    raw_syz.push((r, delta));
                }
            } else {
                engine.insert(rem, r);
            }
        }
        while next_input < order.len() && m.source().degree(order[next_input]) == delta {
            let j = order[next_input];
            next_input += 1;
            let v = ModVec::from_free(&m.column(j));
            let (rem, r) = engine.reduce(v, Repr::new());
            if rem.is_zero() {
                redundant.push((j, r));
            } else {
                let k = min_gens.len();
                min_gens.push(j);
                fates[j] = Some(InputFate::Minimal(k));
                // rem = column + (what reduction added), so its expression is e_k + r
                let mut r = r;
                r.insert(k, CommPoly::one(nvars));
                engine.insert(rem, r);
            }
        }
    }

    let rank = min_gens.len();
    for (j, r) in redundant {
        // the column equals minus what was subtracted while reducing it
        let expr: Repr<F> = r.into_iter().map(|(g, p)| (g, p.neg())).collect();
        fates[j] = Some(InputFate::Redundant(repr_to_free(&expr, nvars, rank)));
    }
    let syzygies = raw_syz.into_iter().map(|(r, d)| (repr_to_free(&r, nvars, rank), d)).collect();
    let basis = engine.elems.iter().map(|e| e.vec.to_free(nvars, ambient.rank())).collect();
    EngineOutput {
        min_gens,
        fates: fates.into_iter().map(|f| f.expect("every input processed")).collect(),
        syzygies,
        basis,
    }
}

/// Reduced Gröbner basis of a submodule.
#[derive(Clone)]
pub struct ModuleGB<F> {
    ambient: GradedFree,
    elements: Vec<FreeVec<F>>,
}

field_debug!(ModuleGB { ambient, elements });

impl<F: Field> ModuleGB<F> {
    pub fn ambient(&self) -> &GradedFree {
        &self.ambient
    }

    pub fn elements(&self) -> &[FreeVec<F>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_terms(&self) -> Vec<Term> {
        self.elements.iter().map(|e| ModVec::from_free(e).lead().unwrap().0.clone()).collect()
    }

    fn engine(&self) -> Engine<'_, F> {
        let mut e = Engine {
            ambient: &self.ambient,
            elems: Vec::new(),
            by_pos: vec![Vec::new(); self.ambient.rank()],
            pairs: BTreeSet::new(),
        };
        for v in &self.elements {
            let mv = ModVec::from_free(v);
            let (lead, lc) = mv.lead().map(|(t, c)| (t.clone(), c.clone())).unwrap();
            e.by_pos[lead.pos].push(e.elems.len());
            e.elems.push(Element { vec: mv, lead, lc, repr: Repr::new() });
        }
        e
    }

    /// Normal form of `v`.
    pub fn reduce(&self, v: &FreeVec<F>) -> FreeVec<F> {
        let (rem, _) = self.engine().reduce(ModVec::from_free(v), Repr::new());
        rem.to_free(self.ambient.nvars(), self.ambient.rank())
    }

    pub fn contains(&self, v: &FreeVec<F>) -> bool {
        self.reduce(v).iter().all(|p| p.is_zero())
    }
}

/// Gröbner basis of the column span of `m`, interreduced and monic.
pub fn module_groebner<F: Field>(m: &GradedMatrix<F>) -> ModuleGB<F> {
    let out = run_engine(m);
    let ambient = m.target().clone();
    let mut vecs: Vec<ModVec<F>> = out.basis.iter().map(ModVec::from_free).collect();
    vecs.sort_by(|a, b| a.lead().unwrap().0.cmp(b.lead().unwrap().0));
    // drop elements whose leading term is divisible by another's
    let mut keep: Vec<ModVec<F>> = Vec::new();
    for v in vecs {
        let t = v.lead().unwrap().0.clone();
        if !keep.iter().any(|k| {
            let s = k.lead().unwrap().0;
            s.pos == t.pos && s.mono.divides(&t.mono)
        }) {
            keep.push(v);
        }
    }
    let mut gb = ModuleGB { ambient, elements: Vec::new() };
    let snapshot = ModuleGB {
        ambient: gb.ambient.clone(),
        elements: keep.iter().map(|v| v.to_free(gb.ambient.nvars(), gb.ambient.rank())).collect(),
    };
    for (i, v) in keep.iter().enumerate() {
        let (t, c) = v.lead().map(|(t, c)| (t.clone(), c.clone())).unwrap();
        let mut tail = v.clone();
        tail.terms.remove(&t);
        // reduce the tail against all others (leading terms are fixed)
        let others = ModuleGB {
            ambient: gb.ambient.clone(),
            elements: snapshot.elements.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, e)| e.clone()).collect(),
        };
        let (mut rest, _) = others.engine().reduce(tail, Repr::new());
        rest.terms.insert(t, c.clone());
        rest.scale(&c.recip());
        gb.elements.push(rest.to_free(gb.ambient.nvars(), gb.ambient.rank()));
    }
    gb
}

/// Generators of the kernel of `F^{gb.len()} → ambient` sending basis vector
/// `k` to the `k`-th Gröbner basis element.
pub fn syzygies<F: Field>(gb: &ModuleGB<F>) -> GradedMatrix<F> {
    let degrees: Vec<i64> =
        gb.elements.iter().map(|v| crate::graded::vector_degree(&gb.ambient, v).expect("nonzero element")).collect();
    let m = GradedMatrix::from_columns(gb.ambient.clone(), degrees.clone(), &gb.elements);
    kernel_generators(&m)
}

/// Generators of the kernel of the map given by the columns of `m`
/// (all columns, including redundant ones).
pub fn kernel_generators<F: Field>(m: &GradedMatrix<F>) -> GradedMatrix<F> {
    let out = run_engine(m);
    let nvars = m.target().nvars();
    let n = m.ncols();
    let lift = |v: &FreeVec<F>| -> FreeVec<F> {
        let mut full = vec![CommPoly::zero(nvars); n];
        for (k, p) in v.iter().enumerate() {
            full[out.min_gens[k]] = p.clone();
        }
        full
    };
    let mut cols = Vec::new();
    let mut degs = Vec::new();
    for (j, fate) in out.fates.iter().enumerate() {
        if let InputFate::Redundant(expr) = fate {
            let mut v: FreeVec<F> = lift(expr).into_iter().map(|p| p.neg()).collect();
            v[j] = v[j].add(&CommPoly::one(nvars)).expect("same ring");
            cols.push(v);
            degs.push(m.source().degree(j));
        }
    }
    for (s, d) in &out.syzygies {
        cols.push(lift(s));
        degs.push(*d);
    }
    GradedMatrix::from_columns(m.source().clone(), degs, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn cols(d: usize, gens: Vec<i64>, polys: &[&[&str]]) -> GradedMatrix<Rational> {
        let target = GradedFree::new(d, gens);
        let c: Vec<FreeVec<Rational>> =
            polys.iter().map(|col| col.iter().map(|s| CommPoly::parse(s, d).unwrap()).collect()).collect();
        let degs = c.iter().map(|v| crate::graded::vector_degree(&target, v).unwrap_or(0)).collect();
        GradedMatrix::from_columns(target, degs, &c)
    }

    #[test]
    fn coprime_generators_are_a_basis() {
        let gb = module_groebner(&cols(2, vec![0], &[&["z1"], &["z2"]]));
        assert_eq!(gb.len(), 2);
    }

    #[test]
    fn gains_a_cubic() {
        let gb = module_groebner(&cols(2, vec![0], &[&["z1^2 - z2^2"], &["z1*z2"]]));
        let cubic = vec![CommPoly::parse("z2^3", 2).unwrap()];
        assert!(gb.elements().contains(&cubic), "{:?}", gb.elements());
        assert!(gb.contains(&vec![CommPoly::parse("z1^3 - z1*z2^2 + z2^4", 2).unwrap()]));
        assert!(!gb.contains(&vec![CommPoly::parse("z1^2", 2).unwrap()]));
    }

    #[test]
    fn koszul_syzygy() {
        let gb = module_groebner(&cols(2, vec![0], &[&["z1"], &["z2"]]));
        let s = syzygies(&gb);
        assert_eq!(s.ncols(), 1);
        let m = GradedMatrix::from_columns(gb.ambient().clone(), vec![1, 1], gb.elements());
        assert!(m.compose(&s).is_zero());
        assert_eq!(s.source().gen_degrees(), &[2]);
    }

    #[test]
    fn principal_has_no_syzygy() {
        let gb = module_groebner(&cols(2, vec![0], &[&["z1^2"]]));
        assert_eq!(gb.elements(), &[vec![CommPoly::parse("z1^2", 2).unwrap()]]);
        assert_eq!(syzygies(&gb).ncols(), 0);
    }

    #[test]
    fn duplicate_column_gives_unit_syzygy() {
        let m = cols(2, vec![0], &[&["z1"], &["z1"]]);
        let k = kernel_generators(&m);
        assert_eq!(k.ncols(), 1);
        assert_eq!(k.column(0), vec![CommPoly::parse("-1", 2).unwrap(), CommPoly::one(2)]);
    }

    #[test]
    fn tracked_syzygies_are_syzygies() {
        let m = cols(3, vec![0, 1], &[&["z1^2", "z2"], &["z1*z2", "z3"], &["z2^2", "0"], &["0", "z1*z3"]]);
        let out = run_engine(&m);
        let mins = m.select_columns(&out.min_gens);
        for (s, _) in &out.syzygies {
            assert!(mins.apply(s).iter().all(|p| p.is_zero()));
        }
        for (j, f) in out.fates.iter().enumerate() {
            if let InputFate::Redundant(e) = f {
                assert_eq!(mins.apply(e), m.column(j));
            }
        }
    }
}
