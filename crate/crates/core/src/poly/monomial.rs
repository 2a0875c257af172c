use std::cmp::Ordering;
use std::fmt;

/// Behaviour shared by commutative monomials and noncommutative words.
pub trait MonomialKind: Clone + Ord + Eq + std::hash::Hash + fmt::Debug + Send + Sync {
    fn one(nvars: usize) -> Self;
    fn var(nvars: usize, index: usize) -> Self;
    fn nvars(&self) -> usize;
    fn degree(&self) -> u32;
    fn mul(&self, other: &Self) -> Self;
    /// Factors in print order as `(variable, exponent)` runs.
    fn factors(&self) -> Vec<(usize, u32)>;
    fn from_factors(nvars: usize, factors: &[(usize, u32)]) -> Self;

    fn is_one(&self) -> bool {
        self.degree() == 0
    }
}

/// A commutative monomial `z^α`, stored as a dense exponent vector. Sized
/// for `d ≤ 16`; nothing enforces it, but larger `d` wastes memory on zeros.
///
/// `Ord` is graded reverse lexicographic with `z1 > z2 > … > zd`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial { exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect() })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect() }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the first variable with a positive exponent.
    pub fn first_var(&self) -> Option<usize> {
        self.exps.iter().position(|e| *e > 0)
    }

    /// Divides out one power of `z_k`.
    pub fn lower(&self, k: usize) -> Option<Monomial> {
        if self.exps[k] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[k] -= 1;
        Some(Monomial { exps })
    }

    pub fn raise(&self, k: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[k] += 1;
        Monomial { exps }
    }
}

/// Graded reverse lexicographic comparison.
pub fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    let da: u32 = a.exps.iter().map(|e| *e as u32).sum();
    let db: u32 = b.exps.iter().map(|e| *e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.exps.iter().zip(&b.exps).rev() {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl MonomialKind for Monomial {
    fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial { exps }
    }

    fn nvars(&self) -> usize {
        self.exps.len()
    }

    fn degree(&self) -> u32 {
        self.exps.iter().map(|e| *e as u32).sum()
    }

    fn mul(&self, other: &Self) -> Self {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    fn factors(&self) -> Vec<(usize, u32)> {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, e)| (i, *e as u32)).collect()
    }

    fn from_factors(nvars: usize, factors: &[(usize, u32)]) -> Self {
        let mut exps = vec![0u16; nvars];
        for (v, e) in factors {
            exps[*v] += *e as u16;
        }
        Monomial { exps }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_factors(&self.factors()))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_factors(&self.factors()))
    }
}

/// A noncommutative monomial: a word over the letters `z1 … zd`.
///
/// `Ord` compares length first, then the letter sequence lexicographically
/// with `z1 < z2 < …`, so the first word of each length is `z1 z1 … z1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    nvars: usize,
    letters: Vec<u16>,
}

impl Word {
    pub fn new(nvars: usize, letters: Vec<u16>) -> Self {
        debug_assert!(letters.iter().all(|l| (*l as usize) < nvars));
        Word { nvars, letters }
    }

    pub fn letters(&self) -> &[u16] {
        &self.letters
    }

    /// `z_k · w`.
    pub fn prepend(&self, k: usize) -> Word {
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        letters.push(k as u16);
        letters.extend_from_slice(&self.letters);
        Word { nvars: self.nvars, letters }
    }

    /// Splits `z_k · w'` into `(k, w')`.
    pub fn split_first(&self) -> Option<(usize, Word)> {
        let (first, rest) = self.letters.split_first()?;
        Some((*first as usize, Word { nvars: self.nvars, letters: rest.to_vec() }))
    }

    /// The commutative monomial with the same letter counts.
    pub fn abelianize(&self) -> Monomial {
        let mut exps = vec![0u16; self.nvars];
        for l in &self.letters {
            exps[*l as usize] += 1;
        }
        Monomial::new(exps)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters.len().cmp(&other.letters.len()).then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl MonomialKind for Word {
    fn one(nvars: usize) -> Self {
        Word { nvars, letters: Vec::new() }
    }

    fn var(nvars: usize, index: usize) -> Self {
        Word { nvars, letters: vec![index as u16] }
    }

    fn nvars(&self) -> usize {
        self.nvars
    }

    fn degree(&self) -> u32 {
        self.letters.len() as u32
    }

    fn mul(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { nvars: self.nvars, letters }
    }

    fn factors(&self) -> Vec<(usize, u32)> {
        let mut out: Vec<(usize, u32)> = Vec::new();
        for l in &self.letters {
            match out.last_mut() {
                Some((v, e)) if *v == *l as usize => *e += 1,
                _ => out.push((*l as usize, 1)),
            }
        }
        out
    }

    fn from_factors(nvars: usize, factors: &[(usize, u32)]) -> Self {
        let mut letters = Vec::new();
        for (v, e) in factors {
            letters.extend(std::iter::repeat_n(*v as u16, *e as usize));
        }
        Word { nvars, letters }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_factors(&self.factors()))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_factors(&self.factors()))
    }
}

pub(crate) fn format_factors(factors: &[(usize, u32)]) -> String {
    if factors.is_empty() {
        return "1".to_string();
    }
    factors
        .iter()
        .map(|(v, e)| if *e == 1 { format!("z{}", v + 1) } else { format!("z{}^{}", v + 1, e) })
        .collect::<Vec<_>>()
        .join("*")
}

/// All commutative monomials of total degree `deg` in `nvars` variables,
/// in descending grevlex order.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if nvars == 0 {
        if deg == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return out;
    }
    let mut exps = vec![0u16; nvars];
    fill_compositions(&mut exps, 0, deg, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn fill_compositions(exps: &mut Vec<u16>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == exps.len() {
        exps[pos] = remaining as u16;
        out.push(Monomial::new(exps.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        exps[pos] = e as u16;
        fill_compositions(exps, pos + 1, remaining - e, out);
    }
    exps[pos] = 0;
}

/// All words of length `len` over `nvars` letters, in ascending word order.
pub fn words_of_length(nvars: usize, len: u32) -> Vec<Word> {
    let mut out = vec![Word::one(nvars)];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * nvars);
        for w in &out {
            for k in 0..nvars {
                let mut letters = w.letters.clone();
                letters.push(k as u16);
                next.push(Word { nvars, letters });
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_examples() {
        assert_eq!(m(&[2, 0]).cmp(&m(&[1, 1])), Ordering::Greater);
        assert_eq!(m(&[1, 0]).cmp(&m(&[1, 0])), Ordering::Equal);
        assert_eq!(m(&[0, 3]).cmp(&m(&[2, 1])), Ordering::Less);
        // degree dominates
        assert_eq!(m(&[0, 0, 2]).cmp(&m(&[1, 0, 0])), Ordering::Greater);
        // grevlex, not lex: z1 z3^2 < z2^3 since z3 appears more in the former
        assert_eq!(m(&[1, 0, 2]).cmp(&m(&[0, 3, 0])), Ordering::Less);
    }

    #[test]
    fn counts_match_closed_forms() {
        for d in 1..=4usize {
            for n in 0..=8u32 {
                let expect = crate::scalar::binomial::<crate::Rational>((n as u64) + d as u64 - 1, d as u64 - 1);
                assert_eq!(crate::Rational::from_i64(monomials_of_degree(d, n).len() as i64), expect);
                assert_eq!(words_of_length(d, n).len(), d.pow(n));
            }
        }
    }

    #[test]
    fn words_do_not_commute() {
        let a = Word::var(2, 0).mul(&Word::var(2, 1));
        let b = Word::var(2, 1).mul(&Word::var(2, 0));
        assert_ne!(a, b);
        assert_eq!(a.abelianize(), b.abelianize());
        assert_eq!(a.to_string(), "z1*z2");
        assert_eq!(Word::from_factors(2, &[(0, 2), (1, 1)]).to_string(), "z1^2*z2");
    }

    #[test]
    fn monomial_listing_is_descending() {
        let ms = monomials_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(ms[0].to_string(), "z1^2");
    }
}
