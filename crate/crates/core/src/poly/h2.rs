//! The symmetrization map from the full Fock space onto the symmetric
//! space, and the inner product it induces on commutative
//! monomials.

use crate::poly::monomial::{Monomial, MonomialKind};
use crate::poly::poly::{CommPoly, WordPoly};
use crate::scalar::{binomial, Field};

/// Sends every word to its commutative monomial.
///
/// The kernel in each degree is the degree-`n` part of the two-sided ideal
/// generated by the commutators `z_j z_k - z_k z_j`.
pub fn symmetrize<F: Field>(w: &WordPoly<F>) -> CommPoly<F> {
    CommPoly::from_terms(w.nvars(), w.terms().map(|(word, c)| (word.abelianize(), c.clone())))
}

/// `|α|! / α!`: the number of words that abelianize to `z^α`.
pub fn multinomial<F: Field>(m: &Monomial) -> F {
    let mut acc = F::one();
    let mut total = 0u64;
    for e in m.exponents() {
        total += *e as u64;
        acc = acc * binomial::<F>(total, *e as u64);
    }
    acc
}

/// Inner product of two commutative monomials in the symmetric Fock space:
/// zero unless equal, and `α!/|α|!` on the diagonal.
pub fn h2_inner<F: Field>(a: &Monomial, b: &Monomial) -> F {
    if a != b {
        return F::zero();
    }
    multinomial::<F>(a).recip()
}

pub fn h2_norm_sq<F: Field>(m: &Monomial) -> F {
    h2_inner(m, m)
}

/// Inner product of two commutative polynomials.
pub fn h2_inner_poly<F: Field>(f: &CommPoly<F>, g: &CommPoly<F>) -> F {
    let mut acc = F::zero();
    for (m, c) in f.terms() {
        let d = g.coeff(m);
        if !d.is_zero() {
            acc = acc + c.clone() * d * h2_norm_sq::<F>(m);
        }
    }
    acc
}

/// Inner product on word polynomials, where words are orthonormal.
pub fn fock_inner<F: Field>(f: &WordPoly<F>, g: &WordPoly<F>) -> F {
    let mut acc = F::zero();
    for (w, c) in f.terms() {
        acc = acc + c.clone() * g.coeff(w);
    }
    acc
}

/// The symmetric tensor representing `z^α` inside the Fock space:
/// the average of all words abelianizing to `z^α`.
pub fn symmetric_embedding<F: Field>(m: &Monomial) -> WordPoly<F> {
    let nvars = m.nvars();
    let words = crate::poly::monomial::words_of_length(nvars, m.degree());
    let hits: Vec<_> = words.into_iter().filter(|w| w.abelianize() == *m).collect();
    let weight = F::from_i64(hits.len() as i64).recip();
    WordPoly::from_terms(nvars, hits.into_iter().map(|w| (w, weight.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::monomial::Word;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn h2_examples() {
        let z1z2 = Monomial::new(vec![1, 1]);
        let z1sq = Monomial::new(vec![2, 0]);
        assert_eq!(h2_inner::<Rational>(&z1z2, &z1z2), q(1, 2));
        assert_eq!(h2_inner::<Rational>(&z1sq, &z1sq), q(1, 1));
        assert_eq!(h2_inner::<Rational>(&Monomial::var(2, 0), &Monomial::var(2, 1)), q(0, 1));
    }

    #[test]
    fn embedding_norm_matches_h2_inner() {
        // independent route: squared Fock norm of the averaged word sum
        for exps in [[1u16, 1, 0], [2, 1, 0], [1, 1, 1], [3, 0, 2], [0, 0, 4]] {
            let m = Monomial::new(exps.to_vec());
            let e = symmetric_embedding::<Rational>(&m);
            assert_eq!(fock_inner(&e, &e), h2_inner::<Rational>(&m, &m), "{m}");
            assert_eq!(symmetrize(&e), CommPoly::term(m.clone(), Rational::from_i64(1)));
        }
    }

    #[test]
    fn symmetrize_examples() {
        let w12 = WordPoly::<Rational>::parse("z1*z2", 2).unwrap();
        let comm = WordPoly::<Rational>::parse("z1*z2 - z2*z1", 2).unwrap();
        assert_eq!(symmetrize(&w12).to_string(), "z1*z2");
        assert!(symmetrize(&comm).is_zero());
        assert_eq!(symmetrize(&WordPoly::<Rational>::one(2)).to_string(), "1");
        let _ = Word::one(2);
    }
}
