mod common;

use common::{graded_betti, lcm_degree, monomial_quotient, poly_string, trimmed, Exps, OraclePresentation};
use hilres::graded::{FreeVec, GradedPresentation};
use hilres::hilbert::{defect_space, free_cover, quotient_module};
use hilres::io::json::{parse_input, presentation_to_json, to_pretty, Input};
use hilres::linalg::{SparseMatrix, SparseVec};
use hilres::pipeline::{resolve_presentation, Mode};
use hilres::syzygy::{certify, minimal_free_resolution};
use hilres::{QPoly, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn monomial(d: usize, lo: u32, hi: u32) -> impl Strategy<Value = Exps> {
    prop::collection::vec(0u32..=hi, d)
        .prop_filter("degree in range", move |e| (lo..=hi).contains(&e.iter().sum::<u32>()))
}

fn monomial_ideal() -> impl Strategy<Value = (usize, Vec<Exps>)> {
    (1usize..=3).prop_flat_map(|d| (Just(d), prop::collection::vec(monomial(d, 1, 3), 1..=4)))
}

/// Binomial relations `a·m1 + b·m2` with `m1`, `m2` of equal degree.
fn binomial_ideal() -> impl Strategy<Value = (usize, Vec<String>)> {
    (2usize..=3).prop_flat_map(|d| {
        let rel = (1u32..=3).prop_flat_map(move |n| {
            (monomial(d, n, n), monomial(d, n, n), nonzero_rational(), rational())
                .prop_map(|(m1, m2, a, b)| poly_string(&[(a, m1), (b, m2)]))
        });
        (Just(d), prop::collection::vec(rel, 1..=3))
    })
}

fn presentation_of(d: usize, rels: &[String]) -> Option<GradedPresentation<Rational>> {
    let cols: Vec<FreeVec<Rational>> = rels.iter().map(|s| vec![QPoly::parse(s, d).unwrap()]).collect();
    let cols: Vec<FreeVec<Rational>> = cols.into_iter().filter(|c| !c[0].is_zero()).collect();
    GradedPresentation::from_columns(d, vec![0], cols).ok()
}

fn poly_terms(d: usize) -> impl Strategy<Value = Vec<(Rational, Exps)>> {
    prop::collection::vec((rational(), monomial(d, 0, 3)), 0..4)
}

fn sparse_matrix() -> impl Strategy<Value = SparseMatrix<Rational>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(Rational::zero()), 2 => rational()], r), c)
            .prop_map(move |cols| {
                SparseMatrix::from_columns(r, cols.iter().map(|v| SparseVec::from_dense(v)).collect())
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nullspace_and_rank_are_consistent(a in sparse_matrix()) {
        let null = a.nullspace();
        prop_assert_eq!(a.rank() + null.dim(), a.ncols());
        prop_assert_eq!(a.rank(), a.transpose().rank());
        for v in null.basis() {
            prop_assert!(a.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn gram_matrices_are_psd_and_invertible_after_shift(a in sparse_matrix()) {
        let g = a.transpose().mul(&a);
        prop_assert!(g.psd_certificate().is_psd());
        prop_assert_eq!(g.psd_certificate().rank(), a.rank());
        let spd = g.add(&SparseMatrix::identity(g.nrows()));
        let inv = spd.inverse_spd().unwrap();
        prop_assert_eq!(spd.mul(&inv), SparseMatrix::identity(g.nrows()));
    }

    #[test]
    fn polynomial_products_commute_and_distribute(
        (d, a, b, c) in (1usize..=3).prop_flat_map(|d| (Just(d), poly_terms(d), poly_terms(d), poly_terms(d)))
    ) {
        let poly = |terms: &Vec<(Rational, Exps)>| QPoly::parse(&poly_string(terms), d).unwrap();
        let (a, b, c) = (poly(&a), poly(&b), poly(&c));
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(QPoly::parse(&lhs.to_string(), d).unwrap(), lhs);
    }

    #[test]
    fn presentation_json_round_trips((d, rels) in binomial_ideal()) {
        if let Some(p) = presentation_of(d, &rels) {
            let text = to_pretty(&presentation_to_json(&p));
            let Input::Presentation(q) = parse_input::<Rational>(&text).unwrap() else { panic!("not a presentation") };
            prop_assert_eq!(to_pretty(&presentation_to_json(&q)), text);
            prop_assert_eq!(q, p);
        }
    }

    #[test]
    fn binomial_quotients_match_the_oracle((d, rels) in binomial_ideal()) {
        if let Some(p) = presentation_of(d, &rels) {
            let res = minimal_free_resolution(&p).unwrap();
            prop_assert!(res.is_minimal());
            prop_assert!(res.modules().len() <= d + 1);
            let cert = certify(&res, &p, res.default_check_degree());
            prop_assert!(cert.passed(), "{:?}", cert.describe_failures());
            let top = res.max_generator_degree().unwrap_or(0) + 1;
            let oracle = trimmed(graded_betti(&OraclePresentation::from_library(&p), top));
            prop_assert_eq!(trimmed(res.graded_betti()), oracle);
        }
    }

    #[test]
    fn euler_characteristic_is_the_rank((d, gens) in monomial_ideal()) {
        let p = monomial_quotient(d, &gens);
        let res = minimal_free_resolution(&p).unwrap();
        // a proper quotient of a polynomial ring in d >= 1 variables has rank 0
        prop_assert_eq!(res.euler(), 0);
        let oracle = trimmed(graded_betti(&OraclePresentation::from_library(&p), lcm_degree(&gens)));
        prop_assert_eq!(trimmed(res.graded_betti()), oracle);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn modes_agree_on_small_monomial_quotients(
        (d, gens) in (1usize..=2).prop_flat_map(|d| (Just(d), prop::collection::vec(monomial(d, 1, 2), 1..=3)))
    ) {
        let p = monomial_quotient(d, &gens);
        let top = lcm_degree(&gens) + 2;
        let r = resolve_presentation(&p, Mode::Both, top).unwrap();
        prop_assert_eq!(r.agree, Some(true));
        prop_assert!(r.passed());
    }

    #[test]
    fn quotient_covers_are_certified((d, gens) in monomial_ideal()) {
        let p = monomial_quotient(d, &gens);
        let h = quotient_module(&p, 5).unwrap();
        if h.total_dim() > 0 {
            let c = free_cover(&h).unwrap();
            prop_assert!(c.certificates.passed(), "{:?}", c.certificates);
            // one generator: the class of 1
            prop_assert_eq!(c.generator_degrees(), vec![0]);
            prop_assert_eq!(defect_space(&h).total(), 1);
        }
    }
}

#[test]
fn oracle_knows_small_cases() {
    let p = monomial_quotient(2, &[vec![2, 0], vec![1, 1]]);
    let b = trimmed(graded_betti(&OraclePresentation::from_library(&p), 4));
    let want: Vec<std::collections::BTreeMap<i64, usize>> = vec![[(0, 1)].into(), [(2, 2)].into(), [(3, 1)].into()];
    assert_eq!(b, want);
    assert!(Rational::one() > Rational::zero());
}
