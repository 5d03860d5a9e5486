//! Code parameters from three routes (sign-point evaluation, explicit
//! codewords, closed-form tables) and two minimality tests.

use std::collections::{BTreeMap, HashSet};

use posetcodes::analysis::{certify, griesmer_sum, minimality_witness};
use posetcodes::closed_form::{Placement, TableCase};
use posetcodes::code::{analytic_code, oracle_codebook, Codebook, DEFAULT_ORACLE_CAP};
use posetcodes::{CodeKind, CodeSpec, IdealFamily, Poset, SubsetMask};
use proptest::prelude::*;

/// Codewords as bit vectors, written out from the definition.
fn literal_codewords(spec: &CodeSpec) -> Vec<Vec<bool>> {
    let n = spec.n();
    let poset = spec.poset();
    let members = spec.family().members();
    let inside = |x: u32| {
        let x = SubsetMask::from_bits(x);
        poset.is_order_ideal(x) && members.iter().any(|m| x.is_subset(*m))
    };
    let dot = |u: u32, x: u32| (u & x).count_ones() % 2 == 1;
    match spec.kind() {
        CodeKind::D => {
            let d: Vec<u32> = (0u32..1 << n).filter(|&x| !inside(x)).collect();
            (0u32..1 << n).map(|u| d.iter().map(|&x| dot(u, x)).collect()).collect()
        }
        CodeKind::F => {
            let mut words = Vec::new();
            for s in [false, true] {
                for u in 0u32..1 << n {
                    words.push(
                        (1u32..1 << n)
                            .map(|x| dot(u, x) ^ (s && inside(x)))
                            .collect(),
                    );
                }
            }
            words
        }
    }
}

fn distinct(words: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
    let mut seen = HashSet::new();
    words.into_iter().filter(|w| seen.insert(w.clone())).collect()
}

fn histogram(words: &[Vec<bool>]) -> BTreeMap<u64, u64> {
    let mut h = BTreeMap::new();
    for w in words {
        *h.entry(w.iter().filter(|&&b| b).count() as u64).or_insert(0) += 1;
    }
    h
}

/// Minimal iff no nonzero codeword's support lies strictly inside another's.
fn minimal_by_supports(words: &[Vec<bool>]) -> bool {
    let nonzero: Vec<&Vec<bool>> = words.iter().filter(|w| w.iter().any(|&b| b)).collect();
    nonzero.iter().all(|a| {
        nonzero
            .iter()
            .all(|b| a == b || !b.iter().zip(a.iter()).all(|(&x, &y)| !x || y))
    })
}

fn hierarchical_spec(m: usize, extra: usize, gens: &[u32], kind: CodeKind) -> Option<CodeSpec> {
    let n = m + extra;
    let poset = Poset::hierarchical(m, n).ok()?;
    let full = (1u32 << n) - 1;
    let family =
        IdealFamily::from_generators(&poset, gens.iter().map(|&g| SubsetMask::from_bits(g & full))).ok()?;
    CodeSpec::new(poset, family, kind).ok()
}

fn book_words(book: &Codebook) -> Vec<Vec<bool>> {
    (0..book.len())
        .map(|i| (0..book.length()).map(|j| book.bit(i, j)).collect())
        .collect()
}

#[test]
fn toy_code_matches_literal_codewords() {
    let poset = Poset::hierarchical(1, 2).unwrap();
    let family = IdealFamily::from_generators(&poset, [SubsetMask::singleton(1)]).unwrap();
    let spec = CodeSpec::new(poset, family, CodeKind::D).unwrap();
    let words = distinct(literal_codewords(&spec));
    assert_eq!(
        words,
        vec![vec![false, false], vec![false, true], vec![true, true], vec![true, false]]
    );
    let report = analytic_code(&spec).unwrap();
    assert_eq!(report.parameters(), (2, 2, 1));
    assert_eq!(report.distribution.enumerator(), "1+2z+z^2");
}

#[test]
fn dimension_remarks() {
    // (m, |B|) = (1, n - 1) folds a zero-weight row into A_0
    for n in 3..=7 {
        let poset = Poset::hierarchical(1, n).unwrap();
        let family = IdealFamily::new(&poset, [SubsetMask::full(n)]).unwrap();
        let spec = CodeSpec::new(poset.clone(), family.clone(), CodeKind::D).unwrap();
        assert_eq!(analytic_code(&spec).unwrap().dimension, n as u32 - 1);
        let spec = CodeSpec::new(poset, family, CodeKind::F).unwrap();
        assert_eq!(analytic_code(&spec).unwrap().dimension, n as u32);
    }
    // |A| = 1: (s, u) = (1, 0) is a weight-one codeword and k = n + 1
    for n in 2..=7 {
        let spec = TableCase::T5 { n, a: 1 }.witness(Placement::Low).unwrap();
        let report = oracle_codebook(&spec, DEFAULT_ORACLE_CAP).unwrap().report().unwrap();
        assert_eq!(report.dimension, n as u32 + 1);
        if n >= 3 {
            assert_eq!(report.distribution.count(1), 1);
        }
    }
}

#[test]
fn every_table_case_matches_both_witnesses_up_to_n7() {
    for n in 2..=7 {
        for table in 1..=8 {
            for case in TableCase::admissible(table, n) {
                let predicted = case.evaluate().unwrap().report().unwrap();
                for placement in [Placement::Low, Placement::High] {
                    let spec = case.witness(placement).unwrap();
                    let words = distinct(literal_codewords(&spec));
                    let observed = histogram(&words);
                    assert_eq!(
                        predicted.distribution.counts(),
                        &observed,
                        "{case:?} {placement:?}"
                    );
                    assert_eq!(predicted.length as usize, words[0].len(), "{case:?}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn analytic_oracle_and_literal_agree(
        m in 1usize..=4,
        extra in 0usize..=3,
        gens in proptest::collection::vec(any::<u32>(), 1..=3),
        f in any::<bool>(),
    ) {
        let kind = if f { CodeKind::F } else { CodeKind::D };
        let Some(spec) = hierarchical_spec(m, extra, &gens, kind) else { return Ok(()) };
        let Ok(analytic) = analytic_code(&spec) else { return Ok(()) };
        let book = oracle_codebook(&spec, DEFAULT_ORACLE_CAP).unwrap();
        let oracle = book.report().unwrap();
        prop_assert!(analytic.same_code(&oracle));
        let words = distinct(literal_codewords(&spec));
        prop_assert_eq!(book_words(&book), words.clone());
        prop_assert_eq!(analytic.distribution.counts(), &histogram(&words));
        prop_assert_eq!(analytic.distribution.total(), 1u64 << analytic.dimension);
        prop_assert_eq!(analytic.distribution.count(0), 1);
    }

    #[test]
    fn codebooks_are_closed_under_addition(
        m in 1usize..=4,
        extra in 0usize..=3,
        gens in proptest::collection::vec(any::<u32>(), 1..=3),
        f in any::<bool>(),
    ) {
        let kind = if f { CodeKind::F } else { CodeKind::D };
        let Some(spec) = hierarchical_spec(m, extra, &gens, kind) else { return Ok(()) };
        let Ok(book) = oracle_codebook(&spec, DEFAULT_ORACLE_CAP) else { return Ok(()) };
        for i in 0..book.len() {
            for j in 0..book.len() {
                let sum: Vec<u64> = book.codeword(i).iter().zip(book.codeword(j)).map(|(a, b)| a ^ b).collect();
                prop_assert!(book.position(&sum).is_some());
            }
        }
    }

    #[test]
    fn weight_criterion_matches_support_covering(
        m in 1usize..=4,
        extra in 0usize..=3,
        gens in proptest::collection::vec(any::<u32>(), 1..=3),
        f in any::<bool>(),
    ) {
        let kind = if f { CodeKind::F } else { CodeKind::D };
        let Some(spec) = hierarchical_spec(m, extra, &gens, kind) else { return Ok(()) };
        let Ok(book) = oracle_codebook(&spec, DEFAULT_ORACLE_CAP) else { return Ok(()) };
        let words = book_words(&book);
        prop_assert_eq!(minimality_witness(&book).is_none(), minimal_by_supports(&words));
        let report = book.report().unwrap();
        if report.dimension > 0 {
            let cert = certify(&report, Some(&book)).unwrap();
            if cert.ab_sufficient {
                prop_assert_eq!(cert.minimal_exhaustive, Some(true));
            }
            let (n, k, d) = report.parameters();
            prop_assert!(griesmer_sum(k, d).unwrap() <= n);
        }
    }
}
