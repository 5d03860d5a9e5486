//! Sign-point evaluation of the generating function
//! `H_X(x_1, ..., x_n) = Σ_{x ∈ X} Π x_i^{x_i}` of a collection of subsets.
//!
//! Only values at `x_i = (-1)^{u_i}` are ever needed, where the monomial of
//! `x` becomes `(-1)^{|x ∩ u|}`. Polynomials are never materialized.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::poset::{HierarchicalShape, IdealFamily, Poset};

/// Largest family expanded by inclusion-exclusion (`2^len - 1` terms).
pub const FAMILY_CAP: usize = 20;

/// Evaluation point `x_i = (-1)^{u_i}`, identified with the support of `u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignPoint(SubsetMask);

impl SignPoint {
    pub const ONES: SignPoint = SignPoint(SubsetMask::EMPTY);

    pub fn new(u: SubsetMask) -> Self {
        SignPoint(u)
    }

    pub fn mask(self) -> SubsetMask {
        self.0
    }

    /// `u = (v, w)` with `v = u ∩ [m]` and `w = u ∩ ([n] \ [m])`.
    pub fn split(self, shape: &HierarchicalShape) -> (SubsetMask, SubsetMask) {
        (
            self.0.intersection(shape.lower()),
            self.0.intersection(shape.upper()),
        )
    }
}

impl From<SubsetMask> for SignPoint {
    fn from(u: SubsetMask) -> Self {
        SignPoint(u)
    }
}

/// `Σ_{x ∈ X} (-1)^{|x ∩ u|}`. At `u = ∅` this is `|X|`.
pub fn eval_direct(collection: &[SubsetMask], u: impl Into<SignPoint>) -> i64 {
    let u = u.into().mask();
    collection.iter().map(|&x| x.sign(u)).sum()
}

/// 1 when `u ∩ x = ∅`, else 0.
pub fn disjoint_indicator(u: SubsetMask, x: SubsetMask) -> i64 {
    i64::from(u.is_disjoint(x))
}

/// Closed form of `H_{I(P)}` at a sign point for an ideal `I = A ∪ B` of `H(m, n)`:
///
/// * `B = ∅`: `2^|A| · [v ∩ A = ∅]`
/// * `B ≠ ∅`: `2^m · [v = ∅] + (-1)^{|v|} (2^|B| · [w ∩ B = ∅] - 1)`
pub fn eval_hierarchical(
    shape: &HierarchicalShape,
    a: SubsetMask,
    b: SubsetMask,
    u: impl Into<SignPoint>,
) -> Result<i64> {
    if !a.is_subset(shape.lower()) || !b.is_subset(shape.upper()) {
        return Err(Error::InvalidParameters(format!(
            "{a} ∪ {b} does not split along {shape}"
        )));
    }
    if !b.is_empty() && a != shape.lower() {
        return Err(Error::NotAnIdeal(a.union(b)));
    }
    Ok(hierarchical_value(shape, a, b, u.into()))
}

fn hierarchical_value(shape: &HierarchicalShape, a: SubsetMask, b: SubsetMask, u: SignPoint) -> i64 {
    let (v, w) = u.split(shape);
    if b.is_empty() {
        (1i64 << a.len()) * disjoint_indicator(v, a)
    } else {
        let parity = if v.len() % 2 == 0 { 1 } else { -1 };
        (1i64 << shape.m()) * disjoint_indicator(v, shape.lower())
            + parity * ((1i64 << b.len()) * disjoint_indicator(w, b) - 1)
    }
}

#[derive(Debug, Clone)]
enum Term {
    Hierarchical {
        shape: HierarchicalShape,
        a: SubsetMask,
        b: SubsetMask,
    },
    Explicit(Vec<SubsetMask>),
}

impl Term {
    fn eval(&self, u: SignPoint) -> i64 {
        match self {
            Term::Hierarchical { shape, a, b } => hierarchical_value(shape, *a, *b, u),
            Term::Explicit(collection) => eval_direct(collection, u),
        }
    }
}

/// Inclusion-exclusion expansion of `H_{𝓘(P)}` for an ideal family:
/// `Σ_{∅ ≠ S ⊆ 𝓘} (-1)^{|S|+1} H_{(∩S)(P)}`.
///
/// Intersections of ideals are ideals, so each term is the down-set
/// collection of a single ideal. Terms sharing the same intersection are
/// merged and cancelled. On hierarchical posets every term uses the closed
/// form and nothing is enumerated.
#[derive(Debug, Clone)]
pub struct FamilyEvaluator {
    terms: Vec<(i64, Term)>,
}

impl FamilyEvaluator {
    pub fn new(poset: &Poset, family: &IdealFamily) -> Result<Self> {
        let k = family.len();
        if k == 0 {
            return Err(Error::EmptyFamily);
        }
        if k > FAMILY_CAP {
            return Err(Error::FamilyTooLarge {
                size: k,
                cap: FAMILY_CAP,
            });
        }
        let members = family.members();
        let mut coefficients: BTreeMap<SubsetMask, i64> = BTreeMap::new();
        for subset in 1u32..1 << k {
            let meet = (0..k)
                .filter(|i| subset & (1 << i) != 0)
                .fold(poset.ground_set(), |acc, i| acc.intersection(members[i]));
            let sign = if subset.count_ones() % 2 == 1 { 1 } else { -1 };
            *coefficients.entry(meet).or_default() += sign;
        }
        let mut terms = Vec::new();
        for (meet, coefficient) in coefficients {
            if coefficient == 0 {
                continue;
            }
            let term = match poset.shape() {
                Some(shape) => {
                    let (a, b) = shape.decompose(meet)?;
                    Term::Hierarchical { shape, a, b }
                }
                None => Term::Explicit(poset.down_ideals(meet)?),
            };
            terms.push((coefficient, term));
        }
        Ok(FamilyEvaluator { terms })
    }

    pub fn eval(&self, u: impl Into<SignPoint>) -> i64 {
        let u = u.into();
        self.terms.iter().map(|(c, t)| c * t.eval(u)).sum()
    }

    /// `|𝓘(P)|`, the value at the all-ones point.
    pub fn cardinality(&self) -> i64 {
        self.eval(SignPoint::ONES)
    }

    /// Number of surviving inclusion-exclusion terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }
}

/// `H_{𝓘(P)}` at one sign point via inclusion-exclusion.
pub fn eval_family(poset: &Poset, family: &IdealFamily, u: impl Into<SignPoint>) -> Result<i64> {
    Ok(FamilyEvaluator::new(poset, family)?.eval(u))
}

/// Brute-force Walsh-Hadamard value `S_f(u) = Σ_{v ∈ F_2^n} (-1)^{f(v) + u·v}`
/// of the Boolean function with the given support.
pub fn walsh_transform(f_support: &[SubsetMask], u: SubsetMask, n: usize) -> i64 {
    let mut support = f_support.to_vec();
    support.sort_unstable();
    (0..1u32 << n)
        .map(SubsetMask::from_bits)
        .map(|v| {
            let f = i64::from(support.binary_search(&v).is_ok());
            let s = v.sign(u);
            if f == 1 {
                -s
            } else {
                s
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(e: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(e.iter().copied())
    }

    #[test]
    fn direct_evaluation() {
        // 1 + x_2 + x_1 x_2
        let x = vec![SubsetMask::EMPTY, set(&[2]), set(&[1, 2])];
        assert_eq!(eval_direct(&x, SubsetMask::EMPTY), 3);
        assert_eq!(eval_direct(&x, set(&[2])), -1);
        assert_eq!(eval_direct(&[], set(&[1, 3])), 0);
    }

    #[test]
    fn disjointness() {
        assert_eq!(disjoint_indicator(set(&[1, 3]), set(&[2, 4])), 1);
        assert_eq!(disjoint_indicator(set(&[1, 3]), set(&[3])), 0);
        assert_eq!(disjoint_indicator(set(&[1, 3]), SubsetMask::EMPTY), 1);
    }

    #[test]
    fn hierarchical_examples() {
        let shape = HierarchicalShape::new(2, 5).unwrap();
        let (a, b) = (set(&[1, 2]), set(&[3, 4]));
        assert_eq!(eval_hierarchical(&shape, a, b, SubsetMask::EMPTY).unwrap(), 7);
        assert_eq!(eval_hierarchical(&shape, a, b, set(&[1])).unwrap(), -3);
        let shape = HierarchicalShape::new(2, 4).unwrap();
        assert_eq!(
            eval_hierarchical(&shape, set(&[1, 2]), SubsetMask::EMPTY, set(&[3])).unwrap(),
            4
        );
        assert!(matches!(
            eval_hierarchical(&shape, set(&[1]), set(&[3]), SubsetMask::EMPTY),
            Err(Error::NotAnIdeal(_))
        ));
    }

    #[test]
    fn family_examples() {
        let p = Poset::from_covers(4, &[(2, 1), (4, 3)]).unwrap();
        let f = IdealFamily::new(&p, [set(&[1, 2]), set(&[3, 4])]).unwrap();
        assert_eq!(eval_family(&p, &f, SubsetMask::EMPTY).unwrap(), 5);

        let p = Poset::from_covers(4, &[(2, 1), (1, 3), (1, 4)]).unwrap();
        let f = IdealFamily::new(&p, [set(&[1, 2, 3]), set(&[1, 2, 4])]).unwrap();
        assert_eq!(eval_family(&p, &f, SubsetMask::EMPTY).unwrap(), 5);
        // 1 + x_2 + x_1 x_2 + x_1 x_2 x_3 + x_1 x_2 x_4 at x = (-1, 1, -1, 1)
        assert_eq!(eval_family(&p, &f, set(&[1, 3])).unwrap(), 1 + 1 - 1 + 1 - 1);
    }

    #[test]
    fn singleton_family_equals_direct() {
        let p = Poset::from_covers(5, &[(1, 2), (1, 3), (3, 5)]).unwrap();
        for ideal in p.order_ideals().unwrap() {
            let f = IdealFamily::new(&p, [ideal]).unwrap();
            let eval = FamilyEvaluator::new(&p, &f).unwrap();
            let collection = p.down_ideals(ideal).unwrap();
            for u in 0..32 {
                let u = SubsetMask::from_bits(u);
                assert_eq!(eval.eval(u), eval_direct(&collection, u));
            }
        }
    }

    #[test]
    fn repeated_intersections_cancel() {
        // Three ideals that pairwise meet in {1}: the pairwise terms and the
        // triple term collapse into one coefficient.
        let p = Poset::antichain(4).unwrap();
        let f = IdealFamily::new(&p, [set(&[1, 2]), set(&[1, 3]), set(&[1, 4])]).unwrap();
        let eval = FamilyEvaluator::new(&p, &f).unwrap();
        assert_eq!(eval.term_count(), 4);
        assert_eq!(eval.cardinality(), 8);
    }

    #[test]
    fn walsh_examples() {
        for u in 0..8 {
            let expected = if u == 0 { 8 } else { 0 };
            assert_eq!(walsh_transform(&[], SubsetMask::from_bits(u), 3), expected);
        }
        assert_eq!(walsh_transform(&[set(&[1])], set(&[1]), 1), 2);

        let p = Poset::hierarchical(2, 4).unwrap();
        let mut support = p.down_ideals(set(&[1, 2, 3])).unwrap();
        support.retain(|s| !s.is_empty());
        assert_eq!(walsh_transform(&support, SubsetMask::EMPTY, 4), 8);
    }

    #[test]
    fn empty_family_rejected() {
        let p = Poset::antichain(2).unwrap();
        assert_eq!(
            IdealFamily::new(&p, []).unwrap_err(),
            Error::EmptyFamily
        );
    }
}
