//! Finite posets on `[n]`, their order ideals, and the two-level hierarchical
//! poset `H(m, n)`.
//!
//! The empty set counts as an order ideal here. Every down-set collection
//! `I(P)` therefore contains `∅`, which the cardinality `2^|A|` for ideals of
//! `H(m, n)` with no upper part relies on.

use std::fmt;

use crate::error::{Error, Result};
use crate::mask::{SubsetMask, MAX_ELEMENTS};

/// Largest ideal whose down-sets are enumerated explicitly (`2^size` subsets).
pub const ENUMERATION_CAP: usize = 20;

/// Two-level hierarchical shape: lower level `U = [m]`, upper level
/// `V = [n] \ [m]`, every element of `U` below every element of `V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HierarchicalShape {
    m: usize,
    n: usize,
}

impl HierarchicalShape {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m < 1 || m > n {
            return Err(Error::InvalidShape { m, n });
        }
        if n > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge { n, cap: MAX_ELEMENTS });
        }
        Ok(HierarchicalShape { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `U = [m]`.
    pub fn lower(&self) -> SubsetMask {
        SubsetMask::full(self.m)
    }

    /// `V = [n] \ [m]`.
    pub fn upper(&self) -> SubsetMask {
        SubsetMask::range(self.m + 1, self.n)
    }

    /// Splits an ideal `I` into `A = I ∩ U` and `B = I ∩ V`.
    ///
    /// Every ideal has either `B = ∅` or `A = U`; anything else is rejected.
    pub fn decompose(&self, ideal: SubsetMask) -> Result<(SubsetMask, SubsetMask)> {
        if !ideal.is_subset(SubsetMask::full(self.n)) {
            return Err(Error::ElementOutOfRange {
                element: ideal.max_element(),
                n: self.n,
            });
        }
        let a = ideal.intersection(self.lower());
        let b = ideal.intersection(self.upper());
        if !b.is_empty() && a != self.lower() {
            return Err(Error::NotAnIdeal(ideal));
        }
        Ok((a, b))
    }
}

impl fmt::Display for HierarchicalShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({},{})", self.m, self.n)
    }
}

/// A partial order on `[n]`, stored as the down-set `{j : j ⪯ i}` of every element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    down: Vec<SubsetMask>,
    shape: Option<HierarchicalShape>,
}

impl Poset {
    /// Builds a poset from pairs `(i, j)` meaning `i ≺ j`.
    ///
    /// The pairs need not be covering relations; the reflexive-transitive
    /// closure is taken and then checked for antisymmetry.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge { n, cap: MAX_ELEMENTS });
        }
        let mut down: Vec<SubsetMask> = (1..=n).map(SubsetMask::singleton).collect();
        for &(i, j) in covers {
            for e in [i, j] {
                if e < 1 || e > n {
                    return Err(Error::ElementOutOfRange { element: e, n });
                }
            }
            if i == j {
                continue;
            }
            down[j - 1] = down[j - 1].union(SubsetMask::singleton(i));
        }
        // Warshall closure over bit rows.
        for k in 1..=n {
            let row_k = down[k - 1];
            for row in down.iter_mut() {
                if row.contains(k) {
                    *row = row.union(row_k);
                }
            }
        }
        for i in 1..=n {
            for j in down[i - 1].elements() {
                if j != i && down[j - 1].contains(i) {
                    return Err(Error::NotAntisymmetric {
                        i: i.min(j),
                        j: i.max(j),
                    });
                }
            }
        }
        Ok(Poset {
            n,
            down,
            shape: None,
        })
    }

    pub fn antichain(n: usize) -> Result<Self> {
        Self::from_covers(n, &[])
    }

    /// The hierarchical poset `H(m, n)`; `H(m, m)` is the anti-chain on `[m]`.
    pub fn hierarchical(m: usize, n: usize) -> Result<Self> {
        let shape = HierarchicalShape::new(m, n)?;
        let lower = shape.lower();
        let down = (1..=n)
            .map(|i| {
                let own = SubsetMask::singleton(i);
                if i <= m {
                    own
                } else {
                    lower.union(own)
                }
            })
            .collect();
        Ok(Poset {
            n,
            down,
            shape: Some(shape),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground_set(&self) -> SubsetMask {
        SubsetMask::full(self.n)
    }

    /// `{j : j ⪯ i}`.
    pub fn down(&self, i: usize) -> SubsetMask {
        self.down[i - 1]
    }

    pub fn precedes(&self, i: usize, j: usize) -> bool {
        self.down(j).contains(i)
    }

    /// The hierarchical shape when the poset was built by [`Poset::hierarchical`].
    pub fn shape(&self) -> Option<HierarchicalShape> {
        self.shape
    }

    /// True iff `s ⊆ [n]` is down-closed. `∅` is down-closed.
    pub fn is_order_ideal(&self, s: SubsetMask) -> bool {
        s.is_subset(self.ground_set()) && s.elements().all(|j| self.down(j).is_subset(s))
    }

    /// `⟨E⟩`, the smallest order ideal containing `e`.
    pub fn ideal_closure(&self, e: SubsetMask) -> Result<SubsetMask> {
        self.check_in_range(e)?;
        Ok(e
            .elements()
            .fold(SubsetMask::EMPTY, |acc, j| acc.union(self.down(j))))
    }

    /// `I(P)`: every order ideal contained in `ideal`, including `∅`, in
    /// ascending mask order.
    pub fn down_ideals(&self, ideal: SubsetMask) -> Result<Vec<SubsetMask>> {
        if !self.is_order_ideal(ideal) {
            return Err(Error::NotAnIdeal(ideal));
        }
        if ideal.len() > ENUMERATION_CAP {
            return Err(Error::EnumerationCap {
                ideal,
                size: ideal.len(),
                cap: ENUMERATION_CAP,
            });
        }
        let mut out: Vec<SubsetMask> = ideal
            .submasks()
            .filter(|&s| self.is_order_ideal(s))
            .collect();
        out.reverse();
        Ok(out)
    }

    /// Every order ideal of the poset (including `∅`), ascending.
    pub fn order_ideals(&self) -> Result<Vec<SubsetMask>> {
        if self.n > ENUMERATION_CAP {
            return Err(Error::CapExceeded {
                path: "order-ideal enumeration",
                n: self.n,
                cap: ENUMERATION_CAP,
            });
        }
        Ok((0..1u32 << self.n)
            .map(SubsetMask::from_bits)
            .filter(|&s| self.is_order_ideal(s))
            .collect())
    }

    /// `𝓘(P)`: the union of `I(P)` over the members of `family`, ascending.
    pub fn family_downsets(&self, family: &IdealFamily) -> Result<Vec<SubsetMask>> {
        let mut out = Vec::new();
        for &ideal in family.members() {
            out.extend(self.down_ideals(ideal)?);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    fn check_in_range(&self, s: SubsetMask) -> Result<()> {
        if s.is_subset(self.ground_set()) {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element: s.max_element(),
                n: self.n,
            })
        }
    }
}

/// A nonempty, deduplicated list of order ideals of one poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealFamily {
    ideals: Vec<SubsetMask>,
}

impl IdealFamily {
    /// Validates that each member is an order ideal of `poset`; duplicates are dropped.
    pub fn new(poset: &Poset, ideals: impl IntoIterator<Item = SubsetMask>) -> Result<Self> {
        let mut ideals: Vec<SubsetMask> = ideals.into_iter().collect();
        if ideals.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for &ideal in &ideals {
            poset.check_in_range(ideal)?;
            if !poset.is_order_ideal(ideal) {
                return Err(Error::NotAnIdeal(ideal));
            }
        }
        ideals.sort_unstable();
        ideals.dedup();
        Ok(IdealFamily { ideals })
    }

    /// Closes each generator set with [`Poset::ideal_closure`] first.
    pub fn from_generators(
        poset: &Poset,
        generators: impl IntoIterator<Item = SubsetMask>,
    ) -> Result<Self> {
        let closed = generators
            .into_iter()
            .map(|g| poset.ideal_closure(g))
            .collect::<Result<Vec<_>>>()?;
        Self::new(poset, closed)
    }

    pub fn members(&self) -> &[SubsetMask] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }
}

impl fmt::Display for IdealFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, ideal) in self.ideals.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{ideal}")?;
        }
        Ok(())
    }
}
