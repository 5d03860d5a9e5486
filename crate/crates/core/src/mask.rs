//! Subsets of the ground set `[n] = {1, ..., n}` as bit masks.
//!
//! Element `i` lives in bit `i - 1`. A mask doubles as a vector of `F_2^n`
//! (its characteristic vector), so popcount is the Hamming weight and the
//! parity of `u & x` is the inner product `u . x`.

use std::fmt;

use serde::{Serialize, Serializer};

/// Largest ground set a mask can hold.
pub const MAX_ELEMENTS: usize = 30;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn from_bits(bits: u32) -> Self {
        SubsetMask(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The full set `[n]`.
    pub const fn full(n: usize) -> Self {
        if n == 0 {
            SubsetMask(0)
        } else {
            SubsetMask(u32::MAX >> (32 - n))
        }
    }

    /// The interval `{lo, ..., hi}` (1-based, inclusive); empty when `lo > hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        if lo > hi || hi == 0 {
            return SubsetMask::EMPTY;
        }
        let lo = lo.max(1);
        SubsetMask(Self::full(hi).0 & !Self::full(lo - 1).0)
    }

    /// Builds a mask from 1-based elements. Elements must be in `1..=MAX_ELEMENTS`.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        let mut bits = 0u32;
        for e in elements {
            assert!(
                (1..=MAX_ELEMENTS).contains(&e),
                "element {e} out of mask range"
            );
            bits |= 1 << (e - 1);
        }
        SubsetMask(bits)
    }

    pub fn singleton(e: usize) -> Self {
        Self::from_elements([e])
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, e: usize) -> bool {
        e >= 1 && e <= MAX_ELEMENTS && self.0 & (1 << (e - 1)) != 0
    }

    pub const fn is_subset(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: SubsetMask) -> bool {
        self.0 & other.0 == 0
    }

    pub const fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub const fn intersection(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub const fn difference(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    /// Inner product over `F_2`: parity of `|self ∩ other|`.
    pub const fn dot(self, other: SubsetMask) -> u32 {
        (self.0 & other.0).count_ones() & 1
    }

    /// `(-1)^{|self ∩ other|}`.
    pub const fn sign(self, other: SubsetMask) -> i64 {
        1 - 2 * self.dot(other) as i64
    }

    /// Largest element, or 0 for the empty set.
    pub const fn max_element(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    /// Elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize + 1;
                bits &= bits - 1;
                Some(e)
            }
        })
    }

    /// All subsets of `self`, starting from `self` and ending with the empty set.
    pub fn submasks(self) -> impl Iterator<Item = SubsetMask> {
        let full = self.0;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 {
                None
            } else {
                Some((cur - 1) & full)
            };
            Some(SubsetMask(cur))
        })
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for SubsetMask {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}
