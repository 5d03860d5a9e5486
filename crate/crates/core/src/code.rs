//! The two code constructions and their parameters.
//!
//! * `C_D = { (u·x)_{x ∈ D} : u ∈ F_2^n }` where `D` is the complement of
//!   `𝓘(P)` in `2^[n]`.
//! * `C_f = { (s f(x) + u·x)_{x ∈ F_2^n \ {0}} : s ∈ F_2, u ∈ F_2^n }` where
//!   `f` is the indicator of `𝓘(P) \ {∅}`.
//!
//! Parameters come from two independent routes: [`analytic_code`] evaluates
//! the generating function at sign points, [`oracle_code`] writes out every
//! codeword and counts bits.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::genfun::FamilyEvaluator;
use crate::mask::SubsetMask;
use crate::poset::{IdealFamily, Poset};

/// Default ceiling on `n` for explicit codeword enumeration.
pub const DEFAULT_ORACLE_CAP: usize = 14;

/// Ceiling on `n` for the analytic path (`2^n` sign-point evaluations).
pub const ANALYTIC_CAP: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CodeKind {
    /// `C_D`, coordinates indexed by the defining set.
    D,
    /// `C_f`, coordinates indexed by the nonzero vectors.
    F,
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeKind::D => "D",
            CodeKind::F => "f",
        })
    }
}

/// A poset, an ideal family and the construction to apply.
#[derive(Debug, Clone)]
pub struct CodeSpec {
    poset: Poset,
    family: IdealFamily,
    kind: CodeKind,
}

impl CodeSpec {
    pub fn new(poset: Poset, family: IdealFamily, kind: CodeKind) -> Result<Self> {
        for &ideal in family.members() {
            if !poset.is_order_ideal(ideal) {
                return Err(Error::NotAnIdeal(ideal));
            }
        }
        if kind == CodeKind::F && family.members().iter().all(|i| i.is_empty()) {
            return Err(Error::TrivialFunction);
        }
        Ok(CodeSpec {
            poset,
            family,
            kind,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn family(&self) -> &IdealFamily {
        &self.family
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.poset.n()
    }

    /// Number of message bits: `n` for `C_D`, `n + 1` for `C_f`.
    pub fn message_bits(&self) -> usize {
        match self.kind {
            CodeKind::D => self.n(),
            CodeKind::F => self.n() + 1,
        }
    }
}

/// Weight distribution `{weight -> A_weight}` of a linear code, including `A_0 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: BTreeMap<u64, u64>,
    dimension: u32,
}

impl WeightDistribution {
    /// Validates `A_0 = 1`, positive frequencies, and total mass `2^k`.
    pub fn from_counts(counts: BTreeMap<u64, u64>) -> Result<Self> {
        if counts.get(&0) != Some(&1) {
            return Err(Error::Inconsistent(format!(
                "A_0 must be 1, got {:?}",
                counts.get(&0)
            )));
        }
        if counts.values().any(|&c| c == 0) {
            return Err(Error::Inconsistent("zero frequency listed".into()));
        }
        let total: u64 = counts.values().sum();
        if !total.is_power_of_two() {
            return Err(Error::Inconsistent(format!(
                "total mass {total} is not a power of two"
            )));
        }
        Ok(WeightDistribution {
            counts,
            dimension: total.trailing_zeros(),
        })
    }

    /// Normalizes a histogram over all messages: every codeword appears
    /// `kernel = hist[0]` times, so frequencies are divided by the kernel
    /// size and the dimension drops by `log2(kernel)`.
    pub fn from_message_histogram(hist: BTreeMap<u64, u64>) -> Result<Self> {
        let kernel = hist.get(&0).copied().unwrap_or(0);
        if !kernel.is_power_of_two() {
            return Err(Error::Inconsistent(format!(
                "kernel size {kernel} is not a power of two"
            )));
        }
        let mut counts = BTreeMap::new();
        for (w, c) in hist {
            if c == 0 {
                continue;
            }
            if c % kernel != 0 {
                return Err(Error::Inconsistent(format!(
                    "frequency {c} at weight {w} not divisible by kernel size {kernel}"
                )));
            }
            counts.insert(w, c / kernel);
        }
        Self::from_counts(counts)
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// `A_w`, zero when absent.
    pub fn count(&self, weight: u64) -> u64 {
        self.counts.get(&weight).copied().unwrap_or(0)
    }

    /// `(weight, A_weight)` in ascending weight order, including `(0, 1)`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&w, &c)| (w, c))
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Least nonzero weight, or 0 for the zero code.
    pub fn w_min(&self) -> u64 {
        self.counts.keys().copied().find(|&w| w > 0).unwrap_or(0)
    }

    pub fn w_max(&self) -> u64 {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    /// Number of distinct nonzero weights.
    pub fn weight_count(&self) -> usize {
        self.counts.keys().filter(|&&w| w > 0).count()
    }

    /// `1+A_1 z+A_2 z^2+...` with zero coefficients omitted, e.g. `1+2z+z^2`.
    pub fn enumerator(&self) -> String {
        let mut out = String::new();
        for (w, c) in self.iter() {
            if !out.is_empty() {
                out.push('+');
            }
            if w == 0 {
                out.push_str(&c.to_string());
                continue;
            }
            if c != 1 {
                out.push_str(&c.to_string());
            }
            out.push('z');
            if w != 1 {
                out.push('^');
                out.push_str(&w.to_string());
            }
        }
        out
    }
}

impl Serialize for WeightDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            weight: u64,
            count: u64,
        }
        let mut seq = serializer.serialize_seq(Some(self.counts.len()))?;
        for (weight, count) in self.iter() {
            seq.serialize_element(&Entry { weight, count })?;
        }
        seq.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Analytic,
    Oracle,
    ClosedFormTable,
}

/// Length, dimension and weight distribution of a code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeReport {
    pub length: u64,
    pub dimension: u32,
    pub distribution: WeightDistribution,
    pub w_min: u64,
    pub w_max: u64,
    pub source: Source,
}

impl CodeReport {
    pub fn new(length: u64, distribution: WeightDistribution, source: Source) -> Result<Self> {
        if distribution.w_max() > length {
            return Err(Error::Inconsistent(format!(
                "weight {} exceeds length {length}",
                distribution.w_max()
            )));
        }
        Ok(CodeReport {
            length,
            dimension: distribution.dimension(),
            w_min: distribution.w_min(),
            w_max: distribution.w_max(),
            distribution,
            source,
        })
    }

    /// `[n, k, d]`.
    pub fn parameters(&self) -> (u64, u32, u64) {
        (self.length, self.dimension, self.w_min)
    }

    /// True when both reports describe the same code parameters and distribution.
    pub fn same_code(&self, other: &CodeReport) -> bool {
        self.length == other.length && self.distribution == other.distribution
    }
}

impl fmt::Display for CodeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.length, self.dimension, self.w_min)
    }
}

pub fn weight_enumerator_string(report: &CodeReport) -> String {
    report.distribution.enumerator()
}

/// `D = 2^[n] \ 𝓘(P)`, ascending by mask value. Never contains `∅`.
pub fn defining_set(poset: &Poset, family: &IdealFamily) -> Result<Vec<SubsetMask>> {
    let members = membership_table(poset, family)?;
    let d: Vec<SubsetMask> = members
        .iter()
        .enumerate()
        .filter(|&(_, &inside)| !inside)
        .map(|(x, _)| SubsetMask::from_bits(x as u32))
        .collect();
    if d.is_empty() {
        return Err(Error::EmptyDefiningSet);
    }
    Ok(d)
}

/// `table[x] = (x ∈ 𝓘(P))` over all `2^n` subsets, by explicit enumeration.
fn membership_table(poset: &Poset, family: &IdealFamily) -> Result<Vec<bool>> {
    let mut table = vec![false; 1usize << poset.n()];
    for x in poset.family_downsets(family)? {
        table[x.bits() as usize] = true;
    }
    Ok(table)
}

/// Weight formulas driven by sign-point values of `H_{𝓘(P)}`.
#[derive(Debug, Clone)]
pub struct AnalyticWeights {
    n: usize,
    evaluator: FamilyEvaluator,
    downset_count: u64,
}

impl AnalyticWeights {
    pub fn new(poset: &Poset, family: &IdealFamily) -> Result<Self> {
        if poset.n() > ANALYTIC_CAP {
            return Err(Error::CapExceeded {
                path: "analytic",
                n: poset.n(),
                cap: ANALYTIC_CAP,
            });
        }
        let evaluator = FamilyEvaluator::new(poset, family)?;
        let downset_count = evaluator.cardinality() as u64;
        Ok(AnalyticWeights {
            n: poset.n(),
            evaluator,
            downset_count,
        })
    }

    /// `|𝓘(P)|`.
    pub fn downset_count(&self) -> u64 {
        self.downset_count
    }

    /// `|D| = 2^n - |𝓘(P)|`.
    pub fn defining_set_size(&self) -> u64 {
        (1u64 << self.n) - self.downset_count
    }

    /// `wt(c_{D,u}) = (|D| - Σ_{x∈D} (-1)^{u·x}) / 2`, using
    /// `Σ_{x∈D} (-1)^{u·x} = 2^n [u = 0] - H(u)`. Exact for every `u`, including 0.
    pub fn weight_d(&self, u: SubsetMask) -> u64 {
        let all = if u.is_empty() { 1i64 << self.n } else { 0 };
        let numerator = self.defining_set_size() as i64 - all + self.evaluator.eval(u);
        debug_assert!(numerator >= 0 && numerator % 2 == 0);
        (numerator / 2) as u64
    }

    /// `wt(c_f(s,u)) = 2^{n-1} (1 - [u = 0]) + s (H(u) - 1)`.
    pub fn weight_f(&self, s: bool, u: SubsetMask) -> u64 {
        let base = if u.is_empty() { 0 } else { 1i64 << (self.n - 1) };
        let w = base + if s { self.evaluator.eval(u) - 1 } else { 0 };
        debug_assert!(w >= 0);
        w as u64
    }
}

pub fn analytic_weight_d(poset: &Poset, family: &IdealFamily, u: SubsetMask) -> Result<u64> {
    Ok(AnalyticWeights::new(poset, family)?.weight_d(u))
}

pub fn analytic_weight_f(poset: &Poset, family: &IdealFamily, s: bool, u: SubsetMask) -> Result<u64> {
    Ok(AnalyticWeights::new(poset, family)?.weight_f(s, u))
}

fn merge_histograms(mut a: BTreeMap<u64, u64>, b: BTreeMap<u64, u64>) -> BTreeMap<u64, u64> {
    for (w, c) in b {
        *a.entry(w).or_default() += c;
    }
    a
}

/// Parameters from the weight formulas, one evaluation per message.
pub fn analytic_code(spec: &CodeSpec) -> Result<CodeReport> {
    let weights = AnalyticWeights::new(spec.poset(), spec.family())?;
    let n = spec.n();
    let space = 1u64 << n;
    let (length, messages) = match spec.kind() {
        CodeKind::D => {
            let len = weights.defining_set_size();
            if len == 0 {
                return Err(Error::EmptyDefiningSet);
            }
            (len, space)
        }
        CodeKind::F => {
            if weights.downset_count() <= 1 {
                return Err(Error::TrivialFunction);
            }
            (space - 1, 2 * space)
        }
    };
    let kind = spec.kind();
    let hist = (0..messages)
        .into_par_iter()
        .fold(BTreeMap::new, |mut h, msg| {
            let u = SubsetMask::from_bits((msg % space) as u32);
            let w = match kind {
                CodeKind::D => weights.weight_d(u),
                CodeKind::F => weights.weight_f(msg >= space, u),
            };
            *h.entry(w).or_insert(0u64) += 1;
            h
        })
        .reduce(BTreeMap::new, merge_histograms);
    let distribution = WeightDistribution::from_message_histogram(hist)?;
    CodeReport::new(length, distribution, Source::Analytic)
}

/// Every distinct codeword of a code, packed as little-endian `u64` words.
#[derive(Debug, Clone)]
pub struct Codebook {
    length: usize,
    words: usize,
    data: Vec<u64>,
    messages: Vec<u64>,
}

impl Codebook {
    /// Code length (bits per codeword).
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn len(&self) -> usize {
        self.messages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.messages.is_empty()
    }

    /// Codeword `i` in order of first appearance over messages.
    pub fn codeword(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    /// Message index that first produced codeword `i` (`u`, or `s·2^n + u` for `C_f`).
    pub fn message(&self, i: usize) -> u64 {
        self.messages[i]
    }

    pub fn weight(&self, i: usize) -> u64 {
        popcount(self.codeword(i))
    }

    pub fn bit(&self, i: usize, coordinate: usize) -> bool {
        self.codeword(i)[coordinate / 64] >> (coordinate % 64) & 1 == 1
    }

    /// Index of a codeword equal to `word`, if present.
    pub fn position(&self, word: &[u64]) -> Option<usize> {
        (0..self.len()).find(|&i| self.codeword(i) == word)
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u64]> + '_ {
        self.data.chunks_exact(self.words.max(1)).take(self.len())
    }

    pub fn distribution(&self) -> Result<WeightDistribution> {
        let mut counts = BTreeMap::new();
        for i in 0..self.len() {
            *counts.entry(self.weight(i)).or_insert(0) += 1;
        }
        WeightDistribution::from_counts(counts)
    }

    pub fn report(&self) -> Result<CodeReport> {
        CodeReport::new(self.length as u64, self.distribution()?, Source::Oracle)
    }
}

pub fn popcount(word: &[u64]) -> u64 {
    word.iter().map(|w| u64::from(w.count_ones())).sum()
}

/// Writes out every codeword literally and deduplicates.
pub fn oracle_codebook(spec: &CodeSpec, cap: usize) -> Result<Codebook> {
    let n = spec.n();
    if n > cap {
        return Err(Error::CapExceeded {
            path: "oracle",
            n,
            cap,
        });
    }
    let space = 1u64 << n;
    let (coordinates, f_table, messages): (Vec<SubsetMask>, Vec<bool>, u64) = match spec.kind() {
        CodeKind::D => (defining_set(spec.poset(), spec.family())?, Vec::new(), space),
        CodeKind::F => {
            let mut table = membership_table(spec.poset(), spec.family())?;
            table[0] = false;
            if !table.iter().any(|&b| b) {
                return Err(Error::TrivialFunction);
            }
            let coords = (1..space).map(|x| SubsetMask::from_bits(x as u32)).collect();
            (coords, table, 2 * space)
        }
    };
    let length = coordinates.len();
    let words = length.div_ceil(64).max(1);
    let mut data = vec![0u64; words * messages as usize];
    data.par_chunks_mut(words)
        .enumerate()
        .for_each(|(msg, row)| {
            let msg = msg as u64;
            let u = SubsetMask::from_bits((msg % space) as u32);
            let s = msg >= space;
            for (j, &x) in coordinates.iter().enumerate() {
                let mut bit = u.dot(x);
                if s && f_table[x.bits() as usize] {
                    bit ^= 1;
                }
                row[j / 64] |= u64::from(bit) << (j % 64);
            }
        });

    let mut seen: HashSet<&[u64]> = HashSet::new();
    let mut kept = Vec::new();
    for (msg, row) in data.chunks_exact(words).enumerate() {
        if seen.insert(row) {
            kept.push(msg as u64);
        }
    }
    let mut compact = Vec::with_capacity(kept.len() * words);
    for &msg in &kept {
        let start = msg as usize * words;
        compact.extend_from_slice(&data[start..start + words]);
    }
    if !(kept.len() as u64).is_power_of_two() {
        return Err(Error::Inconsistent(format!(
            "{} distinct codewords is not a power of two",
            kept.len()
        )));
    }
    Ok(Codebook {
        length,
        words,
        data: compact,
        messages: kept,
    })
}

/// Ground-truth parameters by explicit enumeration, with the default cap.
pub fn oracle_code(spec: &CodeSpec) -> Result<CodeReport> {
    oracle_codebook(spec, DEFAULT_ORACLE_CAP)?.report()
}
