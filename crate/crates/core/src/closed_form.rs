//! Closed-form weight distributions for one or two ideals of `H(m, n)`.
//!
//! Each table is a list of rows `(weight, frequency)` over the message index
//! space (`u`, or `(s, u)` for `C_f`). A row keeps both the reference formula
//! as tabulated and the value derived from the sign-point case split; they
//! differ only on the rows listed in [`TableRow::deviates`]. Distributions are
//! always built from the derived values.
//!
//! Weights are carried in doubled units so that `2^{c-1}` with `c = 0` is
//! representable; such rows always have frequency zero and are dropped before
//! halving.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::code::{CodeKind, CodeReport, CodeSpec, Source, WeightDistribution};
use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::poset::{IdealFamily, Poset};

/// Size parameters of a tabulated case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TableCase {
    /// `C_D`, one ideal `A`, `B = ∅`.
    T1 { n: usize, a: usize },
    /// `C_D`, one ideal `[m] ∪ B`, `B ≠ ∅`.
    T2 { n: usize, m: usize, b: usize },
    /// `C_D`, two incomparable ideals inside `[m]`.
    T3 { n: usize, a1: usize, a2: usize, a12: usize },
    /// `C_D`, two incomparable ideals `[m] ∪ B_i`.
    T4 { n: usize, m: usize, b1: usize, b2: usize, b12: usize },
    /// `C_f` counterpart of `T1`.
    T5 { n: usize, a: usize },
    /// `C_f` counterpart of `T2`.
    T6 { n: usize, m: usize, b: usize },
    /// `C_f` counterpart of `T3`.
    T7 { n: usize, a1: usize, a2: usize, a12: usize },
    /// `C_f` counterpart of `T4`.
    T8 { n: usize, m: usize, b1: usize, b2: usize, b12: usize },
}

/// Where a witness places its sets inside their level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    /// Lowest indices of the level, with the smallest admissible `m` for the `A` cases.
    Low,
    /// Highest indices of the level, with `m = n` for the `A` cases.
    High,
}

/// One row of a table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub weight_expr: &'static str,
    /// Reference weight, doubled.
    pub reference_weight2: i64,
    pub reference_frequency: i64,
    /// Derived weight, doubled.
    pub weight2: i64,
    pub frequency: i64,
}

impl TableRow {
    fn same(weight_expr: &'static str, weight2: i64, frequency: i64) -> Self {
        TableRow {
            weight_expr,
            reference_weight2: weight2,
            reference_frequency: frequency,
            weight2,
            frequency,
        }
    }

    fn amended(
        weight_expr: &'static str,
        (reference_weight2, reference_frequency): (i64, i64),
        (weight2, frequency): (i64, i64),
    ) -> Self {
        TableRow {
            weight_expr,
            reference_weight2,
            reference_frequency,
            weight2,
            frequency,
        }
    }

    /// True when the reference formula differs from the derived value.
    pub fn deviates(&self) -> bool {
        self.reference_weight2 != self.weight2 || self.reference_frequency != self.frequency
    }
}

/// Evaluated table: rows, length and normalized distribution.
#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub table: u8,
    pub params: BTreeMap<String, i64>,
    pub kind: CodeKind,
    /// `2^n - |𝓘(P)|` for `C_D`, `2^n - 1` for `C_f`.
    pub length: u64,
    /// Length as given by the reference formula.
    pub reference_length: i64,
    pub rows: Vec<TableRow>,
    pub distribution: WeightDistribution,
}

impl TableReport {
    pub fn report(&self) -> Result<CodeReport> {
        CodeReport::new(self.length, self.distribution.clone(), Source::ClosedFormTable)
    }

    /// Reference frequencies per doubled weight over the message index space.
    pub fn reference_histogram(&self) -> BTreeMap<i64, i64> {
        let mut hist = BTreeMap::new();
        for row in &self.rows {
            if row.reference_frequency != 0 {
                *hist.entry(row.reference_weight2).or_insert(0) += row.reference_frequency;
            }
        }
        hist
    }

    fn reference_exprs(&self, weight2: i64) -> String {
        let exprs: Vec<&str> = self
            .rows
            .iter()
            .filter(|r| r.reference_weight2 == weight2)
            .map(|r| r.weight_expr)
            .collect();
        if exprs.is_empty() {
            "(no row)".to_string()
        } else {
            exprs.join(" | ")
        }
    }

    /// Compares the reference formulas with an observed code, weight by weight
    /// over the message index space, plus the length.
    pub fn discrepancies(&self, observed: &CodeReport, message_bits: u32) -> Vec<Discrepancy> {
        let mut out = Vec::new();
        let source = format!("table{}", self.table);
        if self.reference_length != observed.length as i64 {
            out.push(Discrepancy {
                source: source.clone(),
                table: Some(self.table),
                params: self.params.clone(),
                row_weight_expr: "length".into(),
                weight: None,
                predicted: self.reference_length,
                observed: observed.length as i64,
            });
        }
        let kernel = 1i64 << (message_bits - observed.dimension);
        let reference = self.reference_histogram();
        let mut weights: Vec<i64> = reference.keys().copied().collect();
        weights.extend(observed.distribution.iter().map(|(w, _)| 2 * w as i64));
        weights.sort_unstable();
        weights.dedup();
        for w2 in weights {
            let predicted = reference.get(&w2).copied().unwrap_or(0);
            let seen = if w2 % 2 == 0 {
                observed.distribution.count((w2 / 2) as u64) as i64 * kernel
            } else {
                0
            };
            if predicted != seen {
                out.push(Discrepancy {
                    source: source.clone(),
                    table: Some(self.table),
                    params: self.params.clone(),
                    row_weight_expr: self.reference_exprs(w2),
                    weight: Some(w2 as f64 / 2.0),
                    predicted,
                    observed: seen,
                });
            }
        }
        out
    }
}

/// A reference value that disagrees with an enumerated code.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Discrepancy {
    pub source: String,
    pub table: Option<u8>,
    pub params: BTreeMap<String, i64>,
    pub row_weight_expr: String,
    pub weight: Option<f64>,
    pub predicted: i64,
    pub observed: i64,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{} ({})", self.source, params.join(","))?;
        match self.weight {
            Some(w) => write!(f, " weight {w} [{}]", self.row_weight_expr)?,
            None => write!(f, " {}", self.row_weight_expr)?,
        }
        write!(f, ": predicted {}, observed {}", self.predicted, self.observed)
    }
}

/// Doubled value of `2^e`, for `e >= -1`.
fn p(e: i64) -> i64 {
    assert!(e >= -1, "exponent {e} below -1");
    1i64 << (e + 1)
}

/// `2^e`, for `e >= 0`.
fn q(e: i64) -> i64 {
    assert!(e >= 0, "exponent {e} below 0");
    1i64 << e
}

fn range_check(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameters(what()))
    }
}

fn interval(lo: usize, len: usize) -> SubsetMask {
    SubsetMask::range(lo, lo + len - 1)
}

impl TableCase {
    pub fn table(&self) -> u8 {
        match self {
            TableCase::T1 { .. } => 1,
            TableCase::T2 { .. } => 2,
            TableCase::T3 { .. } => 3,
            TableCase::T4 { .. } => 4,
            TableCase::T5 { .. } => 5,
            TableCase::T6 { .. } => 6,
            TableCase::T7 { .. } => 7,
            TableCase::T8 { .. } => 8,
        }
    }

    pub fn kind(&self) -> CodeKind {
        if self.table() <= 4 {
            CodeKind::D
        } else {
            CodeKind::F
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            TableCase::T1 { n, .. }
            | TableCase::T2 { n, .. }
            | TableCase::T3 { n, .. }
            | TableCase::T4 { n, .. }
            | TableCase::T5 { n, .. }
            | TableCase::T6 { n, .. }
            | TableCase::T7 { n, .. }
            | TableCase::T8 { n, .. } => n,
        }
    }

    pub fn params(&self) -> BTreeMap<String, i64> {
        let pairs: Vec<(&str, usize)> = match *self {
            TableCase::T1 { n, a } | TableCase::T5 { n, a } => vec![("n", n), ("a", a)],
            TableCase::T2 { n, m, b } | TableCase::T6 { n, m, b } => {
                vec![("n", n), ("m", m), ("b", b)]
            }
            TableCase::T3 { n, a1, a2, a12 } | TableCase::T7 { n, a1, a2, a12 } => {
                vec![("n", n), ("a1", a1), ("a2", a2), ("a12", a12)]
            }
            TableCase::T4 { n, m, b1, b2, b12 } | TableCase::T8 { n, m, b1, b2, b12 } => {
                vec![("n", n), ("m", m), ("b1", b1), ("b2", b2), ("b12", b12)]
            }
        };
        pairs.into_iter().map(|(k, v)| (k.to_string(), v as i64)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let cap = crate::mask::MAX_ELEMENTS;
        range_check(self.n() >= 1 && self.n() <= cap, || {
            format!("n = {} outside 1..={cap}", self.n())
        })?;
        match *self {
            TableCase::T1 { n, a } => range_check(a >= 1 && a < n, || {
                format!("need 1 <= |A| < n, got |A| = {a}, n = {n}")
            }),
            TableCase::T5 { n, a } => range_check(a >= 1 && a <= n, || {
                format!("need 1 <= |A| <= n, got |A| = {a}, n = {n}")
            }),
            TableCase::T2 { n, m, b } | TableCase::T6 { n, m, b } => {
                range_check(m >= 1 && m < n && b >= 1 && b <= n - m, || {
                    format!("need 1 <= m < n and 1 <= |B| <= n - m, got m = {m}, |B| = {b}, n = {n}")
                })
            }
            TableCase::T3 { n, a1, a2, a12 } | TableCase::T7 { n, a1, a2, a12 } => {
                range_check(a1 > a12 && a2 > a12 && a1 + a2 - a12 <= n, || {
                    format!(
                        "need incomparable A_1, A_2 with |A_1 ∪ A_2| <= n, got {a1}, {a2}, {a12}, n = {n}"
                    )
                })
            }
            TableCase::T4 { n, m, b1, b2, b12 } | TableCase::T8 { n, m, b1, b2, b12 } => {
                range_check(m >= 1 && b1 > b12 && b2 > b12 && m + b1 + b2 - b12 <= n, || {
                    format!(
                        "need m >= 1, incomparable B_1, B_2 with m + |B_1 ∪ B_2| <= n, got m = {m}, {b1}, {b2}, {b12}, n = {n}"
                    )
                })
            }
        }
    }

    /// Every admissible case of this table at ground-set size `n`.
    pub fn admissible(table: u8, n: usize) -> Vec<TableCase> {
        let mut out = Vec::new();
        match table {
            1 | 5 => {
                for a in 1..=n {
                    out.push(if table == 1 {
                        TableCase::T1 { n, a }
                    } else {
                        TableCase::T5 { n, a }
                    });
                }
            }
            2 | 6 => {
                for m in 1..n {
                    for b in 1..=n - m {
                        out.push(if table == 2 {
                            TableCase::T2 { n, m, b }
                        } else {
                            TableCase::T6 { n, m, b }
                        });
                    }
                }
            }
            3 | 7 => {
                for a12 in 0..n {
                    for a1 in a12 + 1..=n {
                        for a2 in a12 + 1..=n {
                            out.push(if table == 3 {
                                TableCase::T3 { n, a1, a2, a12 }
                            } else {
                                TableCase::T7 { n, a1, a2, a12 }
                            });
                        }
                    }
                }
            }
            4 | 8 => {
                for m in 1..n {
                    for b12 in 0..n {
                        for b1 in b12 + 1..=n {
                            for b2 in b12 + 1..=n {
                                out.push(if table == 4 {
                                    TableCase::T4 { n, m, b1, b2, b12 }
                                } else {
                                    TableCase::T8 { n, m, b1, b2, b12 }
                                });
                            }
                        }
                    }
                }
            }
            _ => {}
        }
        out.retain(|c| c.validate().is_ok());
        out
    }

    /// A concrete poset, family and construction realizing these sizes.
    pub fn witness(&self, placement: Placement) -> Result<CodeSpec> {
        self.validate()?;
        let high = placement == Placement::High;
        let (m, n, ideals) = match *self {
            TableCase::T1 { n, a } | TableCase::T5 { n, a } => {
                let m = if high { n } else { a };
                let lo = if high { m - a + 1 } else { 1 };
                (m, n, vec![interval(lo, a)])
            }
            TableCase::T2 { n, m, b } | TableCase::T6 { n, m, b } => {
                let lo = if high { n - b + 1 } else { m + 1 };
                (m, n, vec![SubsetMask::full(m).union(interval(lo, b))])
            }
            TableCase::T3 { n, a1, a2, a12 } | TableCase::T7 { n, a1, a2, a12 } => {
                let union = a1 + a2 - a12;
                let m = if high { n } else { union };
                let base = m - union + 1;
                (
                    m,
                    n,
                    if high {
                        vec![interval(base + union - a1, a1), interval(base, a2)]
                    } else {
                        vec![interval(base, a1), interval(base + a1 - a12, a2)]
                    },
                )
            }
            TableCase::T4 { n, m, b1, b2, b12 } | TableCase::T8 { n, m, b1, b2, b12 } => {
                let union = b1 + b2 - b12;
                let base = if high { n - union + 1 } else { m + 1 };
                let (s1, s2) = if high {
                    (interval(base + union - b1, b1), interval(base, b2))
                } else {
                    (interval(base, b1), interval(base + b1 - b12, b2))
                };
                let lower = SubsetMask::full(m);
                (m, n, vec![lower.union(s1), lower.union(s2)])
            }
        };
        let poset = Poset::hierarchical(m, n)?;
        let family = IdealFamily::new(&poset, ideals)?;
        CodeSpec::new(poset, family, self.kind())
    }

    pub fn evaluate(&self) -> Result<TableReport> {
        self.validate()?;
        let n = self.n() as i64;
        let (length, reference_length, rows) = match *self {
            TableCase::T1 { a, .. } => table1_rows(n, a as i64),
            TableCase::T2 { m, b, .. } => table2_rows(n, m as i64, b as i64),
            TableCase::T3 { a1, a2, a12, .. } => table3_rows(n, a1 as i64, a2 as i64, a12 as i64),
            TableCase::T4 { m, b1, b2, b12, .. } => {
                table4_rows(n, m as i64, b1 as i64, b2 as i64, b12 as i64)
            }
            TableCase::T5 { a, .. } => table5_rows(n, a as i64),
            TableCase::T6 { m, b, .. } => table6_rows(n, m as i64, b as i64),
            TableCase::T7 { a1, a2, a12, .. } => table7_rows(n, a1 as i64, a2 as i64, a12 as i64),
            TableCase::T8 { m, b1, b2, b12, .. } => {
                table8_rows(n, m as i64, b1 as i64, b2 as i64, b12 as i64)
            }
        };
        let message_bits = match self.kind() {
            CodeKind::D => n,
            CodeKind::F => n + 1,
        };
        let distribution = normalize(&rows, message_bits)?;
        Ok(TableReport {
            table: self.table(),
            params: self.params(),
            kind: self.kind(),
            length: length as u64,
            reference_length,
            rows,
            distribution,
        })
    }
}

/// Merges equal weights, drops zero frequencies, folds the weight-0 mass into
/// the kernel and checks the total against `2^message_bits`.
fn normalize(rows: &[TableRow], message_bits: i64) -> Result<WeightDistribution> {
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    let mut total = 0i64;
    for row in rows {
        if row.frequency == 0 {
            continue;
        }
        if row.frequency < 0 || row.weight2 < 0 || row.weight2 % 2 != 0 {
            return Err(Error::Inconsistent(format!(
                "row {} has weight {}/2 and frequency {}",
                row.weight_expr, row.weight2, row.frequency
            )));
        }
        total += row.frequency;
        *hist.entry((row.weight2 / 2) as u64).or_insert(0) += row.frequency as u64;
    }
    if total != 1 << message_bits {
        return Err(Error::Inconsistent(format!(
            "row frequencies sum to {total}, expected 2^{message_bits}"
        )));
    }
    WeightDistribution::from_message_histogram(hist)
}

type Rows = (i64, i64, Vec<TableRow>);

fn table1_rows(n: i64, a: i64) -> Rows {
    let length = q(n) - q(a);
    let rows = vec![
        TableRow::same("0", 0, 1),
        TableRow::same("2^{n-1}", p(n - 1), q(n - a) - 1),
        TableRow::same("2^{n-1}-2^{|A|-1}", p(n - 1) - p(a - 1), q(n) - q(n - a)),
    ];
    (length, length, rows)
}

fn table2_rows(n: i64, m: i64, b: i64) -> Rows {
    let length = q(n) - q(m) - q(b) + 1;
    let h = p(n - 1);
    let rows = vec![
        TableRow::same("0", 0, 1),
        TableRow::same("2^{n-1}", h, q(n - m - b) - 1),
        TableRow::same("2^{n-1}-2^{|B|-1}", h - p(b - 1), q(n - m) - q(n - m - b)),
        TableRow::same(
            "2^{n-1}+1-2^{m-1}-2^{|B|}",
            h + p(0) - p(m - 1) - p(b),
            q(n - 1 - b),
        ),
        TableRow::same(
            "2^{n-1}+1-2^{m-1}-2^{|B|-1}",
            h + p(0) - p(m - 1) - p(b - 1),
            q(n - 1) - q(n - 1 - b),
        ),
        TableRow::same("2^{n-1}-2^{m-1}", h - p(m - 1), q(n - 1 - b) - q(n - m - b)),
        TableRow::same(
            "2^{n-1}-2^{m-1}-2^{|B|-1}",
            h - p(m - 1) - p(b - 1),
            q(n - 1) - q(n - 1 - b) - q(n - m) + q(n - m - b),
        ),
    ];
    (length, length, rows)
}

fn table3_rows(n: i64, a1: i64, a2: i64, c: i64) -> Rows {
    let (x, y) = (a1 - c, a2 - c);
    let r = q(n - (a1 + a2 - c));
    let h = p(n - 1);
    let rows = vec![
        TableRow::same("0", 0, 1),
        TableRow::same("2^{n-1}", h, r - 1),
        // frequencies of the two single-side rows are exchanged in the reference
        TableRow::amended(
            "2^{n-1}-2^{|A_2|-1}",
            (h - p(a2 - 1), r * (q(x) - 1)),
            (h - p(a2 - 1), r * (q(y) - 1)),
        ),
        TableRow::amended(
            "2^{n-1}-2^{|A_1|-1}",
            (h - p(a1 - 1), r * (q(y) - 1)),
            (h - p(a1 - 1), r * (q(x) - 1)),
        ),
        TableRow::same(
            "2^{n-1}-2^{|A_1|-1}-2^{|A_2|-1}",
            h - p(a1 - 1) - p(a2 - 1),
            r * (q(x) - 1) * (q(y) - 1),
        ),
        TableRow::same(
            "2^{n-1}-2^{|A_1|-1}-2^{|A_2|-1}+2^{|A_1∩A_2|-1}",
            h - p(a1 - 1) - p(a2 - 1) + p(c - 1),
            r * (q(c) - 1) * q(x + y),
        ),
    ];
    (q(n) - q(a1) - q(a2) + q(c), q(n) - q(a1) - q(a2) - q(c), rows)
}

fn table4_rows(n: i64, m: i64, b1: i64, b2: i64, c: i64) -> Rows {
    let (x, y) = (b1 - c, b2 - c);
    let u = b1 + b2 - c;
    let r = q(n - m - u);
    let r1 = q(n - 1 - u);
    let even = r1 - r;
    let h = p(n - 1);
    let hm = h - p(m - 1);
    let rows = vec![
        TableRow::same("0", 0, 1),
        TableRow::same("2^{n-1}", h, r - 1),
        TableRow::same("2^{n-1}-2^{|B_1|-1}", h - p(b1 - 1), r * (q(x) - 1)),
        TableRow::same("2^{n-1}-2^{|B_2|-1}", h - p(b2 - 1), r * (q(y) - 1)),
        TableRow::same(
            "2^{n-1}-2^{|B_1|-1}-2^{|B_2|-1}",
            h - p(b1 - 1) - p(b2 - 1),
            r * (q(x) - 1) * (q(y) - 1),
        ),
        TableRow::same(
            "2^{n-1}-2^{|B_1|-1}-2^{|B_2|-1}+2^{|B_1∩B_2|-1}",
            h - p(b1 - 1) - p(b2 - 1) + p(c - 1),
            r * (q(c) - 1) * q(x + y),
        ),
        TableRow::same(
            "2^{n-1}-2^{m-1}+1-2^{|B_1|}-2^{|B_2|}+2^{|B_1∩B_2|}",
            hm + p(0) - p(b1) - p(b2) + p(c),
            r1,
        ),
        TableRow::same(
            "2^{n-1}-2^{m-1}+1-2^{|B_2|}-2^{|B_1|-1}+2^{|B_1∩B_2|}",
            hm + p(0) - p(b2) - p(b1 - 1) + p(c),
            r1 * (q(x) - 1),
        ),
        TableRow::same(
            "2^{n-1}-2^{m-1}+1-2^{|B_1|}-2^{|B_2|-1}+2^{|B_1∩B_2|}",
            hm + p(0) - p(b1) - p(b2 - 1) + p(c),
            r1 * (q(y) - 1),
        ),
        TableRow::same(
            "2^{n-1}-2^{m-1}+1-2^{|B_1|-1}-2^{|B_2|-1}+2^{|B_1∩B_2|}",
            hm + p(0) - p(b1 - 1) - p(b2 - 1) + p(c),
            r1 * (q(x) - 1) * (q(y) - 1),
        ),
        TableRow::same(
            "2^{n-1}-2^{m-1}+1-2^{|B_1|-1}-2^{|B_2|-1}+2^{|B_1∩B_2|-1}",
            hm + p(0) - p(b1 - 1) - p(b2 - 1) + p(c - 1),
            r1 * (q(c) - 1) * q(x + y),
        ),
        TableRow::same("2^{n-1}-2^{m-1}", hm, even),
        TableRow::same("2^{n-1}-2^{m-1}-2^{|B_1|-1}", hm - p(b1 - 1), even * (q(x) - 1)),
        // reference frequency reads 2^{|B_2\B_2|}-1 = 0
        TableRow::amended(
            "2^{n-1}-2^{m-1}-2^{|B_2|-1}",
            (hm - p(b2 - 1), 0),
            (hm - p(b2 - 1), even * (q(y) - 1)),
        ),
        TableRow::same(
            "2^{n-1}-2^{m-1}-2^{|B_1|-1}-2^{|B_2|-1}",
            hm - p(b1 - 1) - p(b2 - 1),
            r * (q(m - 1) - 1) * (q(x) - 1) * (q(y) - 1),
        ),
        TableRow::same(
            "2^{n-1}-2^{m-1}-2^{|B_1|-1}-2^{|B_2|-1}+2^{|B_1∩B_2|-1}",
            hm - p(b1 - 1) - p(b2 - 1) + p(c - 1),
            r * (q(m - 1) - 1) * (q(c) - 1) * q(x + y),
        ),
    ];
    (
        q(n) - q(m) - q(b1) - q(b2) + q(c) + 1,
        q(n) - q(b1) - q(b2) - q(c),
        rows,
    )
}

fn table5_rows(n: i64, a: i64) -> Rows {
    let length = q(n) - 1;
    let h = p(n - 1);
    let rows = vec![
        TableRow::same("0", 0, 1),
        TableRow::same("2^{n-1}", h, q(n) - 1),
        TableRow::same("2^{|A|}-1", p(a) - p(0), 1),
        TableRow::same("2^{n-1}-1+2^{|A|}", h - p(0) + p(a), q(n - a) - 1),
        TableRow::same("2^{n-1}-1", h - p(0), q(n) - q(n - a)),
    ];
    (length, length, rows)
}

fn table6_rows(n: i64, m: i64, b: i64) -> Rows {
    let length = q(n) - 1;
    let h = p(n - 1);
    let two = p(1);
    let rows = vec![
        TableRow::same("0", 0, 1),
        TableRow::same("2^{n-1}", h, q(n) - 1 + q(n - 1) - q(n - 1 - b)),
        TableRow::same("2^m+2^{|B|}-2", p(m) + p(b) - two, 1),
        TableRow::same("2^{n-1}-2+2^m+2^{|B|}", h - two + p(m) + p(b), q(n - m - b) - 1),
        TableRow::same("2^{n-1}-2+2^m", h - two + p(m), q(n - m) - q(n - m - b)),
        TableRow::same("2^{n-1}-2^{|B|}", h - p(b), q(n - 1 - b)),
        TableRow::same("2^{n-1}-2+2^{|B|}", h - two + p(b), q(n - 1 - b) - q(n - m - b)),
        TableRow::same(
            "2^{n-1}-2",
            h - two,
            q(n - 1) - q(n - 1 - b) - q(n - m) + q(n - m - b),
        ),
    ];
    (length, length, rows)
}

fn table7_rows(n: i64, a1: i64, a2: i64, c: i64) -> Rows {
    let length = q(n) - 1;
    let (x, y) = (a1 - c, a2 - c);
    let r = q(n - (a1 + a2 - c));
    let h = p(n - 1);
    let one = p(0);
    let rows = vec![
        TableRow::same("0", 0, 1),
        TableRow::same("2^{n-1}", h, q(n) - 1),
        TableRow::same(
            "2^{|A_1|}+2^{|A_2|}-2^{|A_1∩A_2|}-1",
            p(a1) + p(a2) - p(c) - one,
            1,
        ),
        TableRow::same(
            "2^{n-1}+2^{|A_1|}+2^{|A_2|}-2^{|A_1∩A_2|}-1",
            h + p(a1) + p(a2) - p(c) - one,
            r - 1,
        ),
        // frequencies of the two single-side rows are exchanged in the reference
        TableRow::amended(
            "2^{n-1}+2^{|A_1|}-2^{|A_1∩A_2|}-1",
            (h + p(a1) - p(c) - one, r * (q(x) - 1)),
            (h + p(a1) - p(c) - one, r * (q(y) - 1)),
        ),
        TableRow::amended(
            "2^{n-1}+2^{|A_2|}-2^{|A_1∩A_2|}-1",
            (h + p(a2) - p(c) - one, r * (q(y) - 1)),
            (h + p(a2) - p(c) - one, r * (q(x) - 1)),
        ),
        TableRow::same(
            "2^{n-1}-2^{|A_1∩A_2|}-1",
            h - p(c) - one,
            r * (q(x) - 1) * (q(y) - 1),
        ),
        TableRow::same("2^{n-1}-1", h - one, r * (q(c) - 1) * q(x + y)),
    ];
    (length, length, rows)
}

fn table8_rows(n: i64, m: i64, b1: i64, b2: i64, c: i64) -> Rows {
    let length = q(n) - 1;
    let (x, y) = (b1 - c, b2 - c);
    let u = b1 + b2 - c;
    let r = q(n - m - u);
    let r1 = q(n - 1 - u);
    let even = r1 - r;
    let h = p(n - 1);
    let two = p(1);
    let hm = h + p(m) - two;
    let rows = vec![
        TableRow::same("0", 0, 1),
        TableRow::same(
            "2^m-2+2^{|B_1|}+2^{|B_2|}-2^{|B_1∩B_2|}",
            p(m) - two + p(b1) + p(b2) - p(c),
            1,
        ),
        TableRow::same(
            "2^{n-1}+2^m-2+2^{|B_1|}+2^{|B_2|}-2^{|B_1∩B_2|}",
            hm + p(b1) + p(b2) - p(c),
            r - 1,
        ),
        TableRow::same(
            "2^{n-1}+2^m-2+2^{|B_2|}-2^{|B_1∩B_2|}",
            hm + p(b2) - p(c),
            r * (q(x) - 1),
        ),
        TableRow::same(
            "2^{n-1}+2^m-2+2^{|B_1|}-2^{|B_1∩B_2|}",
            hm + p(b1) - p(c),
            r * (q(y) - 1),
        ),
        TableRow::same(
            "2^{n-1}+2^m-2-2^{|B_1∩B_2|}",
            hm - p(c),
            r * (q(x) - 1) * (q(y) - 1),
        ),
        TableRow::same("2^{n-1}+2^m-2", hm, r * (q(c) - 1) * q(x + y)),
        TableRow::same(
            "2^{n-1}-2^{|B_1|}-2^{|B_2|}+2^{|B_1∩B_2|}",
            h - p(b1) - p(b2) + p(c),
            r1,
        ),
        // frequencies of the two single-side rows are exchanged in the reference
        TableRow::amended(
            "2^{n-1}-2^{|B_2|}+2^{|B_1∩B_2|}",
            (h - p(b2) + p(c), r1 * (q(y) - 1)),
            (h - p(b2) + p(c), r1 * (q(x) - 1)),
        ),
        TableRow::amended(
            "2^{n-1}-2^{|B_1|}+2^{|B_1∩B_2|}",
            (h - p(b1) + p(c), r1 * (q(x) - 1)),
            (h - p(b1) + p(c), r1 * (q(y) - 1)),
        ),
        // the reference weight carries two spurious half terms
        TableRow::amended(
            "2^{n-1}+2^{|B_1∩B_2|}-2^{|B_1|-1}-2^{|B_2|-1}",
            (h + p(c) - p(b1 - 1) - p(b2 - 1), r1 * (q(x) - 1) * (q(y) - 1)),
            (h + p(c), r1 * (q(x) - 1) * (q(y) - 1)),
        ),
        TableRow::same("2^{n-1}", h, q(n) - 1 + r1 * (q(c) - 1) * q(x + y)),
        TableRow::same(
            "2^{n-1}-2+2^{|B_1|}+2^{|B_2|}-2^{|B_1∩B_2|}",
            h - two + p(b1) + p(b2) - p(c),
            even,
        ),
        TableRow::same(
            "2^{n-1}-2+2^{|B_2|}-2^{|B_1∩B_2|}",
            h - two + p(b2) - p(c),
            even * (q(x) - 1),
        ),
        // reference frequency reads 2^{|B_2\B_2|}-1 = 0
        TableRow::amended(
            "2^{n-1}-2+2^{|B_1|}-2^{|B_1∩B_2|}",
            (h - two + p(b1) - p(c), 0),
            (h - two + p(b1) - p(c), even * (q(y) - 1)),
        ),
        TableRow::same(
            "2^{n-1}-2-2^{|B_1∩B_2|}",
            h - two - p(c),
            r * (q(m - 1) - 1) * (q(x) - 1) * (q(y) - 1),
        ),
        TableRow::same(
            "2^{n-1}-2",
            h - two,
            r * q(x + y) * (q(m - 1) - 1) * (q(c) - 1),
        ),
    ];
    (length, length, rows)
}

pub fn table1(n: usize, a: usize) -> Result<TableReport> {
    TableCase::T1 { n, a }.evaluate()
}

pub fn table2(n: usize, m: usize, b: usize) -> Result<TableReport> {
    TableCase::T2 { n, m, b }.evaluate()
}

pub fn table3(n: usize, a1: usize, a2: usize, a12: usize) -> Result<TableReport> {
    TableCase::T3 { n, a1, a2, a12 }.evaluate()
}

pub fn table4(n: usize, m: usize, b1: usize, b2: usize, b12: usize) -> Result<TableReport> {
    TableCase::T4 { n, m, b1, b2, b12 }.evaluate()
}

pub fn table5(n: usize, a: usize) -> Result<TableReport> {
    TableCase::T5 { n, a }.evaluate()
}

pub fn table6(n: usize, m: usize, b: usize) -> Result<TableReport> {
    TableCase::T6 { n, m, b }.evaluate()
}

pub fn table7(n: usize, a1: usize, a2: usize, a12: usize) -> Result<TableReport> {
    TableCase::T7 { n, a1, a2, a12 }.evaluate()
}

pub fn table8(n: usize, m: usize, b1: usize, b2: usize, b12: usize) -> Result<TableReport> {
    TableCase::T8 { n, m, b1, b2, b12 }.evaluate()
}
