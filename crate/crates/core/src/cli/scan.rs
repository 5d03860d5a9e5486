//! Sweeps over one- and two-ideal families of `H(m, n)`.
//!
//! Families are enumerated up to relabelling inside each level: a family is
//! fixed by the sizes of its `A` and `B` parts and of the overlap, and pairs
//! are listed once with `|A_1| <= |A_2|` (resp. `|B_1| <= |B_2|`).

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::certify;
use crate::code::{analytic_code, oracle_codebook, CodeKind, CodeSpec};
use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::poset::{IdealFamily, Poset};

/// Default ceiling on `n` for the exhaustive minimality column.
pub const MINIMALITY_CAP: usize = 8;

pub const CSV_HEADER: [&str; 15] = [
    "m",
    "n",
    "|A1|",
    "|B1|",
    "|A2|",
    "|B2|",
    "|∩|",
    "kind",
    "length",
    "k",
    "d",
    "is_griesmer",
    "griesmer_optimal",
    "minimal",
    "ab_violating",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanFilter {
    Griesmer,
    Minimal,
    AbViolating,
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub n_max: usize,
    pub kinds: Vec<CodeKind>,
    pub filters: Vec<ScanFilter>,
    /// Cross-check every analytic distribution against enumeration.
    pub oracle: bool,
    pub oracle_cap: usize,
    /// Largest `n` whose rows carry an exhaustive minimality verdict.
    pub minimality_n_max: usize,
}

/// Sizes of a family of one or two ideals `A_i ∪ B_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FamilyShape {
    pub n: usize,
    pub m: usize,
    pub kind: CodeKind,
    pub a1: usize,
    pub b1: usize,
    pub second: Option<(usize, usize)>,
    /// `|I_1 ∩ I_2|`.
    pub intersection: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub m: usize,
    pub n: usize,
    pub a1: usize,
    pub b1: usize,
    pub a2: Option<usize>,
    pub b2: Option<usize>,
    pub intersection: Option<usize>,
    pub kind: CodeKind,
    pub length: u64,
    pub k: u32,
    pub d: u64,
    pub is_griesmer: bool,
    pub griesmer_optimal: bool,
    pub minimal: Option<bool>,
    pub ab_violating: Option<bool>,
}

impl ScanRow {
    fn passes(&self, filter: ScanFilter) -> bool {
        match filter {
            ScanFilter::Griesmer => self.is_griesmer,
            ScanFilter::Minimal => self.minimal == Some(true),
            ScanFilter::AbViolating => self.ab_violating == Some(true),
        }
    }

    fn csv_record(&self) -> Vec<String> {
        let opt = |v: Option<usize>| v.map_or(String::new(), |x| x.to_string());
        let flag = |v: Option<bool>| v.map_or(String::new(), |x| x.to_string());
        vec![
            self.m.to_string(),
            self.n.to_string(),
            self.a1.to_string(),
            self.b1.to_string(),
            opt(self.a2),
            opt(self.b2),
            opt(self.intersection),
            self.kind.to_string(),
            self.length.to_string(),
            self.k.to_string(),
            self.d.to_string(),
            self.is_griesmer.to_string(),
            self.griesmer_optimal.to_string(),
            flag(self.minimal),
            flag(self.ab_violating),
        ]
    }
}

impl FamilyShape {
    /// The family with every part placed at the lowest indices of its level.
    pub fn ideals(&self) -> Vec<SubsetMask> {
        let lower = SubsetMask::full(self.m);
        let block = |lo: usize, len: usize| {
            if len == 0 {
                SubsetMask::EMPTY
            } else {
                SubsetMask::range(lo, lo + len - 1)
            }
        };
        match (self.second, self.intersection) {
            (None, _) => {
                if self.b1 == 0 {
                    vec![block(1, self.a1)]
                } else {
                    vec![lower.union(block(self.m + 1, self.b1))]
                }
            }
            (Some((a2, b2)), Some(inter)) => {
                if self.b1 == 0 {
                    let a12 = inter;
                    vec![block(1, self.a1), block(self.a1 - a12 + 1, a2)]
                } else {
                    let b12 = inter - self.m;
                    let lo = self.m + 1;
                    vec![
                        lower.union(block(lo, self.b1)),
                        lower.union(block(lo + self.b1 - b12, b2)),
                    ]
                }
            }
            (Some(_), None) => unreachable!("two-ideal shapes carry an intersection"),
        }
    }

    pub fn spec(&self) -> Result<CodeSpec> {
        let poset = Poset::hierarchical(self.m, self.n)?;
        let family = IdealFamily::new(&poset, self.ideals())?;
        CodeSpec::new(poset, family, self.kind)
    }
}

/// Every family shape with `n <= n_max`, sorted by `(n, m, kind, sizes)`.
pub fn shapes(n_max: usize, kinds: &[CodeKind]) -> Vec<FamilyShape> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for m in 1..=n {
            for &kind in kinds {
                let base = FamilyShape {
                    n,
                    m,
                    kind,
                    a1: 0,
                    b1: 0,
                    second: None,
                    intersection: None,
                };
                for a in 1..=m {
                    out.push(FamilyShape { a1: a, ..base });
                }
                for b in 1..=n - m {
                    out.push(FamilyShape { a1: m, b1: b, ..base });
                }
                for a12 in 0..m {
                    for a1 in a12 + 1..=m {
                        for a2 in a1..=m {
                            if a1 + a2 - a12 <= m && a1 > a12 && a2 > a12 {
                                out.push(FamilyShape {
                                    a1,
                                    second: Some((a2, 0)),
                                    intersection: Some(a12),
                                    ..base
                                });
                            }
                        }
                    }
                }
                for b12 in 0..n - m {
                    for b1 in b12 + 1..=n - m {
                        for b2 in b1..=n - m {
                            if m + b1 + b2 - b12 <= n {
                                out.push(FamilyShape {
                                    a1: m,
                                    b1,
                                    second: Some((m, b2)),
                                    intersection: Some(m + b12),
                                    ..base
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// `None` when the construction degenerates (empty defining set or dimension 0).
fn scan_shape(shape: &FamilyShape, config: &ScanConfig) -> Result<Option<ScanRow>> {
    let spec = shape.spec()?;
    let report = match analytic_code(&spec) {
        Ok(r) => r,
        Err(Error::EmptyDefiningSet) => return Ok(None),
        Err(e) => return Err(e),
    };
    if report.dimension == 0 {
        return Ok(None);
    }
    let exhaustive = shape.n <= config.minimality_n_max.min(config.oracle_cap);
    let book = if config.oracle || exhaustive {
        Some(oracle_codebook(&spec, config.oracle_cap)?)
    } else {
        None
    };
    if config.oracle {
        let oracle = book.as_ref().expect("codebook built").report()?;
        if !oracle.same_code(&report) {
            return Err(Error::Inconsistent(format!(
                "{shape:?}: analytic {report} differs from oracle {oracle}"
            )));
        }
    }
    let cert = certify(&report, if exhaustive { book.as_ref() } else { None })?;
    let (length, k, d) = report.parameters();
    Ok(Some(ScanRow {
        m: shape.m,
        n: shape.n,
        a1: shape.a1,
        b1: shape.b1,
        a2: shape.second.map(|s| s.0),
        b2: shape.second.map(|s| s.1),
        intersection: shape.intersection,
        kind: shape.kind,
        length,
        k,
        d,
        is_griesmer: cert.is_griesmer,
        griesmer_optimal: cert.griesmer_distance_optimal,
        minimal: cert.minimal_exhaustive,
        ab_violating: cert.ab_violating_minimal,
    }))
}

/// Certified rows passing every filter, in shape order.
pub fn scan(config: &ScanConfig) -> Result<Vec<ScanRow>> {
    if config.oracle && config.n_max > config.oracle_cap {
        return Err(Error::CapExceeded {
            path: "oracle",
            n: config.n_max,
            cap: config.oracle_cap,
        });
    }
    let rows: Vec<Option<ScanRow>> = shapes(config.n_max, &config.kinds)
        .par_iter()
        .map(|shape| scan_shape(shape, config))
        .collect::<Result<_>>()?;
    Ok(rows
        .into_iter()
        .flatten()
        .filter(|row| config.filters.iter().all(|&f| row.passes(f)))
        .collect())
}

pub fn write_csv(rows: &[ScanRow], out: &mut dyn Write) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Parse(format!("writing csv: {e}"));
    writer.write_record(CSV_HEADER).map_err(io)?;
    for row in rows {
        writer.write_record(row.csv_record()).map_err(io)?;
    }
    writer
        .flush()
        .map_err(|e| Error::Parse(format!("writing csv: {e}")))
}

pub fn write_text(rows: &[ScanRow], out: &mut dyn Write) -> std::io::Result<()> {
    for row in rows {
        let mut sizes = format!("|A1|={} |B1|={}", row.a1, row.b1);
        if let (Some(a2), Some(b2), Some(i)) = (row.a2, row.b2, row.intersection) {
            sizes.push_str(&format!(" |A2|={a2} |B2|={b2} |∩|={i}"));
        }
        let mut flags = Vec::new();
        if row.is_griesmer {
            flags.push("griesmer");
        }
        if row.griesmer_optimal {
            flags.push("distance-optimal");
        }
        match row.minimal {
            Some(true) => flags.push("minimal"),
            Some(false) => flags.push("not-minimal"),
            None => {}
        }
        if row.ab_violating == Some(true) {
            flags.push("ab-violating");
        }
        writeln!(
            out,
            "H({},{}) {sizes} C_{} [{}, {}, {}] {}",
            row.m,
            row.n,
            row.kind,
            row.length,
            row.k,
            row.d,
            flags.join(" ")
        )?;
    }
    Ok(())
}
