//! Griesmer arithmetic, the Ashikhmin-Barg ratio test, exhaustive minimality
//! and parameter predictions for the hierarchical families.

use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::closed_form::TableCase;
use crate::code::{CodeReport, Codebook};
use crate::error::{Error, Result};

/// `Σ_{i<k} ⌈d / 2^i⌉`.
pub fn griesmer_sum(k: u32, d: u64) -> Result<u64> {
    if k == 0 || d == 0 {
        return Err(Error::InvalidParameters(format!(
            "Griesmer sum needs k, d >= 1, got k = {k}, d = {d}"
        )));
    }
    let mut sum = 0u64;
    for i in 0..k {
        if i >= 64 || d <= 1u64 << i {
            // every remaining term is 1
            sum += u64::from(k - i);
            break;
        }
        sum += d.div_ceil(1u64 << i);
    }
    Ok(sum)
}

/// `w_min / w_max`, kept unreduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub numerator: u64,
    pub denominator: u64,
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Two distinct nonzero codewords with `wt(a + b) = wt(a) - wt(b)`, i.e. `supp(b) ⊆ supp(a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Codebook index of the covering codeword.
    pub a: usize,
    /// Codebook index of the covered codeword.
    pub b: usize,
    pub message_a: u64,
    pub message_b: u64,
    pub weight_a: u64,
    pub weight_b: u64,
    pub weight_sum: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub griesmer_sum_at_d: u64,
    pub is_griesmer: bool,
    /// The Griesmer bound rules out `[n, k, d + 1]`.
    pub griesmer_distance_optimal: bool,
    /// The Griesmer bound allows `d + 1` but rules out `d + 2`.
    pub griesmer_almost_optimal: bool,
    pub ab_ratio: Ratio,
    /// `2 w_min > w_max`.
    pub ab_sufficient: bool,
    /// `None` when no codewords were supplied.
    pub minimal_exhaustive: Option<bool>,
    pub ab_violating_minimal: Option<bool>,
    pub witness: Option<Witness>,
}

fn xor_weight(a: &[u64], b: &[u64]) -> u64 {
    a.iter().zip(b).map(|(x, y)| u64::from((x ^ y).count_ones())).sum()
}

/// Nonzero codeword indices by descending weight, ties by index.
fn weight_order(book: &Codebook) -> (Vec<usize>, Vec<u64>) {
    let weights: Vec<u64> = (0..book.len()).map(|i| book.weight(i)).collect();
    let mut order: Vec<usize> = (0..book.len()).filter(|&i| weights[i] > 0).collect();
    order.sort_by_key(|&i| (Reverse(weights[i]), i));
    (order, weights)
}

/// First violation of `wt(a + b) ≠ wt(a) - wt(b)`, scanning `a` by descending
/// weight and, for each `a`, the strictly lighter `b` by descending weight.
/// Pairs with `wt(a) <= wt(b)` cannot satisfy the equality and are skipped.
pub fn minimality_witness(book: &Codebook) -> Option<Witness> {
    let (order, weights) = weight_order(book);
    order.par_iter().find_map_first(|&a| {
        let wa = weights[a];
        let start = order.partition_point(|&j| weights[j] >= wa);
        let word_a = book.codeword(a);
        order[start..].iter().find_map(|&b| {
            let wb = weights[b];
            let sum = xor_weight(word_a, book.codeword(b));
            (sum == wa - wb).then(|| Witness {
                a,
                b,
                message_a: book.message(a),
                message_b: book.message(b),
                weight_a: wa,
                weight_b: wb,
                weight_sum: sum,
            })
        })
    })
}

/// All `(wt(a), wt(b))` over violating pairs.
pub fn violation_weight_pairs(book: &Codebook) -> BTreeSet<(u64, u64)> {
    let (order, weights) = weight_order(book);
    order
        .par_iter()
        .map(|&a| {
            let wa = weights[a];
            let start = order.partition_point(|&j| weights[j] >= wa);
            let word_a = book.codeword(a);
            order[start..]
                .iter()
                .filter(|&&b| xor_weight(word_a, book.codeword(b)) == wa - weights[b])
                .map(|&b| (wa, weights[b]))
                .collect::<BTreeSet<_>>()
        })
        .reduce(BTreeSet::new, |mut x, y| {
            x.extend(y);
            x
        })
}

/// Griesmer flags and the ratio test; minimality when a codebook is given.
pub fn certify(report: &CodeReport, codebook: Option<&Codebook>) -> Result<Certificate> {
    if report.dimension == 0 {
        return Err(Error::ZeroDimension);
    }
    let (n, k, d) = report.parameters();
    let at_d = griesmer_sum(k, d)?;
    let at_d1 = griesmer_sum(k, d + 1)?;
    let at_d2 = griesmer_sum(k, d + 2)?;
    let ab_sufficient = 2 * report.w_min > report.w_max;
    let (minimal_exhaustive, witness) = match codebook {
        Some(book) => {
            if book.len() as u64 != 1u64 << k || book.length() as u64 != n {
                return Err(Error::Inconsistent(format!(
                    "codebook with {} words of length {} does not match {report}",
                    book.len(),
                    book.length()
                )));
            }
            let witness = minimality_witness(book);
            (Some(witness.is_none()), witness)
        }
        None => (None, None),
    };
    Ok(Certificate {
        griesmer_sum_at_d: at_d,
        is_griesmer: n == at_d,
        griesmer_distance_optimal: at_d1 > n,
        griesmer_almost_optimal: at_d1 <= n && at_d2 > n,
        ab_ratio: Ratio {
            numerator: report.w_min,
            denominator: report.w_max,
        },
        ab_sufficient,
        minimal_exhaustive,
        ab_violating_minimal: minimal_exhaustive.map(|m| m && !ab_sufficient),
        witness,
    })
}

/// [`certify`] with minimality required.
pub fn certify_exhaustive(report: &CodeReport, codebook: Option<&Codebook>) -> Result<Certificate> {
    let book = codebook.ok_or(Error::MissingCodewords)?;
    certify(report, Some(book))
}

/// `2 w_half = w_full` between two named weights of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WeightIdentity {
    pub label: &'static str,
    pub half: u64,
    pub full: u64,
}

impl WeightIdentity {
    /// The witness realizes the identity: `wt(a) = full`, `wt(b) = wt(a + b) = half`.
    pub fn matches(&self, witness: &Witness) -> bool {
        witness.weight_a == self.full && witness.weight_b == self.half && witness.weight_sum == self.half
    }
}

/// Claimed properties of a realized code; `None` means no claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub family: &'static str,
    #[serde(skip)]
    pub case: TableCase,
    pub parameters: Option<(u64, u32, u64)>,
    pub griesmer: Option<bool>,
    pub distance_optimal: Option<bool>,
    pub almost_optimal: Option<bool>,
    pub minimal: Option<bool>,
    pub ab_violating: Option<bool>,
    pub identity: Option<WeightIdentity>,
}

impl Prediction {
    fn new(family: &'static str, case: TableCase) -> Self {
        Prediction {
            family,
            case,
            parameters: None,
            griesmer: None,
            distance_optimal: None,
            almost_optimal: None,
            minimal: None,
            ab_violating: None,
            identity: None,
        }
    }

    /// Claims contradicted by the report and certificate, as readable lines.
    pub fn mismatches(&self, report: &CodeReport, cert: &Certificate) -> Vec<String> {
        let mut out = Vec::new();
        let mut check = |name: &str, claim: Option<bool>, seen: Option<bool>| {
            if let (Some(c), Some(s)) = (claim, seen) {
                if c != s {
                    out.push(format!("{name}: claimed {c}, observed {s}"));
                }
            }
        };
        check("griesmer", self.griesmer, Some(cert.is_griesmer));
        check(
            "distance_optimal",
            self.distance_optimal,
            Some(cert.griesmer_distance_optimal),
        );
        check("almost_optimal", self.almost_optimal, Some(cert.griesmer_almost_optimal));
        check("minimal", self.minimal, cert.minimal_exhaustive);
        check(
            "ab_violating",
            self.ab_violating,
            cert.ab_violating_minimal,
        );
        if let Some(p) = self.parameters {
            if p != report.parameters() {
                out.push(format!(
                    "parameters: claimed {:?}, observed {:?}",
                    p,
                    report.parameters()
                ));
            }
        }
        out
    }
}

fn pow2(e: usize) -> u64 {
    1u64 << e
}

/// One ideal `[m] ∪ B` of `H(m, n)`, code `C_D`.
pub fn classify_thm61(m: usize, n: usize, b: usize) -> Result<Prediction> {
    let case = TableCase::T2 { n, m, b };
    case.validate()?;
    let mut p = Prediction::new("thm61", case);
    if b == 1 && m >= 3 && m < n {
        p.griesmer = Some(true);
        p.parameters = Some((pow2(n) - 1 - pow2(m), n as u32, pow2(n - 1) - 1 - pow2(m - 1)));
    } else if m == 1 && b == n - 1 {
        p.griesmer = Some(true);
        p.parameters = Some((pow2(n - 1) - 1, n as u32 - 1, pow2(n - 2)));
    }
    // w_1 .. w_6 in doubled units so that w_3 and w_4 stay exact at m = 1
    let w = |e: i64| -> i64 { 1i64 << (e + 1) };
    let (n_, m_, b_) = (n as i64, m as i64, b as i64);
    let w1 = w(n_ - 1);
    let w3 = w1 + 2 - w(m_ - 1) - w(b_);
    let w4 = w1 + 2 - w(m_ - 1) - w(b_ - 1);
    let w5 = w1 - w(m_ - 1);
    let exceptions: [(usize, usize, &'static str, i64, i64); 4] = [
        (1, n - 1, "2w_4 = w_1", w4, w1),
        (1, n.saturating_sub(2), "2w_3 = w_1", w3, w1),
        (2, n.saturating_sub(2), "2w_3 = w_5", w3, w5),
        (n - 1, 1, "2w_5 = w_1", w5, w1),
    ];
    let hit = exceptions.iter().find(|&&(em, eb, ..)| (em, eb) == (m, b));
    p.minimal = Some(hit.is_none());
    p.identity = hit.map(|&(_, _, label, half, full)| WeightIdentity {
        label,
        half: (half / 2) as u64,
        full: (full / 2) as u64,
    });
    Ok(p)
}

/// Two ideals `[m] ∪ {i}`, `[m] ∪ {j}` of `H(m, n)`, code `C_D`.
pub fn classify_thm62(m: usize, n: usize) -> Result<Prediction> {
    if !(1 < m && m + 2 <= n) {
        return Err(Error::InvalidParameters(format!(
            "need 1 < m <= n - 2, got m = {m}, n = {n}"
        )));
    }
    let case = TableCase::T4 { n, m, b1: 1, b2: 1, b12: 0 };
    case.validate()?;
    let mut p = Prediction::new("thm62", case);
    p.parameters = Some((pow2(n) - pow2(m) - 2, n as u32, pow2(n - 1) - pow2(m - 1) - 2));
    p.distance_optimal = Some(true);
    if n >= 4 {
        p.minimal = Some(true);
    }
    Ok(p)
}

/// One ideal `[m] ∪ B` of `H(m, n)`, code `C_f`.
pub fn classify_thm63(m: usize, n: usize, b: usize) -> Result<Prediction> {
    let case = TableCase::T6 { n, m, b };
    case.validate()?;
    let mut p = Prediction::new("thm63", case);
    // at n = 2 the claimed distance is 0
    if m + 1 == n && b == 1 && n >= 3 {
        p.almost_optimal = Some(true);
        p.parameters = Some((pow2(n) - 1, n as u32 + 1, pow2(n - 1) - 2));
    }
    if m + b == n && n >= 5 && m.max(b) + 2 <= n {
        p.minimal = Some(true);
        p.ab_violating = Some(true);
    }
    Ok(p)
}

/// Two ideals `[m] ∪ B_1`, `[m] ∪ B_2` with disjoint `B_i` filling `V`, code `C_f`.
pub fn classify_thm64(m: usize, n: usize, b1: usize, b2: usize) -> Result<Prediction> {
    if !(b1 >= 1 && b2 >= 1 && m + b1 + b2 == n && b1.max(b2) + 2 <= n) {
        return Err(Error::InvalidParameters(format!(
            "need |B_1| + |B_2| = n - m and max |B_i| <= n - 2, got m = {m}, n = {n}, {b1}, {b2}"
        )));
    }
    let case = TableCase::T8 { n, m, b1, b2, b12: 0 };
    case.validate()?;
    let mut p = Prediction::new("thm64", case);
    p.parameters = Some((
        pow2(n) - 1,
        n as u32 + 1,
        pow2(m) + pow2(b1) + pow2(b2) - 3,
    ));
    p.minimal = Some(true);
    p.ab_violating = Some(true);
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::Placement;
    use crate::code::{analytic_code, oracle_codebook};

    #[test]
    fn griesmer_sums() {
        assert_eq!(griesmer_sum(5, 11).unwrap(), 23);
        assert_eq!(griesmer_sum(3, 4).unwrap(), 7);
        assert_eq!(griesmer_sum(1, 17).unwrap(), 17);
        assert_eq!(griesmer_sum(5, 12).unwrap(), 24);
        assert_eq!(griesmer_sum(4, 5).unwrap(), 11);
        assert_eq!(griesmer_sum(40, 3).unwrap(), 3 + 2 + 38);
        assert!(griesmer_sum(0, 3).is_err());
        assert!(griesmer_sum(3, 0).is_err());
    }

    fn certified(case: TableCase) -> (CodeReport, Certificate) {
        let spec = case.witness(Placement::Low).unwrap();
        let book = oracle_codebook(&spec, 14).unwrap();
        let report = book.report().unwrap();
        let cert = certify(&report, Some(&book)).unwrap();
        (report, cert)
    }

    #[test]
    fn griesmer_code_certificate() {
        let (report, cert) = certified(TableCase::T2 { n: 5, m: 3, b: 1 });
        assert_eq!(report.parameters(), (23, 5, 11));
        assert!(cert.is_griesmer && cert.griesmer_distance_optimal);
        assert!(!cert.griesmer_almost_optimal);
    }

    #[test]
    fn non_griesmer_gap() {
        let (report, cert) = certified(TableCase::T2 { n: 5, m: 2, b: 2 });
        assert_eq!(report.parameters(), (25, 5, 11));
        assert!(!cert.is_griesmer);
        assert!(!cert.griesmer_distance_optimal);
        assert!(cert.griesmer_almost_optimal);
    }

    #[test]
    fn ab_ratio_below_half() {
        let (report, cert) = certified(TableCase::T6 { n: 5, m: 2, b: 3 });
        assert_eq!(report.parameters(), (31, 6, 8));
        assert_eq!(cert.ab_ratio.to_string(), "8/22");
        assert!(!cert.ab_sufficient);
        // c(0,{1,2}) = c(1,{1}) + c(1,{2}), both summands of weight 8
        assert_eq!(cert.minimal_exhaustive, Some(false));
        assert_eq!(cert.ab_violating_minimal, Some(false));
        let w = cert.witness.unwrap();
        assert_eq!((w.weight_a, w.weight_b, w.weight_sum), (16, 8, 8));
    }

    #[test]
    fn ab_violating_minimal_code() {
        let (_, cert) = certified(TableCase::T6 { n: 6, m: 3, b: 3 });
        assert!(!cert.ab_sufficient);
        assert_eq!(cert.minimal_exhaustive, Some(true));
        assert_eq!(cert.ab_violating_minimal, Some(true));
        assert!(cert.witness.is_none());
    }

    #[test]
    fn witness_is_a_real_violation() {
        let spec = TableCase::T2 { n: 5, m: 1, b: 3 }.witness(Placement::Low).unwrap();
        let book = oracle_codebook(&spec, 14).unwrap();
        let w = minimality_witness(&book).unwrap();
        assert_ne!(w.a, w.b);
        assert!(w.weight_a > w.weight_b);
        assert_eq!(xor_weight(book.codeword(w.a), book.codeword(w.b)), w.weight_sum);
        assert_eq!(w.weight_sum, w.weight_a - w.weight_b);
        assert!(violation_weight_pairs(&book).contains(&(w.weight_a, w.weight_b)));
    }

    #[test]
    fn exhaustive_needs_codewords() {
        let spec = TableCase::T2 { n: 4, m: 2, b: 1 }.witness(Placement::Low).unwrap();
        let report = analytic_code(&spec).unwrap();
        assert_eq!(certify_exhaustive(&report, None).unwrap_err(), Error::MissingCodewords);
        assert_eq!(certify(&report, None).unwrap().minimal_exhaustive, None);
    }

    #[test]
    fn classifier_claims() {
        let p = classify_thm61(3, 5, 1).unwrap();
        assert_eq!(p.griesmer, Some(true));
        assert_eq!(p.parameters, Some((23, 5, 11)));
        let p = classify_thm61(3, 4, 1).unwrap();
        assert_eq!(p.minimal, Some(false));
        assert_eq!(p.identity.unwrap().label, "2w_5 = w_1");
        assert_eq!(classify_thm61(2, 6, 2).unwrap().minimal, Some(true));
        assert_eq!(
            classify_thm62(2, 5).unwrap().parameters,
            Some((26, 5, 12))
        );
        assert!(classify_thm62(1, 5).is_err());
        assert_eq!(classify_thm63(4, 5, 1).unwrap().almost_optimal, Some(true));
        assert_eq!(classify_thm63(2, 5, 3).unwrap().ab_violating, Some(true));
        assert_eq!(classify_thm64(2, 6, 2, 2).unwrap().parameters, Some((63, 7, 9)));
        assert_eq!(classify_thm64(1, 5, 2, 2).unwrap().parameters, Some((31, 6, 7)));
    }
}
