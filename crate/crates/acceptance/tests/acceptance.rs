//! Acceptance criteria 1-10, one PASS/FAIL line each.
//!
//! Every criterion is evaluated as stated; a failing criterion prints the
//! offending instances and the process exits nonzero.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use posetcodes::analysis::{
    certify, classify_thm61, griesmer_sum, Certificate, WeightIdentity,
};
use posetcodes::cli::verify::{run_fixtures, VerifyConfig};
use posetcodes::closed_form::{table2, table6, Placement, TableCase};
use posetcodes::code::{oracle_codebook, Codebook, DEFAULT_ORACLE_CAP};
use posetcodes::genfun::{eval_direct, eval_hierarchical, FamilyEvaluator};
use posetcodes::{CodeKind, CodeReport, CodeSpec, IdealFamily, Poset, SubsetMask};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    notes: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict { notes: Vec::new() }
    }

    fn require(&mut self, ok: bool, note: impl FnOnce() -> String) {
        if !ok {
            self.notes.push(note());
        }
    }

    fn within(&mut self, started: Instant, limit: Duration) {
        let spent = started.elapsed();
        self.require(spent < limit, || format!("took {spent:?}, limit {limit:?}"));
    }
}

/// Every enumerated code, for the structural sweep.
#[derive(Default)]
struct Collected {
    codes: Vec<(String, CodeReport, Codebook, Certificate)>,
}

impl Collected {
    fn certified(&mut self, label: String, spec: &CodeSpec) -> (CodeReport, Certificate) {
        let book = oracle_codebook(spec, DEFAULT_ORACLE_CAP).expect("enumerable");
        let report = book.report().expect("report");
        let cert = certify(&report, Some(&book)).expect("certificate");
        self.codes.push((label, report.clone(), book, cert.clone()));
        (report, cert)
    }
}

fn set(e: &[usize]) -> SubsetMask {
    SubsetMask::from_elements(e.iter().copied())
}

fn hier_spec(m: usize, n: usize, gens: &[&[usize]], kind: CodeKind) -> CodeSpec {
    let poset = Poset::hierarchical(m, n).unwrap();
    let family = IdealFamily::from_generators(&poset, gens.iter().map(|g| set(g))).unwrap();
    CodeSpec::new(poset, family, kind).unwrap()
}

fn criterion1(all: &mut Collected) -> Verdict {
    let mut v = Verdict::new();
    let started = Instant::now();
    let spec = hier_spec(2, 5, &[&[1, 3, 4]], CodeKind::D);
    let (oracle, _) = all.certified("ex65".into(), &spec);
    let table = table2(5, 2, 2).unwrap().report().unwrap();
    let enumerator = "1+4z^11+6z^12+12z^13+8z^14+z^16";
    for (path, r) in [("oracle", &oracle), ("table2(5,2,2)", &table)] {
        v.require(r.parameters() == (25, 5, 11), || format!("{path}: {r}"));
        v.require(r.distribution.enumerator() == enumerator, || {
            format!("{path}: {}", r.distribution.enumerator())
        });
    }
    v.within(started, Duration::from_secs(1));
    v
}

fn criterion2(all: &mut Collected) -> Verdict {
    let mut v = Verdict::new();
    let started = Instant::now();
    let spec = hier_spec(2, 5, &[&[1, 3, 4, 5]], CodeKind::F);
    let (oracle, cert) = all.certified("ex66".into(), &spec);
    v.require(oracle.parameters() == (31, 6, 8) && oracle.w_max == 22, || {
        format!("{oracle}, w_max {}", oracle.w_max)
    });
    for (w, a) in [(8, 2), (10, 1), (16, 45), (22, 1)] {
        let seen = oracle.distribution.count(w);
        v.require(seen == a, || format!("A_{w} = {seen}, expected {a}"));
    }
    // frozen from enumeration
    for (w, a) in [(14, 7), (18, 7)] {
        let seen = oracle.distribution.count(w);
        v.require(seen == a, || format!("A_{w} = {seen}, expected {a}"));
    }
    let table = table6(5, 2, 3).unwrap().report().unwrap();
    v.require(table.same_code(&oracle), || format!("table6(5,2,3) gives {table}"));
    v.require(cert.ab_ratio.to_string() == "8/22", || format!("ratio {}", cert.ab_ratio));
    v.within(started, Duration::from_secs(1));
    let config = VerifyConfig { n_max: 5, oracle_cap: DEFAULT_ORACLE_CAP };
    let outcome = &run_fixtures(&config, Some("ex66")).unwrap()[0];
    for subject in ["ex66 A_14", "ex66 A_18"] {
        v.require(outcome.discrepancies.iter().any(|d| d.subject == subject), || {
            format!("verify does not record {subject}")
        });
    }
    v
}

fn order_matrix(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut leq = vec![vec![false; n + 1]; n + 1];
    for (i, row) in leq.iter_mut().enumerate().skip(1) {
        row[i] = true;
    }
    for &(i, j) in edges {
        leq[i][j] = true;
    }
    for k in 1..=n {
        for i in 1..=n {
            for j in 1..=n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    leq
}

fn criterion3() -> Verdict {
    let mut v = Verdict::new();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut points = 0u64;
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let mut labels: Vec<usize> = (1..=n).collect();
        labels.shuffle(&mut rng);
        let density: f64 = rng.gen_range(0.0..1.0);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(density) {
                    edges.push((labels[i], labels[j]));
                }
            }
        }
        let leq = order_matrix(n, &edges);
        let is_ideal = |s: u32| {
            (1..=n).all(|j| s >> (j - 1) & 1 == 0 || (1..=n).all(|i| !leq[i][j] || s >> (i - 1) & 1 == 1))
        };
        let ideals: Vec<u32> = (0u32..1 << n).filter(|&s| is_ideal(s)).collect();
        let poset = Poset::from_covers(n, &edges).unwrap();
        let t = ideals.len();
        for i in 0..t {
            for j in i..t {
                for k in j..t {
                    let members = [ideals[i], ideals[j], ideals[k]];
                    let family = IdealFamily::new(&poset, members.map(SubsetMask::from_bits)).unwrap();
                    let collection: Vec<SubsetMask> = (0u32..1 << n)
                        .filter(|&s| is_ideal(s) && members.iter().any(|&m| s & !m == 0))
                        .map(SubsetMask::from_bits)
                        .collect();
                    let evaluator = FamilyEvaluator::new(&poset, &family).unwrap();
                    for u in 0u32..1 << n {
                        let u = SubsetMask::from_bits(u);
                        let (a, b) = (evaluator.eval(u), eval_direct(&collection, u));
                        points += 1;
                        v.require(a == b, || format!("n = {n}, {edges:?}, {family}, u = {u}: {a} != {b}"));
                    }
                }
            }
        }
    }
    v.require(points > 0, || "no points evaluated".into());
    v
}

fn criterion4() -> Verdict {
    let mut v = Verdict::new();
    let started = Instant::now();
    for n in 1..=8 {
        for m in 1..=n {
            let poset = Poset::hierarchical(m, n).unwrap();
            let shape = poset.shape().unwrap();
            let lower = SubsetMask::full(m);
            let upper = SubsetMask::full(n).difference(lower);
            let mut ideals: Vec<(SubsetMask, SubsetMask)> =
                lower.submasks().map(|a| (a, SubsetMask::EMPTY)).collect();
            ideals.extend(upper.submasks().filter(|b| !b.is_empty()).map(|b| (lower, b)));
            for (a, b) in ideals {
                let collection: Vec<SubsetMask> = (0u32..1 << n)
                    .map(SubsetMask::from_bits)
                    .filter(|s| s.is_subset(a.union(b)))
                    .filter(|s| s.is_subset(lower) || lower.is_subset(*s))
                    .collect();
                for u in 0u32..1 << n {
                    let u = SubsetMask::from_bits(u);
                    let closed = eval_hierarchical(&shape, a, b, u).unwrap();
                    let direct = eval_direct(&collection, u);
                    v.require(closed == direct, || {
                        format!("H({m},{n}) A = {a} B = {b} u = {u}: {closed} != {direct}")
                    });
                }
            }
        }
    }
    v.within(started, Duration::from_secs(30));
    v
}

fn criterion5(all: &mut Collected) -> Verdict {
    let mut v = Verdict::new();
    let started = Instant::now();
    let mut flagged: BTreeMap<String, usize> = BTreeMap::new();
    for n in 2..=8 {
        for table in 1..=8u8 {
            for case in TableCase::admissible(table, n) {
                let evaluated = case.evaluate().unwrap();
                let predicted = evaluated.report().unwrap();
                for placement in [Placement::Low, Placement::High] {
                    let spec = case.witness(placement).unwrap();
                    let (oracle, _) = all.certified(format!("{case:?} {placement:?}"), &spec);
                    v.require(predicted.same_code(&oracle), || {
                        format!("{case:?} {placement:?}: table {predicted}, oracle {oracle}")
                    });
                    let bits = spec.message_bits() as u32;
                    for d in evaluated.discrepancies(&oracle, bits) {
                        let kernel = 1i64 << (bits - oracle.dimension);
                        let attached = match d.weight {
                            None => d.observed == oracle.length as i64,
                            Some(w) => d.observed == oracle.distribution.count(w as u64) as i64 * kernel,
                        };
                        v.require(attached, || format!("{d}: observed value is not the oracle's"));
                        let explained = match d.weight {
                            None => matches!(table, 3 | 4),
                            Some(w) => evaluated.rows.iter().any(|r| {
                                r.deviates() && [r.reference_weight2, r.weight2].contains(&((2.0 * w) as i64))
                            }),
                        };
                        v.require(explained, || format!("unflagged deviation {d}"));
                        *flagged.entry(format!("table{table}")).or_default() += 1;
                    }
                }
            }
        }
    }
    for table in ["table3", "table4", "table8"] {
        v.require(flagged.contains_key(table), || format!("no discrepancy flagged for {table}"));
    }
    v.within(started, Duration::from_secs(300));
    v
}

fn criterion6(all: &mut Collected) -> Verdict {
    let mut v = Verdict::new();
    for (m, n, b, expected, sum) in [(3, 5, 1, (23, 5, 11), 23), (1, 4, 3, (7, 3, 4), 7)] {
        let spec = TableCase::T2 { n, m, b }.witness(Placement::Low).unwrap();
        let (report, cert) = all.certified(format!("griesmer ({m},{n},{b})"), &spec);
        v.require(report.parameters() == expected, || format!("({m},{n},{b}) gives {report}"));
        let (_, k, d) = expected;
        let g = griesmer_sum(k, d).unwrap();
        v.require(g == sum, || format!("griesmer_sum({k},{d}) = {g}"));
        v.require(cert.is_griesmer, || format!("({m},{n},{b}) is not Griesmer"));
    }
    v
}

fn criterion7(all: &mut Collected) -> Verdict {
    let mut v = Verdict::new();
    let started = Instant::now();
    for n in 2..=8usize {
        for m in 1..n {
            for b in 1..=n - m {
                let excluded = [(1, n - 1), (1, n - 2), (2, n - 2), (n - 1, 1)];
                let predicate = !excluded.contains(&(m, b));
                let spec = TableCase::T2 { n, m, b }.witness(Placement::Low).unwrap();
                let (report, cert) = all.certified(format!("one-ideal C_D ({m},{n},{b})"), &spec);
                let minimal = cert.minimal_exhaustive.unwrap();
                v.require(minimal == predicate, || {
                    format!("(m,n,b) = ({m},{n},{b}) {report}: minimal {minimal}, predicate {predicate}")
                });
                if !predicate {
                    let identity: WeightIdentity = classify_thm61(m, n, b).unwrap().identity.unwrap();
                    match cert.witness {
                        Some(w) => v.require(identity.matches(&w), || {
                            format!(
                                "(m,n,b) = ({m},{n},{b}): witness weights ({}, {}, sum {}) do not realize {} (full {}, half {})",
                                w.weight_a, w.weight_b, w.weight_sum, identity.label, identity.full, identity.half
                            )
                        }),
                        None => v.notes.push(format!(
                            "(m,n,b) = ({m},{n},{b}): no witness for {}",
                            identity.label
                        )),
                    }
                }
            }
        }
    }
    v.within(started, Duration::from_secs(120));
    v
}

fn criterion8(all: &mut Collected) -> Verdict {
    let mut v = Verdict::new();
    for (m, n) in [(2, 4), (2, 5), (3, 5), (2, 6), (3, 6), (4, 6)] {
        let spec = hier_spec(m, n, &[&[m + 1], &[m + 2]], CodeKind::D);
        let (report, cert) = all.certified(format!("two singletons ({m},{n})"), &spec);
        let expected = ((1u64 << n) - (1 << m) - 2, n as u32, (1u64 << (n - 1)) - (1 << (m - 1)) - 2);
        v.require(report.parameters() == expected, || format!("({m},{n}): {report}, expected {expected:?}"));
        let (length, k, d) = report.parameters();
        v.require(griesmer_sum(k, d + 1).unwrap() > length, || format!("({m},{n}) not distance-optimal"));
        if n >= 4 {
            v.require(cert.minimal_exhaustive == Some(true), || format!("({m},{n}) not minimal"));
        }
    }
    v
}

fn criterion9(all: &mut Collected) -> Verdict {
    let mut v = Verdict::new();
    let instances: [(&str, CodeSpec); 3] = [
        ("(2,5,3)", hier_spec(2, 5, &[&[1, 2, 3, 4, 5]], CodeKind::F)),
        ("(3,6,3)", hier_spec(3, 6, &[&[1, 2, 3, 4, 5, 6]], CodeKind::F)),
        ("(2,6,2)·(2,2)", hier_spec(2, 6, &[&[1, 2, 3, 4], &[1, 2, 5, 6]], CodeKind::F)),
    ];
    for (label, spec) in instances {
        let (report, cert) = all.certified(format!("ratio-violating {label}"), &spec);
        v.require(cert.minimal_exhaustive == Some(true), || match cert.witness {
            Some(w) => format!(
                "{label} {report}: not minimal, message {} covers message {} (weights {} and {})",
                w.message_a, w.message_b, w.weight_a, w.weight_b
            ),
            None => format!("{label}: not minimal"),
        });
        v.require(2 * report.w_min <= report.w_max, || {
            format!("{label}: ratio {} passes the test", cert.ab_ratio)
        });
        if label == "(2,5,3)" {
            v.require(cert.ab_ratio.to_string() == "8/22", || format!("{label}: ratio {}", cert.ab_ratio));
        }
    }
    v
}

fn criterion10(all: &Collected) -> Verdict {
    let mut v = Verdict::new();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for (label, report, book, cert) in &all.codes {
        let (n, k, d) = report.parameters();
        let mass: u64 = report.distribution.iter().map(|(_, a)| a).sum();
        v.require(mass == 1 << k && book.len() as u64 == 1 << k, || format!("{label}: mass {mass}, k = {k}"));
        v.require(report.distribution.count(0) == 1, || format!("{label}: A_0 != 1"));
        for _ in 0..8 {
            let (i, j) = (rng.gen_range(0..book.len()), rng.gen_range(0..book.len()));
            let sum: Vec<u64> = book.codeword(i).iter().zip(book.codeword(j)).map(|(a, b)| a ^ b).collect();
            v.require(book.position(&sum).is_some(), || format!("{label}: words {i} + {j} not in the code"));
        }
        if k >= 1 && d >= 1 {
            let g = griesmer_sum(k, d).unwrap();
            v.require(g <= n, || format!("{label}: [{n}, {k}, {d}] below the Griesmer bound {g}"));
        }
        v.require(!cert.ab_sufficient || cert.minimal_exhaustive == Some(true), || {
            format!("{label}: ratio test passes but the code is not minimal")
        });
    }
    v.require(!all.codes.is_empty(), || "no codes collected".into());
    v
}

fn report(number: u32, verdict: &Verdict) -> bool {
    let passed = verdict.notes.is_empty();
    println!("{} criterion {number}", if passed { "PASS" } else { "FAIL" });
    for note in verdict.notes.iter().take(12) {
        println!("    {note}");
    }
    if verdict.notes.len() > 12 {
        println!("    ... {} violations in total", verdict.notes.len());
    }
    passed
}

fn main() {
    let mut all = Collected::default();
    let verdicts = [
        criterion1(&mut all),
        criterion2(&mut all),
        criterion3(),
        criterion4(),
        criterion5(&mut all),
        criterion6(&mut all),
        criterion7(&mut all),
        criterion8(&mut all),
        criterion9(&mut all),
    ];
    let mut passed = 0;
    for (i, verdict) in verdicts.iter().enumerate() {
        passed += usize::from(report(i as u32 + 1, verdict));
    }
    passed += usize::from(report(10, &criterion10(&all)));
    println!("{passed}/10 criteria passed over {} enumerated codes", all.codes.len());
    if passed != 10 {
        std::process::exit(1);
    }
}
