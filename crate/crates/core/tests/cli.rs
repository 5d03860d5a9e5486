//! The `posetcodes` binary end to end.

use std::process::{Command, Output};

fn posetcodes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posetcodes"))
        .args(args)
        .env_remove("POSETCODES_ORACLE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn construct_reports_parameters_and_enumerator() {
    let out = posetcodes(&["construct", "--poset", "hier:2,5", "--ideals", "1,3,4", "--kind", "D", "--format", "text"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("[25, 5, 11]\n1+4z^11+6z^12+12z^13+8z^14+z^16\n"), "{text}");

    let out = posetcodes(&["construct", "--poset", "hier:2,5", "--ideals", "1,3,4,5", "--kind", "f"]);
    assert!(stdout(&out).starts_with("[31, 6, 8]\n"));

    let out = posetcodes(&["construct", "--poset", "hier:1,2", "--ideals", "1", "--kind", "D"]);
    assert!(stdout(&out).starts_with("[2, 2, 1]\n"));
}

#[test]
fn oracle_flag_leaves_the_report_unchanged() {
    let cases: [(&str, &str, &str); 5] = [
        ("hier:2,5", "1,3,4", "D"),
        ("hier:2,5", "1,3,4,5", "f"),
        ("hier:3,7", "1,2,3,4;1,2,3,5", "f"),
        ("n=5; cover=1<2,2<3,1<4", "3;4,5", "D"),
        ("antichain:6", "1,2,3;3,4", "f"),
    ];
    for (poset, ideals, kind) in cases {
        let base = ["construct", "--poset", poset, "--ideals", ideals, "--kind", kind, "--format", "json"];
        let plain: serde_json::Value = serde_json::from_slice(&posetcodes(&base).stdout).unwrap();
        let mut with = base.to_vec();
        with.push("--oracle");
        let out = posetcodes(&with);
        assert!(out.status.success(), "{poset} {ideals}");
        let checked: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        for key in ["parameters", "length", "dimension", "distribution", "w_min", "w_max", "enumerator", "source"] {
            assert_eq!(plain[key], checked[key], "{poset} {ideals} {key}");
        }
        assert!(checked["certificate"]["minimal_exhaustive"].is_boolean());
    }
}

#[test]
fn oracle_cap_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_posetcodes"))
        .args(["construct", "--poset", "hier:2,5", "--ideals", "1,3,4", "--oracle"])
        .env("POSETCODES_ORACLE_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn bad_input_exits_with_usage_status() {
    for args in [
        vec!["construct", "--poset", "hier:6,5", "--ideals", "1"],
        vec!["construct", "--poset", "hier:2,5", "--ideals", "1,x"],
        vec!["construct", "--poset", "n=3; cover=1<2,2<3,3<1", "--ideals", "1"],
        vec!["construct", "--poset", "hier:2,5"],
        vec!["scan", "--n-max", "30"],
    ] {
        let out = posetcodes(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn verify_passes_and_lists_discrepancies() {
    let out = posetcodes(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("15/15 fixtures passed"), "{text}");
    for needle in ["ex66 A_14", "ex66 A_18", "table4 2^{n-1}-2^{m-1}-2^{|B_2|-1}", "table8 2^{n-1}-2+2^{|B_1|}-2^{|B_1∩B_2|}", "table3 length", "table4 length"] {
        assert!(text.contains(needle), "missing {needle}");
    }
    let strict = posetcodes(&["verify", "--strict"]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn verify_only_runs_one_fixture() {
    let out = posetcodes(&["verify", "--only", "thm61", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let fixtures = v["fixtures"].as_array().unwrap();
    assert_eq!(fixtures.len(), 1);
    assert_eq!(fixtures[0]["name"], "thm61");
}

#[test]
fn scan_griesmer_filter() {
    let out = posetcodes(&["scan", "--n-max", "6", "--kind", "D", "--filter", "griesmer"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "m,n,|A1|,|B1|,|A2|,|B2|,|∩|,kind,length,k,d,is_griesmer,griesmer_optimal,minimal,ab_violating"
    );
    assert!(text.lines().any(|l| l.starts_with("3,5,3,1,,,,D,23,5,11,true,true,")), "{text}");
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(11) == Some("true")));
}

#[test]
fn scan_is_deterministic_and_sorted() {
    let a = posetcodes(&["scan", "--n-max", "6", "--format", "json"]);
    let b = posetcodes(&["scan", "--n-max", "6", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let rows: Vec<serde_json::Value> = serde_json::from_slice(&a.stdout).unwrap();
    let keys: Vec<(u64, u64, String)> = rows
        .iter()
        .map(|r| (r["n"].as_u64().unwrap(), r["m"].as_u64().unwrap(), r["kind"].as_str().unwrap().to_string()))
        .collect();
    assert!(keys.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn scan_ab_violating_rows_are_minimal() {
    let out = posetcodes(&["scan", "--n-max", "6", "--kind", "f", "--filter", "ab-violating", "--oracle"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert!(rows.iter().any(|l| l.starts_with("3,6,3,3,,,,f,63,7,")), "{text}");
    assert!(rows.iter().all(|l| l.ends_with(",true,true")), "{text}");
    // (m, n, |B|) = (2, 5, 3) is not minimal
    assert!(!rows.iter().any(|l| l.starts_with("2,5,2,3,,,,f,")));
}
