use std::process::{Command, Output};

use serde_json::Value;

fn wmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wmat"))
        .args(args)
        .env_remove("WMAT_SEED")
        .output()
        .unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = wmat(args);
    assert!(
        out.status.success(),
        "wmat {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

#[test]
fn pack_examples() {
    assert_eq!(ok(&["pack", "[1,1,5,0,4]"]), "[1,1,3,0,2]\n");
    assert_eq!(ok(&["pack", "[]"]), "[]\n");
    assert_eq!(ok(&["pack", "[9]"]), "[1]\n");
    assert_eq!(ok(&["pack", "[ 2 , 0, 7 ]"]), "[1,0,2]\n");
    let v = json(&["pack", "[3,3]", "--format", "json"]);
    assert_eq!(v["packed"], serde_json::json!([1, 1]));
}

#[test]
fn algebra_commands() {
    assert_eq!(ok(&["mul", "[1,0]", "[1]"]), "1*[1,0,2]\n");
    assert_eq!(ok(&["antipode", "[1]"]), "-1*[1]\n");
    assert_eq!(ok(&["antipode", "[]"]), "1*[]\n");
    assert_eq!(ok(&["antipode", "[1,1]"]), "2*[1,0] - 1*[1,1]\n");
    assert_eq!(ok(&["factor", "[1,1,2]"]), "[1,1] * [1]\n");
    assert_eq!(ok(&["factor", "[1,0,2]"]), "[1] * [0] * [1]\n");
    assert_eq!(ok(&["factor", "[2,1]"]), "[2,1]\n");
    assert_eq!(ok(&["factor", "[]"]), "[]\n");
    let v = json(&["coproduct", "[1,1]", "--format", "json"]);
    let terms = v["coproduct"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    assert!(terms
        .iter()
        .any(|t| t["coeff"] == "2" && t["legs"] == serde_json::json!([[1], [0]])));
    let v = json(&["factor", "[1,1,2]", "--format", "json"]);
    assert_eq!(v["factors"], serde_json::json!([[1, 1], [1]]));
}

#[test]
fn unpacked_input_is_a_usage_error() {
    let out = wmat(&["coproduct", "[1,3]"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("pack"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn parse_and_usage_errors_exit_2() {
    for args in [
        &["pack", "1,2"][..],
        &["pack", "[1,-2]"],
        &["mul", "[1]"],
        &["frobnicate"],
        &["verify", "--laws", "coassoc,nope"],
        &["verify", "--max-len", "0"],
        &["primitives", "0"],
        &["primitives", "6"],
        &["table", "--max-n", "3", "--kind", "xyz"],
    ] {
        assert_eq!(wmat(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn enumerate_examples() {
    assert_eq!(ok(&["enumerate", "3", "--count-only"]), "26\n");
    assert_eq!(
        ok(&["enumerate", "3", "--sup", "2", "--count-only"]),
        "12\n"
    );
    assert_eq!(ok(&["enumerate", "2", "--irreducible"]), "[1,1]\n[2,1]\n");
    assert_eq!(ok(&["enumerate", "0"]), "[]\n");
    assert_eq!(ok(&["enumerate", "2", "--sup", "5"]), "");
    let v = json(&["enumerate", "15", "--count-only", "--format", "json"]);
    assert!(v["count"].is_number());
    let v = json(&["enumerate", "40", "--count-only", "--format", "json"]);
    assert!(v["count"].is_string());
}

#[test]
fn count_only_matches_listing() {
    for n in 0..=5 {
        let n_s = n.to_string();
        for sup in std::iter::once(None).chain((0..=n + 1).map(Some)) {
            for irreducible in [false, true] {
                let mut args = vec!["enumerate", &n_s];
                let k_s = sup.map(|k: usize| k.to_string());
                if let Some(k) = &k_s {
                    args.extend(["--sup", k]);
                }
                if irreducible {
                    args.push("--irreducible");
                }
                let listed = ok(&args).lines().count();
                args.push("--count-only");
                let counted: usize = ok(&args).trim().parse().unwrap();
                assert_eq!(listed, counted, "{args:?}");
            }
        }
    }
}

#[test]
fn tables() {
    assert_eq!(
        ok(&["table", "--kind", "dnk", "--max-n", "0", "--format", "csv"]),
        "n,k,d\n0,0,1\n"
    );
    let dn = ok(&["table", "--kind", "dn", "--max-n", "10", "--format", "csv"]);
    assert!(dn.ends_with("10,204495126\n"));
    let i = ok(&["table", "--kind", "in", "--max-n", "10", "--format", "csv"]);
    assert!(i.ends_with("10,145992338\n"));
    let pretty = ok(&[
        "table", "--kind", "dnk", "--max-n", "3", "--format", "pretty",
    ]);
    assert_eq!(
        pretty,
        "n\\k  0  1  2  3\n  0  1\n  1  1  1\n  2  1  3  2\n  3  1  7 12  6\n"
    );
    let v = json(&["table", "--kind", "dnk", "--max-n", "8", "--format", "json"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 81);
    assert!(rows.contains(&serde_json::json!({"n": 7, "k": 5, "d": 31920})));
    assert!(rows.contains(&serde_json::json!({"n": 8, "k": 4, "d": 166824})));
}

#[test]
fn primitives_output() {
    let text = ok(&["primitives", "2"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("grade=2 dim=2 rows=4 cols=6"));
    assert_eq!(lines.count(), 2);
    let text = ok(&["primitives", "1"]);
    assert!(text.starts_with("grade=1 dim=2 rows=0 cols=2\n"));
    let text = ok(&["primitives", "3"]);
    assert!(text.starts_with("grade=3 dim=12 rows=24 cols=26\n"));
    let v = json(&[
        "primitives",
        "3",
        "--max-grade-override",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(v["rank"], 14);
    assert_eq!(v["basis"].as_array().unwrap().len(), 12);
    assert_eq!(
        wmat(&["primitives", "4", "--max-grade-override", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_small_runs() {
    let text = ok(&["verify", "--max-len", "2", "--laws", "all"]);
    assert!(text.ends_with("PASS\n"), "{text}");
    let v = json(&[
        "verify",
        "--max-len",
        "5",
        "--trials",
        "20",
        "--laws",
        "coassoc,counit",
        "--format",
        "json",
    ]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["seed"], 42);
    let laws = v["laws"].as_array().unwrap();
    assert_eq!(laws.len(), 2);
    for law in laws {
        assert_eq!(law["failures"], 0);
        assert!(law["counterexample"].is_null());
        assert!(law.get("elapsed_ms").is_none());
    }
    let v = json(&[
        "verify",
        "--max-len",
        "3",
        "--trials",
        "5",
        "--timings",
        "--format",
        "json",
    ]);
    assert!(v["laws"][0]["elapsed_ms"].is_number());
}

#[test]
fn seed_comes_from_the_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_wmat"));
        cmd.args([
            "verify",
            "--max-len",
            "6",
            "--trials",
            "10",
            "--laws",
            "coassoc",
            "--format",
            "json",
        ]);
        cmd.args(extra);
        match env {
            Some(s) => cmd.env("WMAT_SEED", s),
            None => cmd.env_remove("WMAT_SEED"),
        };
        let out = cmd.output().unwrap();
        assert!(out.status.success());
        serde_json::from_slice::<Value>(&out.stdout).unwrap()
    };
    assert_eq!(run(None, &[])["seed"], 42);
    assert_eq!(run(Some("9"), &[])["seed"], 9);
    assert_eq!(run(Some("9"), &["--seed", "11"])["seed"], 11);
    assert_eq!(run(Some("9"), &[]), run(None, &["--seed", "9"]));
}

#[test]
fn output_is_repeatable() {
    let args = [
        "verify",
        "--max-len",
        "6",
        "--trials",
        "40",
        "--seed",
        "3",
        "--format",
        "json",
    ];
    assert_eq!(ok(&args), ok(&args));
    let a = ok(&["--threads", "2", "primitives", "3", "--format", "json"]);
    let b = ok(&["--sequential", "primitives", "3", "--format", "json"]);
    assert_eq!(a, b);
}
