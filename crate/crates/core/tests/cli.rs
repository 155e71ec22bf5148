use std::process::Command;

use schur_ed::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["schur-ed"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn cover_verify() {
    let (code, out, _) = call(&["cover", "verify", "-n", "5", "--variant", "minus"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["order"], 240);

    let (code, _, err) = call(&["cover", "verify", "-n", "3"]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = call(&["cover", "verify", "-n", "13"]);
    assert_eq!(code, 2);
    let (code, _, _) = call(&["cover", "verify"]);
    assert_eq!(code, 2);
}

#[test]
fn fault_injection_names_the_relation() {
    let (code, out, err) = call(&["cover", "verify", "-n", "5", "--inject-fault"]);
    assert_eq!(code, 1);
    assert!(err.contains("s1^2=1"), "{err}");
    assert!(json(&out)["failures"].as_array().unwrap().iter().any(|f| f == "s1^2=1"));
}

#[test]
fn chartab_spec_and_flags_agree() {
    let (c1, a, _) = call(&["chartab", r#"{"n": 6, "variant": "plus", "subgroup": "sylow2"}"#]);
    let (c2, b, _) = call(&["chartab", "-n", "6", "--subgroup", "sylow2"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let v = json(&a);
    assert_eq!(v["order"], 32);
    assert_eq!(v["min_faithful_irrep_dim"], 4);

    let (code, out, _) = call(&["chartab", r#"{"n": 4, "variant": "minus", "subgroup": "alt-sylow2"}"#]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["degrees"], serde_json::json!([1, 1, 1, 1, 2]));
    let (code, _, _) = call(&["chartab", r#"{"n": 4, "variant": "sideways"}"#]);
    assert_eq!(code, 2);
}

#[test]
fn ed2_and_table() {
    let (code, out, _) = call(&["ed2", "-n", "10", "--which", "sym", "--variant", "minus"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["ed2_computed"], 16);
    assert_eq!(v["ed2_formula"], 16);

    let (code, out, _) = call(&["--format", "tsv", "table1", "--verify-up-to", "8"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[2], "ed(~A_n;2)\t2\t2\t2\t2\t8\t8\t8\t8\t16\t16\t32\t32\t128");
    let row3: Vec<&str> = lines[3].split('\t').collect();
    assert_eq!(row3[5], "8");
    assert_eq!(row3[7], "8-15");

    let (code, out, _) = call(&["table1", "--n-max", "9", "--verify-up-to", "9"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["alt_cover_at_2_source"][5], "verified");
    let (code, _, _) = call(&["table1", "--n-max", "17"]);
    assert_eq!(code, 2);
}

#[test]
fn qform_and_trace_form() {
    let (code, out, _) = call(&["qform", "1,-1,2/3"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["dim"], 3);
    assert_eq!(v["witt_index"], 1);
    assert_eq!(v["disc"], "-6");

    let (code, out, _) = call(&["trace-form", "x^2 - 1"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["disc"], "1");
    assert_eq!(v["signature"], serde_json::json!([2, 0]));
    assert_eq!(v["hasse_ramified"], serde_json::json!([]));
    assert_eq!(v["contains_s_ones"], true);

    let (code, _, err) = call(&["trace-form", "x^2 - 2x + 1"]);
    assert_eq!(code, 2);
    assert!(err.contains("not squarefree"), "{err}");
    let (code, _, _) = call(&["qform", "1,0"]);
    assert_eq!(code, 2);
}

#[test]
fn trace_check() {
    let (code, out, err) = call(&["trace-check", "-n", "12", "--trials", "100"]);
    assert_eq!(code, 0, "{err}");
    let v = json(&out);
    assert_eq!(v["contains_s_ones"], 100);
    assert_eq!(v["disc_agrees"], 100);
    assert!(err.contains("100/100 contain 2<1>"));
}

#[test]
fn output_is_reproducible() {
    let a = call(&["--seed", "5", "trace-check", "-n", "7", "--trials", "20"]);
    let b = call(&["--seed", "5", "trace-check", "-n", "7", "--trials", "20"]);
    assert_eq!(a, b);
    let c = call(&["--workers", "1", "chartab", "-n", "8"]);
    let d = call(&["--workers", "3", "chartab", "-n", "8"]);
    assert_eq!(c, d);
}

#[test]
fn size_bound_is_a_resource_error() {
    let (code, _, err) = call(&["--size-bound", "100", "cover", "verify", "-n", "6"]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn binary_exit_codes_and_env() {
    let bin = env!("CARGO_BIN_EXE_schur-ed");
    let out = Command::new(bin).args(["cover", "verify", "-n", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(bin)
        .args(["cover", "verify", "-n", "6"])
        .env("SCHUR_ED_SIZE_BOUND", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    // the flag wins over the environment
    let out = Command::new(bin)
        .args(["--size-bound", "100000", "cover", "verify", "-n", "6"])
        .env("SCHUR_ED_SIZE_BOUND", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(bin).args(["cover", "verify", "-n", "4"]).env("SCHUR_ED_SIZE_BOUND", "lots").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
