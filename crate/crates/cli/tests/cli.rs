use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffspec"))
        .args(args)
        .env_remove("BRUTE_CAP")
        .env_remove("WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn spectrum_both_methods_agree() {
    let v = json(&["spectrum", "--p", "5", "--n", "4", "--method", "both"]);
    let expect = ["236", "209", "152", "2", "24", "2"];
    assert_eq!(v["result"]["closed"]["omega"], serde_json::json!(expect));
    assert_eq!(v["result"]["brute"]["omega"], serde_json::json!(expect));
    assert_eq!(v["result"]["agree"], true);
    assert_eq!(v["params"]["d"], "622");
}

#[test]
fn envelope_key_order() {
    let out = stdout(&["spectrum", "--p", "7", "--n", "4"]);
    let keys: Vec<usize> = ["\"schema_version\"", "\"command\"", "\"params\"", "\"result\"", "\"timing_ms\""]
        .iter()
        .map(|k| out.find(k).unwrap())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["timing_ms"], 0);
    assert_eq!(v["result"]["intermediates"]["m"], "17056801");
    assert_eq!(v["result"]["intermediates"]["lambda1"], "-99");
}

#[test]
fn big_integers_are_strings() {
    let v = json(&["spectrum", "--p", "997", "--n", "50", "--method", "closed"]);
    let omega = v["result"]["omega"].as_array().unwrap();
    assert_eq!(omega.len(), 6);
    assert!(omega.iter().all(|w| w.is_string()));
    assert!(v["result"]["order"].as_str().unwrap().len() > 100);
}

#[test]
fn output_is_byte_stable() {
    for args in [
        &["spectrum", "--p", "5", "--n", "5", "--method", "both"][..],
        &["verify", "--p", "7", "--n", "3", "--format", "json"][..],
        &["gamma-table", "--max-p", "200"][..],
    ] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn csv_and_pretty_formats() {
    let csv = stdout(&["spectrum", "--p", "7", "--n", "2", "--method", "both", "--format", "csv"]);
    assert_eq!(
        csv,
        "method,p,n,omega_0,omega_1,omega_2,omega_3,omega_4,omega_5\n\
         closed,7,2,20,17,8,0,4,0\n\
         brute,7,2,20,17,8,0,4,0\n"
    );
    let pretty = stdout(&["spectrum", "--p", "5", "--n", "5", "--format", "pretty"]);
    assert!(pretty.contains("[1180, 1045, 760, 0, 140, 0]"));
}

#[test]
fn gamma_values() {
    assert_eq!(stdout(&["gamma", "--p", "5", "--n", "5"]), "82\n");
    assert_eq!(stdout(&["gamma", "--p", "7", "--n", "3"]), "0\n");
    let v = json(&["gamma", "--p", "5", "--n", "4", "--format", "json"]);
    assert_eq!(v["result"]["value"], "14");
}

#[test]
fn gamma_table_rows() {
    let csv = stdout(&["gamma-table", "--max-p", "1000"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("p,gamma_p_1"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 166);
    assert!(rows.contains(&"953,54"));
    assert_eq!(rows[0], "5,2");
}

#[test]
fn charsum_values() {
    assert_eq!(stdout(&["charsum", "--p", "7", "--n", "4", "--which", "lambda1", "--method", "closed"]), "-99\n");
    assert_eq!(stdout(&["charsum", "--p", "3", "--n", "4", "--which", "lambda2", "--method", "closed"]), "-2\n");
    for which in ["gamma", "lambda1", "lambda2"] {
        let closed = stdout(&["charsum", "--p", "11", "--n", "2", "--which", which]);
        let brute = stdout(&["charsum", "--p", "11", "--n", "2", "--which", which, "--method", "brute"]);
        assert_eq!(closed, brute, "{which}");
    }
}

#[test]
fn verify_and_sweep() {
    let out = stdout(&["verify", "--p", "5", "--n", "4"]);
    assert!(out.trim_end().ends_with("p=5 n=4: ok (11 checks)"));
    let out = stdout(&["sweep", "--max-order", "60"]);
    assert!(out.trim_end().ends_with("fields checked, 0 failed"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["spectrum", "--p", "3", "--n", "1"]), 2);
    assert_eq!(code(&["verify", "--p", "2", "--n", "8"]), 2);
    assert_eq!(code(&["spectrum", "--p", "9", "--n", "2"]), 2);
    assert_eq!(code(&["gamma", "--p", "3", "--n", "2"]), 2);
    assert_eq!(code(&["charsum", "--p", "5", "--n", "1", "--which", "delta"]), 2);
    assert_eq!(code(&["spectrum", "--p", "5", "--n", "0"]), 2);
    assert_eq!(code(&["spectrum", "--p", "5", "--n", "30", "--method", "brute"]), 3);
    assert_eq!(code(&["spectrum", "--p", "5", "--n", "5", "--method", "brute", "--brute-cap", "1000"]), 3);
    assert_eq!(code(&["sweep", "--max-order", "100", "--brute-cap", "50"]), 3);
    assert_eq!(code(&["spectrum", "--p", "5", "--n", "4", "--method", "brute", "--workers", "1"]), 0);
}

#[test]
fn cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_diffspec"))
        .args(["spectrum", "--p", "5", "--n", "5", "--method", "brute"])
        .env("BRUTE_CAP", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_diffspec"))
        .args(["spectrum", "--p", "5", "--n", "5", "--method", "brute", "--brute-cap", "5000"])
        .env("BRUTE_CAP", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
