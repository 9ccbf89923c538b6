use std::path::Path;
use std::process::{Command, Output};

fn macd(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_macd"))
        .args(args)
        .env("MACD_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn poly_golden() {
    let dir = tempfile::tempdir().unwrap();
    let o = macd(
        dir.path(),
        &["poly", "--n", "2", "--k", "1", "--lambda", "2,0"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "m(2,0): 1\nm(0,0): 1\n");

    let o = macd(
        dir.path(),
        &[
            "poly", "--n", "2", "--k", "2", "--lambda", "2,0", "--format", "json",
        ],
    );
    assert_eq!(
        stdout(&o),
        concat!(
            r#"{"coeffs":[{"mu":"2,0","value":"1"},{"mu":"0,0","value":"(1+2*q^(2)+1*q^(4))/(1+1*q^(2)+1*q^(4))"}],"#,
            r#""k":2,"lambda":"2,0","n":2}"#,
            "\n"
        )
    );
    assert!(dir.path().join("P_n2_k2.json").exists());
}

#[test]
fn verify_golden() {
    let dir = tempfile::tempdir().unwrap();
    let o = macd(
        dir.path(),
        &[
            "verify",
            "special_value",
            "--n",
            "2",
            "--k",
            "1",
            "--lambda",
            "0,0",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "identity: special_value\nn: 2\nk: 1\nlambda: 0,0\nlhs: 1\nrhs: 1\nequal: true\n"
    );
    let o = macd(
        dir.path(),
        &[
            "verify", "norm", "--n", "2", "--k", "2", "--lambda", "0,0", "--format", "json",
        ],
    );
    assert_eq!(
        stdout(&o),
        "{\"equal\":true,\"identity\":\"norm\",\"lhs\":\"1+1*q^(2)+1*q^(4)\",\"params\":{\"k\":2,\"lambda\":\"0,0\",\"n\":2},\"rhs\":\"1+1*q^(2)+1*q^(4)\"}\n"
    );
}

#[test]
fn eval_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = macd(
        dir.path(),
        &[
            "eval", "--n", "2", "--k", "1", "--lambda", "1,0", "--mu", "0,0",
        ],
    );
    assert_eq!(stdout(&o), "1*q^(-1)+1*q^(1)\n");
    let o = macd(
        dir.path(),
        &["table", "--n", "2", "--k", "1", "--mu", "1,0", "--r", "1"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "mu=1,0 r=1 nu=-1,0: 1\nmu=1,0 r=1 nu=1,0: 1\n");
}

#[test]
fn invalid_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["poly", "--n", "1", "--k", "1", "--lambda", "0"][..],
        &["poly", "--n", "2", "--k", "1", "--lambda", "0,3"],
        &["poly", "--n", "2", "--k", "1", "--lambda", "a,b"],
        &["grid", "--n", "2", "--k", "1", "--identity", "nope"],
        &["table", "--n", "3", "--k", "1", "--r", "3"],
        &["poly"],
    ] {
        let o = macd(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn json_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = [
        "poly", "--n", "3", "--k", "2", "--lambda", "2,1,0", "--format", "json",
    ];
    let x = macd(a.path(), &args);
    let y = macd(b.path(), &args);
    let z = macd(a.path(), &args);
    assert_eq!(x.stdout, y.stdout);
    assert_eq!(x.stdout, z.stdout);
}

#[test]
fn grid_is_idempotent_cold_or_warm() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "grid",
        "--n",
        "3",
        "--k",
        "2",
        "--max-size",
        "2",
        "--format",
        "json",
        "--identity",
        "norm",
        "--identity",
        "symmetry",
        "--identity",
        "pieri",
        "--identity",
        "eigenvalue",
    ];
    let cold = macd(dir.path(), &args);
    assert_eq!(
        cold.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&cold.stderr)
    );
    let warm = macd(dir.path(), &args);
    assert_eq!(cold.stdout, warm.stdout);
    let seq = macd(dir.path(), &[&args[..], &["--sequential"]].concat());
    assert_eq!(cold.stdout, seq.stdout);
}

#[test]
fn grid_reports_the_printed_cross_check_failures() {
    let dir = tempfile::tempdir().unwrap();
    let o = macd(
        dir.path(),
        &[
            "grid",
            "--n",
            "2",
            "--k",
            "1",
            "--max-size",
            "1",
            "--identity",
            "cross_check_45",
        ],
    );
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL cross_check_45 lambda=0,0 mu=1,0"));
    assert!(out.contains("total checks=4 passed=2 failed=2 errors=0"));
}

#[test]
fn cache_flag_beats_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let flag = flag_dir.path().to_str().unwrap();
    let o = macd(
        env_dir.path(),
        &[
            "poly",
            "--n",
            "2",
            "--k",
            "3",
            "--lambda",
            "1,0",
            "--cache-dir",
            flag,
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(flag_dir.path().join("P_n2_k3.json").exists());
    assert!(!env_dir.path().join("P_n2_k3.json").exists());
}

#[test]
fn corrupt_cache_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("P_n2_k1.json"),
        r#"{"n":2,"k":1,"entries":[{"lambda":"2,0","coeffs":[{"mu":"2,0","value":"3"}]}]}"#,
    )
    .unwrap();
    let o = macd(
        dir.path(),
        &["poly", "--n", "2", "--k", "1", "--lambda", "2,0"],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("leading coefficient"));
}
