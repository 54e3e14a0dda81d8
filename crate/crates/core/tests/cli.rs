use std::process::{Command, Output};

fn mlcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlcount"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn hyperdet_examples() {
    for (h, d) in [
        ("3 0 0 0 0 1 1 1", "D = 9"),
        ("0 0 0 0 0 0 0 0", "D = 0"),
        ("1 0 0 0 0 0 0 1", "D = 1"),
    ] {
        let o = mlcount(&["hyperdet", h]);
        assert!(o.status.success());
        assert!(stdout(&o).starts_with(d), "{h}: {}", stdout(&o));
    }
    let o = mlcount(&["hyperdet", "1 2 3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("8 integers"));
}

#[test]
fn classify_examples() {
    let o = mlcount(&["classify", "--bi", "1 2 2 4"]);
    assert_eq!(stdout(&o).trim(), "Reducible (x1 + 2x2)(y1 + 2y2)");

    let out = stdout(&mlcount(&["classify", "--tri", "2 0 0 0 5 1 1 0"]));
    assert!(
        out.contains("D = 0") && out.contains("NoLinearFactor") && out.contains("singular point")
    );

    let out = stdout(&mlcount(&["classify", "--tri", "3 0 0 0 0 1 1 1"]));
    assert!(out.contains("D = 9") && out.contains("nonsingular"));
}

#[test]
fn count_both_methods_agree() {
    let o = mlcount(&[
        "count",
        "--bi",
        "1 0 0 -1",
        "--box",
        "10 10 10 10",
        "--method",
        "both",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    for key in ["total", "degenerate", "per_divisor", "s_zero", "s_nonzero"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }

    let o = mlcount(&[
        "count",
        "--tri",
        "1 0 0 0 0 0 0 1",
        "--box",
        "2 2 2 2 2 2",
        "--method",
        "both",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(
        v["total"],
        v["s_zero"].as_u64().unwrap() + v["s_nonzero"].as_u64().unwrap()
    );
}

#[test]
fn count_fast_rejects_reducible() {
    let o = mlcount(&["count", "--bi", "1 2 2 4", "--box", "3", "--method", "fast"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("determinant is zero"));
}

#[test]
fn form_from_file() {
    let dir = std::env::temp_dir().join(format!("mlcount-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("form.txt");
    std::fs::write(&path, "3, 0, 0, 0, 0, 1, 1, 1\n").unwrap();
    let o = mlcount(&["hyperdet", "--file", path.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("D = 9"));
}

#[test]
fn verify_is_deterministic() {
    let dir = std::env::temp_dir().join(format!("mlcount-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut csvs = Vec::new();
    for run in 0..2 {
        let path = dir.join(format!("run{run}.csv"));
        let o = mlcount(&[
            "verify",
            "--suite",
            "bilinear",
            "--trials",
            "30",
            "--seed",
            "7",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let summary: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
        assert_eq!(summary["rows"], 30);
        assert_eq!(summary["rng"], "chacha8");
        csvs.push(std::fs::read_to_string(&path).unwrap());
    }
    assert_eq!(csvs[0], csvs[1]);
    assert!(csvs[0].starts_with("form,delta_or_D,box,measured,bound,ratio\n"));
    assert_eq!(csvs[0].lines().count(), 31);
}

#[test]
fn verify_lattice_suite_passes() {
    let o = mlcount(&[
        "verify", "--suite", "lattice", "--trials", "40", "--seed", "7",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 41);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(mlcount(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        mlcount(&["verify", "--suite", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        mlcount(&["count", "--bi", "1 0 0 1", "--box", "0.5"])
            .status
            .code(),
        Some(2)
    );
}
