use hardy_core::DistTable;
use std::path::Path;
use std::process::{Command, Output};

fn hardy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hardy"))
        .args(args)
        .env_remove("HARDY_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn sum_values_and_errors() {
    let out = hardy(&["sum", "S", "3", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().next(), Some("S(3,4) = 3"));
    let out = hardy(&["sum", "dedekind", "1", "3"]);
    assert!(stdout(&out).starts_with("s(1,3) = 1/18\n"));
    let out = hardy(&["sum", "S4", "-1", "4"]);
    assert_eq!(code(&out), 0);
    let out = hardy(&["sum", "S", "1", "3"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("c + d odd"));
    assert_eq!(code(&hardy(&["sum", "S", "x", "3"])), 2);
}

#[test]
fn weyl_csv_schema() {
    let out = hardy(&["weyl", "--N", "3", "--n", "0", "--j", "1", "--m", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("N,re,im,abs,phi_theta,ratio"));
    let last: Vec<&str> = lines.last().unwrap().split(',').collect();
    assert_eq!(last[0], "3");
    assert_eq!(last[3].parse::<f64>().unwrap(), 0.0);

    let out = hardy(&["weyl", "--N", "600", "--n", "1", "--j", "1", "--m", "3", "--checkpoints", "100,250"]);
    for line in stdout(&out).lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let abs: f64 = f[3].parse().unwrap();
        let phi: f64 = f[4].parse().unwrap();
        let ratio: f64 = f[5].parse().unwrap();
        assert_eq!(ratio, abs / phi);
        assert_eq!(f[1].split('e').next().unwrap().replace(['-', '.'], "").len(), 17);
    }
    assert_eq!(stdout(&out).lines().count(), 4);
}

#[test]
fn weyl_runs_are_reproducible_across_threads() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = ["weyl", "--N", "700", "--n", "1", "--j", "2", "--m", "5"];
    let run = |path: &Path, threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_hardy"))
            .args(args)
            .args(["--output", path.to_str().unwrap()])
            .env("HARDY_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(code(&out), 0);
    };
    run(&a, "1");
    run(&b, "3");
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    run(&b, "1");
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn rational_parameters_are_integers_only() {
    assert_eq!(code(&hardy(&["weyl", "--N", "10", "--j", "0.5", "--m", "2"])), 2);
    assert_eq!(code(&hardy(&["weyl", "--N", "10", "--j", "2", "--m", "2"])), 2);
    assert_eq!(code(&hardy(&["verify", "cocycle", "--r", "0.5", "--count", "5"])), 2);
    assert_eq!(code(&hardy(&["weyl", "--j", "1", "--m", "2"])), 2);
}

#[test]
fn dist_tables() {
    let out = hardy(&["dist", "--N", "4", "--m", "2", "--variant", "S"]);
    assert_eq!(stdout(&out), "residue_0,residue_1\n1,3\n");

    let out = hardy(&["dist", "--N", "300", "--m", "3", "--variant", "S4", "--format", "json"]);
    let text = stdout(&out);
    let table: DistTable = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(serde_json::to_string(&table).unwrap(), text.trim());
    assert_eq!(table.counts.iter().sum::<u64>(), table.total);

    let out = hardy(&["dist", "--N", "300", "--m", "3", "--bins", "8"]);
    let text = stdout(&out);
    let rows: Vec<Vec<String>> = text.lines().map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows[0], ["bin", "lo", "hi", "residue_0", "residue_1", "residue_2"]);
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[1][1..3], ["0", "1/8"]);
    let mut marginal = [0u64; 3];
    for row in &rows[1..] {
        for k in 0..3 {
            marginal[k] += row[3 + k].parse::<u64>().unwrap();
        }
    }
    let plain = stdout(&hardy(&["dist", "--N", "300", "--m", "3"]));
    let counts: Vec<u64> = plain.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(counts, marginal);
}

#[test]
fn config_file_with_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# census\nN = 4\nm = 2\nvariant = S\nthreads = 2\n").unwrap();
    let out = hardy(&["--config", cfg.to_str().unwrap(), "dist"]);
    assert_eq!(stdout(&out), "residue_0,residue_1\n1,3\n");
    let out = hardy(&["dist", "--config", cfg.to_str().unwrap(), "--N", "3"]);
    assert_eq!(stdout(&out), "residue_0,residue_1\n1,1\n");
    std::fs::write(&cfg, "N = four\n").unwrap();
    assert_eq!(code(&hardy(&["--config", cfg.to_str().unwrap(), "dist", "--m", "2"])), 2);
}

fn reports(out: &Output) -> Vec<serde_json::Value> {
    stdout(out).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn verify_suites_report_json_lines() {
    for (suite, extra) in [
        ("parity", vec!["--cmax", "300"]),
        ("cross", vec!["--cmax", "300"]),
        ("theta", vec!["--count", "40", "--cmax", "40"]),
        ("cocycle", vec!["--count", "50"]),
        ("ramanujan", vec!["--cmax", "100"]),
    ] {
        let mut args = vec!["verify", suite];
        args.extend(extra);
        let out = hardy(&args);
        assert_eq!(code(&out), 0, "{suite}: {}", String::from_utf8_lossy(&out.stderr));
        for r in reports(&out) {
            for key in ["suite", "case", "status", "residual", "budget", "seed"] {
                assert!(r.get(key).is_some(), "{suite} report lacks {key}");
            }
            assert_eq!(r["suite"], suite);
            assert_eq!(r["status"], "pass");
        }
    }
}

#[test]
fn verify_eisenstein_small_truncation() {
    let out = hardy(&["verify", "eisenstein", "--r", "1/8", "--s", "2+0.5i", "--cmax", "120"]);
    assert_eq!(code(&out), 0);
    let r = &reports(&out)[0];
    assert!(r["residual"].as_f64().unwrap() <= 1e-3);
}

#[test]
fn failures_and_budgets_have_distinct_codes() {
    let out = hardy(&["verify", "eisenstein", "--cmax", "60", "--budget", "1000"]);
    assert_eq!(code(&out), 3);
    assert_eq!(reports(&out)[0]["status"], "budget");
    let out = hardy(&["verify", "theta", "--count", "3", "--budget", "2", "--z", "0.1+0.001i"]);
    assert_eq!(code(&out), 3);
    // An unreachable tolerance turns a passing check into a mathematical failure.
    let out = hardy(&["verify", "theta", "--count", "20", "--tol", "1e-30"]);
    assert_eq!(code(&out), 1);
    assert_eq!(reports(&out)[0]["status"], "fail");
}
