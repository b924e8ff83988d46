use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use galegap_core::numeric::XReal;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn galegap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galegap"))
        .args(args)
        .env_remove(galegap_cli::REPORT_DIR_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = galegap(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("galegap-test-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn gap_on_gale_instance() {
    let gale = fixture("gale.toml");
    let out = ok(&["gap", gale.to_str().unwrap()]);
    assert_eq!(
        out,
        "rhs_case    = axis\nb1          = 1\nb2          = 0\nphi         = 1\npsi         = 0\n\
         gap         = 1\ngap_defined = true\nbeta_bar    = 0\nu_bar       = 0\nattainment  = attained\n\
         witness_y1  = 0\nwitness_y2  = 0\npsi_lo      = none\npsi_hi      = none\n"
    );
}

#[test]
fn gap_json_carries_rationals_as_strings() {
    let out = ok(&["gap", fixture("axis_slope2.toml").to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["phi"], "20");
    assert_eq!(v["psi"], "15");
    assert_eq!(v["gap"], "5");
    assert_eq!(v["beta_bar"], "2");
    assert_eq!(v["gap_defined"], true);
}

#[test]
fn not_attained_instance() {
    let out = ok(&["gap", fixture("sqrt_tail.toml").to_str().unwrap(), "--format", "csv"]);
    let mut lines = out.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let get = |k: &str| row[header.iter().position(|h| *h == k).unwrap()];
    assert_eq!((get("phi"), get("psi"), get("gap")), ("5", "1", "4"));
    assert_eq!(get("attainment"), "not-attained");
}

#[test]
fn interior_gap_confirmed_by_truncations() {
    let out = ok(&["gap", fixture("gale_interior.toml").to_str().unwrap(), "--confirm", "2,10,100", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!((v["phi"].as_str(), v["psi"].as_str(), v["gap"].as_str()), (Some("0"), Some("0"), Some("0")));
    assert_eq!(v["confirmed"], true);
}

#[test]
fn dual_check_origin_is_optimal() {
    let out = ok(&["dual-check", fixture("gale.toml").to_str().unwrap(), "--point", "0,0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["feasible"], true);
    assert_eq!(v["optimal"], true);
    let out = ok(&["dual-check", fixture("gale.toml").to_str().unwrap(), "--point", "1/2,-1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["feasible"], false);
    assert_eq!(v["hc_conjugate"], "inf");
}

#[test]
fn sweep_dual_column_is_one() {
    let out = ok(&["sweep", fixture("gale.toml").to_str().unwrap(), "--ns", "1,10,100", "--format", "csv"]);
    assert_eq!(out, "N,primal,dual\n1,1,1\n10,1,1\n100,1,1\n");
}

#[test]
fn excone_grid_report() {
    let out = ok(&["excone", "--grid", "-3:3", "--format", "csv"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("y1,y2,y3,phi,psi,gap"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 7 * 7 * 4);
    assert!(rows.contains(&vec!["0", "1", "0", "1", "0", "1"]));
    assert!(rows.iter().all(|r| r[4] == "0"));
}

#[test]
fn vsw_grid_and_point() {
    let out = ok(&["vsw", "--grid", "0:1:2", "--format", "csv"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("eta,y1,y2,in_C0,in_C1,in_Cprime,in_clCprime"));
    assert_eq!(lines.count(), 27);
    assert!(out.contains("\n1/2,0,0,false,false,false,true\n"));
    assert!(out.contains("\n1,0,0,true,false,true,true\n"));

    let out = ok(&["vsw", "--point", "5,1/2,-1/4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["in_C1"], true);
    assert_eq!(v["witness"], "2:1/4");
}

#[test]
fn vsw_fixture_sums() {
    let out = ok(&["vsw", "--fixture", "geometric", "--n", "10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["weighted_sum"], "509/256");
    let o = galegap(&["vsw", "--fixture", "cauchy"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let o = galegap(&["selftest", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("status,case,expected,actual\n"));
    assert!(!out.contains("MISMATCH"));
}

#[test]
fn output_is_byte_deterministic() {
    let gale = fixture("gale.toml");
    let g = gale.to_str().unwrap();
    let runs: [&[&str]; 6] = [
        &["gap", g, "--format", "json"],
        &["dual-check", g, "--point", "0,0"],
        &["sweep", g, "--ns", "1,5,50", "--format", "csv"],
        &["excone", "--grid", "-1:1:2"],
        &["vsw", "--grid", "-1:1", "--format", "json"],
        &["selftest"],
    ];
    for args in runs {
        assert_eq!(galegap(args).stdout, galegap(args).stdout, "{args:?}");
    }
}

#[test]
fn printed_rationals_reparse() {
    let out = ok(&["excone", "--grid", "-2:1:3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for row in v.as_array().unwrap() {
        for cell in row.as_object().unwrap().values() {
            let s = cell.as_str().unwrap();
            let x: XReal = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
    }
}

#[test]
fn exit_codes() {
    let dir = scratch_dir("exit");
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "u = \"0\"\nv = \"x/2\"\nb1 = 1\nb2 = 0\n[beta]\ntail = [0, 0, 0]\n").unwrap();
    let o = galegap(&["gap", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.toml") && err.contains("`v`"), "{err}");

    let broken = dir.join("broken.toml");
    std::fs::write(&broken, "u = \"0\"\nv = [\n").unwrap();
    let o = galegap(&["gap", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));

    let neg = dir.join("neg.toml");
    std::fs::write(&neg, "u = 0\nv = 0\nb1 = 1\nb2 = 0\n[beta]\nprefix = [\"-1\"]\ntail = [0, 0, 0]\n").unwrap();
    let o = galegap(&["gap", neg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("beta >= 0"));

    let gale = fixture("gale.toml");
    assert_eq!(galegap(&["sweep", gale.to_str().unwrap(), "--ns", "10,1"]).status.code(), Some(3));
    assert_eq!(galegap(&["sweep", gale.to_str().unwrap(), "--ns", "1,x"]).status.code(), Some(2));
    assert_eq!(galegap(&["gap", gale.to_str().unwrap(), "--eps", "0"]).status.code(), Some(3));
    assert_eq!(galegap(&["excone", "--grid", "-200:200"]).status.code(), Some(3));
    assert_eq!(galegap(&["frobnicate"]).status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn report_dir_receives_a_copy() {
    let dir = scratch_dir("reports");
    let gale = fixture("gale.toml");
    let o = Command::new(env!("CARGO_BIN_EXE_galegap"))
        .args(["sweep", gale.to_str().unwrap(), "--format", "csv"])
        .env(galegap_cli::REPORT_DIR_ENV, &dir)
        .output()
        .unwrap();
    assert!(o.status.success());
    let saved = std::fs::read(dir.join("sweep.csv")).unwrap();
    assert_eq!(saved, o.stdout);
    let _ = std::fs::remove_dir_all(&dir);
}
