use std::io::Write;
use std::process::Command;

use serde_json::Value;

fn stabring(args: &[&str], threads: Option<&str>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_stabring"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("STABRING_THREADS", t),
        None => cmd.env_remove("STABRING_THREADS"),
    };
    let out = cmd.output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn stability_on_the_fano_difference_set() {
    let (status, out, _) = stabring(&["stability", "--group", "Z/7", "--set", "1,2,4"], None);
    assert_eq!(status, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "stability");
    assert_eq!(v["records"][0]["stability_index"], 3);
    assert_eq!(v["records"][0]["max_order"], 2);
}

#[test]
fn set_file_gives_one_record_per_line() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "1,2,4\n# a comment\n\n0,2,4,6\n{{}}").unwrap();
    let path = f.path().to_str().unwrap();
    let (status, out, err) = stabring(&["norm", "--group", "Z/8", "--set-file", path, "--output", "csv"], None);
    assert_eq!(status, 0, "{err}");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("group,set,size,norm"));
    assert!(lines[2].contains("true"), "{}", lines[2]);
}

#[test]
fn exit_status_two_on_bad_input() {
    assert_eq!(stabring(&["stability", "--group", "Z/x", "--set", "1"], None).0, 2);
    assert_eq!(stabring(&["norm", "--group", "Z/5", "--set-file", "/nonexistent/sets"], None).0, 2);
    assert_eq!(stabring(&["verify", "--groups", "Z/21", "--exhaustive"], None).0, 2);
    assert_eq!(stabring(&["halfgraph", "--k", "3"], Some("0")).0, 2);
}

#[test]
fn verify_status_tracks_violations() {
    let (status, out, _) = stabring(&["verify", "--groups", "Z/2..Z/7", "--exhaustive", "--sample", "20"], None);
    let v: Value = serde_json::from_str(&out).unwrap();
    let records = v["records"].as_array().unwrap();
    let bad = records.iter().filter(|r| r["theorem_ok"] == false || r["trace_norm_ok"] == false).count();
    assert_eq!(v["summary"]["violations"], bad);
    assert_eq!(status, (bad > 0) as i32);
    assert_eq!(v["summary"]["total"], records.len());
    assert!(v["summary"].get("runtime_seconds").is_none());
}

#[test]
fn verify_output_is_identical_across_thread_counts() {
    let args = ["verify", "--groups", "Z/11,Z/2xZ/6", "--sample", "200", "--seed", "5"];
    let (_, one, _) = stabring(&args, Some("1"));
    let (_, three, _) = stabring(&args, Some("3"));
    let (_, default, _) = stabring(&args, None);
    assert_eq!(one, three);
    assert_eq!(one, default);
    let (_, other_seed, _) = stabring(&["verify", "--groups", "Z/11,Z/2xZ/6", "--sample", "200", "--seed", "6"], None);
    assert_ne!(one, other_seed);
}

#[test]
fn interval_and_bounds_reports() {
    let (status, out, _) = stabring(&["interval", "--k", "16"], None);
    assert_eq!(status, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let r = &v["records"][0];
    assert_eq!(r["agree"], true);
    assert_eq!(r["c1_inequality"], true);
    assert!((r["quadrature"].as_f64().unwrap() - r["szego"].as_f64().unwrap()).abs() < 1e-7);

    let (status, out, _) = stabring(&["bounds", "--k", "2", "--s", "1"], None);
    assert_eq!(status, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["records"][0]["value"], "22");
    assert_eq!(v["records"][2]["expression"], "2^(2^14)");
    assert_eq!(v["chain_within_simplified"], true);

    let (status, out, _) = stabring(&["bounds", "--k", "2", "--s", "2"], None);
    assert_eq!(status, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["records"][2]["value"].is_null());
}

#[test]
fn floats_carry_seventeen_digits() {
    let (_, out, _) = stabring(&["norm", "--group", "Z/5", "--set", "0,1"], None);
    let v: Value = serde_json::from_str(&out).unwrap();
    let norm = v["records"][0]["norm"].as_f64().unwrap();
    // |1 + ω^j| summed over j and divided by 5.
    let want = (0..5).map(|j| 2.0 * (std::f64::consts::PI * j as f64 / 5.0).cos().abs()).sum::<f64>() / 5.0;
    assert!((norm - want).abs() < 1e-15);
    assert!(out.contains("e0,") || out.contains("e0}"));
}
