use eaqecc_cli::{run, TableRow, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("eaqecc").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

const HEADER: &str = "q,m,n,k_classical,delta,K,c,d_lb,singleton_defect,exceeds_gv,flags";

#[test]
fn table_csv_shape() {
    let (code, out, _) = invoke(&["table", "--q", "3"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some(HEADER));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 32);
    assert!(rows[8].starts_with("3,8,27,"));
}

#[test]
fn table_row_m8() {
    let (_, out, _) = invoke(&["table", "--q", "3", "--format", "json"]);
    let rows: Vec<TableRow> = serde_json::from_str(&out).unwrap();
    let r = &rows[8];
    assert_eq!((r.m, r.k, r.c, r.d_lb), (8, 1, 16, 19));
    assert_eq!(r.singleton_defect, 6);
    assert!(r.exceeds_gv);
    assert!(r.flags.split(';').any(|f| f == "distance_is_exact_unknown"));
}

#[test]
fn csv_and_json_agree() {
    let (_, csv_text, _) = invoke(&["table", "--q", "4", "--format", "csv"]);
    let (_, json_text, _) = invoke(&["table", "--q", "4", "--format", "json"]);
    let from_json: Vec<TableRow> = serde_json::from_str(&json_text).unwrap();
    let from_csv: Vec<TableRow> = csv::Reader::from_reader(csv_text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .unwrap();
    assert_eq!(from_csv, from_json);
    assert_eq!(from_csv.len(), 64 + 12 - 2 + 1);
    let raw: serde_json::Value = serde_json::from_str(&json_text).unwrap();
    assert!(raw[0].get("K").is_some());
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["table", "--q", "5"][..],
        &["table", "--q", "5", "--format", "json"],
        &["params", "--q", "3", "--m", "15", "--trace"],
        &["gv-scan", "--q", "4"],
    ] {
        assert_eq!(invoke(args).1, invoke(args).1, "{args:?}");
    }
}

#[test]
fn table_subrange_and_file_output() {
    let path = std::env::temp_dir().join(format!("eaqecc-table-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, _) = invoke(&[
        "table", "--q", "2", "--min-m", "2", "--max-m", "4", "--out", p,
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let ms: Vec<&str> = written
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert_eq!(ms, ["2", "3", "4"]);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["table", "--q", "2", "--min-m", "5", "--max-m", "4"][..],
        &["table", "--q", "6"],
        &["table", "--q", "3", "--max-m", "40"],
        &["params", "--q", "7", "--m", "5000"],
        &["params", "--q", "3", "--m", "-1"],
        &["verify", "--q", "16"],
        &["verify", "--q", "7"],
        &["bench", "--q", "16", "--algo", "oracle"],
        &["bench", "--q", "3", "--algo", "quantum"],
        &["frobnicate"],
        &[],
    ] {
        let (code, _, err) = invoke(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
    let (_, _, err) = invoke(&["verify", "--q", "16"]);
    assert!(err.contains("oracle infeasible"));
}

#[test]
fn help_and_version_succeed() {
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("gv-scan"));
    let (code, out, _) = invoke(&["--version"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("eaqecc "));
}

#[test]
fn params_record() {
    let (code, out, _) = invoke(&["params", "--q", "3", "--m", "14"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next(), Some("[[27, 6, 13; 9]]_3"));
}

#[test]
fn params_trace_lists_phi() {
    let (_, out, _) = invoke(&[
        "params", "--q", "3", "--m", "15", "--trace", "--algo", "baseline",
    ]);
    let golden = include_str!("../../core/tests/golden/phi_q3_m15.txt");
    assert!(out.ends_with(golden));
    assert!(out.contains("orders 0,9,12,18,21,24,3,22,25,4,15,26,13"));

    let (_, out, _) = invoke(&["params", "--q", "3", "--m", "15", "--trace"]);
    assert!(out.contains("materialized = 4"));
    assert!(out.contains("x^5\t15\tx^7\t21\tx^3y\t13"));

    // Above m* the trace follows the dual side.
    let (_, out, _) = invoke(&["params", "--q", "3", "--m", "21", "--trace"]);
    assert!(out.contains("trace: Phi(10)"));
    let (_, out, _) = invoke(&["params", "--q", "3", "--m", "4", "--trace"]);
    assert!(out.contains("no reductions needed"));
}

#[test]
fn verify_small_fields() {
    for q in ["2", "3"] {
        let (code, out, _) = invoke(&["verify", "--q", q]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("agree"));
    }
    // The mismatch code is distinct from usage errors.
    assert_ne!(EXIT_MISMATCH, EXIT_USAGE);
}

#[test]
fn bench_algorithms_agree() {
    let deltas = |algo: &str| {
        let (code, out, _) = invoke(&["bench", "--q", "3", "--algo", algo, "--format", "json"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        v["deltas"].clone()
    };
    let base = deltas("baseline");
    assert_eq!(base.as_array().unwrap().len(), 32);
    assert_eq!(base, deltas("optimized"));
    assert_eq!(base, deltas("oracle"));
}

#[test]
fn bench_q16_within_bound() {
    let (code, out, _) = invoke(&["bench", "--q", "16", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let bound = v["reduction_bound"].as_u64().unwrap();
    assert_eq!(bound, 16 * 17 * 255 / 2);
    assert!(v["max_reduction_count_per_m"].as_u64().unwrap() <= bound);
    let (_, text, _) = invoke(&["bench", "--q", "2", "--repeat", "3"]);
    assert!(text.contains("repeat = 3"));
}

#[test]
fn gv_scan_small_rows() {
    for (q, want) in [("2", "2 8 0--3"), ("3", "3 27 1--16"), ("4", "4 64 3--45")] {
        let (code, out, _) = invoke(&["gv-scan", "--q", q]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.trim_end(), want);
    }
}
