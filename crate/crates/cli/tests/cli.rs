use std::path::PathBuf;
use std::process::Command as Proc;

use integrality::asymptotic::{density_estimate, DensityMode};
use integrality::linalg::{int_vec, IntMatrix};
use integrality::oracle::{integer_hull_points, integrality_number_bruteforce, verify_integrality, Instance};
use integrality::wsynth::{synthesize, SynthMode};
use integrality_cli::{parse_instance, run, Command, Flags, Format};
use num_bigint::BigInt;
use proptest::prelude::*;
use serde_json::{json, Value};

const WORKED: &str = r#"{"A": [[1, 0, 0], [0, 1, 0], [2, 4, 5], [1, 4, 4], [2, 2, 3]]}"#;
const SPLIT: &str = r#"{"A": [[2, 0], [-2, 0], [0, 1], [0, -1]], "b": [1, 1, 1, 0]}"#;
const DESK: &str = r#"{"A": [[1, 0], [0, 1], [-1, -1], [-1, 1]], "b": [3, 3, 2, 1]}"#;

fn write(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("irelax-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn irelax(args: &[&str]) -> (i32, String) {
    let out = Proc::new(env!("CARGO_BIN_EXE_irelax")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn matrix(v: &Value) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|x| BigInt::from(x.as_i64().unwrap())).collect())
        .collect();
    let cols = rows.first().map_or(0, |r| r.len());
    IntMatrix::from_rows_with_cols(rows, cols).unwrap()
}

fn with_mode(mode: &str) -> Flags {
    Flags {
        mode: Some(mode.into()),
        ..Flags::default()
    }
}

#[test]
fn trivial_instance_parses() {
    let inst = parse_instance(r#"{"A": [[1]], "b": [0]}"#).unwrap();
    assert_eq!(inst.a, IntMatrix::from_i64(&[[1]]).unwrap());
    assert_eq!(inst.b, Some(int_vec(&[0])));
}

#[test]
fn ragged_rows_are_an_input_error() {
    let p = write("ragged.json", r#"{"A": [[1, 2], [3]]}"#);
    let (code, out) = irelax(&["delta", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["message"], "A[1]: ragged row: expected 2 entries, found 1");
    assert_eq!(v["status"], 2);
}

#[test]
fn worked_example_delta_through_the_binary() {
    let p = write("worked.json", WORKED);
    let (code, out) = irelax(&["delta", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["delta"], 5);
    let v = run(Command::Delta, r#"{"A": [[1, 4, 4], [2, 2, 3]]}"#, &Flags::default()).report;
    assert_eq!(v["result"]["delta"], 6);
}

#[test]
fn unimodular_square_matrix_needs_no_integrality() {
    let out = run(Command::Synthesize, r#"{"A": [[1, 1], [0, 1]]}"#, &Flags::default());
    assert_eq!(out.code, 0);
    assert_eq!(out.report["result"]["k"], 0);
}

#[test]
fn identity_w_always_verifies() {
    for text in [
        r#"{"A": [[2, 0], [-2, 0], [0, 1], [0, -1]], "b": [1, 1, 1, 0], "W": [[1, 0], [0, 1]]}"#,
        r#"{"A": [[1, 0], [0, 1], [-1, -1], [-1, 1]], "b": [3, 3, 2, 1], "W": [[1, 0], [0, 1]]}"#,
        r#"{"A": [[3, 1], [-1, 2], [-2, -3]], "b": [7, 5, 4], "W": [[1, 0], [0, 1]]}"#,
    ] {
        let out = run(Command::Verify, text, &Flags::default());
        assert_eq!(out.code, 0, "{}", out.render(Format::Json));
        assert_eq!(out.report["result"]["integral"], true);
    }
}

#[test]
fn failed_verification_exits_one() {
    let text = r#"{"A": [[2, 0], [-2, 0], [0, 1], [0, -1]], "b": [1, 1, 1, 0], "W": []}"#;
    let out = run(Command::Verify, text, &Flags::default());
    assert_eq!(out.code, 1);
    assert_eq!(out.report["result"]["fractional_vertex"], json!(["-1/2", "0"]));
}

#[test]
fn exceeded_caps_exit_three() {
    let flags = Flags {
        cap: Some(3),
        ..Flags::default()
    };
    let out = run(Command::Delta, WORKED, &flags);
    assert_eq!(out.code, 3);
    assert_eq!(out.report["error"]["kind"], "cap_exceeded");
}

#[test]
fn bad_flags_are_input_errors() {
    assert_eq!(run(Command::Delta, WORKED, &with_mode("fast")).code, 2);
    assert_eq!(run(Command::Hnf, WORKED, &with_mode("max")).code, 2);
    assert_eq!(run(Command::Verify, SPLIT, &Flags::default()).code, 2);
    assert_eq!(run(Command::Ip, WORKED, &Flags::default()).code, 2);
}

#[test]
fn density_table_matches_the_library() {
    let out = run(Command::Density, DESK, &with_mode("enumerate"));
    assert_eq!(out.code, 0);
    let table = out.report["result"]["table"].as_array().unwrap();
    assert_eq!(table.len(), 5);
    let a = IntMatrix::from_i64(&[[1, 0], [0, 1], [-1, -1], [-1, 1]]).unwrap();
    for (row, t) in table.iter().zip(1u64..) {
        let d = density_estimate(&a, t, DensityMode::Enumerate).unwrap();
        assert_eq!(row["t"], t);
        assert_eq!(row["fraction"], d.fraction.to_string());
        assert_eq!(row["good"].as_u64().unwrap() as u128, d.good);
        assert_eq!(row["total"].as_u64().unwrap() as u128, d.total);
    }
    let csv = out.render(Format::Csv);
    assert_eq!(csv.lines().count(), 6);
    assert!(csv.starts_with("t,total,good,empty,fraction,fraction_f64,std_error\n"));
}

#[test]
fn synthesis_matches_the_library() {
    let a = IntMatrix::from_i64(&[[1, 0, 0], [0, 1, 0], [2, 4, 5], [1, 4, 4], [2, 2, 3]]).unwrap();
    for (mode, m) in [("best", SynthMode::Best), ("part1", SynthMode::Part1), ("part2", SynthMode::Part2)] {
        let out = run(Command::Synthesize, WORKED, &with_mode(mode));
        let s = synthesize(&a, m).unwrap();
        assert_eq!(matrix(&out.report["result"]["W"]), s.w);
        assert_eq!(out.report["result"]["k"], s.k());
        assert_eq!(out.report["result"]["bound"]["holds"], true);
    }
}

#[test]
fn oracle_commands_match_the_library() {
    let inst = Instance::from_i64(&[[2, 0], [-2, 0], [0, 1], [0, -1]], &[1, 1, 1, 0]).unwrap();
    let out = run(Command::Inum, SPLIT, &Flags::default());
    let r = integrality_number_bruteforce(&inst, 2, 2).unwrap().unwrap();
    assert_eq!(out.report["result"]["k"], r.k);
    assert_eq!(matrix(&out.report["result"]["W"]), r.w);
    assert!(verify_integrality(&inst, &r.w).unwrap());

    let out = run(Command::Ip, SPLIT, &Flags::default());
    let h = integer_hull_points(&inst).unwrap();
    assert_eq!(out.report["result"]["lattice_points"], h.points.len());
    assert_eq!(matrix(&out.report["result"]["vertices"]), IntMatrix::from_rows(h.vertices).unwrap());
}

#[test]
fn certify_accepts_synthesized_output() {
    let synth = run(Command::Synthesize, WORKED, &Flags::default());
    let mut doc: Value = serde_json::from_str(WORKED).unwrap();
    doc["W"] = synth.report["result"]["W"].clone();
    let out = run(Command::Certify, &doc.to_string(), &Flags::default());
    assert_eq!(out.code, 0, "{}", out.render(Format::Json));
    doc["W"] = json!([[1, 0, 0]]);
    let out = run(Command::Certify, &doc.to_string(), &Flags::default());
    assert_eq!(out.code, 1);
    assert_eq!(out.report["result"]["certified"], false);
}

#[test]
fn good_set_and_cover_reports() {
    let out = run(Command::GoodSet, r#"{"A": [[1, 0], [0, 1], [-1, -1]], "b": [20, 20, 20]}"#, &Flags::default());
    assert_eq!(out.code, 0);
    assert_eq!(out.report["result"]["reduction"]["feasible"], true);
    let out = run(Command::GoodSet, DESK, &Flags::default());
    assert_eq!(out.code, 1);

    for mode in ["trivial", "box", "optimal"] {
        let out = run(Command::Cover, r#"{"A": [[1, 0], [0, 6]]}"#, &with_mode(mode));
        assert_eq!(out.code, 0, "{mode}");
        assert_eq!(out.report["result"]["verified"], true, "{mode}");
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let p = write("desk.json", DESK);
    let path = p.to_str().unwrap();
    for args in [
        vec!["density", path, "--mode", "sample", "--seed", "11", "--samples", "400", "--t", "3"],
        vec!["density", path, "--t", "2", "--csv"],
        vec!["hyperplanes", path],
        vec!["inum", path],
        vec!["synthesize", path],
    ] {
        let first = irelax(&args);
        let second = irelax(&args);
        assert_eq!(first, second, "{args:?}");
    }
    let q = write("desk-out.json", "");
    let (code, _) = irelax(&["ip", path, "--output", q.to_str().unwrap()]);
    assert_eq!(code, 0);
    let direct = run(Command::Ip, DESK, &Flags::default()).render(Format::Json);
    assert_eq!(std::fs::read_to_string(&q).unwrap(), direct);
}

#[test]
fn digest_depends_on_the_bytes() {
    let x = run(Command::Delta, WORKED, &Flags::default());
    let y = run(Command::Delta, &format!("{WORKED} "), &Flags::default());
    assert_eq!(x.report["result"], y.report["result"]);
    assert_ne!(x.report["input_sha256"], y.report["input_sha256"]);
}

proptest! {
    #[test]
    fn json_round_trip(rows in prop::collection::vec(prop::collection::vec(-10i64.pow(12)..10i64.pow(12), 3), 1..5),
                       big in any::<i128>()) {
        let mut doc = json!({ "A": rows.clone() });
        doc["A"][0][0] = json!(big.to_string());
        let inst = parse_instance(&doc.to_string()).unwrap();
        prop_assert_eq!(inst.a.rows(), rows.len());
        prop_assert_eq!(&inst.a[(0, 0)], &BigInt::from(big));
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate().skip(usize::from(i == 0)) {
                prop_assert_eq!(&inst.a[(i, j)], &BigInt::from(x));
            }
        }
    }

    #[test]
    fn reports_do_not_depend_on_key_order(a in -5i64..5, b in 1i64..5) {
        let x = format!(r#"{{"A": [[{b}, {a}], [0, 1]], "b": [3, 3]}}"#);
        let y = format!(r#"{{"b": [3, 3], "A": [[{b}, {a}], [0, 1]]}}"#);
        let rx = run(Command::Hnf, &x, &Flags::default());
        let ry = run(Command::Hnf, &y, &Flags::default());
        prop_assert_eq!(&rx.report["result"], &ry.report["result"]);
        prop_assert_eq!(rx.code, ry.code);
    }
}
