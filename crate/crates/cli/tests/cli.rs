use std::fs;
use std::process::{Command, Output};

fn icef(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_icef"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn iris() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/iris.csv").to_string()
}

fn mass_of(text: &str, subset: &str) -> String {
    text.lines()
        .find(|l| l.split_whitespace().next() == Some(subset))
        .and_then(|l| l.split_whitespace().nth(1))
        .unwrap_or_default()
        .to_string()
}

#[test]
fn fuse_dcr_on_document_file() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("fault.toml");
    let text = stdout(&icef(&["builtin", "fault-diagnosis"]));
    fs::write(&doc, text).unwrap();
    let o = icef(&["fuse", doc.to_str().unwrap(), "--method", "dcr"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    let got: Vec<_> = ["{A1}", "{A2}", "{A3}", "{A1,A2,A3}"]
        .iter()
        .map(|k| mass_of(&s, k))
        .collect();
    assert_eq!(got, ["0.0000", "0.3443", "0.6557", "0.0000"]);
    assert!(s.contains("decision: A3"));
}

#[test]
fn fuse_icef_default() {
    let o = icef(&[
        "fuse",
        "--builtin",
        "fault-diagnosis",
        "--method",
        "icef-pbagd",
    ]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert_eq!(mass_of(&s, "{A1}"), "0.9974");
    assert!(s.contains("decision: A1"));
    assert_eq!(mass_of(&s, "m5"), "0.0009");
}

#[test]
fn full_precision_flag() {
    let o = icef(&[
        "fuse",
        "--builtin",
        "fault-diagnosis",
        "--method",
        "murphy",
        "--full-precision",
    ]);
    let m = mass_of(&stdout(&o), "{A1}");
    assert!(m.len() > 8, "{m}");
    assert!((m.parse::<f64>().unwrap() - 0.9715).abs() < 1e-4);
}

#[test]
fn every_method_runs() {
    for method in ["dcr", "murphy", "icef-pbagd", "cef-avg", "cef-eig"] {
        for measure in ["pbagd", "bjs"] {
            let o = icef(&[
                "fuse",
                "--builtin",
                "multi-sensor",
                "--method",
                method,
                "--measure",
                measure,
            ]);
            assert_eq!(code(&o), 0, "{method} {measure}");
        }
    }
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(
        &bad,
        "frame = [\"A1\", \"A2\"]\n[[evidence]]\nmasses = { \"A1\" = 0.4 }\n",
    )
    .unwrap();
    let o = icef(&["fuse", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.toml"));
    assert_eq!(code(&icef(&["fuse", "--builtin", "nonsense"])), 2);
    assert_eq!(
        code(&icef(&[
            "fuse",
            "--builtin",
            "fault-diagnosis",
            "--method",
            "yager"
        ])),
        2
    );
}

#[test]
fn total_conflict_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("conflict.toml");
    fs::write(
        &doc,
        "frame = [\"A1\", \"A2\"]\n[[evidence]]\nmasses = { \"A1\" = 1.0 }\n[[evidence]]\nmasses = { \"A2\" = 1.0 }\n",
    )
    .unwrap();
    assert_eq!(
        code(&icef(&["fuse", doc.to_str().unwrap(), "--method", "dcr"])),
        3
    );
}

#[test]
fn non_convergence_exits_4_with_hint() {
    let o = icef(&["fuse", "--builtin", "fault-diagnosis", "--max-iter", "2"]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("icef trace --builtin fault-diagnosis"));
}

#[test]
fn missing_file_exits_5() {
    assert_eq!(code(&icef(&["fuse", "/nonexistent/evidence.toml"])), 5);
    let o = icef(&[
        "trace",
        "--builtin",
        "fault-diagnosis",
        "--out",
        "/nonexistent/dir/trace.csv",
    ]);
    assert_eq!(code(&o), 5);
}

#[test]
fn trace_reaches_table_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("trace.csv");
    let o = icef(&[
        "trace",
        "--builtin",
        "fault-diagnosis",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert!(lines[0].starts_with("step,p(A1),p(A2),p(A3),cred(m1)"));
    let last: Vec<_> = lines.last().unwrap().split(',').collect();
    assert_eq!(
        &last[4..9],
        ["0.2349", "0.2874", "0.1588", "0.3180", "0.0009"]
    );
}

#[test]
fn trace_eem_init_is_not_slower() {
    let rows = |init| {
        stdout(&icef(&[
            "trace",
            "--builtin",
            "fault-diagnosis",
            "--init",
            init,
        ]))
        .lines()
        .count()
    };
    assert!(rows("eem") <= rows("uniform"));
}

#[test]
fn single_evidence_converges_with_full_credibility() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("one.toml");
    fs::write(
        &doc,
        "frame = [\"A1\", \"A2\"]\n[[evidence]]\nmasses = { \"A1\" = 0.6, \"A1,A2\" = 0.4 }\n",
    )
    .unwrap();
    let s = stdout(&icef(&["trace", doc.to_str().unwrap()]));
    let first: Vec<_> = s.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(first[3], "1.0000");
}

#[test]
fn divergence_curves() {
    let s = stdout(&icef(&["divergence", "--builtin", "example2"]));
    let zero = s
        .lines()
        .filter(|l| l.contains(",0.95,"))
        .all(|l| l.ends_with(",0.0000"));
    assert!(zero);
    assert_eq!(s.lines().count(), 1 + 190);
    assert_eq!(
        s,
        stdout(&icef(&["divergence", "--builtin", "alpha-sweep"]))
    );
    let s = stdout(&icef(&["divergence", "--builtin", "moving-set"]));
    let values: Vec<f64> = s
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    let argmin = (0..values.len())
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap();
    assert_eq!(argmin + 1, 5);
}

#[test]
fn identical_pair_has_zero_divergence() {
    let s = stdout(&icef(&["divergence", "--builtin", "identical-singletons"]));
    assert!(s.contains("m1,0.0000,0.0000"));
    assert!(s.contains("# EEM (pbagd)"));
}

#[test]
fn bench_montecarlo_is_deterministic() {
    let run = || {
        icef(&[
            "bench",
            &iris(),
            "--label",
            "species",
            "--trials",
            "20",
            "--seed",
            "9",
            "--methods",
            "dcr,icef-pbagd",
        ])
    };
    let (a, b) = (run(), run());
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    let s = stdout(&a);
    assert!(s.starts_with("class,dcr,icef-pbagd\n"));
    let total: Vec<f64> = s
        .lines()
        .find(|l| l.starts_with("Total"))
        .unwrap()
        .split(',')
        .skip(1)
        .map(|x| x.parse().unwrap())
        .collect();
    assert!(total[1] >= total[0]);
}

#[test]
fn bench_sweep_writes_51_rows_per_method() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let o = icef(&[
        "bench",
        &iris(),
        "--label",
        "species",
        "--mode",
        "sweep",
        "--methods",
        "dcr,icef-pbagd",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("dcr,")).count(), 51);
    assert_eq!(
        text.lines()
            .filter(|l| l.starts_with("icef-pbagd,"))
            .count(),
        51
    );
    assert!(stdout(&o).contains("Total,"));
}

#[test]
fn bench_schema_errors_exit_6() {
    assert_eq!(code(&icef(&["bench", &iris(), "--label", "kind"])), 6);
    let dir = tempfile::tempdir().unwrap();
    let schema = dir.path().join("schema.toml");
    fs::write(
        &schema,
        "label = \"species\"\nattributes = [\"petal_area\"]\n",
    )
    .unwrap();
    assert_eq!(
        code(&icef(&[
            "bench",
            &iris(),
            "--schema",
            schema.to_str().unwrap()
        ])),
        6
    );
    fs::write(
        &schema,
        "label = \"species\"\nattributes = [\"petal_length\", \"petal_width\"]\n",
    )
    .unwrap();
    assert_eq!(
        code(&icef(&[
            "bench",
            &iris(),
            "--schema",
            schema.to_str().unwrap(),
            "--trials",
            "2"
        ])),
        0
    );
}

#[test]
fn bench_bad_cells_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("d.csv");
    fs::write(&data, "a,b,label\n1,2,x\n3,oops,y\n").unwrap();
    let o = icef(&["bench", data.to_str().unwrap(), "--label", "label"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("row 3"));
}

#[test]
fn builtin_document_round_trips_through_fuse() {
    let o = icef(&["builtin", "multi-sensor"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("frame = [\"A1\", \"A2\", \"A3\"]"));
}
