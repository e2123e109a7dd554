use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cn-spectra"))
        .args(args)
        .env_remove("CN_SPECTRA_CACHE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_p3(dir: &Path) -> String {
    let path = dir.join("p3.json");
    std::fs::write(&path, r#"{"n":3,"edges":[[0,1],[1,2]]}"#).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn verify_quasidihedral_range() {
    let o = run(&["verify", "--family", "qd", "--n", "4..6"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.ends_with("ok")));
    assert!(rows[0].starts_with("qd(n=4)"));
}

#[test]
fn sz2_energy_is_exact() {
    let o = run(&[
        "energy",
        "--family",
        "sz2-quotient",
        "--z",
        "1",
        "--method",
        "exact",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["le_cn"], serde_json::json!([648, 19]));
    assert_eq!(v["vertex_count"], 19);
}

#[test]
fn exact_method_needs_a_clique_union() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = write_p3(dir.path());
    let o = run(&["spectrum", "--graph", &p3, "--method", "exact"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["spectrum", "--graph", &p3, "--method", "numeric"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--family", "qd"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "--family", "nope", "--n", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--family", "qd", "--n", "4", "--tol", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["energy", "--family", "psl", "--k", "9"])
            .status
            .code(),
        Some(3)
    );
    // Odd center sizes cannot realize an even-m quotient.
    assert_eq!(
        run(&["build", "--family", "d2m-quotient", "--m", "4", "--z", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn sweep_csv_schema() {
    let o = run(&[
        "sweep", "--family", "dicyclic", "--n", "5..7", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut rows = csv::Reader::from_reader(out.as_bytes());
    let header: Vec<String> = rows.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header,
        [
            "family",
            "params",
            "vertices",
            "le_cn",
            "le_plus_cn",
            "baseline",
            "cnl_verdict",
            "cnsl_verdict",
            "reference_verdict",
            "match"
        ]
    );
    let records: Vec<csv::StringRecord> = rows.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 3);
    // Q_20: LE = 1232/3, kept as a fraction.
    assert_eq!(&records[0][3], "1232/3");
    assert_eq!(&records[1][6], "hyper");
    assert_eq!(&records[1][7], "below");
    assert!(records.iter().all(|r| &r[9] == "true"));
}

#[test]
fn outputs_are_idempotent_and_cached_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cache = cache.to_str().unwrap();
    let cases: [&[&str]; 3] = [
        &[
            "verify", "--family", "u6n", "--n", "1..3", "--format", "json",
        ],
        &[
            "spectrum", "--family", "dihedral", "--m", "5", "--format", "csv",
        ],
        &[
            "classify",
            "--family",
            "metacyclic",
            "--m",
            "5",
            "--n",
            "2",
            "--format",
            "text",
        ],
    ];
    for args in cases {
        let plain = run(args);
        assert_eq!(plain.status.code(), Some(0));
        assert_eq!(stdout(&plain), stdout(&run(args)));
        let with_cache: Vec<&str> = args.iter().copied().chain(["--cache", cache]).collect();
        let first = run(&with_cache);
        let second = run(&with_cache);
        assert_eq!(stdout(&first), stdout(&plain));
        assert_eq!(stdout(&second), stdout(&plain));
    }
    assert!(std::fs::read_dir(cache).unwrap().count() >= 5);
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_cn-spectra"))
        .args(["energy", "--family", "gl", "--q", "3"])
        .env("CN_SPECTRA_CACHE", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn graph_formats() {
    let dot = stdout(&run(&[
        "graph", "--family", "dihedral", "--m", "3", "--format", "dot",
    ]));
    assert!(dot.starts_with("graph commuting {"));
    let json = stdout(&run(&["graph", "--family", "dihedral", "--m", "3"]));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d6.json");
    std::fs::write(&path, json).unwrap();
    // The exported document reads back as the same clique union.
    let text = stdout(&run(&[
        "graph",
        "--graph",
        path.to_str().unwrap(),
        "--format",
        "text",
    ]));
    assert!(
        text.contains("5 vertices, 1 edges, clique union [(1, 3), (2, 1)]"),
        "{text}"
    );
    assert_eq!(
        run(&["energy", "--family", "qd", "--n", "4", "--format", "dot"])
            .status
            .code(),
        Some(2)
    );
}
