use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ergodual"))
        .args(args)
        .env_remove("ERGODUAL_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

/// Header plus rows split on commas.
fn table(out: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let text = stdout(out);
    let mut lines = text.lines();
    let header = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

fn col(rows: &[Vec<String>], i: usize) -> Vec<f64> {
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn folner_su2_ratios_decrease() {
    let out = run(&["folner", "--ring", "SU2", "--S", "1", "--steps", "30"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let (header, rows) = table(&out);
    assert_eq!(header, ["step", "|F_n|_w", "|∂_S(F_n)|_w", "ratio"]);
    assert_eq!(rows.len(), 30);
    let ratio = col(&rows, 3);
    assert!(ratio.windows(2).all(|w| w[1] < w[0]));
    for (i, r) in rows.iter().enumerate() {
        let m = (i + 1) as u64;
        let num = (m + 1).pow(2) + (m + 2).pow(2);
        let den: u64 = (0..=m).map(|k| (k + 1).pow(2)).sum();
        assert_eq!(r[1].parse::<u64>().unwrap(), den);
        assert_eq!(r[2].parse::<u64>().unwrap(), num);
        assert_eq!(ratio[i], num as f64 / den as f64);
    }
}

#[test]
fn fusion_of_s3_standard_rep() {
    let out = run(&["fusion", "--ring", "finite:S3", "--a", "std", "--b", "std"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let (header, rows) = table(&out);
    assert_eq!(header, ["irrep", "name", "multiplicity", "dim"]);
    let names: Vec<&str> = rows.iter().map(|r| r[1].as_str()).collect();
    assert_eq!(names, ["trivial", "sign", "std"]);
    assert!(rows.iter().all(|r| r[2] == "1"));
}

#[test]
fn wiener_energy_of_haar_is_reciprocal_box_size() {
    let m = data("haar.json");
    let out = run(&[
        "wiener",
        "--kind",
        "energy",
        "--measure",
        m.to_str().unwrap(),
        "--ring",
        "Z",
        "--steps",
        "100",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let (header, rows) = table(&out);
    assert_eq!(header, ["step", "|F_n|_w", "value_re", "value_im"]);
    assert_eq!(rows.len(), 100);
    for (i, v) in col(&rows, 2).iter().enumerate() {
        let n = (i + 1) as f64;
        assert!((v - 1.0 / (2.0 * n + 1.0)).abs() < 1e-15);
    }
    assert!(stderr(&out).contains("continuous"));
}

#[test]
fn wiener_atom_with_target() {
    let m = data("circle_half_atom.json");
    let out = run(&[
        "wiener",
        "--kind",
        "atom",
        "--measure",
        m.to_str().unwrap(),
        "--at",
        "z:1,0",
        "--target",
        "--steps",
        "20",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let (header, rows) = table(&out);
    assert_eq!(header.len(), 6);
    assert_eq!(header[4], "target");
    assert!(col(&rows, 4).iter().all(|t| *t == 0.5));
    let err = col(&rows, 5);
    for (i, e) in err.iter().enumerate() {
        let n = (i + 1) as f64;
        assert!((e - 0.5 / (2.0 * n + 1.0)).abs() < 1e-12);
    }
}

#[test]
fn wiener_on_s3_full_dual_hits_point_mass() {
    let m = data("s3_atom.json");
    let out = run(&[
        "wiener",
        "--kind",
        "atom",
        "--measure",
        m.to_str().unwrap(),
        "--at",
        "g:1",
        "--target",
        "--schedule",
        "full",
        "--steps",
        "1",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let (_, rows) = table(&out);
    assert!(col(&rows, 5)[0] < 1e-12);
}

#[test]
fn wiener_with_schedule_file() {
    let m = data("su2_dirac_haar.json");
    let s = data("spin_pairs.json");
    let out = run(&[
        "wiener",
        "--kind",
        "char",
        "--measure",
        m.to_str().unwrap(),
        "--schedule",
        s.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let (_, rows) = table(&out);
    assert_eq!(col(&rows, 1), [14.0, 55.0, 140.0]);
}

#[test]
fn atom_kind_needs_an_element() {
    let m = data("haar.json");
    let out = run(&["wiener", "--kind", "atom", "--measure", m.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invalid_measure_json_exits_2_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        "{ \"group\": \"Z\",\n  \"atoms\": [ { \"element\": \"z:1,0\" ] }",
    )
    .unwrap();
    let out = run(&[
        "wiener",
        "--kind",
        "energy",
        "--measure",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn invalid_measure_field_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{ "group": "Z", "atoms": [ { "element": "z:1,0", "weight": 1.0 }, { "element": "q:1", "weight": 1.0 } ] }"#,
    )
    .unwrap();
    let out = run(&[
        "wiener",
        "--kind",
        "energy",
        "--measure",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("atoms[1]"), "{}", stderr(&out));
}

#[test]
fn unknown_ring_and_schedule_are_usage_errors() {
    let out = run(&["folner", "--ring", "SO3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!stderr(&out).is_empty());
    let out = run(&["folner", "--ring", "SU2", "--schedule", "boxes"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("spins"));
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_file_is_a_validation_error() {
    let out = run(&[
        "wiener",
        "--kind",
        "energy",
        "--measure",
        "/nonexistent/measure.json",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ergodic_point_rep_on_circle() {
    let spec = data("circle_points.json");
    let out = run(&[
        "ergodic",
        "--rep",
        "point",
        "--spec",
        spec.to_str().unwrap(),
        "--steps",
        "50",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let (header, rows) = table(&out);
    assert_eq!(
        header,
        [
            "step",
            "|F_n|_w",
            "distance",
            "commutant_residue",
            "cyclic_re",
            "cyclic_im"
        ]
    );
    let d = col(&rows, 2);
    assert!(d[49] < d[0]);
    assert!(d[49] < 0.03);
}

#[test]
fn ergodic_group_rep_on_z2() {
    let spec = data("z2_unitaries.json");
    let out = run(&[
        "ergodic",
        "--rep",
        "group",
        "--spec",
        spec.to_str().unwrap(),
        "--steps",
        "100",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let (_, rows) = table(&out);
    // diag(1, i) and diag(1, -1): the second entry averages to a product of
    // two one-dimensional geometric means, each at most 1/(2N+1) in size.
    for (i, d) in col(&rows, 2).iter().enumerate() {
        let n = (i + 1) as f64;
        assert!(*d <= 1.0 / (2.0 * n + 1.0) + 1e-15);
    }
}

#[test]
fn ergodic_gns_on_s3_is_exact() {
    let spec = data("s3_gns.json");
    let out = run(&[
        "ergodic",
        "--rep",
        "gns",
        "--spec",
        spec.to_str().unwrap(),
        "--schedule",
        "full",
        "--steps",
        "1",
        "--tol",
        "1e-10",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let (_, rows) = table(&out);
    assert!(col(&rows, 2)[0] < 1e-10);
    // ⟨M 1, 1⟩ = φ(e).
    assert!((col(&rows, 4)[0] - 0.5).abs() < 1e-12);
    assert!(stderr(&out).contains("passed = true"));
}

#[test]
fn gns_needs_a_finite_group() {
    let spec = data("circle_points.json");
    let out = run(&["ergodic", "--rep", "gns", "--spec", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let m = data("su2_dirac_haar.json");
    let args = [
        "wiener",
        "--kind",
        "atom",
        "--measure",
        m.to_str().unwrap(),
        "--at",
        "q:0.6,0,0.8,0",
        "--target",
        "--steps",
        "25",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
}

#[test]
fn out_and_gnuplot_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    let dat = dir.path().join("r.dat");
    let out = run(&[
        "folner",
        "--ring",
        "Z^d:2",
        "--steps",
        "4",
        "--out",
        csv.to_str().unwrap(),
        "--gnuplot",
        dat.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 5);
    let plot = std::fs::read_to_string(&dat).unwrap();
    assert!(plot.starts_with('#'));
    assert_eq!(plot.lines().filter(|l| !l.starts_with('#')).count(), 4);
}

#[test]
fn tolerance_from_environment() {
    let m = data("circle_half_atom.json");
    let base = [
        "wiener",
        "--kind",
        "energy",
        "--measure",
        m.to_str().unwrap(),
        "--steps",
        "200",
    ];
    let strict = Command::new(env!("CARGO_BIN_EXE_ergodual"))
        .args(base)
        .env("ERGODUAL_TOL", "1e-9")
        .output()
        .unwrap();
    assert!(
        stderr(&strict).contains("inconclusive"),
        "{}",
        stderr(&strict)
    );
    let loose = run(&base);
    assert!(stderr(&loose).contains("atomic"), "{}", stderr(&loose));
}
