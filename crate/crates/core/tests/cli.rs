use std::path::{Path, PathBuf};
use std::process::Command;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn robinf(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_robinf")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn unitroot_writes_table_and_manifest() {
    let out = tempfile::tempdir().unwrap();
    let counts = fixtures().join("counts_infections.csv");
    let (code, stdout, stderr) = robinf(&[
        "unitroot",
        "--counts",
        path(&counts),
        "--country",
        "Betaland",
        "--B",
        "99",
        "--seed",
        "7",
        "--format",
        "md",
        "--out",
        path(out.path()),
        "--threads",
        "2",
    ]);
    assert_eq!(code, 0, "{stderr}");
    assert!(stdout.contains("unitroot_infections.md"));
    let table = std::fs::read_to_string(out.path().join("unitroot_infections.md")).unwrap();
    assert!(table.contains("| Betaland |"));
    assert!(!table.contains("Alphaland"));
    let manifest = std::fs::read_to_string(out.path().join("manifest.txt")).unwrap();
    assert!(manifest.contains("seed=7\n") && manifest.contains("B=99\n"));
    assert!(manifest.contains("input.counts=sha256:"));
}

#[test]
fn usage_errors_exit_2() {
    let counts = fixtures().join("counts_infections.csv");
    let (code, _, stderr) = robinf(&["unitroot", "--counts", path(&counts), "--B", "199"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--seed"), "{stderr}");
    let (code, _, _) = robinf(&["unitroot", "--counts", path(&counts), "--q", "1", "--B", "0"]);
    assert_eq!(code, 2);
    let (code, _, _) = robinf(&["nonsense"]);
    assert_eq!(code, 2);
    let (code, _, _) = robinf(&["predict", "--counts", path(&counts)]);
    assert_eq!(code, 2);
}

#[test]
fn data_errors_name_file_line_and_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("counts.csv");
    std::fs::write(
        &bad,
        "Province/State,Country/Region,Lat,Long,1/22/20,1/23/20\n,Alphaland,1,2,0,3\n,Betaland,1,2,1,x\n",
    )
    .unwrap();
    let (code, _, stderr) = robinf(&["tailindex", "--counts", path(&bad), "--out", path(dir.path())]);
    assert_eq!(code, 3);
    assert!(stderr.contains("counts.csv:3:"), "{stderr}");
    assert!(stderr.contains("1/23/20"), "{stderr}");

    let (code, _, stderr) = robinf(&[
        "unitroot",
        "--counts",
        path(&fixtures().join("counts_infections.csv")),
        "--country",
        "Atlantis",
        "--B",
        "0",
        "--out",
        path(dir.path()),
    ]);
    assert_eq!(code, 3);
    assert!(stderr.contains("Atlantis"), "{stderr}");
}

#[test]
fn collinear_factors_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let src = std::fs::read_to_string(fixtures().join("factors.csv")).unwrap();
    // Make HML a copy of SMB so every multi-factor design is singular.
    let mut out = String::new();
    for (i, line) in src.lines().enumerate() {
        let mut f: Vec<&str> = line.split(',').collect();
        if i > 0 {
            f[3] = f[2];
        }
        out.push_str(&f.join(","));
        out.push('\n');
    }
    let factors = dir.path().join("factors.csv");
    std::fs::write(&factors, out).unwrap();
    let (code, _, stderr) = robinf(&[
        "factors",
        "--prices-dir",
        path(&fixtures().join("prices")),
        "--factors",
        path(&factors),
        "--index",
        "COIN",
        "--models",
        "3f",
        "--out",
        path(dir.path()),
    ]);
    assert_eq!(code, 4, "{stderr}");
    assert!(stderr.contains("numerical"), "{stderr}");
}

#[test]
fn output_is_independent_of_thread_count() {
    let run = |threads: &str| {
        let out = tempfile::tempdir().unwrap();
        let f = fixtures();
        let (code, _, stderr) = robinf(&[
            "predict",
            "--counts",
            path(&f.join("counts_infections.csv")),
            "--prices-dir",
            path(&f.join("prices")),
            "--rates",
            path(&f.join("rates.csv")),
            "--index",
            "ALPHA_IDX=Alphaland",
            "--regressor",
            "d2",
            "--out",
            path(out.path()),
            "--threads",
            threads,
        ]);
        assert_eq!(code, 0, "{stderr}");
        std::fs::read(out.path().join("predict_infections.csv")).unwrap()
    };
    let one = run("1");
    assert_eq!(one, run("3"));
    let text = String::from_utf8(one).unwrap();
    assert!(text.starts_with(",Δ²Infections T,"));
}
