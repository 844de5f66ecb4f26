use std::path::PathBuf;
use std::process::Command;

fn cy4() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cy4"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = cy4().args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).to_string(),
        String::from_utf8_lossy(&out.stderr).to_string(),
    )
}

#[test]
fn check_master_passes_on_fixtures() {
    for f in ["four_cycle.json", "c4.json", "point.json"] {
        let (code, stdout, _) = run(&["quiver", "check-master", fixture(f).to_str().unwrap()]);
        assert_eq!(code, 0, "{f}");
        assert!(stdout.contains("master equation holds"));
    }
}

#[test]
fn check_master_fails_on_broken_potential() {
    // drop one superpotential term from the cycle quiver
    let text = std::fs::read_to_string(fixture("four_cycle.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let terms = v["superpotential"].as_array_mut().unwrap();
    terms.pop();
    let dir = std::env::temp_dir().join("cy4-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let (code, stdout, _) = run(&["quiver", "check-master", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stdout.contains("FAILS"));
}

#[test]
fn input_errors_exit_2() {
    let (code, _, stderr) = run(&["quiver", "check-master", "/nonexistent.json"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error"));
    let (code, _, _) = run(&["verify", "--suite", "nonsense"]);
    assert_eq!(code, 2);
    let (code, _, _) =
        run(&["quiver", "diff", fixture("c4.json").to_str().unwrap(), "--generator", "zz"]);
    assert_eq!(code, 2);
}

#[test]
fn diff_prints_application_order() {
    let (code, stdout, _) = run(&[
        "quiver",
        "diff",
        fixture("four_cycle.json").to_str().unwrap(),
        "--generator",
        "rho1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "-1 * e4;e1");
}

#[test]
fn complete_emits_differential_table() {
    let (code, stdout, _) =
        run(&["quiver", "complete", fixture("c4.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["edges"].as_array().unwrap().len(), 15);
    assert!(v["differential"]["c12"].is_array());
    // byte-stable output
    let (_, stdout2, _) = run(&["quiver", "complete", fixture("c4.json").to_str().unwrap()]);
    assert_eq!(stdout, stdout2);
}

#[test]
fn graft_output_recompletes() {
    let dir = std::env::temp_dir().join("cy4-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("grafted.json");
    let (code, _, _) = run(&[
        "quiver",
        "graft",
        fixture("four_cycle.json").to_str().unwrap(),
        "--frame",
        "ms",
        "--r",
        "4",
        "--l",
        "2",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, stdout, _) = run(&["quiver", "check-master", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
    // bad parameters are input errors
    let (code, _, _) = run(&[
        "quiver",
        "graft",
        fixture("four_cycle.json").to_str().unwrap(),
        "--frame",
        "ms",
        "--r",
        "2",
        "--l",
        "1",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn euler_form_values() {
    let (code, stdout, _) = run(&[
        "euler",
        "--quiver",
        fixture("point.json").to_str().unwrap(),
        "--d",
        "3",
        "--e",
        "5",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "30");
    let (code, stdout, _) = run(&[
        "euler",
        "--quiver",
        fixture("c4.json").to_str().unwrap(),
        "--d",
        "4",
        "--e",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "0");
}

#[test]
fn fixed_points_and_bound() {
    let (code, stdout, _) = run(&["rep", "fixed-points", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "10");
    let (code, _, _) = cy4()
        .args(["rep", "fixed-points", "--n", "5"])
        .env("CY4_MAX_N", "4")
        .output()
        .map(|o| (o.status.code().unwrap_or(-1), (), ()))
        .unwrap();
    assert_eq!(code, 3, "resource bound exceeded must exit 3");
}

#[test]
fn series_commands() {
    let (code, stdout, _) = run(&[
        "series",
        "expand",
        "--expr",
        "(l1+z)^-1",
        "--regime",
        "global",
        "--order",
        "3",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("z^-1: (1)"));
    let (code, stdout, _) =
        run(&["series", "sqrt-euler", "--spec", fixture("sqrt_euler.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("holds"));
    let (code, _, _) = run(&[
        "series",
        "global-residue",
        "--theta",
        fixture("theta_selfdual.json").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, stdout, _) = run(&[
        "series",
        "global-residue",
        "--theta",
        fixture("theta_single.json").to_str().unwrap(),
    ]);
    assert_eq!(code, 1, "a single weight violates the residue assumption");
    assert!(stdout.contains("NOT"));
}

#[test]
fn wc_commands() {
    let classes = fixture("classes.json");
    let (code, stdout, _) =
        run(&["wc", "js", "--alpha", "1,0", "--classes", classes.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "-[P,X_b]");
    let (code, stdout, _) =
        run(&["wc", "invert", "--alpha", "2,1", "--classes", classes.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("Om_b2g"));
    let (code, stdout, _) = run(&["wc", "dtpt", "--order", "3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("inversion round trip: exact"));
    let (code, stdout, _) = run(&["wc", "hilb", "--order", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("Hilb_1 = [M1,P]"));
}

#[test]
fn toy_commands() {
    let (code, stdout, _) = run(&["toy", "pushforward", "--r", "2", "--expr", "h^1"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "1");
    let (code, stdout, _) = run(&["toy", "bracket-check", "--r", "4"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("matches"));
    let (code, stdout, _) = run(&[
        "toy",
        "flag-residues",
        "--spec",
        fixture("flag_residues.json").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("locus 1 residue: A"));
}

#[test]
fn verify_all_passes() {
    let (code, stdout, _) = run(&["verify", "--suite", "all", "--seed", "7"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.lines().all(|l| l.starts_with("[pass]")));
    assert!(stdout.lines().count() >= 25);
}
