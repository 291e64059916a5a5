use std::path::PathBuf;

use o2deg::gamma::GammaGroup;
use o2deg::o2_lattice::SymmetryGroup;
use serde_json::Value;

fn config(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("o2deg").chain(args.iter().copied());
    let code = o2deg_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn commands() -> Vec<Vec<String>> {
    let own = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    vec![
        own(&["ccs", "D8xZ2"]),
        own(&["character-table", "8"]),
        own(&["maximal-orbit-types", "D8xZ2"]),
        own(&["maximal-orbit-types", "D8xZ2", "--m", "2", "--convention", "reference"]),
        own(&["basic-degree", "D8xZ2", "--j", "1"]),
        own(&["basic-degree", "D6xZ2", "--m", "2", "--j", "2"]),
        own(&["burnside-mul", "D8xZ2", "(G) - (D2 ^D1 x^tD8d D8p)", "(G) - (D2 ^D1 x^tD8d D8p)"]),
        own(&["fold", "D8xZ2", "(D8 ^Z1 x^Z1m D8p)#1", "3"]),
        own(&["folding-relation", "D8xZ2", "(D4 ^Z1 x^Z4d D8p)", "2", "1"]),
        own(&["analyze", "--config", &config("pendula8.json")]),
        own(&["analyze", "--config", &config("d6_general.json")]),
    ]
}

#[test]
fn output_is_deterministic() {
    for cmd in commands() {
        for json in [false, true] {
            let mut args: Vec<&str> = cmd.iter().map(String::as_str).collect();
            if json {
                args.insert(0, "--json");
            }
            let first = run(&args);
            assert_eq!(first.0, 0, "{args:?}: {}", first.2);
            assert!(!first.1.is_empty());
            assert_eq!(run(&args), first, "{args:?}");
        }
    }
}

fn orbit_names(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::String(s) if s.starts_with('(') && (s.ends_with(')') || s.contains(")#")) => out.push(s.clone()),
        Value::Array(a) => a.iter().for_each(|x| orbit_names(x, out)),
        Value::Object(o) => o.values().for_each(|x| orbit_names(x, out)),
        _ => {}
    }
}

#[test]
fn printed_names_parse_back() {
    let groups = [("D8xZ2", 8), ("D6xZ2", 6)];
    let mut total = 0;
    for cmd in commands().into_iter().filter(|c| c[0] != "ccs" && c[0] != "character-table") {
        let mut args: Vec<&str> = cmd.iter().map(String::as_str).collect();
        args.insert(0, "--json");
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "{err}");
        let n = if cmd.iter().any(|a| a.contains("D6") || a.contains("d6_")) { groups[1].1 } else { groups[0].1 };
        let g = SymmetryGroup::new(GammaGroup::dihedral_z2(n).unwrap());
        let mut names = Vec::new();
        orbit_names(&serde_json::from_str(&out).unwrap(), &mut names);
        for name in names {
            let t = g.parse(&name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(g.name(&t), name);
            total += 1;
        }
    }
    assert!(total > 50, "{total}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["fold", "D8xZ2", "(bogus", "3"]).0, 2);
    assert_eq!(run(&["basic-degree", "D8xZ2", "--j", "9"]).0, 2);
    assert_eq!(run(&["ccs", "Q8"]).0, 2);
    assert_eq!(run(&["no-such-verb"]).0, 2);
    assert_eq!(run(&["analyze", "--config", "/nonexistent.json"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
    // The exact ±2 coefficients of the reference tables are not reproduced.
    assert_eq!(run(&["fixtures-check"]).0, 1);
}

#[test]
fn resonant_pendula_are_rejected() {
    let dir = std::env::temp_dir().join(format!("o2deg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("resonant.json");
    std::fs::write(&path, r#"{"N": 8, "beta": 1.0, "q": 2}"#).unwrap();
    let (code, _, err) = run(&["analyze", "--config", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("pendula"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_solution_writes_export_and_csv() {
    let dir = std::env::temp_dir().join(format!("o2deg-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (csv, out) = (dir.join("u.csv"), dir.join("sol.json"));
    let (code, _, err) = run(&[
        "--json",
        "--out",
        out.to_str().unwrap(),
        "verify-solution",
        "--config",
        &config("pendula8.json"),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["guarantee_met"], Value::Bool(true));
    assert!(v["solution"]["residual_norm"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["solution"]["nonstationary"], Value::Bool(true));
    let rows = std::fs::read_to_string(&csv).unwrap().lines().count();
    assert_eq!(rows, 257);
    std::fs::remove_dir_all(&dir).unwrap();
}
