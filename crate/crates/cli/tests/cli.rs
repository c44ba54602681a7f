use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn p3wkb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_p3wkb")).args(args).output().expect("binary runs")
}

fn lines(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout).lines().map(|l| serde_json::from_str(l).expect("JSON line")).collect()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn complex(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("p3wkb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn geometry_summaries() {
    for (args, want) in [
        (vec!["--c-inf", "2+0i", "--c-0", "2-1i"], "triangle-type"),
        (vec!["--d7", "--c", "0+1i"], "loop-type"),
        (vec!["--c-inf", "2+1i", "--c-0", "3+0i"], "no degeneration"),
    ] {
        let mut a = vec!["geometry"];
        a.extend(&args);
        let o = p3wkb(&a);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let summary = lines(&o)[0]["summary"].as_str().unwrap().to_string();
        assert!(summary.contains(want), "{args:?}: {summary}");
    }
}

#[test]
fn geometry_writes_svg_and_json() {
    let svg = scratch("fig.svg");
    let o = p3wkb(&["geometry", "--c-inf", "2+0i", "--c-0", "2-1i", "--out", svg.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<svg"));

    let json = scratch("fig.json");
    let o = p3wkb(&["geometry", "--d7", "--c", "i", "--out", json.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let d: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(d["curves"].as_array().unwrap().len(), 6);

    let o = p3wkb(&["geometry", "--d7", "--c", "i", "--out", scratch("fig.png").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn voros_first_coefficient() {
    let o = p3wkb(&["voros", "--endpoint", "d6:inf3:+", "--n", "1", "--c-inf", "2+0i", "--c-0", "2-1i"]);
    assert_eq!(code(&o), 0);
    let l = lines(&o);
    assert_eq!(l.len(), 1);
    // −1/(24 c_m) with c_m = i/2
    let (re, im) = complex(&l[0]["coefficient"]);
    assert!(re.abs() < 1e-15 && (im - 1.0 / 12.0).abs() < 1e-15, "{re} {im}");
}

#[test]
fn voros_oracle_agrees() {
    let o = p3wkb(&["voros", "--endpoint", "d7:0c:-", "--n", "2", "--d7", "--c", "2+1i", "--oracle"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for l in lines(&o) {
        assert!(l["rel_err"].as_f64().unwrap() < 1e-5, "{l}");
    }
}

#[test]
fn borel_reference_value() {
    let o = p3wkb(&["borel", "--kind", "G", "--c", "3+0i", "--eta", "1", "--side", "-", "--oracle"]);
    assert_eq!(code(&o), 0);
    let l = &lines(&o)[0];
    let want = (2.0f64 / (2.0 * std::f64::consts::PI).sqrt()).ln() - 3.0 * (3f64.ln() - 1.0) + 0.5 * 3f64.ln();
    let (re, im) = complex(&l["value"]);
    assert!((re - want).abs() < 1e-14 && im.abs() < 1e-15, "{re} vs {want}");
    assert!(l["abs_err"].as_f64().unwrap() < 1e-8);
}

#[test]
fn borel_off_the_summable_region() {
    let o = p3wkb(&["borel", "--kind", "F", "--c", "0+2i", "--side", "+"]);
    assert_eq!(code(&o), 0);
    assert_eq!(lines(&o)[0]["summable"], Value::Bool(false));
    assert_eq!(lines(&o)[0]["value"], Value::Null);
    // the Laplace oracle only covers Re(cη) > 0
    let o = p3wkb(&["borel", "--kind", "F", "--c", "-2+1i", "--side", "-", "--oracle"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn walls_report_and_inside_loop() {
    let o = p3wkb(&["walls", "--c-inf", "2+0i", "--c-0", "2-1i"]);
    assert_eq!(code(&o), 0);
    let l = lines(&o);
    assert_eq!(l[0]["stratum"], "wall W2");
    assert_eq!(l[0]["jumping"][0], "F(c_m)");
    assert_eq!(l.len(), 3);

    let o = p3wkb(&["walls", "--c-inf", "2+1i", "--c-0", "3+0i"]);
    assert_eq!(lines(&o)[0]["stratum"], "chamber II");

    let o = p3wkb(&["walls", "--c-inf", "i", "--c-0", "3+0.5i", "--position", "inside-loop"]);
    assert_eq!(code(&o), 3);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("inside the loop"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["bogus"],
        vec!["voros", "--endpoint", "d6:inf9:+", "--c-inf", "2", "--c-0", "1"],
        vec!["voros", "--endpoint", "d6:inf3", "--c-inf", "2", "--c-0", "1"],
        vec!["geometry", "--c-inf", "2"],
        vec!["geometry", "--c-inf", "2", "--c-0", "2"],
        vec!["geometry", "--c-inf", "2x", "--c-0", "1"],
        vec!["borel", "--kind", "H", "--c", "3", "--side", "-"],
        vec!["verify", "--suite", "nothing"],
    ] {
        let o = p3wkb(&args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn config_file_supplies_flags() {
    let cfg = scratch("run.cfg");
    std::fs::write(&cfg, "# W2 example\nc-inf = 2+0i\nc_0 = 2-1i\nd7 = false\neta = 1.7\n").unwrap();
    let o = p3wkb(&["--config", cfg.to_str().unwrap(), "geometry"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(lines(&o)[0]["summary"].as_str().unwrap().contains("triangle-type"));

    // command-line flags win over the file
    let o = p3wkb(&["walls", "--config", cfg.to_str().unwrap(), "--c-0", "3+0i"]);
    let l = lines(&o);
    assert_eq!(l[0]["stratum"], "chamber II");

    let o = p3wkb(&["walls", "--config", cfg.to_str().unwrap()]);
    assert_eq!(lines(&o)[1]["eta"], 1.7);

    std::fs::write(&cfg, "nonsense = 1\n").unwrap();
    assert_eq!(code(&p3wkb(&["--config", cfg.to_str().unwrap(), "geometry"])), 2);
}

#[test]
fn verify_is_deterministic() {
    let a = p3wkb(&["verify", "--suite", "borel"]);
    let b = p3wkb(&["verify", "--suite", "borel"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let l = lines(&a);
    assert_eq!(l.last().unwrap()["failed"], 0);
}

#[test]
fn verify_failure_exits_1() {
    // an impossible tolerance
    let o = p3wkb(&["verify", "--suite", "borel", "--laplace-tol", "1e-30"]);
    assert_eq!(code(&o), 1);
    assert!(lines(&o).iter().any(|l| l["passed"] == false));
}

#[test]
fn verify_all_suites() {
    let o = p3wkb(&["verify"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let l = lines(&o);
    for s in ["series", "voros", "borel", "geometry", "asymptotics"] {
        assert!(l.iter().any(|x| x["suite"] == s && x["passed"] == true), "{s}");
    }
}
