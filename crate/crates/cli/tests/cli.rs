use std::process::{Command, Output};

use serde_json::Value;

fn poncelet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poncelet"))
        .args(args)
        .env_remove("PONCELET_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn family_reference_member_is_equilateral() {
    let o = poncelet(&[
        "family",
        "--f",
        "0.5",
        "--g",
        "-0.333333333333",
        "--lambda",
        "1",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["contains_equilateral"], true);
    let mut args: Vec<f64> = v["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p[1].as_f64().unwrap().atan2(p[0].as_f64().unwrap()))
        .collect();
    args.sort_by(f64::total_cmp);
    let third = std::f64::consts::TAU / 3.0;
    for (a, want) in args.iter().zip([-third, 0.0, third]) {
        assert!((a - want).abs() < 1e-9, "{args:?}");
    }
    assert!((v["stationary_x110"][0].as_f64().unwrap() + 1.0).abs() < 1e-9);
}

#[test]
fn family_centered_and_invalid() {
    let o = poncelet(&["family", "--f", "0", "--g", "0", "--lambda", "i"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("equilateral member: yes"));

    let o = poncelet(&["family", "--f", "1.2", "--g", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("focus outside unit disk"));

    let o = poncelet(&["family", "--f", "0.1", "--g", "0", "--lambda", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = poncelet(&["family", "--f", "0.1+"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_csv_columns_and_values() {
    let o = poncelet(&["sweep", "-n", "360", "--centers", "X110,X3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "lambda_phase,v1x,v1y,v2x,v2y,v3x,v3y,X3_x,X3_y,X110_x,X110_y,flags"
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 358);
    for r in &rows {
        assert!((r[9].parse::<f64>().unwrap() + 1.0).abs() < 1e-8);
        assert!(r[10].parse::<f64>().unwrap().abs() < 1e-8);
        // 17 significant digits
        assert_eq!(
            r[1].split('e')
                .next()
                .unwrap()
                .trim_start_matches('-')
                .len(),
            18
        );
    }
    let phases: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert!(phases.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn sweep_minimal_and_deterministic() {
    let a = poncelet(&["sweep", "-n", "16"]);
    let b = poncelet(&["sweep", "-n", "16"]);
    assert_eq!(a.stdout, b.stdout);
    // λ = 1 and λ = −1 fall on grid points and are dropped
    assert_eq!(stdout(&a).lines().count(), 1 + 14);
    assert_eq!(poncelet(&["sweep", "-n", "15"]).status.code(), Some(2));
    assert_eq!(
        poncelet(&["sweep", "--centers", "X6"]).status.code(),
        Some(2)
    );
}

#[test]
fn sweep_json_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    let o = poncelet(&[
        "sweep",
        "-n",
        "32",
        "--centers",
        "X65",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["samples"].as_array().unwrap().len(), 32);

    let o = poncelet(&["sweep", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_exit_codes() {
    let o = poncelet(&[
        "verify",
        "x110-stationary",
        "--f",
        "0.5",
        "--g",
        "-0.333333333333",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["id"], "x110-stationary");
    assert_eq!(v["pass"], true);
    assert!(v["samples"].as_u64().unwrap() > 300);
    assert_eq!(v["tolerances"]["max_deviation"]["value"], 1e-7);

    let o = poncelet(&["verify", "x110-stationary", "--f", "0.3", "--g", "0.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o)["metrics"]["max_deviation"].as_f64().unwrap() > 1e-3);

    assert_eq!(
        poncelet(&["verify", "no-such-claim"]).status.code(),
        Some(2)
    );

    let o = poncelet(&["verify", "feuerbach", "--f", "0", "--g", "0"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn verify_l35_reports_branches() {
    let o = poncelet(&["verify", "l35", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let m = &v["metrics"];
    let total = m["branch_direct"].as_f64().unwrap() + m["branch_negated"].as_f64().unwrap();
    assert!(total > 0.0);
    assert_eq!(m["branch_none"], 0.0);

    let o = poncelet(&["verify", "l35-vertex"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!((v["metrics"]["predicted_x"].as_f64().unwrap() + 0.5).abs() < 1e-9);
}

#[test]
fn claim_tolerance_from_environment() {
    let run = |tol: &str| {
        Command::new(env!("CARGO_BIN_EXE_poncelet"))
            .args(["verify", "x110-stationary"])
            .env("PONCELET_TOL", tol)
            .output()
            .unwrap()
    };
    let o = run("1e-20");
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["tolerances"]["max_deviation"]["value"], 1e-20);
    assert_eq!(run("abc").status.code(), Some(2));
}

#[test]
fn verify_all_aggregates() {
    let o = poncelet(&["verify", "all", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let ids: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    for id in [
        "x110-stationary",
        "x3233-circle",
        "double-inv-1",
        "l35",
        "l35-vertex",
        "feuerbach",
        "x65-circle",
        "polar-equilateral",
    ] {
        assert!(ids.contains(&id), "{id}");
    }
}

#[test]
fn render_reference_figure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.svg");
    let o = poncelet(&["render", "--svg", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let doc = roxmltree::Document::parse(&text).expect("well-formed XML");
    let root = doc.root_element();
    assert_eq!(root.attribute("viewBox"), Some("-1.6 -1.6 3.2 3.2"));
    for layer in ["conics", "triangles", "loci", "centers"] {
        assert!(
            doc.descendants().any(|n| n.attribute("id") == Some(layer)),
            "{layer}"
        );
    }
    let by_id = |id: &str| {
        doc.descendants()
            .find(|n| n.attribute("id") == Some(id))
            .unwrap()
    };
    assert_eq!(by_id("circumcircle").attribute("r"), Some("1"));
    let caustic = by_id("caustic");
    assert_eq!(caustic.attribute("cx"), Some("0.083333"));
    assert!(caustic.attribute("cy").unwrap().trim_start_matches('-') == "0.000000");
    let x110 = doc
        .descendants()
        .find(|n| n.attribute("data-label") == Some("X110"))
        .unwrap();
    assert_eq!(x110.attribute("cx"), Some("-1.000000"));
    assert!(x110.attribute("cy").unwrap().trim_start_matches('-') == "0.000000");
    assert!(doc
        .descendants()
        .any(|n| n.attribute("id") == Some("stationarity")));
    // polyline samples stay inside the view box
    for n in doc
        .descendants()
        .filter(|n| n.attribute("class") == Some("kiepert-parabola"))
    {
        for pair in n.attribute("points").unwrap().split(' ') {
            for c in pair.split(',') {
                assert!(c.parse::<f64>().unwrap().abs() <= 1.6);
            }
        }
    }
}

#[test]
fn render_non_equilateral_family() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.svg");
    let o = poncelet(&[
        "render",
        "--f",
        "0.3",
        "--g",
        "0.5",
        "--svg",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    assert!(doc
        .descendants()
        .any(|n| n.attribute("class") == Some("kiepert-parabola")));
    assert!(!doc
        .descendants()
        .any(|n| n.attribute("id") == Some("stationarity")));
    let o = poncelet(&["render", "--svg", "/nonexistent-dir/fig.svg"]);
    assert_eq!(o.status.code(), Some(3));
}
