use std::io::Write;

use poncelet_core::experiments::{PropositionReport, Status, SweepResult, Tolerances};
use poncelet_core::geom::CPoint;
use serde_json::{json, Map, Value};

pub const SCHEMA: u32 = 1;

pub fn point(p: CPoint) -> Value {
    json!([p.re, p.im])
}

pub fn report_json(r: &PropositionReport) -> Value {
    let mut metrics = Map::new();
    let mut tolerances = Map::new();
    for c in &r.checks {
        metrics.insert(c.name.clone(), json!(c.value));
        tolerances.insert(
            c.name.clone(),
            json!({ "relation": c.bound.relation(), "value": c.bound.threshold(), "pass": c.pass() }),
        );
    }
    for (k, v) in &r.info {
        metrics.entry(k.clone()).or_insert(json!(v));
    }
    json!({
        "schema": SCHEMA,
        "id": r.id,
        "pass": r.pass(),
        "status": r.status.to_string(),
        "metrics": metrics,
        "tolerances": tolerances,
        "samples": r.samples,
        "notes": r.notes,
    })
}

/// Worst status wins: fail over inconclusive over pass.
pub fn aggregate(reports: &[PropositionReport]) -> Status {
    if reports.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else if reports.iter().any(|r| r.status == Status::Inconclusive) {
        Status::Inconclusive
    } else {
        Status::Pass
    }
}

pub fn all_json(reports: &[PropositionReport], tols: &Tolerances) -> Value {
    let status = aggregate(reports);
    json!({
        "schema": SCHEMA,
        "id": "all",
        "pass": status == Status::Pass,
        "status": status.to_string(),
        "claim_tolerances": { "stationary": tols.stationary, "locus": tols.locus },
        "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
    })
}

pub fn sweep_json(sw: &SweepResult) -> Value {
    json!({
        "schema": SCHEMA,
        "f": point(sw.cfg.f()),
        "g": point(sw.cfg.g()),
        "n": sw.samples.len(),
        "centers": sw.centers.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "windows": sw.windows.iter().map(|w| json!({ "phase": w.phase, "kind": w.kind.label() })).collect::<Vec<_>>(),
        "samples": sw.samples.iter().map(|s| {
            let centers: Map<String, Value> = s.centers.iter().map(|(k, p)| (k.to_string(), point(*p))).collect();
            json!({
                "lambda_phase": s.phase,
                "vertices": s.triangle.vertices().map(point),
                "centers": centers,
                "flags": s.flags.tags(),
            })
        }).collect::<Vec<_>>(),
    })
}

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// One row per sample outside every singular window.
pub fn write_sweep_csv(sw: &SweepResult, out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = ["lambda_phase", "v1x", "v1y", "v2x", "v2y", "v3x", "v3y"]
        .map(String::from)
        .to_vec();
    for c in &sw.centers {
        header.push(format!("{c}_x"));
        header.push(format!("{c}_y"));
    }
    header.push("flags".into());
    w.write_record(&header)?;
    for s in sw.samples.iter().filter(|s| !s.flags.is_excluded()) {
        let mut row = vec![sci(s.phase)];
        for v in s.triangle.vertices() {
            row.push(sci(v.re));
            row.push(sci(v.im));
        }
        for c in &sw.centers {
            match s.centers.get(c) {
                Some(p) => {
                    row.push(sci(p.re));
                    row.push(sci(p.im));
                }
                None => row.extend([String::new(), String::new()]),
            }
        }
        row.push(s.flags.tags());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
