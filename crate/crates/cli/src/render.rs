use std::fmt::Write;

use poncelet_core::centers::{classical_centers, kiepert_parabola, x110, x1511, x3233};
use poncelet_core::experiments::Tolerances;
use poncelet_core::geom::CPoint;
use poncelet_core::poncelet::{
    contains_equilateral, equilateral_vertices, stationary_x110_prediction, triangle_at,
    FamilyConfig, LambdaParam,
};

const HALF: f64 = 1.6;
const STROKE: f64 = 0.006;
const PARABOLA_REACH: f64 = 6.0;
const PARABOLA_STEPS: usize = 2400;

// SVG y grows downward
fn xy(p: CPoint) -> (f64, f64) {
    (p.re, -p.im)
}

fn pts(points: &[CPoint]) -> String {
    points
        .iter()
        .map(|&p| {
            let (x, y) = xy(p);
            format!("{x:.6},{y:.6}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn inside(p: CPoint) -> bool {
    p.re.abs() <= HALF && p.im.abs() <= HALF
}

/// Runs of consecutive samples inside the view box.
fn clip_runs(samples: impl Iterator<Item = CPoint>) -> Vec<Vec<CPoint>> {
    let mut runs = vec![Vec::new()];
    for p in samples {
        if inside(p) {
            runs.last_mut().expect("nonempty").push(p);
        } else if !runs.last().expect("nonempty").is_empty() {
            runs.push(Vec::new());
        }
    }
    runs.retain(|r| r.len() >= 2);
    runs
}

fn marker(out: &mut String, label: &str, p: CPoint) {
    let (x, y) = xy(p);
    let _ = writeln!(
        out,
        r#"    <circle class="marker" data-label="{label}" cx="{x:.6}" cy="{y:.6}" r="0.018"/>"#
    );
    let _ = writeln!(
        out,
        r#"    <text x="{:.6}" y="{:.6}" font-size="0.07">{label}</text>"#,
        x + 0.03,
        y - 0.03
    );
}

/// Figure of one member with the family's conics, loci and centers.
pub fn render_svg(cfg: &FamilyConfig, lambda: LambdaParam, tols: &Tolerances) -> String {
    let tol = tols.degeneracy;
    let member = triangle_at(cfg, lambda);
    let caustic = cfg.caustic();
    let prediction = stationary_x110_prediction(cfg, tols.lemma).ok();

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="800">"#,
        -HALF,
        -HALF,
        2.0 * HALF,
        2.0 * HALF
    );
    let _ = writeln!(
        s,
        r#"  <rect x="{}" y="{}" width="{}" height="{}" fill="white"/>"#,
        -HALF,
        -HALF,
        2.0 * HALF,
        2.0 * HALF
    );

    let _ = writeln!(
        s,
        r#"  <g id="conics" fill="none" stroke-width="{STROKE}">"#
    );
    let _ = writeln!(
        s,
        r#"    <circle id="circumcircle" cx="0" cy="0" r="1" stroke="black"/>"#
    );
    let (cx, cy) = xy(caustic.center);
    let _ = writeln!(
        s,
        r#"    <ellipse id="caustic" cx="{cx:.6}" cy="{cy:.6}" rx="{:.6}" ry="{:.6}" transform="rotate({:.6} {cx:.6} {cy:.6})" stroke="steelblue"/>"#,
        caustic.a,
        caustic.b,
        -caustic.theta.to_degrees()
    );
    if let Ok(parabola) = kiepert_parabola(&member, tol) {
        let samples = (0..=PARABOLA_STEPS).map(|k| {
            parabola
                .point_at(-PARABOLA_REACH + 2.0 * PARABOLA_REACH * k as f64 / PARABOLA_STEPS as f64)
        });
        for run in clip_runs(samples) {
            let _ = writeln!(
                s,
                r#"    <polyline class="kiepert-parabola" points="{}" stroke="darkorange"/>"#,
                pts(&run)
            );
        }
    }
    let _ = writeln!(s, "  </g>");

    let _ = writeln!(
        s,
        r#"  <g id="triangles" fill="none" stroke-width="{STROKE}">"#
    );
    let _ = writeln!(
        s,
        r#"    <polygon id="member" points="{}" stroke="black"/>"#,
        pts(&member.vertices())
    );
    if contains_equilateral(cfg, tols.lemma) {
        if let Ok(eq) = equilateral_vertices(cfg, tols.lemma) {
            let _ = writeln!(
                s,
                r#"    <polygon id="equilateral" points="{}" stroke="seagreen" stroke-dasharray="0.03 0.02"/>"#,
                pts(&eq.vertices())
            );
        }
    }
    let _ = writeln!(s, "  </g>");

    let _ = writeln!(s, r#"  <g id="loci" fill="none" stroke-width="{STROKE}">"#);
    if let Some(p) = prediction {
        let (x, y) = xy(0.75 * p);
        let _ = writeln!(
            s,
            r#"    <circle id="x3233-locus" cx="{x:.6}" cy="{y:.6}" r="{:.6}" stroke="purple" stroke-dasharray="0.02 0.02"/>"#,
            p.norm() / 4.0
        );
    }
    let r65 = (cfg.f() * cfg.g()).norm();
    if r65 > tol {
        let (x, y) = xy(cfg.f() + cfg.g());
        let _ = writeln!(
            s,
            r#"    <circle id="x65-locus" cx="{x:.6}" cy="{y:.6}" r="{r65:.6}" stroke="firebrick" stroke-dasharray="0.02 0.02"/>"#
        );
    }
    let _ = writeln!(s, "  </g>");

    let _ = writeln!(
        s,
        r#"  <g id="centers" fill="black" font-family="sans-serif">"#
    );
    marker(&mut s, "C", caustic.center);
    if let Ok(cc) = classical_centers(&member, tol) {
        marker(&mut s, "X3", cc.x3);
        marker(&mut s, "X4", cc.x4);
    }
    // the equilateral member has no X110 of its own; show the family's point
    if let Some(p) = x110(&member, tol).ok().or(prediction) {
        marker(&mut s, "X110", p);
    }
    if let Ok(p) = x1511(&member, tol) {
        marker(&mut s, "X1511", p);
    }
    if let Ok(p) = x3233(&member, tol) {
        marker(&mut s, "X3233", p);
    }
    let _ = writeln!(s, "  </g>");

    if let Some(p) = prediction {
        let _ = writeln!(
            s,
            r#"  <text id="stationarity" x="{:.6}" y="{:.6}" font-size="0.07" font-family="sans-serif">X110 stationary at ({:.6}, {:.6})</text>"#,
            -HALF + 0.05,
            HALF - 0.06,
            p.re,
            p.im
        );
    }
    s.push_str("</svg>\n");
    s
}
