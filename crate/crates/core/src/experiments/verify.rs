use std::f64::consts::{FRAC_PI_3, PI, TAU};

use rayon::prelude::*;

use super::corpus::{observation_corpus, random_generic_member, rng};
use super::fit::{fit_circle, stationarity};
use super::report::{Bound, PropositionReport};
use super::sweep::sweep;
use super::Tolerances;
use crate::centers::{
    circumcircle, classical_centers, tangential_triangle, x110, x11_feuerbach, x65, CenterIndex,
};
use crate::dual::{dual_contains_equilateral, outer_conic};
use crate::geom::{
    cis, external_bisector, ray_circle_intersection, reflect_line_in_line, rotate_about,
    signed_angle, CPoint, CircleG, HLine, Triangle,
};
use crate::poncelet::{
    config_from_center_and_equilateral_vertex, config_from_triangle_and_center,
    contains_equilateral, equilateral_lambda, equilateral_vertices, lemma_defect,
    stationary_x110_prediction, triangle_at, FamilyConfig, LambdaParam, INSCRIBED_TOL,
};

pub const X110_STATIONARY: &str = "x110-stationary";
pub const X3233_CIRCLE: &str = "x3233-circle";
pub const DOUBLE_INV: &str = "double-inv-1";
pub const L35: &str = "l35";
pub const L35_VERTEX: &str = "l35-vertex";
pub const FEUERBACH: &str = "feuerbach";
pub const X65_CIRCLE: &str = "x65-circle";
pub const POLAR_EQUILATERAL: &str = "polar-equilateral";
pub const TANGENTIAL_ENVELOPE: &str = "tangential-envelope";

pub const VERIFIER_IDS: [&str; 9] = [
    X110_STATIONARY,
    X3233_CIRCLE,
    DOUBLE_INV,
    L35,
    L35_VERTEX,
    FEUERBACH,
    X65_CIRCLE,
    POLAR_EQUILATERAL,
    TANGENTIAL_ENVELOPE,
];

/// λ samples per sweep inside the verifiers.
pub const SWEEP_SAMPLES: usize = 360;

/// Ω samples on a line.
pub const LINE_SAMPLES: usize = 24;

/// Half-width of the Ω window on a line.
pub const LINE_HALF_WIDTH: f64 = 0.45;

/// Offset of the off-line controls for B′ and L₃₅.
pub const DOUBLE_INV_OFFSET: f64 = 0.05;
pub const L35_OFFSET: f64 = 0.02;

/// Acute members a tangential-family claim needs.
pub const MIN_ACUTE: usize = 8;

pub const OBSERVATION_CORPUS: usize = 200;

/// Focus pair `(1/2, −1/3)` used as the default family.
pub fn reference_config() -> FamilyConfig {
    FamilyConfig::new(CPoint::new(0.5, 0.0), CPoint::new(-1.0 / 3.0, 0.0))
        .expect("reference foci are valid")
}

fn point_info(r: &mut PropositionReport, name: &str, p: CPoint) {
    r.info(&format!("{name}_x"), p.re);
    r.info(&format!("{name}_y"), p.im);
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// `n` evenly spaced offsets covering `[−w, w]` including both ends.
fn line_offsets(m: usize) -> Vec<f64> {
    match m {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..m)
            .map(|j| -LINE_HALF_WIDTH + 2.0 * LINE_HALF_WIDTH * j as f64 / (m - 1) as f64)
            .collect(),
    }
}

pub fn verify_x110_stationary(
    cfg: &FamilyConfig,
    n: usize,
    tols: &Tolerances,
) -> PropositionReport {
    let mut r = PropositionReport::new(X110_STATIONARY);
    r.info("lemma_defect", lemma_defect(cfg));
    let sw = match sweep(cfg, n, &[CenterIndex::X110], tols) {
        Ok(s) => s,
        Err(e) => {
            r.precondition_failed(e.to_string());
            return r.finish();
        }
    };
    let pts = sw.points(CenterIndex::X110);
    r.samples = pts.len();
    r.info(
        "excluded_samples",
        sw.samples.iter().filter(|s| s.flags.is_excluded()).count() as f64,
    );

    let target = if !contains_equilateral(cfg, tols.lemma) {
        r.precondition_failed("family has no equilateral member");
        None
    } else {
        match stationary_x110_prediction(cfg, tols.lemma) {
            Ok(p) => Some(p),
            Err(e) => {
                r.inconclusive(format!("every member is equilateral ({e})"));
                None
            }
        }
    };
    let st = match stationarity(&pts) {
        Ok(st) => st,
        Err(e) => {
            r.inconclusive(e.to_string());
            return r.finish();
        }
    };
    point_info(&mut r, "mean", st.mean);
    let deviation = match target {
        Some(p) => {
            point_info(&mut r, "predicted", p);
            pts.iter().map(|q| (q - p).norm()).fold(0.0, f64::max)
        }
        None => st.max_deviation,
    };
    r.push("max_deviation", deviation, Bound::Below(tols.stationary));
    r.finish()
}

pub fn verify_x3233_circle(cfg: &FamilyConfig, n: usize, tols: &Tolerances) -> PropositionReport {
    let mut r = PropositionReport::new(X3233_CIRCLE);
    let pred = match stationary_x110_prediction(cfg, tols.lemma) {
        Ok(p) => p,
        Err(e) => {
            r.precondition_failed(e.to_string());
            return r.finish();
        }
    };
    let sw = match sweep(cfg, n, &[CenterIndex::X3233], tols) {
        Ok(s) => s,
        Err(e) => {
            r.precondition_failed(e.to_string());
            return r.finish();
        }
    };
    let pts = sw.points(CenterIndex::X3233);
    r.samples = pts.len();
    // every member has circumcenter 0, so X1511 is the midpoint of 0 and X110
    let x1511 = pred / 2.0;
    let want_center = (pred + x1511) / 2.0;
    let want_radius = (pred - x1511).norm() / 2.0;
    point_info(&mut r, "expected_center", want_center);
    r.info("expected_radius", want_radius);
    let fit = match fit_circle(&pts) {
        Ok(f) => f,
        Err(e) => {
            r.inconclusive(e.to_string());
            return r.finish();
        }
    };
    point_info(&mut r, "center", fit.center);
    r.info("radius", fit.radius);
    r.info("diameter", 2.0 * fit.radius);
    r.push(
        "center_error",
        (fit.center - want_center).norm(),
        Bound::Below(tols.locus),
    );
    r.push(
        "radius_error",
        (fit.radius - want_radius).abs(),
        Bound::Below(tols.locus),
    );
    r.push("rms", fit.rms, Bound::Below(tols.stationary));
    r.finish()
}

/// The line B′: the external bisector of angle `K 0 A_eq` reflected about
/// the line through 0 and `A_eq`.
pub fn double_inv_line(k: CPoint, a_eq: CPoint, tol: f64) -> crate::Result<HLine> {
    let origin = CPoint::new(0.0, 0.0);
    let b = external_bisector(origin, k, a_eq, tol)?;
    let mirror = HLine::through(origin, a_eq)?;
    Ok(reflect_line_in_line(&b, &mirror))
}

pub fn verify_prop_double_inv(
    k: CPoint,
    a_eq: CPoint,
    m: usize,
    n: usize,
    tols: &Tolerances,
) -> PropositionReport {
    let mut r = PropositionReport::new(DOUBLE_INV);
    point_info(&mut r, "k", k);
    point_info(&mut r, "a_eq", a_eq);
    if (k.norm() - 1.0).abs() > INSCRIBED_TOL || (a_eq.norm() - 1.0).abs() > INSCRIBED_TOL {
        r.precondition_failed("K and A_eq must lie on the unit circle");
        return r.finish();
    }
    if (k - a_eq).norm() < tols.degeneracy || (k + a_eq).norm() < tols.degeneracy {
        r.precondition_failed("K = ±A_eq leaves the bisector undefined");
        return r.finish();
    }
    let line = match double_inv_line(k, a_eq, tols.degeneracy) {
        Ok(l) => l,
        Err(e) => {
            r.precondition_failed(e.to_string());
            return r.finish();
        }
    };
    let base = line.project(CPoint::new(0.0, 0.0));
    let dir = line.direction();
    let normal = line.normal();
    r.info("line_angle", dir.arg());
    r.info("line_offset", base.norm());

    let mut admissible = 0usize;
    let mut skipped = 0usize;
    let mut containment_failures = 0usize;
    let mut max_dev: f64 = 0.0;
    let mut controls = 0usize;
    let mut control_sep = f64::INFINITY;
    for t in line_offsets(m) {
        let omega = base + t * dir;
        if omega.norm() < tols.degeneracy {
            skipped += 1;
            continue;
        }
        let Ok(cfg) = config_from_center_and_equilateral_vertex(omega, a_eq) else {
            continue;
        };
        admissible += 1;
        if !contains_equilateral(&cfg, tols.lemma) {
            containment_failures += 1;
            continue;
        }
        match sweep(&cfg, n, &[CenterIndex::X110], tols)
            .map(|s| s.max_deviation_from(CenterIndex::X110, k))
        {
            Ok(Some(d)) => max_dev = max_dev.max(d),
            _ => containment_failures += 1,
        }

        let off = omega + DOUBLE_INV_OFFSET * normal;
        if let Ok(ctrl) = config_from_center_and_equilateral_vertex(off, a_eq) {
            if let Ok(sw) = sweep(&ctrl, n, &[CenterIndex::X110], tols) {
                let pts = sw.points(CenterIndex::X110);
                if let Some(sep) = pts.iter().map(|p| (p - k).norm()).reduce(f64::min) {
                    controls += 1;
                    control_sep = control_sep.min(sep);
                }
            }
        }
    }
    r.samples = admissible;
    r.info("sampled", m as f64);
    r.info(
        "admissible_fraction",
        if m > 0 {
            admissible as f64 / m as f64
        } else {
            0.0
        },
    );
    r.info("skipped_all_equilateral", skipped as f64);
    r.info("control_count", controls as f64);
    if skipped > 0 {
        r.note("Ω = 0 gives f = g = 0 (every member equilateral); skipped");
    }
    r.push(
        "admissible_count",
        admissible as f64,
        Bound::AtLeast(m.div_ceil(2) as f64),
    );
    r.push(
        "containment_failures",
        containment_failures as f64,
        Bound::AtMost(0.0),
    );
    r.push("max_deviation", max_dev, Bound::Below(tols.stationary));
    if controls > 0 {
        r.push(
            "control_min_separation",
            control_sep,
            Bound::Above(tols.separation),
        );
    }
    if admissible < 2 {
        r.inconclusive("fewer than 2 admissible centers on B′");
    }
    r.finish()
}

/// Perpendicular bisector of X3 X5.
pub fn l35_line(t: &Triangle, tol: f64) -> crate::Result<HLine> {
    let cc = classical_centers(t, tol)?;
    let d = cc.x5 - cc.x3;
    let scale = t.side_lengths().into_iter().fold(0.0, f64::max);
    if d.norm() < tol * scale {
        return Err(crate::GeomError::Undefined(
            "L35 of an equilateral triangle",
        ));
    }
    HLine::from_point_dir((cc.x3 + cc.x5) / 2.0, CPoint::i() * d)
}

/// Outcome of the rotate-by-α/3+π construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexConstruction {
    /// Signed angle from ray X3→X110 to ray X3→Ω.
    pub alpha: f64,
    /// Distance from the prediction with `α` to the nearest equilateral vertex.
    pub direct: f64,
    /// Same with `−α`.
    pub negated: f64,
    /// Rotation by `α/3` alone, with the sign of the better branch.
    pub control: f64,
    pub predicted: CPoint,
}

impl VertexConstruction {
    /// `+1` for `α`, `−1` for `−α`, `0` when neither matches within `tol`.
    pub fn branch(&self, tol: f64) -> i32 {
        if self.direct < tol {
            1
        } else if self.negated < tol {
            -1
        } else {
            0
        }
    }
}

pub fn vertex_construction(
    t: &Triangle,
    omega: CPoint,
    equilateral: &Triangle,
    tol: f64,
) -> crate::Result<VertexConstruction> {
    let x3 = classical_centers(t, tol)?.x3;
    let focus = x110(t, tol)?;
    let circle = circumcircle(t, tol)?;
    if (omega - x3).norm() < tol {
        return Err(crate::GeomError::Undefined("angle at X3 when Ω = X3"));
    }
    let alpha = signed_angle(focus - x3, omega - x3);
    let nearest = |p: CPoint| {
        equilateral
            .vertices()
            .iter()
            .map(|v| (v - p).norm())
            .fold(f64::INFINITY, f64::min)
    };
    let predict = |angle: f64| -> crate::Result<CPoint> {
        ray_circle_intersection(x3, rotate_about(omega, x3, angle), &circle)
    };
    let p_direct = predict(alpha / 3.0 + PI)?;
    let p_negated = predict(-alpha / 3.0 + PI)?;
    let (direct, negated) = (nearest(p_direct), nearest(p_negated));
    let sign = if direct <= negated { 1.0 } else { -1.0 };
    let control = nearest(predict(sign * alpha / 3.0)?);
    Ok(VertexConstruction {
        alpha,
        direct,
        negated,
        control,
        predicted: if direct <= negated {
            p_direct
        } else {
            p_negated
        },
    })
}

fn triangle_precondition(r: &mut PropositionReport, t: &Triangle, tols: &Tolerances) -> bool {
    if t.vertices()
        .iter()
        .any(|v| (v.norm() - 1.0).abs() > INSCRIBED_TOL)
    {
        r.precondition_failed("triangle not inscribed in the unit circle");
        return false;
    }
    if let Err(e) = x110(t, tols.degeneracy) {
        r.precondition_failed(e.to_string());
        return false;
    }
    true
}

pub fn verify_prop_l35(t: &Triangle, m: usize, n: usize, tols: &Tolerances) -> PropositionReport {
    let mut r = PropositionReport::new(L35);
    if !triangle_precondition(&mut r, t, tols) {
        return r.finish();
    }
    let line = match l35_line(t, tols.degeneracy) {
        Ok(l) => l,
        Err(e) => {
            r.precondition_failed(e.to_string());
            return r.finish();
        }
    };
    let x110_t = x110(t, tols.degeneracy).expect("checked above");
    let cc = classical_centers(t, tols.degeneracy).expect("checked above");
    let base = line.project(cc.x3);
    let (dir, normal) = (line.direction(), line.normal());

    struct OnLine {
        mean: CPoint,
        deviation: f64,
        contains: bool,
        branch: i32,
    }
    let on_line: Vec<OnLine> = line_offsets(m)
        .into_par_iter()
        .filter_map(|s| {
            let omega = base + s * dir;
            let cfg = config_from_triangle_and_center(t, omega, tols.degeneracy).ok()?;
            let contains = contains_equilateral(&cfg, tols.locus);
            let st = sweep(&cfg, n, &[CenterIndex::X110], tols)
                .ok()
                .and_then(|sw| stationarity(&sw.points(CenterIndex::X110)).ok());
            let branch = equilateral_vertices(&cfg, tols.locus)
                .and_then(|eq| vertex_construction(t, omega, &eq, tols.degeneracy))
                .map(|vc| vc.branch(tols.locus))
                .unwrap_or(0);
            Some(match st {
                Some(st) => OnLine {
                    mean: st.mean,
                    deviation: st.max_deviation,
                    contains,
                    branch,
                },
                None => OnLine {
                    mean: CPoint::new(f64::NAN, f64::NAN),
                    deviation: f64::INFINITY,
                    contains,
                    branch,
                },
            })
        })
        .collect();

    let mut controls: Vec<CPoint> = line_offsets(m)
        .iter()
        .map(|s| base + s * dir + L35_OFFSET * normal)
        .collect();
    if line.distance(cc.x2) > tols.separation {
        controls.push(cc.x2);
    }
    let control_results: Vec<bool> = controls
        .into_par_iter()
        .filter_map(|omega| {
            let cfg = config_from_triangle_and_center(t, omega, tols.degeneracy).ok()?;
            Some(contains_equilateral(&cfg, tols.locus))
        })
        .collect();

    r.samples = on_line.len();
    if on_line.is_empty() {
        r.inconclusive("no admissible center on L35");
        return r.finish();
    }
    let max_dev = on_line.iter().map(|o| o.deviation).fold(0.0, f64::max);
    let mut spread: f64 = 0.0;
    for a in &on_line {
        for b in &on_line {
            spread = spread.max((a.mean - b.mean).norm());
        }
    }
    let match_t = on_line
        .iter()
        .map(|o| (o.mean - x110_t).norm())
        .fold(0.0, f64::max);
    point_info(&mut r, "x110", on_line[0].mean);
    r.info("x110_reference_match", match_t);
    r.info("sampled", m as f64);
    r.info("control_count", control_results.len() as f64);
    r.info(
        "branch_direct",
        on_line.iter().filter(|o| o.branch == 1).count() as f64,
    );
    r.info(
        "branch_negated",
        on_line.iter().filter(|o| o.branch == -1).count() as f64,
    );
    r.info(
        "branch_none",
        on_line.iter().filter(|o| o.branch == 0).count() as f64,
    );
    r.push(
        "containment_failures",
        on_line.iter().filter(|o| !o.contains).count() as f64,
        Bound::AtMost(0.0),
    );
    r.push("max_deviation", max_dev, Bound::Below(tols.locus));
    r.push("x110_spread", spread, Bound::Below(tols.locus));
    r.push(
        "control_false_positives",
        control_results.iter().filter(|&&c| c).count() as f64,
        Bound::AtMost(0.0),
    );
    r.push(
        "control_count",
        control_results.len() as f64,
        Bound::AtLeast(1.0),
    );
    r.finish()
}

pub fn verify_prop_l35_vertex(t: &Triangle, omega: CPoint, tols: &Tolerances) -> PropositionReport {
    let mut r = PropositionReport::new(L35_VERTEX);
    r.samples = 1;
    if !triangle_precondition(&mut r, t, tols) {
        return r.finish();
    }
    point_info(&mut r, "omega", omega);
    match l35_line(t, tols.degeneracy) {
        Ok(l) => r.info("l35_distance", l.distance(omega)),
        Err(e) => {
            r.precondition_failed(e.to_string());
            return r.finish();
        }
    }
    let cfg = match config_from_triangle_and_center(t, omega, tols.degeneracy) {
        Ok(c) => c,
        Err(e) => {
            r.precondition_failed(e.to_string());
            return r.finish();
        }
    };
    let eq = match equilateral_vertices(&cfg, tols.locus) {
        Ok(eq) => eq,
        Err(e) => {
            r.note(e.to_string());
            r.push("vertex_distance", f64::INFINITY, Bound::Below(tols.locus));
            return r.finish();
        }
    };
    let vc = match vertex_construction(t, omega, &eq, tols.degeneracy) {
        Ok(vc) => vc,
        Err(e) => {
            r.precondition_failed(e.to_string());
            return r.finish();
        }
    };
    let branch = vc.branch(tols.locus);
    r.info("alpha", vc.alpha);
    r.info("branch", branch as f64);
    r.info("direct_distance", vc.direct);
    r.info("negated_distance", vc.negated);
    point_info(&mut r, "predicted", vc.predicted);
    r.note(match branch {
        1 => "branch: direct",
        -1 => "branch: negated",
        _ => "branch: none",
    });
    r.push(
        "vertex_distance",
        vc.direct.min(vc.negated),
        Bound::Below(tols.locus),
    );
    r.push(
        "control_min_distance",
        vc.control,
        Bound::Above(tols.separation),
    );
    r.finish()
}

/// Acute, non-equilateral members of the family with their tangential
/// triangles.
fn acute_tangentials(cfg: &FamilyConfig, n: usize, tols: &Tolerances) -> (Vec<Triangle>, usize) {
    let eq_phase = equilateral_lambda(cfg, tols.lemma).ok().map(|l| l.phase());
    let circle = CircleG::unit();
    let mut obtuse = 0;
    let mut out = Vec::new();
    for k in 0..n {
        let phase = TAU * k as f64 / n as f64;
        let t = triangle_at(cfg, LambdaParam::from_phase(phase));
        if t.is_degenerate(tols.degeneracy) {
            continue;
        }
        if !t.is_acute() {
            obtuse += 1;
            continue;
        }
        if eq_phase.is_some_and(|p| circular_distance(p, phase) < tols.window) {
            continue;
        }
        if let Ok(tan) = tangential_triangle(&t, &circle, tols.degeneracy) {
            out.push(tan);
        }
    }
    (out, obtuse)
}

pub fn verify_feuerbach_stationary(
    cfg: &FamilyConfig,
    n: usize,
    tols: &Tolerances,
) -> PropositionReport {
    let mut r = PropositionReport::new(FEUERBACH);
    let pred = match stationary_x110_prediction(cfg, tols.lemma) {
        Ok(p) => p,
        Err(e) => {
            if contains_equilateral(cfg, tols.lemma) {
                r.inconclusive(format!("every member is equilateral ({e})"));
            } else {
                r.precondition_failed(e.to_string());
            }
            return r.finish();
        }
    };
    let (tangentials, obtuse) = acute_tangentials(cfg, n, tols);
    let pts: Vec<CPoint> = tangentials
        .iter()
        .filter_map(|t| x11_feuerbach(t, tols.degeneracy).ok())
        .collect();
    r.samples = pts.len();
    r.info("skipped_obtuse", obtuse as f64);
    point_info(&mut r, "predicted", pred);
    if pts.len() < MIN_ACUTE {
        r.inconclusive(format!("only {} acute members", pts.len()));
        return r.finish();
    }
    let mean = pts.iter().sum::<CPoint>() / pts.len() as f64;
    point_info(&mut r, "mean", mean);
    r.push(
        "max_deviation",
        pts.iter().map(|p| (p - pred).norm()).fold(0.0, f64::max),
        Bound::Below(tols.stationary),
    );
    r.push(
        "mean_error",
        (mean - pred).norm(),
        Bound::Below(tols.stationary),
    );
    r.finish()
}

pub fn verify_x65_circle(cfg: &FamilyConfig, n: usize, tols: &Tolerances) -> PropositionReport {
    let mut r = PropositionReport::new(X65_CIRCLE);
    let (tangentials, obtuse) = acute_tangentials(cfg, n, tols);
    let pts: Vec<CPoint> = tangentials
        .iter()
        .filter_map(|t| x65(t, tols.degeneracy).ok())
        .collect();
    r.samples = pts.len();
    r.info("skipped_obtuse", obtuse as f64);
    r.info("lemma_defect", lemma_defect(cfg));
    if pts.len() < MIN_ACUTE {
        r.inconclusive(format!("only {} acute members", pts.len()));
        return r.finish();
    }
    let (f, g) = (cfg.f(), cfg.g());
    let want_center = f + g;
    let want_radius = (f * g).norm();
    point_info(&mut r, "expected_center", want_center);
    r.info("expected_radius", want_radius);
    if want_radius < tols.degeneracy && want_center.norm() < tols.degeneracy {
        r.note("degenerate circle: locus is the single point 0; fit skipped");
        let dev = pts.iter().map(|p| p.norm()).fold(0.0, f64::max);
        r.push("max_deviation", dev, Bound::Below(tols.stationary));
        return r.finish();
    }
    let fit = match fit_circle(&pts) {
        Ok(fit) => fit,
        Err(e) => {
            r.inconclusive(e.to_string());
            return r.finish();
        }
    };
    point_info(&mut r, "center", fit.center);
    r.info("radius", fit.radius);
    let origin_residual = (fit.center.norm() - fit.radius).abs();
    r.push("rms", fit.rms, Bound::Below(tols.stationary));
    r.push(
        "center_error",
        (fit.center - want_center).norm(),
        Bound::Below(tols.stationary),
    );
    r.push(
        "radius_error",
        (fit.radius - want_radius).abs(),
        Bound::Below(tols.stationary),
    );
    if contains_equilateral(cfg, tols.lemma) {
        r.push(
            "origin_residual",
            origin_residual,
            Bound::Below(tols.stationary),
        );
    } else {
        r.info("origin_residual", origin_residual);
    }
    r.finish()
}

pub fn verify_observation_polar_equilateral(
    corpus: &[FamilyConfig],
    tols: &Tolerances,
) -> PropositionReport {
    let mut r = PropositionReport::new(POLAR_EQUILATERAL);
    if corpus.is_empty() {
        r.precondition_failed("empty corpus");
        return r.finish();
    }
    let results: Vec<(bool, bool)> = corpus
        .par_iter()
        .map(|cfg| {
            (
                contains_equilateral(cfg, tols.lemma),
                dual_contains_equilateral(cfg, tols.degeneracy),
            )
        })
        .collect();
    r.samples = corpus.len();
    r.info(
        "positives",
        results.iter().filter(|(p, _)| *p).count() as f64,
    );
    r.info(
        "dual_positives",
        results.iter().filter(|(_, d)| *d).count() as f64,
    );
    r.push(
        "mismatches",
        results.iter().filter(|(p, d)| p != d).count() as f64,
        Bound::AtMost(0.0),
    );
    r.finish()
}

/// Tangential vertices lie on the polar image of the caustic.
pub fn verify_tangential_envelope(
    cfg: &FamilyConfig,
    n: usize,
    tols: &Tolerances,
) -> PropositionReport {
    let mut r = PropositionReport::new(TANGENTIAL_ENVELOPE);
    let outer = match outer_conic(cfg, tols.degeneracy) {
        Ok(c) => c,
        Err(e) => {
            r.precondition_failed(e.to_string());
            return r.finish();
        }
    };
    let circle = CircleG::unit();
    let residuals: Vec<f64> = (0..n)
        .filter_map(|k| {
            let t = triangle_at(cfg, LambdaParam::from_phase(TAU * k as f64 / n as f64));
            tangential_triangle(&t, &circle, tols.degeneracy).ok()
        })
        .flat_map(|tan| tan.vertices().map(|v| outer.point_residual(v)))
        .collect();
    r.samples = residuals.len();
    if residuals.is_empty() {
        r.inconclusive("no tangential triangle defined");
        return r.finish();
    }
    r.push(
        "max_residual",
        residuals.iter().copied().fold(0.0, f64::max),
        Bound::Below(1e-9),
    );
    r.finish()
}

/// Seeded generic member used by the two L₃₅ verifiers when no triangle is
/// supplied. Without a seed it is the member at `λ = i` of the reference family.
pub fn l35_case(seed: Option<u64>) -> (Triangle, CPoint) {
    match seed {
        Some(s) => {
            let m = random_generic_member(&mut rng(s));
            (m.triangle, m.caustic_center)
        }
        None => {
            let cfg = reference_config();
            let t = triangle_at(&cfg, LambdaParam::from_phase(PI / 2.0));
            (t, (cfg.f() + cfg.g()) / 2.0)
        }
    }
}

pub fn double_inv_defaults() -> (CPoint, CPoint) {
    (CPoint::new(1.0, 0.0), cis(FRAC_PI_3))
}

/// Every verifier on its default inputs.
pub fn verify_all(seed: Option<u64>, tols: &Tolerances) -> Vec<PropositionReport> {
    let cfg = reference_config();
    let (k, a_eq) = double_inv_defaults();
    let (t, omega) = l35_case(seed);
    let corpus = observation_corpus(seed.unwrap_or(0), OBSERVATION_CORPUS);
    vec![
        verify_x110_stationary(&cfg, SWEEP_SAMPLES, tols),
        verify_x3233_circle(&cfg, SWEEP_SAMPLES, tols),
        verify_prop_double_inv(k, a_eq, LINE_SAMPLES, SWEEP_SAMPLES, tols),
        verify_prop_l35(&t, LINE_SAMPLES, SWEEP_SAMPLES, tols),
        verify_prop_l35_vertex(&t, omega, tols),
        verify_feuerbach_stationary(&cfg, SWEEP_SAMPLES, tols),
        verify_x65_circle(&cfg, SWEEP_SAMPLES, tols),
        verify_observation_polar_equilateral(&corpus, tols),
        verify_tangential_envelope(&cfg, SWEEP_SAMPLES, tols),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::Status;

    fn c(re: f64, im: f64) -> CPoint {
        CPoint::new(re, im)
    }

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn x110_examples() {
        let r = verify_x110_stationary(&reference_config(), 360, &tols());
        assert!(r.pass(), "{r:?}");
        assert!((r.metric("predicted_x").unwrap() + 1.0).abs() < 1e-15);

        let cfg = FamilyConfig::new(c(0.2, 0.6), c(0.2, -0.6)).unwrap();
        let r = verify_x110_stationary(&cfg, 360, &tols());
        assert!(r.pass(), "{r:?}");
        assert!((r.metric("predicted_x").unwrap() - 1.0).abs() < 1e-12);

        let cfg = FamilyConfig::new(c(0.3, 0.0), c(0.5, 0.0)).unwrap();
        let r = verify_x110_stationary(&cfg, 360, &tols());
        assert_eq!(r.status, Status::Fail);
        assert!(r.metric("max_deviation").unwrap() > 1e-3);
    }

    #[test]
    fn x3233_reference_circle() {
        let r = verify_x3233_circle(&reference_config(), 360, &tols());
        assert!(r.pass(), "{r:?}");
        assert!((r.metric("center_x").unwrap() + 0.75).abs() < 1e-6);
        assert!((r.metric("diameter").unwrap() - 0.5).abs() < 1e-6);
    }

    #[test]
    fn x3233_rotates_with_config() {
        let theta = 0.7;
        let cfg = reference_config().rotated(theta).unwrap();
        let r = verify_x3233_circle(&cfg, 360, &tols());
        assert!(r.pass(), "{r:?}");
        let want = -0.75 * cis(theta);
        assert!(
            (c(r.metric("center_x").unwrap(), r.metric("center_y").unwrap()) - want).norm() < 1e-6
        );
    }

    #[test]
    fn double_inv_line_is_real_axis() {
        let (k, a) = double_inv_defaults();
        let line = double_inv_line(k, a, 1e-12).unwrap();
        assert!(line.same_as(&HLine::new(0.0, 1.0, 0.0).unwrap(), 1e-12));
        let r = verify_prop_double_inv(k, a, 25, 180, &tols());
        assert!(r.pass(), "{r:?}");
        assert_eq!(r.metric("skipped_all_equilateral"), Some(1.0));
        assert!(r.metric("control_count").unwrap() >= 10.0);
        let bad = verify_prop_double_inv(a, a, 25, 180, &tols());
        assert_eq!(bad.status, Status::Fail);
    }

    #[test]
    fn l35_reference_member() {
        let (t, omega) = l35_case(None);
        let line = l35_line(&t, 1e-12).unwrap();
        assert!(line.distance(omega) < 1e-12);
        let x5 = classical_centers(&t, 1e-12).unwrap().x5;
        assert!((x5 - c(1.0, -1.0) / 12.0).norm() < 1e-12);
        let r = verify_prop_l35(&t, 12, 180, &tols());
        assert!(r.pass(), "{r:?}");
        assert!((r.metric("x110_x").unwrap() + 1.0).abs() < 1e-6);
    }

    #[test]
    fn l35_vertex_hand_example() {
        let (t, omega) = l35_case(None);
        let r = verify_prop_l35_vertex(&t, omega, &tols());
        assert!(r.pass(), "{r:?}");
        assert!((r.metric("alpha").unwrap().abs() - PI).abs() < 1e-9);
        let p = c(
            r.metric("predicted_x").unwrap(),
            r.metric("predicted_y").unwrap(),
        );
        assert!((p - cis(4.0 * PI / 3.0)).norm() < 1e-9);
    }

    #[test]
    fn l35_vertex_rejects_equilateral() {
        let t = Triangle::new(c(1.0, 0.0), cis(TAU / 3.0), cis(2.0 * TAU / 3.0));
        let r = verify_prop_l35_vertex(&t, c(0.1, 0.0), &tols());
        assert_eq!(r.status, Status::Fail);
        assert!(r.notes[0].starts_with("precondition failed"));
    }

    #[test]
    fn tangential_claims_on_reference() {
        let cfg = reference_config();
        let r = verify_feuerbach_stationary(&cfg, 360, &tols());
        assert!(r.pass(), "{r:?}");
        let r = verify_x65_circle(&cfg, 360, &tols());
        assert!(r.pass(), "{r:?}");
        assert!((r.metric("radius").unwrap() - 1.0 / 6.0).abs() < 1e-7);
        let r = verify_tangential_envelope(&cfg, 360, &tols());
        assert!(r.pass(), "{r:?}");
    }

    #[test]
    fn x65_centered_family_is_a_point() {
        let cfg = FamilyConfig::new(c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let r = verify_x65_circle(&cfg, 64, &tols());
        assert!(r.pass(), "{r:?}");
        assert!(r.notes.iter().any(|n| n.contains("fit skipped")));
    }

    #[test]
    fn x65_misses_origin_without_equilateral() {
        let cfg = FamilyConfig::new(c(0.3, 0.0), c(0.5, 0.0)).unwrap();
        let r = verify_x65_circle(&cfg, 360, &tols());
        assert!(r.pass(), "{r:?}");
        assert!(r.metric("origin_residual").unwrap() > 1e-3);
    }

    #[test]
    fn observation_small_corpus() {
        let corpus = [
            reference_config(),
            FamilyConfig::new(c(0.3, 0.0), c(0.5, 0.0)).unwrap(),
            FamilyConfig::new(c(0.2, 0.6), c(0.2, -0.6)).unwrap(),
        ];
        let r = verify_observation_polar_equilateral(&corpus, &tols());
        assert!(r.pass(), "{r:?}");
        assert_eq!(r.metric("positives"), Some(2.0));
        assert_eq!(
            verify_observation_polar_equilateral(&[], &tols()).status,
            Status::Fail
        );
    }
}
