//! Tangential (polar) families of a circle-inscribed family.
//!
//! The tangential triangle of each member is bounded by the circle tangents
//! at its vertices. Those vertices are the poles of the member's sides, so the
//! tangential family is inscribed in the polar image of the caustic.

use std::f64::consts::TAU;

use crate::centers::tangential_triangle;
use crate::error::Result;
use crate::geom::{polar_image_of_conic, CircleG, ConicQ, Triangle};
use crate::poncelet::{triangle_at, FamilyConfig, LambdaParam};

/// Side-length spread below which a member counts as equilateral.
pub const EQUILATERAL_SPREAD_TOL: f64 = 1e-6;

/// Coarse samples of the equilateral scan.
pub const SCAN_SAMPLES: usize = 720;

/// Golden-section stopping width in λ-phase.
pub const REFINE_WIDTH: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualFamilySample {
    pub lambda: LambdaParam,
    pub reference: Triangle,
    /// `None` when the member has antipodal vertices.
    pub tangential: Option<Triangle>,
    /// Polar image of the caustic with respect to the unit circle.
    pub outer_conic: ConicQ,
}

pub fn outer_conic(cfg: &FamilyConfig, tol: f64) -> Result<ConicQ> {
    polar_image_of_conic(&cfg.caustic_conic(), &CircleG::unit(), tol)
}

pub fn tangential_family_at(
    cfg: &FamilyConfig,
    lambda: LambdaParam,
    tol: f64,
) -> Result<DualFamilySample> {
    let reference = triangle_at(cfg, lambda);
    Ok(DualFamilySample {
        lambda,
        reference,
        tangential: tangential_triangle(&reference, &CircleG::unit(), tol).ok(),
        outer_conic: outer_conic(cfg, tol)?,
    })
}

/// Minimum of a spread function found by [`scan_min_spread`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpreadMinimum {
    pub phase: f64,
    pub spread: f64,
}

/// Scans `spread(phase)` over [`SCAN_SAMPLES`] phases, then refines the three
/// deepest local minima by golden section. Non-finite values count as +∞.
pub fn scan_min_spread(spread: impl Fn(f64) -> f64) -> SpreadMinimum {
    let n = SCAN_SAMPLES;
    let h = TAU / n as f64;
    let eval = |p: f64| {
        let s = spread(p);
        if s.is_finite() {
            s
        } else {
            f64::INFINITY
        }
    };
    let coarse: Vec<f64> = (0..n).map(|k| eval(h * k as f64)).collect();
    let mut minima: Vec<usize> = (0..n)
        .filter(|&k| {
            let (prev, next) = (coarse[(k + n - 1) % n], coarse[(k + 1) % n]);
            coarse[k].is_finite() && coarse[k] <= prev && coarse[k] <= next
        })
        .collect();
    minima.sort_by(|&a, &b| coarse[a].total_cmp(&coarse[b]));
    minima.truncate(3);

    let mut best = SpreadMinimum {
        phase: 0.0,
        spread: f64::INFINITY,
    };
    for k in minima {
        let center = h * k as f64;
        let cand = golden_section(eval, center - h, center + h, REFINE_WIDTH);
        let cand = if coarse[k] < cand.spread {
            SpreadMinimum {
                phase: center,
                spread: coarse[k],
            }
        } else {
            cand
        };
        if cand.spread < best.spread {
            best = cand;
        }
    }
    best.phase = best.phase.rem_euclid(TAU);
    best
}

/// Golden-section minimization of a unimodal function on `[lo, hi]`.
pub fn golden_section(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    width: f64,
) -> SpreadMinimum {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > width {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        SpreadMinimum {
            phase: x1,
            spread: f1,
        }
    } else {
        SpreadMinimum {
            phase: x2,
            spread: f2,
        }
    }
}

/// Most nearly equilateral tangential member.
pub fn most_equilateral_tangential(cfg: &FamilyConfig, tol: f64) -> SpreadMinimum {
    let circle = CircleG::unit();
    scan_min_spread(|phase| {
        let t = triangle_at(cfg, LambdaParam::from_phase(phase));
        tangential_triangle(&t, &circle, tol)
            .map(|tan| tan.side_spread())
            .unwrap_or(f64::INFINITY)
    })
}

/// Whether the tangential family has an equilateral member, found by sweep.
pub fn dual_contains_equilateral(cfg: &FamilyConfig, tol: f64) -> bool {
    most_equilateral_tangential(cfg, tol).spread < EQUILATERAL_SPREAD_TOL
}

/// Most nearly equilateral member of the family itself, found by sweep.
pub fn most_equilateral_member(cfg: &FamilyConfig) -> SpreadMinimum {
    scan_min_spread(|phase| triangle_at(cfg, LambdaParam::from_phase(phase)).side_spread())
}
