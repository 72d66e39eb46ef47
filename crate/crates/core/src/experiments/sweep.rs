use std::collections::BTreeMap;
use std::f64::consts::TAU;

use rayon::prelude::*;

use super::fit::{stationarity, Stationarity};
use super::Tolerances;
use crate::centers::{center, CenterIndex};
use crate::dual::golden_section;
use crate::error::{GeomError, Result};
use crate::geom::{CPoint, Triangle};
use crate::poncelet::{match_to_previous, triangle_at, FamilyConfig, LambdaParam};

pub const MIN_SWEEP_SAMPLES: usize = 16;

/// Grid used to locate isoceles members before refinement.
const SINGULAR_SCAN: usize = 2048;

/// Relative `|b² − c²|` below which a refined minimum counts as isoceles.
const ISOCELES_ACCEPT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum WindowKind {
    Isoceles,
    Equilateral,
}

impl WindowKind {
    pub fn label(&self) -> &'static str {
        match self {
            WindowKind::Isoceles => "isoceles",
            WindowKind::Equilateral => "equilateral",
        }
    }

    fn excludes(&self, idx: CenterIndex) -> bool {
        match self {
            WindowKind::Isoceles => idx.singular_on_isoceles(),
            WindowKind::Equilateral => idx.singular_on_equilateral(),
        }
    }
}

/// A λ-phase around which singular centers are dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularWindow {
    pub phase: f64,
    pub kind: WindowKind,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SampleFlags {
    pub degenerate: bool,
    pub obtuse: bool,
    /// Centers dropped because the sample sits in a singular window.
    pub excluded: Vec<(CenterIndex, WindowKind)>,
    /// Centers whose evaluation failed outside any window.
    pub failed: Vec<CenterIndex>,
}

impl SampleFlags {
    pub fn is_excluded(&self) -> bool {
        !self.excluded.is_empty()
    }

    /// `;`-joined tags, empty for a clean sample.
    pub fn tags(&self) -> String {
        let mut tags = Vec::new();
        if self.degenerate {
            tags.push("degenerate".to_string());
        }
        if self.obtuse {
            tags.push("obtuse".to_string());
        }
        for (idx, kind) in &self.excluded {
            tags.push(format!("excluded-{}:{idx}", kind.label()));
        }
        for idx in &self.failed {
            tags.push(format!("failed:{idx}"));
        }
        tags.join(";")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSample {
    pub lambda: LambdaParam,
    pub phase: f64,
    pub triangle: Triangle,
    pub centers: BTreeMap<CenterIndex, CPoint>,
    pub flags: SampleFlags,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub cfg: FamilyConfig,
    pub centers: Vec<CenterIndex>,
    /// Ordered by phase.
    pub samples: Vec<SweepSample>,
    pub windows: Vec<SingularWindow>,
}

impl SweepResult {
    /// Swept positions of `idx` over the samples where it is defined.
    pub fn points(&self, idx: CenterIndex) -> Vec<CPoint> {
        self.samples
            .iter()
            .filter_map(|s| s.centers.get(&idx).copied())
            .collect()
    }

    pub fn stationarity(&self, idx: CenterIndex) -> Result<StationarityReport> {
        let st = stationarity(&self.points(idx))?;
        Ok(StationarityReport {
            center: idx,
            stats: st,
        })
    }

    /// Largest distance of a swept center from `target`, or `None` when no
    /// sample defines it.
    pub fn max_deviation_from(&self, idx: CenterIndex, target: CPoint) -> Option<f64> {
        let pts = self.points(idx);
        (!pts.is_empty()).then(|| pts.iter().map(|p| (p - target).norm()).fold(0.0, f64::max))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationarityReport {
    pub center: CenterIndex,
    pub stats: Stationarity,
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// `min |b² − c²| / (abc)^{2/3}` over the three pairs of sides.
fn isoceles_measure(t: &Triangle) -> f64 {
    let [a, b, c] = t.side_lengths();
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let scale = (a * b * c).powf(2.0 / 3.0);
    if scale == 0.0 {
        return 0.0;
    }
    (b2 - c2).abs().min((c2 - a2).abs()).min((a2 - b2).abs()) / scale
}

/// Phases of the isoceles and equilateral members, and whether every member
/// is equilateral.
pub fn singular_windows(cfg: &FamilyConfig) -> (Vec<SingularWindow>, bool) {
    let h = TAU / SINGULAR_SCAN as f64;
    let measure = |p: f64| isoceles_measure(&triangle_at(cfg, LambdaParam::from_phase(p)));
    let coarse: Vec<f64> = (0..SINGULAR_SCAN)
        .into_par_iter()
        .map(|k| measure(h * k as f64))
        .collect();
    if coarse.iter().all(|&m| m < ISOCELES_ACCEPT) {
        return (Vec::new(), true);
    }
    let n = SINGULAR_SCAN;
    let mut windows: Vec<SingularWindow> = (0..n)
        .filter(|&k| coarse[k] <= coarse[(k + n - 1) % n] && coarse[k] < coarse[(k + 1) % n])
        .filter_map(|k| {
            let mid = h * k as f64;
            let best = golden_section(measure, mid - h, mid + h, 1e-13);
            if best.spread >= ISOCELES_ACCEPT {
                return None;
            }
            let phase = best.phase.rem_euclid(TAU);
            let t = triangle_at(cfg, LambdaParam::from_phase(phase));
            let kind = if t.side_spread() < ISOCELES_ACCEPT {
                WindowKind::Equilateral
            } else {
                WindowKind::Isoceles
            };
            Some(SingularWindow { phase, kind })
        })
        .collect();
    windows.sort_by(|a, b| a.phase.total_cmp(&b.phase));
    windows.dedup_by(|a, b| circular_distance(a.phase, b.phase) < 1e-9);
    (windows, false)
}

/// `n` uniform λ-phase samples starting at phase 0, with the requested
/// centers evaluated on each. Vertex order follows the roots continuously.
pub fn sweep(
    cfg: &FamilyConfig,
    n: usize,
    centers: &[CenterIndex],
    tols: &Tolerances,
) -> Result<SweepResult> {
    if n < MIN_SWEEP_SAMPLES {
        return Err(GeomError::Precondition(format!(
            "sweep needs at least {MIN_SWEEP_SAMPLES} samples, got {n}"
        )));
    }
    let mut centers = centers.to_vec();
    centers.sort();
    centers.dedup();

    let needs_windows = centers.iter().any(|c| c.singular_on_equilateral());
    let (windows, all_equilateral) = if needs_windows {
        singular_windows(cfg)
    } else {
        (Vec::new(), false)
    };

    let phases: Vec<f64> = (0..n).map(|k| TAU * k as f64 / n as f64).collect();
    let raw: Vec<Triangle> = phases
        .par_iter()
        .map(|&p| triangle_at(cfg, LambdaParam::from_phase(p)))
        .collect();
    let mut tracked = Vec::with_capacity(n);
    for t in raw {
        let next = match tracked.last() {
            Some(prev) => match_to_previous(prev, &t),
            None => t,
        };
        tracked.push(next);
    }

    let samples = phases
        .par_iter()
        .zip(tracked.par_iter())
        .map(|(&phase, t)| {
            let mut flags = SampleFlags {
                degenerate: t.is_degenerate(tols.degeneracy),
                obtuse: !t.is_acute(),
                ..SampleFlags::default()
            };
            let mut values = BTreeMap::new();
            for &idx in &centers {
                let window = if all_equilateral && idx.singular_on_equilateral() {
                    Some(WindowKind::Equilateral)
                } else {
                    windows
                        .iter()
                        .filter(|w| {
                            circular_distance(phase, w.phase) < tols.window && w.kind.excludes(idx)
                        })
                        .map(|w| w.kind)
                        .max()
                };
                if let Some(kind) = window {
                    flags.excluded.push((idx, kind));
                    continue;
                }
                match center(t, idx, tols.degeneracy) {
                    Ok(p) => {
                        values.insert(idx, p);
                    }
                    Err(_) => flags.failed.push(idx),
                }
            }
            SweepSample {
                lambda: LambdaParam::from_phase(phase),
                phase,
                triangle: *t,
                centers: values,
                flags,
            }
        })
        .collect();

    Ok(SweepResult {
        cfg: *cfg,
        centers,
        samples,
        windows,
    })
}
