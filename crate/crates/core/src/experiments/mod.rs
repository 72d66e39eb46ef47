//! Sweeps over a family, locus metrics, and one verifier per claim.

pub mod corpus;
mod fit;
mod report;
mod sweep;
mod verify;

pub use fit::{fit_circle, stationarity, CircleFitResult, Stationarity};
pub use report::{Bound, Check, PropositionReport, Status};
pub use sweep::{
    singular_windows, sweep, SampleFlags, SingularWindow, StationarityReport, SweepResult,
    SweepSample, WindowKind, MIN_SWEEP_SAMPLES,
};
pub use verify::*;

use crate::geom::DEGENERACY_TOL;

/// Thresholds used by sweeps and verifiers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Kernel degeneracy cutoff.
    pub degeneracy: f64,
    /// Lemma criterion `| |f+g| − |fg| |`.
    pub lemma: f64,
    /// Stationary points and exact loci.
    pub stationary: f64,
    /// Fitted locus parameters and vertex matches.
    pub locus: f64,
    /// Minimum deviation a negative control must show.
    pub separation: f64,
    /// Half-width in λ-phase of a singular window.
    pub window: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            degeneracy: DEGENERACY_TOL,
            lemma: 1e-9,
            stationary: 1e-7,
            locus: 1e-6,
            separation: 1e-3,
            window: 1e-3,
        }
    }
}

impl Tolerances {
    /// Replaces both claim-level tolerances.
    pub fn with_claim_tolerance(mut self, tol: f64) -> Self {
        self.stationary = tol;
        self.locus = tol;
        self
    }
}
