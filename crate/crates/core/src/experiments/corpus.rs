//! Seeded random configurations for the verifiers and the test suites.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{cis, CPoint, Triangle};
use crate::poncelet::{
    config_from_center_and_equilateral_vertex, lemma_defect, triangle_at, FamilyConfig, LambdaParam,
};

/// Lemma defect a generated reject must exceed.
pub const REJECT_MARGIN: f64 = 1e-2;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn in_disk(rng: &mut impl Rng, radius: f64) -> CPoint {
    radius * rng.random::<f64>().sqrt() * cis(TAU * rng.random::<f64>())
}

/// A family with an equilateral member, built from a random caustic center
/// and equilateral vertex.
pub fn random_lemma_config(rng: &mut impl Rng) -> FamilyConfig {
    loop {
        let center = in_disk(rng, 0.6);
        if center.norm() < 0.02 {
            continue;
        }
        let a_eq = cis(TAU * rng.random::<f64>());
        if let Ok(cfg) = config_from_center_and_equilateral_vertex(center, a_eq) {
            return cfg;
        }
    }
}

/// A valid family whose Lemma defect exceeds [`REJECT_MARGIN`].
pub fn random_reject_config(rng: &mut impl Rng) -> FamilyConfig {
    loop {
        let (f, g) = (in_disk(rng, 0.85), in_disk(rng, 0.85));
        if let Ok(cfg) = FamilyConfig::new(f, g) {
            if lemma_defect(&cfg) > REJECT_MARGIN {
                return cfg;
            }
        }
    }
}

/// `size / 2` Lemma-satisfying configs followed by `size − size / 2` rejects.
pub fn observation_corpus(seed: u64, size: usize) -> Vec<FamilyConfig> {
    let mut r = rng(seed);
    let half = size / 2;
    let mut out: Vec<FamilyConfig> = (0..half).map(|_| random_lemma_config(&mut r)).collect();
    out.extend((half..size).map(|_| random_reject_config(&mut r)));
    out
}

/// Three uniform points on the unit circle forming an acute triangle that is
/// not too thin.
pub fn random_acute_triangle(rng: &mut impl Rng) -> Triangle {
    loop {
        let t = Triangle::new(
            cis(TAU * rng.random::<f64>()),
            cis(TAU * rng.random::<f64>()),
            cis(TAU * rng.random::<f64>()),
        );
        if t.is_acute() && t.normalized_area() > 0.05 {
            return t;
        }
    }
}

/// Member of an equilateral-containing family far from its isoceles and
/// equilateral members, with the family's caustic center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenericMember {
    pub cfg: FamilyConfig,
    pub triangle: Triangle,
    pub caustic_center: CPoint,
}

pub fn random_generic_member(rng: &mut impl Rng) -> GenericMember {
    loop {
        let cfg = random_lemma_config(rng);
        let t = triangle_at(&cfg, LambdaParam::from_phase(TAU * rng.random::<f64>()));
        let [a, b, c] = t.side_lengths().map(|x| x * x);
        let gap = (a - b).abs().min((b - c).abs()).min((c - a).abs()) / a.max(b).max(c);
        if gap > 1e-2 && t.normalized_area() > 0.05 {
            return GenericMember {
                cfg,
                triangle: t,
                caustic_center: (cfg.f() + cfg.g()) / 2.0,
            };
        }
    }
}
