//! Poncelet triangle families inscribed in the unit circle.
//!
//! A family is fixed by the foci `f, g` of its caustic. Members are the roots
//! of `z³ − e1 z² + e2 z − e3` with
//!
//! ```text
//! e1 = f + g + λ f̄ ḡ,   e2 = f g + λ (f̄ + ḡ),   e3 = λ,   |λ| = 1.
//! ```

use std::f64::consts::TAU;

use crate::cubic::cubic_roots;
use crate::error::{GeomError, Result};
use crate::geom::conic::order_lex;
use crate::geom::{cis, ellipse_foci, CPoint, CircleG, ConicQ, EllipseG, Triangle};

/// Tolerance on `|λ| = 1`.
pub const LAMBDA_UNIT_TOL: f64 = 1e-12;

/// Tolerance on vertex moduli when a triangle must be inscribed in the unit circle.
pub const INSCRIBED_TOL: f64 = 1e-9;

/// Caustic foci of one circle-inscribed family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyConfig {
    f: CPoint,
    g: CPoint,
}

impl FamilyConfig {
    /// Validates that both foci are inside the unit disk and that the
    /// caustic stays strictly inside the circle.
    pub fn new(f: CPoint, g: CPoint) -> Result<Self> {
        for z in [f, g] {
            if !z.re.is_finite() || !z.im.is_finite() || z.norm() >= 1.0 {
                return Err(GeomError::FocusOutsideDisk(format!("{z}")));
            }
        }
        let cfg = Self { f, g };
        let caustic = cfg.caustic();
        let outside = (0..64)
            .map(|k| caustic.point_at(TAU * k as f64 / 64.0).norm())
            .any(|r| r >= 1.0);
        if outside {
            return Err(GeomError::NoValidCaustic(format!("{f}"), format!("{g}")));
        }
        Ok(cfg)
    }

    pub fn f(&self) -> CPoint {
        self.f
    }

    pub fn g(&self) -> CPoint {
        self.g
    }

    /// Elementary symmetric functions `(e1, e2, e3)` of the member at `λ`.
    pub fn coefficients(&self, lambda: LambdaParam) -> [CPoint; 3] {
        let (f, g, l) = (self.f, self.g, lambda.value());
        [
            f + g + l * f.conj() * g.conj(),
            f * g + l * (f.conj() + g.conj()),
            l,
        ]
    }

    /// The caustic: foci `f, g`, major axis `|1 − f̄ g|`.
    pub fn caustic(&self) -> EllipseG {
        caustic_of(self)
    }

    pub fn caustic_conic(&self) -> ConicQ {
        self.caustic().to_conic()
    }

    /// Same family rotated about the origin by `theta`.
    pub fn rotated(&self, theta: f64) -> Result<Self> {
        Self::new(self.f * cis(theta), self.g * cis(theta))
    }
}

/// A point of the unit circle parametrizing family members.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaParam(CPoint);

impl LambdaParam {
    pub fn new(z: CPoint) -> Result<Self> {
        if (z.norm() - 1.0).abs() > LAMBDA_UNIT_TOL {
            return Err(GeomError::Precondition(format!(
                "|λ| = {} is not 1",
                z.norm()
            )));
        }
        Ok(Self(z))
    }

    pub fn from_phase(phase: f64) -> Self {
        Self(cis(phase))
    }

    pub fn value(&self) -> CPoint {
        self.0
    }

    /// Argument in [0, 2π).
    pub fn phase(&self) -> f64 {
        self.0.arg().rem_euclid(TAU)
    }
}

/// The member triangle at `λ`, vertices sorted counterclockwise by argument.
///
/// Colliding roots produce a degenerate triangle; check
/// [`Triangle::is_degenerate`].
pub fn triangle_at(cfg: &FamilyConfig, lambda: LambdaParam) -> Triangle {
    let [e1, e2, e3] = cfg.coefficients(lambda);
    let mut roots = cubic_roots(e1, e2, e3);
    roots.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
    Triangle::new(roots[0], roots[1], roots[2])
}

/// Rotates the vertex labels of `next` to best match `prev`.
///
/// Only cyclic relabelings are considered, so orientation is kept.
pub fn match_to_previous(prev: &Triangle, next: &Triangle) -> Triangle {
    (0..3)
        .map(|k| next.rotated(k))
        .min_by(|a, b| {
            let cost = |t: &Triangle| {
                (0..3)
                    .map(|i| (t.vertex(i) - prev.vertex(i)).norm_sqr())
                    .sum::<f64>()
            };
            cost(a).total_cmp(&cost(b))
        })
        .expect("three candidates")
}

/// Ellipse with foci `f, g` and major-axis length `|1 − f̄ g|`.
pub fn caustic_of(cfg: &FamilyConfig) -> EllipseG {
    let a = (1.0 - cfg.f.conj() * cfg.g).norm() / 2.0;
    EllipseG::from_foci(cfg.f, cfg.g, a).expect("foci inside the disk give a > c")
}

/// Whether the family contains an equilateral member: `|f + g| = |f g|`.
pub fn contains_equilateral(cfg: &FamilyConfig, tol: f64) -> bool {
    lemma_defect(cfg) <= tol
}

/// `| |f + g| − |f g| |`.
pub fn lemma_defect(cfg: &FamilyConfig) -> f64 {
    ((cfg.f + cfg.g).norm() - (cfg.f * cfg.g).norm()).abs()
}

/// `λ_o = −(f + g) / (f̄ ḡ)`, the parameter of the equilateral member.
pub fn equilateral_lambda(cfg: &FamilyConfig, tol: f64) -> Result<LambdaParam> {
    let fg = cfg.f * cfg.g;
    if fg.norm() < tol {
        return Err(GeomError::Undefined(
            "equilateral parameter for a focus at 0",
        ));
    }
    let lam = -(cfg.f + cfg.g) / fg.conj();
    if (lam.norm() - 1.0).abs() > tol.max(1e-10) || !contains_equilateral(cfg, tol) {
        return Err(GeomError::NoEquilateral(lemma_defect(cfg)));
    }
    LambdaParam::new(lam / lam.norm())
}

/// The equilateral member: cube roots of `λ_o`. With `f = g = 0` every member
/// is equilateral and the one at `λ = 1` is returned.
pub fn equilateral_vertices(cfg: &FamilyConfig, tol: f64) -> Result<Triangle> {
    let lam = if cfg.f.norm() < tol && cfg.g.norm() < tol {
        LambdaParam::from_phase(0.0)
    } else {
        equilateral_lambda(cfg, tol)?
    };
    let r = lam.value().powf(1.0 / 3.0);
    let w = cis(TAU / 3.0);
    Ok(Triangle::new(r, r * w, r * w * w))
}

/// `(1/f + 1/g)⁻¹ = f g / (f + g)`, where X110 sits for every member.
pub fn stationary_x110_prediction(cfg: &FamilyConfig, tol: f64) -> Result<CPoint> {
    if !contains_equilateral(cfg, tol) {
        return Err(GeomError::NoEquilateral(lemma_defect(cfg)));
    }
    let s = cfg.f + cfg.g;
    if s.norm() < tol {
        return Err(GeomError::Undefined("stationary X110 when f + g = 0"));
    }
    Ok(cfg.f * cfg.g / s)
}

/// Barycentric coordinates of `p` with respect to `t`, normalized to sum 1.
pub fn barycentric(t: &Triangle, p: CPoint) -> [f64; 3] {
    let [a, b, c] = t.vertices();
    let area = |x: CPoint, y: CPoint, z: CPoint| 0.5 * ((y - x).conj() * (z - x)).im;
    let total = area(a, b, c);
    [
        area(p, b, c) / total,
        area(a, p, c) / total,
        area(a, b, p) / total,
    ]
}

/// The inconic of `t` centered at `center`.
///
/// The perspector is the isotomic conjugate of the anticomplement
/// `Q = 3G − 2O`; with `Q = (u : v : w)` the inconic is
/// `u²x² + v²y² + w²z² − 2uv xy − 2vw yz − 2wu zx = 0` in barycentrics.
pub fn inconic_with_center(t: &Triangle, center: CPoint, tol: f64) -> Result<ConicQ> {
    if t.is_degenerate(tol) {
        return Err(GeomError::Degenerate("reference triangle"));
    }
    let q = 3.0 * t.centroid() - 2.0 * center;
    let [u, v, w] = barycentric(t, q);
    if u.min(v).min(w) <= tol {
        return Err(GeomError::InconicNotEllipse);
    }
    let bary = nalgebra::Matrix3::new(
        u * u,
        -u * v,
        -u * w,
        -u * v,
        v * v,
        -v * w,
        -u * w,
        -v * w,
        w * w,
    );
    let [a, b, c] = t.vertices();
    let to_cart = nalgebra::Matrix3::new(a.re, b.re, c.re, a.im, b.im, c.im, 1.0, 1.0, 1.0);
    let inv = to_cart
        .try_inverse()
        .ok_or(GeomError::Degenerate("reference triangle"))?;
    Ok(ConicQ::from_matrix(inv.transpose() * bary * inv))
}

/// The family through `t` whose caustic is the inconic of `t` centered at `center`.
pub fn config_from_triangle_and_center(
    t: &Triangle,
    center: CPoint,
    tol: f64,
) -> Result<FamilyConfig> {
    if t.vertices()
        .iter()
        .any(|v| (v.norm() - 1.0).abs() > INSCRIBED_TOL)
    {
        return Err(GeomError::Precondition(
            "triangle not inscribed in the unit circle".into(),
        ));
    }
    let conic = inconic_with_center(t, center, tol)?;
    let (f, g) = ellipse_foci(&conic, tol)?;
    FamilyConfig::new(f, g)
}

/// The equilateral-containing family with caustic center `center` whose
/// equilateral member has a vertex at `a_eq`.
///
/// Uses `f + g = 2O` and `f g = −2 Ō A³`, which force `λ_o = A³`.
pub fn config_from_center_and_equilateral_vertex(
    center: CPoint,
    a_eq: CPoint,
) -> Result<FamilyConfig> {
    if (a_eq.norm() - 1.0).abs() > INSCRIBED_TOL {
        return Err(GeomError::Precondition(
            "equilateral vertex not on the unit circle".into(),
        ));
    }
    let prod = -2.0 * center.conj() * a_eq.powi(3);
    let root = (center * center - prod).sqrt();
    let (f, g) = order_lex(center + root, center - root);
    if f.norm() >= 1.0 || g.norm() >= 1.0 {
        return Err(GeomError::NoValidCaustic(format!("{f}"), format!("{g}")));
    }
    FamilyConfig::new(f, g)
}

/// Unit circle, the outer conic of every family here.
pub fn circumcircle() -> CircleG {
    CircleG::unit()
}
