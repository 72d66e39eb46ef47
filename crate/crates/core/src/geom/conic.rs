//! Projective conics as symmetric 3×3 matrices, pole–polar duality, and
//! conversion to geometric ellipse / parabola form.

use nalgebra::{Matrix3, Vector3};

use super::{CPoint, CircleG, HLine};
use crate::error::{GeomError, Result};

/// A conic `xᵀ M x = 0` in homogeneous coordinates `(x, y, 1)`.
///
/// The stored matrix is symmetric, has unit Frobenius norm, and its
/// largest-magnitude entry is positive (first in row-major order on ties),
/// so two matrices describing the same conic compare equal up to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicQ {
    m: Matrix3<f64>,
}

impl ConicQ {
    pub fn from_matrix(m: Matrix3<f64>) -> Self {
        let sym = (m + m.transpose()) * 0.5;
        let norm = sym.norm();
        let mut out = if norm > 0.0 { sym / norm } else { sym };
        let mut best = 0.0_f64;
        let mut sign = 1.0;
        for r in 0..3 {
            for c in 0..3 {
                let v = out[(r, c)];
                if v.abs() > best.abs() {
                    best = v;
                    sign = v.signum();
                }
            }
        }
        if sign < 0.0 {
            out = -out;
        }
        Self { m: out }
    }

    /// `A x² + B xy + C y² + D x + E y + F = 0`.
    pub fn from_coeffs(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Self {
        Self::from_matrix(Matrix3::new(
            a,
            b / 2.0,
            d / 2.0,
            b / 2.0,
            c,
            e / 2.0,
            d / 2.0,
            e / 2.0,
            f,
        ))
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.m
    }

    pub fn eval(&self, p: CPoint) -> f64 {
        let v = Vector3::new(p.re, p.im, 1.0);
        (v.transpose() * self.m * v)[0]
    }

    pub fn det(&self) -> f64 {
        self.m.determinant()
    }

    pub fn is_degenerate(&self, tol: f64) -> bool {
        self.det().abs() < tol
    }

    fn adjugate(&self) -> Matrix3<f64> {
        adjugate(&self.m)
    }

    /// Frobenius distance between the normalized matrices, minimized over sign.
    pub fn proportionality_residual(&self, other: &ConicQ) -> f64 {
        (self.m - other.m).norm().min((self.m + other.m).norm())
    }

    /// Algebraic residual of `p` scaled by the gradient norm, a first-order
    /// estimate of the distance from `p` to the curve.
    pub fn point_residual(&self, p: CPoint) -> f64 {
        let v = Vector3::new(p.re, p.im, 1.0);
        let g = self.m * v;
        let grad = (2.0 * g[0]).hypot(2.0 * g[1]);
        let val = self.eval(p);
        if grad > 0.0 {
            (val / grad).abs()
        } else {
            val.abs()
        }
    }
}

pub(crate) fn adjugate(m: &Matrix3<f64>) -> Matrix3<f64> {
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| {
        m[(r0, c0)] * m[(r1, c1)] - m[(r0, c1)] * m[(r1, c0)]
    };
    // adj = transpose of cofactor matrix
    Matrix3::new(
        c(1, 2, 1, 2),
        -c(0, 2, 1, 2),
        c(0, 1, 1, 2),
        -c(1, 2, 0, 2),
        c(0, 2, 0, 2),
        -c(0, 1, 0, 2),
        c(1, 2, 0, 1),
        -c(0, 2, 0, 1),
        c(0, 1, 0, 1),
    )
}

fn circle_matrix(circle: &CircleG) -> Matrix3<f64> {
    let (cx, cy) = (circle.center.re, circle.center.im);
    Matrix3::new(
        1.0,
        0.0,
        -cx,
        0.0,
        1.0,
        -cy,
        -cx,
        -cy,
        cx * cx + cy * cy - circle.radius * circle.radius,
    )
}

/// Polar line of `p` with respect to `conic`.
pub fn polar_line(p: CPoint, conic: &ConicQ, tol: f64) -> Result<HLine> {
    if conic.is_degenerate(tol) {
        return Err(GeomError::Degenerate("conic matrix is singular"));
    }
    let v = conic.m * Vector3::new(p.re, p.im, 1.0);
    HLine::new(v[0], v[1], v[2])
        .map_err(|_| GeomError::Degenerate("point is the conic center: polar at infinity"))
}

/// Pole of `line` with respect to `conic`.
pub fn pole(line: &HLine, conic: &ConicQ, tol: f64) -> Result<CPoint> {
    if conic.is_degenerate(tol) {
        return Err(GeomError::Degenerate("conic matrix is singular"));
    }
    let l = line.normalized();
    let v = conic.adjugate() * Vector3::new(l.l, l.m, l.n);
    let scale = v.norm();
    if v[2].abs() <= tol * scale {
        return Err(GeomError::Degenerate(
            "line through conic center: pole at infinity",
        ));
    }
    Ok(CPoint::new(v[0] / v[2], v[1] / v[2]))
}

/// The conic whose points are the poles of the tangents of `conic` with
/// respect to `wrt`; equivalently, the envelope of the polars of its points.
pub fn polar_image_of_conic(conic: &ConicQ, wrt: &CircleG, tol: f64) -> Result<ConicQ> {
    if conic.is_degenerate(tol) {
        return Err(GeomError::Degenerate("conic matrix is singular"));
    }
    let s = circle_matrix(wrt);
    Ok(ConicQ::from_matrix(s * conic.adjugate() * s))
}

/// Scale-normalized `Lᵀ adj(C) L`; zero iff `line` is tangent to `conic`.
///
/// The adjugate is even in the matrix sign, so for a real ellipse the value
/// is positive for lines missing it and negative for secants.
pub fn line_conic_tangency_residual(line: &HLine, conic: &ConicQ) -> f64 {
    let l = line.normalized();
    let v = Vector3::new(l.l, l.m, l.n);
    let adj = conic.adjugate();
    let n = adj.norm();
    let raw = (v.transpose() * adj * v)[0];
    if n > 0.0 {
        raw / n
    } else {
        raw
    }
}

/// Ellipse in center / semi-axes / rotation form, `a ≥ b > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseG {
    pub center: CPoint,
    pub a: f64,
    pub b: f64,
    /// Major-axis direction in (−π/2, π/2].
    pub theta: f64,
}

impl EllipseG {
    pub fn new(center: CPoint, a: f64, b: f64, theta: f64) -> Result<Self> {
        if !(b > 0.0 && a >= b && a.is_finite()) {
            return Err(GeomError::Degenerate("ellipse needs a >= b > 0"));
        }
        Ok(Self {
            center,
            a,
            b,
            theta: axis_angle(theta),
        })
    }

    /// The ellipse with the given foci and semi-major axis.
    pub fn from_foci(f: CPoint, g: CPoint, a: f64) -> Result<Self> {
        let c = (f - g).norm() / 2.0;
        if a.is_nan() || a <= c {
            return Err(GeomError::Degenerate(
                "semi-major axis not above focal half-distance",
            ));
        }
        let b = ((a - c) * (a + c)).sqrt();
        let theta = if c > 0.0 { (f - g).arg() } else { 0.0 };
        Self::new((f + g) / 2.0, a, b, theta)
    }

    pub fn focal_half_distance(&self) -> f64 {
        ((self.a - self.b) * (self.a + self.b)).max(0.0).sqrt()
    }

    /// Foci ordered lexicographically by (re, im).
    pub fn foci(&self) -> (CPoint, CPoint) {
        let d = self.focal_half_distance() * super::cis(self.theta);
        order_lex(self.center + d, self.center - d)
    }

    pub fn point_at(&self, t: f64) -> CPoint {
        self.center + super::cis(self.theta) * CPoint::new(self.a * t.cos(), self.b * t.sin())
    }

    pub fn to_conic(&self) -> ConicQ {
        let (s, c) = self.theta.sin_cos();
        let (ia, ib) = (1.0 / (self.a * self.a), 1.0 / (self.b * self.b));
        let a11 = c * c * ia + s * s * ib;
        let a22 = s * s * ia + c * c * ib;
        let a12 = c * s * (ia - ib);
        let (x0, y0) = (self.center.re, self.center.im);
        let bx = -(a11 * x0 + a12 * y0);
        let by = -(a12 * x0 + a22 * y0);
        let k = a11 * x0 * x0 + 2.0 * a12 * x0 * y0 + a22 * y0 * y0 - 1.0;
        ConicQ::from_matrix(Matrix3::new(a11, a12, bx, a12, a22, by, bx, by, k))
    }
}

/// Orders two points by real part, then imaginary part. Real parts within
/// 1e−12 count as equal so rounding cannot flip conjugate pairs.
pub(crate) fn order_lex(p: CPoint, q: CPoint) -> (CPoint, CPoint) {
    let swap = if (p.re - q.re).abs() <= 1e-12 {
        p.im > q.im
    } else {
        p.re > q.re
    };
    if swap {
        (q, p)
    } else {
        (p, q)
    }
}

fn axis_angle(theta: f64) -> f64 {
    use std::f64::consts::{FRAC_PI_2, PI};
    let mut t = theta.rem_euclid(PI);
    if t > FRAC_PI_2 {
        t -= PI;
    }
    t
}

/// Parabola given by focus and directrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolaG {
    pub focus: CPoint,
    pub directrix: HLine,
}

impl ParabolaG {
    pub fn new(focus: CPoint, directrix: HLine, tol: f64) -> Result<Self> {
        if directrix.distance(focus).abs() < tol {
            return Err(GeomError::Degenerate(
                "parabola focus lies on its directrix",
            ));
        }
        Ok(Self {
            focus,
            directrix: directrix.normalized(),
        })
    }

    /// Midpoint of the focus and its foot on the directrix.
    pub fn vertex(&self) -> CPoint {
        (self.focus + self.directrix.project(self.focus)) / 2.0
    }

    /// `|x − F|² − (l x + m y + n)² = 0`.
    pub fn to_conic(&self) -> ConicQ {
        let HLine { l, m, n } = self.directrix.normalized();
        let (fx, fy) = (self.focus.re, self.focus.im);
        ConicQ::from_matrix(Matrix3::new(
            1.0 - l * l,
            -l * m,
            -fx - l * n,
            -l * m,
            1.0 - m * m,
            -fy - m * n,
            -fx - l * n,
            -fy - m * n,
            fx * fx + fy * fy - n * n,
        ))
    }

    /// Point of the parabola at signed offset `s` along the directrix
    /// direction, measured from the axis.
    pub fn point_at(&self, s: f64) -> CPoint {
        let d = self.directrix.normalized();
        let foot = d.project(self.focus);
        let p = d.distance(self.focus);
        // height above the directrix: (s² + p²) / (2p), on the focus side
        let h = (s * s + p * p) / (2.0 * p);
        foot + s * d.direction() + h * d.normal()
    }
}

/// Result of classifying a conic matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConicShape {
    Ellipse(EllipseG),
    Parabola(ParabolaG),
    Hyperbola,
    /// Ellipse equation with no real points.
    Imaginary,
    /// Rank below three.
    Degenerate,
}

/// Recovers geometric form from a conic matrix.
pub fn conic_to_geometric(conic: &ConicQ, tol: f64) -> ConicShape {
    if conic.is_degenerate(tol) {
        return ConicShape::Degenerate;
    }
    let m = conic.m;
    let (a11, a12, a22) = (m[(0, 0)], m[(0, 1)], m[(1, 1)]);
    let (b1, b2, c0) = (m[(0, 2)], m[(1, 2)], m[(2, 2)]);
    let det2 = a11 * a22 - a12 * a12;
    let mean = (a11 + a22) / 2.0;
    let half_gap = ((a11 - a22) / 2.0).hypot(a12);

    if det2.abs() < tol {
        return parabola_from_matrix(a11, a12, a22, b1, b2, c0, mean, half_gap, tol);
    }
    if det2 < 0.0 {
        return ConicShape::Hyperbola;
    }
    // orient so the quadratic form is positive definite
    let s = mean.signum();
    let (a11, a12, a22, b1, b2, c0) = (s * a11, s * a12, s * a22, s * b1, s * b2, s * c0);
    let (mean, det2) = (s * mean, det2);
    let cx = (-a22 * b1 + a12 * b2) / det2;
    let cy = (a12 * b1 - a11 * b2) / det2;
    let k = c0 + b1 * cx + b2 * cy;
    if k >= 0.0 {
        return ConicShape::Imaginary;
    }
    let lam_small = det2 / (mean + half_gap);
    let lam_big = mean + half_gap;
    let a = (-k / lam_small).sqrt();
    let b = (-k / lam_big).sqrt();
    let theta = if half_gap <= 1e-15 * mean {
        0.0
    } else {
        0.5 * (2.0 * a12).atan2(a11 - a22) + std::f64::consts::FRAC_PI_2
    };
    match EllipseG::new(CPoint::new(cx, cy), a, b, theta) {
        Ok(e) => ConicShape::Ellipse(e),
        Err(_) => ConicShape::Degenerate,
    }
}

/// Foci of a real ellipse, ordered lexicographically.
///
/// Uses `c² = −k (λ₂ − λ₁) / (λ₁ λ₂)` from the eigenvalue gap of the
/// quadratic part, avoiding the cancellation in `a² − b²`.
pub fn ellipse_foci(conic: &ConicQ, tol: f64) -> Result<(CPoint, CPoint)> {
    let ConicShape::Ellipse(e) = conic_to_geometric(conic, tol) else {
        return Err(GeomError::Degenerate("conic is not a real ellipse"));
    };
    let m = conic.m;
    let s = (m[(0, 0)] + m[(1, 1)]).signum();
    let (a11, a12, a22) = (s * m[(0, 0)], s * m[(0, 1)], s * m[(1, 1)]);
    let det2 = a11 * a22 - a12 * a12;
    let gap = 2.0 * ((a11 - a22) / 2.0).hypot(a12);
    let v = nalgebra::Vector3::new(e.center.re, e.center.im, 1.0);
    let k = s * (v.transpose() * m * v)[0];
    let c = (-k * gap / det2).max(0.0).sqrt();
    let d = c * super::cis(e.theta);
    Ok(order_lex(e.center + d, e.center - d))
}

#[allow(clippy::too_many_arguments)]
fn parabola_from_matrix(
    a11: f64,
    a12: f64,
    a22: f64,
    b1: f64,
    b2: f64,
    c0: f64,
    mean: f64,
    half_gap: f64,
    tol: f64,
) -> ConicShape {
    let mu = mean + mean.signum() * half_gap;
    // eigenvector of the nonzero eigenvalue
    let phi = 0.5 * (2.0 * a12).atan2(a11 - a22);
    let phi = if mean < 0.0 {
        phi + std::f64::consts::FRAC_PI_2
    } else {
        phi
    };
    let u = super::cis(phi);
    let d = CPoint::new(-u.im, u.re);
    let bu = b1 * u.re + b2 * u.im;
    let bd = b1 * d.re + b2 * d.im;
    if bd.abs() < tol {
        return ConicShape::Degenerate;
    }
    let s0 = -bu / mu;
    let t0 = (bu * bu / mu - c0) / (2.0 * bd);
    let p = -bd / (2.0 * mu);
    let focus = s0 * u + (t0 + p) * d;
    let offset = t0 - p;
    match HLine::new(d.re, d.im, -offset).and_then(|l| ParabolaG::new(focus, l, tol)) {
        Ok(par) => ConicShape::Parabola(par),
        Err(_) => ConicShape::Degenerate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{cis, DEGENERACY_TOL};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> CPoint {
        CPoint::new(re, im)
    }

    #[test]
    fn unit_circle_polarity() {
        let unit = CircleG::unit().to_conic();
        let polar = polar_line(c(2.0, 0.0), &unit, DEGENERACY_TOL).unwrap();
        assert!(polar.same_as(&HLine::new(1.0, 0.0, -0.5).unwrap(), 1e-14));

        let p = cis(0.7);
        let tangent = polar_line(p, &unit, DEGENERACY_TOL).unwrap();
        assert_abs_diff_eq!(tangent.eval(p), 0.0, epsilon = 1e-15);
        assert!(line_conic_tangency_residual(&tangent, &unit).abs() < 1e-15);

        assert!(polar_line(c(0.0, 0.0), &unit, DEGENERACY_TOL).is_err());
    }

    #[test]
    fn tangency_residual_sign() {
        let unit = CircleG::unit().to_conic();
        let x1 = HLine::new(1.0, 0.0, -1.0).unwrap();
        let x2 = HLine::new(1.0, 0.0, -2.0).unwrap();
        let xh = HLine::new(1.0, 0.0, -0.5).unwrap();
        assert_abs_diff_eq!(
            line_conic_tangency_residual(&x1, &unit),
            0.0,
            epsilon = 1e-15
        );
        let miss = line_conic_tangency_residual(&x2, &unit);
        let cut = line_conic_tangency_residual(&xh, &unit);
        assert!(miss > 0.0 && cut < 0.0);
        let shifted = EllipseG::new(c(3.0, -1.0), 2.0, 0.5, 0.4)
            .unwrap()
            .to_conic();
        let far = HLine::new(1.0, 0.0, 10.0).unwrap();
        let secant = HLine::through(c(3.0, -1.0), c(4.0, 0.0)).unwrap();
        assert!(line_conic_tangency_residual(&far, &shifted) > 0.0);
        assert!(line_conic_tangency_residual(&secant, &shifted) < 0.0);
    }

    #[test]
    fn concentric_polar_image() {
        let r = 0.37;
        let small = CircleG::new(c(0.0, 0.0), r).unwrap().to_conic();
        let img = polar_image_of_conic(&small, &CircleG::unit(), DEGENERACY_TOL).unwrap();
        let want = CircleG::new(c(0.0, 0.0), 1.0 / r).unwrap().to_conic();
        assert!(img.proportionality_residual(&want) < 1e-14);
    }

    #[test]
    fn textbook_ellipse_and_circle() {
        let unit = ConicQ::from_coeffs(1.0, 0.0, 1.0, 0.0, 0.0, -1.0);
        match conic_to_geometric(&unit, DEGENERACY_TOL) {
            ConicShape::Ellipse(e) => {
                assert!(e.center.norm() < 1e-15);
                assert_abs_diff_eq!(e.a, 1.0, epsilon = 1e-15);
                assert_abs_diff_eq!(e.b, 1.0, epsilon = 1e-15);
            }
            other => panic!("{other:?}"),
        }
        let e = ConicQ::from_coeffs(0.25, 0.0, 1.0, 0.0, 0.0, -1.0);
        match conic_to_geometric(&e, DEGENERACY_TOL) {
            ConicShape::Ellipse(e) => {
                assert_abs_diff_eq!(e.a, 2.0, epsilon = 1e-14);
                assert_abs_diff_eq!(e.b, 1.0, epsilon = 1e-14);
                let (f1, f2) = e.foci();
                assert!((f1 - c(-3f64.sqrt(), 0.0)).norm() < 1e-14);
                assert!((f2 - c(3f64.sqrt(), 0.0)).norm() < 1e-14);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parabola_round_trip() {
        // y = x²: focus (0, 1/4), directrix y = −1/4
        let par = ConicQ::from_coeffs(1.0, 0.0, 0.0, 0.0, -1.0, 0.0);
        match conic_to_geometric(&par, DEGENERACY_TOL) {
            ConicShape::Parabola(p) => {
                assert!((p.focus - c(0.0, 0.25)).norm() < 1e-14);
                assert!(p
                    .directrix
                    .same_as(&HLine::new(0.0, 1.0, 0.25).unwrap(), 1e-14));
            }
            other => panic!("{other:?}"),
        }
        let p = ParabolaG::new(
            c(0.3, -0.2),
            HLine::through(c(-1.0, 0.5), c(1.0, 0.9)).unwrap(),
            1e-12,
        )
        .unwrap();
        match conic_to_geometric(&p.to_conic(), DEGENERACY_TOL) {
            ConicShape::Parabola(q) => {
                assert!((q.focus - p.focus).norm() < 1e-12);
                assert!(q.directrix.same_as(&p.directrix, 1e-12));
            }
            other => panic!("{other:?}"),
        }
        for s in [-2.0, -0.3, 0.0, 0.8] {
            assert!(p.to_conic().point_residual(p.point_at(s)) < 1e-13);
        }
    }

    #[test]
    fn parabola_vertex_examples() {
        let p = ParabolaG::new(c(1.0, 0.0), HLine::new(1.0, 0.0, 1.0).unwrap(), 1e-12).unwrap();
        assert!(p.vertex().norm() < 1e-15);
        let q = ParabolaG::new(c(-1.0, 0.0), HLine::new(1.0, 0.0, 0.0).unwrap(), 1e-12).unwrap();
        assert!((q.vertex() - c(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn classification_tags() {
        let hyp = ConicQ::from_coeffs(1.0, 0.0, -1.0, 0.0, 0.0, -1.0);
        assert_eq!(
            conic_to_geometric(&hyp, DEGENERACY_TOL),
            ConicShape::Hyperbola
        );
        let imag = ConicQ::from_coeffs(1.0, 0.0, 1.0, 0.0, 0.0, 1.0);
        assert_eq!(
            conic_to_geometric(&imag, DEGENERACY_TOL),
            ConicShape::Imaginary
        );
        let pair = ConicQ::from_coeffs(1.0, 0.0, -1.0, 0.0, 0.0, 0.0);
        assert_eq!(
            conic_to_geometric(&pair, DEGENERACY_TOL),
            ConicShape::Degenerate
        );
        assert!(pole(&HLine::new(1.0, 0.0, 0.0).unwrap(), &pair, DEGENERACY_TOL).is_err());
    }
}
