//! Planar kernel: complex points, homogeneous lines, circles, triangles.
//!
//! Points are `Complex64` values in units where the reference circumcircle is
//! the unit circle. Lines are homogeneous triples `l x + m y + n = 0`. Conics
//! and polarity live in [`conic`].

pub mod conic;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{GeomError, Result};

pub use conic::{
    conic_to_geometric, ellipse_foci, line_conic_tangency_residual, polar_image_of_conic,
    polar_line, pole, ConicQ, ConicShape, EllipseG, ParabolaG,
};

/// A point of the plane.
pub type CPoint = Complex64;

/// Kernel-wide degeneracy tolerance on normalized determinants and areas.
pub const DEGENERACY_TOL: f64 = 1e-10;

/// `e^{iθ}`.
#[inline]
pub fn cis(theta: f64) -> CPoint {
    Complex64::from_polar(1.0, theta)
}

/// Wraps an angle into (−π, π].
pub fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// Signed angle in (−π, π] from direction `from` to direction `to`.
pub fn signed_angle(from: CPoint, to: CPoint) -> f64 {
    let a = (to * from.conj()).arg();
    if a <= -PI {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Homogeneous line `l x + m y + n = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HLine {
    pub l: f64,
    pub m: f64,
    pub n: f64,
}

impl HLine {
    /// Builds a line, rejecting `(l, m) = (0, 0)`.
    pub fn new(l: f64, m: f64, n: f64) -> Result<Self> {
        if l.hypot(m) == 0.0 || !(l.is_finite() && m.is_finite() && n.is_finite()) {
            return Err(GeomError::Degenerate("line with zero normal"));
        }
        Ok(Self { l, m, n })
    }

    pub fn through(p: CPoint, q: CPoint) -> Result<Self> {
        Self::from_point_dir(p, q - p)
    }

    pub fn from_point_dir(p: CPoint, dir: CPoint) -> Result<Self> {
        if dir.norm() == 0.0 {
            return Err(GeomError::Degenerate("line direction is zero"));
        }
        let (l, m) = (-dir.im, dir.re);
        Ok(Self::new(l, m, -(l * p.re + m * p.im))?.normalized())
    }

    /// Representative with `l² + m² = 1`.
    pub fn normalized(&self) -> Self {
        let s = self.l.hypot(self.m);
        Self {
            l: self.l / s,
            m: self.m / s,
            n: self.n / s,
        }
    }

    pub fn eval(&self, p: CPoint) -> f64 {
        self.l * p.re + self.m * p.im + self.n
    }

    /// Signed Euclidean distance.
    pub fn distance(&self, p: CPoint) -> f64 {
        let h = self.normalized();
        h.eval(p)
    }

    /// Unit direction vector.
    pub fn direction(&self) -> CPoint {
        let h = self.normalized();
        CPoint::new(h.m, -h.l)
    }

    /// Unit normal vector.
    pub fn normal(&self) -> CPoint {
        let h = self.normalized();
        CPoint::new(h.l, h.m)
    }

    pub fn project(&self, p: CPoint) -> CPoint {
        p - self.distance(p) * self.normal()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.l, self.m, self.n]
    }

    /// True when both lines describe the same point set, up to `tol`.
    pub fn same_as(&self, other: &HLine, tol: f64) -> bool {
        let (a, b) = (self.normalized(), other.normalized());
        let diff = |s: f64| {
            ((a.l - s * b.l).powi(2) + (a.m - s * b.m).powi(2) + (a.n - s * b.n).powi(2)).sqrt()
        };
        diff(1.0).min(diff(-1.0)) < tol
    }
}

/// Mirror image of `p` in the line.
pub fn reflect_point_in_line(p: CPoint, line: &HLine) -> CPoint {
    p - 2.0 * line.distance(p) * line.normal()
}

/// Mirror image of a whole line in another line.
pub fn reflect_line_in_line(target: &HLine, mirror: &HLine) -> HLine {
    let p = target.project(CPoint::new(0.0, 0.0));
    let q = p + target.direction();
    let (p2, q2) = (
        reflect_point_in_line(p, mirror),
        reflect_point_in_line(q, mirror),
    );
    HLine::through(p2, q2).expect("reflection preserves distinct points")
}

/// `c + e^{iθ}(p − c)`.
pub fn rotate_about(p: CPoint, c: CPoint, theta: f64) -> CPoint {
    c + cis(theta) * (p - c)
}

/// Line through `vertex` perpendicular to the internal bisector of ∠p·vertex·q.
///
/// Fails when `p` and `q` lie on the same ray from `vertex`; the external
/// direction `û − ŵ` vanishes there.
pub fn external_bisector(vertex: CPoint, p: CPoint, q: CPoint, tol: f64) -> Result<HLine> {
    let (dp, dq) = (p - vertex, q - vertex);
    if dp.norm() < tol || dq.norm() < tol {
        return Err(GeomError::Degenerate("bisector arm coincides with vertex"));
    }
    let dir = dp / dp.norm() - dq / dq.norm();
    if dir.norm() < tol {
        return Err(GeomError::Degenerate("bisector arms on the same ray"));
    }
    HLine::from_point_dir(vertex, dir)
}

/// Circle with positive radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleG {
    pub center: CPoint,
    pub radius: f64,
}

impl CircleG {
    pub fn new(center: CPoint, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GeomError::Degenerate("circle radius must be positive"));
        }
        Ok(Self { center, radius })
    }

    pub fn unit() -> Self {
        Self {
            center: CPoint::new(0.0, 0.0),
            radius: 1.0,
        }
    }

    pub fn point_at(&self, t: f64) -> CPoint {
        self.center + self.radius * cis(t)
    }

    pub fn to_conic(&self) -> ConicQ {
        let (cx, cy) = (self.center.re, self.center.im);
        ConicQ::from_coeffs(
            1.0,
            0.0,
            1.0,
            -2.0 * cx,
            -2.0 * cy,
            cx * cx + cy * cy - self.radius * self.radius,
        )
    }
}

/// Intersection of the ray from `origin` through `through` with `circle`.
///
/// From inside the circle this is the unique exit point; from outside it is
/// the first hit along the ray.
pub fn ray_circle_intersection(
    origin: CPoint,
    through: CPoint,
    circle: &CircleG,
) -> Result<CPoint> {
    let d = through - origin;
    if d.norm() == 0.0 {
        return Err(GeomError::Degenerate("ray origin equals through point"));
    }
    let d = d / d.norm();
    let w = origin - circle.center;
    let beta = d.re * w.re + d.im * w.im;
    let gamma = w.norm_sqr() - circle.radius * circle.radius;
    let disc = beta * beta - gamma;
    if disc < 0.0 {
        return Err(GeomError::RayMisses);
    }
    let s = disc.sqrt();
    let (t_near, t_far) = (-beta - s, -beta + s);
    let t = if gamma < 0.0 || t_near < 0.0 {
        t_far
    } else {
        t_near
    };
    if t < 0.0 {
        return Err(GeomError::RayMisses);
    }
    Ok(origin + t * d)
}

/// Intersection point of two lines, if they are not parallel.
pub fn intersect_lines(a: &HLine, b: &HLine, tol: f64) -> Result<CPoint> {
    let (a, b) = (a.normalized(), b.normalized());
    let det = a.l * b.m - a.m * b.l;
    if det.abs() < tol {
        return Err(GeomError::Degenerate("parallel lines"));
    }
    Ok(CPoint::new(
        (a.m * b.n - a.n * b.m) / det,
        (a.n * b.l - a.l * b.n) / det,
    ))
}

/// A triangle with counterclockwise vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    v: [CPoint; 3],
}

impl Triangle {
    /// Builds a triangle, swapping the last two vertices if needed so the
    /// orientation is counterclockwise.
    pub fn new(a: CPoint, b: CPoint, c: CPoint) -> Self {
        let t = Self { v: [a, b, c] };
        if t.signed_area() < 0.0 {
            Self { v: [a, c, b] }
        } else {
            t
        }
    }

    /// Keeps the given vertex order. Callers guarantee orientation.
    pub(crate) fn from_ordered(v: [CPoint; 3]) -> Self {
        Self { v }
    }

    pub fn vertices(&self) -> [CPoint; 3] {
        self.v
    }

    pub fn vertex(&self, i: usize) -> CPoint {
        self.v[i]
    }

    pub fn signed_area(&self) -> f64 {
        let [a, b, c] = self.v;
        0.5 * ((b - a).conj() * (c - a)).im
    }

    /// Side lengths `[a, b, c]`, `a` opposite the first vertex.
    pub fn side_lengths(&self) -> [f64; 3] {
        let [a, b, c] = self.v;
        [(b - c).norm(), (c - a).norm(), (a - b).norm()]
    }

    /// Sidelines, the i-th opposite vertex i.
    pub fn sidelines(&self) -> Result<[HLine; 3]> {
        let [a, b, c] = self.v;
        Ok([
            HLine::through(b, c)?,
            HLine::through(c, a)?,
            HLine::through(a, b)?,
        ])
    }

    /// Twice the area over the squared longest side.
    pub fn normalized_area(&self) -> f64 {
        let s = self.side_lengths();
        let m = s[0].max(s[1]).max(s[2]);
        if m == 0.0 {
            0.0
        } else {
            2.0 * self.signed_area().abs() / (m * m)
        }
    }

    pub fn is_degenerate(&self, tol: f64) -> bool {
        !self.v.iter().all(|p| p.re.is_finite() && p.im.is_finite()) || self.normalized_area() < tol
    }

    /// `(max side − min side) / max side`; zero exactly for equilateral.
    pub fn side_spread(&self) -> f64 {
        let s = self.side_lengths();
        let hi = s[0].max(s[1]).max(s[2]);
        let lo = s[0].min(s[1]).min(s[2]);
        if hi == 0.0 || !hi.is_finite() {
            f64::INFINITY
        } else {
            (hi - lo) / hi
        }
    }

    /// Strictly acute: every angle below π/2.
    pub fn is_acute(&self) -> bool {
        let mut sq = self.side_lengths().map(|x| x * x);
        sq.sort_by(f64::total_cmp);
        sq[2] < sq[0] + sq[1]
    }

    pub fn centroid(&self) -> CPoint {
        (self.v[0] + self.v[1] + self.v[2]) / 3.0
    }

    /// Rotated copy with `self.vertex(k)` moved to the front.
    pub fn rotated(&self, k: usize) -> Self {
        Self::from_ordered([self.v[k % 3], self.v[(k + 1) % 3], self.v[(k + 2) % 3]])
    }

    /// Largest distance between matched vertices, minimized over vertex
    /// permutations.
    pub fn distance_unordered(&self, other: &Triangle) -> f64 {
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [0, 2, 1],
            [2, 1, 0],
            [1, 0, 2],
        ];
        PERMS
            .iter()
            .map(|p| {
                (0..3)
                    .map(|i| (self.v[i] - other.v[p[i]]).norm())
                    .fold(0.0, f64::max)
            })
            .fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    fn c(re: f64, im: f64) -> CPoint {
        CPoint::new(re, im)
    }

    fn assert_close(a: CPoint, b: CPoint, tol: f64) {
        assert!((a - b).norm() < tol, "{a} vs {b}");
    }

    fn line_direction_matches(line: &HLine, dir: CPoint) -> bool {
        let d = line.direction();
        (d.conj() * dir).im.abs() < 1e-12
    }

    #[test]
    fn reflection_examples() {
        let yaxis = HLine::new(1.0, 0.0, 0.0).unwrap();
        assert_close(
            reflect_point_in_line(c(1.0, 0.0), &yaxis),
            c(-1.0, 0.0),
            1e-15,
        );
        let diag = HLine::through(c(0.0, 0.0), c(1.0, 1.0)).unwrap();
        assert_close(
            reflect_point_in_line(c(0.3, 0.4), &diag),
            c(0.4, 0.3),
            1e-15,
        );
        let p = c(0.7, 0.7);
        assert_close(reflect_point_in_line(p, &diag), p, 1e-15);
    }

    #[test]
    fn rotation_examples() {
        assert_close(
            rotate_about(c(1.0, 0.0), c(0.0, 0.0), PI),
            c(-1.0, 0.0),
            1e-15,
        );
        let p = c(0.2, -0.9);
        assert_close(rotate_about(p, p, 1.234), p, 0.0 + 1e-15);
        let got = rotate_about(c(1.0 / 12.0, 0.0), c(0.0, 0.0), 4.0 * PI / 3.0);
        // matrix rotation oracle
        let (s, co) = (4.0 * PI / 3.0).sin_cos();
        let want = c(co / 12.0, s / 12.0);
        assert_close(got, want, 1e-15);
        assert_close(got, cis(4.0 * PI / 3.0) / 12.0, 1e-15);
    }

    #[test]
    fn external_bisector_examples() {
        let o = c(0.0, 0.0);
        let right = external_bisector(o, c(1.0, 0.0), c(0.0, 1.0), DEGENERACY_TOL).unwrap();
        assert!(line_direction_matches(&right, cis(FRAC_PI_4 + FRAC_PI_2)));
        assert_abs_diff_eq!(right.eval(o), 0.0, epsilon = 1e-15);

        let sixty = external_bisector(o, c(1.0, 0.0), cis(FRAC_PI_3), DEGENERACY_TOL).unwrap();
        assert!(line_direction_matches(&sixty, cis(2.0 * FRAC_PI_3)));

        // straight angle: the internal bisector is x = 0, the external one y = 0
        let straight = external_bisector(o, c(1.0, 0.0), c(-1.0, 0.0), DEGENERACY_TOL).unwrap();
        assert!(straight.same_as(&HLine::new(0.0, 1.0, 0.0).unwrap(), 1e-12));

        assert!(external_bisector(o, c(1.0, 0.0), c(3.0, 0.0), DEGENERACY_TOL).is_err());
    }

    #[test]
    fn ray_circle_examples() {
        let unit = CircleG::unit();
        assert_close(
            ray_circle_intersection(c(0.0, 0.0), c(0.5, 0.0), &unit).unwrap(),
            c(1.0, 0.0),
            1e-15,
        );
        let through = cis(4.0 * PI / 3.0) / 12.0;
        assert_close(
            ray_circle_intersection(c(0.0, 0.0), through, &unit).unwrap(),
            cis(4.0 * PI / 3.0),
            1e-15,
        );
        assert_eq!(
            ray_circle_intersection(c(2.0, 0.0), c(3.0, 0.0), &unit),
            Err(GeomError::RayMisses)
        );
        assert_close(
            ray_circle_intersection(c(2.0, 0.0), c(0.0, 0.0), &unit).unwrap(),
            c(1.0, 0.0),
            1e-15,
        );
    }

    #[test]
    fn signed_angle_convention() {
        assert_abs_diff_eq!(signed_angle(c(-1.0, 0.0), c(1.0, 0.0)), PI);
        assert_abs_diff_eq!(signed_angle(c(1.0, 0.0), c(0.0, 1.0)), FRAC_PI_2);
        assert_abs_diff_eq!(signed_angle(c(0.0, 1.0), c(1.0, 0.0)), -FRAC_PI_2);
        assert_abs_diff_eq!(wrap_angle(-PI), PI);
    }

    #[test]
    fn triangle_orientation_is_normalized() {
        let t = Triangle::new(c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0));
        assert!(t.signed_area() > 0.0);
        assert!(Triangle::new(c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)).is_degenerate(DEGENERACY_TOL));
    }
}
