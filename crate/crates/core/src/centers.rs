//! Triangle centers used by the family experiments, the Euler line, the
//! Kiepert parabola, and the contact / tangential triangles.

use std::fmt;
use std::str::FromStr;

use crate::error::{GeomError, Result};
use crate::geom::{CPoint, CircleG, HLine, ParabolaG, Triangle};

/// Relative threshold on `|b² − c²|` below which X110 falls back to the apex.
pub const ISOCELES_FALLBACK_TOL: f64 = 1e-7;

/// Kimberling indices this crate knows how to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CenterIndex {
    X1,
    X2,
    X3,
    X4,
    X5,
    X11,
    X65,
    X74,
    X110,
    X1511,
    X3233,
}

impl CenterIndex {
    pub const ALL: [CenterIndex; 11] = [
        CenterIndex::X1,
        CenterIndex::X2,
        CenterIndex::X3,
        CenterIndex::X4,
        CenterIndex::X5,
        CenterIndex::X11,
        CenterIndex::X65,
        CenterIndex::X74,
        CenterIndex::X110,
        CenterIndex::X1511,
        CenterIndex::X3233,
    ];

    pub fn number(&self) -> u32 {
        match self {
            CenterIndex::X1 => 1,
            CenterIndex::X2 => 2,
            CenterIndex::X3 => 3,
            CenterIndex::X4 => 4,
            CenterIndex::X5 => 5,
            CenterIndex::X11 => 11,
            CenterIndex::X65 => 65,
            CenterIndex::X74 => 74,
            CenterIndex::X110 => 110,
            CenterIndex::X1511 => 1511,
            CenterIndex::X3233 => 3233,
        }
    }

    /// Undefined on isoceles members (they derive from X110).
    pub fn singular_on_isoceles(&self) -> bool {
        matches!(
            self,
            CenterIndex::X74 | CenterIndex::X110 | CenterIndex::X1511 | CenterIndex::X3233
        )
    }

    /// Undefined on equilateral members.
    pub fn singular_on_equilateral(&self) -> bool {
        self.singular_on_isoceles() || matches!(self, CenterIndex::X11)
    }
}

impl fmt::Display for CenterIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}", self.number())
    }
}

impl FromStr for CenterIndex {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let digits = s.trim().trim_start_matches(['X', 'x']);
        let n: u32 = digits
            .parse()
            .map_err(|_| format!("unknown center index {s:?}"))?;
        CenterIndex::ALL
            .into_iter()
            .find(|c| c.number() == n)
            .ok_or_else(|| format!("unknown center index {s:?}"))
    }
}

/// Homogeneous barycentric coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaryCoords {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl BaryCoords {
    pub fn to_point(&self, t: &Triangle) -> Result<CPoint> {
        let s = self.u + self.v + self.w;
        if s == 0.0 || !s.is_finite() {
            return Err(GeomError::Degenerate("barycentric coordinates sum to zero"));
        }
        let [a, b, c] = t.vertices();
        Ok((self.u * a + self.v * b + self.w * c) / s)
    }
}

/// Incenter, centroid, circumcenter, orthocenter and nine-point center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalCenters {
    pub x1: CPoint,
    pub x2: CPoint,
    pub x3: CPoint,
    pub x4: CPoint,
    pub x5: CPoint,
}

pub fn classical_centers(t: &Triangle, tol: f64) -> Result<ClassicalCenters> {
    if t.is_degenerate(tol) {
        return Err(GeomError::Degenerate("triangle"));
    }
    let [a, b, c] = t.vertices();
    let [la, lb, lc] = t.side_lengths();
    let x1 = (la * a + lb * b + lc * c) / (la + lb + lc);
    let x2 = t.centroid();
    let x3 = circumcenter(t);
    let x4 = a + b + c - 2.0 * x3;
    Ok(ClassicalCenters {
        x1,
        x2,
        x3,
        x4,
        x5: (x3 + x4) / 2.0,
    })
}

fn circumcenter(t: &Triangle) -> CPoint {
    let [a, b, c] = t.vertices();
    // relative to a for accuracy
    let (p, q) = (b - a, c - a);
    let d = 2.0 * (p.re * q.im - p.im * q.re);
    let (pp, qq) = (p.norm_sqr(), q.norm_sqr());
    a + CPoint::new((q.im * pp - p.im * qq) / d, (p.re * qq - q.re * pp) / d)
}

pub fn circumcircle(t: &Triangle, tol: f64) -> Result<CircleG> {
    let x3 = classical_centers(t, tol)?.x3;
    CircleG::new(x3, (t.vertex(0) - x3).norm())
}

pub fn incircle(t: &Triangle, tol: f64) -> Result<CircleG> {
    let x1 = classical_centers(t, tol)?.x1;
    let [la, lb, lc] = t.side_lengths();
    let r = 2.0 * t.signed_area().abs() / (la + lb + lc);
    CircleG::new(x1, r)
}

/// Focus of the Kiepert parabola, barycentrics
/// `a²/(b²−c²) : b²/(c²−a²) : c²/(a²−b²)`.
///
/// Near an isoceles triangle the apex (where the two near-equal sides meet)
/// is returned, which is the limit of the formula.
pub fn x110(t: &Triangle, tol: f64) -> Result<CPoint> {
    if t.is_degenerate(tol) {
        return Err(GeomError::Degenerate("triangle"));
    }
    let [la, lb, lc] = t.side_lengths();
    let (a2, b2, c2) = (la * la, lb * lb, lc * lc);
    let diffs = [b2 - c2, c2 - a2, a2 - b2];
    let thresh = ISOCELES_FALLBACK_TOL * (la * lb * lc).powf(2.0 / 3.0);
    let small: Vec<usize> = (0..3).filter(|&i| diffs[i].abs() < thresh).collect();
    match small.len() {
        0 => BaryCoords {
            u: a2 / diffs[0],
            v: b2 / diffs[1],
            w: c2 / diffs[2],
        }
        .to_point(t),
        1 => Ok(t.vertex(small[0])),
        _ => Err(GeomError::Undefined("X110 of an equilateral triangle")),
    }
}

/// Line through X2 and X3.
pub fn euler_line(t: &Triangle, tol: f64) -> Result<HLine> {
    let cc = classical_centers(t, tol)?;
    let scale = t.side_lengths().into_iter().fold(0.0, f64::max);
    if (cc.x2 - cc.x3).norm() < tol * scale {
        return Err(GeomError::Undefined(
            "Euler line of an equilateral triangle",
        ));
    }
    HLine::through(cc.x2, cc.x3)
}

/// Focus X110, directrix the Euler line.
pub fn kiepert_parabola(t: &Triangle, tol: f64) -> Result<ParabolaG> {
    let directrix = euler_line(t, tol)?;
    let focus = x110(t, tol)?;
    ParabolaG::new(focus, directrix, tol)
        .map_err(|_| GeomError::Undefined("Kiepert parabola of an isoceles triangle"))
}

pub fn parabola_vertex(p: &ParabolaG) -> CPoint {
    p.vertex()
}

/// Midpoint of X3 and X110.
pub fn x1511(t: &Triangle, tol: f64) -> Result<CPoint> {
    let x3 = classical_centers(t, tol)?.x3;
    Ok((x3 + x110(t, tol)?) / 2.0)
}

/// Circumcircle antipode of X110.
pub fn x74(t: &Triangle, tol: f64) -> Result<CPoint> {
    let x3 = classical_centers(t, tol)?.x3;
    Ok(2.0 * x3 - x110(t, tol)?)
}

/// Vertex of the Kiepert parabola.
pub fn x3233(t: &Triangle, tol: f64) -> Result<CPoint> {
    Ok(parabola_vertex(&kiepert_parabola(t, tol)?))
}

/// Touch points of the incircle, the i-th on the side opposite vertex i.
pub fn contact_triangle(t: &Triangle, tol: f64) -> Result<Triangle> {
    if t.is_degenerate(tol) {
        return Err(GeomError::Degenerate("triangle"));
    }
    let [a, b, c] = t.vertices();
    let [la, lb, lc] = t.side_lengths();
    let s = (la + lb + lc) / 2.0;
    Ok(Triangle::new(
        b + (s - lb) / la * (c - b),
        c + (s - lc) / lb * (a - c),
        a + (s - la) / lc * (b - a),
    ))
}

/// Triangle bounded by the tangents to `circle` at the vertices of `t`; the
/// i-th vertex is opposite vertex i.
pub fn tangential_triangle(t: &Triangle, circle: &CircleG, tol: f64) -> Result<Triangle> {
    if t.is_degenerate(tol) {
        return Err(GeomError::Degenerate("triangle"));
    }
    let rel = t.vertices().map(|v| v - circle.center);
    let meet = |p: CPoint, q: CPoint| -> Result<CPoint> {
        let s = p + q;
        if s.norm() < tol * circle.radius {
            return Err(GeomError::Degenerate(
                "tangential triangle: antipodal vertices",
            ));
        }
        Ok(circle.center + 2.0 * p * q / s)
    };
    Ok(Triangle::new(
        meet(rel[1], rel[2])?,
        meet(rel[2], rel[0])?,
        meet(rel[0], rel[1])?,
    ))
}

/// Feuerbach point: `N + (R/2)(I − N)/|I − N|`.
pub fn x11_feuerbach(t: &Triangle, tol: f64) -> Result<CPoint> {
    let cc = classical_centers(t, tol)?;
    let r = (t.vertex(0) - cc.x3).norm();
    let d = cc.x1 - cc.x5;
    if d.norm() < tol * r {
        return Err(GeomError::Undefined("X11 of an equilateral triangle"));
    }
    Ok(cc.x5 + (r / 2.0) * d / d.norm())
}

/// Orthocenter of the contact triangle.
pub fn x65(t: &Triangle, tol: f64) -> Result<CPoint> {
    Ok(classical_centers(&contact_triangle(t, tol)?, tol)?.x4)
}

pub fn center(t: &Triangle, idx: CenterIndex, tol: f64) -> Result<CPoint> {
    match idx {
        CenterIndex::X1 => Ok(classical_centers(t, tol)?.x1),
        CenterIndex::X2 => Ok(classical_centers(t, tol)?.x2),
        CenterIndex::X3 => Ok(classical_centers(t, tol)?.x3),
        CenterIndex::X4 => Ok(classical_centers(t, tol)?.x4),
        CenterIndex::X5 => Ok(classical_centers(t, tol)?.x5),
        CenterIndex::X11 => x11_feuerbach(t, tol),
        CenterIndex::X65 => x65(t, tol),
        CenterIndex::X74 => x74(t, tol),
        CenterIndex::X110 => x110(t, tol),
        CenterIndex::X1511 => x1511(t, tol),
        CenterIndex::X3233 => x3233(t, tol),
    }
}
