//! Stationarity metrics and circle fitting for swept loci.

use nalgebra::{Matrix3, Vector3};

use crate::error::{GeomError, Result};
use crate::geom::CPoint;

/// Spread of a point cloud around its mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stationarity {
    pub mean: CPoint,
    /// Largest distance to `mean`.
    pub max_deviation: f64,
    pub count: usize,
}

pub fn stationarity(points: &[CPoint]) -> Result<Stationarity> {
    if points.len() < 2 {
        return Err(GeomError::TooFewPoints {
            needed: 2,
            got: points.len(),
        });
    }
    let mean = points.iter().sum::<CPoint>() / points.len() as f64;
    let max_deviation = points.iter().map(|p| (p - mean).norm()).fold(0.0, f64::max);
    Ok(Stationarity {
        mean,
        max_deviation,
        count: points.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleFitResult {
    pub center: CPoint,
    pub radius: f64,
    /// Root-mean-square geometric residual `|p − c| − r`.
    pub rms: f64,
}

/// Pratt algebraic fit (Newton on the characteristic polynomial of the
/// centered moment matrix), followed by one Gauss–Newton step on the
/// geometric distance.
pub fn fit_circle(points: &[CPoint]) -> Result<CircleFitResult> {
    if points.len() < 3 {
        return Err(GeomError::TooFewPoints {
            needed: 3,
            got: points.len(),
        });
    }
    let n = points.len() as f64;
    let centroid = points.iter().sum::<CPoint>() / n;
    let scale = points
        .iter()
        .map(|p| (p - centroid).norm())
        .fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return Err(GeomError::RankDeficient);
    }

    let (mut mxx, mut myy, mut mxy, mut mxz, mut myz, mut mzz) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    for p in points {
        let d = (p - centroid) / scale;
        let (x, y) = (d.re, d.im);
        let z = x * x + y * y;
        mxx += x * x;
        myy += y * y;
        mxy += x * y;
        mxz += x * z;
        myz += y * z;
        mzz += z * z;
    }
    let (mxx, myy, mxy, mxz, myz, mzz) = (mxx / n, myy / n, mxy / n, mxz / n, myz / n, mzz / n);

    let mz = mxx + myy;
    let cov_xy = mxx * myy - mxy * mxy;
    let a2 = 4.0 * cov_xy - 3.0 * mz * mz - mzz;
    let a1 = mzz * mz + 4.0 * cov_xy * mz - mxz * mxz - myz * myz - mz * mz * mz;
    let a0 =
        mxz * mxz * myy + myz * myz * mxx - mzz * cov_xy - 2.0 * mxz * myz * mxy + mz * mz * cov_xy;

    let mut x = 0.0_f64;
    let mut y = f64::INFINITY;
    for _ in 0..100 {
        let y_old = y;
        y = a0 + x * (a1 + x * (a2 + 4.0 * x * x));
        if y.abs() > y_old.abs() {
            x = 0.0;
            break;
        }
        let dy = a1 + x * (2.0 * a2 + 16.0 * x * x);
        if dy == 0.0 {
            break;
        }
        let x_old = x;
        x = x_old - y / dy;
        if x < 0.0 {
            x = 0.0;
            break;
        }
        if x == 0.0 || ((x - x_old) / x).abs() < 1e-15 {
            break;
        }
    }

    let det = x * x - x * mz + cov_xy;
    if det.abs() < 1e-14 {
        return Err(GeomError::RankDeficient);
    }
    let cx = (mxz * (myy - x) - myz * mxy) / det / 2.0;
    let cy = (myz * (mxx - x) - mxz * mxy) / det / 2.0;
    let r = (cx * cx + cy * cy + mz + 2.0 * x).sqrt();
    let center = centroid + scale * CPoint::new(cx, cy);
    let radius = scale * r;
    if !(radius.is_finite() && radius > 0.0) {
        return Err(GeomError::RankDeficient);
    }

    let (center, radius) = gauss_newton_step(points, center, radius);
    let rms = (points
        .iter()
        .map(|p| ((p - center).norm() - radius).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(CircleFitResult {
        center,
        radius,
        rms,
    })
}

fn gauss_newton_step(points: &[CPoint], center: CPoint, radius: f64) -> (CPoint, f64) {
    let mut jtj = Matrix3::zeros();
    let mut jtr = Vector3::zeros();
    for p in points {
        let d = p - center;
        let dist = d.norm();
        if dist == 0.0 {
            continue;
        }
        let j = Vector3::new(-d.re / dist, -d.im / dist, -1.0);
        let res = dist - radius;
        jtj += j * j.transpose();
        jtr += j * res;
    }
    match jtj.try_inverse() {
        Some(inv) => {
            let delta = -(inv * jtr);
            let next_r = radius + delta[2];
            if next_r > 0.0 && delta.iter().all(|v| v.is_finite()) {
                (center + CPoint::new(delta[0], delta[1]), next_r)
            } else {
                (center, radius)
            }
        }
        None => (center, radius),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::cis;
    use std::f64::consts::TAU;

    /// Circumcircle through three points, an independent oracle.
    fn circle_through(a: CPoint, b: CPoint, c: CPoint) -> (CPoint, f64) {
        let (p, q) = (b - a, c - a);
        let d = 2.0 * (p.re * q.im - p.im * q.re);
        let (pp, qq) = (p.norm_sqr(), q.norm_sqr());
        let o = a + CPoint::new((q.im * pp - p.im * qq) / d, (p.re * qq - q.re * pp) / d);
        (o, (a - o).norm())
    }

    #[test]
    fn exact_circle_recovered() {
        let center = CPoint::new(-0.75, 0.0);
        let pts: Vec<CPoint> = (0..100)
            .map(|k| center + 0.25 * cis(TAU * k as f64 / 100.0))
            .collect();
        let fit = fit_circle(&pts).unwrap();
        assert!((fit.center - center).norm() < 1e-12);
        assert!((fit.radius - 0.25).abs() < 1e-12);
        assert!(fit.rms < 1e-12);
    }

    #[test]
    fn arc_matches_three_point_oracle() {
        let center = CPoint::new(0.3, -1.2);
        let pts: Vec<CPoint> = (0..40)
            .map(|k| center + 2.5 * cis(0.4 + 0.02 * k as f64))
            .collect();
        let (o, r) = circle_through(pts[0], pts[20], pts[39]);
        let fit = fit_circle(&pts).unwrap();
        assert!((fit.center - o).norm() < 1e-9);
        assert!((fit.radius - r).abs() < 1e-9);
    }

    #[test]
    fn noisy_circle_is_close() {
        let center = CPoint::new(1.0, 2.0);
        let pts: Vec<CPoint> = (0..200)
            .map(|k| {
                let t = TAU * k as f64 / 200.0;
                center + (3.0 + 1e-3 * (7.0 * t).sin()) * cis(t)
            })
            .collect();
        let fit = fit_circle(&pts).unwrap();
        assert!((fit.center - center).norm() < 1e-3);
        assert!((fit.radius - 3.0).abs() < 1e-3);
        assert!(fit.rms < 1e-3);
    }

    #[test]
    fn degenerate_inputs() {
        let same = vec![CPoint::new(0.5, 0.5); 10];
        let st = stationarity(&same).unwrap();
        assert_eq!(st.max_deviation, 0.0);
        assert!(fit_circle(&same).is_err());
        let line: Vec<CPoint> = (0..10)
            .map(|k| CPoint::new(k as f64, 2.0 * k as f64))
            .collect();
        assert!(fit_circle(&line).is_err());
        assert!(fit_circle(&same[..2]).is_err());
        assert!(stationarity(&same[..1]).is_err());
    }

    #[test]
    fn stationarity_of_spread_points() {
        let pts = [CPoint::new(0.0, 0.0), CPoint::new(2.0, 0.0)];
        let st = stationarity(&pts).unwrap();
        assert_eq!(st.mean, CPoint::new(1.0, 0.0));
        assert_eq!(st.max_deviation, 1.0);
    }
}
