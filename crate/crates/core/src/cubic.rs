//! Closed-form roots of complex monic cubics.

use num_complex::Complex64;

/// Roots of `z³ − e1 z² + e2 z − e3`.
///
/// Cardano on the depressed cubic, then one Newton step per root.
pub fn cubic_roots(e1: Complex64, e2: Complex64, e3: Complex64) -> [Complex64; 3] {
    let shift = e1 / 3.0;
    let p = e2 - e1 * e1 / 3.0;
    let q = -2.0 * e1 * e1 * e1 / 27.0 + e1 * e2 / 3.0 - e3;

    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    let sq = disc.sqrt();
    // larger-modulus branch avoids cancellation in u³
    let w = {
        let (a, b) = (-q / 2.0 + sq, -q / 2.0 - sq);
        if a.norm() >= b.norm() {
            a
        } else {
            b
        }
    };
    let omega = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    let omega2 = omega.conj();
    let roots = if w.norm() == 0.0 {
        [shift; 3]
    } else {
        let u = w.powf(1.0 / 3.0);
        let v = -p / (3.0 * u);
        [
            u + v + shift,
            u * omega + v * omega2 + shift,
            u * omega2 + v * omega + shift,
        ]
    };
    roots.map(|z| newton_step(z, e1, e2, e3))
}

fn newton_step(z: Complex64, e1: Complex64, e2: Complex64, e3: Complex64) -> Complex64 {
    let val = ((z - e1) * z + e2) * z - e3;
    let der = (3.0 * z - 2.0 * e1) * z + e2;
    if der.norm() == 0.0 || !der.re.is_finite() {
        z
    } else {
        let next = z - val / der;
        if next.re.is_finite() && next.im.is_finite() {
            next
        } else {
            z
        }
    }
}
