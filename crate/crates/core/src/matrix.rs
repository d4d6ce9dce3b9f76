//! 2×2 real matrices for SL(2,R) holonomy and the ideal-boundary helpers the
//! gluing construction needs.

use std::ops::Mul;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn diag(x: f64, y: f64) -> Self {
        Mat2::new(x, 0.0, 0.0, y)
    }

    /// Translation by `t` along the imaginary axis, z ↦ e^t z.
    pub fn axis_translation(t: f64) -> Self {
        Mat2::diag((t / 2.0).exp(), (-t / 2.0).exp())
    }

    /// z ↦ −1/z: swaps 0 and ∞, fixes i, exchanges the two half planes
    /// bounded by the imaginary axis.
    pub const FLIP: Mat2 = Mat2::new(0.0, -1.0, 1.0, 0.0);

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn max_abs(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    /// Inverse, assuming determinant 1.
    pub fn inv(&self) -> Self {
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }

    /// Inverse for an arbitrary nonsingular matrix.
    pub fn inv_general(&self) -> Self {
        let det = self.det();
        Mat2::new(self.d / det, -self.b / det, -self.c / det, self.a / det)
    }

    pub fn scale(&self, s: f64) -> Self {
        Mat2::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    /// Max-entry distance to the nearer of ±I.
    pub fn distance_to_pm_identity(&self) -> f64 {
        let plus = (self.a - 1.0)
            .abs()
            .max(self.b.abs())
            .max(self.c.abs())
            .max((self.d - 1.0).abs());
        let minus = (self.a + 1.0)
            .abs()
            .max(self.b.abs())
            .max(self.c.abs())
            .max((self.d + 1.0).abs());
        plus.min(minus)
    }

    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }

    /// Fixed points on the ideal boundary as homogeneous vectors,
    /// `(attracting, repelling)`. For parabolic (and numerically
    /// parabolic) matrices both entries are the single fixed point.
    pub fn fixed_points(&self) -> ([f64; 2], [f64; 2]) {
        let tr = self.trace();
        let disc = tr * tr - 4.0;
        let scale = 1.0 + tr.abs();
        if disc <= PARABOLIC_DISC_TOL * scale * scale {
            let v = self.parabolic_fixed_point();
            return (v, v);
        }
        let root = disc.sqrt();
        let (mut mu_big, mut mu_small) = ((tr + root) / 2.0, (tr - root) / 2.0);
        if mu_big.abs() < mu_small.abs() {
            std::mem::swap(&mut mu_big, &mut mu_small);
        }
        (self.eigenvector(mu_big), self.eigenvector(mu_small))
    }

    fn eigenvector(&self, mu: f64) -> [f64; 2] {
        let v1 = [self.b, mu - self.a];
        let v2 = [mu - self.d, self.c];
        if norm2(v1) >= norm2(v2) {
            v1
        } else {
            v2
        }
    }

    fn parabolic_fixed_point(&self) -> [f64; 2] {
        let half = self.trace() / 2.0;
        let v1 = [self.b, half - self.a];
        let v2 = [half - self.d, self.c];
        if norm2(v1) >= norm2(v2) {
            v1
        } else {
            v2
        }
    }
}

const PARABOLIC_DISC_TOL: f64 = 1e-13;

fn norm2(v: [f64; 2]) -> f64 {
    v[0] * v[0] + v[1] * v[1]
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, o: &Mat2) -> Mat2 {
        *self * *o
    }
}

/// Position on the ideal boundary of a homogeneous vector, as `x / y`.
pub(crate) fn ideal_coordinate(v: [f64; 2]) -> f64 {
    v[0] / v[1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_unimodular() {
        let m = Mat2::new(2.0, 3.0, 1.0, 2.0);
        let p = m * m.inv();
        assert!(p.distance_to_pm_identity() < 1e-15);
    }

    #[test]
    fn fixed_points_of_diagonal() {
        let m = Mat2::diag(3.0, 1.0 / 3.0);
        let (attr, rep) = m.fixed_points();
        assert_eq!(attr[1], 0.0);
        assert_eq!(rep[0], 0.0);
    }

    #[test]
    fn parabolic_fixed_point_is_fixed() {
        let m = Mat2::new(2.0, -1.0, 1.0, 0.0);
        let (p, q) = m.fixed_points();
        assert_eq!(p, q);
        let image = m.apply(p);
        let z = ideal_coordinate(p);
        assert!((ideal_coordinate(image) - z).abs() < 1e-12);
    }

    #[test]
    fn flip_swaps_axis_direction() {
        let d = Mat2::axis_translation(1.3);
        let conj = Mat2::FLIP * d * Mat2::FLIP.inv();
        let expected = Mat2::axis_translation(-1.3);
        assert!((conj * expected.inv()).distance_to_pm_identity() < 1e-14);
    }
}
