//! Unit-quaternion algebra and the holonomy-word oracle.
//!
//! SU(2) is identified with the unit quaternions; a representation is
//! traceless when every meridian lands on the purely imaginary sphere.
//! This module reconstructs representation images directly from solution
//! points of the polynomial system, independently of the closed-form
//! restriction formulas, so the two routes can be checked against each
//! other.

use crate::torus::{TorusTangle, WPoint};
use crate::{Error, Result};

/// A quaternion `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

impl Quaternion {
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    /// Real part; the SU(2) trace is twice this.
    pub fn re(&self) -> f64 {
        self.w
    }

    pub fn norm(&self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Conjugate, which inverts unit quaternions.
    pub fn conj(&self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    /// `cos(angle) + sin(angle) * axis` for a unit imaginary `axis`.
    pub fn exp_axis(axis: Quaternion, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Quaternion::new(
            c + s * axis.w,
            s * axis.x,
            s * axis.y,
            s * axis.z,
        )
    }

    /// Integer power by repeated squaring; negative exponents go through
    /// the conjugate so the norm is preserved.
    pub fn pow(&self, n: i64) -> Self {
        if n < 0 {
            return self.conj().pow(-n);
        }
        let mut result = ONE;
        let mut base = *self;
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = result * base;
            }
            base = base * base;
            k >>= 1;
        }
        result
    }
}

impl std::ops::Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, rhs: Quaternion) -> Quaternion {
        let Quaternion { w: a, x: b, y: c, z: d } = self;
        let Quaternion { w: e, x: f, y: g, z: h } = rhs;
        Quaternion::new(
            a * e - b * f - c * g - d * h,
            a * f + b * e + c * h - d * g,
            a * g - b * h + c * e + d * f,
            a * h + b * g - c * f + d * e,
        )
    }
}

/// Images of the two free generators of the tangle group.
#[derive(Debug, Clone, Copy)]
pub struct HolonomyPair {
    pub m: Quaternion,
    pub n: Quaternion,
}

/// Images of the four boundary meridians.
#[derive(Debug, Clone, Copy)]
pub struct MeridianImages {
    pub a: Quaternion,
    pub b: Quaternion,
    pub c: Quaternion,
    pub d: Quaternion,
}

impl MeridianImages {
    /// Largest real part over the four meridians; zero for a traceless
    /// representation.
    pub fn max_trace(&self) -> f64 {
        self.a
            .re()
            .abs()
            .max(self.b.re().abs())
            .max(self.c.re().abs())
            .max(self.d.re().abs())
    }
}

/// Generator images for a solution point `(x, y, tau)`:
/// `M = e^{arccos(x) i}` and `N = e^{arccos(y) u}` where the axis
/// `u = e^{arccos(tau) k} i = tau i + sqrt(1 - tau^2) j`.
pub fn holonomy_pair(w: &WPoint) -> Result<HolonomyPair> {
    let clamp = |v: f64, name: &str| -> Result<f64> {
        if v.abs() <= 1.0 {
            Ok(v)
        } else if v.abs() <= 1.0 + 1e-12 {
            Ok(v.clamp(-1.0, 1.0))
        } else {
            Err(Error::Domain(format!(
                "holonomy coordinate {name}={v} outside the unit cube"
            )))
        }
    };
    let x = clamp(w.x, "x")?;
    let y = clamp(w.y, "y")?;
    let tau = clamp(w.tau, "tau")?;
    let m = Quaternion::new(x, (1.0 - x * x).max(0.0).sqrt(), 0.0, 0.0);
    let sy = (1.0 - y * y).max(0.0).sqrt();
    let st = (1.0 - tau * tau).max(0.0).sqrt();
    let n = Quaternion::new(y, sy * tau, sy * st, 0.0);
    Ok(HolonomyPair { m, n })
}

/// Meridian words `a = M^{s+p} N^{q-r}`, `b = N^{-r} M^s`,
/// `c = N^{-r} a N^r`, `d = N^{-(q-r)} b N^{q-r}`.
pub fn meridian_images(pair: &HolonomyPair, t: &TorusTangle) -> MeridianImages {
    let HolonomyPair { m, n } = *pair;
    let a = m.pow(t.s + t.p) * n.pow(t.q - t.r);
    let b = n.pow(-t.r) * m.pow(t.s);
    let c = n.pow(-t.r) * a * n.pow(t.r);
    let d = n.pow(-(t.q - t.r)) * b * n.pow(t.q - t.r);
    MeridianImages { a, b, c, d }
}

/// Pillowcase cosines straight from the holonomy words:
/// `cos(gamma) = -Re(ba)`, `cos(theta) = Re(c a^{-1})`,
/// `cos(theta - gamma) = Re(N^{-q} M^{-p})`.
///
/// The first value is cross-checked against `-Re(M^{2s+p} N^{q-2r})`; the
/// two expressions agree as words in the free group, so a mismatch signals
/// a numerical problem.
pub fn pillow_from_quats(
    m: &MeridianImages,
    pair: &HolonomyPair,
    t: &TorusTangle,
) -> Result<(f64, f64, f64)> {
    let cos_gamma = -(m.b * m.a).re();
    let word = pair.m.pow(2 * t.s + t.p) * pair.n.pow(t.q - 2 * t.r);
    let alt = -word.re();
    if (cos_gamma - alt).abs() > 1e-8 {
        return Err(Error::Inconsistency(format!(
            "cos(gamma) routes disagree: {cos_gamma} vs {alt}"
        )));
    }
    let cos_theta = (m.c * m.a.conj()).re();
    let cos_theta_gamma = (pair.n.pow(-t.q) * pair.m.pow(-t.p)).re();
    Ok((cos_gamma, cos_theta, cos_theta_gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus;

    fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        (a.w - b.w).abs() < tol
            && (a.x - b.x).abs() < tol
            && (a.y - b.y).abs() < tol
            && (a.z - b.z).abs() < tol
    }

    #[test]
    fn hamilton_relations() {
        assert_eq!(I * J, K);
        assert_eq!(J * K, I);
        assert_eq!(K * I, J);
        assert_eq!(I * I, Quaternion::new(-1.0, 0.0, 0.0, 0.0));
        let q = Quaternion::new(0.1, -0.4, 0.7, 0.2);
        assert_eq!(q * ONE, q);
    }

    #[test]
    fn pow_basics() {
        assert_eq!(I.pow(2), Quaternion::new(-1.0, 0.0, 0.0, 0.0));
        let q = Quaternion::new(0.3, 0.8, -0.2, 0.1);
        assert_eq!(q.pow(0), ONE);
    }

    #[test]
    fn pow_matches_axis_angle_oracle() {
        // (e^{0.3 i})^5 = e^{1.5 i}; exponentiation rotates the angle.
        let q = Quaternion::exp_axis(I, 0.3);
        let p = q.pow(5);
        let expected = Quaternion::exp_axis(I, 1.5);
        assert!(close(p, expected, 1e-14));
        // general axis, positive and negative exponents
        let axis = Quaternion::new(0.0, 0.6, 0.0, 0.8);
        for n in [-40i64, -7, 3, 17, 40] {
            let got = Quaternion::exp_axis(axis, 0.21).pow(n);
            let want = Quaternion::exp_axis(axis, 0.21 * n as f64);
            assert!(close(got, want, 1e-12), "n={n}");
            assert!((got.norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn holonomy_pair_examples() {
        // x = 0, tau = 0: M = i, N = y + sqrt(1-y^2) j
        let y = 0.37;
        let pair = holonomy_pair(&WPoint { x: 0.0, y, tau: 0.0 }).unwrap();
        assert!(close(pair.m, I, 1e-15));
        let n_expected = Quaternion::new(y, 0.0, (1.0 - y * y).sqrt(), 0.0);
        assert!(close(pair.n, n_expected, 1e-15));

        // x = 1: M = 1, N = tau i + sqrt(1-tau^2) j
        let tau = 0.4;
        let pair = holonomy_pair(&WPoint { x: 1.0, y: 0.0, tau }).unwrap();
        assert!(close(pair.m, ONE, 1e-15));
        let n_expected = Quaternion::new(0.0, tau, (1.0f64 - tau * tau).sqrt(), 0.0);
        assert!(close(pair.n, n_expected, 1e-15));

        // interior point: unit norms and prescribed real parts
        let pair = holonomy_pair(&WPoint { x: 0.5, y: 0.5, tau: 0.2 }).unwrap();
        assert!((pair.m.norm() - 1.0).abs() < 1e-14);
        assert!((pair.n.norm() - 1.0).abs() < 1e-14);
        assert!((pair.m.re() - 0.5).abs() < 1e-15);
        assert!((pair.n.re() - 0.5).abs() < 1e-15);

        assert!(holonomy_pair(&WPoint { x: 1.1, y: 0.0, tau: 0.0 }).is_err());
    }

    #[test]
    fn meridians_traceless_on_45_solutions() {
        // Closed-form solution branch for (p,q,r,s) = (4,5,4,-3):
        // x^2 = 1 - y^2 - 1/(4 - 16 y^2), tau = xy / sqrt((1-x^2)(1-y^2)).
        let t = torus::TorusTangle::new(4, 5, 4, -3).unwrap();
        for k in 0..40 {
            let y = -0.41 + 0.82 * (k as f64) / 39.0;
            let x2 = 1.0 - y * y - 1.0 / (4.0 - 16.0 * y * y);
            if x2 <= 0.0 {
                continue;
            }
            for sign in [-1.0, 1.0] {
                let x = sign * x2.sqrt();
                let tau = x * y / (((1.0 - x * x) * (1.0 - y * y)).sqrt());
                let w = WPoint { x, y, tau };
                let pair = holonomy_pair(&w).unwrap();
                let mi = meridian_images(&pair, &t);
                assert!(mi.max_trace() < 1e-8, "y={y} sign={sign}: {}", mi.max_trace());
            }
        }
    }

    #[test]
    fn trivial_representation_is_not_traceless() {
        let t = torus::TorusTangle::new(4, 5, 4, -3).unwrap();
        let pair = HolonomyPair { m: ONE, n: ONE };
        let mi = meridian_images(&pair, &t);
        assert!(close(mi.a, ONE, 1e-15));
        assert!(close(mi.d, ONE, 1e-15));
        assert!(mi.max_trace() > 0.5);
        // identity holonomy maps to cos(gamma) = -1, cos(theta) = 1
        let (cg, ct, ctg) = pillow_from_quats(&mi, &pair, &t).unwrap();
        assert_eq!(cg, -1.0);
        assert_eq!(ct, 1.0);
        assert_eq!(ctg, 1.0);
    }

    #[test]
    fn ba_equals_cd_word_identity() {
        // ba = cd holds in the free group whenever the meridian words come
        // from one pair (M, N); check it numerically on arbitrary pairs.
        let t = torus::TorusTangle::new(5, 7, 3, -2).unwrap();
        let axis1 = Quaternion::new(0.0, 0.48, 0.6, 0.64);
        let axis2 = Quaternion::new(0.0, 0.0, 0.28, -0.96);
        for k in 1..20 {
            let pair = HolonomyPair {
                m: Quaternion::exp_axis(axis1, 0.17 * k as f64),
                n: Quaternion::exp_axis(axis2, -0.23 * k as f64),
            };
            let mi = meridian_images(&pair, &t);
            let ba = mi.b * mi.a;
            let cd = mi.c * mi.d;
            assert!(close(ba, cd, 1e-10), "k={k}");
        }
    }

    #[test]
    fn bd_line_for_45() {
        // Points (0, y, 0) map onto the line (gamma, theta) = (-3t, -8t):
        // cos(gamma) = T_3(y) and cos(theta) = T_8(y) after substituting
        // y = cos(t).
        let t = torus::TorusTangle::new(4, 5, 4, -3).unwrap();
        for k in 0..=32 {
            let tt = std::f64::consts::PI * k as f64 / 32.0;
            let y = tt.cos();
            let w = WPoint { x: 0.0, y, tau: 0.0 };
            let pair = holonomy_pair(&w).unwrap();
            let mi = meridian_images(&pair, &t);
            let (cg, ct, _) = pillow_from_quats(&mi, &pair, &t).unwrap();
            assert!((cg - (3.0 * tt).cos()).abs() < 1e-10, "t={tt}");
            assert!((ct - (8.0 * tt).cos()).abs() < 1e-10, "t={tt}");
        }
    }
}
