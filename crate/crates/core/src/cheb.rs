//! Chebyshev-type polynomials `T_n` and `S_n` for arbitrary integer index.
//!
//! `T_n` satisfies `cos(n u) = T_n(cos u)` and `S_n` satisfies
//! `sin(n u) = sin(u) S_n(cos u)`, so `S_n` is the second-kind polynomial
//! `U_{n-1}`. Both are evaluated by the three-term recurrence rather than
//! from expanded coefficients; high-degree coefficient forms lose precision
//! near the endpoints of `[-1, 1]`.

use crate::{Error, Result};

/// Inputs may overshoot the unit interval by this much and are clamped.
pub const DOMAIN_SLACK: f64 = 1e-12;

fn clamp_unit(x: f64) -> Result<f64> {
    if x.abs() <= 1.0 {
        Ok(x)
    } else if x.abs() <= 1.0 + DOMAIN_SLACK {
        Ok(x.clamp(-1.0, 1.0))
    } else {
        Err(Error::Domain(format!("cheb argument {x} outside [-1, 1]")))
    }
}

/// First-kind value `T_n(x)`, with `T_{-n} = T_n`.
pub fn cheb_t(n: i64, x: f64) -> Result<f64> {
    let x = clamp_unit(x)?;
    Ok(eval_t(n.unsigned_abs(), x))
}

/// Second-kind-type value `S_n(x)`, with `S_{-n} = -S_n`.
pub fn cheb_s(n: i64, x: f64) -> Result<f64> {
    let x = clamp_unit(x)?;
    let s = eval_s(n.unsigned_abs(), x);
    Ok(if n < 0 { -s } else { s })
}

fn eval_t(n: u64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, x);
    for _ in 1..n {
        (prev, cur) = (cur, 2.0 * x * cur - prev);
    }
    cur
}

fn eval_s(n: u64, x: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 1..n {
        (prev, cur) = (cur, 2.0 * x * cur - prev);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t3_at_half() {
        // T_3(x) = 4x^3 - 3x
        assert_eq!(cheb_t(3, 0.5).unwrap(), -1.0);
    }

    #[test]
    fn t0_is_one() {
        for x in [-1.0, -0.3, 0.0, 0.9, 1.0] {
            assert_eq!(cheb_t(0, x).unwrap(), 1.0);
        }
    }

    #[test]
    fn t_even_in_index() {
        assert_eq!(cheb_t(-7, 0.3).unwrap(), cheb_t(7, 0.3).unwrap());
    }

    #[test]
    fn t5_matches_trig_oracle() {
        // cos(5 * acos(0.3)), frozen from an independent evaluation.
        let expected = 0.99888;
        assert!((cheb_t(5, 0.3).unwrap() - expected).abs() < 1e-12);
        let oracle = (5.0 * 0.3f64.acos()).cos();
        assert!((cheb_t(5, 0.3).unwrap() - oracle).abs() < 1e-12);
    }

    #[test]
    fn s0_is_zero_s2_is_2x() {
        assert_eq!(cheb_s(0, 0.77).unwrap(), 0.0);
        assert_eq!(cheb_s(2, 0.25).unwrap(), 0.5);
    }

    #[test]
    fn s_minus_4_is_negated_u3() {
        // S_4(y) = 8y^3 - 4y, so S_{-4}(y) = -8y^3 + 4y.
        for y in [-0.9, -0.4, 0.0, 0.3, 0.8] {
            let expected = -(8.0 * y * y * y - 4.0 * y);
            assert!((cheb_s(-4, y).unwrap() - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn trig_identities_up_to_50() {
        // |T_n(cos u) - cos(nu)| and |sin u * S_n(cos u) - sin(nu)| stay
        // below 1e-9 for |n| <= 50 over 200 samples of u in [0, pi].
        for n in -50i64..=50 {
            for k in 0..200 {
                let u = std::f64::consts::PI * (k as f64 + 0.5) / 200.0;
                let x = u.cos();
                let t = cheb_t(n, x).unwrap();
                let s = cheb_s(n, x).unwrap();
                let nf = n as f64;
                assert!(
                    (t - (nf * u).cos()).abs() < 1e-9,
                    "T_{n} at u={u}: {t} vs {}",
                    (nf * u).cos()
                );
                assert!(
                    (u.sin() * s - (nf * u).sin()).abs() < 1e-9,
                    "S_{n} at u={u}"
                );
            }
        }
    }

    #[test]
    fn parity_in_index() {
        for n in 0..40i64 {
            for x in [-0.95, -0.5, 0.1, 0.72] {
                assert_eq!(cheb_t(-n, x).unwrap(), cheb_t(n, x).unwrap());
                assert_eq!(cheb_s(-n, x).unwrap(), -cheb_s(n, x).unwrap());
            }
        }
    }

    #[test]
    fn recurrence_consistency() {
        for k in 1..45i64 {
            for x in [-0.99, -0.33, 0.0, 0.61, 0.97] {
                let lhs = cheb_t(k + 1, x).unwrap() + cheb_t(k - 1, x).unwrap();
                let rhs = 2.0 * x * cheb_t(k, x).unwrap();
                assert!((lhs - rhs).abs() < 1e-10, "k={k} x={x}");
            }
        }
    }

    #[test]
    fn clamps_small_overshoot_rejects_large() {
        assert_eq!(cheb_t(2, 1.0 + 5e-13).unwrap(), 1.0);
        assert_eq!(cheb_t(2, -1.0 - 5e-13).unwrap(), 1.0);
        assert!(cheb_t(2, 1.0 + 1e-9).is_err());
        assert!(cheb_s(3, -1.1).is_err());
    }
}
