//! Geometry of the pillowcase quotient.
//!
//! The pillowcase is the quotient of the `(gamma, theta)` plane by
//! `(gamma, theta) -> +/-(gamma + 2 pi m, theta + 2 pi n)`. A fundamental
//! domain is `[0, pi] x [0, 2 pi]` with the two vertical edges folded and
//! the horizontal edges glued. The four corner points `{0, pi} x {0, pi}`
//! come from abelian representations.

use crate::{Error, Result};
use serde::Serialize;
use std::f64::consts::PI;

const TWO_PI: f64 = 2.0 * PI;

/// tolerance below which a fold edge is treated as exactly hit
const EDGE_EPS: f64 = 1e-12;

/// Canonical coordinates in the fundamental domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PillowPoint {
    /// in `[0, pi]`
    pub gamma: f64,
    /// in `[0, 2 pi)`; folded into `[0, pi]` when `gamma` lies on an edge
    pub theta: f64,
}

/// A continuous path in the plane covering the pillowcase.
///
/// For a closed path the final point is the deck translate of the first,
/// so consecutive-pair scans cover the closing edge as well.
#[derive(Debug, Clone)]
pub struct LiftedPath {
    pub points: Vec<[f64; 2]>,
    pub closed: bool,
}

impl LiftedPath {
    /// Largest gap between consecutive points.
    pub fn max_step(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| ((w[1][0] - w[0][0]).powi(2) + (w[1][1] - w[0][1]).powi(2)).sqrt())
            .fold(0.0, f64::max)
    }
}

/// Canonical representative of `(gamma, theta)` under the deck action.
pub fn reduce(gamma: f64, theta: f64) -> PillowPoint {
    let mut g = gamma.rem_euclid(TWO_PI);
    let mut th = theta;
    if g > PI {
        g = TWO_PI - g;
        th = -th;
    }
    let mut th = th.rem_euclid(TWO_PI);
    if g < EDGE_EPS || (PI - g) < EDGE_EPS {
        // fold edges: (0, theta) ~ (0, 2pi - theta) and likewise at gamma = pi
        if th > PI {
            th = TWO_PI - th;
        }
    }
    PillowPoint { gamma: g, theta: th }
}

/// Recover a canonical point from the cosine triple
/// `(cos gamma, cos theta, cos(theta - gamma))`.
///
/// `gamma = arccos(cg)` is unambiguous; the third cosine picks the branch
/// of `theta` between `arccos(ct)` and `2 pi - arccos(ct)`. When
/// `sin(gamma)` vanishes the two branches are identified in the quotient
/// and the first is taken.
pub fn angles_from_cosines(cg: f64, ct: f64, ctg: f64) -> Result<PillowPoint> {
    let clamp = |v: f64, name: &str| -> Result<f64> {
        if v.abs() <= 1.0 {
            Ok(v)
        } else if v.abs() <= 1.0 + 1e-9 {
            Ok(v.clamp(-1.0, 1.0))
        } else {
            Err(Error::Domain(format!("cosine {name}={v} outside [-1, 1]")))
        }
    };
    let cg = clamp(cg, "cos(gamma)")?;
    let ct = clamp(ct, "cos(theta)")?;
    let ctg = clamp(ctg, "cos(theta-gamma)")?;
    let gamma = cg.acos();
    let t0 = ct.acos();
    let t1 = TWO_PI - t0;
    let err0 = ((t0 - gamma).cos() - ctg).abs();
    let err1 = ((t1 - gamma).cos() - ctg).abs();
    let degenerate = gamma.sin().abs() < 1e-9;
    let (theta, err) = if degenerate || err0 <= err1 {
        (t0, err0)
    } else {
        (t1, err1)
    };
    if err > 1e-6 && !degenerate {
        return Err(Error::Inconsistency(format!(
            "cosine triple ({cg}, {ct}, {ctg}) admits no theta branch (residual {err:.3e})"
        )));
    }
    Ok(reduce(gamma, theta))
}

/// The involution `(gamma, theta) -> (pi - gamma, 2 pi - theta)` that
/// leaves every restriction image invariant.
pub fn involution(p: PillowPoint) -> PillowPoint {
    reduce(PI - p.gamma, TWO_PI - p.theta)
}

/// True when the canonical point is one of the four corners.
pub fn is_corner(p: PillowPoint) -> bool {
    let near = |v: f64, w: f64| (v - w).abs() < 1e-9;
    (near(p.gamma, 0.0) || near(p.gamma, PI)) && (near(p.theta, 0.0) || near(p.theta, PI))
}

/// Distance in the quotient between two canonical points.
pub fn quotient_distance(p: PillowPoint, q: PillowPoint) -> f64 {
    let mut best = f64::INFINITY;
    for eps in [1.0, -1.0] {
        for m in -1..=1 {
            for n in -1..=1 {
                let dg = p.gamma - (eps * q.gamma + TWO_PI * m as f64);
                let dt = p.theta - (eps * q.theta + TWO_PI * n as f64);
                best = best.min((dg * dg + dt * dt).sqrt());
            }
        }
    }
    best
}

/// Result of a diagonal crossing scan.
#[derive(Debug, Clone, Default)]
pub struct CrossingReport {
    /// number of transverse interior crossings
    pub count: usize,
    /// fractional vertex indices of the crossings
    pub locations: Vec<f64>,
    pub warnings: Vec<String>,
}

/// Count transverse crossings of a lifted path with the diagonal arc.
///
/// A point lies over the diagonal exactly when `theta - gamma = 0 mod 2 pi`,
/// which is invariant under the full deck action, so crossings are sign
/// changes of `g(t) = sin((theta(t) - gamma(t)) / 2)` along the lift.
/// Crossings whose reduced point is a corner are discarded, matching the
/// exclusion of abelian representations; zeros without a sign change are
/// reported as tangency warnings.
pub fn diagonal_crossings(path: &LiftedPath, exclude_endpoints: bool) -> CrossingReport {
    const ZERO_EPS: f64 = 1e-9;
    let pts = &path.points;
    let mut report = CrossingReport::default();
    if pts.len() < 2 {
        return report;
    }
    let g: Vec<f64> = pts.iter().map(|p| ((p[1] - p[0]) / 2.0).sin()).collect();
    let n = g.len();

    let record = |loc: f64, report: &mut CrossingReport| {
        let i = loc.floor() as usize;
        let frac = loc - i as f64;
        let (p0, p1) = (pts[i.min(n - 1)], pts[(i + 1).min(n - 1)]);
        let gamma = p0[0] + frac * (p1[0] - p0[0]);
        let theta = p0[1] + frac * (p1[1] - p0[1]);
        if is_corner(reduce(gamma, theta)) {
            return;
        }
        report.count += 1;
        report.locations.push(loc);
    };

    let mut i = 0;
    while i < n {
        if g[i].abs() <= ZERO_EPS {
            // an on-diagonal sample: find the zero run and compare the
            // signs on either side
            let start = i;
            while i < n && g[i].abs() <= ZERO_EPS {
                i += 1;
            }
            let end = i; // first index past the run
            let at_start = start == 0;
            let at_end = end == n;
            if at_start || at_end {
                if !exclude_endpoints && !path.closed {
                    report
                        .warnings
                        .push("path endpoint lies on the diagonal".into());
                }
                continue;
            }
            let before = g[start - 1];
            let after = g[end];
            let mid = (start + end - 1) as f64 / 2.0;
            if before * after < 0.0 {
                record(mid, &mut report);
            } else {
                report
                    .warnings
                    .push(format!("tangential diagonal contact near index {mid:.1}"));
            }
        } else {
            if i + 1 < n && g[i + 1].abs() > ZERO_EPS && g[i] * g[i + 1] < 0.0 {
                let loc = i as f64 + g[i] / (g[i] - g[i + 1]);
                record(loc, &mut report);
            }
            i += 1;
        }
    }
    // a closed path whose seam sits on the diagonal: the leading and
    // trailing zero runs are one run in the loop
    if path.closed && (g[0].abs() <= ZERO_EPS || g[n - 1].abs() <= ZERO_EPS) {
        let lead_end = g.iter().position(|v| v.abs() > ZERO_EPS);
        match lead_end {
            None => report.warnings.push("closed path lies on the diagonal".into()),
            Some(a) => {
                let b = g.iter().rposition(|v| v.abs() > ZERO_EPS).unwrap();
                if g[b] * g[a] < 0.0 {
                    record(0.0, &mut report);
                } else {
                    report
                        .warnings
                        .push("tangential diagonal contact at the seam".into());
                }
            }
        }
    }
    report
}

/// Greedily lift a sequence of canonical points to a continuous path in
/// the plane. For a closed sequence the deck translate of the first point
/// is appended so the closing edge is part of the lift.
pub fn unfold(reduced: &[PillowPoint], closed: bool) -> LiftedPath {
    let mut points = Vec::with_capacity(reduced.len() + usize::from(closed));
    if reduced.is_empty() {
        return LiftedPath { points, closed };
    }
    let mut prev = [reduced[0].gamma, reduced[0].theta];
    points.push(prev);
    for p in &reduced[1..] {
        prev = continue_lift(prev, *p);
        points.push(prev);
    }
    if closed {
        points.push(continue_lift(prev, reduced[0]));
    }
    LiftedPath { points, closed }
}

fn continue_lift(prev: [f64; 2], p: PillowPoint) -> [f64; 2] {
    let mut best = prev;
    let mut best_d = f64::INFINITY;
    for eps in [1.0, -1.0] {
        let g = eps * p.gamma;
        let t = eps * p.theta;
        let g2 = g + TWO_PI * ((prev[0] - g) / TWO_PI).round();
        let t2 = t + TWO_PI * ((prev[1] - t) / TWO_PI).round();
        let d = (g2 - prev[0]).powi(2) + (t2 - prev[1]).powi(2);
        if d < best_d {
            best_d = d;
            best = [g2, t2];
        }
    }
    best
}
