//! The torus-knot tangle pipeline.
//!
//! A tangle is described by integers `(p, q, r, s)` with `gcd(p, q) = 1`
//! and `pr + qs = 1`. Its traceless representation variety is the set `W`
//! of common zeros of two functions `p1`, `p2` in the unit cube, built
//! from Chebyshev-type polynomials; eliminating `tau` projects `W` onto
//! the zero set `Z` of a genuine polynomial `p(x, y)` in the unit square.
//! `compute_components` traces `Z`, lifts it back to `W`, and assembles
//! the classified components of the variety.

use crate::cheb::{cheb_s, cheb_t};
use crate::dihedral;
use crate::pillowcase::{self, LiftedPath, PillowPoint};
use crate::zeroset::{self, GridSpec};
use crate::{gcd, Error, Result};
use serde::Serialize;
use std::f64::consts::PI;

/// Integer quadruple defining a torus-knot tangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TorusTangle {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
}

impl TorusTangle {
    pub fn new(p: i64, q: i64, r: i64, s: i64) -> Result<Self> {
        if p < 2 || q < 2 {
            return Err(Error::InvalidParameter(format!(
                "need p, q >= 2, got ({p}, {q})"
            )));
        }
        if gcd(p, q) != 1 {
            return Err(Error::InvalidParameter(format!(
                "p = {p} and q = {q} are not coprime"
            )));
        }
        if p * r + q * s != 1 {
            return Err(Error::InvalidParameter(format!(
                "pr + qs = {} must equal 1 for (p,q,r,s) = ({p},{q},{r},{s})",
                p * r + q * s
            )));
        }
        Ok(TorusTangle { p, q, r, s })
    }

    /// Tangle with the default surgery coefficients for `(p, q)`.
    pub fn from_pq(p: i64, q: i64) -> Result<Self> {
        let (r, s) = default_rs(p, q)?;
        TorusTangle::new(p, q, r, s)
    }
}

/// Default `(r, s)`: `r` is the inverse of `p` modulo `q` with `0 < r < q`,
/// and `s = (1 - pr) / q`.
pub fn default_rs(p: i64, q: i64) -> Result<(i64, i64)> {
    if p < 2 || q < 2 {
        return Err(Error::InvalidParameter(format!(
            "need p, q >= 2, got ({p}, {q})"
        )));
    }
    if gcd(p, q) != 1 {
        return Err(Error::InvalidParameter(format!(
            "p = {p} and q = {q} are not coprime"
        )));
    }
    // extended Euclid for p^{-1} mod q
    let (mut old_r, mut r) = (p, q);
    let (mut old_t, mut t) = (1i64, 0i64);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_t, t) = (t, old_t - quot * t);
    }
    let inv = old_t.rem_euclid(q);
    debug_assert_eq!((p * inv).rem_euclid(q), 1);
    let s = (1 - p * inv) / q;
    Ok((inv, s))
}

/// A solution point of the system in the unit cube.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WPoint {
    pub x: f64,
    pub y: f64,
    pub tau: f64,
}

/// Classification of a component of the representation variety.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ComponentKind {
    #[serde(rename = "binary-dihedral")]
    BinaryDihedral,
    #[serde(rename = "non-binary-dihedral")]
    NonBinaryDihedral,
}

/// A junction where two components meet.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Incidence {
    /// index of the other component
    pub other: usize,
    pub at: WPoint,
}

/// One component of the representation variety, as an ordered point list.
///
/// Closed components repeat their first point at the end.
#[derive(Debug, Clone)]
pub struct RepComponent {
    pub points: Vec<WPoint>,
    pub closed: bool,
    pub kind: ComponentKind,
    pub incidences: Vec<Incidence>,
}

impl RepComponent {
    pub fn distinct_len(&self) -> usize {
        self.points.len() - usize::from(self.closed && self.points.len() > 1)
    }
}

fn tt(n: i64, x: f64) -> f64 {
    cheb_t(n, x).expect("argument inside the unit interval")
}

fn ss(n: i64, x: f64) -> f64 {
    cheb_s(n, x).expect("argument inside the unit interval")
}

fn sqrt_term(x: f64, y: f64) -> f64 {
    ((1.0 - x * x).max(0.0) * (1.0 - y * y).max(0.0)).sqrt()
}

/// First defining function of `W`.
pub fn p1(t: &TorusTangle, x: f64, y: f64, tau: f64) -> f64 {
    tt(t.s + t.p, x) * tt(t.q - t.r, y)
        - sqrt_term(x, y) * ss(t.s + t.p, x) * ss(t.q - t.r, y) * tau
}

/// Second defining function of `W`.
pub fn p2(t: &TorusTangle, x: f64, y: f64, tau: f64) -> f64 {
    tt(t.s, x) * tt(-t.r, y) - sqrt_term(x, y) * ss(t.s, x) * ss(-t.r, y) * tau
}

/// The resultant-style polynomial whose zero set contains the projection
/// of `W` to the `(x, y)` square. Satisfies
/// `p = p1 * S_s(x) S_{-r}(y) - p2 * S_{s+p}(x) S_{q-r}(y)` for every tau.
pub fn p_xy(t: &TorusTangle, x: f64, y: f64) -> f64 {
    tt(t.s + t.p, x) * tt(t.q - t.r, y) * ss(t.s, x) * ss(-t.r, y)
        - ss(t.s + t.p, x) * ss(t.q - t.r, y) * tt(t.s, x) * tt(-t.r, y)
}

/// Result of lifting a point of `Z` back to the cube.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TauLift {
    /// unique lift
    Point(f64),
    /// both linear coefficients vanish: a whole tau segment solves the system
    Fiber,
    /// no admissible lift (tau outside `[-1, 1]` or residuals too large)
    Invalid,
}

/// Solve the system for `tau` at a point of `Z`.
///
/// Both defining functions are linear in `tau`; the equation with the
/// larger coefficient is used and both residuals are verified. Lifts with
/// `|tau| > 1 + 1e-9` are rejected; a small overshoot is clamped.
pub fn solve_tau(t: &TorusTangle, x: f64, y: f64) -> TauLift {
    const COEFF_EPS: f64 = 1e-8;
    let root = sqrt_term(x, y);
    let c1 = root * ss(t.s + t.p, x) * ss(t.q - t.r, y);
    let c2 = root * ss(t.s, x) * ss(-t.r, y);
    let n1 = tt(t.s + t.p, x) * tt(t.q - t.r, y);
    let n2 = tt(t.s, x) * tt(-t.r, y);
    let tau = if c1.abs() >= COEFF_EPS.max(c2.abs()) {
        n1 / c1
    } else if c2.abs() >= COEFF_EPS {
        n2 / c2
    } else {
        return TauLift::Fiber;
    };
    if !tau.is_finite() || tau.abs() > 1.0 + 1e-9 {
        return TauLift::Invalid;
    }
    let tau = tau.clamp(-1.0, 1.0);
    let tol = crate::residual_tolerance();
    if p1(t, x, y, tau).abs() < tol && p2(t, x, y, tau).abs() < tol {
        TauLift::Point(tau)
    } else {
        TauLift::Invalid
    }
}

/// The `(h(ba), h(bc^{-1}))` values of a torus-knot tangle, by parity class.
///
/// The even-`p` pair is `(q - 2r, q)`; the other classes are pinned down
/// by the stated arc maps `(t, 2t)`, `(t, 0)` and
/// `((2s+p) t, (2s+2p) t)` through `(h_ba t, (h_ba - h_bc) t)`.
pub fn torus_h_values(t: &TorusTangle) -> (i64, i64) {
    if t.p % 2 == 0 {
        (t.q - 2 * t.r, t.q)
    } else if t.q % 2 == 0 {
        (2 * t.s + t.p, -t.p)
    } else if t.r % 2 != 0 {
        (1, -1)
    } else {
        (1, 1)
    }
}

/// Pillowcase line of the binary dihedral arc, sampled as a lift.
pub fn bd_arc(t: &TorusTangle, samples: usize) -> LiftedPath {
    let (h_ba, h_bc) = torus_h_values(t);
    dihedral::line_path(h_ba, h_bc, (0.0, 0.0), PI, samples, false)
}

/// The parity class determines where the binary dihedral arc lives in the
/// cube: `x = 0, tau = 0` for even `p`; `y = 0, tau = 0` for even `q`;
/// the tau segment over the origin when both are odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BdLocus {
    XZero,
    YZero,
    TauSegment,
}

pub fn bd_locus(t: &TorusTangle) -> BdLocus {
    if t.p % 2 == 0 {
        BdLocus::XZero
    } else if t.q % 2 == 0 {
        BdLocus::YZero
    } else {
        BdLocus::TauSegment
    }
}

/// The binary dihedral arc as a component of the variety, built directly
/// on its coordinate locus.
pub fn bd_component(t: &TorusTangle, samples: usize) -> RepComponent {
    let locus = bd_locus(t);
    let points = (0..=samples)
        .map(|k| {
            let c = (PI * k as f64 / samples as f64).cos();
            match locus {
                BdLocus::XZero => WPoint { x: 0.0, y: c, tau: 0.0 },
                BdLocus::YZero => WPoint { x: c, y: 0.0, tau: 0.0 },
                BdLocus::TauSegment => WPoint { x: 0.0, y: 0.0, tau: c },
            }
        })
        .collect();
    RepComponent {
        points,
        closed: false,
        kind: ComponentKind::BinaryDihedral,
        incidences: Vec::new(),
    }
}

/// Restriction of a solution point to the pillowcase, as the cosine triple
/// `(cos gamma, cos theta, cos(theta - gamma))`.
pub fn pillow_image(t: &TorusTangle, w: &WPoint) -> Result<(f64, f64, f64)> {
    let (x, y, tau) = (w.x, w.y, w.tau);
    let root = sqrt_term(x, y);
    let cg = -tt(2 * t.s + t.p, x) * tt(t.q - 2 * t.r, y)
        + root * ss(2 * t.s + t.p, x) * ss(t.q - 2 * t.r, y) * tau;
    let tsp = tt(t.s + t.p, x);
    let tr = tt(t.r, y);
    let ct = -2.0 * tsp * tsp * tr * tr + 2.0 * tr * tr + 2.0 * tsp * tsp - 1.0
        + 2.0 * tau * tau * (1.0 - tsp * tsp - tr * tr + tsp * tsp * tr * tr);
    let ctg = tt(t.p, x) * tt(t.q, y) - root * ss(t.p, x) * ss(t.q, y) * tau;
    for (name, v) in [("cos(gamma)", cg), ("cos(theta)", ct), ("cos(theta-gamma)", ctg)] {
        if v.abs() > 1.0 + 1e-7 {
            return Err(Error::Invariant(format!(
                "{name} = {v} escapes [-1, 1] at ({x}, {y}, {tau})"
            )));
        }
    }
    Ok((cg.clamp(-1.0, 1.0), ct.clamp(-1.0, 1.0), ctg.clamp(-1.0, 1.0)))
}

/// Continuous pillowcase lift of a component's image.
pub fn image_path(t: &TorusTangle, comp: &RepComponent) -> Result<LiftedPath> {
    let n = comp.distinct_len();
    let reduced: Vec<PillowPoint> = comp.points[..n]
        .iter()
        .map(|w| {
            let (cg, ct, ctg) = pillow_image(t, w)?;
            pillowcase::angles_from_cosines(cg, ct, ctg)
        })
        .collect::<Result<_>>()?;
    Ok(pillowcase::unfold(&reduced, comp.closed))
}

/// Output of [`compute_components`].
#[derive(Debug, Clone)]
pub struct Variety {
    pub components: Vec<RepComponent>,
    pub warnings: Vec<String>,
}

/// Compute the classified components of the representation variety, with
/// the arc sampled at a density tied to the grid.
pub fn compute_components(t: &TorusTangle, grid: &GridSpec) -> Result<Variety> {
    let arc_samples = (2 * grid.nx.max(grid.ny)).max(512);
    compute_components_sampled(t, grid, arc_samples)
}

/// Compute the classified components of the representation variety.
///
/// The binary dihedral arc is constructed analytically on its coordinate
/// locus (for odd `p` and `q` it is a tau fiber over a single point of
/// `Z`, invisible to planar tracing). Everything else comes from tracing
/// the zero set of `p(x, y)`, lifting each vertex through [`solve_tau`],
/// discarding vertices with no admissible lift, and splitting components
/// where lifting fails. Junctions with the arc are refined to exact
/// solutions and recorded as incidences on both sides.
pub fn compute_components_sampled(
    t: &TorusTangle,
    grid: &GridSpec,
    arc_samples: usize,
) -> Result<Variety> {
    let arc_samples = arc_samples.max(256);
    let mut warnings = Vec::new();
    let arc = bd_component(t, arc_samples);
    let locus = bd_locus(t);
    let cell = grid.cell_diagonal();

    let field = |x: f64, y: f64| p_xy(t, x, y);
    let traced = zeroset::trace_zero_set(&field, grid)?;
    warnings.extend(traced.warnings.iter().map(|w| format!("trace: {w}")));

    let on_locus = |v: [f64; 2]| -> bool {
        match locus {
            BdLocus::XZero => v[0].abs() < 1e-6,
            BdLocus::YZero => v[1].abs() < 1e-6,
            BdLocus::TauSegment => (v[0] * v[0] + v[1] * v[1]).sqrt() < 1e-6,
        }
    };

    let mut circles: Vec<RepComponent> = Vec::new();
    let mut dropped_runs = 0usize;
    for comp in &traced.components {
        let n = comp.distinct_len();
        if comp.vertices[..n].iter().all(|&v| on_locus(v)) {
            // the projection of the arc itself; the analytic arc replaces it
            continue;
        }
        let lifts: Vec<TauLift> = comp.vertices[..n]
            .iter()
            .map(|&v| solve_tau(t, v[0], v[1]))
            .collect();
        // interior fiber points sit on the arc locus; give them the
        // neighbor tau so the curve stays continuous
        let mut taus: Vec<Option<f64>> = lifts
            .iter()
            .map(|l| match l {
                TauLift::Point(tau) => Some(*tau),
                _ => None,
            })
            .collect();
        for i in 0..n {
            if matches!(lifts[i], TauLift::Fiber) {
                let left = (1..=2).find_map(|d| taus[(i + n - d) % n]);
                let right = (1..=2).find_map(|d| taus[(i + d) % n]);
                taus[i] = match (left, right) {
                    (Some(a), Some(b)) => Some(0.5 * (a + b)),
                    (Some(a), None) | (None, Some(a)) => Some(a),
                    (None, None) => None,
                };
            }
        }
        // maximal valid runs
        let runs = valid_runs(&taus, comp.closed);
        for run in runs {
            let pts: Vec<WPoint> = run
                .iter()
                .map(|&i| WPoint { x: comp.vertices[i][0], y: comp.vertices[i][1], tau: taus[i].unwrap() })
                .collect();
            if pts.len() < 3 {
                dropped_runs += 1;
                continue;
            }
            let closed = run.len() == n && comp.closed;
            let mut points = pts;
            if closed {
                let first = points[0];
                points.push(first);
            }
            circles.push(RepComponent {
                points,
                closed,
                kind: ComponentKind::NonBinaryDihedral,
                incidences: Vec::new(),
            });
        }
    }
    if dropped_runs > 0 {
        warnings.push(format!(
            "dropped {dropped_runs} lifted fragment(s) with fewer than 3 points"
        ));
    }

    join_open_components(&mut circles, 4.0 * cell, &mut warnings);

    // deterministic order: the arc first, circles sorted by lowest point
    circles.sort_by(|a, b| {
        let key = |c: &RepComponent| {
            c.points.iter().fold((f64::INFINITY, f64::INFINITY, f64::INFINITY), |acc, p| {
                let k = (p.y, p.x, p.tau);
                if k < acc { k } else { acc }
            })
        };
        key(a).partial_cmp(&key(b)).unwrap()
    });

    let mut components = Vec::with_capacity(1 + circles.len());
    components.push(arc);
    components.extend(circles);

    attach_junctions(t, locus, cell, &mut components, &mut warnings)?;

    let tol = crate::residual_tolerance();
    for (ci, comp) in components.iter().enumerate() {
        for w in &comp.points {
            let (r1, r2) = (p1(t, w.x, w.y, w.tau), p2(t, w.x, w.y, w.tau));
            if r1.abs() > tol || r2.abs() > tol {
                return Err(Error::Invariant(format!(
                    "component {ci} point ({}, {}, {}) has residuals ({r1:.3e}, {r2:.3e})",
                    w.x, w.y, w.tau
                )));
            }
        }
        if comp.kind == ComponentKind::NonBinaryDihedral && !comp.closed {
            warnings.push(format!("component {ci} is an open non-dihedral arc"));
        }
    }
    Ok(Variety { components, warnings })
}

/// Index runs of consecutive `Some` lifts; cyclic for closed curves.
fn valid_runs(taus: &[Option<f64>], closed: bool) -> Vec<Vec<usize>> {
    let n = taus.len();
    if taus.iter().all(Option::is_some) {
        return vec![(0..n).collect()];
    }
    if taus.iter().all(Option::is_none) {
        return Vec::new();
    }
    let start = if closed {
        (0..n).find(|&i| taus[i].is_none()).unwrap()
    } else {
        0
    };
    let mut runs = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    for k in 0..n {
        let i = (start + k) % n;
        if taus[i].is_some() {
            current.push(i);
        } else if !current.is_empty() {
            runs.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        runs.push(current);
    }
    runs
}

/// Join open lifted fragments whose endpoints nearly coincide; close a
/// fragment whose own endpoints meet.
fn join_open_components(comps: &mut Vec<RepComponent>, tol: f64, warnings: &mut Vec<String>) {
    let dist = |a: &WPoint, b: &WPoint| {
        ((a.x - b.x).powi(2) + (a.y - b.y).powi(2) + (a.tau - b.tau).powi(2)).sqrt()
    };
    loop {
        let mut action: Option<(usize, usize, bool, bool)> = None;
        'outer: for i in 0..comps.len() {
            if comps[i].closed {
                continue;
            }
            // self closure
            let pts = &comps[i].points;
            if pts.len() > 3 && dist(pts.first().unwrap(), pts.last().unwrap()) < tol {
                action = Some((i, i, false, false));
                break;
            }
            for j in i + 1..comps.len() {
                if comps[j].closed {
                    continue;
                }
                for (i_front, j_front) in
                    [(false, true), (false, false), (true, true), (true, false)]
                {
                    let pi = if i_front { comps[i].points.first() } else { comps[i].points.last() };
                    let pj = if j_front { comps[j].points.first() } else { comps[j].points.last() };
                    if dist(pi.unwrap(), pj.unwrap()) < tol {
                        action = Some((i, j, i_front, j_front));
                        break 'outer;
                    }
                }
            }
        }
        let Some((i, j, i_front, j_front)) = action else { break };
        if i == j {
            let first = comps[i].points[0];
            comps[i].points.push(first);
            comps[i].closed = true;
            warnings.push("closed a lifted fragment onto itself".into());
            continue;
        }
        let mut other = comps.remove(j);
        if !j_front {
            other.points.reverse();
        }
        if i_front {
            comps[i].points.reverse();
        }
        comps[i].points.extend(other.points);
        warnings.push("joined two lifted fragments end to end".into());
    }
}

#[derive(Debug, Clone, Copy)]
enum CrossingEvent {
    /// sign change on the edge starting at this index; approx locus position
    Edge(usize, f64),
    /// vertex already sitting on the locus
    Vertex(usize, f64),
}

/// Detect crossings of non-dihedral components through the arc locus,
/// refine each to an exact junction, insert it, and record the incidence
/// on both components.
#[allow(clippy::needless_range_loop)] // components[ci] is mutated mid-loop
fn attach_junctions(
    t: &TorusTangle,
    locus: BdLocus,
    cell: f64,
    components: &mut [RepComponent],
    warnings: &mut Vec<String>,
) -> Result<()> {
    let coord = |w: &WPoint| match locus {
        BdLocus::XZero => w.x,
        BdLocus::YZero => w.y,
        BdLocus::TauSegment => (w.x * w.x + w.y * w.y).sqrt(),
    };
    let along = |w: &WPoint| match locus {
        BdLocus::XZero => w.y,
        _ => w.x,
    };
    let mut arc_incidences: Vec<Incidence> = Vec::new();

    for ci in 1..components.len() {
        let comp = &components[ci];
        let n = comp.points.len();
        if n < 2 {
            continue;
        }
        if matches!(locus, BdLocus::TauSegment) {
            // a component meeting the tau segment passes near the origin
            let mut best: Option<(usize, f64)> = None;
            for (i, w) in comp.points.iter().enumerate() {
                let d = coord(w);
                if d < 3.0 * cell && best.is_none_or(|(_, bd)| d < bd) {
                    best = Some((i, d));
                }
            }
            if let Some((i, _)) = best {
                let at = WPoint { x: 0.0, y: 0.0, tau: comp.points[i].tau };
                arc_incidences.push(Incidence { other: ci, at });
                components[ci].incidences.push(Incidence { other: 0, at });
            }
            continue;
        }

        let distinct = comp.distinct_len();
        let mut events: Vec<CrossingEvent> = Vec::new();
        let mut i = 0;
        while i < distinct {
            let a = coord(&comp.points[i]);
            if a.abs() < 1e-9 {
                events.push(CrossingEvent::Vertex(i, along(&comp.points[i])));
                while i < distinct && coord(&comp.points[i]).abs() < 1e-9 {
                    i += 1;
                }
                continue;
            }
            if i + 1 < n {
                let b = coord(&comp.points[i + 1]);
                if b.abs() >= 1e-9 && a * b < 0.0 {
                    let frac = a / (a - b);
                    let pos = along(&comp.points[i])
                        + frac * (along(&comp.points[i + 1]) - along(&comp.points[i]));
                    events.push(CrossingEvent::Edge(i, pos));
                }
            }
            i += 1;
        }

        let mut offset = 0usize;
        for event in events {
            let approx = match event {
                CrossingEvent::Edge(_, pos) | CrossingEvent::Vertex(_, pos) => pos,
            };
            let refined = refine_locus_crossing(t, locus, approx, cell);
            let v = refined.unwrap_or_else(|| {
                warnings.push(format!(
                    "junction refinement failed near {approx:.6}; kept the interpolate"
                ));
                approx
            });
            let at = match locus {
                BdLocus::XZero => WPoint { x: 0.0, y: v, tau: 0.0 },
                BdLocus::YZero => WPoint { x: v, y: 0.0, tau: 0.0 },
                BdLocus::TauSegment => unreachable!(),
            };
            match event {
                CrossingEvent::Edge(idx, _) => {
                    components[ci].points.insert(idx + 1 + offset, at);
                    offset += 1;
                }
                CrossingEvent::Vertex(idx, _) => {
                    components[ci].points[idx + offset] = at;
                }
            }
            arc_incidences.push(Incidence { other: ci, at });
            components[ci].incidences.push(Incidence { other: 0, at });
        }
        if components[ci].closed {
            let first = components[ci].points[0];
            let last = components[ci].points.len() - 1;
            components[ci].points[last] = first;
        }
    }
    components[0].incidences = arc_incidences;
    Ok(())
}

/// Solve for the exact point where the non-dihedral curve crosses the arc
/// locus: a root of the cofactor `p(x, y) / x` along `x = 0` (resp.
/// `p / y` along `y = 0`), evaluated by a symmetric difference.
fn refine_locus_crossing(t: &TorusTangle, locus: BdLocus, near: f64, cell: f64) -> Option<f64> {
    const H: f64 = 1e-6;
    let g = |v: f64| -> f64 {
        match locus {
            BdLocus::XZero => (p_xy(t, H, v) - p_xy(t, -H, v)) / (2.0 * H),
            BdLocus::YZero => (p_xy(t, v, H) - p_xy(t, v, -H)) / (2.0 * H),
            BdLocus::TauSegment => unreachable!(),
        }
    };
    let mut half = 3.0 * cell;
    for _ in 0..3 {
        let lo = (near - half).max(-1.0);
        let hi = (near + half).min(1.0);
        let (flo, fhi) = (g(lo), g(hi));
        if (flo >= 0.0) != (fhi >= 0.0) {
            // bisection with a secant finish
            let (mut lo, mut hi, mut flo) = (lo, hi, flo);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let fm = g(mid);
                if (fm >= 0.0) == (flo >= 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
                if hi - lo < 1e-13 {
                    break;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        half *= 2.0;
    }
    None
}
