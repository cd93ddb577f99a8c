//! Implicit-curve extraction on a rectangle.
//!
//! `trace_zero_set` runs marching squares over a sample grid, polishes
//! every crossing to a root along its grid edge, links the cell segments
//! into maximal polylines, and finally re-pairs chains at junctions where
//! two branches of the zero set cross each other. Marching squares cannot
//! certify singular points, so crossing branches are resolved by tangent
//! continuity and left as separate components that meet within tolerance.

use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::HashMap;

/// Axis-aligned tracing rectangle.
#[derive(Debug, Clone, Copy)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub const UNIT_SQUARE: Rect = Rect { x0: -1.0, x1: 1.0, y0: -1.0, y1: 1.0 };
}

/// Sampling grid: `nx` by `ny` cells over `bounds`.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    pub bounds: Rect,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { nx: 1024, ny: 1024, bounds: Rect::UNIT_SQUARE }
    }
}

impl GridSpec {
    pub fn square(n: usize) -> Self {
        GridSpec { nx: n, ny: n, bounds: Rect::UNIT_SQUARE }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < 16 || self.ny < 16 {
            return Err(Error::InvalidParameter(format!(
                "grid {}x{} too coarse; need at least 16 cells per axis",
                self.nx, self.ny
            )));
        }
        if !(self.bounds.x1 > self.bounds.x0 && self.bounds.y1 > self.bounds.y0) {
            return Err(Error::InvalidParameter("empty tracing rectangle".into()));
        }
        Ok(())
    }

    pub fn cell_diagonal(&self) -> f64 {
        let dx = (self.bounds.x1 - self.bounds.x0) / self.nx as f64;
        let dy = (self.bounds.y1 - self.bounds.y0) / self.ny as f64;
        (dx * dx + dy * dy).sqrt()
    }
}

/// A maximal polyline of the traced zero set.
///
/// Closed components repeat their first vertex at the end.
#[derive(Debug, Clone)]
pub struct CurveComponent {
    pub vertices: Vec<[f64; 2]>,
    pub closed: bool,
}

impl CurveComponent {
    pub fn polyline_length(&self) -> f64 {
        self.vertices
            .windows(2)
            .map(|w| ((w[1][0] - w[0][0]).powi(2) + (w[1][1] - w[0][1]).powi(2)).sqrt())
            .sum()
    }

    /// Vertex count without the closing duplicate.
    pub fn distinct_len(&self) -> usize {
        self.vertices.len() - usize::from(self.closed && self.vertices.len() > 1)
    }
}

/// Traced components plus non-fatal diagnostics.
#[derive(Debug, Clone)]
pub struct TraceResult {
    pub components: Vec<CurveComponent>,
    pub warnings: Vec<String>,
}

/// Outcome of a one-dimensional root polish.
#[derive(Debug, Clone, Copy)]
pub struct Polished {
    pub point: [f64; 2],
    pub converged: bool,
}

/// Polish a near-root `seed` to a root of `f` along `seed + t * direction`,
/// with `|t|` bounded by `max_step`. Keeps the seed and reports
/// non-convergence after 60 iterations.
pub fn polish_point(
    f: &dyn Fn(f64, f64) -> f64,
    seed: [f64; 2],
    direction: [f64; 2],
    max_step: f64,
    tol_abs: f64,
) -> Polished {
    let norm = (direction[0] * direction[0] + direction[1] * direction[1]).sqrt();
    if norm == 0.0 || max_step <= 0.0 {
        return Polished { point: seed, converged: false };
    }
    let dir = [direction[0] / norm, direction[1] / norm];
    let h = |t: f64| f(seed[0] + t * dir[0], seed[1] + t * dir[1]);
    let at = |t: f64| [seed[0] + t * dir[0], seed[1] + t * dir[1]];

    let f0 = h(0.0);
    if f0.abs() <= tol_abs {
        return Polished { point: seed, converged: true };
    }
    // try to bracket the root within the allowed step
    let (fl, fr) = (h(-max_step), h(max_step));
    let bracket = if (f0 >= 0.0) != (fr >= 0.0) {
        Some((0.0, max_step, f0, fr))
    } else if (fl >= 0.0) != (f0 >= 0.0) {
        Some((-max_step, 0.0, fl, f0))
    } else {
        None
    };
    if let Some((lo, hi, flo, fhi)) = bracket {
        let (t, res, ok) = bracketed_root(&h, lo, hi, flo, fhi, tol_abs, 60);
        if ok || res.abs() < f0.abs() {
            return Polished { point: at(t), converged: ok };
        }
        return Polished { point: seed, converged: false };
    }
    // no bracket: damped Newton with a numeric derivative
    let mut t = 0.0;
    let mut ft = f0;
    let dh = max_step * 1e-6;
    for _ in 0..60 {
        let d = (h(t + dh) - h(t - dh)) / (2.0 * dh);
        if d == 0.0 || !d.is_finite() {
            break;
        }
        let step = (-ft / d).clamp(-max_step / 2.0, max_step / 2.0);
        let tn = (t + step).clamp(-max_step, max_step);
        let fnext = h(tn);
        if fnext.abs() >= ft.abs() {
            break;
        }
        t = tn;
        ft = fnext;
        if ft.abs() <= tol_abs {
            return Polished { point: at(t), converged: true };
        }
    }
    if ft.abs() <= tol_abs {
        Polished { point: at(t), converged: true }
    } else {
        Polished { point: seed, converged: false }
    }
}

/// Illinois-style false position inside a sign-change bracket.
fn bracketed_root(
    h: &dyn Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    mut flo: f64,
    mut fhi: f64,
    tol_abs: f64,
    max_iter: usize,
) -> (f64, f64, bool) {
    if flo.abs() <= tol_abs {
        return (lo, flo, true);
    }
    if fhi.abs() <= tol_abs {
        return (hi, fhi, true);
    }
    let mut side = 0i8;
    let mut t = 0.5 * (lo + hi);
    let mut ft = h(t);
    for _ in 0..max_iter {
        if ft.abs() <= tol_abs {
            return (t, ft, true);
        }
        if (ft >= 0.0) == (flo >= 0.0) {
            lo = t;
            flo = ft;
            if side == 1 {
                fhi *= 0.5;
            }
            side = 1;
        } else {
            hi = t;
            fhi = ft;
            if side == -1 {
                flo *= 0.5;
            }
            side = -1;
        }
        let denom = flo - fhi;
        let ts = if denom != 0.0 { lo + (hi - lo) * flo / denom } else { 0.5 * (lo + hi) };
        t = if ts.is_finite() && ts > lo && ts < hi { ts } else { 0.5 * (lo + hi) };
        if (hi - lo).abs() < 1e-17 {
            break;
        }
        ft = h(t);
    }
    (t, ft, ft.abs() <= tol_abs)
}

// edge identifiers: (i, j, HORIZONTAL | VERTICAL)
const HORIZONTAL: u8 = 0;
const VERTICAL: u8 = 1;
type EdgeKey = (u32, u32, u8);

/// Trace the zero set of `f` over the grid.
pub fn trace_zero_set(
    f: &(dyn Fn(f64, f64) -> f64 + Sync),
    grid: &GridSpec,
) -> Result<TraceResult> {
    grid.validate()?;
    let (nx, ny) = (grid.nx, grid.ny);
    let b = grid.bounds;
    let dx = (b.x1 - b.x0) / nx as f64;
    let dy = (b.y1 - b.y0) / ny as f64;
    let xs: Vec<f64> = (0..=nx).map(|i| b.x0 + dx * i as f64).collect();
    let ys: Vec<f64> = (0..=ny).map(|j| b.y0 + dy * j as f64).collect();

    let values: Vec<Vec<f64>> = ys
        .par_iter()
        .map(|&y| xs.iter().map(|&x| f(x, y)).collect())
        .collect();
    let mut scale = 0.0f64;
    for row in &values {
        for &v in row {
            if !v.is_finite() {
                return Err(Error::Domain("field is not finite on the grid".into()));
            }
            scale = scale.max(v.abs());
        }
    }
    if scale == 0.0 {
        return Err(Error::Domain("field vanishes identically on the grid".into()));
    }
    let tol_abs = 1e-12 * scale;
    let val = |i: usize, j: usize| values[j][i];
    let pos = |i: usize, j: usize| val(i, j) >= 0.0;

    let mut vertices: Vec<[f64; 2]> = Vec::new();
    let mut edge_map: HashMap<EdgeKey, u32> = HashMap::new();
    let mut segments: Vec<(u32, u32)> = Vec::new();

    let mut vertex_for = |key: EdgeKey, vertices: &mut Vec<[f64; 2]>| -> u32 {
        if let Some(&v) = edge_map.get(&key) {
            return v;
        }
        let (i, j, orient) = key;
        let (i, j) = (i as usize, j as usize);
        let (pa, pb, va, vb) = if orient == HORIZONTAL {
            ([xs[i], ys[j]], [xs[i + 1], ys[j]], val(i, j), val(i + 1, j))
        } else {
            ([xs[i], ys[j]], [xs[i], ys[j + 1]], val(i, j), val(i, j + 1))
        };
        let point = if va.abs() <= tol_abs {
            pa
        } else if vb.abs() <= tol_abs {
            pb
        } else {
            let h = |t: f64| f(pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1]));
            let (t, _, _) = bracketed_root(&h, 0.0, 1.0, va, vb, tol_abs, 80);
            [pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1])]
        };
        let id = vertices.len() as u32;
        vertices.push(point);
        edge_map.insert(key, id);
        id
    };

    for j in 0..ny {
        for i in 0..nx {
            let case = u8::from(pos(i, j))
                | (u8::from(pos(i + 1, j)) << 1)
                | (u8::from(pos(i + 1, j + 1)) << 2)
                | (u8::from(pos(i, j + 1)) << 3);
            if case == 0 || case == 15 {
                continue;
            }
            let s = (i as u32, j as u32, HORIZONTAL);
            let e = (i as u32 + 1, j as u32, VERTICAL);
            let n = (i as u32, j as u32 + 1, HORIZONTAL);
            let w = (i as u32, j as u32, VERTICAL);
            let mut emit = |a: EdgeKey, b: EdgeKey, vertices: &mut Vec<[f64; 2]>| {
                let va = vertex_for(a, vertices);
                let vb = vertex_for(b, vertices);
                if va != vb {
                    segments.push((va, vb));
                }
            };
            match case {
                1 | 14 => emit(s, w, &mut vertices),
                2 | 13 => emit(s, e, &mut vertices),
                3 | 12 => emit(w, e, &mut vertices),
                4 | 11 => emit(e, n, &mut vertices),
                6 | 9 => emit(s, n, &mut vertices),
                7 | 8 => emit(n, w, &mut vertices),
                5 | 10 => {
                    // ambiguous saddle: the center sample decides which
                    // diagonal pair of corners joins up
                    let cx = 0.5 * (xs[i] + xs[i + 1]);
                    let cy = 0.5 * (ys[j] + ys[j + 1]);
                    let center_pos = f(cx, cy) >= 0.0;
                    if (case == 5) == center_pos {
                        emit(w, n, &mut vertices);
                        emit(s, e, &mut vertices);
                    } else {
                        emit(s, w, &mut vertices);
                        emit(e, n, &mut vertices);
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    let mut warnings = Vec::new();
    let mut components = link_chains(&vertices, &segments, &mut warnings);
    resolve_junctions(&mut components, grid.cell_diagonal(), &mut warnings);
    let mut dropped = 0usize;
    components.retain(|c| {
        if c.distinct_len() < 3 {
            dropped += 1;
            false
        } else {
            true
        }
    });
    if dropped > 0 {
        warnings.push(format!("discarded {dropped} component(s) with fewer than 3 vertices"));
    }
    sort_components(&mut components);
    Ok(TraceResult { components, warnings })
}

/// Link cell segments into maximal open chains and cycles.
fn link_chains(
    vertices: &[[f64; 2]],
    segments: &[(u32, u32)],
    warnings: &mut Vec<String>,
) -> Vec<CurveComponent> {
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); vertices.len()];
    for (sid, &(a, b)) in segments.iter().enumerate() {
        adj[a as usize].push(sid as u32);
        adj[b as usize].push(sid as u32);
    }
    let over = adj.iter().filter(|l| l.len() > 2).count();
    if over > 0 {
        warnings.push(format!(
            "{over} crossing vertex(es) have more than two incident segments"
        ));
    }
    let mut seg_used = vec![false; segments.len()];
    let mut components = Vec::new();

    let walk = |start_vertex: u32, seg_used: &mut Vec<bool>| -> Vec<u32> {
        let mut path = vec![start_vertex];
        let mut cur = start_vertex;
        loop {
            let next_seg = adj[cur as usize]
                .iter()
                .copied()
                .find(|&sid| !seg_used[sid as usize]);
            let Some(sid) = next_seg else { break };
            seg_used[sid as usize] = true;
            let (a, b) = segments[sid as usize];
            cur = if a == cur { b } else { a };
            path.push(cur);
            if cur == start_vertex {
                break;
            }
        }
        path
    };

    // open chains start at degree-one vertices
    for v in 0..vertices.len() as u32 {
        if adj[v as usize].len() == 1 && adj[v as usize].iter().any(|&s| !seg_used[s as usize]) {
            let path = walk(v, &mut seg_used);
            if path.len() >= 2 {
                components.push(CurveComponent {
                    vertices: path.iter().map(|&v| vertices[v as usize]).collect(),
                    closed: false,
                });
            }
        }
    }
    // remaining segments belong to cycles
    for sid in 0..segments.len() {
        if !seg_used[sid] {
            let start = segments[sid].0;
            let path = walk(start, &mut seg_used);
            let closed = path.len() > 2 && path.first() == path.last();
            components.push(CurveComponent {
                vertices: path.iter().map(|&v| vertices[v as usize]).collect(),
                closed,
            });
        }
    }
    components
}

fn sort_components(components: &mut [CurveComponent]) {
    let key = |c: &CurveComponent| {
        c.vertices
            .iter()
            .map(|v| (v[1], v[0]))
            .fold((f64::INFINITY, f64::INFINITY), |acc, p| if p < acc { p } else { acc })
    };
    components.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
}

// ---------------------------------------------------------------------------
// junction resolution
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct Fragment {
    points: Vec<[f64; 2]>,
    /// junction cluster adjacent to each end (front = index 0)
    front: Option<usize>,
    back: Option<usize>,
}

/// End of a fragment: (fragment id, true = front end).
type ArmId = (usize, bool);

/// Detect neighborhoods where two chains pass close to each other (a
/// crossing of two branches of the zero set), cut the chains there, and
/// re-pair the dangling arms so that each branch continues in its own
/// direction. Falls back to the original pairing when re-pairing does not
/// clearly improve tangent continuity.
fn resolve_junctions(
    components: &mut Vec<CurveComponent>,
    cell_diag: f64,
    warnings: &mut Vec<String>,
) {
    let radius = 1.25 * cell_diag;
    let cut_radius = 1.6 * cell_diag;

    let centers = junction_centers(components, radius);
    if centers.is_empty() {
        return;
    }

    let mut fragments: Vec<Fragment> = Vec::new();
    let mut untouched: Vec<CurveComponent> = Vec::new();
    // arm pairs originally joined through a cluster passage
    let mut original_pairs: Vec<(usize, ArmId, ArmId)> = Vec::new();
    let mut eaten = 0usize;

    for comp in components.drain(..) {
        cut_component(
            comp,
            &centers,
            cut_radius,
            &mut fragments,
            &mut untouched,
            &mut original_pairs,
            &mut eaten,
        );
    }
    if eaten > 0 {
        warnings.push(format!(
            "{eaten} component(s) lay entirely inside junction neighborhoods and were dropped"
        ));
    }

    // gather arms per cluster
    let mut arms_at: Vec<Vec<ArmId>> = vec![Vec::new(); centers.len()];
    for (fid, frag) in fragments.iter().enumerate() {
        if let Some(c) = frag.front {
            arms_at[c].push((fid, true));
        }
        if let Some(c) = frag.back {
            arms_at[c].push((fid, false));
        }
    }

    let arm_dir = |arm: ArmId| -> [f64; 2] {
        let pts = &fragments[arm.0].points;
        let k = pts.len();
        let step = 3.min(k - 1);
        let (tip, inner) = if arm.1 { (pts[0], pts[step]) } else { (pts[k - 1], pts[k - 1 - step]) };
        let d = [tip[0] - inner[0], tip[1] - inner[1]];
        let n = (d[0] * d[0] + d[1] * d[1]).sqrt();
        if n == 0.0 { [0.0, 0.0] } else { [d[0] / n, d[1] / n] }
    };

    let mut pairings: Vec<(ArmId, ArmId)> = Vec::new();
    for (cid, arms) in arms_at.iter().enumerate() {
        let k = arms.len();
        if k < 2 {
            continue;
        }
        let dirs: Vec<[f64; 2]> = arms.iter().map(|&a| arm_dir(a)).collect();
        // anti-parallel directions of travel mean one branch continuing
        let score_pair = |i: usize, j: usize| -(dirs[i][0] * dirs[j][0] + dirs[i][1] * dirs[j][1]);
        let mut orig_score = 0.0;
        let mut orig_set: Vec<(usize, usize)> = Vec::new();
        for &(pc, a, b) in &original_pairs {
            if pc != cid {
                continue;
            }
            if let (Some(i), Some(j)) = (
                arms.iter().position(|&x| x == a),
                arms.iter().position(|&x| x == b),
            ) {
                orig_score += score_pair(i, j);
                orig_set.push((i.min(j), i.max(j)));
            }
        }
        let (best_set, best_score) = best_matching(k, &score_pair);
        let keep_original =
            orig_set.len() * 2 == k && best_score - orig_score < 0.25 * (k / 2) as f64;
        let chosen = if keep_original { orig_set } else { best_set };
        if chosen.len() * 2 < k {
            warnings.push(format!(
                "junction near ({:.4}, {:.4}) left {} arm(s) unpaired",
                centers[cid][0],
                centers[cid][1],
                k - 2 * chosen.len()
            ));
        }
        for (i, j) in chosen {
            pairings.push((arms[i], arms[j]));
        }
    }

    *components = stitch_fragments(&fragments, &pairings);
    components.extend(untouched);
}

/// Cluster centers of mutual-proximity vertex pairs.
fn junction_centers(components: &[CurveComponent], radius: f64) -> Vec<[f64; 2]> {
    let bucket = |p: [f64; 2]| -> (i64, i64) {
        ((p[0] / radius).floor() as i64, (p[1] / radius).floor() as i64)
    };
    let mut hash: HashMap<(i64, i64), Vec<(usize, usize)>> = HashMap::new();
    for (ci, comp) in components.iter().enumerate() {
        for vi in 0..comp.distinct_len() {
            hash.entry(bucket(comp.vertices[vi])).or_default().push((ci, vi));
        }
    }
    let mut involved: Vec<(usize, usize)> = Vec::new();
    for (ci, comp) in components.iter().enumerate() {
        let n = comp.distinct_len();
        for vi in 0..n {
            let p = comp.vertices[vi];
            let (bx, by) = bucket(p);
            for gx in bx - 1..=bx + 1 {
                for gy in by - 1..=by + 1 {
                    let Some(list) = hash.get(&(gx, gy)) else { continue };
                    for &(cj, vj) in list {
                        if (cj, vj) <= (ci, vi) {
                            continue;
                        }
                        let q = components[cj].vertices[vj];
                        let d2 = (p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2);
                        if d2 >= radius * radius {
                            continue;
                        }
                        if ci == cj {
                            // ignore short-range self proximity; only a
                            // genuine self-crossing counts
                            let gap = vi.abs_diff(vj);
                            let gap = if comp.closed { gap.min(n - gap) } else { gap };
                            if gap <= (n / 4).max(8) {
                                continue;
                            }
                        }
                        involved.push((ci, vi));
                        involved.push((cj, vj));
                    }
                }
            }
        }
    }
    if involved.is_empty() {
        return Vec::new();
    }
    involved.sort_unstable();
    involved.dedup();

    // single-linkage clustering of the involved vertices
    let pos: Vec<[f64; 2]> = involved
        .iter()
        .map(|&(c, v)| components[c].vertices[v])
        .collect();
    let mut assigned = vec![false; pos.len()];
    let mut centers = Vec::new();
    for i in 0..pos.len() {
        if assigned[i] {
            continue;
        }
        let mut stack = vec![i];
        assigned[i] = true;
        let mut members = Vec::new();
        while let Some(k) = stack.pop() {
            members.push(pos[k]);
            for (m, q) in pos.iter().enumerate() {
                if assigned[m] {
                    continue;
                }
                let d2 = (pos[k][0] - q[0]).powi(2) + (pos[k][1] - q[1]).powi(2);
                if d2 < (2.0 * radius).powi(2) {
                    assigned[m] = true;
                    stack.push(m);
                }
            }
        }
        let len = members.len() as f64;
        let cx = members.iter().map(|p| p[0]).sum::<f64>() / len;
        let cy = members.iter().map(|p| p[1]).sum::<f64>() / len;
        centers.push([cx, cy]);
    }
    centers.sort_by(|a, b| (a[1], a[0]).partial_cmp(&(b[1], b[0])).unwrap());
    centers
}

/// Cut one component at every junction cluster it passes through.
fn cut_component(
    comp: CurveComponent,
    centers: &[[f64; 2]],
    cut_radius: f64,
    fragments: &mut Vec<Fragment>,
    untouched: &mut Vec<CurveComponent>,
    original_pairs: &mut Vec<(usize, ArmId, ArmId)>,
    eaten: &mut usize,
) {
    let n = comp.distinct_len();
    let nearest = |p: [f64; 2]| -> Option<usize> {
        let mut best: Option<(f64, usize)> = None;
        for (cid, c) in centers.iter().enumerate() {
            let d = ((p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2)).sqrt();
            if d < cut_radius && best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, cid));
            }
        }
        best.map(|(_, cid)| cid)
    };
    let near: Vec<Option<usize>> = (0..n).map(|vi| nearest(comp.vertices[vi])).collect();
    if near.iter().all(Option::is_none) {
        untouched.push(comp);
        return;
    }
    if near.iter().all(Option::is_some) {
        *eaten += 1;
        return;
    }

    // walk indices starting outside any cluster
    let start = if comp.closed {
        (0..n).find(|&i| near[i].is_none()).unwrap()
    } else {
        0
    };
    let idx = |k: usize| (start + k) % n;

    // runs of in-cluster vertices along the walk
    let mut runs: Vec<(usize, usize, usize)> = Vec::new(); // (walk start, walk end, cluster)
    let mut k = 0;
    while k < n {
        if let Some(cid) = near[idx(k)] {
            let s = k;
            while k < n && near[idx(k)] == Some(cid) {
                k += 1;
            }
            runs.push((s, k, cid));
        } else {
            k += 1;
        }
    }
    // merge runs separated by fewer than 2 free vertices
    let mut merged: Vec<(usize, usize, usize)> = Vec::new();
    for run in runs {
        match merged.last_mut() {
            Some(last) if run.0 - last.1 < 2 && last.2 == run.2 => last.1 = run.1,
            _ => merged.push(run),
        }
    }
    let runs = merged;

    let take = |a: usize, b: usize| -> Vec<[f64; 2]> {
        (a..b).map(|k| comp.vertices[idx(k)]).collect()
    };

    if comp.closed {
        // fragments live between consecutive runs, cyclically; the last
        // one wraps across the walk seam to the first run
        let m = runs.len();
        let mut ids: Vec<Option<usize>> = vec![None; m];
        for i in 0..m {
            let from = runs[i].1;
            let to = if i + 1 < m { runs[i + 1].0 } else { runs[0].0 + n };
            let pts = take(from, to);
            if pts.len() >= 2 {
                fragments.push(Fragment {
                    points: pts,
                    front: Some(runs[i].2),
                    back: Some(runs[(i + 1) % m].2),
                });
                ids[i] = Some(fragments.len() - 1);
            }
        }
        // the passage through run i originally joined fragment i-1 (back)
        // to fragment i (front)
        for i in 0..m {
            let prev = ids[(i + m - 1) % m];
            let cur = ids[i];
            if let (Some(a), Some(b)) = (prev, cur) {
                if a != b || m == 1 {
                    original_pairs.push((runs[i].2, (a, false), (b, true)));
                }
            }
        }
    } else {
        let mut cursor = 0usize;
        let mut prev_cluster: Option<usize> = None;
        let mut prev_frag: Option<usize> = None;
        for &(s, e, cid) in &runs {
            if s > cursor {
                let pts = take(cursor, s);
                // a 1-point stub is kept when it carries the curve endpoint
                let keep = pts.len() >= 2 || (prev_cluster.is_none() && !pts.is_empty());
                if keep {
                    fragments.push(Fragment { points: pts, front: prev_cluster, back: Some(cid) });
                    if let (Some(pf), Some(pc)) = (prev_frag, prev_cluster) {
                        original_pairs.push((pc, (pf, false), (fragments.len() - 1, true)));
                    }
                    prev_frag = Some(fragments.len() - 1);
                } else {
                    prev_frag = None;
                }
            } else if s == 0 {
                prev_frag = None;
            }
            cursor = e;
            prev_cluster = Some(cid);
        }
        if cursor < n {
            let pts = take(cursor, n);
            if !pts.is_empty() {
                fragments.push(Fragment { points: pts, front: prev_cluster, back: None });
                if let (Some(pf), Some(pc)) = (prev_frag, prev_cluster) {
                    original_pairs.push((pc, (pf, false), (fragments.len() - 1, true)));
                }
            }
        }
    }
}

/// Rebuild polylines from fragments and arm pairings. Chains are walked
/// from their free ends first; whatever remains is a cycle.
fn stitch_fragments(fragments: &[Fragment], pairings: &[(ArmId, ArmId)]) -> Vec<CurveComponent> {
    let mut link: HashMap<ArmId, ArmId> = HashMap::new();
    for &(a, b) in pairings {
        link.insert(a, b);
        link.insert(b, a);
    }
    let mut used = vec![false; fragments.len()];
    let mut out = Vec::new();

    let walk = |start: usize, begin_front: bool, used: &mut Vec<bool>| {
        let mut pts: Vec<[f64; 2]> = Vec::new();
        let mut cur = start;
        let mut enter_front = begin_front;
        let mut closed = false;
        loop {
            used[cur] = true;
            let frag = &fragments[cur].points;
            if enter_front {
                pts.extend(frag.iter().copied());
            } else {
                pts.extend(frag.iter().rev().copied());
            }
            match link.get(&(cur, !enter_front)) {
                Some(&(nf, nfront)) => {
                    if nf == start && nfront == begin_front {
                        closed = true;
                        break;
                    }
                    if used[nf] {
                        break;
                    }
                    cur = nf;
                    enter_front = nfront;
                }
                None => break,
            }
        }
        if closed && pts.len() > 2 {
            let first = pts[0];
            pts.push(first);
        }
        CurveComponent { vertices: pts, closed }
    };

    // chains first: start from a fragment end with no continuation
    for start in 0..fragments.len() {
        if used[start] {
            continue;
        }
        let free = [true, false]
            .into_iter()
            .find(|&front| !link.contains_key(&(start, front)));
        if let Some(begin_front) = free {
            out.push(walk(start, begin_front, &mut used));
        }
    }
    // the rest are cycles
    for start in 0..fragments.len() {
        if !used[start] {
            out.push(walk(start, true, &mut used));
        }
    }
    out
}

/// Exhaustive matching on a handful of arms, maximizing first the number
/// of pairs and then the direction score; with an odd arm count one arm
/// stays unmatched.
fn best_matching(k: usize, score: &dyn Fn(usize, usize) -> f64) -> (Vec<(usize, usize)>, f64) {
    #[allow(clippy::type_complexity)]
    fn recurse(
        k: usize,
        taken: &mut Vec<bool>,
        current: &mut Vec<(usize, usize)>,
        acc: f64,
        score: &dyn Fn(usize, usize) -> f64,
        best: &mut (usize, f64, Vec<(usize, usize)>),
    ) {
        let Some(i) = (0..k).find(|&i| !taken[i]) else {
            if (current.len(), acc) > (best.0, best.1) {
                *best = (current.len(), acc, current.clone());
            }
            return;
        };
        taken[i] = true;
        for j in i + 1..k {
            if taken[j] {
                continue;
            }
            taken[j] = true;
            current.push((i, j));
            recurse(k, taken, current, acc + score(i, j), score, best);
            current.pop();
            taken[j] = false;
        }
        // the branch where arm i stays unmatched
        recurse(k, taken, current, acc, score, best);
        taken[i] = false;
    }
    let mut best = (0usize, f64::NEG_INFINITY, Vec::new());
    let mut taken = vec![false; k];
    let mut current = Vec::new();
    recurse(k, &mut taken, &mut current, 0.0, score, &mut best);
    (best.2, best.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span_y(c: &CurveComponent) -> (f64, f64) {
        c.vertices.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v[1]), hi.max(v[1]))
        })
    }

    #[test]
    fn vertical_line() {
        let f = |x: f64, _y: f64| x;
        let r = trace_zero_set(&f, &GridSpec::square(64)).unwrap();
        assert_eq!(r.components.len(), 1);
        let c = &r.components[0];
        assert!(!c.closed);
        for v in &c.vertices {
            assert!(v[0].abs() < 1e-10, "vertex off the line: {:?}", v);
        }
        let (lo, hi) = span_y(c);
        assert!(lo < -0.999 && hi > 0.999);
    }

    #[test]
    fn circle_half_radius() {
        let f = |x: f64, y: f64| x * x + y * y - 0.25;
        let r = trace_zero_set(&f, &GridSpec::square(128)).unwrap();
        assert_eq!(r.components.len(), 1);
        let c = &r.components[0];
        assert!(c.closed);
        let len = c.polyline_length();
        assert!(
            (len - std::f64::consts::PI).abs() < 0.01 * std::f64::consts::PI,
            "length {len}"
        );
        for v in &c.vertices {
            assert!(f(v[0], v[1]).abs() < 1e-10 * 2.0);
        }
    }

    #[test]
    fn crossing_lines_resolve_into_two() {
        // zero set of xy is the two axes crossing at the origin
        let f = |x: f64, y: f64| x * y;
        let r = trace_zero_set(&f, &GridSpec::square(64)).unwrap();
        assert_eq!(r.components.len(), 2, "warnings: {:?}", r.warnings);
        for c in &r.components {
            assert!(!c.closed);
            // each component stays on one axis
            let on_x_axis = c.vertices.iter().all(|v| v[1].abs() < 0.2);
            let on_y_axis = c.vertices.iter().all(|v| v[0].abs() < 0.2);
            assert!(on_x_axis || on_y_axis, "mixed branch component");
        }
    }

    #[test]
    fn line_and_circle_crossing() {
        // vertical line through a circle: 2 components, one open, one closed
        let f = |x: f64, y: f64| x * (x * x + y * y - 0.25);
        let r = trace_zero_set(&f, &GridSpec::square(128)).unwrap();
        assert_eq!(r.components.len(), 2, "warnings: {:?}", r.warnings);
        let open: Vec<_> = r.components.iter().filter(|c| !c.closed).collect();
        let closed: Vec<_> = r.components.iter().filter(|c| c.closed).collect();
        assert_eq!(open.len(), 1);
        assert_eq!(closed.len(), 1);
        for v in &open[0].vertices {
            assert!(v[0].abs() < 1e-8, "line vertex {:?}", v);
        }
        for v in &closed[0].vertices {
            let rr = (v[0] * v[0] + v[1] * v[1]).sqrt();
            assert!((rr - 0.5).abs() < 1e-6, "circle vertex {:?}", v);
        }
    }

    #[test]
    fn polish_examples() {
        let f1 = |x: f64, _y: f64| x;
        let p = polish_point(&f1, [0.001, 0.5], [1.0, 0.0], 0.01, 1e-12);
        assert!(p.converged);
        assert!(p.point[0].abs() < 1e-12);
        assert!((p.point[1] - 0.5).abs() < 1e-15);

        let f2 = |x: f64, y: f64| x * x + y * y - 0.25;
        let p = polish_point(&f2, [0.51, 0.0], [1.0, 0.0], 0.05, 1e-12);
        assert!(p.converged);
        assert!((p.point[0] - 0.5).abs() < 1e-11);
    }

    #[test]
    fn polish_keeps_seed_when_no_root() {
        let f = |_x: f64, _y: f64| 1.0;
        let p = polish_point(&f, [0.3, 0.3], [1.0, 0.0], 0.01, 1e-12);
        assert!(!p.converged);
        assert_eq!(p.point, [0.3, 0.3]);
    }

    #[test]
    fn torus_45_field_structure() {
        // the resultant polynomial of the (4, 5) tangle: a vertical line, a
        // closed lens through (0, +/-0.4175), and four open corner branches
        // confined to |y| > 0.6
        let f = |x: f64, y: f64| {
            x * (16.0 * y.powi(4) - 20.0 * y * y + 16.0 * x * x * y * y - 4.0 * x * x + 3.0)
        };
        let r = trace_zero_set(&f, &GridSpec::square(256)).unwrap();
        let line: Vec<_> = r
            .components
            .iter()
            .filter(|c| c.vertices.iter().all(|v| v[0].abs() < 1e-8))
            .collect();
        assert_eq!(line.len(), 1, "warnings: {:?}", r.warnings);
        assert!(!line[0].closed);
        let (lo, hi) = span_y(line[0]);
        assert!(lo < -0.999 && hi > 0.999);

        let closed: Vec<_> = r.components.iter().filter(|c| c.closed).collect();
        assert_eq!(closed.len(), 1);
        let (lo, hi) = span_y(closed[0]);
        let y0 = ((5.0 - 13.0f64.sqrt()) / 8.0).sqrt();
        assert!((lo + y0).abs() < 0.02 && (hi - y0).abs() < 0.02);

        // everything else is a corner branch with |y| > 0.6 throughout
        let rest: Vec<_> = r
            .components
            .iter()
            .filter(|c| !c.closed && c.vertices.iter().any(|v| v[0].abs() >= 1e-8))
            .collect();
        assert_eq!(rest.len(), 4);
        for c in &rest {
            assert!(c.vertices.iter().all(|v| v[1].abs() > 0.6));
        }
    }

    #[test]
    fn refinement_stability_circle() {
        let f = |x: f64, y: f64| x * x + y * y - 0.09;
        let a = trace_zero_set(&f, &GridSpec::square(64)).unwrap();
        let b = trace_zero_set(&f, &GridSpec::square(128)).unwrap();
        assert_eq!(a.components.len(), b.components.len());
        assert_eq!(a.components[0].closed, b.components[0].closed);
        // the coarse and fine curves stay within two coarse cell diagonals
        let coarse_diag = GridSpec::square(64).cell_diagonal();
        let mut worst = 0.0f64;
        for v in &a.components[0].vertices {
            let mut best = f64::INFINITY;
            for w in &b.components[0].vertices {
                let d = ((v[0] - w[0]).powi(2) + (v[1] - w[1]).powi(2)).sqrt();
                best = best.min(d);
            }
            worst = worst.max(best);
        }
        assert!(worst < 2.0 * coarse_diag, "Hausdorff {worst}");
    }

    #[test]
    fn rejects_too_coarse_grid() {
        let f = |x: f64, _y: f64| x;
        assert!(trace_zero_set(&f, &GridSpec::square(8)).is_err());
    }
}
