//! Pipeline driver and artifact emission (JSON, CSV, SVG).

use crate::census::{self, ImageCurve, TopologySummary};
use crate::dihedral::{self, BdKind, BranchedCoverData};
use crate::pillowcase::{self, LiftedPath};
use crate::pretzel;
use crate::quat;
use crate::torus::{self, ComponentKind, TorusTangle, WPoint};
use crate::zeroset::GridSpec;
use crate::{Error, Result};
use serde::Serialize;
use std::f64::consts::PI;
use std::path::PathBuf;

/// Run parameters shared by the subcommands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub grid: usize,
    pub samples: usize,
    pub svg: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { grid: 1024, samples: 2048, svg: None, csv: None, json: None }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid < 64 {
            return Err(Error::InvalidParameter(format!(
                "grid must be at least 64, got {}",
                self.grid
            )));
        }
        if self.samples < 256 {
            return Err(Error::InvalidParameter(format!(
                "samples must be at least 256, got {}",
                self.samples
            )));
        }
        Ok(())
    }
}

/// Round to 12 significant digits; applied to every emitted number.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let d = 11 - x.abs().log10().floor() as i32;
    if d.abs() > 300 {
        return x;
    }
    let scale = 10f64.powi(d);
    (x * scale).round() / scale
}

fn fmt12(x: f64) -> String {
    format!("{}", sig12(x))
}

#[derive(Debug, Clone, Serialize)]
pub struct IncidenceReport {
    pub other: usize,
    pub x: f64,
    pub y: f64,
    pub tau: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentReport {
    pub id: usize,
    pub kind: ComponentKind,
    pub closed: bool,
    pub vertices: usize,
    pub diagonal_crossings: usize,
    pub generators: u64,
    pub incidences: Vec<IncidenceReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Totals {
    pub bd: u64,
    pub nonbd: u64,
    pub total: u64,
}

/// The machine-readable run report.
#[derive(Debug, Clone, Serialize)]
pub struct TangleReport {
    pub kind: String,
    pub parameters: serde_json::Value,
    pub grid: Option<usize>,
    pub samples: usize,
    pub components: Vec<ComponentReport>,
    pub totals: Totals,
    pub topology: TopologySummary,
    pub notes: Vec<String>,
}

/// A curve prepared for plotting and CSV emission.
#[derive(Debug, Clone)]
pub struct PlotCurve {
    pub id: usize,
    pub kind: ComponentKind,
    pub closed: bool,
    pub lift: LiftedPath,
    /// solution-cube coordinates aligned with `lift.points` (torus runs)
    pub w: Option<Vec<WPoint>>,
}

/// Full analysis result: report plus plottable curves.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub report: TangleReport,
    pub curves: Vec<PlotCurve>,
}

// ---------------------------------------------------------------------------
// torus pipeline
// ---------------------------------------------------------------------------

/// Run the torus-knot pipeline and assemble the report.
pub fn analyze_torus(
    p: i64,
    q: i64,
    r: Option<i64>,
    s: Option<i64>,
    config: &RunConfig,
) -> Result<Analysis> {
    config.validate()?;
    let tangle = match (r, s) {
        (Some(r), Some(s)) => TorusTangle::new(p, q, r, s)?,
        (None, None) => TorusTangle::from_pq(p, q)?,
        _ => {
            return Err(Error::InvalidParameter(
                "give both --r and --s or neither".into(),
            ))
        }
    };
    let grid = GridSpec::square(config.grid);
    let variety = torus::compute_components_sampled(&tangle, &grid, config.samples)?;
    let mut notes = variety.warnings.clone();

    let mut curves = Vec::with_capacity(variety.components.len());
    let mut image_curves = Vec::with_capacity(variety.components.len());
    for (id, comp) in variety.components.iter().enumerate() {
        let lift = torus::image_path(&tangle, comp)?;
        image_curves.push(ImageCurve { kind: comp.kind, closed: comp.closed, path: lift.clone() });
        curves.push(PlotCurve {
            id,
            kind: comp.kind,
            closed: comp.closed,
            lift,
            w: Some(comp.points.clone()),
        });
    }

    verify_representations(&tangle, &variety.components)?;

    let counts = census::count_generators(&image_curves)?;
    notes.extend(counts.notes.iter().cloned());
    let topology = census::topology_report(&variety.components);

    let components = variety
        .components
        .iter()
        .zip(&counts.components)
        .enumerate()
        .map(|(id, (comp, census))| ComponentReport {
            id,
            kind: comp.kind,
            closed: comp.closed,
            vertices: comp.distinct_len(),
            diagonal_crossings: census.diagonal_crossings,
            generators: census.generators,
            incidences: comp
                .incidences
                .iter()
                .map(|i| IncidenceReport {
                    other: i.other,
                    x: sig12(i.at.x),
                    y: sig12(i.at.y),
                    tau: sig12(i.at.tau),
                })
                .collect(),
        })
        .collect();

    let report = TangleReport {
        kind: "torus".into(),
        parameters: serde_json::json!({
            "p": tangle.p, "q": tangle.q, "r": tangle.r, "s": tangle.s,
        }),
        grid: Some(config.grid),
        samples: config.samples,
        components,
        totals: Totals { bd: counts.bd, nonbd: counts.nonbd, total: counts.total },
        topology,
        notes,
    };
    Ok(Analysis { report, curves })
}

/// Check every solution point against the quaternion holonomy oracle:
/// all four meridian images must be traceless and the cosine formulas must
/// agree with the direct word evaluation.
fn verify_representations(tangle: &TorusTangle, components: &[torus::RepComponent]) -> Result<()> {
    let tol = crate::residual_tolerance();
    for (ci, comp) in components.iter().enumerate() {
        let stride = (comp.points.len() / 64).max(1);
        for w in comp.points.iter().step_by(stride) {
            let pair = quat::holonomy_pair(w)?;
            let meridians = quat::meridian_images(&pair, tangle);
            let trace = meridians.max_trace();
            if trace > tol {
                return Err(Error::Invariant(format!(
                    "component {ci}: meridian trace {trace:.3e} at ({}, {}, {})",
                    w.x, w.y, w.tau
                )));
            }
            let (cg_q, ct_q, ctg_q) = quat::pillow_from_quats(&meridians, &pair, tangle)?;
            let (cg, ct, ctg) = torus::pillow_image(tangle, w)?;
            let err = (cg - cg_q).abs().max((ct - ct_q).abs()).max((ctg - ctg_q).abs());
            if err > tol {
                return Err(Error::Invariant(format!(
                    "component {ci}: restriction formulas disagree with the holonomy \
                     oracle by {err:.3e} at ({}, {}, {})",
                    w.x, w.y, w.tau
                )));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// pretzel pipeline
// ---------------------------------------------------------------------------

/// Run the `(-2, 3, n)` pretzel pipeline.
pub fn analyze_pretzel(n: i64, config: &RunConfig) -> Result<Analysis> {
    config.validate()?;
    let curves_238 = pretzel::family_238_curves(n, config.samples)?;
    let expected = pretzel::family_238_generator_count(n)?;

    // the non-dihedral closure is a circle made of two semicircles with
    // the same image segment; counting happens per semicircle
    let image_curves = vec![
        ImageCurve {
            kind: ComponentKind::BinaryDihedral,
            closed: false,
            path: curves_238.bd.clone(),
        },
        ImageCurve {
            kind: ComponentKind::NonBinaryDihedral,
            closed: false,
            path: curves_238.nonbd.clone(),
        },
        ImageCurve {
            kind: ComponentKind::NonBinaryDihedral,
            closed: false,
            path: curves_238.nonbd.clone(),
        },
    ];
    let counts = census::count_generators(&image_curves)?;
    if (counts.bd, counts.nonbd) != (expected.bd, expected.nonbd) {
        return Err(Error::Invariant(format!(
            "crossing census ({}, {}) disagrees with the closed forms ({}, {}) for n = {n}",
            counts.bd, counts.nonbd, expected.bd, expected.nonbd
        )));
    }
    let mut notes = counts.notes.clone();
    notes.push(pretzel::formula_discrepancy_note(n));

    let components = counts
        .components
        .iter()
        .enumerate()
        .map(|(id, c)| ComponentReport {
            id,
            kind: c.kind,
            closed: c.closed,
            vertices: config.samples + 1,
            diagonal_crossings: c.diagonal_crossings,
            generators: c.generators,
            incidences: Vec::new(),
        })
        .collect();

    let curves = vec![
        PlotCurve {
            id: 0,
            kind: ComponentKind::BinaryDihedral,
            closed: false,
            lift: curves_238.bd,
            w: None,
        },
        PlotCurve {
            id: 1,
            kind: ComponentKind::NonBinaryDihedral,
            closed: false,
            lift: curves_238.nonbd,
            w: None,
        },
    ];

    let report = TangleReport {
        kind: "pretzel".into(),
        parameters: serde_json::json!({ "p": -2, "q": 3, "n": n }),
        grid: None,
        samples: config.samples,
        components,
        totals: Totals { bd: counts.bd, nonbd: counts.nonbd, total: counts.total },
        // the two semicircles close up into one circle meeting the arc at
        // the parameters pi/6 and 5 pi/6
        topology: TopologySummary {
            arcs: 1,
            circles: 1,
            incidences: 2,
            shape: Some("phi".into()),
        },
        notes,
    };
    Ok(Analysis { report, curves })
}

// ---------------------------------------------------------------------------
// binary dihedral pipeline
// ---------------------------------------------------------------------------

/// Run the general binary dihedral classification.
pub fn analyze_bd(
    h_ba: i64,
    h_bc: i64,
    a_minus_order: u64,
    offsets: Vec<(f64, f64)>,
    config: &RunConfig,
) -> Result<Analysis> {
    config.validate()?;
    let data = BranchedCoverData::new(h_ba, h_bc, a_minus_order, offsets)?;
    let comps = dihedral::bd_components(&data, config.samples);
    let image_curves: Vec<ImageCurve> = comps
        .iter()
        .map(|c| ImageCurve {
            kind: ComponentKind::BinaryDihedral,
            closed: c.kind == BdKind::Circle,
            path: c.path.clone(),
        })
        .collect();
    let counts = census::count_generators(&image_curves)?;
    let mut notes = counts.notes.clone();
    notes.push(format!("slope invariant h(ba)/h(bc^-1) = {}", dihedral::bd_slope(&data)));

    let components = counts
        .components
        .iter()
        .enumerate()
        .map(|(id, c)| ComponentReport {
            id,
            kind: c.kind,
            closed: c.closed,
            vertices: config.samples + 1,
            diagonal_crossings: c.diagonal_crossings,
            generators: c.generators,
            incidences: Vec::new(),
        })
        .collect();
    let curves = comps
        .iter()
        .enumerate()
        .map(|(id, c)| PlotCurve {
            id,
            kind: ComponentKind::BinaryDihedral,
            closed: c.kind == BdKind::Circle,
            lift: c.path.clone(),
            w: None,
        })
        .collect();

    let offsets_json: Vec<serde_json::Value> = data
        .offsets
        .iter()
        .map(|(a, b)| serde_json::json!([sig12(*a), sig12(*b)]))
        .collect();
    let report = TangleReport {
        kind: "bd".into(),
        parameters: serde_json::json!({
            "h_ba": data.h_ba,
            "h_bc": data.h_bc,
            "a_minus_order": data.a_minus_order,
            "offsets": offsets_json,
        }),
        grid: None,
        samples: config.samples,
        components,
        totals: Totals { bd: counts.bd, nonbd: 0, total: counts.total },
        topology: TopologySummary {
            arcs: 1,
            circles: comps.len() - 1,
            incidences: 0,
            shape: None,
        },
        notes,
    };
    Ok(Analysis { report, curves })
}

// ---------------------------------------------------------------------------
// artifact emission
// ---------------------------------------------------------------------------

/// Serialize the report as pretty JSON with a trailing newline.
pub fn report_json(report: &TangleReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

/// CSV point cloud: one row per sampled point of every curve.
pub fn curves_csv(curves: &[PlotCurve]) -> String {
    let mut out = String::from("component_id,kind,param,x,y,tau,gamma,theta\n");
    for curve in curves {
        let kind = match curve.kind {
            ComponentKind::BinaryDihedral => "binary-dihedral",
            ComponentKind::NonBinaryDihedral => "non-binary-dihedral",
        };
        for (i, pt) in curve.lift.points.iter().enumerate() {
            let reduced = pillowcase::reduce(pt[0], pt[1]);
            let (x, y, tau) = match &curve.w {
                Some(w) => {
                    let p = w[i.min(w.len() - 1)];
                    (fmt12(p.x), fmt12(p.y), fmt12(p.tau))
                }
                None => (String::new(), String::new(), String::new()),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                curve.id,
                kind,
                i,
                x,
                y,
                tau,
                fmt12(reduced.gamma),
                fmt12(reduced.theta)
            ));
        }
    }
    out
}

/// Deterministic SVG of the fundamental domain with the image curves.
///
/// Frame: `[0, pi] x [0, 2 pi]` drawn at 400 x 800 user units, `gamma`
/// rightward and `theta` upward; dihedral curves and non-dihedral curves
/// carry distinct style classes and the diagonal is dashed.
pub fn curves_svg(curves: &[PlotCurve]) -> String {
    const SCALE: f64 = 400.0 / PI;
    let map = |gamma: f64, theta: f64| (gamma * SCALE, 800.0 - theta * SCALE);
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-12 -12 424 824\" \
         width=\"424\" height=\"824\">\n",
    );
    s.push_str(
        "<style>path,line,rect{fill:none;stroke-width:2;stroke-linejoin:round;}\
         .frame{stroke:#202020;}.diag{stroke:#909090;stroke-dasharray:8 6;}\
         .bd{stroke:#2166ac;}.nonbd{stroke:#b2182b;}</style>\n",
    );
    s.push_str("<rect class=\"frame\" x=\"0\" y=\"0\" width=\"400\" height=\"800\"/>\n");
    let (x0, y0) = map(0.0, 0.0);
    let (x1, y1) = map(PI, PI);
    s.push_str(&format!(
        "<line class=\"diag\" x1=\"{x0:.3}\" y1=\"{y0:.3}\" x2=\"{x1:.3}\" y2=\"{y1:.3}\"/>\n"
    ));
    for curve in curves {
        let class = match curve.kind {
            ComponentKind::BinaryDihedral => "bd",
            ComponentKind::NonBinaryDihedral => "nonbd",
        };
        // draw in reduced coordinates, breaking the polyline at folds
        let mut subpaths: Vec<Vec<(f64, f64)>> = Vec::new();
        let mut current: Vec<(f64, f64)> = Vec::new();
        let mut prev: Option<pillowcase::PillowPoint> = None;
        for pt in &curve.lift.points {
            let red = pillowcase::reduce(pt[0], pt[1]);
            let jump = prev.is_some_and(|p| {
                ((p.gamma - red.gamma).powi(2) + (p.theta - red.theta).powi(2)).sqrt() > 0.35
            });
            if jump && !current.is_empty() {
                subpaths.push(std::mem::take(&mut current));
            }
            current.push(map(red.gamma, red.theta));
            prev = Some(red);
        }
        if !current.is_empty() {
            subpaths.push(current);
        }
        for sub in subpaths {
            if sub.len() < 2 {
                continue;
            }
            let mut d = String::new();
            for (k, (x, y)) in sub.iter().enumerate() {
                let cmd = if k == 0 { 'M' } else { 'L' };
                d.push_str(&format!("{cmd}{x:.3} {y:.3}"));
            }
            s.push_str(&format!("<path class=\"{class}\" d=\"{d}\"/>\n"));
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Write whichever artifacts the configuration asks for.
pub fn write_artifacts(analysis: &Analysis, config: &RunConfig) -> Result<()> {
    if let Some(path) = &config.json {
        std::fs::write(path, report_json(&analysis.report)?)?;
    }
    if let Some(path) = &config.csv {
        std::fs::write(path, curves_csv(&analysis.curves))?;
    }
    if let Some(path) = &config.svg {
        std::fs::write(path, curves_svg(&analysis.curves))?;
    }
    Ok(())
}

/// End-to-end torus run: analyze, write artifacts, return the report.
pub fn run_torus(
    p: i64,
    q: i64,
    r: Option<i64>,
    s: Option<i64>,
    config: &RunConfig,
) -> Result<TangleReport> {
    let analysis = analyze_torus(p, q, r, s, config)?;
    write_artifacts(&analysis, config)?;
    Ok(analysis.report)
}

/// End-to-end pretzel run.
pub fn run_pretzel(n: i64, config: &RunConfig) -> Result<TangleReport> {
    let analysis = analyze_pretzel(n, config)?;
    write_artifacts(&analysis, config)?;
    Ok(analysis.report)
}

/// End-to-end binary dihedral run.
pub fn run_bd(
    h_ba: i64,
    h_bc: i64,
    a_minus_order: u64,
    offsets: Vec<(f64, f64)>,
    config: &RunConfig,
) -> Result<TangleReport> {
    let analysis = analyze_bd(h_ba, h_bc, a_minus_order, offsets, config)?;
    write_artifacts(&analysis, config)?;
    Ok(analysis.report)
}
