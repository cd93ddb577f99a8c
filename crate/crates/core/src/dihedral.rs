//! Binary dihedral components of a 2-stranded tangle from branched-cover
//! homology data.
//!
//! The traceless binary dihedral subspace of any 2-stranded tangle in a
//! Z/2-homology ball is one arc plus `(n-1)/2` circles, where `n` is the
//! odd order of the torsion eigenspace `A_-` of the branched double cover.
//! Every component maps to a straight line in the pillowcase whose
//! direction comes from the values `h(ba)` and `h(bc^{-1})` of the
//! cohomology generator on the two lifted boundary loops; circles are
//! offset by an angle pair per nontrivial character class.

use crate::pillowcase::LiftedPath;
use crate::{gcd, Error, Result};
use std::f64::consts::PI;

/// Input data describing the branched double cover of a tangle.
#[derive(Debug, Clone)]
pub struct BranchedCoverData {
    pub h_ba: i64,
    pub h_bc: i64,
    /// odd order of the torsion eigenspace
    pub a_minus_order: u64,
    /// one `(l1, l2)` angle pair per nontrivial character class
    pub offsets: Vec<(f64, f64)>,
}

impl BranchedCoverData {
    pub fn new(h_ba: i64, h_bc: i64, a_minus_order: u64, offsets: Vec<(f64, f64)>) -> Result<Self> {
        if a_minus_order == 0 || a_minus_order.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "order of A_- must be odd and positive, got {a_minus_order}"
            )));
        }
        if h_ba == 0 && h_bc == 0 {
            return Err(Error::InvalidParameter(
                "h(ba) and h(bc^-1) cannot both vanish".into(),
            ));
        }
        let expected = ((a_minus_order - 1) / 2) as usize;
        if offsets.len() != expected {
            return Err(Error::InvalidParameter(format!(
                "need {} offset pair(s) for |A_-| = {}, got {}",
                expected,
                a_minus_order,
                offsets.len()
            )));
        }
        Ok(BranchedCoverData { h_ba, h_bc, a_minus_order, offsets })
    }
}

/// Kind of a binary dihedral component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BdKind {
    Arc,
    Circle,
}

/// One binary dihedral component together with its pillowcase line.
#[derive(Debug, Clone)]
pub struct BdComponentCurve {
    pub kind: BdKind,
    pub path: LiftedPath,
}

/// Sample the straight pillowcase line `t -> (h_ba t, (h_ba - h_bc) t)`
/// over `[0, t_max]`, shifted by `offset`.
pub(crate) fn line_path(
    h_ba: i64,
    h_bc: i64,
    offset: (f64, f64),
    t_max: f64,
    samples: usize,
    closed: bool,
) -> LiftedPath {
    let slope_gamma = h_ba as f64;
    let slope_theta = (h_ba - h_bc) as f64;
    let points = (0..=samples)
        .map(|k| {
            let t = t_max * k as f64 / samples as f64;
            [slope_gamma * t - offset.0, slope_theta * t - offset.1]
        })
        .collect();
    LiftedPath { points, closed }
}

/// The arc and circles of the binary dihedral subspace as pillowcase lifts.
pub fn bd_components(data: &BranchedCoverData, samples: usize) -> Vec<BdComponentCurve> {
    let mut out = Vec::with_capacity(1 + data.offsets.len());
    out.push(BdComponentCurve {
        kind: BdKind::Arc,
        path: line_path(data.h_ba, data.h_bc, (0.0, 0.0), PI, samples, false),
    });
    for &offset in &data.offsets {
        out.push(BdComponentCurve {
            kind: BdKind::Circle,
            path: line_path(data.h_ba, data.h_bc, offset, 2.0 * PI, samples, true),
        });
    }
    out
}

/// The ratio `h(ba) / h(bc^{-1})`, reduced, with `None` denominator for the
/// infinite slope. Invariant under flipping the signs of both values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slope {
    pub num: i64,
    pub den: Option<i64>,
}

impl std::fmt::Display for Slope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.den {
            Some(1) => write!(f, "{}", self.num),
            Some(d) => write!(f, "{}/{}", self.num, d),
            None => write!(f, "inf"),
        }
    }
}

/// Slope invariant of the tangle boundary marking.
pub fn bd_slope(data: &BranchedCoverData) -> Slope {
    if data.h_bc == 0 {
        return Slope { num: 1, den: None };
    }
    let g = gcd(data.h_ba, data.h_bc);
    let (mut num, mut den) = (data.h_ba / g, data.h_bc / g);
    if den < 0 {
        num = -num;
        den = -den;
    }
    Slope { num, den: Some(den) }
}
