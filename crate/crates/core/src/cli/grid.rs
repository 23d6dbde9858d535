//! Sampling grids: `--grid "x1:-4:4:41,x2:-4:4:41,x3:-4:4:41"`.
//!
//! Ranged axes are `name:lo:hi:samples` and sample `lo..=hi` uniformly;
//! fixed coordinates (plane4d only) are `name=value`.

use std::f64::consts::{PI, TAU};
use std::fmt;

use super::state_spec::parse_real;
use crate::{Error, Result};

/// Largest number of grid points accepted.
pub const MAX_GRID_POINTS: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridKind {
    Volume,
    Sphere,
    Plane4d,
}

impl GridKind {
    fn axis_names(self) -> &'static [&'static str] {
        match self {
            GridKind::Volume => &["x1", "x2", "x3"],
            GridKind::Sphere => &["theta", "phi"],
            GridKind::Plane4d => &["q1", "p1", "q2", "p2"],
        }
    }

    fn ranged_count(self) -> usize {
        match self {
            GridKind::Volume => 3,
            GridKind::Sphere | GridKind::Plane4d => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxisRange {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub samples: usize,
}

impl AxisRange {
    pub fn values(&self) -> Vec<f64> {
        let step = (self.hi - self.lo) / (self.samples - 1) as f64;
        let mut v: Vec<f64> = (0..self.samples).map(|i| self.lo + i as f64 * step).collect();
        v[self.samples - 1] = self.hi;
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub kind: GridKind,
    /// Ranged axes in canonical order; the last varies fastest.
    pub axes: Vec<AxisRange>,
    /// Fixed coordinates in canonical order.
    pub fixed: Vec<(String, f64)>,
}

impl GridSpec {
    pub fn parse(kind: GridKind, text: &str) -> Result<Self> {
        let names = kind.axis_names();
        let mut axes: Vec<AxisRange> = Vec::new();
        let mut fixed: Vec<(String, f64)> = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let name = part.split([':', '=']).next().unwrap_or("").trim();
            if !names.contains(&name) {
                return Err(Error::Validation(format!(
                    "unknown grid axis '{name}'; expected one of {}",
                    names.join(", ")
                )));
            }
            if axes.iter().any(|a| a.name == name) || fixed.iter().any(|(n, _)| n == name) {
                return Err(Error::Validation(format!("grid axis '{name}' given twice")));
            }
            if let Some((_, value)) = part.split_once('=') {
                if kind != GridKind::Plane4d {
                    return Err(Error::Validation(format!(
                        "fixed coordinate '{part}' only applies to plane4d grids"
                    )));
                }
                fixed.push((name.to_string(), parse_real(value)?));
                continue;
            }
            let fields: Vec<&str> = part.split(':').collect();
            if fields.len() != 4 {
                return Err(Error::Validation(format!(
                    "grid axis '{part}' must be name:lo:hi:samples"
                )));
            }
            let lo = parse_real(fields[1])?;
            let hi = parse_real(fields[2])?;
            let samples: usize = fields[3]
                .trim()
                .parse()
                .map_err(|_| Error::Validation(format!("sample count '{}' is not an integer", fields[3])))?;
            if samples < 2 {
                return Err(Error::Validation(format!("axis '{name}' needs at least 2 samples")));
            }
            if lo >= hi {
                return Err(Error::Validation(format!(
                    "axis '{name}' needs lo < hi, got {lo} and {hi}"
                )));
            }
            if name == "theta" && (lo < 0.0 || hi > PI + 1e-12) {
                return Err(Error::Validation("theta must lie within [0, pi]".into()));
            }
            let hi = if name == "theta" { hi.min(PI) } else { hi };
            axes.push(AxisRange {
                name: name.to_string(),
                lo,
                hi,
                samples,
            });
        }
        if axes.len() != kind.ranged_count() {
            return Err(Error::Validation(format!(
                "{} grid needs {} ranged axes, got {}",
                kind,
                kind.ranged_count(),
                axes.len()
            )));
        }
        if kind == GridKind::Plane4d {
            for n in names {
                if !axes.iter().any(|a| a.name == *n) && !fixed.iter().any(|(f, _)| f == n) {
                    fixed.push((n.to_string(), 0.0));
                }
            }
        }
        let order = |n: &str| names.iter().position(|x| *x == n).unwrap_or(usize::MAX);
        axes.sort_by_key(|a| order(&a.name));
        fixed.sort_by_key(|(n, _)| order(n));
        let spec = GridSpec { kind, axes, fixed };
        let points = spec.len();
        if points > MAX_GRID_POINTS {
            return Err(Error::Capacity(format!(
                "grid has {points} points, limit is {MAX_GRID_POINTS}"
            )));
        }
        Ok(spec)
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.samples).fold(1usize, usize::saturating_mul)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All points in row-major order, each listing the ranged coordinates
    /// in canonical axis order.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let values: Vec<Vec<f64>> = self.axes.iter().map(AxisRange::values).collect();
        let mut out = Vec::with_capacity(self.len());
        let mut idx = vec![0usize; values.len()];
        loop {
            out.push(idx.iter().zip(&values).map(|(&i, v)| v[i]).collect());
            let mut d = values.len();
            loop {
                if d == 0 {
                    return out;
                }
                d -= 1;
                idx[d] += 1;
                if idx[d] < values[d].len() {
                    break;
                }
                idx[d] = 0;
            }
        }
    }

    /// A sphere grid covering `[0, π] × [0, 2π)` without duplicating `φ = 2π`.
    pub fn full_sphere(n_theta: usize, n_phi: usize) -> Result<Self> {
        let phi_hi = TAU * (n_phi as f64 - 1.0) / n_phi as f64;
        GridSpec::parse(
            GridKind::Sphere,
            &format!("theta:0:{PI}:{n_theta},phi:0:{phi_hi}:{n_phi}"),
        )
    }
}

impl fmt::Display for GridKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GridKind::Volume => "volume",
            GridKind::Sphere => "sphere",
            GridKind::Plane4d => "plane4d",
        })
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .axes
            .iter()
            .map(|a| format!("{}:{}:{}:{}", a.name, a.lo, a.hi, a.samples))
            .collect();
        parts.extend(self.fixed.iter().map(|(n, v)| format!("{n}={v}")));
        write!(f, "{}", parts.join(","))
    }
}
