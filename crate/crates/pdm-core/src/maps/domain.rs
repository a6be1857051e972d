use serde::{Deserialize, Serialize};

use crate::error::Point;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegionKind {
    FullPlane,
    /// `lo ≤ y₂ < hi`.
    StripY2 { lo: f64, hi: f64 },
    PuncturedPlane,
    /// `|atan2(y₂, y₁)| < half_angle`, origin excluded.
    Sector { half_angle: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExclusionKind {
    /// Zero of `f′` or a pole: `M` or `U` is unbounded here.
    Singular,
    /// Image of a principal-branch cut: fields may jump or kink across it.
    BranchCut,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Geometry {
    Point { at: Point },
    Ray { origin: Point, angle: f64 },
    Segment { from: Point, to: Point },
}

impl Geometry {
    pub fn distance(&self, y: Point) -> f64 {
        match *self {
            Geometry::Point { at } => (y[0] - at[0]).hypot(y[1] - at[1]),
            Geometry::Ray { origin, angle } => {
                let (dx, dy) = (angle.cos(), angle.sin());
                let t = ((y[0] - origin[0]) * dx + (y[1] - origin[1]) * dy).max(0.0);
                (y[0] - origin[0] - t * dx).hypot(y[1] - origin[1] - t * dy)
            }
            Geometry::Segment { from, to } => {
                let (dx, dy) = (to[0] - from[0], to[1] - from[1]);
                let len2 = dx * dx + dy * dy;
                let t = if len2 == 0.0 {
                    0.0
                } else {
                    (((y[0] - from[0]) * dx + (y[1] - from[1]) * dy) / len2).clamp(0.0, 1.0)
                };
                (y[0] - from[0] - t * dx).hypot(y[1] - from[1] - t * dy)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Excluded {
    pub geometry: Geometry,
    pub kind: ExclusionKind,
}

/// Where a family's transformed coordinates live, and which sets must be avoided.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    pub region: RegionKind,
    pub y2_period: Option<f64>,
    pub excluded: Vec<Excluded>,
}

impl DomainSpec {
    pub fn in_region(&self, y: Point) -> bool {
        match self.region {
            RegionKind::FullPlane => true,
            RegionKind::StripY2 { lo, hi } => y[1] >= lo && y[1] < hi,
            RegionKind::PuncturedPlane => y[0] != 0.0 || y[1] != 0.0,
            RegionKind::Sector { half_angle } => {
                (y[0] != 0.0 || y[1] != 0.0) && y[1].atan2(y[0]).abs() < half_angle
            }
        }
    }

    pub fn singular_points(&self) -> impl Iterator<Item = Point> + '_ {
        self.excluded.iter().filter_map(|e| match (e.kind, e.geometry) {
            (ExclusionKind::Singular, Geometry::Point { at }) => Some(at),
            _ => None,
        })
    }

    /// Distance from `y` to the nearest excluded set, optionally ignoring branch cuts.
    pub fn distance_to_excluded(&self, y: Point, include_cuts: bool) -> f64 {
        self.excluded
            .iter()
            .filter(|e| include_cuts || e.kind == ExclusionKind::Singular)
            .map(|e| e.geometry.distance(y))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn distance_to_cuts(&self, y: Point) -> f64 {
        self.excluded
            .iter()
            .filter(|e| e.kind == ExclusionKind::BranchCut)
            .map(|e| e.geometry.distance(y))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn describe(&self) -> String {
        let region = match self.region {
            RegionKind::FullPlane => "full plane".to_string(),
            RegionKind::StripY2 { lo, hi } => format!("strip {lo:.6} <= y2 < {hi:.6}"),
            RegionKind::PuncturedPlane => "punctured plane".to_string(),
            RegionKind::Sector { half_angle } => format!("sector |arg y| < {half_angle:.6}"),
        };
        let mut s = region;
        if let Some(p) = self.y2_period {
            s.push_str(&format!(", y2 period {p:.6}"));
        }
        for e in &self.excluded {
            let what = match e.kind {
                ExclusionKind::Singular => "singular",
                ExclusionKind::BranchCut => "cut",
            };
            let geo = match e.geometry {
                Geometry::Point { at } => format!("point ({}, {})", at[0], at[1]),
                Geometry::Ray { origin, angle } => {
                    format!("ray from ({}, {}) at angle {angle:.6}", origin[0], origin[1])
                }
                Geometry::Segment { from, to } => {
                    format!("segment ({}, {})-({}, {})", from[0], from[1], to[0], to[1])
                }
            };
            s.push_str(&format!("; {what} {geo}"));
        }
        s
    }
}
