use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Point, Result};
use crate::exec::{self, Execution};
use crate::maps::DomainSpec;
use crate::pdmbuild::PdmModel;

/// Uniform vertex-centred lattice; node `(i, j)` sits at `origin + (i h, j h)` and is stored at `j·nx + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D {
    origin: Point,
    h: f64,
    nx: usize,
    ny: usize,
    periodic_y2: bool,
    mask: Vec<bool>,
}

pub const MIN_NODES: usize = 8;
pub const MIN_INTERIOR: usize = 16;

/// Default mask radius around singular points: `max(3h, 10⁻³)`.
pub fn default_mask_eps(h: f64) -> f64 {
    (3.0 * h).max(1e-3)
}

impl Grid2D {
    pub fn new(origin: Point, h: f64, nx: usize, ny: usize) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::Grid(format!("spacing must be positive, got {h}")));
        }
        if nx < MIN_NODES || ny < MIN_NODES {
            return Err(Error::Grid(format!("need at least {MIN_NODES} nodes per axis, got {nx}x{ny}")));
        }
        if !origin[0].is_finite() || !origin[1].is_finite() {
            return Err(Error::Grid("origin must be finite".into()));
        }
        Ok(Grid2D { origin, h, nx, ny, periodic_y2: false, mask: vec![false; nx * ny] })
    }

    /// Lattice covering `[y1.0, y1.1] × [y2.0, y2.1]`; the spacing is `h` and the far edges are rounded to nodes.
    pub fn from_bounds(y1: (f64, f64), y2: (f64, f64), h: f64) -> Result<Self> {
        let nx = ((y1.1 - y1.0) / h).round() as usize + 1;
        let ny = ((y2.1 - y2.0) / h).round() as usize + 1;
        Grid2D::new([y1.0, y2.0], h, nx, ny)
    }

    /// Lattice periodic in y₂ with `period = ny·h`; `ny` is `round(period/h)` and `h` is adjusted to match exactly.
    pub fn periodic(y1: (f64, f64), y2_start: f64, period: f64, h: f64) -> Result<Self> {
        let ny = (period / h).round() as usize;
        let hh = period / ny as f64;
        let nx = ((y1.1 - y1.0) / hh).round() as usize + 1;
        let mut g = Grid2D::new([y1.0, y2_start], hh, nx, ny)?;
        g.periodic_y2 = true;
        Ok(g)
    }

    /// Marks the lattice periodic in y₂ with period `ny·h`, keeping the spacing unchanged.
    pub fn into_periodic_y2(mut self) -> Self {
        self.periodic_y2 = true;
        self
    }

    pub fn origin(&self) -> Point {
        self.origin
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_periodic_y2(&self) -> bool {
        self.periodic_y2
    }

    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn node(&self, i: usize, j: usize) -> Point {
        [self.origin[0] + i as f64 * self.h, self.origin[1] + j as f64 * self.h]
    }

    pub fn masked(&self, i: usize, j: usize) -> bool {
        self.mask[self.idx(i, j)]
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Upper corner of the node bounding box.
    pub fn extent(&self) -> Point {
        self.node(self.nx - 1, self.ny - 1)
    }

    pub fn describe(&self) -> String {
        format!(
            "origin=({}, {}) h={} nx={} ny={}{} masked={}",
            self.origin[0],
            self.origin[1],
            self.h,
            self.nx,
            self.ny,
            if self.periodic_y2 { " periodic_y2" } else { "" },
            self.mask.iter().filter(|m| **m).count()
        )
    }

    /// Masks every node where `keep` is false.
    pub fn mask_where<F>(mut self, exec: Execution, keep: F) -> Self
    where
        F: Fn(Point) -> bool + Sync + Send,
    {
        let (origin, h, nx) = (self.origin, self.h, self.nx);
        exec::for_each_row(exec, &mut self.mask, nx, |j, row| {
            for (i, m) in row.iter_mut().enumerate() {
                let y = [origin[0] + i as f64 * h, origin[1] + j as f64 * h];
                if !keep(y) {
                    *m = true;
                }
            }
        });
        self
    }

    /// Masks the excluded sets of `domain` dilated by `eps` and nodes outside its region.
    pub fn mask_domain(self, domain: &DomainSpec, eps: f64, include_cuts: bool, exec: Execution) -> Self {
        self.mask_where(exec, |y| domain.in_region(y) && domain.distance_to_excluded(y, include_cuts) >= eps)
    }

    /// Domain mask plus every node where the model's effective potential cannot be evaluated.
    pub fn mask_model(self, model: &PdmModel, eps: f64, include_cuts: bool, exec: Execution) -> Self {
        self.mask_domain(model.domain(), eps, include_cuts, exec).mask_where(exec, |y| model.potential(y).is_ok())
    }

    /// True when the node and its four neighbours are unmasked and the node is not on a non-periodic edge.
    pub fn is_interior(&self, i: usize, j: usize) -> bool {
        if i == 0 || i + 1 >= self.nx {
            return false;
        }
        if !self.periodic_y2 && (j == 0 || j + 1 >= self.ny) {
            return false;
        }
        let (jm, jp) = self.neighbours_y2(j);
        !(self.masked(i, j) || self.masked(i - 1, j) || self.masked(i + 1, j) || self.masked(i, jm) || self.masked(i, jp))
    }

    /// Row indices below and above `j`, wrapping when periodic.
    pub fn neighbours_y2(&self, j: usize) -> (usize, usize) {
        if self.periodic_y2 {
            ((j + self.ny - 1) % self.ny, (j + 1) % self.ny)
        } else {
            (j.saturating_sub(1), (j + 1).min(self.ny - 1))
        }
    }

    pub fn interior_count(&self) -> usize {
        (0..self.ny).map(|j| (0..self.nx).filter(|&i| self.is_interior(i, j)).count()).sum()
    }

    pub fn require_interior(&self) -> Result<()> {
        let n = self.interior_count();
        if n < MIN_INTERIOR {
            Err(Error::Grid(format!("only {n} interior cells, need at least {MIN_INTERIOR}")))
        } else {
            Ok(())
        }
    }

    /// Trapezoid weight of node `(i, j)` divided by `h²`.
    pub fn trapezoid_weight(&self, i: usize, j: usize) -> f64 {
        let wx = if i == 0 || i + 1 == self.nx { 0.5 } else { 1.0 };
        let wy = if !self.periodic_y2 && (j == 0 || j + 1 == self.ny) { 0.5 } else { 1.0 };
        wx * wy
    }

    /// Unmasked nodes on the non-periodic edges.
    pub fn boundary_nodes(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for j in 0..self.ny {
            for i in 0..self.nx {
                let edge = i == 0 || i + 1 == self.nx || (!self.periodic_y2 && (j == 0 || j + 1 == self.ny));
                if edge && !self.masked(i, j) {
                    out.push(self.node(i, j));
                }
            }
        }
        out
    }

    pub fn unmasked_nodes(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for j in 0..self.ny {
            for i in 0..self.nx {
                if !self.masked(i, j) {
                    out.push(self.node(i, j));
                }
            }
        }
        out
    }

    /// Nodes within `cells` lattice steps of a non-periodic edge.
    pub fn near_edge(&self, i: usize, j: usize, cells: usize) -> bool {
        let x_edge = i < cells || i + cells >= self.nx;
        let y_edge = !self.periodic_y2 && (j < cells || j + cells >= self.ny);
        x_edge || y_edge
    }
}

/// Measurement window for residual norms; independent of the lattice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Region {
    All,
    Rect { y1: [f64; 2], y2: [f64; 2] },
    Disk { center: Point, radius: f64 },
    /// Points at least `distance` away from every branch cut of the model's domain.
    AwayFromCuts { distance: f64 },
    Not { region: Box<Region> },
    Intersect { regions: Vec<Region> },
}

impl Region {
    pub fn annulus(center: Point, r_min: f64, r_max: f64) -> Region {
        Region::Intersect {
            regions: vec![
                Region::Disk { center, radius: r_max },
                Region::Not { region: Box::new(Region::Disk { center, radius: r_min }) },
            ],
        }
    }

    pub fn and(self, other: Region) -> Region {
        match self {
            Region::All => other,
            Region::Intersect { mut regions } => {
                regions.push(other);
                Region::Intersect { regions }
            }
            r => Region::Intersect { regions: vec![r, other] },
        }
    }

    pub fn contains(&self, y: Point, domain: &DomainSpec) -> bool {
        match self {
            Region::All => true,
            Region::Rect { y1, y2 } => y[0] >= y1[0] && y[0] <= y1[1] && y[1] >= y2[0] && y[1] <= y2[1],
            Region::Disk { center, radius } => (y[0] - center[0]).hypot(y[1] - center[1]) <= *radius,
            Region::AwayFromCuts { distance } => domain.distance_to_cuts(y) >= *distance,
            Region::Not { region } => !region.contains(y, domain),
            Region::Intersect { regions } => regions.iter().all(|r| r.contains(y, domain)),
        }
    }
}

/// Real values on a lattice; masked nodes hold NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2D {
    pub origin: Point,
    pub h: f64,
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<f64>,
}

impl Field2D {
    pub fn zeros(grid: &Grid2D) -> Self {
        Field2D { origin: grid.origin, h: grid.h, nx: grid.nx, ny: grid.ny, values: vec![0.0; grid.len()] }
    }

    /// Evaluates `f` on every unmasked node; masked nodes get NaN.
    pub fn sample<F>(grid: &Grid2D, exec: Execution, f: F) -> Result<Self>
    where
        F: Fn(Point) -> Result<f64> + Sync + Send,
    {
        let mut field = Field2D::zeros(grid);
        exec::try_for_each_row(exec, &mut field.values, grid.nx, |j, row| {
            for (i, v) in row.iter_mut().enumerate() {
                *v = if grid.masked(i, j) { f64::NAN } else { f(grid.node(i, j))? };
            }
            Ok(())
        })?;
        Ok(field)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.nx + i]
    }

    pub fn node(&self, i: usize, j: usize) -> Point {
        [self.origin[0] + i as f64 * self.h, self.origin[1] + j as f64 * self.h]
    }

    /// Finite minimum and maximum.
    pub fn range(&self) -> Option<(f64, f64)> {
        let mut it = self.values.iter().copied().filter(|v| v.is_finite());
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v))))
    }

    /// Row-major CSV with header `y1,y2,value`; shortest round-trip float formatting.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Io(e.to_string());
        wr.write_record(["y1", "y2", "value"]).map_err(io)?;
        for j in 0..self.ny {
            for i in 0..self.nx {
                let y = self.node(i, j);
                wr.write_record([y[0].to_string(), y[1].to_string(), self.get(i, j).to_string()]).map_err(io)?;
            }
        }
        wr.flush().map_err(|e| Error::Io(e.to_string()))
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(r);
        let io = |e: String| Error::Io(e);
        let headers = rd.headers().map_err(|e| io(e.to_string()))?.clone();
        if headers.iter().collect::<Vec<_>>() != ["y1", "y2", "value"] {
            return Err(io(format!("unexpected header {headers:?}")));
        }
        let mut rows = Vec::new();
        for rec in rd.records() {
            let rec = rec.map_err(|e| io(e.to_string()))?;
            let parse = |k: usize| rec[k].parse::<f64>().map_err(|e| io(format!("{e}: {:?}", &rec[k])));
            rows.push([parse(0)?, parse(1)?, parse(2)?]);
        }
        if rows.len() < 2 {
            return Err(io("too few rows".into()));
        }
        let nx = rows.iter().take_while(|r| r[1] == rows[0][1]).count();
        if nx < 2 || rows.len() % nx != 0 {
            return Err(io("rows do not form a rectangular lattice".into()));
        }
        Ok(Field2D {
            origin: [rows[0][0], rows[0][1]],
            h: rows[1][0] - rows[0][0],
            nx,
            ny: rows.len() / nx,
            values: rows.iter().map(|r| r[2]).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::MapFamily;

    #[test]
    fn rejects_tiny_grids() {
        assert!(Grid2D::new([0.0, 0.0], 0.1, 7, 10).is_err());
        assert!(Grid2D::new([0.0, 0.0], 0.0, 10, 10).is_err());
        assert!(Grid2D::new([0.0, 0.0], 0.1, 8, 8).is_ok());
    }

    #[test]
    fn singular_points_are_masked() {
        let dom = MapFamily::Inverse { b: 1.0 }.domain();
        let g = Grid2D::from_bounds((-1.0, 1.0), (-1.0, 1.0), 0.1).unwrap().mask_domain(&dom, 0.25, false, Execution::default());
        for j in 0..g.ny() {
            for i in 0..g.nx() {
                let y = g.node(i, j);
                if y[0].hypot(y[1]) < 0.25 {
                    assert!(g.masked(i, j));
                }
            }
        }
        assert!(g.require_interior().is_ok());
    }

    #[test]
    fn periodic_wraps() {
        let g = Grid2D::periodic((-1.0, 1.0), -3.0, 6.0, 0.1).unwrap();
        assert_eq!(g.ny(), 60);
        assert_eq!(g.neighbours_y2(0), (59, 1));
        assert!(g.is_interior(3, 0));
        assert_eq!(g.trapezoid_weight(3, 0), 1.0);
        assert_eq!(g.trapezoid_weight(0, 0), 0.5);
    }

    #[test]
    fn windows() {
        let dom = MapFamily::Quadratic { a: 0.125 }.domain();
        let w = Region::annulus([0.0, 0.0], 0.3, 6.0).and(Region::AwayFromCuts { distance: 0.2 });
        assert!(w.contains([-2.0, 0.0], &dom));
        assert!(!w.contains([2.0, 0.1], &dom));
        assert!(w.contains([2.0, 0.3], &dom));
        assert!(!w.contains([0.1, 0.25], &dom));
        assert!(!w.contains([7.0, 0.5], &dom));
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let g = Grid2D::from_bounds((-0.37, 0.5), (0.1, 1.0), 0.1).unwrap();
        let g = g.mask_where(Execution::Sequential, |y| y[0] < 0.3);
        let f = Field2D::sample(&g, Execution::default(), |y| Ok((y[0] * 7.3).sin() / 3.0 + y[1].exp() * 1e-17)).unwrap();
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let back = Field2D::read_csv(buf.as_slice()).unwrap();
        assert_eq!((back.nx, back.ny, back.origin), (f.nx, f.ny, f.origin));
        for (a, b) in f.values.iter().zip(&back.values) {
            assert!(a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan()));
        }
    }
}
