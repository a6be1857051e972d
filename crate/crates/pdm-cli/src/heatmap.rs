//! PNG heatmaps with a JSON sidecar holding the color-scale bounds.

use std::path::Path;

use image::{ImageFormat, Rgb, RgbImage};
use serde::Serialize;

use pdm_core::verify::Field2D;

use crate::{write_atomic, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Colormap {
    /// Dark blue to yellow, for one-signed fields.
    Sequential,
    /// Blue through white to red, symmetric about zero.
    Diverging,
}

#[derive(Debug, Clone, Serialize)]
pub struct Sidecar {
    pub field: String,
    pub colormap: Colormap,
    pub min: f64,
    pub max: f64,
    pub nx: usize,
    pub ny: usize,
    pub origin: [f64; 2],
    pub h: f64,
    pub masked_color: [u8; 3],
    pub orientation: &'static str,
}

const MASKED: [u8; 3] = [128, 128, 128];

const SEQUENTIAL: [[f64; 3]; 5] =
    [[68.0, 1.0, 84.0], [59.0, 82.0, 139.0], [33.0, 145.0, 140.0], [94.0, 201.0, 98.0], [253.0, 231.0, 37.0]];
const DIVERGING: [[f64; 3]; 3] = [[33.0, 102.0, 172.0], [247.0, 247.0, 247.0], [178.0, 24.0, 43.0]];

fn lerp(stops: &[[f64; 3]], t: f64) -> [u8; 3] {
    let t = t.clamp(0.0, 1.0) * (stops.len() - 1) as f64;
    let k = (t.floor() as usize).min(stops.len() - 2);
    let s = t - k as f64;
    let mut out = [0u8; 3];
    for (c, o) in out.iter_mut().enumerate() {
        *o = (stops[k][c] + s * (stops[k + 1][c] - stops[k][c])).round() as u8;
    }
    out
}

/// Scale bounds: data range, or `±max|v|` for the diverging map.
pub fn bounds(field: &Field2D, cmap: Colormap) -> (f64, f64) {
    let (lo, hi) = field.range().unwrap_or((0.0, 0.0));
    match cmap {
        Colormap::Sequential => (lo, hi),
        Colormap::Diverging => {
            let m = lo.abs().max(hi.abs());
            (-m, m)
        }
    }
}

/// Row 0 of the image is the top edge (largest y₂).
pub fn render(field: &Field2D, cmap: Colormap) -> RgbImage {
    let (lo, hi) = bounds(field, cmap);
    let span = if hi > lo { hi - lo } else { 1.0 };
    let stops: &[[f64; 3]] = match cmap {
        Colormap::Sequential => &SEQUENTIAL,
        Colormap::Diverging => &DIVERGING,
    };
    RgbImage::from_fn(field.nx as u32, field.ny as u32, |i, r| {
        let j = field.ny - 1 - r as usize;
        let v = field.get(i as usize, j);
        Rgb(if v.is_finite() { lerp(stops, (v - lo) / span) } else { MASKED })
    })
}

/// Writes `<stem>.png` and `<stem>.png.json`.
pub fn write_png(path: &Path, name: &str, field: &Field2D, cmap: Colormap) -> Result<(), CliError> {
    let img = render(field, cmap);
    let mut bytes = std::io::Cursor::new(Vec::new());
    img.write_to(&mut bytes, ImageFormat::Png).map_err(|e| CliError::Io(e.to_string()))?;
    write_atomic(path, |w| Ok(w.write_all(bytes.get_ref())?))?;

    let (min, max) = bounds(field, cmap);
    let meta = Sidecar {
        field: name.to_string(),
        colormap: cmap,
        min,
        max,
        nx: field.nx,
        ny: field.ny,
        origin: field.origin,
        h: field.h,
        masked_color: MASKED,
        orientation: "row 0 = top edge (largest y2), column 0 = smallest y1",
    };
    let mut side = path.as_os_str().to_owned();
    side.push(".json");
    write_atomic(Path::new(&side), |w| {
        serde_json::to_writer_pretty(&mut *w, &meta).map_err(|e| CliError::Io(e.to_string()))?;
        Ok(w.write_all(b"\n")?)
    })
}
