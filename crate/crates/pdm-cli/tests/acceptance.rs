//! Figure-data acceptance: every preset exports, and the exported fields carry
//! the qualitative features the figures are read for.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use pdm_cli::commands::{figure_field, figures};
use pdm_cli::presets::{preset, PRESETS};
use pdm_core::verify::Field2D;

struct Line {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn field(name: &str) -> Field2D {
    figure_field(&preset(name).unwrap()).unwrap().1
}

/// Sign changes along a sequence, skipping masked values and values below `floor`.
fn sign_changes(values: impl Iterator<Item = f64>, floor: f64) -> usize {
    let mut last = 0.0_f64;
    let mut changes = 0;
    for v in values.filter(|v| v.is_finite() && v.abs() > floor) {
        if last != 0.0 && v.signum() != last.signum() {
            changes += 1;
        }
        last = v;
    }
    changes
}

fn max_abs(f: &Field2D) -> f64 {
    f.values.iter().filter(|v| v.is_finite()).fold(0.0, |m, v| m.max(v.abs()))
}

fn all_export() -> Line {
    let dir = tempfile::tempdir().unwrap();
    let start = Instant::now();
    let res = figures("all", dir.path(), true);
    let secs = start.elapsed().as_secs_f64();
    let missing: Vec<String> = PRESETS
        .iter()
        .flat_map(|p| [format!("{p}.csv"), format!("{p}.png"), format!("{p}.png.json")])
        .filter(|f| !dir.path().join(f).is_file())
        .collect();
    Line {
        name: "all presets export",
        pass: res.is_ok() && missing.is_empty(),
        detail: format!("{} files, missing {missing:?}, {secs:.1}s", res.map(|v| v.len()).unwrap_or(0)),
    }
}

fn log_mass_column() -> Line {
    let f = field("fig1");
    let i = 80;
    assert_eq!(f.node(i, 0)[0], 0.0);
    let err = (0..f.ny).map(|j| (f.get(i, j) - 1.0).abs()).fold(0.0, f64::max);
    let increasing = (0..f.ny).all(|j| (1..f.nx).all(|i| f.get(i, j) > f.get(i - 1, j)));
    Line {
        name: "fig1 M = 1 on y1 = 0, increasing in y1",
        pass: err <= 1e-12 && increasing,
        detail: format!("max |M - 1| = {err:.1e} (tol 1e-12), increasing = {increasing}"),
    }
}

fn log_potential_period() -> Line {
    let f = field("fig2");
    let half = f.ny / 2;
    let mut err = 0.0_f64;
    for j in 0..half {
        for i in 0..f.nx {
            let (a, b) = (f.get(i, j), f.get(i, j + half));
            err = err.max((a - b).abs() / a.abs().max(1.0));
        }
    }
    Line { name: "fig2 U is 2pi-periodic in y2", pass: err <= 1e-12, detail: format!("max rel diff {err:.1e} (tol 1e-12)") }
}

fn ground_states_one_signed() -> Line {
    let mut parts = Vec::new();
    let mut pass = true;
    for name in ["fig3", "fig8"] {
        let f = field(name);
        let floor = 1e-12 * max_abs(&f);
        let neg = f.values.iter().filter(|v| v.is_finite() && **v < -floor).count();
        let pos = f.values.iter().filter(|v| v.is_finite() && **v > floor).count();
        pass &= neg == 0 || pos == 0;
        parts.push(format!("{name}: {pos} positive, {neg} negative"));
    }
    Line { name: "fig3, fig8 ground states one-signed", pass, detail: parts.join("; ") }
}

fn log_excited_nodal_line() -> Line {
    let f = field("fig4");
    let i = 80;
    let j0 = (f.ny / 2..f.ny).find(|&j| f.node(i, j)[1] >= -1e-12).unwrap();
    assert!(f.node(i, j0)[1].abs() < 1e-12 && (f.node(i, f.ny - 1)[1] - 2.0 * PI) < 0.0);
    let n = sign_changes((j0..f.ny).map(|j| f.get(i, j)), 1e-12 * max_abs(&f));
    Line { name: "fig4 one sign change on y1 = 0, y2 in [0, 2pi)", pass: n == 1, detail: format!("{n} sign changes") }
}

fn quadratic_mass() -> Line {
    let f = field("fig6");
    let mut err = 0.0_f64;
    let mut finite = 0;
    let mut masked_far = 0;
    for j in 0..f.ny {
        for i in 0..f.nx {
            let v = f.get(i, j);
            let y = f.node(i, j);
            let rho = y[0].hypot(y[1]);
            if v.is_finite() {
                err = err.max((v - 1.0 / rho).abs());
                finite += 1;
            } else if rho > 3.0 * f.h + 1e-12 {
                masked_far += 1;
            }
        }
    }
    Line {
        name: "fig6 M = 1/rho",
        pass: err <= 1e-12 && masked_far == 0,
        detail: format!(
            "max |M - 1/rho| = {err:.1e} (tol 1e-12) on {finite} of {} nodes, {masked_far} masked outside rho <= 3h",
            f.values.len()
        ),
    }
}

fn quadratic_excited_nodal_line() -> Line {
    let f = field("fig9");
    let i = 100;
    assert!((f.node(i, 0)[0] + 1.0).abs() < 1e-12);
    let n = sign_changes((0..f.ny).map(|j| f.get(i, j)), 1e-12 * max_abs(&f));
    let below = f.get(i, f.ny / 2 - 10);
    let above = f.get(i, f.ny / 2 + 10);
    Line {
        name: "fig9 one sign change on y1 = -1",
        pass: n == 1 && below.signum() != above.signum(),
        detail: format!("{n} sign changes, crossing between y2 = -0.5 and 0.5"),
    }
}

fn csv_round_trip() -> Line {
    let dir = tempfile::tempdir().unwrap();
    let mut bad = Vec::new();
    for name in ["fig4", "fig6"] {
        let f = field(name);
        figures(name, dir.path(), false).unwrap();
        let text = std::fs::read_to_string(dir.path().join(format!("{name}.csv"))).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("y1,y2,value"));
        let mut rows = 0;
        for (k, line) in lines.enumerate() {
            let (i, j) = (k % f.nx, k / f.nx);
            let cols: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
            let y = f.node(i, j);
            let v = f.get(i, j);
            let same = |a: f64, b: f64| a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan());
            if !(same(cols[0], y[0]) && same(cols[1], y[1]) && same(cols[2], v)) {
                bad.push(format!("{name} row {k}"));
            }
            rows += 1;
        }
        if rows != f.values.len() {
            bad.push(format!("{name}: {rows} rows"));
        }
        let back = Field2D::read_csv(text.as_bytes()).unwrap();
        if back.nx != f.nx || back.ny != f.ny {
            bad.push(format!("{name}: shape"));
        }
    }
    Line { name: "CSV round-trip is bit-exact", pass: bad.is_empty(), detail: format!("mismatches {:?}", &bad[..bad.len().min(5)]) }
}

fn main() -> ExitCode {
    let checks: [fn() -> Line; 8] = [
        all_export,
        log_mass_column,
        log_potential_period,
        ground_states_one_signed,
        log_excited_nodal_line,
        quadratic_mass,
        quadratic_excited_nodal_line,
        csv_round_trip,
    ];
    let mut failed = 0;
    for (k, check) in checks.iter().enumerate() {
        let start = Instant::now();
        let line = check();
        println!(
            "criterion 10.{} [{}]: {} | {} | {:.2}s",
            k + 1,
            line.name,
            if line.pass { "PASS" } else { "FAIL" },
            line.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!line.pass);
    }
    println!("{} of {} figure checks passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
