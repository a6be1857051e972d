use std::f64::consts::PI;
use std::sync::Arc;

use pdm_core::basemodels::{solve_1d, BasePotential, BaseState, Grid1D, OneDimPotential};
use pdm_core::maps::MapFamily;
use pdm_core::pdmbuild::{PdmModel, TransformedState};
use pdm_core::verify::checks::{convergence_study, eigen_residual};
use pdm_core::verify::{Grid2D, Region};
use pdm_core::Execution;

const DELTA: f64 = 1e-2;

fn morse() -> OneDimPotential {
    OneDimPotential::Morse { c: 25.0, lambda: 1.0 }
}

fn rosen_morse() -> OneDimPotential {
    OneDimPotential::RosenMorseTrig { a: 6.0, b: 2.0, lambda: 1.0 }
}

fn ground_state(model: &PdmModel) -> TransformedState {
    let e1 = solve_1d(&morse(), Grid1D { x0: -3.0 + 5e-4, h: 5e-4, n: 33_999 }, 1).unwrap().remove(0);
    let e2 = solve_1d(&rosen_morse(), Grid1D::spanning(0.0, PI, 6_000), 1).unwrap().remove(0);
    TransformedState::new(model.clone(), BaseState::Separable { e1: Arc::new(e1), e2: Arc::new(e2) }).unwrap()
}

fn model() -> PdmModel {
    PdmModel::new(MapFamily::logistic(1.0, 0.5, 0.5).unwrap(), BasePotential::Separable { v1: morse(), v2: rosen_morse() })
        .unwrap()
}

/// y-space bounding box of the x-rectangle `[x1lo, x1hi] × [δ, π − δ]`.
fn image_box(family: &MapFamily) -> ((f64, f64), (f64, f64)) {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for k in 0..=400 {
        let t = k as f64 / 400.0;
        for x in [[-1.5 + 6.5 * t, DELTA], [-1.5 + 6.5 * t, PI - DELTA], [-1.5, DELTA + (PI - 2.0 * DELTA) * t], [5.0, DELTA + (PI - 2.0 * DELTA) * t]] {
            let y = family.y_of_x(x).unwrap();
            for a in 0..2 {
                lo[a] = lo[a].min(y[a]);
                hi[a] = hi[a].max(y[a]);
            }
        }
    }
    ((lo[0], hi[0]), (lo[1], hi[1]))
}

#[test]
fn logistic_pdm_residual_converges_on_the_strip() {
    let model = model();
    let ts = ground_state(&model);
    let (b1, b2) = image_box(model.family());
    println!("box {b1:?} {b2:?}");
    assert!(b1.1 - b1.0 < 10.0 && b2.1 - b2.0 < 10.0);
    let family = *model.family();
    let in_strip = move |y: [f64; 2]| match family.x_of_y(y) {
        Ok(x) => x[1] > DELTA && x[1] < PI - DELTA && x[0] > -1.5 && x[0] < 5.0,
        Err(_) => false,
    };
    let exec = Execution::default();
    let table = convergence_study(&[0.02, 0.01, 0.005], |h| {
        let g = Grid2D::from_bounds(b1, b2, h)?.mask_model(&model, 1e-3, false, exec).mask_where(exec, in_strip);
        eigen_residual(&ts, &g, &Region::All, exec).map(|m| m.relative_l2)
    })
    .unwrap();
    for row in &table.rows {
        println!("h={} r={:.3e} order={:?}", row.h, row.residual, row.order);
    }
    assert!(table.rows[2].residual < 1e-2, "{table:?}");
    for o in table.orders() {
        assert!((1.5..=2.2).contains(&o), "{table:?}");
    }
}

#[test]
fn separable_state_is_accepted_only_by_a_separable_base() {
    let model = model();
    let ts = ground_state(&model);
    let osc = PdmModel::new(*model.family(), BasePotential::AnisotropicOscillator { omega1: 1.0, omega2: 1.0 }).unwrap();
    assert!(TransformedState::new(osc, ts.base_state().clone()).is_err());
}
