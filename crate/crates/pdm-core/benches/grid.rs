use std::f64::consts::SQRT_2;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use pdm_core::basemodels::{oscillator_state, BasePotential};
use pdm_core::maps::MapFamily;
use pdm_core::pdmbuild::{PdmModel, TransformedState};
use pdm_core::verify::{Field2D, Grid2D, PdmOperator};
use pdm_core::Execution;

fn modes() -> Vec<Execution> {
    let mut v = vec![Execution::Sequential];
    #[cfg(feature = "parallel")]
    v.push(Execution::Parallel);
    v
}

fn setup() -> (TransformedState, Grid2D) {
    let model = PdmModel::new(
        MapFamily::log(1.0, 1.0, 0.0).unwrap(),
        BasePotential::AnisotropicOscillator { omega1: 1.0, omega2: SQRT_2 },
    )
    .unwrap();
    let ts = TransformedState::new(model, oscillator_state(1.0, SQRT_2, 1, 0).unwrap()).unwrap();
    let grid = Grid2D::from_bounds((-3.0, 2.0), (-3.0, 3.0), 0.01).unwrap();
    (ts, grid)
}

fn sample_field(c: &mut Criterion) {
    let (ts, grid) = setup();
    let mut group = c.benchmark_group("sample_field");
    group.sample_size(20);
    for exec in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(exec.name()), &exec, |b, &exec| {
            b.iter(|| Field2D::sample(black_box(&grid), exec, |y| ts.eval(y)).unwrap())
        });
    }
    group.finish();
}

fn assemble_apply(c: &mut Criterion) {
    let (ts, grid) = setup();
    let psi = Field2D::sample(&grid, Execution::Sequential, |y| ts.eval(y)).unwrap();
    let mut group = c.benchmark_group("assemble_apply");
    group.sample_size(10);
    for exec in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(exec.name()), &exec, |b, &exec| {
            b.iter(|| {
                let op = PdmOperator::assemble(ts.model(), black_box(&grid), exec).unwrap();
                op.apply(&psi, exec).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, sample_field, assemble_apply);
criterion_main!(benches);
