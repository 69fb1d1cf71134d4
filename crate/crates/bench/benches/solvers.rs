use std::f64::consts::PI;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use qdrive_core::characteristics::EngineOptions;
use qdrive_core::hamiltonian::{evolve_hamiltonian, HamiltonianVariant};
use qdrive_core::reference::{mol_evolve, splitstep_evolve, MolEquation, MolOptions, PositionGrid, PositionState, SplitStepOptions};
use qdrive_core::schemes::{evolve_scheme, FormulaVariant, SchemeId};
use qdrive_core::{build_grid, GaussianPacket, PhysicalParams};

fn characteristics(c: &mut Criterion) {
    let params = PhysicalParams::default();
    let packet = GaussianPacket::default();
    let grid = build_grid(-24.0, 24.0, 1024).unwrap();
    let options = EngineOptions::default();
    c.bench_function("hamiltonian_exact_n1024_t_pi", |b| {
        b.iter(|| evolve_hamiltonian(&packet, &grid, &params, black_box(PI), HamiltonianVariant::ExactCharacteristics, &options).unwrap())
    });
    let wide = build_grid(-60.0, 60.0, 1024).unwrap();
    c.bench_function("s3_derived_n1024_t_pi", |b| {
        b.iter(|| evolve_scheme(SchemeId::S3, &packet, &wide, &params, black_box(PI), FormulaVariant::Derived, &options).unwrap())
    });
}

fn method_of_lines(c: &mut Criterion) {
    let params = PhysicalParams::default();
    let packet = GaussianPacket::default();
    let grid = build_grid(-16.0, 16.0, 512).unwrap();
    let mut g = c.benchmark_group("mol");
    g.sample_size(10);
    g.bench_function("hamiltonian_n512_t1", |b| {
        b.iter(|| mol_evolve(&packet, &grid, &params, MolEquation::Hamiltonian, black_box(1.0), 1e-3, &MolOptions::default()).unwrap())
    });
    g.finish();
}

fn split_step(c: &mut Criterion) {
    let params = PhysicalParams::default();
    let grid = PositionGrid::new(-40.0, 40.0, 1024).unwrap();
    let psi = PositionState::gaussian(&GaussianPacket::default(), &grid);
    let mut g = c.benchmark_group("splitstep");
    g.sample_size(10);
    g.bench_function("n1024_1000_steps", |b| {
        b.iter(|| splitstep_evolve(&psi, &params, black_box(1.0), 1e-3, &SplitStepOptions::default()).unwrap())
    });
    g.finish();
}

criterion_group!(benches, characteristics, method_of_lines, split_step);
criterion_main!(benches);
