//! Benchmarks for the hot kernels: single operator entries, spectral block
//! assembly, an exact Yang-Baxter evaluation, and the combinatorial map.
//!
//! The closed-form bosonic entry is memoized in the library, so the series
//! route (which always recomputes) is what gets timed at the entry level.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num::BigInt;
use ybx_core::crystal::Crystal;
use ybx_core::smatrix::{s_block, s_element, verify_ybe_point};
use ybx_core::threed::{r_elem_series, verify_te_rrrr};
use ybx_core::{EpsSignature, ExactRational, StateVector};

fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

fn bench_r_entry_block(c: &mut Criterion) {
    // All entries of the conserved block with charges (i+j, j+k) = (6, 6).
    c.bench_function("r_entry_block_6_6", |b| {
        b.iter(|| {
            let mut acc = 0usize;
            for j_out in 0..=6u32 {
                let (a, bb, cc) = (6 - j_out, j_out, 6 - j_out);
                for j_in in 0..=6u32 {
                    let (i, j, k) = (6 - j_in, j_in, 6 - j_in);
                    let p = r_elem_series(a, bb, cc, i, j, k);
                    acc += usize::from(!p.is_zero());
                }
            }
            black_box(acc)
        })
    });
}

fn bench_s_entry(c: &mut Criterion) {
    let eps = EpsSignature::parse("101").unwrap();
    let a = StateVector::parse("040").unwrap();
    let b_word = StateVector::parse("101").unwrap();
    let i = StateVector::parse("031").unwrap();
    let j = StateVector::parse("110").unwrap();
    c.bench_function("s_entry_rank3", |b| {
        b.iter(|| black_box(s_element(&eps, &a, &b_word, &i, &j).unwrap()))
    });
}

fn bench_s_block_assembly(c: &mut Criterion) {
    let eps = EpsSignature::parse("101").unwrap();
    c.bench_function("s_block_101_levels_2_2", |b| {
        b.iter(|| black_box(s_block(&eps, 2, 2).unwrap()))
    });
}

fn bench_ybe_point(c: &mut Criterion) {
    let eps = EpsSignature::parse("11").unwrap();
    let (q, x, y) = (rat(1, 2), rat(3, 1), rat(5, 1));
    let mut group = c.benchmark_group("ybe");
    group.sample_size(20);
    group.bench_function("ybe_point_11_levels_1_1_1", |b| {
        b.iter(|| black_box(verify_ybe_point(&eps, 1, 1, 1, &q, &x, &y).unwrap().equal))
    });
    group.finish();
}

fn bench_te_rrrr(c: &mut Criterion) {
    let mut group = c.benchmark_group("tetrahedron");
    group.sample_size(20);
    group.bench_function("te_rrrr_input_211011", |b| {
        b.iter(|| black_box(verify_te_rrrr([2, 1, 1, 0, 1, 1]).equal))
    });
    group.finish();
}

fn bench_comb_r_sweep(c: &mut Criterion) {
    let crystal = Crystal::new(EpsSignature::parse("01010").unwrap());
    let basis_l = crystal.enumerate(4);
    let basis_m = crystal.enumerate(2);
    c.bench_function("comb_r_sweep_01010_4_2", |b| {
        b.iter(|| {
            let mut total_energy = 0u32;
            for i in &basis_l {
                for j in &basis_m {
                    total_energy += crystal.comb_r(i, j).unwrap().energy;
                }
            }
            black_box(total_energy)
        })
    });
}

criterion_group!(
    kernels,
    bench_r_entry_block,
    bench_s_entry,
    bench_s_block_assembly,
    bench_ybe_point,
    bench_te_rrrr,
    bench_comb_r_sweep
);
criterion_main!(kernels);
