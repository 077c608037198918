use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use synchrolab::conjugacy::{groupoid_sample, lc_germ, GroupoidKind};
use synchrolab::factor::{degree_check, preimage_count, CoverMap};
use synchrolab::periodic::{enumerate_periodic, find_periodic_by_bracket, return_point};
use synchrolab::presentation::fischer_cover_of;
use synchrolab::sync::{classify_point, nonsync_subshift, rectangle_check, sync_density_check};
use synchrolab::{builtins, determinize, smith_normal_form, BiSeq};
use synchrolab_bench::{bowen_franks_inputs, fixtures};

fn covers(c: &mut Criterion) {
    let mut g = c.benchmark_group("covers");
    for f in fixtures() {
        let p = f.shift.presentation().unwrap().clone();
        g.bench_function(BenchmarkId::new("determinize", f.shift.name()), |b| {
            b.iter(|| determinize(black_box(&p)))
        });
        g.bench_function(BenchmarkId::new("fischer", f.shift.name()), |b| {
            b.iter(|| fischer_cover_of(black_box(&p)).unwrap())
        });
    }
    g.finish();
}

fn periodic(c: &mut Criterion) {
    let mut g = c.benchmark_group("periodic");
    let golden = builtins::golden_mean();
    for n in [4, 8, 12] {
        g.bench_with_input(BenchmarkId::new("enumerate/golden", n), &n, |b, &n| {
            b.iter(|| enumerate_periodic(&golden, n).unwrap())
        });
    }
    let x = BiSeq::constant(0);
    let (y, n) = return_point(&golden, &x, 3, 4).unwrap();
    g.bench_function("bracket_iteration/golden", |b| {
        b.iter(|| find_periodic_by_bracket(&golden, &x, black_box(&y), n, 3).unwrap())
    });
    g.finish();
}

fn sync(c: &mut Criterion) {
    let mut g = c.benchmark_group("sync");
    g.sample_size(20);
    for f in fixtures() {
        let name = f.shift.name().to_string();
        g.bench_function(BenchmarkId::new("classify", &name), |b| {
            b.iter(|| classify_point(&f.shift, black_box(&f.partner)).unwrap())
        });
        g.bench_function(BenchmarkId::new("nonsync", &name), |b| {
            b.iter(|| nonsync_subshift(&f.shift).unwrap())
        });
        g.bench_function(BenchmarkId::new("rectangle", &name), |b| {
            b.iter(|| rectangle_check(&f.shift, &f.sync_point, 2, 4).unwrap())
        });
        g.bench_function(BenchmarkId::new("density", &name), |b| {
            b.iter(|| sync_density_check(&f.shift, 6).unwrap())
        });
    }
    g.finish();
}

fn germs(c: &mut Criterion) {
    let mut g = c.benchmark_group("germs");
    g.sample_size(10);
    for f in fixtures() {
        let name = f.shift.name().to_string();
        g.bench_function(BenchmarkId::new("lc", &name), |b| {
            b.iter(|| lc_germ(&f.shift, &f.sync_point, black_box(&f.partner)).unwrap())
        });
    }
    let even = builtins::even();
    g.bench_function("groupoid/even", |b| {
        b.iter(|| groupoid_sample(&even, &GroupoidKind::LcSync, 4).unwrap())
    });
    g.finish();
}

fn factors(c: &mut Criterion) {
    let mut g = c.benchmark_group("factor");
    let cover = CoverMap::of_shift(&builtins::even()).unwrap();
    let zeros = BiSeq::constant(0);
    g.bench_function("preimages/even", |b| {
        b.iter(|| preimage_count(&cover, black_box(&zeros)).unwrap())
    });
    g.sample_size(10);
    g.bench_function("degree/even", |b| {
        b.iter(|| degree_check(&cover, 6).unwrap())
    });
    g.finish();
}

fn smith(c: &mut Criterion) {
    let mut g = c.benchmark_group("smith");
    for m in bowen_franks_inputs() {
        g.bench_with_input(BenchmarkId::from_parameter(m.rows()), &m, |b, m| {
            b.iter(|| smith_normal_form(black_box(m)))
        });
    }
    g.finish();
}

criterion_group!(benches, covers, periodic, sync, germs, factors, smith);
criterion_main!(benches);
