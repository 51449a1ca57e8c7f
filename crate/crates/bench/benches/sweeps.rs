use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hardy_core::equidist::{distribution_table, weyl_sum, Variant};
use hardy_core::modular::theta;
use hardy_core::spectral::{eisenstein_direct, eisenstein_fourier, whittaker_w, EisensteinParams};
use hardy_core::sums::{batch_row, hardy_s, residue_table};
use hardy_core::{Complex64, ParityClass, RationalParam};

fn rows(c: &mut Criterion) {
    let mut g = c.benchmark_group("rows");
    for den in [257u64, 1024, 4001] {
        g.bench_with_input(BenchmarkId::new("batch_row", den), &den, |b, &den| {
            b.iter(|| batch_row(black_box(den), ParityClass::Theta).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("residue_table", den), &den, |b, &den| {
            b.iter(|| residue_table(black_box(den)))
        });
    }
    g.bench_function("scalar_s_4001", |b| b.iter(|| hardy_s(black_box(1234), black_box(4001)).unwrap()));
    g.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweeps");
    g.sample_size(10);
    let r = RationalParam::new(1, 3);
    g.bench_function("weyl_N500", |b| b.iter(|| weyl_sum(black_box(500), 1, r, &[]).unwrap()));
    g.bench_function("dist_N500_m5_bins8", |b| {
        b.iter(|| distribution_table(black_box(500), 5, Variant::S, 8).unwrap())
    });
    g.finish();
}

fn special(c: &mut Criterion) {
    let mut g = c.benchmark_group("special");
    let z = Complex64::new(0.3, 1.1);
    g.bench_function("theta", |b| b.iter(|| theta(black_box(z), 1e-14).unwrap()));
    let mu = Complex64::new(1.5, 0.5);
    g.bench_function("whittaker", |b| b.iter(|| whittaker_w(0.25, black_box(mu), 6.28).unwrap()));
    g.finish();
}

fn eisenstein(c: &mut Criterion) {
    let mut g = c.benchmark_group("eisenstein");
    g.sample_size(10);
    let mut p = EisensteinParams::new(RationalParam::new(1, 8), Complex64::new(2.0, 0.5), Complex64::new(0.2, 1.0));
    p.c_max = 200;
    g.bench_function("direct_c200", |b| b.iter(|| eisenstein_direct(black_box(&p)).unwrap()));
    g.bench_function("fourier_c200", |b| b.iter(|| eisenstein_fourier(black_box(&p)).unwrap()));
    g.finish();
}

criterion_group!(benches, rows, sweeps, special, eisenstein);
criterion_main!(benches);
