use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use asetrap_core::{cascade_snr, design_lowpass, filter_apply, synth_ase_trace, CascadeConfig};

fn bench_filter_apply(c: &mut Criterion) {
    let mut group = c.benchmark_group("filter_apply");
    for &n in &[1 << 16, 1 << 20] {
        let trace = synth_ase_trace(1.0, 50.0, 1e9, 20e9, n, 1).unwrap();
        let filter = design_lowpass(30, 0.5).unwrap();
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::new("order30", n), &trace, |b, t| {
            b.iter(|| filter_apply(t, &filter).unwrap())
        });
    }
    group.finish();
}

fn bench_cascade(c: &mut Criterion) {
    let trace = synth_ase_trace(1.0, 50.0, 1e9, 20e9, 1 << 20, 2).unwrap();
    let mut group = c.benchmark_group("cascade_snr");
    group.sample_size(10);
    group.bench_function("2^20_samples", |b| {
        b.iter(|| cascade_snr(&trace, &CascadeConfig::default()).unwrap())
    });
    group.finish();
}

fn bench_synthesis(c: &mut Criterion) {
    let mut group = c.benchmark_group("synth_ase_trace");
    group.sample_size(10);
    group.bench_function("2^20_samples", |b| {
        b.iter(|| synth_ase_trace(1.0, 50.0, 1e9, 20e9, 1 << 20, 3).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_filter_apply, bench_cascade, bench_synthesis);
criterion_main!(benches);
