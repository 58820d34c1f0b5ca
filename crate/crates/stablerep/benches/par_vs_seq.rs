//! Criterion benches comparing the rayon-parallel enumerative core against a
//! single-threaded run of the same code.
//!
//! With the `parallel` feature (default), the "seq" variants run inside a
//! 1-thread rayon pool, so one `cargo bench` invocation produces both sides
//! of the comparison.

use criterion::{criterion_group, criterion_main, Criterion};

fn bench_placeholder(c: &mut Criterion) {
    // Real workloads are registered once the census and K-group layers exist.
    c.bench_function("noop", |b| b.iter(|| std::hint::black_box(0u64)));
}

criterion_group!(benches, bench_placeholder);
criterion_main!(benches);
