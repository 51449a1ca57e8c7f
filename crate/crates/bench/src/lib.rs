//! Criterion benchmarks for the sweep kernels; see `benches/`.
