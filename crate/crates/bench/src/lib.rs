//! Criterion benchmarks for the p3wkb kernels; see `benches/kernels.rs`.
