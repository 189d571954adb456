//! Benchmark workloads live in `benches/`.
