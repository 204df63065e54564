//! Benchmarks for the solvers and oracles live in `benches/`.
