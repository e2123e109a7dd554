//! Criterion benchmarks for cn-spectra; see `benches/`.
