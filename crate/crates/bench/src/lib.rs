//! Criterion benchmarks for `starfactor-core`; see `benches/`.
