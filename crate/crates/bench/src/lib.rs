//! Criterion benchmarks for the midpoint library live in `benches/`.
