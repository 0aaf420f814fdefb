//! Criterion benchmarks for horadam-core live under `benches/`.
