//! Benchmarks for abtaut-core live in `benches/`.
