//! Benchmarks for map iteration live in `benches/`.
