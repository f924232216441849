//! Criterion benchmarks over the example corpus; see `benches/resolution.rs`.
