//! Benchmarks for `tropicover`; see `benches/core.rs`.
