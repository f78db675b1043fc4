//! Criterion benchmarks for `oxn-core`; see `benches/oxn.rs`.
