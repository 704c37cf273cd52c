//! Benchmarks for the emchi kernels live in `benches/`; run them with
//! `cargo bench -p emchi-bench`.
