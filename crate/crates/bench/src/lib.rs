//! Benchmarks for the exact kernels of `liecoh-core`; see `benches/kernels.rs`.
