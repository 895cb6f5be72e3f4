//! Benchmarks for `genusrep`; see `benches/`.
