//! Criterion benchmarks for the slingcalc workspace live in `benches/`.
