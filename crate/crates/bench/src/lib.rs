//! Anchor crate for the Criterion benchmark suite; see `benches/core_ops.rs`.
//! All benchmarked code lives in `bicrossed-core`.
