//! Benchmark-only crate; see benches/normalisation.rs.
