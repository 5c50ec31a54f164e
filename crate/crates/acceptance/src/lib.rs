//! Empty library crate; the acceptance checks live in `tests/acceptance.rs`
//! and exercise the workspace crates end to end.
