//! Holds the end-to-end acceptance test in `tests/acceptance.rs`.
