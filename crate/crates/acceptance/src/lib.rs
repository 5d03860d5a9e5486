//! Acceptance criteria for `posetcodes`; see `tests/acceptance.rs`.
