//! Input parsing and command implementations behind the `skewcat` binary.

pub mod commands;
pub mod literal;
pub mod parse;
