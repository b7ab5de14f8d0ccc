//! Command implementations behind the `infosel` binary. Each submodule owns
//! one subcommand; `main` only parses flags and maps errors to exit codes.

pub mod bench;
pub mod bound;
pub mod csvio;
pub mod error;
pub mod formats;
pub mod generate;
pub mod manifest;
pub mod seed;
pub mod select;
pub mod verify;
