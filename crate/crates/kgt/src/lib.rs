//! File formats, reference oracles, verification cases and the command-line
//! front end for [`kgt_core`].
//!
//! The binary is a thin wrapper over [`commands::run_from`], so everything
//! it does can also be driven from tests or other programs.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod oracles;
pub mod table;
pub mod verify;
