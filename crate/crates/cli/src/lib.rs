//! Command-line front end for `ectk-core`: JSON formats, config resolution,
//! multi-threaded census and the `verify` runner.

pub mod commands;
pub mod config;
pub mod json;
pub mod output;
pub mod parallel;
pub mod verify;

use ectk_core::Error;

/// Process exit status for a failed run.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 2,
        Error::Domain(_) => 3,
        Error::CapExceeded { .. } => 4,
        Error::InvariantViolation(_) => 1,
    }
}

/// Exit status when `verify` ran but some check failed.
pub const EXIT_CHECK_FAILED: i32 = 1;
