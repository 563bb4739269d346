//! Exact enumeration of pattern-restricted permutations.
//!
//! The crate computes counting sequences for permutations constrained by
//! occurrence counts of small patterns (avoid a pattern, contain it exactly
//! `r` times, ...) in two independent ways and cross-checks them:
//!
//! * a brute-force oracle that scans `S_n` directly ([`oracle`]),
//! * closed-form generating functions built from Chebyshev polynomials of
//!   the second kind ([`cheb`], [`closed_forms`]), continued fractions
//!   ([`cfrac`]), transfer matrices ([`transfer`]), a Dyck-path bijection
//!   ([`dyck`]), and a block-decomposition recursion ([`block`]).
//!
//! All arithmetic is exact: scalars are arbitrary-precision rationals and
//! generating functions are canonical rational functions ([`exact`]).
//!
//! The [`verify`] module packages every identity the crate implements as a
//! named check with a machine-readable report; `verify::run_scope` is what
//! the CLI's `verify` subcommand and the acceptance test suite drive.

pub mod block;
pub mod cfrac;
pub mod cheb;
pub mod cli;
pub mod closed_forms;
pub mod dyck;
mod error;
pub mod exact;
pub mod literal;
pub mod oracle;
pub mod perm;
pub mod transfer;
pub mod verify;

pub use error::{Error, Result};

/// Entry point for the `permcheb` binary; returns the process exit code.
pub fn run_cli() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    let (out, code) = cli::run(&args);
    // Reports go to stdout; usage and resource errors go to stderr.
    if code == 2 || code == 3 {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    code
}
