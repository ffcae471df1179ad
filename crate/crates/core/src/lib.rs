//! Toolkit for binary `k`-server PIR codes.
//!
//! - [`gf2`]: word-packed vectors and matrices over GF(2), rank, span tests,
//!   systematic form, and the componentwise-product algebra.
//! - [`codes`]: exact property-`P_k` verification, optimal constructions for
//!   `k` in `{2, 3, 4}`, exact optimal redundancies with a brute-force
//!   cross-check, and a step-by-step replay of the `r (r - 1) >= 2 s` bound.
//! - [`emulator`]: coded storage over `n` simulated servers with private
//!   single-bit retrieval and overhead accounting.

pub mod codes;
pub mod emulator;
pub mod gf2;
