//! Exact-arithmetic tools for equations of the form
//! `∏ Q_i(A_i^{n_i} · n_i!) = f(x, y)`.
//!
//! The crate provides q-adic valuation bounds for the left-hand side,
//! "useful prime" detection for the right-hand side form, interval
//! certificates that rule out whole ranges of `n`, a complete decision
//! procedure when the right-hand side is `x^d`, bounded exhaustive search,
//! and numerical checks of the radical growth condition used under the abc
//! conjecture.

pub mod abcradical;
pub mod arith;
pub mod certify;
pub mod config;
pub mod error;
pub mod instance;
pub mod modp;
pub mod poly;
pub mod search;
pub mod serde_big;
pub mod usefulprimes;
pub mod valuation;

pub use error::{Error, Result};
