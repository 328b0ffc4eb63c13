//! Core algorithms for the unambiguous-identification game.
//!
//! A Referee hands Alice a value of a `d`-valued random variable and hands Bob
//! an `n`-element candidate set containing that value. Alice forwards an
//! `n`-level message (classical or quantum) and Bob must name the value
//! error-freely with nonzero probability in every event. This crate provides
//! the pure-state primitives, unambiguous-discrimination measurements, game
//! model, exhaustive classical search, named encoding families, derivative-free
//! optimizers, and a seeded round simulator. Everything here is `no_std`
//! (alloc only); IO and file formats live in the companion CLI crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod classical;
pub mod families;
pub mod game;
pub mod optimize;
pub mod sim;
pub mod states;
pub mod usd;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Tolerance for normalization, orthogonality, PSD and algebraic identities.
pub const TOL: f64 = 1e-9;

/// Absolute smallest-singular-value threshold for numerical linear
/// independence of unit-norm states.
pub const INDEPENDENCE_TOL: f64 = 1e-7;
