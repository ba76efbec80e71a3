//! Random graphs whose degree laws are built from Dirichlet series.
//!
//! The crate covers the whole pipeline: arithmetic functions and the
//! Dirichlet ring ([`arith`]), bounded evaluation of zeta-type series
//! ([`lseries`]), degree distributions and generating functions
//! ([`degdist`]), closed-form giant-component and clustering conditions
//! ([`thresholds`]), SIR epidemic thresholds ([`epidemics`]), configuration
//! model sampling with Monte Carlo measurement ([`sampler`]) and phase-plane
//! scans ([`phasescan`]). The `zetanet` binary wraps these in a command line
//! front end ([`cli`]).

pub mod arith;
pub mod cli;
pub mod config;
pub mod degdist;
pub mod epidemics;
pub mod error;
pub mod lseries;
pub mod phasescan;
pub mod roots;
pub mod sampler;
pub mod thresholds;

pub use error::{Error, Result};
pub use lseries::{EvalResult, Family, LSeries};
