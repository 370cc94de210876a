//! Stratification of punctual Hilbert schemes of points on affine space.
//!
//! The punctual Hilbert scheme of n points of (m+1)-dimensional affine space
//! decomposes into strata V_lambda indexed by m-dimensional partitions of n.
//! Each stratum is an affine variety with explicit coordinates (the border
//! coefficients of the corresponding ideals) and explicit quadratic relations
//! (commutators of formal multiplication matrices). This crate:
//!
//! - enumerates m-dimensional partitions and their order ideals/borders
//!   ([`partitions`]);
//! - builds the symbolic multiplication matrices and the commutation relation
//!   system of each stratum ([`relations`]);
//! - reduces the relations by exact linear elimination, counts residual
//!   points over prime fields, and interpolates the stratum class in `Z[L]`
//!   ([`stratum`]);
//! - validates the stratification numerically over F_q: samples stratum
//!   points, checks the matrices commute, and recovers the partition from the
//!   colon-ideal subquotient chain ([`quotient`]);
//! - carries classes through the power structure on the Grothendieck ring to
//!   global Hilbert-scheme classes ([`motivic`]).
//!
//! The `hilbert-strata` binary exposes the same pipeline as subcommands; the
//! `examples/` directory demonstrates each capability on the library API.

pub mod cache;
pub mod cli;
pub mod config;
pub mod error;
pub mod gf;
pub mod motivic;
pub mod partitions;
pub mod quotient;
pub mod relations;
pub mod stratum;

pub use error::Error;
