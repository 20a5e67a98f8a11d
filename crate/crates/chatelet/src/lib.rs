//! Exact arithmetic for conic bundle surfaces `y^2 - a z^2 = F(x,1)`.
//!
//! For a squarefree integer `a` and an integral binary form `F` of even
//! degree whose irreducible factors stay irreducible over `Q(sqrt(a))`,
//! this crate computes the descent data attached to the surface:
//!
//! - [`arith`] - integer plumbing: factorization, valuations, Kronecker symbols
//! - [`forms`] - binary forms, resultants, surface hypotheses validation
//! - [`quadfield`] - `Q(sqrt(a))`: fundamental unit, class number one tests,
//!   norm equations and representation counts
//! - [`multiquad`] - multiquadratic field elements, splitting of quadratic
//!   factors into linear forms and the Pluecker relations between them
//! - [`picard`] - the geometric Picard lattice with its Galois action, fixed
//!   sublattices, Tate cohomology, and the alpha / beta invariants
//! - [`torsor`] - the finite set of torsor classes, the label assignment of
//!   rational points and the partition check
//! - [`counting`] - height-bounded point enumeration, representation sums and
//!   truncated local densities
//! - [`cli`] - JSON batch front-end used by the `chatelet` binary
//!
//! The `examples/` directory contains one runnable program per capability;
//! start with `cargo run --example surface_invariants`.

pub mod arith;
pub mod cli;
pub mod counting;
pub mod forms;
pub mod lattice;
pub mod multiquad;
pub mod picard;
pub mod quadfield;
pub mod torsor;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
