//! Computational toolkit for graph-wreath products `A ≀_Γ H`.
//!
//! The crate is organised bottom-up:
//!
//! * [`graphs`]: simple graphs, clique enumeration and flag complexes.
//! * [`actions`]: group actions on graphs (finite permutation groups and
//!   `Z`-shifts of periodic graphs), clique orbits and stabilizers.
//! * [`homology`]: exact integer linear algebra (Smith normal form) and
//!   homology of chain complexes.
//! * [`polyprod`]: cellular chain complexes of polyhedral products `X^L`.
//! * [`lhs_decomp`]: the collapsed Lyndon–Hochschild–Serre decomposition for
//!   `H = Z`, cross-checked against the algebraic mapping torus.
//! * [`presentations`]: finite presentations of graph products and
//!   graph-wreath products, and their abelianizations.
//! * [`verdict`]: the `F_n` decision engine with a justification trace.
//! * [`houghton`]: Houghton's groups `H_n` as eventually-translational
//!   permutations of `n` rays.
//!
//! Everything is exact: integers are arbitrary precision and no floating point
//! is used anywhere.

pub mod actions;
pub mod error;
pub mod graphs;
pub mod homology;
pub mod houghton;
pub mod lhs_decomp;
pub mod polyprod;
pub mod presentations;
pub mod verdict;

pub use error::{Error, Result};
