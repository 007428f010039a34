//! Critical ideals of digraphs over `Z[X]`.
//!
//! The crate computes generalized Laplacians, their critical ideals and the
//! algebraic co-rank `gamma`, classifies `gamma`-critical digraphs, recognizes
//! the `Lambda` family, and computes critical and Smith groups through the
//! Smith normal form.

pub mod abelian;
pub mod cli;
pub mod critical;
pub mod digraph;
pub mod ideals;
pub mod lambda;
pub mod zpoly;

pub use critical::{algebraic_corank, critical_ideal_gens, generalized_laplacian, is_f_free, is_gamma_critical};
pub use digraph::{Digraph, VertexSet};
pub use zpoly::{Monomial, MonomialOrder, Polynomial};
