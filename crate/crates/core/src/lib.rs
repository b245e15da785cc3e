//! Exact quantum homology of toric symplectic 4-manifolds and the Seidel
//! elements of their Hamiltonian circle actions.

pub mod element;
pub mod exec;
pub mod expr;
pub mod manifolds;
pub mod novikov;
pub mod polytope;
pub mod presentation;
pub mod rational;
pub mod reduce;
pub mod seidel;
pub mod upoly;
