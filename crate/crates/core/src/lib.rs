//! Exact lattice-theoretic and invariant-theoretic computations for Hessian
//! K3 surfaces of cubic surfaces and the moduli space of cubic surfaces.

pub mod linalg;
pub mod lattice;
pub mod curves;
pub mod k3;
pub mod poly;
pub mod cubic;
pub mod moduli;
pub mod catalog;
pub mod repro;
