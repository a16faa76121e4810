//! Finite groups, finite universal algebras, homomorphism search and
//! cellular automata `A^G -> A^G`, with tools for the endomorphic ones.
//!
//! The runnable programs under `examples/` are the quickest tour.

pub mod algebra;
pub mod boolean;
pub mod builtins;
pub mod ca;
pub mod error;
pub mod group;
pub mod hom;
pub mod limits;
pub mod report;
pub mod suites;
pub mod theory;
pub mod tuple;

pub use algebra::{Algebra, FiniteAlgebra, HomMap, PowerAlgebra, Signature};
pub use ca::{CellularAutomaton, LocalRule};
pub use error::{Error, Result};
pub use group::{Configuration, Element, FiniteGroup, Group, MemorySet};
pub use limits::Limits;
