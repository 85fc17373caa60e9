//! Growth of monomial algebras built from a power-tower word, Irving's group,
//! and the prime algebra `B ⊆ A[G]` with its central witnesses.

pub mod algebra;
pub mod centre;
pub mod config;
pub mod extnat;
pub mod field;
pub mod group;
pub mod linalg;
pub mod parse;
pub mod report;
pub mod word;
