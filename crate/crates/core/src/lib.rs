//! Exact computations with symmetric cochains of finite-dimensional
//! commutative algebras: unshuffle insertions and graded brackets,
//! differentials and cohomology data, Maurer–Cartan expansions, gauge
//! transport, and an audit that checks a catalogue of identities on concrete
//! algebras.

pub mod algebra;
pub mod audit;
pub mod bracket;
pub mod cli;
pub mod cochain;
pub mod complex;
pub mod corpus;
pub mod deformation;
pub mod error;
pub mod exactla;
pub mod symbolic;

pub use algebra::{Algebra, IdentityReport, Witness};
pub use bracket::InsertionMode;
pub use cochain::SymCochain;
pub use error::{Error, Result};
pub use exactla::{Matrix, Rational};
