//! Exact combinatorics of monomial ideals: minimal generators, exchange
//! properties, linear quotients, componentwise linearity, and ideals of
//! k-covers of weighted hypergraphs.

pub mod bounds;
pub mod error;
pub mod exchange;
pub mod hypergraph;
pub mod ideal;
pub mod monomial;
pub mod properties;
pub mod quotients;
pub mod resolution;
pub mod suite;

pub use bounds::Bounds;
pub use error::{Error, Result};
pub use exchange::{Certificate, VariableOrder, Witness};
pub use ideal::MonomialIdeal;
pub use monomial::{Monomial, Var};
