//! Exact computer algebra over prime fields for Frobenius-splitting
//! certificates: Groebner bases, colon ideals, bracket powers, determinantal
//! ideals, generic links and generic residual intersections.

pub mod determinantal;
pub mod error;
pub mod fcriteria;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod linkage;
pub mod monomial;
pub mod poly;
pub mod ring;
pub mod text;
pub mod var;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use groebner::{GroebnerBasis, GroebnerConfig};
pub use ideal::Ideal;
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use poly::Polynomial;
pub use ring::{PolyRing, Ring};
pub use var::{MatrixSymbol, Role, VariableId};
