//! Minimal graded free resolutions over standard graded algebras `S/I`,
//! with `S` a polynomial ring over a prime field, and the homological
//! invariants built on them: graded Betti numbers, regularity, rate and
//! Backelin rate, plus checkers for lex-segment ideals, stretched algebras,
//! generalized Koszul filtrations and tensor products.

pub mod error;
pub mod field;
pub mod filtration;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod invariants;
pub mod lex;
pub mod linalg;
pub mod module;
pub mod monomial;
pub mod oracle;
pub mod poly;
pub mod random;
pub mod resolution;
pub mod tensor;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use ideal::{Ideal, QuotientRing};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{PolyRing, Polynomial};
