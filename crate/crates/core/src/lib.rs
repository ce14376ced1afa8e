//! Exact computational checks of the identity
//! `c_SM(1_U) = c(Der_X(-log D)) ∩ [X]` for hyperplane arrangements and plane
//! curves.
//!
//! * [`poly`]: sparse rational polynomials, monomial orders and the text grammar.
//! * [`groebner`]: Buchberger's algorithm, elimination, syzygies, and the
//!   Jacobian / symmetric / Rees ideals behind the linear-type test.
//! * [`chow`]: truncated Chow rings of projective space and a formal
//!   projective-bundle calculus (pushforward, shadow, the shadow-chain check).
//! * [`arrangement`]: intersection lattices, Möbius values, characteristic
//!   polynomials and the CSM class of an arrangement complement.
//! * [`logder`]: logarithmic derivations, Saito's criterion, exponents and the
//!   Chern class of the logarithmic tangent sheaf.
//! * [`verify`]: end-to-end reports, job files and batch runs.

pub mod arrangement;
pub mod chow;
pub mod groebner;
pub mod linalg;
pub mod logder;
pub mod par;
pub mod poly;
pub mod verify;

pub use par::Execution;
pub use poly::{parse_polynomial, Monomial, MonomialOrder, PolyError, Polynomial, Rational, Ring};
