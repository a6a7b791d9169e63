//! Exact commutative algebra over prime fields: Groebner bases, ideal
//! arithmetic, lengths of graded quotients, tight closure in diagonal
//! hypersurface rings, Hilbert coefficients of filtrations, and
//! Stanley-Reisner combinatorics.

pub mod combinat;
pub mod error;
pub mod field;
pub mod filtration;
pub mod groebner;
pub mod ideal;
pub mod monomial;
pub mod order;
pub mod poly;
pub mod quotient;
pub mod simplicial;
pub mod tight;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use filtration::{Filtration, FiltrationRule, HilbertCoefficients, HiPVerdict};
pub use groebner::{buchberger, initial_ideal, normal_form, s_polynomial};
pub use ideal::{Ideal, ReductionVerdict};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use poly::{PolyRing, Polynomial};
pub use quotient::{LengthValue, QuotientRing, RingKind};
pub use simplicial::{EquivalenceReport, FHVectors, FaceRing, LsopFamily, SimplicialComplex};
pub use tight::{ClosedFormReport, DiagonalRing, FRationality, MembershipVerdict, TestElement};
