//! Exact finite rings, polynomials, birings, Lawvere theories and
//! Tall–Wraith monoids, with verifiers for their laws.
//!
//! Coefficient rings are runtime context objects implementing [`Ring`];
//! [`Integers`] and [`FiniteRing`] are the two base implementations.

pub mod biring;
pub mod error;
pub mod finring;
pub mod lawvere;
pub mod poly;
pub mod report;
pub mod ring;
pub mod toycoh;
pub mod twmon;

pub use biring::{Biring, BiringError, CoidealWitness};
pub use error::ParseError;
pub use finring::{Element, FiniteRing, RingError, RingSpec};
pub use lawvere::{FiniteAlgebra, LawvereError, Term, Theory};
pub use poly::{Monomial, PolyError, Polynomial, Var};
pub use report::{Case, Report};
pub use ring::{FiniteCarrier, Integers, Literal, Ring};
pub use toycoh::{IsoLevel, PointwiseRing, SequenceRing, ToyError};
pub use twmon::{FiniteMonoid, FunTw, MonoidPlethory, PolyTw, TallWraith, TwError};

pub type IntPoly = Polynomial<Integers>;
pub type FinPoly = Polynomial<FiniteRing>;
pub type IntBiring = Biring<Integers>;
pub type FinBiring = Biring<FiniteRing>;
pub type FinPolyTw = PolyTw<FiniteRing>;
