//! Exact computation of phase tropicalizations over the Hahn-series field
//! `𝕂 = ℂ((t^ℚ))`: valuations and initial forms, initial ideals and their
//! critical levels, hypersurface lifting, and the numeric SL2 limit map.

pub mod coeff;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hahn;
pub mod hilbert;
pub mod ideal;
pub mod lifting;
pub mod parse;
pub mod phase;
pub mod poly;
pub mod sl2;
pub mod surface;
pub mod valued;

pub use coeff::Coeff;
pub use error::{Error, Result};
pub use hahn::{Exponent, GradedMonomial, HahnPoly, HahnScalar, Valuation};
pub use poly::{ComplexPoly, Monomial, MonomialOrder, ValuedPoly};
