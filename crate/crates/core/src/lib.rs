//! Exact computer algebra for weighted-graded polynomial ideals: Gröbner
//! bases, Hilbert series, elimination, free resolutions, and constructors
//! for the canonical rings of stable I-surfaces.

pub mod coeff;
pub mod error;
pub mod groebner;
pub mod hilbert;
pub mod resolution;
pub mod ring;
pub mod strata;

pub use coeff::{Field, FieldElement, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME};
pub use error::{Error, ParseError, Result};
pub use groebner::{GbOptions, GroebnerBasis, Ideal};
pub use hilbert::{HilbertSeries, InvariantReport, RationalSeries};
pub use resolution::{BettiTable, GradedFreeModule, Resolution, SyzygyMatrix};
pub use ring::{Monomial, MonomialOrder, Polynomial, Ring, RingRef};
