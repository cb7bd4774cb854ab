//! Exact computer algebra for Conway potentials of the fake Mazur link
//! family and the tools around them.
//!
//! Everything is integer or rational arithmetic; there is no floating point.

pub mod conway;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod knot_module;
pub mod linalg;
mod parse;
pub mod poly;
pub mod rational;
pub mod series;
pub mod walg;

pub use conway::{KnotData, LinkData};
pub use cyclotomic::{resultant, roots_of_unity_product, AuxPoly, CyclotomicContext};
pub use error::{Error, Result};
pub use group::{GElement, HeisElement, Word};
pub use knot_module::{LocalElem, ModulePresentation, RingTag};
pub use poly::LaurentPoly;
pub use rational::{Certificate, RationalFitBound, Variant, Verdict};
pub use series::{RationalSeries, TruncatedSeries};
pub use walg::WElement;

pub use num_bigint::BigInt;
