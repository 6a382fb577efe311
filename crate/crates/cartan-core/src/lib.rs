//! Cartan data, weight pairings and Laurent polynomials.
//!
//! Weights are never realized in a lattice. Everything downstream only
//! needs the pairings `<h_i, Λ - β>` and `(α_i | Λ - β)`, which are
//! computed from the levels of `Λ` and the generalized Cartan matrix.

mod datum;
mod laurent;

pub use datum::{CartanDatum, CartanError, DominantWeight, RootCombo};
pub use laurent::{qbinom, qfact, qint, LaurentPoly, ParseLaurentError};
