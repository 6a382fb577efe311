//! KLR algebras `R(β)` over the rationals.
//!
//! Elements are combinations of basis monomials `τ_w x^a e(ν)`, where `w`
//! carries its lexicographically smallest reduced word. Products are
//! computed by rewriting with the defining relations; see [`Klr`].
//!
//! Positions and residues are 0-based in code; rendered output uses
//! 1-based positions and the datum's labels.

pub mod engine;
pub mod linalg;
pub mod mono;
pub mod par;
pub mod perm;
pub mod poly;
pub mod qspec;
pub mod verify;

pub use engine::{exps_of_weight, Klr, KlrError};
pub use linalg::{axpy, Echelon, SparseVec};
pub use mono::{scalar, Elem, Mono, Scalar};
pub use perm::{table, MAX_N};
pub use poly::{Exps, Poly};
pub use qspec::{QSpec, QSpecError, QTerms};
