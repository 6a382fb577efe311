//! Cyclotomic quotients `R^Λ(β)` and the kernel bimodules `K₀`, `K₁`,
//! `F^Λ` of the induction functors, with the maps between them, all as
//! exact linear algebra degree by degree.

pub mod algebra;
pub mod bimodule;
pub mod bounds;
pub mod module;
pub mod phi;
pub mod record;
pub mod simples;
pub mod tensor;

use thiserror::Error;

pub use algebra::{ideal_piece_direct, CycAlgebra};
pub use bounds::{degree_cap, nilpotency_bounds, NilpotencyBounds};
pub use module::{Column, ColumnSpec, QuotientModule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("weight or root data has the wrong rank")]
    Rank,
    #[error("height {0} exceeds the supported number of strands")]
    TooLong(usize),
    #[error("sequence {0:?} does not have the algebra's weight")]
    Weight(Vec<u8>),
    #[error("basis degree {degree} lies outside the cap [{lo}, {hi}]")]
    OutsideCap { degree: i64, lo: i64, hi: i64 },
    #[error("degree window {window} is below the top degree {needed} of F^Λ")]
    Window { window: i64, needed: i64 },
    #[error("decomposition failed in degree {0}: {1}")]
    Decomposition(i64, String),
    #[error("stored record: {0}")]
    Record(String),
}
