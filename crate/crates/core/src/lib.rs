//! Exact character calculus for BGG category O.
//!
//! The crate works entirely at the level of formal characters: elements of
//! the convolution ring of weight-supported integer series, represented in
//! rational form (coset-grouped polynomial numerators over products of
//! positive-root binomial factors). On top of the ring it provides the
//! category-O constructors and decision procedures: Verma and Weyl
//! characters, Verma-basis decomposition, the finite-dimensionality
//! criterion, and the tensor-product obstruction test, together with
//! independent brute-force oracles used by the test suite.
//!
//! All arithmetic is exact: rational weight coordinates, arbitrary-precision
//! integer coefficients, no floats anywhere. Values are immutable and the
//! operations are pure; with the default `parallel` feature the data-parallel
//! kernels (`par_series_expand`, `par_theorem_sweep`) run on rayon and
//! produce output identical to their sequential counterparts.

// Index loops over square matrices stay as index loops.
#![allow(clippy::needless_range_loop)]

pub mod category_o;
pub mod char_ring;
pub mod error;
pub mod json;
pub mod oracles;
pub mod rat;
pub mod root_system;

pub use category_o::{
    assemble_from_verma, char_dimension, is_finite_dim_char, kostant_p, satisfies_o_necessary,
    simple_character, tensor_obstruction, theorem_sweep, verma_character, verma_decomposition,
    weyl_character, SweepEntry, SweepReport, TensorVerdict, VermaDecomposition,
};
#[cfg(feature = "parallel")]
pub use category_o::par_theorem_sweep;
pub use char_ring::{divide_by_factor, LaurentPoly, Mono, RationalChar, SeriesWindow};
pub use error::Error;
pub use rat::Rat;
pub use root_system::{ExtWeylElement, Root, RootSystem, Weight, WeylElement, DEFAULT_ENUM_CAP};
