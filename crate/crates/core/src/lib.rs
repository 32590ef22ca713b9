//! Zero-dimensional parametrizations from multiplication matrices over a
//! prime field, via block Wiedemann sequences and approximant bases.
//!
//! The crate is `no_std` with `alloc` when the default `std` feature is
//! turned off; the `std` feature adds threaded Krylov workers and timings.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod dense;
pub mod error;
pub mod field;
pub mod krylov;
pub mod numerators;
pub mod param;
pub mod poly;
pub mod polymat;
pub mod rng;
pub mod seq;
pub mod sparse;
pub mod splitting;

pub use dense::DenseMat;
pub use error::{Error, Result};
pub use field::{FieldElem, Modulus, P101, P65537};
pub use krylov::{krylov_left_sequence, krylov_projected, project_right, project_vector, KrylovTable};
pub use numerators::{
    matrix_numerator, scalar_numerator, scalar_numerator_corrected, scalar_numerator_from_terms, vector_numerator,
    NumeratorInputs,
};
pub use param::{
    apply_poly, block_parametrization, block_parametrization_traced, parametrization_from_series, solve,
    verify_against_points, BlockOptions, BlockTrace, Instance, PointReport, SolveStats, SolverConfig, ZeroDimParam,
};
pub use poly::Poly;
pub use polymat::{
    approximant_basis, approximant_basis_iterative, cancels_sequence, is_popov, is_row_reduced, is_row_reduced_shifted,
    largest_invariant_factor, left_quotient_row, minimal_matrix_generator, popov_approximant_basis, row_space_contains,
    weak_popov, MatSeq, PolyMat,
};
pub use rng::Rng;
pub use seq::{
    berlekamp_massey, laurent_expand, power_projection, power_projection_naive, power_projections,
    scalar_numerator_direct, transposed_product, ScalarSeq,
};
pub use sparse::{combine_matrices, SparseMat};
pub use splitting::{
    block_parametrization_residual, block_parametrization_with_splitting, block_parametrization_x1,
    change_separating_element, correction_matrices, decompose, solve_split, union_params, CorrectionSet, Decomposer,
    SplitTrace, X1SolveCache,
};
