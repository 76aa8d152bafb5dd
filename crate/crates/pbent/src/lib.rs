//! Exact analysis of p-ary functions f: F_p^n -> F_p.
//!
//! Everything spectral is computed over the cyclotomic integers Z[w] with
//! w = e^(2 pi i / p), so bentness, regularity and duals are decided exactly,
//! with no floating point anywhere. On top of that sit a bottom-up search for
//! k-normality (constancy or affinity on k-dimensional flats), bent-function
//! constructions, and counting bounds for the existence of non-normal
//! functions.

#![forbid(unsafe_code)]

pub mod constructions;
pub mod error;
mod exec;
pub mod func;
pub mod gf;
pub mod normality;
pub mod spectrum;
pub mod subspace;
pub mod vecspace;

/// Largest supported domain size p^n (3^10).
pub const MAX_DOMAIN: u32 = 59049;

pub use constructions::{
    coulter_matthews, cubic_density_bound, direct_sum_extend, fixture, fixture_names,
    maiorana_mcfarland, nonnormal_existence, normality_cap, product_construction, trace_bent,
    BoundQuery, CapKind, ExistenceBound,
};
pub use error::{Error, Result};
pub use func::{PAryFunction, TraceSpec, TraceTerm};
pub use gf::{ExtField, FieldElem, PrimeModulus};
pub use normality::{
    brute_force_oracle, check_witness, combine_affine, combine_constant, constant_cosets,
    max_normality, test_normality, ConstantFlatRecord, MaxNormality, Mode, NormalityReport,
    RestrictionValues, SearchOptions, SearchStats, Verdict, Witness,
};
pub use spectrum::{
    classify_regularity, dual, gauss_sum, is_bent, walsh_at, walsh_spectrum, walsh_spectrum_seq,
    CyclotomicInt, RegularityKind, RegularityVerdict, WalshSpectrum, Zeta,
};
pub use subspace::{
    coset_of, enumerate_affine_flats, enumerate_subspaces, flat_count, gaussian_binomial,
    one_flat_completion, AffineFlat, Subspace,
};
pub use vecspace::VecSpace;
