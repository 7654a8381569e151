//! Exact valuation theory and Frobenius splittings over rational function
//! fields of prime characteristic.
//!
//! Everything here is `no_std` (with `alloc`): finite fields, sparse
//! polynomials and rational functions, ordered value groups, monomial and
//! Gauss valuations, lazy and Hahn series, the monomial-basis Frobenius
//! splitting of a monomialized valuation ring, and the numeric criteria used
//! to classify valuations. IO, descriptor files and the command line live in
//! the `valfrob` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classify;
pub mod error;
pub mod field;
pub mod frob;
pub mod group;
pub mod hahn;
pub mod lattice;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod sample;
pub mod series;
pub mod valuation;

pub use classify::{
    abhyankar_center_check, center_degree_identity, classify, defect_identity, f_finite_verdict, fibre_dimension,
    pth_power_degree, split_verdict, Answer, CenterDescriptor, ClassificationReport, SplitBudget, SplitRule,
    ValuationDescriptor,
};
pub use error::*;
pub use field::{Fq, GroundField};
pub use hahn::{hahn_embed_value, unit_pth_power_factor, HahnSeries};
pub use frob::{
    eta_split, extend_split, p_decompose, verify_claim, verify_free_basis, verify_inf_eq, BasisSetting, FrobDecomposition,
    SplittingWitness,
};
pub use group::{GroupElement, GroupKind, Irrational, ValueGroup};
pub use parse::{poly_parse, render, render_polynomial, rf_parse};
pub use poly::{Monomial, Polynomial};
pub use ratfunc::{rf_eq, FieldDescriptor, RationalFunction};
pub use series::{series_ord, series_split, LazySeries, SeriesEmbedding};
pub use valuation::{Chart, GaussValuation, GaussVariant, MonomialValuation, ResidueField, ValuedBaseField};
