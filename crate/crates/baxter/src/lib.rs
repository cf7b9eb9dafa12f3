//! Exact enumeration and verification toolkit for Baxter matrices.
//!
//! A Baxter matrix is a 0/1 matrix in which every row and every column
//! contains a 1 and every pinwheel, clockwise and counterclockwise, has at
//! least one all-zero arm. This crate decides Baxter-ness directly from that
//! definition, builds the column-reading automaton `A_r` for a fixed number
//! of rows, counts r-by-k Baxter matrices exactly, extracts the eventual
//! counting polynomial of degree `2r - 2` in exact rational arithmetic,
//! refines the counts by number of extra 1's, and cross-checks everything
//! against a brute-force oracle.

pub mod automaton;
pub mod brute;
pub mod counting;
pub mod matrix;
pub mod poly;
pub mod verify;

pub use num_bigint::BigUint;

pub use automaton::{build_automaton, run, Automaton, ColumnSymbol, Reject, RowState, StateVector};
pub use brute::{brute_count, brute_count_by_extra, enumerate_baxter, BruteMode, BruteOpts};
pub use counting::{
    composition_count, count_from_skeletons, dp_count, dp_count_by_extra, eventual_polynomial,
    extra_polynomials, skeleton_paths, CountingPolynomial, SkeletonPath,
};
pub use matrix::{BinaryMatrix, Chirality, PinwheelId, Violation};
pub use poly::Polynomial;
