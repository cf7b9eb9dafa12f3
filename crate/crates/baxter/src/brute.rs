//! Brute-force oracle: enumerate every 0/1 matrix of a shape and filter by
//! the pinwheel definition.
//!
//! This module stays deliberately naive so it can serve as ground truth for
//! the automaton and the counting machinery. The default mode prunes column
//! prefixes with the automaton's step function for speed; definition-only
//! mode touches nothing but the matrix checks, and the two must always agree.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::automaton::{step, ColumnSymbol, StateVector};
use crate::matrix::BinaryMatrix;

/// Default scan budget: shapes up to `2^24` matrices.
pub const DEFAULT_BUDGET_BITS: u32 = 24;

/// Hard cap; masks are 64-bit and full scans beyond this are hopeless anyway.
pub const MAX_BUDGET_BITS: u32 = 48;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BruteMode {
    /// Enumerate column sequences, discarding prefixes the automaton rejects.
    Pruned,
    /// Scan all `2^(rows*cols)` matrices using only the pinwheel definition.
    DefinitionOnly,
}

#[derive(Clone, Copy, Debug)]
pub struct BruteOpts {
    pub budget_bits: u32,
    pub mode: BruteMode,
}

impl Default for BruteOpts {
    fn default() -> Self {
        BruteOpts {
            budget_bits: DEFAULT_BUDGET_BITS,
            mode: BruteMode::Pruned,
        }
    }
}

#[derive(Error, Clone, PartialEq, Eq, Debug)]
pub enum BruteError {
    #[error(
        "{rows}x{cols} needs a {required}-bit scan budget but only {budget} bits are allowed; \
         raise the budget to proceed"
    )]
    BudgetExceeded {
        rows: usize,
        cols: usize,
        required: u64,
        budget: u32,
    },
    #[error("matrix shape must have at least one row and one column")]
    EmptyShape,
}

fn check_shape(rows: usize, cols: usize, budget_bits: u32) -> Result<u32, BruteError> {
    if rows == 0 || cols == 0 {
        return Err(BruteError::EmptyShape);
    }
    let required = rows as u64 * cols as u64;
    let budget = budget_bits.min(MAX_BUDGET_BITS);
    if required > budget as u64 {
        return Err(BruteError::BudgetExceeded {
            rows,
            cols,
            required,
            budget,
        });
    }
    Ok(required as u32)
}

/// Number of `rows x cols` Baxter matrices with the default budget and mode.
pub fn brute_count(rows: usize, cols: usize) -> Result<BigUint, BruteError> {
    brute_count_with(rows, cols, &BruteOpts::default())
}

pub fn brute_count_with(rows: usize, cols: usize, opts: &BruteOpts) -> Result<BigUint, BruteError> {
    let bits = check_shape(rows, cols, opts.budget_bits)?;
    let count = match opts.mode {
        BruteMode::DefinitionOnly => scan_count(rows, cols, bits),
        BruteMode::Pruned => pruned_count(rows, cols),
    };
    Ok(BigUint::from(count))
}

/// Partition of the count by number of extra 1's (total 1's minus columns).
pub fn brute_count_by_extra(
    rows: usize,
    cols: usize,
) -> Result<BTreeMap<usize, BigUint>, BruteError> {
    brute_count_by_extra_with(rows, cols, &BruteOpts::default())
}

pub fn brute_count_by_extra_with(
    rows: usize,
    cols: usize,
    opts: &BruteOpts,
) -> Result<BTreeMap<usize, BigUint>, BruteError> {
    let bits = check_shape(rows, cols, opts.budget_bits)?;
    let by_extra = match opts.mode {
        BruteMode::DefinitionOnly => scan_count_by_extra(rows, cols, bits),
        BruteMode::Pruned => pruned_count_by_extra(rows, cols),
    };
    Ok(by_extra
        .into_iter()
        .map(|(extra, n)| (extra, BigUint::from(n)))
        .collect())
}

/// Yields exactly the Baxter matrices of the shape, in lexicographic cell
/// order (row-major). Always definition-checked.
pub fn enumerate_baxter(
    rows: usize,
    cols: usize,
) -> Result<impl Iterator<Item = BinaryMatrix>, BruteError> {
    enumerate_baxter_with(rows, cols, DEFAULT_BUDGET_BITS)
}

pub fn enumerate_baxter_with(
    rows: usize,
    cols: usize,
    budget_bits: u32,
) -> Result<impl Iterator<Item = BinaryMatrix>, BruteError> {
    let bits = check_shape(rows, cols, budget_bits)?;
    Ok((0..1u64 << bits)
        .map(move |mask| BinaryMatrix::from_mask(rows, cols, mask))
        .filter(|m| m.is_baxter()))
}

fn scan_count(rows: usize, cols: usize, bits: u32) -> u64 {
    (0..1u64 << bits)
        .into_par_iter()
        .filter(|&mask| BinaryMatrix::from_mask(rows, cols, mask).is_baxter())
        .count() as u64
}

fn scan_count_by_extra(rows: usize, cols: usize, bits: u32) -> BTreeMap<usize, u64> {
    (0..1u64 << bits)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<usize, u64>, mask| {
            let m = BinaryMatrix::from_mask(rows, cols, mask);
            if m.is_baxter() {
                let extra = m.extra_ones().expect("Baxter matrices have no zero column");
                *acc.entry(extra).or_insert(0) += 1;
            }
            acc
        })
        .reduce(BTreeMap::new, merge_counts)
}

fn merge_counts(mut a: BTreeMap<usize, u64>, b: BTreeMap<usize, u64>) -> BTreeMap<usize, u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Depth-first count of column sequences, pruning prefixes the automaton
/// already rejects. Branches are split across threads by the first column.
fn pruned_count(rows: usize, cols: usize) -> u64 {
    ColumnSymbol::alphabet(rows)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|first| match step(&StateVector::Start, &first) {
            Ok(state) => pruned_dfs(&state, rows, cols - 1),
            Err(_) => 0,
        })
        .sum()
}

fn pruned_dfs(state: &StateVector, rows: usize, remaining: usize) -> u64 {
    if remaining == 0 {
        return u64::from(state.is_accept());
    }
    ColumnSymbol::alphabet(rows)
        .filter_map(|symbol| step(state, &symbol).ok())
        .map(|next| pruned_dfs(&next, rows, remaining - 1))
        .sum()
}

fn pruned_count_by_extra(rows: usize, cols: usize) -> BTreeMap<usize, u64> {
    ColumnSymbol::alphabet(rows)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|first| {
            let mut acc = BTreeMap::new();
            if let Ok(state) = step(&StateVector::Start, &first) {
                pruned_dfs_by_extra(
                    &state,
                    rows,
                    cols - 1,
                    first.ones() as usize - 1,
                    &mut acc,
                );
            }
            acc
        })
        .reduce(BTreeMap::new, merge_counts)
}

fn pruned_dfs_by_extra(
    state: &StateVector,
    rows: usize,
    remaining: usize,
    extra: usize,
    acc: &mut BTreeMap<usize, u64>,
) {
    if remaining == 0 {
        if state.is_accept() {
            *acc.entry(extra).or_insert(0) += 1;
        }
        return;
    }
    for symbol in ColumnSymbol::alphabet(rows) {
        if let Ok(next) = step(state, &symbol) {
            pruned_dfs_by_extra(
                &next,
                rows,
                remaining - 1,
                extra + symbol.ones() as usize - 1,
                acc,
            );
        }
    }
}
