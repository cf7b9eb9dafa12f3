//! Exact counts of Baxter matrices for a fixed row count.
//!
//! Three routes, all in exact arithmetic, cross-checked against each other:
//! iterating the edge relation of `A_r` (dynamic programming over paths),
//! summing composition counts over self-arrow-free skeleton paths, and the
//! eventual counting polynomial of degree at most `2r - 2`, obtained both
//! symbolically from the skeletons and by rational interpolation through the
//! dynamic-programming counts.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::automaton::{build_automaton, Automaton, BuildError, ColumnSymbol};
use crate::poly::Polynomial;

#[derive(Error, Debug)]
pub enum CountingError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(
        "skeleton and interpolation polynomials disagree for {rows} rows: \
         {skeleton} vs {interpolated}"
    )]
    MethodDisagreement {
        rows: usize,
        skeleton: Polynomial,
        interpolated: Polynomial,
    },
    #[error("counting polynomial for {rows} rows has degree {degree}, above the bound {bound}")]
    DegreeExceeded {
        rows: usize,
        degree: usize,
        bound: usize,
    },
    #[error(
        "interpolated polynomial for {rows} rows fails verification at k={k}: \
         counted {expected}, polynomial gives {got}"
    )]
    UnstableWindow {
        rows: usize,
        k: usize,
        expected: BigUint,
        got: BigRational,
    },
    #[error("no validity threshold found at or below k={scanned_to} for {rows} rows")]
    ThresholdNotFound { rows: usize, scanned_to: usize },
    #[error("accepting path with {extra} extra 1's in {rows} rows; the bound is {}", rows - 1)]
    ExtraBound { rows: usize, extra: usize },
    #[error("count table: per-extra split for k={cols} does not sum to the total")]
    InconsistentTable { cols: usize },
}

/// `C(n, r)` exactly.
fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut result = BigUint::one();
    for i in 0..r {
        result = result * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    result
}

/// Number of ways to distribute `k - l` self-arrow repetitions over `m` loop
/// nodes: `C(k-l+m-1, m-1)` for `k >= l`, the indicator of `k == l` when
/// `m == 0`, and 0 when `k < l`.
pub fn composition_count(l: usize, m: usize, k: usize) -> BigUint {
    if k < l {
        return BigUint::zero();
    }
    if m == 0 {
        return if k == l { BigUint::one() } else { BigUint::zero() };
    }
    binomial((k - l + m - 1) as u64, (m - 1) as u64)
}

/// `C(k-l+m-1, m-1)` as a polynomial in `k`, for `m >= 1`. This agrees with
/// [`composition_count`] exactly for `k >= l - m + 1` and in particular from
/// `k = l` on; `m = 0` classes contribute no polynomial at all.
fn composition_polynomial(l: usize, m: usize) -> Polynomial {
    if m == 0 {
        return Polynomial::zero();
    }
    let mut p = Polynomial::one();
    for j in 0..m - 1 {
        let shift = m as i64 - 1 - l as i64 - j as i64;
        p = &p
            * &Polynomial::from_coeffs(vec![
                BigRational::from_integer(BigInt::from(shift)),
                BigRational::one(),
            ]);
    }
    let mut fact = BigRational::one();
    for j in 1..m {
        fact *= BigRational::from_integer(BigInt::from(j as i64));
    }
    p.scale(&fact.recip())
}

fn rational(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

fn accept_sum(aut: &Automaton, per_state: &[BigUint]) -> BigUint {
    per_state
        .iter()
        .enumerate()
        .filter(|&(id, _)| aut.is_accept(id))
        .map(|(_, n)| n)
        .sum()
}

/// Accepting-path counts for every length `0..=k_max`, by iterating the edge
/// relation over an exact-integer vector indexed by states.
pub fn dp_counts_up_to(aut: &Automaton, k_max: usize) -> Vec<BigUint> {
    let mut current = vec![BigUint::zero(); aut.states().len()];
    current[aut.start()] = BigUint::one();
    let mut out = vec![accept_sum(aut, &current)];
    for _ in 1..=k_max {
        let mut next = vec![BigUint::zero(); aut.states().len()];
        for e in aut.edges() {
            if !current[e.from].is_zero() {
                let add = current[e.from].clone();
                next[e.to] += add;
            }
        }
        current = next;
        out.push(accept_sum(aut, &current));
    }
    out
}

/// Number of `rows x k` Baxter matrices, as length-`k` accepting paths.
pub fn dp_count(rows: usize, k: usize) -> Result<BigUint, CountingError> {
    Ok(dp_count_on(&build_automaton(rows)?, k))
}

pub fn dp_count_on(aut: &Automaton, k: usize) -> BigUint {
    dp_counts_up_to(aut, k).pop().expect("at least one entry")
}

/// Per-extra accepting-path counts for every length `0..=k_max`.
pub fn dp_extra_counts_up_to(aut: &Automaton, k_max: usize) -> Vec<BTreeMap<usize, BigUint>> {
    let n = aut.states().len();
    let mut current: Vec<BTreeMap<usize, BigUint>> = vec![BTreeMap::new(); n];
    current[aut.start()].insert(0, BigUint::one());
    let accept_totals = |per_state: &[BTreeMap<usize, BigUint>]| {
        let mut totals: BTreeMap<usize, BigUint> = BTreeMap::new();
        for (id, classes) in per_state.iter().enumerate() {
            if aut.is_accept(id) {
                for (extra, count) in classes {
                    *totals.entry(*extra).or_default() += count;
                }
            }
        }
        totals
    };
    let mut out = vec![accept_totals(&current)];
    for _ in 1..=k_max {
        let mut next: Vec<BTreeMap<usize, BigUint>> = vec![BTreeMap::new(); n];
        for e in aut.edges() {
            let add = e.symbol.ones() as usize - 1;
            for (extra, count) in &current[e.from] {
                *next[e.to].entry(extra + add).or_default() += count;
            }
        }
        current = next;
        out.push(accept_totals(&current));
    }
    out
}

/// Partition of `dp_count` by accumulated extra 1's. Keys stay below the row
/// count; an accepting path beyond that bound is an internal error.
pub fn dp_count_by_extra(rows: usize, k: usize) -> Result<BTreeMap<usize, BigUint>, CountingError> {
    dp_count_by_extra_on(&build_automaton(rows)?, k)
}

pub fn dp_count_by_extra_on(
    aut: &Automaton,
    k: usize,
) -> Result<BTreeMap<usize, BigUint>, CountingError> {
    let totals = dp_extra_counts_up_to(aut, k).pop().expect("entry");
    if let Some((&extra, _)) = totals.last_key_value() {
        if extra >= aut.rows() {
            return Err(CountingError::ExtraBound {
                rows: aut.rows(),
                extra,
            });
        }
    }
    Ok(totals)
}

/// An accepting path of `A_r` with all self arrows removed. Depth strictly
/// increases along it, so its states are distinct and it has at most `2r - 1`
/// edges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkeletonPath {
    states: Vec<usize>,
    symbols: Vec<ColumnSymbol>,
    loop_nodes: Vec<usize>,
    extra: usize,
    accepting: bool,
}

impl SkeletonPath {
    /// State ids along the path; the first is the start state.
    pub fn states(&self) -> &[usize] {
        &self.states
    }

    pub fn symbols(&self) -> &[ColumnSymbol] {
        &self.symbols
    }

    /// Ids of visited states that bear self arrows in `A_r`.
    pub fn loop_nodes(&self) -> &[usize] {
        &self.loop_nodes
    }

    /// `l`: number of edges.
    pub fn edge_count(&self) -> usize {
        self.symbols.len()
    }

    /// `m`: number of self-arrow-bearing nodes on the path.
    pub fn loop_node_count(&self) -> usize {
        self.loop_nodes.len()
    }

    /// Extra 1's contributed by the path's own columns.
    pub fn extra(&self) -> usize {
        self.extra
    }

    pub fn is_accepting(&self) -> bool {
        self.accepting
    }

    /// Matrices with `k` columns in this path's class.
    pub fn matrices_with_cols(&self, k: usize) -> BigUint {
        composition_count(self.edge_count(), self.loop_node_count(), k)
    }
}

/// Exhaustive depth-first enumeration of self-arrow-free paths from the
/// start state that end at accept states. Finite because every non-self
/// transition strictly increases depth, but the explicit list still grows
/// steeply with the row count; counting work should go through
/// [`skeleton_class_counts`] instead.
pub fn skeleton_paths(rows: usize) -> Result<Vec<SkeletonPath>, CountingError> {
    Ok(skeleton_paths_on(&build_automaton(rows)?))
}

pub fn skeleton_paths_on(aut: &Automaton) -> Vec<SkeletonPath> {
    fn dfs(
        aut: &Automaton,
        states: &mut Vec<usize>,
        symbols: &mut Vec<ColumnSymbol>,
        extra: usize,
        out: &mut Vec<SkeletonPath>,
    ) {
        let here = *states.last().expect("path never empty");
        if aut.is_accept(here) {
            out.push(SkeletonPath {
                states: states.clone(),
                symbols: symbols.clone(),
                loop_nodes: states[1..]
                    .iter()
                    .copied()
                    .filter(|&id| aut.has_self_arrow(id))
                    .collect(),
                extra,
                accepting: true,
            });
        }
        for e in aut.edges_from(here) {
            if e.to == here {
                continue;
            }
            debug_assert!(aut.depth(e.to) > aut.depth(here));
            states.push(e.to);
            symbols.push(e.symbol);
            dfs(aut, states, symbols, extra + e.symbol.ones() as usize - 1, out);
            states.pop();
            symbols.pop();
        }
    }

    let mut out = Vec::new();
    dfs(aut, &mut vec![aut.start()], &mut Vec::new(), 0, &mut out);
    out
}

/// Counts of accepting skeleton paths grouped by `(edge count, loop nodes,
/// extra)`. Equivalent to grouping [`skeleton_paths_on`] but computed as a
/// path-count sweep over the acyclic non-self edge relation, which stays
/// cheap for row counts where the explicit path list would be enormous.
pub fn skeleton_class_counts(aut: &Automaton) -> BTreeMap<(usize, usize, usize), BigUint> {
    let n = aut.states().len();
    let mut per_state: Vec<BTreeMap<(usize, usize, usize), BigUint>> = vec![BTreeMap::new(); n];
    per_state[aut.start()].insert((0, 0, 0), BigUint::one());
    let mut result: BTreeMap<(usize, usize, usize), BigUint> = BTreeMap::new();
    for id in 0..n {
        let classes = std::mem::take(&mut per_state[id]);
        if classes.is_empty() {
            continue;
        }
        if aut.is_accept(id) {
            for (key, count) in &classes {
                *result.entry(*key).or_default() += count;
            }
        }
        for e in aut.edges_from(id) {
            if e.to == id {
                continue;
            }
            // Canonical order is depth-major, so non-self edges only point
            // forward and one sweep sees every path.
            assert!(e.to > id, "non-self transition must increase depth");
            let add_extra = e.symbol.ones() as usize - 1;
            let add_m = usize::from(aut.has_self_arrow(e.to));
            for ((l, m, extra), count) in &classes {
                *per_state[e.to]
                    .entry((l + 1, m + add_m, extra + add_extra))
                    .or_default() += count;
            }
        }
    }
    result
}

/// Number of `rows x k` Baxter matrices as a sum of composition counts over
/// accepting skeleton paths. Must agree with [`dp_count`] for every `k`.
pub fn count_from_skeletons(rows: usize, k: usize) -> Result<BigUint, CountingError> {
    Ok(count_from_skeletons_on(&build_automaton(rows)?, k))
}

pub fn count_from_skeletons_on(aut: &Automaton, k: usize) -> BigUint {
    skeleton_class_counts(aut)
        .iter()
        .map(|(&(l, m, _), count)| count * composition_count(l, m, k))
        .sum()
}

/// As [`count_from_skeletons_on`], partitioned by extra 1's.
pub fn count_from_skeletons_by_extra_on(aut: &Automaton, k: usize) -> BTreeMap<usize, BigUint> {
    let mut out: BTreeMap<usize, BigUint> = BTreeMap::new();
    for (&(l, m, extra), count) in &skeleton_class_counts(aut) {
        let n = count * composition_count(l, m, k);
        if !n.is_zero() {
            *out.entry(extra).or_default() += n;
        }
    }
    out
}

/// A counting polynomial in `k` together with the least `k` from which it
/// matches the exact counts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountingPolynomial {
    polynomial: Polynomial,
    threshold: usize,
}

impl CountingPolynomial {
    pub fn new(polynomial: Polynomial, threshold: usize) -> Self {
        CountingPolynomial {
            polynomial,
            threshold,
        }
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.polynomial
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    /// Exact evaluation for `k >= threshold`; `None` below the threshold or
    /// if the value is not a nonnegative integer (which would break the
    /// contract of a counting polynomial).
    pub fn eval_count(&self, k: usize) -> Option<BigUint> {
        if k < self.threshold {
            return None;
        }
        let value = self.polynomial.eval_at_integer(k as u64);
        if !value.is_integer() {
            return None;
        }
        value.to_integer().try_into().ok()
    }
}

impl fmt::Display for CountingPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (k >= {})", self.polynomial, self.threshold)
    }
}

/// Symbolic route: sum the composition polynomials over accepting skeleton
/// classes with at least one loop node.
pub fn skeleton_polynomial(rows: usize) -> Result<Polynomial, CountingError> {
    Ok(skeleton_polynomial_on(&build_automaton(rows)?))
}

pub fn skeleton_polynomial_on(aut: &Automaton) -> Polynomial {
    let mut total = Polynomial::zero();
    for (&(l, m, _), count) in &skeleton_class_counts(aut) {
        if m == 0 {
            continue;
        }
        total = &total + &composition_polynomial(l, m).scale(&rational(count));
    }
    total
}

/// Interpolation route: exact-rational Lagrange interpolation through the
/// dynamic-programming counts at `k = r .. 3r - 2`, verified against the
/// counts at `k = 3r - 1 .. 5r`.
pub fn interpolated_polynomial(rows: usize) -> Result<Polynomial, CountingError> {
    let aut = build_automaton(rows)?;
    let dp = dp_counts_up_to(&aut, 5 * rows);
    interpolated_polynomial_from(&aut, &dp)
}

fn interpolated_polynomial_from(
    aut: &Automaton,
    dp: &[BigUint],
) -> Result<Polynomial, CountingError> {
    let r = aut.rows();
    let window_end = r + 2 * r - 2;
    assert!(dp.len() > 5 * r, "need counts through k = 5r");
    let points: Vec<(BigRational, BigRational)> = (r..=window_end)
        .map(|k| {
            (
                BigRational::from_integer(BigInt::from(k)),
                rational(&dp[k]),
            )
        })
        .collect();
    let poly = Polynomial::lagrange(&points);
    for (k, expected) in dp.iter().enumerate().take(5 * r + 1).skip(window_end + 1) {
        let got = poly.eval_at_integer(k as u64);
        if got != rational(expected) {
            return Err(CountingError::UnstableWindow {
                rows: r,
                k,
                expected: expected.clone(),
                got,
            });
        }
    }
    Ok(poly)
}

/// The eventual counting polynomial for `rows` rows: both routes computed
/// and compared for exact equality, degree checked against `2r - 2`, and the
/// threshold measured as the least `k0 >= 1` from which the polynomial
/// matches the exact counts on `[k0, k0 + 4r]`.
pub fn eventual_polynomial(rows: usize) -> Result<CountingPolynomial, CountingError> {
    eventual_polynomial_on(&build_automaton(rows)?)
}

pub fn eventual_polynomial_on(aut: &Automaton) -> Result<CountingPolynomial, CountingError> {
    let r = aut.rows();
    let scan_cap = 2 * r + 1;
    let dp = dp_counts_up_to(aut, scan_cap + 4 * r);
    let skeleton = skeleton_polynomial_on(aut);
    let interpolated = interpolated_polynomial_from(aut, &dp)?;
    if skeleton != interpolated {
        return Err(CountingError::MethodDisagreement {
            rows: r,
            skeleton,
            interpolated,
        });
    }
    let bound = 2 * r - 2;
    let degree = skeleton.degree().unwrap_or(0);
    if degree > bound {
        return Err(CountingError::DegreeExceeded {
            rows: r,
            degree,
            bound,
        });
    }
    let threshold = find_threshold(&skeleton, &dp, r, scan_cap, |dp, k| rational(&dp[k]))
        .ok_or(CountingError::ThresholdNotFound {
            rows: r,
            scanned_to: scan_cap,
        })?;
    Ok(CountingPolynomial::new(skeleton, threshold))
}

fn find_threshold<T>(
    poly: &Polynomial,
    table: &T,
    rows: usize,
    scan_cap: usize,
    value_at: impl Fn(&T, usize) -> BigRational,
) -> Option<usize> {
    (1..=scan_cap).find(|&k0| {
        (k0..=k0 + 4 * rows).all(|k| poly.eval_at_integer(k as u64) == value_at(table, k))
    })
}

/// One eventual polynomial per extra-ones class, cross-checked against the
/// per-extra dynamic-programming counts. The classes sum to the total
/// polynomial exactly.
pub fn extra_polynomials(
    rows: usize,
) -> Result<BTreeMap<usize, CountingPolynomial>, CountingError> {
    extra_polynomials_on(&build_automaton(rows)?)
}

pub fn extra_polynomials_on(
    aut: &Automaton,
) -> Result<BTreeMap<usize, CountingPolynomial>, CountingError> {
    let r = aut.rows();
    let classes = skeleton_class_counts(aut);
    if let Some((&(_, _, extra), _)) = classes.iter().find(|&(&(_, _, e), _)| e >= r) {
        return Err(CountingError::ExtraBound { rows: r, extra });
    }
    let mut per_extra: BTreeMap<usize, Polynomial> = BTreeMap::new();
    for (&(l, m, extra), count) in &classes {
        let entry = per_extra.entry(extra).or_insert_with(Polynomial::zero);
        if m >= 1 {
            *entry = &*entry + &composition_polynomial(l, m).scale(&rational(count));
        }
    }
    let scan_cap = 2 * r + 1;
    let table = dp_extra_counts_up_to(aut, scan_cap + 4 * r);
    let mut out = BTreeMap::new();
    for (extra, poly) in per_extra {
        let threshold = find_threshold(&poly, &table, r, scan_cap, |t, k| {
            t[k].get(&extra).map_or_else(BigRational::zero, rational)
        })
        .ok_or(CountingError::ThresholdNotFound {
            rows: r,
            scanned_to: scan_cap,
        })?;
        out.insert(extra, CountingPolynomial::new(poly, threshold));
    }
    Ok(out)
}

/// Exact counts for one row count over a range of column counts, optionally
/// split by extra 1's; splits must sum to the totals.
#[derive(Clone, Debug)]
pub struct CountTable {
    rows: usize,
    entries: Vec<CountEntry>,
}

#[derive(Clone, Debug)]
pub struct CountEntry {
    pub cols: usize,
    pub total: BigUint,
    pub by_extra: Option<BTreeMap<usize, BigUint>>,
}

impl CountTable {
    pub fn new(rows: usize, entries: Vec<CountEntry>) -> Result<Self, CountingError> {
        for entry in &entries {
            if let Some(split) = &entry.by_extra {
                let sum: BigUint = split.values().sum();
                if sum != entry.total {
                    return Err(CountingError::InconsistentTable { cols: entry.cols });
                }
            }
        }
        Ok(CountTable { rows, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn entries(&self) -> &[CountEntry] {
        &self.entries
    }

    /// Aligned text rendering. Split entries list one line per extra class
    /// with the total weight (columns plus extra 1's), then a total line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for entry in &self.entries {
            if let Some(split) = &entry.by_extra {
                let width = split
                    .values()
                    .map(|v| v.to_string().len())
                    .chain([entry.total.to_string().len()])
                    .max()
                    .unwrap_or(1);
                out.push_str(&format!("r={} k={}\n", self.rows, entry.cols));
                out.push_str(&format!("extra  weight  {:>width$}\n", "count"));
                for (extra, count) in split {
                    out.push_str(&format!(
                        "{extra:<5}  {:<6}  {count:>width$}\n",
                        entry.cols + extra
                    ));
                }
                out.push_str(&format!("total          {:>width$}\n", entry.total));
            } else {
                out.push_str(&format!("r={} k={}: {}\n", self.rows, entry.cols, entry.total));
            }
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "rows": self.rows,
            "entries": self.entries.iter().map(|e| {
                serde_json::json!({
                    "cols": e.cols,
                    "total": e.total.to_string(),
                    "by_extra": e.by_extra.as_ref().map(|split| {
                        split.iter()
                            .map(|(extra, n)| {
                                (extra.to_string(), serde_json::Value::from(n.to_string()))
                            })
                            .collect::<serde_json::Map<String, serde_json::Value>>()
                    }),
                })
            }).collect::<Vec<_>>(),
        })
    }
}
