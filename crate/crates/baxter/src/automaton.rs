//! The deterministic column-reading automaton `A_r`.
//!
//! For a fixed row count `r` the automaton reads a matrix column by column
//! over the alphabet of nonzero length-`r` bit columns and accepts exactly
//! the column sequences of Baxter matrices. Per row it tracks one of four
//! rowstates:
//!
//! 1. the row has a 1 in the most recent column;
//! 2. the row contains only 0's so far;
//! 3. the row must contain only 0's from here on (frozen for an earlier
//!    pinwheel);
//! 4. the most recent entry was 0 but neither 2 nor 3 applies.
//!
//! Between the most recent and the proposed next column sit `r - 1` new
//! pinwheel centers of each chirality. Each is either already satisfied by
//! an all-zero arm that the state can see, or it forces a row to freeze into
//! rowstate 3; an unsatisfiable pinwheel rejects the input immediately.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{BinaryMatrix, Chirality};

/// Default cap on the automaton row count; `4^r - 3^r` states grow quickly.
pub const DEFAULT_MAX_ROWS: usize = 8;

/// Per-row summary tracked by the automaton.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum RowState {
    One,
    Two,
    Three,
    Four,
}

impl RowState {
    pub fn digit(self) -> char {
        match self {
            RowState::One => '1',
            RowState::Two => '2',
            RowState::Three => '3',
            RowState::Four => '4',
        }
    }

    fn from_digit(c: char) -> Option<RowState> {
        Some(match c {
            '1' => RowState::One,
            '2' => RowState::Two,
            '3' => RowState::Three,
            '4' => RowState::Four,
            _ => return None,
        })
    }

    fn depth_contribution(self) -> u32 {
        match self {
            RowState::One | RowState::Four => 1,
            RowState::Two => 0,
            RowState::Three => 2,
        }
    }
}

/// A state of `A_r`: one rowstate per row, or the distinguished start state.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum StateVector {
    Start,
    Rows(Vec<RowState>),
}

impl StateVector {
    /// Parses a label like `"12"`; `"S"` is the start state.
    pub fn from_label(label: &str) -> Option<StateVector> {
        if label == "S" {
            return Some(StateVector::Start);
        }
        let rows: Option<Vec<RowState>> = label.chars().map(RowState::from_digit).collect();
        rows.map(StateVector::Rows)
    }

    /// Depth: number of rowstate-1 rows plus rowstate-4 rows plus twice the
    /// rowstate-3 rows. The start state has depth 0.
    pub fn depth(&self) -> u32 {
        match self {
            StateVector::Start => 0,
            StateVector::Rows(rows) => rows.iter().map(|r| r.depth_contribution()).sum(),
        }
    }

    /// Accepting states are non-start states with no row in rowstate 2.
    pub fn is_accept(&self) -> bool {
        match self {
            StateVector::Start => false,
            StateVector::Rows(rows) => !rows.contains(&RowState::Two),
        }
    }

    pub fn rows(&self) -> Option<&[RowState]> {
        match self {
            StateVector::Start => None,
            StateVector::Rows(rows) => Some(rows),
        }
    }

    /// Bitmask of rows in rowstate 1; this is the exact content of the most
    /// recent column, recoverable from the state.
    pub fn one_mask(&self) -> u64 {
        match self {
            StateVector::Start => 0,
            StateVector::Rows(rows) => rows
                .iter()
                .enumerate()
                .filter(|(_, &r)| r == RowState::One)
                .fold(0, |mask, (i, _)| mask | 1 << i),
        }
    }

    pub fn label(&self) -> String {
        match self {
            StateVector::Start => "S".to_owned(),
            StateVector::Rows(rows) => rows.iter().map(|r| r.digit()).collect(),
        }
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// One input symbol: a length-`r` bit column. Bit `i` is row `i + 1`; labels
/// print row 1 first. The automaton's alphabet excludes the all-zero column.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ColumnSymbol {
    bits: u64,
    rows: usize,
}

impl ColumnSymbol {
    pub fn new(bits: u64, rows: usize) -> Self {
        assert!((1..=64).contains(&rows), "column height out of range");
        assert!(bits >> rows == 0 || rows == 64, "bits beyond the row count");
        ColumnSymbol { bits, rows }
    }

    pub fn from_bools(cells: &[bool]) -> Self {
        let bits = cells
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .fold(0, |mask, (i, _)| mask | 1 << i);
        ColumnSymbol::new(bits, cells.len())
    }

    /// Parses a label like `"10"` (row 1 first).
    pub fn from_label(label: &str) -> Option<Self> {
        let cells: Option<Vec<bool>> = label
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        let cells = cells?;
        if cells.is_empty() {
            return None;
        }
        Some(ColumnSymbol::from_bools(&cells))
    }

    /// Column `col` (0-based) of a matrix.
    pub fn from_matrix_column(m: &BinaryMatrix, col: usize) -> Self {
        ColumnSymbol::new(m.column_mask(col), m.rows())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Row `i + 1`'s bit (0-based `i`).
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.rows);
        self.bits >> i & 1 == 1
    }

    /// The raw bitmask, bit `i` for row `i + 1`.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn ones(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    fn has_one_in(&self, range: std::ops::Range<usize>) -> bool {
        range.clone().any(|i| self.get(i))
    }

    pub fn label(&self) -> String {
        (0..self.rows)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    /// All nonzero columns of the given height.
    pub fn alphabet(rows: usize) -> impl Iterator<Item = ColumnSymbol> {
        assert!((1..64).contains(&rows), "alphabet limited to 63 rows");
        (1..1u64 << rows).map(move |bits| ColumnSymbol::new(bits, rows))
    }
}

impl PartialOrd for ColumnSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders symbols by their label, row 1 first.
impl Ord for ColumnSymbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let common = self.rows.min(other.rows);
        for i in 0..common {
            match self.get(i).cmp(&other.get(i)) {
                std::cmp::Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.rows.cmp(&other.rows)
    }
}

impl fmt::Display for ColumnSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Why a proposed column is rejected. Row and center indices are 1-based;
/// a pinwheel center here sits between the most recent and proposed columns,
/// below `center_row`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Error)]
pub enum Reject {
    #[error("column contains no 1")]
    ZeroColumn,
    #[error("row {row} is frozen but the column writes a 1 into it")]
    FrozenRowWrite { row: usize },
    #[error("{chirality} pinwheel below row {center_row} cannot be satisfied")]
    UnsatisfiablePinwheel {
        chirality: Chirality,
        center_row: usize,
    },
    #[error("row {row} would be frozen while still all zeros")]
    AllZeroRowDoomed { row: usize },
}

/// The deterministic transition function of `A_r`.
///
/// From the start state every row simply becomes rowstate 1 or 2. Otherwise
/// each new pinwheel center between the previous and proposed columns is
/// checked: a clockwise pinwheel below row `i` is satisfied when row `i` is
/// still all zeros, or the new column is zero above the center, or the
/// previous column is zero below it; failing all three, row `i + 1` must
/// freeze. Counterclockwise is the mirror image, freezing row `i`. A forced
/// row that receives a 1 rejects (the pinwheel is unsatisfiable), and a
/// forced row that never held a 1 rejects (it would stay all zeros).
pub fn step(state: &StateVector, symbol: &ColumnSymbol) -> Result<StateVector, Reject> {
    if symbol.is_zero() {
        return Err(Reject::ZeroColumn);
    }
    let rows = match state {
        StateVector::Start => {
            let next = (0..symbol.rows())
                .map(|i| {
                    if symbol.get(i) {
                        RowState::One
                    } else {
                        RowState::Two
                    }
                })
                .collect();
            return Ok(StateVector::Rows(next));
        }
        StateVector::Rows(rows) => rows,
    };
    let r = rows.len();
    assert_eq!(symbol.rows(), r, "column height must match the state");

    for (i, &rs) in rows.iter().enumerate() {
        if rs == RowState::Three && symbol.get(i) {
            return Err(Reject::FrozenRowWrite { row: i + 1 });
        }
    }

    let prev = state.one_mask();
    let prev_has_one_below = |i: usize| prev >> i != 0; // rows i+1..=r, 0-based i..
    let prev_has_one_above = |i: usize| prev & ((1 << i) - 1) != 0; // rows 1..=i

    // First forcing reason per row, scanning centers top to bottom.
    let mut forced: Vec<Option<(Chirality, usize)>> = vec![None; r];
    for c in 0..r - 1 {
        let center_row = c + 1;
        let cw_satisfied = rows[c] == RowState::Two
            || !symbol.has_one_in(0..c + 1)
            || !prev_has_one_below(c + 1);
        if !cw_satisfied && forced[c + 1].is_none() {
            forced[c + 1] = Some((Chirality::Clockwise, center_row));
        }
        let ccw_satisfied = rows[c + 1] == RowState::Two
            || !prev_has_one_above(c + 1)
            || !symbol.has_one_in(c + 1..r);
        if !ccw_satisfied && forced[c].is_none() {
            forced[c] = Some((Chirality::Counterclockwise, center_row));
        }
    }

    for (i, info) in forced.iter().enumerate() {
        if let Some((chirality, center_row)) = *info {
            if symbol.get(i) {
                return Err(Reject::UnsatisfiablePinwheel {
                    chirality,
                    center_row,
                });
            }
            if rows[i] == RowState::Two {
                // A row cannot go from all zeros straight to frozen.
                return Err(Reject::AllZeroRowDoomed { row: i + 1 });
            }
        }
    }

    let next = (0..r)
        .map(|i| {
            if symbol.get(i) {
                RowState::One
            } else if forced[i].is_some() || rows[i] == RowState::Three {
                RowState::Three
            } else if rows[i] == RowState::Two {
                RowState::Two
            } else {
                RowState::Four
            }
        })
        .collect();
    Ok(StateVector::Rows(next))
}

/// Folds `step` from the start state; accepts when no rejection occurs and
/// the final state is accepting. Works for any row count without building
/// the automaton.
pub fn run(rows: usize, columns: &[ColumnSymbol]) -> bool {
    let mut state = StateVector::Start;
    for symbol in columns {
        assert_eq!(symbol.rows(), rows, "column height must match");
        match step(&state, symbol) {
            Ok(next) => state = next,
            Err(_) => return false,
        }
    }
    state.is_accept()
}

/// The columns of a matrix as automaton input, left to right.
pub fn matrix_columns(m: &BinaryMatrix) -> Vec<ColumnSymbol> {
    (0..m.cols())
        .map(|j| ColumnSymbol::from_matrix_column(m, j))
        .collect()
}

/// Runs the automaton on a matrix's column sequence.
pub fn run_matrix(m: &BinaryMatrix) -> bool {
    run(m.rows(), &matrix_columns(m))
}

#[derive(Error, Clone, PartialEq, Eq, Debug)]
pub enum BuildError {
    #[error("automaton needs at least one row")]
    NoRows,
    #[error("{rows} rows exceeds the automaton build limit of {max_rows} (raise the limit to proceed)")]
    RowBudget { rows: usize, max_rows: usize },
}

/// A labeled transition between state ids.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Edge {
    pub from: usize,
    pub symbol: ColumnSymbol,
    pub to: usize,
}

/// `A_r` with reachable states only, in canonical order: the start state
/// first, then by depth, then lexicographically by rowstate label. Edges are
/// sorted by source id and symbol label. Immutable once built.
#[derive(Clone, Debug)]
pub struct Automaton {
    rows: usize,
    states: Vec<StateVector>,
    edges: Vec<Edge>,
    successors: BTreeMap<(usize, ColumnSymbol), usize>,
    has_self: Vec<bool>,
}

/// Breadth-first closure of `step` from the start state over the nonzero
/// column alphabet.
pub fn build_automaton(rows: usize) -> Result<Automaton, BuildError> {
    build_automaton_with_limit(rows, DEFAULT_MAX_ROWS)
}

pub fn build_automaton_with_limit(rows: usize, max_rows: usize) -> Result<Automaton, BuildError> {
    if rows == 0 {
        return Err(BuildError::NoRows);
    }
    if rows > max_rows {
        return Err(BuildError::RowBudget { rows, max_rows });
    }

    let mut seen: BTreeMap<StateVector, ()> = BTreeMap::new();
    let mut queue = vec![StateVector::Start];
    seen.insert(StateVector::Start, ());
    let mut transitions: Vec<(StateVector, ColumnSymbol, StateVector)> = Vec::new();
    while let Some(state) = queue.pop() {
        for symbol in ColumnSymbol::alphabet(rows) {
            if let Ok(next) = step(&state, &symbol) {
                if seen.insert(next.clone(), ()).is_none() {
                    queue.push(next.clone());
                }
                transitions.push((state.clone(), symbol, next));
            }
        }
    }

    let mut states: Vec<StateVector> = seen.into_keys().collect();
    states.sort_by_key(|s| (s != &StateVector::Start, s.depth(), s.clone()));
    let ids: BTreeMap<StateVector, usize> = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();

    let mut edges: Vec<Edge> = transitions
        .into_iter()
        .map(|(from, symbol, to)| Edge {
            from: ids[&from],
            symbol,
            to: ids[&to],
        })
        .collect();
    edges.sort_by_key(|e| (e.from, e.symbol));

    let successors: BTreeMap<(usize, ColumnSymbol), usize> =
        edges.iter().map(|e| ((e.from, e.symbol), e.to)).collect();
    assert_eq!(successors.len(), edges.len(), "automaton must be deterministic");
    let mut has_self = vec![false; states.len()];
    for e in &edges {
        if e.from == e.to {
            has_self[e.from] = true;
        }
    }
    Ok(Automaton {
        rows,
        states,
        edges,
        successors,
        has_self,
    })
}

impl Automaton {
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// All states in canonical order; index 0 is the start state.
    pub fn states(&self) -> &[StateVector] {
        &self.states
    }

    pub fn state(&self, id: usize) -> &StateVector {
        &self.states[id]
    }

    pub fn start(&self) -> usize {
        0
    }

    pub fn non_start_state_count(&self) -> usize {
        self.states.len() - 1
    }

    /// Upper bound `4^r - 3^r` on the non-start state count. The build keeps
    /// only reachable states, so the actual count may be smaller.
    pub fn state_bound(&self) -> u64 {
        4u64.pow(self.rows as u32) - 3u64.pow(self.rows as u32)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Outgoing edges of a state; edges are sorted by source id.
    pub fn edges_from(&self, id: usize) -> &[Edge] {
        let lo = self.edges.partition_point(|e| e.from < id);
        let hi = self.edges.partition_point(|e| e.from <= id);
        &self.edges[lo..hi]
    }

    pub fn depth(&self, id: usize) -> u32 {
        self.states[id].depth()
    }

    pub fn is_accept(&self, id: usize) -> bool {
        self.states[id].is_accept()
    }

    pub fn accept_ids(&self) -> Vec<usize> {
        (0..self.states.len()).filter(|&i| self.is_accept(i)).collect()
    }

    pub fn successor(&self, from: usize, symbol: &ColumnSymbol) -> Option<usize> {
        self.successors.get(&(from, *symbol)).copied()
    }

    pub fn state_id(&self, state: &StateVector) -> Option<usize> {
        self.states.iter().position(|s| s == state)
    }

    pub fn has_self_arrow(&self, id: usize) -> bool {
        self.has_self[id]
    }

    /// Labels of the states bearing self arrows, in canonical state order.
    pub fn self_arrow_labels(&self) -> Vec<String> {
        (0..self.states.len())
            .filter(|&i| self.has_self[i])
            .map(|i| self.states[i].label())
            .collect()
    }

    #[cfg(test)]
    pub(crate) fn push_edge_for_tests(&mut self, from: usize, symbol: ColumnSymbol, to: usize) {
        self.edges.push(Edge { from, symbol, to });
        self.successors.insert((from, symbol), to);
        if from == to {
            self.has_self[from] = true;
        }
    }

    /// Graphviz rendering: rowstate-digit labels, accept states doubled,
    /// edges labeled with their column.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("digraph a{} {{\n", self.rows));
        out.push_str("  rankdir=LR;\n");
        out.push_str("  node [shape=circle];\n");
        for (id, state) in self.states.iter().enumerate() {
            if state.is_accept() {
                out.push_str(&format!(
                    "  s{id} [label=\"{}\", peripheries=2];\n",
                    state.label()
                ));
            } else {
                out.push_str(&format!("  s{id} [label=\"{}\"];\n", state.label()));
            }
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  s{} -> s{} [label=\"{}\"];\n",
                e.from,
                e.to,
                e.symbol.label()
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> AutomatonJson {
        AutomatonJson {
            rows: self.rows,
            states: self
                .states
                .iter()
                .enumerate()
                .map(|(id, s)| StateJson {
                    id,
                    rowstates: match s {
                        StateVector::Start => String::new(),
                        _ => s.label(),
                    },
                    depth: s.depth(),
                    accept: s.is_accept(),
                })
                .collect(),
            start: 0,
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    from: e.from,
                    symbol: e.symbol.label(),
                    to: e.to,
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("automaton serializes")
    }
}

/// JSON interchange form of an automaton.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct AutomatonJson {
    pub rows: usize,
    pub states: Vec<StateJson>,
    pub start: usize,
    pub edges: Vec<EdgeJson>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct StateJson {
    pub id: usize,
    pub rowstates: String,
    pub depth: u32,
    pub accept: bool,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct EdgeJson {
    pub from: usize,
    pub symbol: String,
    pub to: usize,
}

impl AutomatonJson {
    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn sv(label: &str) -> StateVector {
        StateVector::from_label(label).unwrap()
    }

    fn sym(label: &str) -> ColumnSymbol {
        ColumnSymbol::from_label(label).unwrap()
    }

    #[test]
    fn depth_examples() {
        assert_eq!(sv("12").depth(), 1);
        assert_eq!(sv("13").depth(), 3);
        assert_eq!(StateVector::Start.depth(), 0);
        assert_eq!(sv("11").depth(), 2);
        assert_eq!(sv("14").depth(), 2);
    }

    #[test]
    fn step_examples_from_two_row_diagram() {
        assert_eq!(step(&StateVector::Start, &sym("10")), Ok(sv("12")));
        assert_eq!(step(&sv("11"), &sym("10")), Ok(sv("13")));
        // Both pinwheels between the columns fail; row 1 reports first.
        assert_eq!(
            step(&sv("11"), &sym("11")),
            Err(Reject::UnsatisfiablePinwheel {
                chirality: Chirality::Counterclockwise,
                center_row: 1
            })
        );
        assert_eq!(step(&sv("14"), &sym("01")), Ok(sv("31")));
    }

    #[test]
    fn step_rejects_zero_column_and_frozen_writes() {
        assert_eq!(step(&StateVector::Start, &sym("00")), Err(Reject::ZeroColumn));
        assert_eq!(
            step(&sv("13"), &sym("01")),
            Err(Reject::FrozenRowWrite { row: 2 })
        );
        assert_eq!(
            step(&sv("13"), &sym("11")),
            Err(Reject::FrozenRowWrite { row: 2 })
        );
    }

    #[test]
    fn step_rejects_doomed_all_zero_row() {
        // State 121 recalls the previous column 101; propose 001. The
        // counterclockwise pinwheel below row 2 has 1's in its other three
        // arms, so row 2 must freeze -- but row 2 is still all zeros.
        assert_eq!(
            step(&sv("121"), &sym("001")),
            Err(Reject::AllZeroRowDoomed { row: 2 })
        );
        // The same forcing with a 1 written into the forced row is reported
        // as the unsatisfiable pinwheel itself.
        assert_eq!(
            step(&sv("121"), &sym("011")),
            Err(Reject::UnsatisfiablePinwheel {
                chirality: Chirality::Counterclockwise,
                center_row: 2
            })
        );
    }

    #[test]
    fn build_one_row() {
        let a = build_automaton(1).unwrap();
        assert_eq!(a.non_start_state_count(), 1);
        assert_eq!(a.states()[1], sv("1"));
        assert!(a.is_accept(1));
        assert_eq!(a.edges().len(), 2); // S -> 1 and the self arrow
        assert_eq!(a.successor(1, &sym("1")), Some(1));
        assert_eq!(a.state_bound(), 1);
    }

    #[test]
    fn build_two_rows_matches_published_diagram() {
        let a = build_automaton(2).unwrap();
        assert_eq!(a.non_start_state_count(), 7);
        assert_eq!(a.edges().len(), 17);
        assert_eq!(a.state_bound(), 7);

        let labels: Vec<String> = a.states().iter().map(|s| s.label()).collect();
        assert_eq!(labels, ["S", "12", "21", "11", "14", "41", "13", "31"]);

        let accepts: BTreeSet<String> = a
            .accept_ids()
            .into_iter()
            .map(|i| a.state(i).label())
            .collect();
        let expected: BTreeSet<String> = ["11", "14", "41", "13", "31"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(accepts, expected);

        let self_arrows: BTreeSet<String> = a.self_arrow_labels().into_iter().collect();
        let expected_self: BTreeSet<String> = ["12", "21", "14", "41", "13", "31"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(self_arrows, expected_self);

        // Spot-check edges against the diagram.
        let id = |l: &str| a.state_id(&sv(l)).unwrap();
        assert_eq!(a.successor(a.start(), &sym("10")), Some(id("12")));
        assert_eq!(a.successor(a.start(), &sym("11")), Some(id("11")));
        assert_eq!(a.successor(id("12"), &sym("01")), Some(id("41")));
        assert_eq!(a.successor(id("41"), &sym("10")), Some(id("13")));
        assert_eq!(a.successor(id("11"), &sym("11")), None);
        assert_eq!(a.successor(id("13"), &sym("01")), None);
    }

    #[test]
    fn build_three_rows_within_bound() {
        let a = build_automaton(3).unwrap();
        assert!(a.non_start_state_count() <= 37, "4^3 - 3^3 = 37");
        // Two of the 37 candidate states are unreachable.
        assert_eq!(a.non_start_state_count(), 35);
        assert_eq!(a.state_bound(), 37);
        // Canonical order sorts by depth.
        for w in a.states().windows(2).skip(1) {
            assert!(w[0].depth() <= w[1].depth());
        }
        for s in &a.states()[1..] {
            assert!(s.depth() >= 1 && s.depth() <= 5, "depth within 1..=2r-1");
            assert!(s.rows().unwrap().contains(&RowState::One));
        }
    }

    #[test]
    fn build_budget() {
        assert!(matches!(build_automaton(0), Err(BuildError::NoRows)));
        assert!(matches!(
            build_automaton(9),
            Err(BuildError::RowBudget { rows: 9, max_rows: 8 })
        ));
        assert!(build_automaton_with_limit(9, 9).is_ok());
    }

    #[test]
    fn rowstate_monotonicity_along_edges() {
        for r in 1..=4 {
            let a = build_automaton(r).unwrap();
            for e in a.edges() {
                let Some(from) = a.state(e.from).rows() else {
                    continue; // start edges have no rowstates to compare
                };
                let to = a.state(e.to).rows().unwrap();
                for i in 0..r {
                    if from[i] == RowState::Three {
                        assert_eq!(to[i], RowState::Three, "rowstate 3 is absorbing");
                    }
                    if to[i] == RowState::Two {
                        assert_eq!(from[i], RowState::Two, "rowstate 2 is never re-entered");
                    }
                }
            }
        }
    }

    #[test]
    fn run_examples() {
        assert!(run(2, &[sym("10"), sym("01")]));
        assert!(!run(2, &[sym("11"), sym("11")]));
        assert!(run(1, &[sym("1"), sym("1"), sym("1")]));
        assert!(!run(2, &[]), "empty input never accepts");
        assert!(!run(2, &[sym("10")]), "row 2 still all zeros");
    }

    #[test]
    fn dot_export_shape() {
        let a = build_automaton(2).unwrap();
        let dot = a.to_dot();
        let nodes = dot
            .lines()
            .filter(|l| l.contains("[label=") && !l.contains("->"))
            .count();
        let edges = dot.lines().filter(|l| l.contains("->")).count();
        assert_eq!(nodes, 8);
        assert_eq!(edges, 17);
        assert_eq!(dot.matches("peripheries=2").count(), 5);
        assert!(dot.contains("s0 [label=\"S\"]"));
    }

    #[test]
    fn json_export_round_trips() {
        let a = build_automaton(1).unwrap();
        let json = a.to_json();
        assert_eq!(json.states.len(), 2);
        let reparsed = AutomatonJson::parse(&a.to_json_string()).unwrap();
        assert_eq!(reparsed, json);

        let a3 = build_automaton(3).unwrap();
        let reparsed3 = AutomatonJson::parse(&a3.to_json_string()).unwrap();
        assert_eq!(reparsed3.edges, a3.to_json().edges);
        assert_eq!(reparsed3, a3.to_json());
    }

    #[test]
    fn exports_are_deterministic() {
        let a = build_automaton(3).unwrap();
        let b = build_automaton(3).unwrap();
        assert_eq!(a.to_dot(), b.to_dot());
        assert_eq!(a.to_json_string(), b.to_json_string());
    }

    #[test]
    fn symbol_order_follows_labels() {
        let mut symbols: Vec<ColumnSymbol> = ColumnSymbol::alphabet(2).collect();
        symbols.sort();
        let labels: Vec<String> = symbols.iter().map(|s| s.label()).collect();
        assert_eq!(labels, ["01", "10", "11"]);
    }
}
