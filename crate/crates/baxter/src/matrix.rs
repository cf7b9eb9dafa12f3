//! 0/1 matrices and the pinwheel definition of Baxter matrices.
//!
//! A matrix is Baxter when every row contains a 1, every column contains a 1,
//! and each of the `(rows-1)(cols-1)` pinwheels of either chirality has at
//! least one arm consisting entirely of 0's. All user-facing indices are
//! 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Pinwheel orientation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chirality {
    Clockwise,
    Counterclockwise,
}

impl fmt::Display for Chirality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Chirality::Clockwise => write!(f, "clockwise"),
            Chirality::Counterclockwise => write!(f, "counterclockwise"),
        }
    }
}

/// Identifies one pinwheel: a chirality and a center sitting between two
/// adjacent rows and two adjacent columns. `center_row` and `center_col` are
/// 1-based; valid centers satisfy `1 <= center_row < rows` and
/// `1 <= center_col < cols`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct PinwheelId {
    pub chirality: Chirality,
    pub center_row: usize,
    pub center_col: usize,
}

impl fmt::Display for PinwheelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} pinwheel ({},{})",
            self.chirality, self.center_row, self.center_col
        )
    }
}

/// One failed Baxter condition. Row and column indices are 1-based.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    ZeroRow { row: usize },
    ZeroColumn { col: usize },
    UnsatisfiedPinwheel { pinwheel: PinwheelId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroRow { row } => write!(f, "zero row {row}"),
            Violation::ZeroColumn { col } => write!(f, "zero column {col}"),
            Violation::UnsatisfiedPinwheel { pinwheel } => write!(f, "{pinwheel}"),
        }
    }
}

#[derive(Error, Clone, PartialEq, Eq, Debug)]
pub enum ParseError {
    #[error("line {line}: unexpected character {ch:?} (rows are '0'/'1' only)")]
    ForeignCharacter { line: usize, ch: char },
    #[error("line {line}: row has {got} cells but earlier rows have {expected}")]
    RaggedLine {
        line: usize,
        got: usize,
        expected: usize,
    },
    #[error("input contains no matrix rows")]
    Empty,
}

#[derive(Error, Clone, PartialEq, Eq, Debug)]
pub enum MatrixError {
    #[error("pinwheel center ({center_row},{center_col}) out of range for {rows}x{cols} matrix")]
    CenterOutOfRange {
        center_row: usize,
        center_col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("column {col} contains no 1")]
    ZeroColumn { col: usize },
}

/// A 0/1 matrix, stored as a packed row-major bit grid.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    words: Vec<u64>,
}

impl BinaryMatrix {
    /// Builds a matrix from a cell predicate. `f` receives 0-based indices.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix must have rows and columns");
        let mut m = BinaryMatrix {
            rows,
            cols,
            words: vec![0; (rows * cols).div_ceil(64)],
        };
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j);
                }
            }
        }
        m
    }

    /// Builds a matrix of at most 64 cells from a bitmask in which the first
    /// cell (row 1, column 1) occupies the most significant used bit, so that
    /// ascending masks enumerate matrices in lexicographic cell order.
    pub fn from_mask(rows: usize, cols: usize, mask: u64) -> Self {
        let bits = rows * cols;
        assert!(bits <= 64, "mask form limited to 64 cells");
        BinaryMatrix::from_fn(rows, cols, |i, j| {
            mask >> (bits - 1 - (i * cols + j)) & 1 == 1
        })
    }

    /// Parses the newline-separated text format: one row of '0'/'1' characters
    /// per line, all lines the same length; lines starting with '#' and blank
    /// lines are ignored. Errors name the offending 1-based input line.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut rows: Vec<Vec<bool>> = Vec::new();
        let mut width = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            if raw.is_empty() || raw.starts_with('#') {
                continue;
            }
            let mut cells = Vec::with_capacity(raw.len());
            for ch in raw.chars() {
                match ch {
                    '0' => cells.push(false),
                    '1' => cells.push(true),
                    _ => return Err(ParseError::ForeignCharacter { line, ch }),
                }
            }
            if let Some(expected) = width {
                if cells.len() != expected {
                    return Err(ParseError::RaggedLine {
                        line,
                        got: cells.len(),
                        expected,
                    });
                }
            } else {
                width = Some(cells.len());
            }
            rows.push(cells);
        }
        if rows.is_empty() {
            return Err(ParseError::Empty);
        }
        let cols = width.unwrap();
        Ok(BinaryMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Cell value at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> bool {
        debug_assert!(row < self.rows && col < self.cols);
        let idx = row * self.cols + col;
        self.words[idx / 64] >> (idx % 64) & 1 == 1
    }

    fn set(&mut self, row: usize, col: usize) {
        let idx = row * self.cols + col;
        self.words[idx / 64] |= 1 << (idx % 64);
    }

    pub fn ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The 0-based column `col` as a bitmask with row `i` at bit `i`.
    pub fn column_mask(&self, col: usize) -> u64 {
        assert!(self.rows <= 64, "column mask limited to 64 rows");
        let mut mask = 0;
        for i in 0..self.rows {
            if self.get(i, col) {
                mask |= 1 << i;
            }
        }
        mask
    }

    fn row_has_one(&self, row: usize) -> bool {
        (0..self.cols).any(|j| self.get(row, j))
    }

    fn col_has_one(&self, col: usize) -> bool {
        (0..self.rows).any(|i| self.get(i, col))
    }

    pub fn transpose(&self) -> BinaryMatrix {
        BinaryMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// The four arms of a pinwheel as lists of 1-based cell indices, in the
    /// order arm1..arm4. Every arm is nonempty for a valid center.
    pub fn pinwheel_arms(&self, p: &PinwheelId) -> Result<[Vec<(usize, usize)>; 4], MatrixError> {
        if p.center_row < 1 || p.center_row >= self.rows || p.center_col < 1 || p.center_col >= self.cols
        {
            return Err(MatrixError::CenterOutOfRange {
                center_row: p.center_row,
                center_col: p.center_col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let (i, j, n, m) = (p.center_row, p.center_col, self.cols, self.rows);
        let row = |r: usize, c0: usize, c1: usize| (c0..=c1).map(|c| (r, c)).collect::<Vec<_>>();
        let col = |c: usize, r0: usize, r1: usize| (r0..=r1).map(|r| (r, c)).collect::<Vec<_>>();
        Ok(match p.chirality {
            Chirality::Clockwise => [
                row(i, 1, j),
                col(j + 1, 1, i),
                row(i + 1, j + 1, n),
                col(j, i + 1, m),
            ],
            Chirality::Counterclockwise => [
                row(i + 1, 1, j),
                col(j, 1, i),
                row(i, j + 1, n),
                col(j + 1, i + 1, m),
            ],
        })
    }

    /// Allocation-free check that some arm of the pinwheel at 1-based center
    /// `(i, j)` is all zeros. Mirrors the arm lists from [`pinwheel_arms`].
    fn pinwheel_satisfied(&self, chirality: Chirality, i: usize, j: usize) -> bool {
        let row_zero = |r: usize, c0: usize, c1: usize| (c0..=c1).all(|c| !self.get(r - 1, c - 1));
        let col_zero = |c: usize, r0: usize, r1: usize| (r0..=r1).all(|r| !self.get(r - 1, c - 1));
        let (n, m) = (self.cols, self.rows);
        match chirality {
            Chirality::Clockwise => {
                row_zero(i, 1, j)
                    || col_zero(j + 1, 1, i)
                    || row_zero(i + 1, j + 1, n)
                    || col_zero(j, i + 1, m)
            }
            Chirality::Counterclockwise => {
                row_zero(i + 1, 1, j)
                    || col_zero(j, 1, i)
                    || row_zero(i, j + 1, n)
                    || col_zero(j + 1, i + 1, m)
            }
        }
    }

    /// Decides Baxter-ness. Equivalent to `violations(..).is_empty()` but
    /// exits on the first failure.
    pub fn is_baxter(&self) -> bool {
        (0..self.rows).all(|i| self.row_has_one(i))
            && (0..self.cols).all(|j| self.col_has_one(j))
            && [Chirality::Clockwise, Chirality::Counterclockwise]
                .into_iter()
                .all(|ch| {
                    (1..self.rows)
                        .all(|i| (1..self.cols).all(|j| self.pinwheel_satisfied(ch, i, j)))
                })
    }

    /// Every failed condition, in scan order: rows, then columns, then
    /// pinwheels by chirality and center.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            if !self.row_has_one(i) {
                out.push(Violation::ZeroRow { row: i + 1 });
            }
        }
        for j in 0..self.cols {
            if !self.col_has_one(j) {
                out.push(Violation::ZeroColumn { col: j + 1 });
            }
        }
        for chirality in [Chirality::Clockwise, Chirality::Counterclockwise] {
            for i in 1..self.rows {
                for j in 1..self.cols {
                    if !self.pinwheel_satisfied(chirality, i, j) {
                        out.push(Violation::UnsatisfiedPinwheel {
                            pinwheel: PinwheelId {
                                chirality,
                                center_row: i,
                                center_col: j,
                            },
                        });
                    }
                }
            }
        }
        out
    }

    /// Number of 1's beyond one per column. Requires every column to contain
    /// a 1.
    pub fn extra_ones(&self) -> Result<usize, MatrixError> {
        for j in 0..self.cols {
            if !self.col_has_one(j) {
                return Err(MatrixError::ZeroColumn { col: j + 1 });
            }
        }
        Ok(self.ones() - self.cols)
    }
}

/// Renders in the same text format `parse` accepts (no trailing newline).
impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            for j in 0..self.cols {
                write!(f, "{}", if self.get(i, j) { '1' } else { '0' })?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(text: &str) -> BinaryMatrix {
        BinaryMatrix::parse(text).unwrap()
    }

    #[test]
    fn parse_basic() {
        let single = m("1");
        assert_eq!((single.rows(), single.cols()), (1, 1));
        assert!(single.get(0, 0));

        let id = m("10\n01");
        assert_eq!((id.rows(), id.cols()), (2, 2));
        assert!(id.get(0, 0) && id.get(1, 1));
        assert!(!id.get(0, 1) && !id.get(1, 0));

        assert_eq!(
            BinaryMatrix::parse("1 0"),
            Err(ParseError::ForeignCharacter { line: 1, ch: ' ' })
        );
        assert_eq!(
            BinaryMatrix::parse("10\n011"),
            Err(ParseError::RaggedLine {
                line: 2,
                got: 3,
                expected: 2
            })
        );
        assert_eq!(BinaryMatrix::parse(""), Err(ParseError::Empty));
        assert_eq!(BinaryMatrix::parse("# note\n\n"), Err(ParseError::Empty));
    }

    #[test]
    fn parse_skips_comments_and_reports_real_line_numbers() {
        let with_comments = m("# identity\n10\n\n01");
        assert_eq!(with_comments, m("10\n01"));

        assert_eq!(
            BinaryMatrix::parse("# header\n10\n0x"),
            Err(ParseError::ForeignCharacter { line: 3, ch: 'x' })
        );
    }

    #[test]
    fn display_round_trips() {
        for text in ["1", "10\n01", "110\n011", "1111"] {
            assert_eq!(m(text).to_string(), text);
        }
    }

    #[test]
    fn pinwheel_arms_at_2x2() {
        let id = m("10\n01");
        let cw = id
            .pinwheel_arms(&PinwheelId {
                chirality: Chirality::Clockwise,
                center_row: 1,
                center_col: 1,
            })
            .unwrap();
        assert_eq!(
            cw,
            [vec![(1, 1)], vec![(1, 2)], vec![(2, 2)], vec![(2, 1)]]
        );

        let ccw = id
            .pinwheel_arms(&PinwheelId {
                chirality: Chirality::Counterclockwise,
                center_row: 1,
                center_col: 1,
            })
            .unwrap();
        assert_eq!(
            ccw,
            [vec![(2, 1)], vec![(1, 1)], vec![(1, 2)], vec![(2, 2)]]
        );
    }

    #[test]
    fn pinwheel_arm_of_3x4() {
        let mat = BinaryMatrix::from_fn(3, 4, |_, _| true);
        let arms = mat
            .pinwheel_arms(&PinwheelId {
                chirality: Chirality::Clockwise,
                center_row: 2,
                center_col: 3,
            })
            .unwrap();
        assert_eq!(arms[2], vec![(3, 4)]);
    }

    #[test]
    fn pinwheel_center_out_of_range() {
        let id = m("10\n01");
        let err = id
            .pinwheel_arms(&PinwheelId {
                chirality: Chirality::Clockwise,
                center_row: 2,
                center_col: 1,
            })
            .unwrap_err();
        assert!(matches!(err, MatrixError::CenterOutOfRange { .. }));
    }

    #[test]
    fn baxter_examples() {
        assert!(m("1").is_baxter(), "single 1 has no pinwheels");
        assert!(!m("11\n11").is_baxter(), "all-ones 2x2 fails both pinwheels");
        assert!(m("10\n01").is_baxter());
        assert!(!m("00\n11").is_baxter(), "zero row");
        assert_eq!(m("00\n11").violations(), vec![Violation::ZeroRow { row: 1 }]);
    }

    #[test]
    fn all_ones_2x2_violations_in_scan_order() {
        assert_eq!(
            m("11\n11").violations(),
            vec![
                Violation::UnsatisfiedPinwheel {
                    pinwheel: PinwheelId {
                        chirality: Chirality::Clockwise,
                        center_row: 1,
                        center_col: 1,
                    },
                },
                Violation::UnsatisfiedPinwheel {
                    pinwheel: PinwheelId {
                        chirality: Chirality::Counterclockwise,
                        center_row: 1,
                        center_col: 1,
                    },
                },
            ]
        );
    }

    #[test]
    fn single_row_or_column_is_baxter_iff_all_ones() {
        for k in 1..=9 {
            for mask in 0..1u64 << k {
                let row = BinaryMatrix::from_mask(1, k, mask);
                assert_eq!(row.is_baxter(), mask == (1 << k) - 1, "1x{k} mask {mask}");
                let col = BinaryMatrix::from_mask(k, 1, mask);
                assert_eq!(col.is_baxter(), mask == (1 << k) - 1, "{k}x1 mask {mask}");
            }
        }
    }

    #[test]
    fn extra_ones_examples() {
        assert_eq!(m("10\n01").extra_ones(), Ok(0));
        assert_eq!(m("11\n10").extra_ones(), Ok(1));
        assert_eq!(m("100\n010\n001").extra_ones(), Ok(0));
        assert_eq!(
            m("10\n10").extra_ones(),
            Err(MatrixError::ZeroColumn { col: 2 })
        );
    }

    #[test]
    fn transpose_examples() {
        let id = m("10\n01");
        assert_eq!(id.transpose(), id);
        assert_eq!(m("11").transpose(), m("1\n1"));
        let wide = BinaryMatrix::from_fn(3, 4, |i, j| (i + j) % 2 == 0);
        let t = wide.transpose();
        assert_eq!((t.rows(), t.cols()), (4, 3));
        assert_eq!(t.transpose(), wide);
    }

    #[test]
    fn arms_agree_with_satisfied_check() {
        for mask in 0..1u64 << 9 {
            let mat = BinaryMatrix::from_mask(3, 3, mask);
            for chirality in [Chirality::Clockwise, Chirality::Counterclockwise] {
                for i in 1..3 {
                    for j in 1..3 {
                        let p = PinwheelId {
                            chirality,
                            center_row: i,
                            center_col: j,
                        };
                        let arms = mat.pinwheel_arms(&p).unwrap();
                        let via_arms = arms
                            .iter()
                            .any(|arm| arm.iter().all(|&(r, c)| !mat.get(r - 1, c - 1)));
                        assert_eq!(via_arms, mat.pinwheel_satisfied(chirality, i, j));
                    }
                }
            }
        }
    }

    #[test]
    fn mask_order_is_lexicographic_on_cells() {
        // Ascending masks must order matrices by their row-major cell string.
        let a = BinaryMatrix::from_mask(2, 2, 0b0110);
        assert_eq!(a.to_string(), "01\n10");
        let b = BinaryMatrix::from_mask(2, 2, 0b1001);
        assert_eq!(b.to_string(), "10\n01");
    }
}
