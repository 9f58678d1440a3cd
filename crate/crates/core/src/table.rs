//! Square operation tables over the carrier `0..n`.

use std::fmt;

use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table is empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {n}")]
    RowLength { row: usize, len: usize, n: usize },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("entry ({row}, {col}) = {value} is outside 0..{n}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
}

/// An `n x n` table encoding a binary operation on `0..n`. `get(x, y)` is the
/// product of `x` and `y`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpTable {
    n: usize,
    cells: Vec<usize>,
}

impl OpTable {
    /// Builds a table from row-major cells.
    pub fn new(n: usize, cells: Vec<usize>) -> Result<Self, TableError> {
        if n == 0 {
            return Err(TableError::Empty);
        }
        if cells.len() != n * n {
            return Err(TableError::RowCount {
                expected: n,
                found: cells.len() / n,
            });
        }
        if let Some(pos) = cells.iter().position(|&v| v >= n) {
            return Err(TableError::OutOfRange {
                row: pos / n,
                col: pos % n,
                value: cells[pos],
                n,
            });
        }
        Ok(OpTable { n, cells })
    }

    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self, TableError> {
        let n = rows.len();
        if n == 0 {
            return Err(TableError::Empty);
        }
        let mut cells = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != n {
                return Err(TableError::RowLength {
                    row,
                    len: r.len(),
                    n,
                });
            }
            cells.extend_from_slice(r);
        }
        OpTable::new(n, cells)
    }

    /// Builds a table by evaluating `f` on every pair. Panics if `f` leaves the carrier.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let v = f(x, y);
                assert!(v < n, "value {v} outside carrier of size {n}");
                cells.push(v);
            }
        }
        OpTable { n, cells }
    }

    /// Table from permutation rows; row `x` is the image array of `rows[x]`.
    pub fn from_permutations(rows: &[Permutation]) -> Self {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for p in rows {
            assert_eq!(p.len(), n);
            cells.extend_from_slice(p.image());
        }
        OpTable { n, cells }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y]
    }

    #[inline]
    pub fn row(&self, x: usize) -> &[usize] {
        &self.cells[x * self.n..(x + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.cells.chunks(self.n)
    }

    pub fn column(&self, y: usize) -> Vec<usize> {
        (0..self.n).map(|x| self.get(x, y)).collect()
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn transpose(&self) -> OpTable {
        OpTable::from_fn(self.n, |x, y| self.get(y, x))
    }

    pub fn diagonal(&self) -> Vec<usize> {
        (0..self.n).map(|x| self.get(x, x)).collect()
    }

    pub fn row_is_bijective(&self, x: usize) -> bool {
        is_bijection(self.row(x))
    }

    /// First row that is not a permutation, if any.
    pub fn first_non_bijective_row(&self) -> Option<usize> {
        (0..self.n).find(|&x| !self.row_is_bijective(x))
    }

    /// First column that is not a permutation, if any.
    pub fn first_non_bijective_column(&self) -> Option<usize> {
        (0..self.n).find(|&y| !is_bijection(&self.column(y)))
    }

    /// Row `x` as a permutation, if it is one.
    pub fn row_permutation(&self, x: usize) -> Option<Permutation> {
        Permutation::new(self.row(x).to_vec()).ok()
    }

    /// Applies the relabeling `g` to both arguments and the value.
    pub fn relabel(&self, g: &Permutation) -> OpTable {
        let inv = g.inverse();
        OpTable::from_fn(self.n, |x, y| {
            g.apply(self.get(inv.apply(x), inv.apply(y)))
        })
    }
}

impl fmt::Debug for OpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

pub(crate) fn is_bijection(values: &[usize]) -> bool {
    let n = values.len();
    let mut seen = vec![false; n];
    for &v in values {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}
