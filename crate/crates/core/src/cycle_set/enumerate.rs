//! Exhaustive enumeration of cycle sets on `0..n` by row-major backtracking.
//!
//! Cells are filled in row-major order with ascending values, so complete
//! tables come out in lexicographic order. A partial table is abandoned as soon
//! as some triple whose six cells are all filled violates the cycle-set law.

use rayon::prelude::*;

use super::{CycleSet, CycleSetError};
use crate::perm::{next_permutation, Permutation};
use crate::table::OpTable;

pub const DEFAULT_ENUMERATION_CAP: usize = 5;

const UNSET: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CycleSetFilter {
    #[default]
    All,
    Nondegenerate,
    Indecomposable,
    Irretractable,
}

impl CycleSetFilter {
    pub fn accepts(self, x: &CycleSet) -> bool {
        match self {
            CycleSetFilter::All => true,
            CycleSetFilter::Nondegenerate => x.is_nondegenerate(),
            CycleSetFilter::Indecomposable => x.is_indecomposable(),
            CycleSetFilter::Irretractable => x.is_irretractable(),
        }
    }
}

/// Enumeration settings. `threads > 1` searches first-row partitions in
/// parallel; the output order is unchanged.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub n: usize,
    pub filter: CycleSetFilter,
    pub cap: usize,
    pub canonical_only: bool,
    pub threads: usize,
}

impl Enumeration {
    pub fn new(n: usize) -> Self {
        Enumeration {
            n,
            filter: CycleSetFilter::All,
            cap: DEFAULT_ENUMERATION_CAP,
            canonical_only: false,
            threads: 1,
        }
    }

    pub fn filter(mut self, filter: CycleSetFilter) -> Self {
        self.filter = filter;
        self
    }

    pub fn cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn canonical_only(mut self, yes: bool) -> Self {
        self.canonical_only = yes;
        self
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn run(&self) -> Result<Vec<CycleSet>, CycleSetError> {
        let n = self.n;
        if n == 0 || n > self.cap {
            return Err(CycleSetError::CapExceeded { n, cap: self.cap });
        }
        let first_rows: Vec<Permutation> = Permutation::all(n).collect();
        let search = |row: &Permutation| {
            let mut out = Vec::new();
            let mut s = Search::new(n);
            s.cells[..n].copy_from_slice(row.image());
            if s.consistent_through(n - 1) {
                s.descend(n, &mut |cells| {
                    let table = OpTable::new(n, cells.to_vec()).expect("complete table");
                    // Validation is repeated through the public checker.
                    let x = CycleSet::validate(table).expect("search produced a cycle set");
                    if self.filter.accepts(&x) && (!self.canonical_only || x.is_canonical()) {
                        out.push(x);
                    }
                });
            }
            out
        };
        let parts: Vec<Vec<CycleSet>> = if self.threads > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(self.threads)
                .build()
                .expect("thread pool");
            pool.install(|| first_rows.par_iter().map(search).collect())
        } else {
            first_rows.iter().map(search).collect()
        };
        Ok(parts.into_iter().flatten().collect())
    }
}

/// All cycle sets of size `n` passing `filter`, in lexicographic table order.
pub fn enumerate_cycle_sets(
    n: usize,
    filter: CycleSetFilter,
) -> Result<Vec<CycleSet>, CycleSetError> {
    Enumeration::new(n).filter(filter).run()
}

struct Search {
    n: usize,
    cells: Vec<usize>,
    used: Vec<u64>,
}

impl Search {
    fn new(n: usize) -> Self {
        assert!(n <= 64, "row bitmasks hold at most 64 values");
        Search {
            n,
            cells: vec![UNSET; n * n],
            used: vec![0; n],
        }
    }

    #[inline]
    fn cell(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y]
    }

    /// Checks every triple whose cells all lie at or before position `pos`.
    fn consistent_through(&self, pos: usize) -> bool {
        let n = self.n;
        let filled = pos + 1;
        let known = |x: usize, y: usize| x * n + y < filled;
        for x in 0..n {
            for y in 0..n {
                if x == y || !known(x, y) || !known(y, x) {
                    continue;
                }
                let xy = self.cell(x, y);
                let yx = self.cell(y, x);
                for z in 0..n {
                    if !known(x, z) || !known(y, z) {
                        continue;
                    }
                    let (xz, yz) = (self.cell(x, z), self.cell(y, z));
                    if !known(xy, xz) || !known(yx, yz) {
                        continue;
                    }
                    if self.cell(xy, xz) != self.cell(yx, yz) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn descend(&mut self, pos: usize, emit: &mut dyn FnMut(&[usize])) {
        let n = self.n;
        if pos == n * n {
            emit(&self.cells);
            return;
        }
        let row = pos / n;
        for v in 0..n {
            if self.used[row] & (1 << v) != 0 {
                continue;
            }
            self.cells[pos] = v;
            self.used[row] |= 1 << v;
            if self.consistent_through(pos) {
                self.descend(pos + 1, emit);
            }
            self.used[row] &= !(1 << v);
            self.cells[pos] = UNSET;
        }
    }
}

/// Every table whose rows are permutations, in lexicographic order.
/// `(n!)^n` candidates; intended for small `n` oracle scans.
pub fn for_each_row_permutation_table(n: usize, mut f: impl FnMut(&OpTable)) {
    let mut rows: Vec<Vec<usize>> = vec![(0..n).collect(); n];
    loop {
        let cells: Vec<usize> = rows.iter().flatten().copied().collect();
        f(&OpTable::new(n, cells).expect("rows are permutations"));
        // Odometer over rows, last row fastest.
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if next_permutation(&mut rows[i]) {
                break;
            }
            rows[i] = (0..n).collect();
        }
    }
}
