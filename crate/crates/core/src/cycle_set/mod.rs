//! Finite cycle sets: tables with bijective rows satisfying
//! `(x·y)·(x·z) = (y·x)·(y·z)`.

mod enumerate;

pub use enumerate::{
    enumerate_cycle_sets, for_each_row_permutation_table, CycleSetFilter, Enumeration,
    DEFAULT_ENUMERATION_CAP,
};

use thiserror::Error;

use crate::perm::{PermGroup, Permutation};
use crate::table::OpTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleSetError {
    #[error("row {x} is not a permutation")]
    NonBijectiveRow { x: usize },
    #[error("cycle-set law fails at ({x}, {y}, {z}): {lhs} != {rhs}")]
    LawViolation {
        x: usize,
        y: usize,
        z: usize,
        lhs: usize,
        rhs: usize,
    },
    #[error("cycle set is degenerate: the diagonal is not a bijection")]
    Degenerate,
    #[error("internal error: retraction is not a valid cycle set ({0})")]
    RetractInvalid(Box<CycleSetError>),
    #[error("internal error: row equality is not a congruence at ({x}, {y})")]
    NotCongruence { x: usize, y: usize },
    #[error("internal error: dual operation is not a valid cycle set ({0})")]
    DualInvalid(Box<CycleSetError>),
    #[error(transparent)]
    Table(#[from] crate::table::TableError),
    #[error("enumeration size {n} exceeds the cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// A validated cycle set with its inverse operation cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleSet {
    table: OpTable,
    /// `inv[y][x] = y^x = σ_x⁻¹(y)`.
    inv: OpTable,
}

/// Result of one retraction step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractionStep {
    pub retract: CycleSet,
    /// Class index of each parent element; classes are numbered by least member.
    pub projection: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultipermutationLevel {
    Level(usize),
    /// The retraction tower stalls above size one.
    NotFully,
}

impl CycleSet {
    /// Checks row bijectivity, then the cycle-set law over all triples in
    /// lexicographic order.
    pub fn validate(table: OpTable) -> Result<CycleSet, CycleSetError> {
        if let Some(x) = table.first_non_bijective_row() {
            return Err(CycleSetError::NonBijectiveRow { x });
        }
        if let Some((x, y, z, lhs, rhs)) = first_law_violation(&table) {
            return Err(CycleSetError::LawViolation { x, y, z, lhs, rhs });
        }
        Ok(Self::from_valid_table(table))
    }

    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<CycleSet, CycleSetError> {
        let table = OpTable::from_rows(rows)?;
        Self::validate(table)
    }

    /// Caller guarantees the table is a cycle set.
    pub(crate) fn from_valid_table(table: OpTable) -> CycleSet {
        let n = table.n();
        let mut cells = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                // σ_x(y) = table[x][y], so y = σ_x⁻¹(table[x][y]).
                cells[table.get(x, y) * n + x] = y;
            }
        }
        let inv = OpTable::new(n, cells).expect("inverse of bijective rows");
        CycleSet { table, inv }
    }

    /// The cycle set `x·y = y` on `n` points.
    pub fn trivial(n: usize) -> CycleSet {
        Self::from_valid_table(OpTable::from_fn(n, |_, y| y))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn table(&self) -> &OpTable {
        &self.table
    }

    pub fn inverse_table(&self) -> &OpTable {
        &self.inv
    }

    /// `x·y = σ_x(y)`.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table.get(x, y)
    }

    /// `y^x = σ_x⁻¹(y)`.
    #[inline]
    pub fn inv_op(&self, y: usize, x: usize) -> usize {
        self.inv.get(y, x)
    }

    /// Left multiplication `σ_x`.
    pub fn sigma(&self, x: usize) -> Permutation {
        Permutation::new(self.table.row(x).to_vec()).expect("rows are bijective")
    }

    pub fn sigmas(&self) -> Vec<Permutation> {
        (0..self.n()).map(|x| self.sigma(x)).collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        crate::table::is_bijection(&self.table.diagonal())
    }

    /// The dual operation `⊙`, where `x ↦ y⊙x` inverts `x ↦ ʸx = y^x·x`.
    pub fn dual(&self) -> Result<CycleSet, CycleSetError> {
        if !self.is_nondegenerate() {
            return Err(CycleSetError::Degenerate);
        }
        let n = self.n();
        let mut cells = vec![usize::MAX; n * n];
        for y in 0..n {
            for x in 0..n {
                let shifted = self.op(self.inv_op(y, x), x);
                cells[y * n + shifted] = x;
            }
        }
        // Non-degeneracy makes every x ↦ ʸx a bijection.
        debug_assert!(cells.iter().all(|&c| c < n));
        let table = OpTable::new(n, cells).map_err(|_| CycleSetError::Degenerate)?;
        match CycleSet::validate(table) {
            Ok(d) => Ok(d),
            Err(e) => Err(CycleSetError::DualInvalid(Box::new(e))),
        }
    }

    /// `G(X)`, the group generated by all `σ_x`.
    pub fn permutation_group(&self) -> PermGroup {
        PermGroup::closure(self.n(), &self.sigmas()).expect("generators share the carrier")
    }

    /// Quotient by the congruence `x ~ y ⇔ σ_x = σ_y`.
    pub fn retraction(&self) -> Result<RetractionStep, CycleSetError> {
        let n = self.n();
        let mut projection = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..n {
            if projection[x] != usize::MAX {
                continue;
            }
            let class = reps.len();
            reps.push(x);
            for y in x..n {
                if self.table.row(y) == self.table.row(x) {
                    projection[y] = class;
                }
            }
        }
        let m = reps.len();
        let mut cells = vec![usize::MAX; m * m];
        for x in 0..n {
            for y in 0..n {
                let v = projection[self.op(x, y)];
                let slot = &mut cells[projection[x] * m + projection[y]];
                if *slot == usize::MAX {
                    *slot = v;
                } else if *slot != v {
                    return Err(CycleSetError::NotCongruence { x, y });
                }
            }
        }
        let table = OpTable::new(m, cells).expect("all classes populated");
        let retract =
            CycleSet::validate(table).map_err(|e| CycleSetError::RetractInvalid(Box::new(e)))?;
        Ok(RetractionStep {
            retract,
            projection,
        })
    }

    /// Successive retractions, stopping at size one or when the size stops
    /// decreasing. The first entry retracts `self`.
    pub fn retraction_tower(&self) -> Result<Vec<RetractionStep>, CycleSetError> {
        let mut steps: Vec<RetractionStep> = Vec::new();
        let mut current = self.clone();
        while current.n() > 1 {
            let step = current.retraction()?;
            let stalled = step.retract.n() == current.n();
            current = step.retract.clone();
            steps.push(step);
            if stalled {
                break;
            }
        }
        Ok(steps)
    }

    /// Sizes `|σ⁰(X)|, |σ¹(X)|, ...` along the tower.
    pub fn tower_sizes(&self) -> Result<Vec<usize>, CycleSetError> {
        let mut sizes = vec![self.n()];
        sizes.extend(self.retraction_tower()?.iter().map(|s| s.retract.n()));
        Ok(sizes)
    }

    pub fn multipermutation_level(&self) -> Result<MultipermutationLevel, CycleSetError> {
        let sizes = self.tower_sizes()?;
        Ok(match sizes.last() {
            Some(1) => MultipermutationLevel::Level(sizes.len() - 1),
            _ => MultipermutationLevel::NotFully,
        })
    }

    pub fn is_indecomposable(&self) -> bool {
        self.permutation_group().is_transitive()
    }

    pub fn is_irretractable(&self) -> bool {
        let n = self.n();
        n > 1 && (0..n).all(|x| (x + 1..n).all(|y| self.table.row(x) != self.table.row(y)))
    }

    /// Whether the table is lexicographically least among all its simultaneous
    /// relabelings.
    pub fn is_canonical(&self) -> bool {
        Permutation::all(self.n()).all(|g| self.table.relabel(&g) >= self.table)
    }

    /// Least relabeling of the table.
    pub fn canonical_form(&self) -> CycleSet {
        let best = Permutation::all(self.n())
            .map(|g| self.table.relabel(&g))
            .min()
            .expect("at least the identity relabeling");
        Self::from_valid_table(best)
    }
}

pub(crate) fn first_law_violation(t: &OpTable) -> Option<(usize, usize, usize, usize, usize)> {
    let n = t.n();
    for x in 0..n {
        for y in 0..n {
            let xy = t.get(x, y);
            let yx = t.get(y, x);
            for z in 0..n {
                let lhs = t.get(xy, t.get(x, z));
                let rhs = t.get(yx, t.get(y, z));
                if lhs != rhs {
                    return Some((x, y, z, lhs, rhs));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(rows: &[[usize; 2]]) -> Result<CycleSet, CycleSetError> {
        CycleSet::from_rows(rows)
    }

    pub(crate) fn swap2() -> CycleSet {
        set(&[[1, 0], [1, 0]]).unwrap()
    }

    pub(crate) fn c4() -> CycleSet {
        CycleSet::from_rows(&[[1, 2, 3, 0], [3, 0, 1, 2], [1, 2, 3, 0], [3, 0, 1, 2]]).unwrap()
    }

    #[test]
    fn trivial_and_swap_validate() {
        assert!(set(&[[0, 1], [0, 1]]).is_ok());
        assert!(set(&[[1, 0], [1, 0]]).is_ok());
    }

    #[test]
    fn first_violation_is_reported() {
        let err = set(&[[0, 1], [1, 0]]).unwrap_err();
        assert_eq!(
            err,
            CycleSetError::LawViolation {
                x: 0,
                y: 1,
                z: 0,
                lhs: 1,
                rhs: 0
            }
        );
    }

    #[test]
    fn non_bijective_row() {
        let err = set(&[[0, 1], [1, 1]]).unwrap_err();
        assert_eq!(err, CycleSetError::NonBijectiveRow { x: 1 });
    }

    #[test]
    fn inverse_table_identities() {
        let x = c4();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(x.op(a, x.inv_op(b, a)), b);
                assert_eq!(x.inv_op(x.op(a, b), a), b);
            }
        }
    }

    #[test]
    fn nondegeneracy_examples() {
        assert!(CycleSet::trivial(2).is_nondegenerate());
        assert!(swap2().is_nondegenerate());
    }

    #[test]
    fn duals() {
        assert_eq!(CycleSet::trivial(3).dual().unwrap(), CycleSet::trivial(3));
        assert_eq!(swap2().dual().unwrap(), swap2());
        let x = c4();
        let d = x.dual().unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(d.op(x.op(a, b), x.op(b, a)), a);
                assert_eq!(x.op(d.op(a, b), d.op(b, a)), a);
            }
        }
        assert_eq!(d.dual().unwrap(), x);
    }

    #[test]
    fn permutation_groups() {
        assert_eq!(CycleSet::trivial(3).permutation_group().order(), 1);
        assert_eq!(swap2().permutation_group().order(), 2);
        let p = c4().permutation_group().properties();
        assert_eq!(p.order, 4);
        assert!(p.is_cyclic && p.is_transitive);
    }

    #[test]
    fn retractions() {
        assert_eq!(swap2().retraction().unwrap().retract.n(), 1);
        let step = c4().retraction().unwrap();
        assert_eq!(step.retract, swap2());
        assert_eq!(step.projection, vec![0, 1, 0, 1]);
        // Irretractable sets retract onto themselves.
        let x = CycleSet::trivial(1);
        assert_eq!(x.retraction().unwrap().retract, x);
    }

    #[test]
    fn levels() {
        use MultipermutationLevel::*;
        assert_eq!(CycleSet::trivial(1).multipermutation_level().unwrap(), Level(0));
        assert_eq!(swap2().multipermutation_level().unwrap(), Level(1));
        assert_eq!(c4().multipermutation_level().unwrap(), Level(2));
        assert_eq!(c4().tower_sizes().unwrap(), vec![4, 2, 1]);
    }

    #[test]
    fn decomposability_and_retractability() {
        assert!(!CycleSet::trivial(2).is_indecomposable());
        assert!(swap2().is_indecomposable());
        assert!(c4().is_indecomposable());
        assert!(!swap2().is_irretractable());
        assert!(!c4().is_irretractable());
        assert!(!CycleSet::trivial(1).is_irretractable());
    }

    #[test]
    fn degenerate_dual_rejected() {
        // Every finite cycle set is non-degenerate, so feed the dual a table
        // built without validation.
        let fake = CycleSet::from_valid_table(OpTable::from_rows(&[[1, 0], [0, 1]]).unwrap());
        assert_eq!(fake.dual().unwrap_err(), CycleSetError::Degenerate);
    }
}
