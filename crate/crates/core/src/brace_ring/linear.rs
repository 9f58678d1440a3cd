//! Linear cycle sets: cycle sets on an abelian group with
//! `a·(b+c) = a·b + a·c` and `(a+b)·c = (a·b)·(a·c)`. They correspond to
//! right braces through `a∘b = a^b + b`.

use thiserror::Error;

use super::group::{check_abelian_group, GroupViolation};
use super::{BraceError, FiniteBrace, Side};
use crate::cycle_set::{CycleSet, CycleSetError};
use crate::perm::Permutation;
use crate::table::OpTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearViolation {
    #[error("tables have sizes {add} and {op}")]
    ShapeMismatch { add: usize, op: usize },
    #[error("addition: {0}")]
    AddNotAbelianGroup(GroupViolation),
    #[error("not a cycle set: {0}")]
    NotCycleSet(CycleSetError),
    #[error("a·0 = 0 fails at a = {a}")]
    ZeroAbsorbing { a: usize },
    #[error("0·a = a fails at a = {a}")]
    ZeroNeutral { a: usize },
    #[error("a·(b+c) = a·b + a·c fails at ({a}, {b}, {c})")]
    Additive { a: usize, b: usize, c: usize },
    #[error("(a+b)·c = (a·b)·(a·c) fails at ({a}, {b}, {c})")]
    SumRule { a: usize, b: usize, c: usize },
    #[error("(a+b)^c = a^c + b^c fails at ({a}, {b}, {c})")]
    ExponentAdditive { a: usize, b: usize, c: usize },
    #[error("(a^b)^c = a^(b∘c) fails at ({a}, {b}, {c})")]
    ExponentComposite { a: usize, b: usize, c: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearCycleSet {
    add: OpTable,
    cycle_set: CycleSet,
}

/// Checks the cycle-set axioms, the zero rules and both linearity laws, in
/// that order.
pub fn check_linear_cycle_set(add: &OpTable, op: &OpTable) -> Result<(), LinearViolation> {
    if add.n() != op.n() {
        return Err(LinearViolation::ShapeMismatch {
            add: add.n(),
            op: op.n(),
        });
    }
    check_abelian_group(add).map_err(LinearViolation::AddNotAbelianGroup)?;
    CycleSet::validate(op.clone()).map_err(LinearViolation::NotCycleSet)?;
    let n = add.n();
    // Necessary conditions, cheap to test first.
    if let Some(a) = (0..n).find(|&a| op.get(a, 0) != 0) {
        return Err(LinearViolation::ZeroAbsorbing { a });
    }
    if let Some(a) = (0..n).find(|&a| op.get(0, a) != a) {
        return Err(LinearViolation::ZeroNeutral { a });
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if op.get(a, add.get(b, c)) != add.get(op.get(a, b), op.get(a, c)) {
                    return Err(LinearViolation::Additive { a, b, c });
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if op.get(add.get(a, b), c) != op.get(op.get(a, b), op.get(a, c)) {
                    return Err(LinearViolation::SumRule { a, b, c });
                }
            }
        }
    }
    Ok(())
}

impl LinearCycleSet {
    pub fn validate(add: OpTable, op: OpTable) -> Result<LinearCycleSet, LinearViolation> {
        check_linear_cycle_set(&add, &op)?;
        let cycle_set = CycleSet::validate(op).map_err(LinearViolation::NotCycleSet)?;
        Ok(LinearCycleSet { add, cycle_set })
    }

    pub fn n(&self) -> usize {
        self.add.n()
    }

    pub fn add_table(&self) -> &OpTable {
        &self.add
    }

    pub fn cycle_set(&self) -> &CycleSet {
        &self.cycle_set
    }

    /// `a^b = σ_b⁻¹(a)`.
    #[inline]
    pub fn exp(&self, a: usize, b: usize) -> usize {
        self.cycle_set.inv_op(a, b)
    }

    /// `a∘b = a^b + b`.
    #[inline]
    pub fn adjoint(&self, a: usize, b: usize) -> usize {
        self.add.get(self.exp(a, b), b)
    }

    /// The equivalent laws in exponent form: `(a+b)^c = a^c + b^c` and
    /// `(a^b)^c = a^(b∘c)`.
    pub fn exponent_law_violation(&self) -> Option<LinearViolation> {
        let n = self.n();
        let add = |a, b| self.add.get(a, b);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.exp(add(a, b), c) != add(self.exp(a, c), self.exp(b, c)) {
                        return Some(LinearViolation::ExponentAdditive { a, b, c });
                    }
                    if self.exp(self.exp(a, b), c) != self.exp(a, self.adjoint(b, c)) {
                        return Some(LinearViolation::ExponentComposite { a, b, c });
                    }
                }
            }
        }
        None
    }

    /// The right brace `(A, +, ∘)`.
    pub fn to_brace(&self) -> FiniteBrace {
        let circle = OpTable::from_fn(self.n(), |a, b| self.adjoint(a, b));
        FiniteBrace::validate(self.add.clone(), circle, Side::Right)
            .unwrap_or_else(|e| panic!("adjoint of a linear cycle set is not a right brace: {e}"))
    }
}

pub fn lcs_to_brace(x: &LinearCycleSet) -> FiniteBrace {
    x.to_brace()
}

/// `a·b = (λᵒᵖ_a)⁻¹(b)` with `λᵒᵖ_a(b) = b∘a − a`, for right braces.
pub fn brace_to_lcs(b: &FiniteBrace) -> Result<LinearCycleSet, BraceError> {
    let rows: Vec<Permutation> = (0..b.n())
        .map(|a| b.right_lambda(a).map(|l| l.inverse()))
        .collect::<Result<_, _>>()?;
    let op = OpTable::from_permutations(&rows);
    Ok(LinearCycleSet::validate(b.add_table().clone(), op)
        .unwrap_or_else(|e| panic!("right brace gave an invalid linear cycle set: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace_ring::{abelian_group, cyclic_group};

    #[test]
    fn trivial_linear_cycle_sets() {
        for add in [cyclic_group(2), cyclic_group(5), abelian_group(&[2, 2])] {
            let op = OpTable::from_fn(add.n(), |_, y| y);
            let x = LinearCycleSet::validate(add.clone(), op).unwrap();
            assert_eq!(x.to_brace(), FiniteBrace::trivial(add, Side::Right).unwrap());
        }
    }

    #[test]
    fn swap_over_z2_is_not_linear() {
        let op = OpTable::from_rows(&[[1, 0], [1, 0]]).unwrap();
        assert_eq!(
            check_linear_cycle_set(&cyclic_group(2), &op),
            Err(LinearViolation::ZeroAbsorbing { a: 0 })
        );
    }

    #[test]
    fn four_cycle_over_z4_is_not_linear() {
        let op = OpTable::from_rows(&[[1, 2, 3, 0], [3, 0, 1, 2], [1, 2, 3, 0], [3, 0, 1, 2]])
            .unwrap();
        assert_eq!(
            check_linear_cycle_set(&cyclic_group(4), &op),
            Err(LinearViolation::ZeroAbsorbing { a: 0 })
        );
    }

    #[test]
    fn zero_rule_fast_reject() {
        // A cycle set with a·0 = 0 but 0·a ≠ a.
        let op = OpTable::from_rows(&[[0, 2, 1], [0, 2, 1], [0, 2, 1]]).unwrap();
        assert!(CycleSet::validate(op.clone()).is_ok());
        assert_eq!(
            check_linear_cycle_set(&cyclic_group(3), &op),
            Err(LinearViolation::ZeroNeutral { a: 1 })
        );
    }

    #[test]
    fn z4_brace_round_trip() {
        let b = FiniteBrace::validate(
            cyclic_group(4),
            OpTable::from_fn(4, |a, b| (a + b + 2 * a * b) % 4),
            Side::Right,
        )
        .unwrap();
        let x = brace_to_lcs(&b).unwrap();
        assert_eq!(x.exponent_law_violation(), None);
        assert_eq!(x.to_brace(), b);
        assert_eq!(
            brace_to_lcs(&b.opposite()).unwrap_err(),
            BraceError::WrongSide { expected: Side::Right }
        );
    }
}
