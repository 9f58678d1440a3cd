//! Finite (not necessarily unital) rings given by addition and multiplication tables.

use std::collections::BTreeSet;

use thiserror::Error;

use super::group::{check_abelian_group, check_group, first_non_associative, GroupViolation};
use super::{BraceError, FiniteBrace, Side};
use crate::table::OpTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingViolation {
    #[error("tables have sizes {add} and {mul}")]
    ShapeMismatch { add: usize, mul: usize },
    #[error("addition: {0}")]
    AddNotAbelianGroup(GroupViolation),
    #[error("multiplication not associative at ({a}, {b}, {c})")]
    MulNotAssociative { a: usize, b: usize, c: usize },
    #[error("a(b+c) = ab+ac fails at ({a}, {b}, {c})")]
    LeftDistributivity { a: usize, b: usize, c: usize },
    #[error("(a+b)c = ac+bc fails at ({a}, {b}, {c})")]
    RightDistributivity { a: usize, b: usize, c: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("not a ring: {0}")]
    NotARing(RingViolation),
    #[error("adjoint operation is not a group: {0}")]
    NotJacobsonRadical(GroupViolation),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteRing {
    add: OpTable,
    mul: OpTable,
}

impl FiniteRing {
    pub fn validate(add: OpTable, mul: OpTable) -> Result<FiniteRing, RingError> {
        validate_ring(&add, &mul).map_err(RingError::NotARing)?;
        Ok(FiniteRing { add, mul })
    }

    /// The zero ring structure on an abelian group: `ab = 0` for all `a, b`.
    pub fn zero_product(add: OpTable) -> Result<FiniteRing, RingError> {
        let mul = OpTable::from_fn(add.n(), |_, _| 0);
        Self::validate(add, mul)
    }

    /// Strictly upper triangular 3×3 matrices over 𝔽₂. Element `a₁ + 2a₂ + 4a₃`
    /// is the matrix with `a₁` at (1,2), `a₂` at (1,3) and `a₃` at (2,3), so the
    /// product is `(a₁,a₂,a₃)(b₁,b₂,b₃) = (0, a₁b₃, 0)`.
    pub fn upper_triangular_f2() -> FiniteRing {
        let add = OpTable::from_fn(8, |a, b| a ^ b);
        let mul = OpTable::from_fn(8, |a, b| ((a & 1) & (b >> 2)) << 1);
        Self::validate(add, mul).expect("upper triangular matrices form a ring")
    }

    pub fn n(&self) -> usize {
        self.add.n()
    }

    pub fn add_table(&self) -> &OpTable {
        &self.add
    }

    pub fn mul_table(&self) -> &OpTable {
        &self.mul
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.get(a, b)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul.get(a, b)
    }

    /// Every element has a power equal to `0`.
    pub fn is_nil(&self) -> bool {
        (0..self.n()).all(|a| self.nil_degree(a).is_some())
    }

    /// Least `k ≥ 1` with `aᵏ = 0`, if any.
    pub fn nil_degree(&self, a: usize) -> Option<usize> {
        let mut seen = vec![false; self.n()];
        let mut p = a;
        let mut k = 1;
        while p != 0 {
            if seen[p] {
                return None;
            }
            seen[p] = true;
            p = self.mul(p, a);
            k += 1;
        }
        Some(k)
    }

    /// Least `k` such that every product of `k` elements is `0`.
    ///
    /// Tracks the set `Pₖ` of products of `k` factors through `Pₖ₊₁ = Pₖ·R`.
    /// The sets form a descending chain, so the search ends as soon as one
    /// repeats.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let n = self.n();
        let mut products: BTreeSet<usize> = (0..n).collect();
        let mut k = 1;
        loop {
            if products.len() == 1 && products.contains(&0) {
                return Some(k);
            }
            let next: BTreeSet<usize> = products
                .iter()
                .flat_map(|&p| (0..n).map(move |b| (p, b)))
                .map(|(p, b)| self.mul(p, b))
                .collect();
            if next == products {
                return None;
            }
            products = next;
            k += 1;
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_index().is_some()
    }

    /// `a∘b = a + b + ab`.
    pub fn adjoint_circle(&self) -> OpTable {
        OpTable::from_fn(self.n(), |a, b| self.add(self.add(a, b), self.mul(a, b)))
    }

    /// The adjoint operation is a group.
    pub fn is_jacobson_radical(&self) -> bool {
        check_group(&self.adjoint_circle()).is_ok()
    }

    /// The two-sided brace `(R, +, ∘)` of a Jacobson radical ring. Its side is
    /// reported as left; both laws are verified.
    pub fn to_brace(&self) -> Result<FiniteBrace, RingError> {
        let circle = self.adjoint_circle();
        check_group(&circle).map_err(RingError::NotJacobsonRadical)?;
        let brace = FiniteBrace::validate(self.add.clone(), circle, Side::Left)
            .map_err(|e| match e {
                BraceError::CircleNotGroup(g) => RingError::NotJacobsonRadical(g),
                other => panic!("ring adjoint failed brace validation: {other}"),
            })?;
        debug_assert!(brace.is_two_sided());
        Ok(brace)
    }
}

/// Checks the ring axioms, reporting the first failure.
pub fn validate_ring(add: &OpTable, mul: &OpTable) -> Result<(), RingViolation> {
    if add.n() != mul.n() {
        return Err(RingViolation::ShapeMismatch {
            add: add.n(),
            mul: mul.n(),
        });
    }
    check_abelian_group(add).map_err(RingViolation::AddNotAbelianGroup)?;
    if let Some((a, b, c)) = first_non_associative(mul) {
        return Err(RingViolation::MulNotAssociative { a, b, c });
    }
    let n = add.n();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mul.get(a, add.get(b, c)) != add.get(mul.get(a, b), mul.get(a, c)) {
                    return Err(RingViolation::LeftDistributivity { a, b, c });
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mul.get(add.get(a, b), c) != add.get(mul.get(a, c), mul.get(b, c)) {
                    return Err(RingViolation::RightDistributivity { a, b, c });
                }
            }
        }
    }
    Ok(())
}

pub fn brace_from_ring(r: &FiniteRing) -> Result<FiniteBrace, RingError> {
    r.to_brace()
}
