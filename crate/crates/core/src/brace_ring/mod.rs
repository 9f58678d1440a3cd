//! Finite braces and rings as pairs of Cayley tables on `0..n`, with `0` the
//! identity of both operations.

mod group;
mod linear;
mod ring;

pub use group::{abelian_group, check_abelian_group, check_group, cyclic_group, GroupViolation};
pub use linear::{
    brace_to_lcs, check_linear_cycle_set, lcs_to_brace, LinearCycleSet, LinearViolation,
};
pub use ring::{brace_from_ring, validate_ring, FiniteRing, RingError, RingViolation};

use std::borrow::Cow;
use std::fmt;

use thiserror::Error;

use crate::perm::Permutation;
use crate::table::OpTable;
use crate::ybe::BraidMap;
use group::inverses;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraceError {
    #[error("tables have sizes {add} and {circle}")]
    ShapeMismatch { add: usize, circle: usize },
    #[error("addition: {0}")]
    AddNotAbelianGroup(GroupViolation),
    #[error("circle: {0}")]
    CircleNotGroup(GroupViolation),
    #[error("circle identity is {identity}, expected 0")]
    IdentityMismatch { identity: usize },
    #[error("{side} brace law fails at ({a}, {b}, {c})")]
    BraceLawViolation {
        side: Side,
        a: usize,
        b: usize,
        c: usize,
    },
    #[error("operation needs a {expected} brace")]
    WrongSide { expected: Side },
    #[error("subset is not an ideal")]
    NotAnIdeal,
}

/// A set of carrier elements, stored as membership flags.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    members: Vec<bool>,
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        Subset {
            members: vec![false; n],
        }
    }

    pub fn full(n: usize) -> Self {
        Subset {
            members: vec![true; n],
        }
    }

    /// `{0}`.
    pub fn zero(n: usize) -> Self {
        Self::from_indices(n, &[0])
    }

    pub fn from_indices(n: usize, indices: &[usize]) -> Self {
        let mut s = Self::empty(n);
        for &i in indices {
            s.members[i] = true;
        }
        s
    }

    pub fn from_flags(members: Vec<bool>) -> Self {
        Subset { members }
    }

    pub fn carrier(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members[i]
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&i| self.members[i]).collect()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

/// A brace on `0..n`. `side` records which distributivity law was verified;
/// [`FiniteBrace::is_two_sided`] reports whether the other holds as well.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteBrace {
    add: OpTable,
    circle: OpTable,
    side: Side,
    neg: Vec<usize>,
    circle_inv: Vec<usize>,
}

impl FiniteBrace {
    /// Checks both group structures, the shared identity `0` and the law of
    /// `side` on every triple.
    pub fn validate(add: OpTable, circle: OpTable, side: Side) -> Result<FiniteBrace, BraceError> {
        if add.n() != circle.n() {
            return Err(BraceError::ShapeMismatch {
                add: add.n(),
                circle: circle.n(),
            });
        }
        check_abelian_group(&add).map_err(BraceError::AddNotAbelianGroup)?;
        let e = check_group(&circle).map_err(BraceError::CircleNotGroup)?;
        if e != 0 {
            return Err(BraceError::IdentityMismatch { identity: e });
        }
        let brace = Self::assemble(add, circle, side);
        if let Some((a, b, c)) = brace.law_violation(side) {
            return Err(BraceError::BraceLawViolation { side, a, b, c });
        }
        Ok(brace)
    }

    fn assemble(add: OpTable, circle: OpTable, side: Side) -> FiniteBrace {
        let neg = inverses(&add, 0);
        let circle_inv = inverses(&circle, 0);
        FiniteBrace {
            add,
            circle,
            side,
            neg,
            circle_inv,
        }
    }

    /// `(A, +, +)`, two-sided.
    pub fn trivial(add: OpTable, side: Side) -> Result<FiniteBrace, BraceError> {
        Self::validate(add.clone(), add, side)
    }

    pub fn n(&self) -> usize {
        self.add.n()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn add_table(&self) -> &OpTable {
        &self.add
    }

    pub fn circle_table(&self) -> &OpTable {
        &self.circle
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.get(a, b)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b])
    }

    #[inline]
    pub fn circle(&self, a: usize, b: usize) -> usize {
        self.circle.get(a, b)
    }

    #[inline]
    pub fn circle_inverse(&self, a: usize) -> usize {
        self.circle_inv[a]
    }

    /// First triple violating the law of `side`.
    pub fn law_violation(&self, side: Side) -> Option<(usize, usize, usize)> {
        let n = self.n();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ok = match side {
                        Side::Left => {
                            self.add(self.circle(a, self.add(b, c)), a)
                                == self.add(self.circle(a, b), self.circle(a, c))
                        }
                        Side::Right => {
                            self.add(self.circle(self.add(a, b), c), c)
                                == self.add(self.circle(a, c), self.circle(b, c))
                        }
                    };
                    if !ok {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn satisfies(&self, side: Side) -> bool {
        self.law_violation(side).is_none()
    }

    pub fn is_two_sided(&self) -> bool {
        self.satisfies(self.side.flip())
    }

    fn require(&self, side: Side) -> Result<(), BraceError> {
        if self.side != side {
            return Err(BraceError::WrongSide { expected: side });
        }
        Ok(())
    }

    /// The same tables with the other side recorded, if that law holds.
    pub fn with_side(&self, side: Side) -> Result<FiniteBrace, BraceError> {
        if let Some((a, b, c)) = self.law_violation(side) {
            return Err(BraceError::BraceLawViolation { side, a, b, c });
        }
        Ok(FiniteBrace {
            side,
            ..self.clone()
        })
    }

    /// `λ_a(b) = a∘b − a`, for left braces.
    pub fn lambda(&self, a: usize) -> Result<Permutation, BraceError> {
        self.require(Side::Left)?;
        Ok(self.lambda_unchecked(a))
    }

    fn lambda_unchecked(&self, a: usize) -> Permutation {
        let image = (0..self.n()).map(|b| self.sub(self.circle(a, b), a)).collect();
        Permutation::new(image).expect("lambda maps of a left brace are bijective")
    }

    /// `b ↦ b∘a − a`, the lambda map of the opposite brace, for right braces.
    pub fn right_lambda(&self, a: usize) -> Result<Permutation, BraceError> {
        self.require(Side::Right)?;
        let image = (0..self.n()).map(|b| self.sub(self.circle(b, a), a)).collect();
        Ok(Permutation::new(image).expect("lambda maps of a right brace are bijective"))
    }

    #[inline]
    pub fn star(&self, a: usize, b: usize) -> usize {
        self.sub(self.sub(self.circle(a, b), a), b)
    }

    /// `a*b = a∘b − a − b`.
    pub fn ring_mult(&self) -> OpTable {
        OpTable::from_fn(self.n(), |a, b| self.star(a, b))
    }

    /// The ring `(B, +, *)`, defined for two-sided braces.
    pub fn to_ring(&self) -> Result<FiniteRing, BraceError> {
        if let Some((a, b, c)) = self.law_violation(self.side.flip()) {
            return Err(BraceError::BraceLawViolation {
                side: self.side.flip(),
                a,
                b,
                c,
            });
        }
        Ok(FiniteRing::validate(self.add.clone(), self.ring_mult())
            .expect("a two-sided brace gives a ring"))
    }

    /// `a ∘ᵒᵖ b = b ∘ a`, with the side flipped.
    pub fn opposite(&self) -> FiniteBrace {
        FiniteBrace {
            add: self.add.clone(),
            circle: self.circle.transpose(),
            side: self.side.flip(),
            neg: self.neg.clone(),
            circle_inv: self.circle_inv.clone(),
        }
    }

    fn as_right(&self) -> Cow<'_, FiniteBrace> {
        match self.side {
            Side::Right => Cow::Borrowed(self),
            Side::Left => Cow::Owned(self.opposite()),
        }
    }

    /// `r(a,b) = (λ_a(b), λ⁻¹_{λ_a(b)}(a))` for a left brace.
    pub fn solution(&self) -> Result<BraidMap, BraceError> {
        self.require(Side::Left)?;
        let n = self.n();
        let lambdas: Vec<Permutation> = (0..n).map(|a| self.lambda_unchecked(a)).collect();
        let inverse: Vec<Permutation> = lambdas.iter().map(Permutation::inverse).collect();
        let lambda = OpTable::from_permutations(&lambdas);
        let tau = OpTable::from_fn(n, |b, a| inverse[lambda.get(a, b)].apply(a));
        Ok(BraidMap::new(lambda, tau).expect("tables share a size"))
    }

    /// `{x : a*x = 0 for all a}` in right-brace conventions; a left brace is
    /// read through its opposite.
    pub fn socle(&self) -> Subset {
        let soc = self.next_socle(&Subset::zero(self.n()));
        debug_assert!(self.socle_by_translation(&soc));
        soc
    }

    /// `{x : a*x ∈ prev for all a}`, right-brace conventions.
    fn next_socle(&self, prev: &Subset) -> Subset {
        let r = self.as_right();
        let n = self.n();
        Subset::from_flags(
            (0..n)
                .map(|x| (0..n).all(|a| prev.contains(r.star(a, x))))
                .collect(),
        )
    }

    /// `c` is in the socle iff `a*(b+c) = a*b` for all `a, b`.
    fn socle_by_translation(&self, soc: &Subset) -> bool {
        let r = self.as_right();
        let n = self.n();
        (0..n).all(|c| {
            let translates = (0..n).all(|a| (0..n).all(|b| r.star(a, r.add(b, c)) == r.star(a, b)));
            translates == soc.contains(c)
        })
    }

    /// `Soc₀ = {0} ⊆ Soc₁ ⊆ …`, ending at the first term equal to its successor.
    pub fn socle_series(&self) -> Vec<Subset> {
        let mut series = vec![Subset::zero(self.n())];
        loop {
            let next = self.next_socle(series.last().expect("nonempty"));
            if &next == series.last().expect("nonempty") {
                return series;
            }
            series.push(next);
        }
    }

    /// Sub-brace closed under `a*x` and `x*a` for every `a`.
    pub fn is_ideal(&self, s: &Subset) -> bool {
        let n = self.n();
        if s.carrier() != n || !s.contains(0) {
            return false;
        }
        let members = s.indices();
        for &x in &members {
            if !s.contains(self.neg(x)) || !s.contains(self.circle_inverse(x)) {
                return false;
            }
            for &y in &members {
                if !s.contains(self.add(x, y)) || !s.contains(self.circle(x, y)) {
                    return false;
                }
            }
            for a in 0..n {
                if !s.contains(self.star(a, x)) || !s.contains(self.star(x, a)) {
                    return false;
                }
            }
        }
        true
    }

    /// Quotient by an ideal. Cosets are labeled by rank of their least
    /// representative; the second value maps each element to its coset.
    pub fn quotient(&self, ideal: &Subset) -> Result<(FiniteBrace, Vec<usize>), BraceError> {
        if !self.is_ideal(ideal) {
            return Err(BraceError::NotAnIdeal);
        }
        let n = self.n();
        let members = ideal.indices();
        let mut projection = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for a in 0..n {
            if projection[a] != usize::MAX {
                continue;
            }
            let class = reps.len();
            reps.push(a);
            for &i in &members {
                projection[self.add(a, i)] = class;
            }
        }
        let m = reps.len();
        let induce = |op: &dyn Fn(usize, usize) -> usize| -> Result<OpTable, BraceError> {
            let mut cells = vec![usize::MAX; m * m];
            for a in 0..n {
                for b in 0..n {
                    let cell = &mut cells[projection[a] * m + projection[b]];
                    let v = projection[op(a, b)];
                    if *cell == usize::MAX {
                        *cell = v;
                    } else if *cell != v {
                        return Err(BraceError::NotAnIdeal);
                    }
                }
            }
            Ok(OpTable::new(m, cells).expect("every coset pair is filled"))
        };
        let add = induce(&|a, b| self.add(a, b))?;
        let circle = induce(&|a, b| self.circle(a, b))?;
        let q = FiniteBrace::validate(add, circle, self.side)
            .unwrap_or_else(|e| panic!("quotient by an ideal is not a brace: {e}"));
        Ok((q, projection))
    }
}
