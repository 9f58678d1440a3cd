//! Set-theoretic solutions of the Yang-Baxter equation in braid form
//! `r(x,y) = (λ_x(y), τ_y(x))` and quantum form `R(x,y) = (x^y, ˣy)`, their
//! axiom checks, flip conversions and the correspondence with cycle sets.

use std::fmt;

use thiserror::Error;

use crate::cycle_set::{CycleSet, CycleSetError};
use crate::table::{is_bijection, OpTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum YbeError {
    #[error("tables have sizes {left} and {right}")]
    ShapeMismatch { left: usize, right: usize },
    #[error("x -> x^y is not a bijection for y = {y}")]
    NotLeftNondegenerate { y: usize },
    #[error("unitary condition fails at ({x}, {y})")]
    NotUnitary { x: usize, y: usize },
    #[error("quantum Yang-Baxter equation fails: {0}")]
    NotQybe(QybeViolation),
    #[error("map is not an involution: r(r({x}, {y})) != ({x}, {y})")]
    NotInvolutive { x: usize, y: usize },
    #[error("cycle set rebuilt from the solution is invalid: {0}")]
    CycleSet(#[from] CycleSetError),
}

/// Braid form. `L[x][y] = λ_x(y)` and `T[y][x] = τ_y(x)`, so that
/// `r(x,y) = (L[x][y], T[y][x])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidMap {
    lambda: OpTable,
    tau: OpTable,
}

/// Quantum form. `A[x][y] = x^y` and `B[x][y] = ˣy`, so that
/// `R(x,y) = (A[x][y], B[x][y])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QybeMap {
    a: OpTable,
    b: OpTable,
}

/// A triple on which the two sides of the braid relation differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BraidViolation {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub lhs: (usize, usize, usize),
    pub rhs: (usize, usize, usize),
}

impl fmt::Display for BraidViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at ({}, {}, {}): r1r2r1 gives {:?}, r2r1r2 gives {:?}",
            self.x, self.y, self.z, self.lhs, self.rhs
        )
    }
}

/// Output coordinate of `R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂` that disagrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QybeComponent {
    /// `(x^y)^z = (x^(ʸz))^(y^z)`
    First,
    /// `^(x^(ʸz))(y^z) = (ˣy)^(^(x^y)z)`
    Second,
    /// `ˣ(ʸz) = ^(ˣy)(^(x^y)z)`
    Third,
}

impl QybeComponent {
    pub const ALL: [QybeComponent; 3] = [Self::First, Self::Second, Self::Third];

    /// 1-based position.
    pub fn index(self) -> usize {
        match self {
            Self::First => 1,
            Self::Second => 2,
            Self::Third => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QybeViolation {
    pub component: QybeComponent,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub lhs: usize,
    pub rhs: usize,
}

impl fmt::Display for QybeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "component {} at ({}, {}, {}): {} != {}",
            self.component.index(),
            self.x,
            self.y,
            self.z,
            self.lhs,
            self.rhs
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Nondegeneracy {
    pub left: bool,
    pub right: bool,
}

impl Nondegeneracy {
    pub fn both(&self) -> bool {
        self.left && self.right
    }
}

/// Composition with the flip `p(x,y) = (y,x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flip {
    /// `p∘m`
    Left,
    /// `m∘p`
    Right,
    /// `p∘m∘p`
    Both,
}

/// Either form, for conversions whose output type depends on the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionMap {
    Braid(BraidMap),
    Quantum(QybeMap),
}

/// Applies a flip. One-sided flips switch between the braid and quantum
/// forms; the two-sided flip keeps the form and yields the dual solution.
pub fn flip_compose(kind: Flip, m: &SolutionMap) -> SolutionMap {
    match (kind, m) {
        (Flip::Left, SolutionMap::Quantum(r)) => SolutionMap::Braid(r.flip_left()),
        (Flip::Right, SolutionMap::Quantum(r)) => SolutionMap::Braid(r.flip_right()),
        (Flip::Both, SolutionMap::Quantum(r)) => SolutionMap::Quantum(r.flip_both()),
        (Flip::Left, SolutionMap::Braid(r)) => SolutionMap::Quantum(r.flip_left()),
        (Flip::Right, SolutionMap::Braid(r)) => SolutionMap::Quantum(r.flip_right()),
        (Flip::Both, SolutionMap::Braid(r)) => SolutionMap::Braid(r.flip_both()),
    }
}

fn same_size(a: &OpTable, b: &OpTable) -> Result<(), YbeError> {
    if a.n() != b.n() {
        return Err(YbeError::ShapeMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    Ok(())
}

impl BraidMap {
    pub fn new(lambda: OpTable, tau: OpTable) -> Result<Self, YbeError> {
        same_size(&lambda, &tau)?;
        Ok(BraidMap { lambda, tau })
    }

    /// Builds the tables from `r` evaluated on every pair.
    pub fn from_fn(n: usize, r: impl Fn(usize, usize) -> (usize, usize)) -> Self {
        let lambda = OpTable::from_fn(n, |x, y| r(x, y).0);
        let tau = OpTable::from_fn(n, |y, x| r(x, y).1);
        BraidMap { lambda, tau }
    }

    /// `r(x,y) = (y,x)`.
    pub fn flip(n: usize) -> Self {
        Self::from_fn(n, |x, y| (y, x))
    }

    pub fn n(&self) -> usize {
        self.lambda.n()
    }

    pub fn lambda_table(&self) -> &OpTable {
        &self.lambda
    }

    pub fn tau_table(&self) -> &OpTable {
        &self.tau
    }

    #[inline]
    pub fn lambda(&self, x: usize, y: usize) -> usize {
        self.lambda.get(x, y)
    }

    #[inline]
    pub fn tau(&self, y: usize, x: usize) -> usize {
        self.tau.get(y, x)
    }

    #[inline]
    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        (self.lambda.get(x, y), self.tau.get(y, x))
    }

    /// First triple where `r₁r₂r₁ ≠ r₂r₁r₂`.
    pub fn braid_violation(&self) -> Option<BraidViolation> {
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (lhs, rhs) = self.braid_sides(x, y, z);
                    if lhs != rhs {
                        return Some(BraidViolation { x, y, z, lhs, rhs });
                    }
                }
            }
        }
        None
    }

    fn braid_sides(&self, x: usize, y: usize, z: usize) -> ((usize, usize, usize), (usize, usize, usize)) {
        let r = |a, b| self.apply(a, b);
        let lhs = {
            let (a, b) = r(x, y);
            let (b, c) = r(b, z);
            let (a, b) = r(a, b);
            (a, b, c)
        };
        let rhs = {
            let (b, c) = r(y, z);
            let (a, b) = r(x, b);
            let (b, c) = r(b, c);
            (a, b, c)
        };
        (lhs, rhs)
    }

    pub fn check_braid(&self) -> bool {
        self.braid_violation().is_none()
    }

    /// First pair with `r(r(x,y)) ≠ (x,y)`.
    pub fn involution_violation(&self) -> Option<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| {
                let (u, v) = self.apply(x, y);
                self.apply(u, v) != (x, y)
            })
    }

    pub fn check_involutive(&self) -> bool {
        self.involution_violation().is_none()
    }

    /// Left: every `λ_x` is a bijection. Right: every `τ_y` is a bijection.
    pub fn nondegeneracy(&self) -> Nondegeneracy {
        Nondegeneracy {
            left: self.lambda.first_non_bijective_row().is_none(),
            right: self.tau.first_non_bijective_row().is_none(),
        }
    }

    /// `p∘r` as a quantum map.
    pub fn flip_left(&self) -> QybeMap {
        QybeMap {
            a: self.tau.transpose(),
            b: self.lambda.clone(),
        }
    }

    /// `r∘p` as a quantum map.
    pub fn flip_right(&self) -> QybeMap {
        QybeMap {
            a: self.lambda.transpose(),
            b: self.tau.clone(),
        }
    }

    /// `p∘r∘p`.
    pub fn flip_both(&self) -> BraidMap {
        BraidMap {
            lambda: self.tau.clone(),
            tau: self.lambda.clone(),
        }
    }

    /// Checks one condition of the braid relation split by component, which
    /// suffices for involutions. Errors if the map is not an involution.
    pub fn involutive_shortcut_check(&self, which: QybeComponent) -> Result<bool, YbeError> {
        if let Some((x, y)) = self.involution_violation() {
            return Err(YbeError::NotInvolutive { x, y });
        }
        Ok(self.shortcut_violation(which).is_none())
    }

    /// The selected condition in `τ`/`λ` notation, with no precondition.
    pub fn shortcut_violation(&self, which: QybeComponent) -> Option<QybeViolation> {
        let n = self.n();
        let tau = |a, b| self.tau(a, b);
        let lam = |a, b| self.lambda(a, b);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (lhs, rhs) = match which {
                        QybeComponent::First => {
                            (tau(z, tau(y, x)), tau(tau(z, y), tau(lam(y, z), x)))
                        }
                        QybeComponent::Second => (
                            lam(tau(lam(y, z), x), tau(z, y)),
                            tau(lam(tau(y, x), z), lam(x, y)),
                        ),
                        QybeComponent::Third => {
                            (lam(x, lam(y, z)), lam(lam(x, y), lam(tau(y, x), z)))
                        }
                    };
                    if lhs != rhs {
                        return Some(QybeViolation {
                            component: which,
                            x,
                            y,
                            z,
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
        None
    }
}

impl QybeMap {
    pub fn new(a: OpTable, b: OpTable) -> Result<Self, YbeError> {
        same_size(&a, &b)?;
        Ok(QybeMap { a, b })
    }

    pub fn from_fn(n: usize, r: impl Fn(usize, usize) -> (usize, usize)) -> Self {
        QybeMap {
            a: OpTable::from_fn(n, |x, y| r(x, y).0),
            b: OpTable::from_fn(n, |x, y| r(x, y).1),
        }
    }

    /// `R(x,y) = (x,y)`.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |x, y| (x, y))
    }

    /// The solution of a cycle set: `x^y = σ_y⁻¹(x)` and `ˣy = x^y·y`.
    pub fn from_cycle_set(cs: &CycleSet) -> Self {
        let n = cs.n();
        let a = cs.inverse_table().clone();
        let b = OpTable::from_fn(n, |x, y| cs.op(a.get(x, y), y));
        QybeMap { a, b }
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn a_table(&self) -> &OpTable {
        &self.a
    }

    pub fn b_table(&self) -> &OpTable {
        &self.b
    }

    #[inline]
    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        (self.a.get(x, y), self.b.get(x, y))
    }

    /// First triple and component where the quantum equation fails; on each
    /// triple the components are tried in order.
    pub fn qybe_violation(&self) -> Option<QybeViolation> {
        let n = self.n();
        let a = |x, y| self.a.get(x, y);
        let b = |x, y| self.b.get(x, y);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let xy_a = a(x, y);
                    let yz_a = a(y, z);
                    let yz_b = b(y, z);
                    let inner = a(x, yz_b);
                    let sides = [
                        (a(xy_a, z), a(inner, yz_a)),
                        (b(inner, yz_a), a(b(x, y), b(xy_a, z))),
                        (b(x, yz_b), b(b(x, y), b(xy_a, z))),
                    ];
                    for (component, (lhs, rhs)) in QybeComponent::ALL.into_iter().zip(sides) {
                        if lhs != rhs {
                            return Some(QybeViolation {
                                component,
                                x,
                                y,
                                z,
                                lhs,
                                rhs,
                            });
                        }
                    }
                }
            }
        }
        None
    }

    pub fn check_qybe(&self) -> bool {
        self.qybe_violation().is_none()
    }

    /// First pair where `^(ˣy)(x^y) = x` or `(ˣy)^(x^y) = y` fails.
    pub fn unitary_violation(&self) -> Option<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| {
                let (u, v) = (self.a.get(x, y), self.b.get(x, y));
                self.b.get(v, u) != x || self.a.get(v, u) != y
            })
    }

    pub fn check_unitary(&self) -> bool {
        self.unitary_violation().is_none()
    }

    /// Left: `x ↦ x^y` is a bijection for each `y`. Right: `x ↦ ʸx` is a
    /// bijection for each `y`.
    pub fn nondegeneracy(&self) -> Nondegeneracy {
        Nondegeneracy {
            left: self.first_left_degenerate_column().is_none(),
            right: self.b.first_non_bijective_row().is_none(),
        }
    }

    fn first_left_degenerate_column(&self) -> Option<usize> {
        self.a.first_non_bijective_column()
    }

    /// `p∘R`.
    pub fn flip_left(&self) -> BraidMap {
        BraidMap {
            lambda: self.b.clone(),
            tau: self.a.transpose(),
        }
    }

    /// `R∘p`.
    pub fn flip_right(&self) -> BraidMap {
        BraidMap {
            lambda: self.a.transpose(),
            tau: self.b.clone(),
        }
    }

    /// `p∘R∘p`, the dual solution.
    pub fn flip_both(&self) -> QybeMap {
        QybeMap {
            a: self.b.transpose(),
            b: self.a.transpose(),
        }
    }

    /// The braid solution attached to a non-degenerate cycle set, `R∘p`.
    pub fn braid_solution(&self) -> BraidMap {
        self.flip_right()
    }

    /// Inverse of [`QybeMap::from_cycle_set`]: `σ_y` is the inverse of `x ↦ x^y`.
    pub fn to_cycle_set(&self) -> Result<CycleSet, YbeError> {
        if let Some(y) = self.first_left_degenerate_column() {
            return Err(YbeError::NotLeftNondegenerate { y });
        }
        if let Some((x, y)) = self.unitary_violation() {
            return Err(YbeError::NotUnitary { x, y });
        }
        if let Some(v) = self.qybe_violation() {
            return Err(YbeError::NotQybe(v));
        }
        let n = self.n();
        let mut cells = vec![0; n * n];
        for y in 0..n {
            for x in 0..n {
                cells[y * n + self.a.get(x, y)] = x;
            }
        }
        let table = OpTable::new(n, cells).expect("columns are bijective");
        debug_assert!(table.rows().all(is_bijection));
        Ok(CycleSet::validate(table)?)
    }
}

/// The braid solution `R∘p` of a cycle set, with `λ_x(y) = σ_x⁻¹(y)`.
pub fn braid_from_cycle_set(cs: &CycleSet) -> BraidMap {
    QybeMap::from_cycle_set(cs).braid_solution()
}
