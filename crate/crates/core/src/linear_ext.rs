//! The linear extension `ℤ^(X)` of a non-degenerate cycle set. A vector `t`
//! acts on `X` through `σ_t`, obtained by adding and subtracting basis vectors
//! one at a time starting from the identity:
//!
//! - `(π + x)(y) = π(x)·π(y)`
//! - `(π − x)(y) = π(y)^(π(x)⊙π(x))`
//!
//! With `a∘b = σ_b⁻¹(a) + b` the extension is a right brace whose adjoint
//! group is the structure group of `X`. Identifying vectors with equal `σ`
//! gives the finite brace `A(X)`.

use std::collections::HashMap;
use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::brace_ring::{BraceError, FiniteBrace, Side};
use crate::cycle_set::{CycleSet, CycleSetError};
use crate::perm::{PermGroup, Permutation};
use crate::table::OpTable;
use crate::vector::{Coeff, IntVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearExtError {
    #[error("cycle set is degenerate; the extension needs a dual operation")]
    Degenerate,
    #[error("vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("vectors {first} and {second} have equal sigma but their difference does not act trivially")]
    CosetInconsistency { first: String, second: String },
    #[error("no coset representative acts as {sigma}")]
    MissingCoset { sigma: String },
    #[error("induced tables are not a right brace: {0}")]
    BraceInvalid(BraceError),
}

/// A non-degenerate cycle set with its dual and permutation group.
#[derive(Clone, Debug)]
pub struct ExtensionContext {
    cs: CycleSet,
    dual: CycleSet,
    group: PermGroup,
    /// `dual_diag[x] = x⊙x`.
    dual_diag: Vec<usize>,
}

impl ExtensionContext {
    pub fn new(cs: CycleSet) -> Result<Self, LinearExtError> {
        let dual = cs.dual().map_err(|e| match e {
            CycleSetError::Degenerate => LinearExtError::Degenerate,
            other => panic!("dual of a non-degenerate cycle set failed: {other}"),
        })?;
        let group = cs.permutation_group();
        let dual_diag = dual.table().diagonal();
        Ok(ExtensionContext {
            cs,
            dual,
            group,
            dual_diag,
        })
    }

    pub fn n(&self) -> usize {
        self.cs.n()
    }

    pub fn cycle_set(&self) -> &CycleSet {
        &self.cs
    }

    pub fn dual(&self) -> &CycleSet {
        &self.dual
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// `π + x`.
    pub fn plus(&self, pi: &Permutation, x: usize) -> Permutation {
        let px = pi.apply(x);
        let image = (0..self.n()).map(|y| self.cs.op(px, pi.apply(y))).collect();
        Permutation::new(image).expect("rows of a cycle set are bijective")
    }

    /// `π − x`.
    pub fn minus(&self, pi: &Permutation, x: usize) -> Permutation {
        let d = self.dual_diag[pi.apply(x)];
        let image = (0..self.n()).map(|y| self.cs.inv_op(pi.apply(y), d)).collect();
        Permutation::new(image).expect("inverse rows of a cycle set are bijective")
    }

    fn check_len<T: Coeff>(&self, t: &IntVector<T>) -> Result<(), LinearExtError> {
        if t.len() != self.n() {
            return Err(LinearExtError::LengthMismatch {
                expected: self.n(),
                found: t.len(),
            });
        }
        Ok(())
    }

    /// Applies `π ↦ π ± x` `|count|` times. The orbit of `π` under one step is
    /// periodic, so the count is reduced modulo the period once it is seen.
    fn repeat_step<T: Coeff>(&self, pi: Permutation, x: usize, count: &T) -> Permutation {
        let step = |p: &Permutation| {
            if count.is_positive() {
                self.plus(p, x)
            } else {
                self.minus(p, x)
            }
        };
        let mut remaining = count.abs();
        let start = pi.clone();
        let mut current = pi;
        let mut taken = T::zero();
        while remaining.is_positive() {
            current = step(&current);
            remaining = remaining - T::one();
            taken = taken + T::one();
            if current == start {
                remaining = remaining.mod_floor(&taken);
            }
        }
        current
    }

    /// `σ_t`, folding coordinates in ascending index order.
    pub fn sigma_of_vector<T: Coeff>(&self, t: &IntVector<T>) -> Result<Permutation, LinearExtError> {
        self.check_len(t)?;
        let mut pi = Permutation::identity(self.n());
        for (x, c) in t.coords().iter().enumerate() {
            if !c.is_zero() {
                pi = self.repeat_step(pi, x, c);
            }
        }
        Ok(pi)
    }

    /// `σ_t` with the unit steps taken in a random order. Used to test
    /// order-independence; coordinates must fit in `i64`.
    pub fn sigma_of_vector_shuffled<T: Coeff>(
        &self,
        t: &IntVector<T>,
        rng: &mut impl Rng,
    ) -> Result<Permutation, LinearExtError> {
        self.check_len(t)?;
        let mut steps = Vec::new();
        for (x, c) in t.coords().iter().enumerate() {
            let c = c.to_i64().expect("coordinate fits in i64");
            steps.extend(std::iter::repeat((x, c > 0)).take(c.unsigned_abs() as usize));
        }
        steps.shuffle(rng);
        let mut pi = Permutation::identity(self.n());
        for (x, positive) in steps {
            pi = if positive {
                self.plus(&pi, x)
            } else {
                self.minus(&pi, x)
            };
        }
        Ok(pi)
    }

    /// `a^b = σ_b⁻¹(a)`.
    pub fn exp<T: Coeff>(&self, a: &IntVector<T>, b: &IntVector<T>) -> Result<IntVector<T>, LinearExtError> {
        self.check_len(a)?;
        let sigma = self.sigma_of_vector(b)?;
        Ok(a.act(&sigma.inverse()).expect("lengths checked"))
    }

    /// `a∘b = a^b + b`.
    pub fn adjoint_mult<T: Coeff>(
        &self,
        a: &IntVector<T>,
        b: &IntVector<T>,
    ) -> Result<IntVector<T>, LinearExtError> {
        Ok(&self.exp(a, b)? + b)
    }

    /// `−(a·a)`, where `a·a = σ_a(a)`.
    pub fn adjoint_inverse<T: Coeff>(&self, a: &IntVector<T>) -> Result<IntVector<T>, LinearExtError> {
        let sigma = self.sigma_of_vector(a)?;
        Ok(-a.act(&sigma).expect("lengths checked"))
    }

    pub fn element<T: Coeff>(&self, t: IntVector<T>) -> Result<SGElement<T>, LinearExtError> {
        let sigma = self.sigma_of_vector(&t)?;
        Ok(SGElement { t, sigma })
    }

    /// Checks `a∘b = (a^b·b)∘(a^b)` for all basis vectors `a, b`, the
    /// defining relations of the structure group. Returns the first failing pair.
    pub fn generator_relation_violation<T: Coeff>(&self) -> Option<(usize, usize)> {
        let n = self.n();
        let e = |i| IntVector::<T>::basis(n, i);
        for a in 0..n {
            for b in 0..n {
                let u = self.cs.inv_op(a, b);
                let w = self.cs.op(u, b);
                let lhs = self.adjoint_mult(&e(a), &e(b)).expect("sized");
                let rhs = self.adjoint_mult(&e(w), &e(u)).expect("sized");
                if lhs != rhs {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn check_generator_relations<T: Coeff>(&self) -> bool {
        self.generator_relation_violation::<T>().is_none()
    }

    /// Samples `trials` triples with coordinates in `[−bound, bound]` and
    /// checks the right-brace law, associativity of `∘` and the exponent laws
    /// `(a+b)^c = a^c + b^c` and `(a^b)^c = a^(b∘c)`.
    pub fn check_right_brace_sampled<T: Coeff>(
        &self,
        bound: i64,
        trials: usize,
        seed: u64,
    ) -> Result<(), SampleFailure<T>> {
        let n = self.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || {
            let coords: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
            IntVector::<T>::from_i64s(&coords)
        };
        for trial in 0..trials {
            let (a, b, c) = (draw(), draw(), draw());
            let m = |x: &IntVector<T>, y: &IntVector<T>| self.adjoint_mult(x, y).expect("sized");
            let x = |u: &IntVector<T>, v: &IntVector<T>| self.exp(u, v).expect("sized");
            let laws = [
                (SampledLaw::RightBrace, &m(&(&a + &b), &c) + &c == &m(&a, &c) + &m(&b, &c)),
                (SampledLaw::Associativity, m(&m(&a, &b), &c) == m(&a, &m(&b, &c))),
                (SampledLaw::ExponentAdditive, x(&(&a + &b), &c) == &x(&a, &c) + &x(&b, &c)),
                (SampledLaw::ExponentComposite, x(&x(&a, &b), &c) == x(&a, &m(&b, &c))),
            ];
            if let Some((law, _)) = laws.into_iter().find(|(_, ok)| !ok) {
                return Err(SampleFailure { trial, law, a, b, c });
            }
        }
        Ok(())
    }

    /// The finite right brace `A(X)` on representatives of the vectors modulo
    /// `{t : σ_t = id}`.
    pub fn retracted_extension<T: Coeff>(&self) -> Result<RetractedExtension<T>, LinearExtError> {
        let n = self.n();
        let zero = IntVector::<T>::zeros(n);
        let mut reps = vec![zero.clone()];
        let mut sigmas = vec![Permutation::identity(n)];
        let mut index: HashMap<Permutation, usize> = HashMap::from([(sigmas[0].clone(), 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for x in 0..n {
                let e = IntVector::<T>::basis(n, x);
                for v in [&reps[i] + &e, &reps[i] - &e] {
                    let sigma = self.sigma_of_vector(&v)?;
                    match index.get(&sigma) {
                        Some(&j) => {
                            if !self.sigma_of_vector(&(&v - &reps[j]))?.is_identity() {
                                return Err(LinearExtError::CosetInconsistency {
                                    first: v.to_string(),
                                    second: reps[j].to_string(),
                                });
                            }
                        }
                        None => {
                            index.insert(sigma.clone(), reps.len());
                            queue.push_back(reps.len());
                            reps.push(v);
                            sigmas.push(sigma);
                        }
                    }
                }
            }
        }
        let m = reps.len();
        let lookup = |v: &IntVector<T>| -> Result<usize, LinearExtError> {
            let sigma = self.sigma_of_vector(v)?;
            index
                .get(&sigma)
                .copied()
                .ok_or_else(|| LinearExtError::MissingCoset {
                    sigma: sigma.to_string(),
                })
        };
        let mut add = Vec::with_capacity(m * m);
        let mut circle = Vec::with_capacity(m * m);
        for a in &reps {
            for b in &reps {
                add.push(lookup(&(a + b))?);
                circle.push(lookup(&self.adjoint_mult(a, b)?)?);
            }
        }
        let add = OpTable::new(m, add).expect("indices lie in the carrier");
        let circle = OpTable::new(m, circle).expect("indices lie in the carrier");
        let brace =
            FiniteBrace::validate(add, circle, Side::Right).map_err(LinearExtError::BraceInvalid)?;
        Ok(RetractedExtension {
            brace,
            representatives: reps,
            sigmas,
        })
    }
}

/// A structure-group element in normal form `(t, σ_t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SGElement<T: Coeff> {
    t: IntVector<T>,
    sigma: Permutation,
}

impl<T: Coeff> SGElement<T> {
    pub fn vector(&self) -> &IntVector<T> {
        &self.t
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    /// Product in the adjoint group.
    pub fn mul(&self, other: &Self, ctx: &ExtensionContext) -> Self {
        let t = &self.t.act(&other.sigma.inverse()).expect("sized") + &other.t;
        let sigma = ctx.sigma_of_vector(&t).expect("sized");
        SGElement { t, sigma }
    }

    pub fn inverse(&self, ctx: &ExtensionContext) -> Self {
        ctx.element(ctx.adjoint_inverse(&self.t).expect("sized"))
            .expect("sized")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampledLaw {
    RightBrace,
    Associativity,
    ExponentAdditive,
    ExponentComposite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleFailure<T: Coeff> {
    pub trial: usize,
    pub law: SampledLaw,
    pub a: IntVector<T>,
    pub b: IntVector<T>,
    pub c: IntVector<T>,
}

#[derive(Clone, Debug)]
pub struct RetractedExtension<T: Coeff> {
    pub brace: FiniteBrace,
    /// Representative vector of each carrier element, in breadth-first order.
    pub representatives: Vec<IntVector<T>>,
    /// `σ` of each representative.
    pub sigmas: Vec<Permutation>,
}
