//! Permutations of `0..n` and explicitly enumerated permutation groups.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::table::is_bijection;

/// Largest supported carrier.
pub const MAX_CARRIER: usize = 1 << 16;

/// Default cap on the number of elements a closure may produce.
pub const DEFAULT_CLOSURE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("image array is not a bijection of 0..{n}")]
    NotBijective { n: usize },
    #[error("generator {index} acts on {found} points, expected {expected}")]
    SizeMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("closure exceeded the element budget of {budget}")]
    BudgetExceeded { budget: usize },
    #[error("carrier size {n} exceeds the supported maximum {MAX_CARRIER}")]
    CarrierTooLarge { n: usize },
}

/// A bijection of `0..n`, stored as its image array.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self, PermError> {
        if !is_bijection(&image) {
            return Err(PermError::NotBijective { n: image.len() });
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2, 3]]`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut image: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (i, &a) in c.iter().enumerate() {
                if a >= n {
                    return Err(PermError::NotBijective { n });
                }
                image[a] = c[(i + 1) % c.len()];
            }
        }
        Permutation::new(image)
    }

    /// The `n`-cycle `i -> i + 1 mod n`.
    pub fn rotation(n: usize) -> Self {
        Permutation {
            image: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn into_image(self) -> Vec<usize> {
        self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Permutation {
            image: other.image.iter().map(|&i| self.image[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v] = i;
        }
        Permutation { image }
    }

    /// `self` raised to a (possibly negative) power.
    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Permutation::identity(self.len());
        for _ in 0..k.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        let mut acc = self.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = self.compose(&acc);
            k += 1;
        }
        k
    }

    /// All permutations of `0..n` in lexicographic order of their image arrays.
    pub fn all(n: usize) -> LexPermutations {
        LexPermutations {
            next: Some((0..n).collect()),
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation, fixed points omitted; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.len()];
        let mut wrote = false;
        for start in 0..self.len() {
            if seen[start] || self.image[start] == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{i}")?;
                first = false;
                i = self.image[i];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

pub struct LexPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { image: current })
    }
}

/// Advances `v` to its lexicographic successor; returns false at the last permutation.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A finite permutation group stored as an explicit element list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    n: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub order: usize,
    pub is_transitive: bool,
    pub is_abelian: bool,
    pub is_cyclic: bool,
    pub orbits: Vec<Vec<usize>>,
}

impl PermGroup {
    /// Subgroup of `Sym(n)` generated by `generators`, with the default element budget.
    pub fn closure(n: usize, generators: &[Permutation]) -> Result<Self, PermError> {
        Self::closure_with_budget(n, generators, DEFAULT_CLOSURE_BUDGET)
    }

    /// Breadth-first closure from the identity, left-multiplying by each
    /// generator in the given order.
    pub fn closure_with_budget(
        n: usize,
        generators: &[Permutation],
        budget: usize,
    ) -> Result<Self, PermError> {
        if n > MAX_CARRIER {
            return Err(PermError::CarrierTooLarge { n });
        }
        for (index, g) in generators.iter().enumerate() {
            if g.len() != n {
                return Err(PermError::SizeMismatch {
                    index,
                    expected: n,
                    found: g.len(),
                });
            }
        }
        let id = Permutation::identity(n);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let h = g.compose(&elements[i]);
                if index.contains_key(&h) {
                    continue;
                }
                if elements.len() >= budget {
                    return Err(PermError::BudgetExceeded { budget });
                }
                index.insert(h.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(h);
            }
        }
        Ok(PermGroup {
            n,
            generators: generators.to_vec(),
            elements,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Elements in breadth-first discovery order; the identity comes first.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn position(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Orbits sorted internally and by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.n];
        let mut orbits = Vec::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = vec![start];
            label[start] = id;
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for g in &self.generators {
                    let y = g.apply(x);
                    if label[y] == usize::MAX {
                        label[y] = id;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    /// An element generating the whole group, if the group is cyclic.
    pub fn cyclic_generator(&self) -> Option<&Permutation> {
        let order = self.order();
        self.elements.iter().find(|g| g.order() == order)
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic_generator().is_some()
    }

    pub fn properties(&self) -> PropertyReport {
        let orbits = self.orbits();
        PropertyReport {
            order: self.order(),
            is_transitive: orbits.len() == 1,
            is_abelian: self.is_abelian(),
            is_cyclic: self.is_cyclic(),
            orbits,
        }
    }
}

impl PartialEq for PermGroup {
    /// Groups are equal when they have the same degree and element set.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.order() == other.order()
            && self.elements.iter().all(|e| other.contains(e))
    }
}

impl Eq for PermGroup {}
