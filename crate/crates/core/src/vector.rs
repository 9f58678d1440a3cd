//! Integer vectors indexed by a finite carrier, i.e. elements of the free
//! abelian group on `0..n`.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};
use thiserror::Error;

use crate::perm::Permutation;

/// Coefficient ring for [`IntVector`]. Implemented for every signed integer
/// type with the usual arithmetic, including `BigInt`.
pub trait Coeff:
    Integer + Signed + FromPrimitive + ToPrimitive + Clone + Hash + fmt::Debug + fmt::Display + Send + Sync
{
}

impl<T> Coeff for T where
    T: Integer + Signed + FromPrimitive + ToPrimitive + Clone + Hash + fmt::Debug + fmt::Display + Send + Sync
{
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("vector has length {found}, expected {expected}")]
pub struct LengthMismatch {
    pub expected: usize,
    pub found: usize,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector<T> {
    coords: Vec<T>,
}

impl<T: Coeff> IntVector<T> {
    pub fn zeros(n: usize) -> Self {
        IntVector {
            coords: vec![T::zero(); n],
        }
    }

    /// The basis vector `e_i`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.coords[i] = T::one();
        v
    }

    pub fn from_coords(coords: Vec<T>) -> Self {
        IntVector { coords }
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64s(coords: &[i64]) -> Self {
        IntVector {
            coords: coords
                .iter()
                .map(|&c| T::from_i64(c).expect("coefficient out of range"))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> &T {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn coefficient_sum(&self) -> T {
        self.coords.iter().fold(T::zero(), |acc, c| acc + c.clone())
    }

    /// Sum of absolute coefficients.
    pub fn length(&self) -> T {
        self.coords.iter().fold(T::zero(), |acc, c| acc + c.abs())
    }

    pub fn scale(&self, k: &T) -> Self {
        IntVector {
            coords: self.coords.iter().map(|c| c.clone() * k.clone()).collect(),
        }
    }

    /// Push-forward along `perm`: the coefficient at `x` moves to `perm(x)`.
    pub fn act(&self, perm: &Permutation) -> Result<Self, LengthMismatch> {
        if perm.len() != self.len() {
            return Err(LengthMismatch {
                expected: self.len(),
                found: perm.len(),
            });
        }
        let mut coords = vec![T::zero(); self.len()];
        for (x, c) in self.coords.iter().enumerate() {
            coords[perm.apply(x)] = c.clone();
        }
        Ok(IntVector { coords })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        IntVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

/// `act_on_vector` from the operation list, as a free function.
pub fn act_on_vector<T: Coeff>(
    perm: &Permutation,
    t: &IntVector<T>,
) -> Result<IntVector<T>, LengthMismatch> {
    t.act(perm)
}

impl<T: Coeff> Add for &IntVector<T> {
    type Output = IntVector<T>;
    fn add(self, rhs: Self) -> IntVector<T> {
        self.zip_with(rhs, |a, b| a.clone() + b.clone())
    }
}

impl<T: Coeff> Sub for &IntVector<T> {
    type Output = IntVector<T>;
    fn sub(self, rhs: Self) -> IntVector<T> {
        self.zip_with(rhs, |a, b| a.clone() - b.clone())
    }
}

impl<T: Coeff> Neg for &IntVector<T> {
    type Output = IntVector<T>;
    fn neg(self) -> IntVector<T> {
        IntVector {
            coords: self.coords.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<T: Coeff> Add for IntVector<T> {
    type Output = IntVector<T>;
    fn add(self, rhs: Self) -> IntVector<T> {
        &self + &rhs
    }
}

impl<T: Coeff> Sub for IntVector<T> {
    type Output = IntVector<T>;
    fn sub(self, rhs: Self) -> IntVector<T> {
        &self - &rhs
    }
}

impl<T: Coeff> Neg for IntVector<T> {
    type Output = IntVector<T>;
    fn neg(self) -> IntVector<T> {
        -&self
    }
}

impl<T: fmt::Display> fmt::Debug for IntVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Display for IntVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
