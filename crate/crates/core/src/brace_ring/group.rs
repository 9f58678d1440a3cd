//! Group-table checks and the standard finite abelian groups.

use thiserror::Error;

use crate::table::OpTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupViolation {
    #[error("not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("no identity element")]
    NoIdentity,
    #[error("identity is {identity}, expected 0")]
    IdentityNotZero { identity: usize },
    #[error("{a} has no inverse")]
    NoInverse { a: usize },
    #[error("not commutative at ({a}, {b})")]
    NotCommutative { a: usize, b: usize },
}

pub(crate) fn first_non_associative(t: &OpTable) -> Option<(usize, usize, usize)> {
    let n = t.n();
    for a in 0..n {
        for b in 0..n {
            let ab = t.get(a, b);
            for c in 0..n {
                if t.get(ab, c) != t.get(a, t.get(b, c)) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Validates a group table and returns its identity.
pub fn check_group(t: &OpTable) -> Result<usize, GroupViolation> {
    if let Some((a, b, c)) = first_non_associative(t) {
        return Err(GroupViolation::NotAssociative { a, b, c });
    }
    let n = t.n();
    let e = (0..n)
        .find(|&e| (0..n).all(|a| t.get(e, a) == a && t.get(a, e) == a))
        .ok_or(GroupViolation::NoIdentity)?;
    if let Some(a) = (0..n).find(|&a| !(0..n).any(|b| t.get(a, b) == e && t.get(b, a) == e)) {
        return Err(GroupViolation::NoInverse { a });
    }
    Ok(e)
}

/// Validates an abelian group table with identity `0`.
pub fn check_abelian_group(t: &OpTable) -> Result<(), GroupViolation> {
    let e = check_group(t)?;
    if e != 0 {
        return Err(GroupViolation::IdentityNotZero { identity: e });
    }
    let n = t.n();
    for a in 0..n {
        for b in a + 1..n {
            if t.get(a, b) != t.get(b, a) {
                return Err(GroupViolation::NotCommutative { a, b });
            }
        }
    }
    Ok(())
}

/// Inverse of each element under a group table with identity `e`.
pub(crate) fn inverses(t: &OpTable, e: usize) -> Vec<usize> {
    let n = t.n();
    (0..n)
        .map(|a| (0..n).find(|&b| t.get(a, b) == e).expect("group element has an inverse"))
        .collect()
}

/// Addition on `ℤ/n`.
pub fn cyclic_group(n: usize) -> OpTable {
    OpTable::from_fn(n, |a, b| (a + b) % n)
}

/// Addition on `ℤ/m₁ × ⋯ × ℤ/m_k`. Element `i` has mixed-radix digits
/// `(i mod m₁, (i / m₁) mod m₂, …)`.
pub fn abelian_group(moduli: &[usize]) -> OpTable {
    let n: usize = moduli.iter().product();
    OpTable::from_fn(n, |a, b| {
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        for &m in moduli {
            out += ((a % m + b % m) % m) * place;
            place *= m;
            a /= m;
            b /= m;
        }
        out
    })
}
