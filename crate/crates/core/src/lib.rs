//! Finite set-theoretic solutions of the Yang-Baxter equation and the algebra
//! around them: cycle sets, braces, radical rings, the linear extension of a
//! cycle set and the prime-power construction of indecomposable cycle sets.
//!
//! Every structure lives on the carrier `0..n` and is stored as Cayley tables.

pub mod brace_ring;
pub mod construction;
pub mod cycle_set;
pub mod linear_ext;
pub mod perm;
pub mod table;
pub mod vector;
pub mod ybe;

pub use brace_ring::{FiniteBrace, FiniteRing, LinearCycleSet, Side, Subset};
pub use construction::{ConsError, ConsParams, Constructed, ConstructionSearch, CyclicAnalysis, ValidationMode, VerificationReport};
pub use cycle_set::{CycleSet, CycleSetError, MultipermutationLevel, RetractionStep};
pub use linear_ext::{ExtensionContext, LinearExtError, SGElement};
pub use perm::{PermError, PermGroup, Permutation, PropertyReport};
pub use table::{OpTable, TableError};
pub use vector::{Coeff, IntVector};
pub use ybe::{BraidMap, Flip, Nondegeneracy, QybeComponent, QybeMap, SolutionMap, YbeError};

/// Structure-group coordinates with arbitrary precision.
pub type ZVector = IntVector<num_bigint::BigInt>;
/// Machine-word coordinates, for hot loops where magnitudes stay small.
pub type ZVector64 = IntVector<i64>;
