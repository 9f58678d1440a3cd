//! Indecomposable cycle sets of prime-power size with cyclic permutation group.
//!
//! On `X = ℤ/p^k` with `φ = (0 ⋯ p^k−1)`, a chain `k = j₀ > j₁ > ⋯ > jₙ = 0`
//! and functions `fᵢ : ℤ/p^{jᵢ} → {0, …, p^{j_{i−1}−jᵢ} − 1}` with `fᵢ(0) = 0`
//! define
//!
//! ```text
//! ψᵢ(x) = 1 + p^{j_{n−1}} f_{n−1}(x) + ⋯ + p^{jᵢ} fᵢ(x)
//! ```
//!
//! and the table `x·y = φ^{ψ₁(x)}(y) = y + ψ₁(x) mod p^k`.
//!
//! Two acceptance tests are offered. [`ValidationMode::Paper`] checks
//! `x + 2ψ₁(y) ≡ y + 2ψ₁(x) (mod p^k)` for all `x, y`, as in the published
//! statement. [`ValidationMode::Direct`] checks
//! `ψ₁(y + ψ₁(x)) + ψ₁(x) ≡ ψ₁(x + ψ₁(y)) + ψ₁(y)`, which is exactly the
//! cycle-set law for tables of this shape. The two disagree: the paper
//! condition rejects every parameter set with `j₁ < k` at `x = 0`, while the
//! direct condition accepts, for instance, `p = k = 2, f₁ = (0, 1)`.

use rayon::prelude::*;
use thiserror::Error;

use crate::cycle_set::{CycleSet, CycleSetError, MultipermutationLevel};
use crate::perm::Permutation;
use crate::table::OpTable;

pub const DEFAULT_CONSTRUCTION_CAP: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConsError {
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("chain {chain:?} must decrease strictly from k = {k} to 0 in {level} steps")]
    InvalidChain { k: u32, level: usize, chain: Vec<u32> },
    #[error("expected {expected} functions, found {found}")]
    WrongFamilyCount { expected: usize, found: usize },
    #[error("f{i} has {found} values, expected {expected}")]
    FunctionDomain { i: usize, expected: u64, found: usize },
    #[error("f{i}({x}) = {value} is outside 0..{bound}")]
    FunctionValueOutOfRange { i: usize, x: u64, value: u64, bound: u64 },
    #[error("f{i}(0) must be 0")]
    NonzeroAtZero { i: usize },
    #[error("psi index {i} outside 1..{level}")]
    IndexOutOfRange { i: usize, level: usize },
    #[error("psi{i} is not injective")]
    PsiNotInjective { i: usize },
    #[error("x + 2psi1(y) = y + 2psi1(x) fails at ({x}, {y}): {lhs} vs {rhs}")]
    PaperConditionViolation { x: u64, y: u64, lhs: u64, rhs: u64 },
    #[error("closure condition fails at ({x}, {y})")]
    ClosureViolation { x: u64, y: u64 },
    #[error("built table is not a cycle set: {0}")]
    BuiltTableInvalid(CycleSetError),
    #[error("p^k = {size} exceeds the cap {cap}")]
    CapExceeded { size: u64, cap: u64 },
    #[error("permutation group is not cyclic and transitive")]
    NotCyclicTransitive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValidationMode {
    Paper,
    Direct,
}

impl std::fmt::Display for ValidationMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ValidationMode::Paper => "paper",
            ValidationMode::Direct => "direct",
        })
    }
}

impl std::str::FromStr for ValidationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(ValidationMode::Paper),
            "direct" => Ok(ValidationMode::Direct),
            other => Err(format!("unknown mode '{other}', expected paper or direct")),
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Parameters `(p, k, n, j, f)`. `f[i − 1]` is the value table of `fᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConsParams {
    p: u64,
    k: u32,
    level: usize,
    chain: Vec<u32>,
    f: Vec<Vec<u64>>,
}

impl ConsParams {
    /// Checks the structural invariants: `p` prime, the chain shape, the
    /// domain and range of each `fᵢ`, and `fᵢ(0) = 0`.
    pub fn new(p: u64, k: u32, level: usize, chain: Vec<u32>, f: Vec<Vec<u64>>) -> Result<Self, ConsError> {
        if !is_prime(p) {
            return Err(ConsError::NotPrime { p });
        }
        let chain_ok = level >= 2
            && k >= 1
            && chain.len() == level + 1
            && chain[0] == k
            && chain[level] == 0
            && chain.windows(2).all(|w| w[0] > w[1]);
        if !chain_ok {
            return Err(ConsError::InvalidChain { k, level, chain });
        }
        if f.len() != level - 1 {
            return Err(ConsError::WrongFamilyCount {
                expected: level - 1,
                found: f.len(),
            });
        }
        for (idx, values) in f.iter().enumerate() {
            let i = idx + 1;
            let domain = p.pow(chain[i]);
            if values.len() as u64 != domain {
                return Err(ConsError::FunctionDomain {
                    i,
                    expected: domain,
                    found: values.len(),
                });
            }
            let bound = p.pow(chain[i - 1] - chain[i]);
            if let Some((x, &value)) = values.iter().enumerate().find(|(_, &v)| v >= bound) {
                return Err(ConsError::FunctionValueOutOfRange {
                    i,
                    x: x as u64,
                    value,
                    bound,
                });
            }
            if values[0] != 0 {
                return Err(ConsError::NonzeroAtZero { i });
            }
        }
        Ok(ConsParams { p, k, level, chain, f })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn chain(&self) -> &[u32] {
        &self.chain
    }

    pub fn functions(&self) -> &[Vec<u64>] {
        &self.f
    }

    /// `|X| = p^k`.
    pub fn size(&self) -> u64 {
        self.p.pow(self.k)
    }

    fn modulus(&self, i: usize) -> u64 {
        self.p.pow(self.chain[i])
    }

    /// `ψᵢ(x)`, unreduced. `x` is taken modulo `p^{jᵢ}`.
    pub fn psi(&self, i: usize, x: u64) -> Result<u64, ConsError> {
        if i == 0 || i >= self.level {
            return Err(ConsError::IndexOutOfRange { i, level: self.level });
        }
        let x = x % self.modulus(i);
        Ok(1 + (i..self.level)
            .map(|m| self.modulus(m) * self.f[m - 1][(x % self.modulus(m)) as usize])
            .sum::<u64>())
    }

    fn psi1(&self, x: u64) -> u64 {
        self.psi(1, x).expect("level is at least 2")
    }

    /// Each `ψᵢ` is injective as a map `ℤ/p^{jᵢ} → ℤ/p^{j_{i−1}}`.
    pub fn check_injective(&self) -> Result<(), ConsError> {
        for i in 1..self.level {
            let target = self.modulus(i - 1);
            let mut seen = vec![false; target as usize];
            for x in 0..self.modulus(i) {
                let v = (self.psi(i, x)? % target) as usize;
                if std::mem::replace(&mut seen[v], true) {
                    return Err(ConsError::PsiNotInjective { i });
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self, mode: ValidationMode) -> Result<(), ConsError> {
        self.check_injective()?;
        let n = self.size();
        match mode {
            ValidationMode::Paper => {
                for x in 0..n {
                    for y in 0..n {
                        let lhs = x + 2 * self.psi1(y);
                        let rhs = y + 2 * self.psi1(x);
                        if lhs % n != rhs % n {
                            return Err(ConsError::PaperConditionViolation { x, y, lhs, rhs });
                        }
                    }
                }
            }
            ValidationMode::Direct => {
                for x in 0..n {
                    let px = self.psi1(x);
                    for y in 0..n {
                        let py = self.psi1(y);
                        if (self.psi1(y + px) + px) % n != (self.psi1(x + py) + py) % n {
                            return Err(ConsError::ClosureViolation { x, y });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `T[x][y] = (y + ψ₁(x)) mod p^k`, re-validated as a cycle set.
    pub fn build(&self) -> Result<CycleSet, ConsError> {
        let n = self.size();
        let table = OpTable::from_fn(n as usize, |x, y| ((y as u64 + self.psi1(x as u64)) % n) as usize);
        CycleSet::validate(table).map_err(ConsError::BuiltTableInvalid)
    }
}

pub fn validate_params(params: &ConsParams, mode: ValidationMode) -> Result<(), ConsError> {
    params.validate(mode)
}

pub fn build(params: &ConsParams) -> Result<CycleSet, ConsError> {
    params.build()
}

/// Each predicted property of a built cycle set, checked separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub indecomposable: bool,
    pub group_order: usize,
    pub expected_group_order: usize,
    /// `G(X)` contains `φ`; with the right order this makes it `⟨φ⟩`.
    pub contains_phi: bool,
    pub tower_sizes: Vec<usize>,
    pub expected_tower_sizes: Vec<usize>,
    pub level: MultipermutationLevel,
    pub expected_level: usize,
}

impl VerificationReport {
    pub fn group_ok(&self) -> bool {
        self.contains_phi && self.group_order == self.expected_group_order
    }

    pub fn tower_ok(&self) -> bool {
        self.tower_sizes == self.expected_tower_sizes
    }

    pub fn level_ok(&self) -> bool {
        self.level == MultipermutationLevel::Level(self.expected_level)
    }

    pub fn all_ok(&self) -> bool {
        self.indecomposable && self.group_ok() && self.tower_ok() && self.level_ok()
    }
}

pub fn verify_build(x: &CycleSet, params: &ConsParams) -> VerificationReport {
    let group = x.permutation_group();
    let n = x.n();
    VerificationReport {
        indecomposable: group.is_transitive(),
        group_order: group.order(),
        expected_group_order: params.size() as usize,
        contains_phi: group.contains(&Permutation::rotation(n)),
        tower_sizes: x.tower_sizes().expect("valid cycle set has a tower"),
        expected_tower_sizes: params.chain.iter().map(|&j| params.p.pow(j) as usize).collect(),
        level: x.multipermutation_level().expect("valid cycle set has a level"),
        expected_level: params.level,
    }
}

/// Strictly decreasing chains `k = j₀ > ⋯ > jₙ = 0`, lexicographically.
fn chains(k: u32, level: usize) -> Vec<Vec<u32>> {
    fn extend(prefix: &mut Vec<u32>, remaining: usize, out: &mut Vec<Vec<u32>>) {
        let last = *prefix.last().expect("chain starts at k");
        if remaining == 1 {
            prefix.push(0);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        // Leave room for the remaining strictly smaller entries.
        for j in remaining as u32 - 1..last {
            prefix.push(j);
            extend(prefix, remaining - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if level >= 1 && k as usize >= level {
        extend(&mut vec![k], level, &mut out);
    }
    out
}

/// Advances `f` to the next family in lexicographic order, keeping every
/// `fᵢ(0) = 0`. Returns `false` after the last one.
fn next_family(f: &mut [Vec<u64>], bounds: &[u64]) -> bool {
    for (values, &bound) in f.iter_mut().zip(bounds).rev() {
        for v in values.iter_mut().skip(1).rev() {
            *v += 1;
            if *v < bound {
                return true;
            }
            *v = 0;
        }
    }
    false
}

/// A parameter set accepted by the search together with its cycle set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constructed {
    pub params: ConsParams,
    pub cycle_set: CycleSet,
}

/// Exhaustive search over chains and function families. `threads > 1`
/// searches chains in parallel; the output order is unchanged.
#[derive(Clone, Debug)]
pub struct ConstructionSearch {
    pub p: u64,
    pub k: u32,
    pub level: usize,
    pub mode: ValidationMode,
    pub cap: u64,
    pub threads: usize,
}

impl ConstructionSearch {
    pub fn new(p: u64, k: u32, level: usize, mode: ValidationMode) -> Self {
        ConstructionSearch {
            p,
            k,
            level,
            mode,
            cap: DEFAULT_CONSTRUCTION_CAP,
            threads: 1,
        }
    }

    pub fn cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    fn check(&self) -> Result<(), ConsError> {
        if !is_prime(self.p) {
            return Err(ConsError::NotPrime { p: self.p });
        }
        let size = self
            .p
            .checked_pow(self.k)
            .filter(|&s| s <= self.cap)
            .ok_or(ConsError::CapExceeded {
                size: self.p.saturating_pow(self.k),
                cap: self.cap,
            })?;
        debug_assert!(size >= 1);
        Ok(())
    }

    /// Number of parameter sets the search visits.
    pub fn candidate_count(&self) -> Result<u128, ConsError> {
        self.check()?;
        Ok(chains(self.k, self.level)
            .iter()
            .map(|chain| {
                (1..self.level)
                    .map(|i| {
                        let bound = self.p.pow(chain[i - 1] - chain[i]) as u128;
                        bound.pow(self.p.pow(chain[i]) as u32 - 1)
                    })
                    .product::<u128>()
            })
            .sum())
    }

    fn search_chain(&self, chain: &[u32]) -> Vec<Constructed> {
        let p = self.p;
        let bounds: Vec<u64> = (1..self.level).map(|i| p.pow(chain[i - 1] - chain[i])).collect();
        let mut f: Vec<Vec<u64>> = (1..self.level).map(|i| vec![0; p.pow(chain[i]) as usize]).collect();
        let mut out = Vec::new();
        loop {
            let params = ConsParams::new(p, self.k, self.level, chain.to_vec(), f.clone())
                .expect("search stays inside the parameter space");
            if params.validate(self.mode).is_ok() {
                let cycle_set = params
                    .build()
                    .unwrap_or_else(|e| panic!("accepted parameters failed to build: {e}"));
                out.push(Constructed { params, cycle_set });
            }
            if !next_family(&mut f, &bounds) {
                return out;
            }
        }
    }

    pub fn run(&self) -> Result<Vec<Constructed>, ConsError> {
        self.check()?;
        let chains = chains(self.k, self.level);
        let parts: Vec<Vec<Constructed>> = if self.threads > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(self.threads)
                .build()
                .expect("thread pool");
            pool.install(|| chains.par_iter().map(|c| self.search_chain(c)).collect())
        } else {
            chains.iter().map(|c| self.search_chain(c)).collect()
        };
        Ok(parts.into_iter().flatten().collect())
    }
}

pub fn enumerate(p: u64, k: u32, level: usize, mode: ValidationMode) -> Result<Vec<Constructed>, ConsError> {
    ConstructionSearch::new(p, k, level, mode).run()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicAnalysis {
    /// Least element (original labels) whose `σ` generates `G(X)`.
    pub generator_index: usize,
    /// `X` relabeled so that `i = φⁱ(0)` with `φ = σ_0`.
    pub relabeled: CycleSet,
    /// Least `n ≥ 1` with `σ_{φⁿ(0)} = σ_0`.
    pub n_star: usize,
    /// `|σ(X)|`.
    pub retraction_size: usize,
    /// `n_star` divides `|X|`.
    pub divides: bool,
    /// `σ_i = φ^{jᵢ}` in the relabeled set.
    pub exponent_table: Vec<usize>,
    /// `jᵢ ≡ j_{i+|σˢ(X)|} (mod |σ^{s−1}(X)|)` for every `i` and every `s`
    /// along the retraction tower.
    pub congruence_ok: bool,
}

pub fn analyze_cyclic(x: &CycleSet) -> Result<CyclicAnalysis, ConsError> {
    let n = x.n();
    let group = x.permutation_group();
    if !group.is_transitive() || !group.is_cyclic() {
        return Err(ConsError::NotCyclicTransitive);
    }
    let generator_index = (0..n)
        .find(|&g| x.sigma(g).order() == group.order())
        .expect("a cyclic transitive group is generated by some σ_x");
    let phi = x.sigma(generator_index);
    // g(φⁱ(x₀)) = i.
    let mut g = vec![0; n];
    let mut e = generator_index;
    for (i, _) in (0..n).enumerate() {
        g[e] = i;
        e = phi.apply(e);
    }
    let g = Permutation::new(g).expect("φ is an n-cycle");
    let relabeled = CycleSet::validate(x.table().relabel(&g)).expect("relabeling preserves the law");

    let rot = Permutation::rotation(n);
    debug_assert_eq!(relabeled.sigma(0), rot);
    let exponent_table: Vec<usize> = (0..n).map(|i| relabeled.op(i, 0)).collect();
    debug_assert!((0..n).all(|i| relabeled.sigma(i) == rot.pow(exponent_table[i] as i64)));

    let n_star = (1..=n)
        .find(|&m| relabeled.sigma(m % n) == relabeled.sigma(0))
        .expect("m = n always works");
    let sizes = relabeled.tower_sizes().expect("valid cycle set has a tower");
    let congruence_ok = (1..sizes.len()).all(|s| {
        (0..n).all(|i| {
            exponent_table[i] % sizes[s - 1] == exponent_table[(i + sizes[s]) % n] % sizes[s - 1]
        })
    });
    Ok(CyclicAnalysis {
        generator_index,
        relabeled,
        n_star,
        retraction_size: sizes.get(1).copied().unwrap_or(1),
        divides: n % n_star == 0,
        exponent_table,
        congruence_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_params(f1: Vec<u64>) -> Result<ConsParams, ConsError> {
        ConsParams::new(2, 2, 2, vec![2, 1, 0], vec![f1])
    }

    fn c4() -> CycleSet {
        CycleSet::from_rows(&[[1, 2, 3, 0], [3, 0, 1, 2], [1, 2, 3, 0], [3, 0, 1, 2]]).unwrap()
    }

    #[test]
    fn psi_values() {
        let params = example_params(vec![0, 1]).unwrap();
        assert_eq!(params.psi(1, 0), Ok(1));
        assert_eq!(params.psi(1, 1), Ok(3));
        assert_eq!(params.psi(1, 7), Ok(3));
        assert_eq!(params.psi(2, 0), Err(ConsError::IndexOutOfRange { i: 2, level: 2 }));
        assert_eq!(params.psi(0, 0), Err(ConsError::IndexOutOfRange { i: 0, level: 2 }));
    }

    #[test]
    fn nonzero_at_zero_is_rejected() {
        assert_eq!(example_params(vec![1, 0]), Err(ConsError::NonzeroAtZero { i: 1 }));
    }

    #[test]
    fn structural_errors() {
        assert_eq!(
            ConsParams::new(4, 2, 2, vec![2, 1, 0], vec![vec![0, 1]]),
            Err(ConsError::NotPrime { p: 4 })
        );
        assert!(matches!(
            ConsParams::new(2, 2, 2, vec![2, 2, 0], vec![vec![0, 1]]),
            Err(ConsError::InvalidChain { .. })
        ));
        assert!(matches!(
            ConsParams::new(2, 2, 2, vec![2, 1, 0], vec![vec![0, 1, 0]]),
            Err(ConsError::FunctionDomain { i: 1, .. })
        ));
        assert!(matches!(
            ConsParams::new(2, 2, 2, vec![2, 1, 0], vec![vec![0, 2]]),
            Err(ConsError::FunctionValueOutOfRange { i: 1, x: 1, value: 2, bound: 2 })
        ));
    }

    #[test]
    fn example_modes_disagree() {
        let params = example_params(vec![0, 1]).unwrap();
        assert_eq!(
            params.validate(ValidationMode::Paper),
            Err(ConsError::PaperConditionViolation { x: 0, y: 1, lhs: 6, rhs: 3 })
        );
        assert_eq!(params.validate(ValidationMode::Direct), Ok(()));
        let constant = example_params(vec![0, 0]).unwrap();
        for mode in [ValidationMode::Paper, ValidationMode::Direct] {
            assert_eq!(constant.validate(mode), Err(ConsError::PsiNotInjective { i: 1 }));
        }
    }

    #[test]
    fn build_example() {
        let params = example_params(vec![0, 1]).unwrap();
        let x = params.build().unwrap();
        assert_eq!(x, c4());
        assert_eq!(x.sigma(0), Permutation::rotation(4));
        let report = verify_build(&x, &params);
        assert!(report.indecomposable);
        assert!(report.group_ok());
        assert_eq!(report.tower_sizes, vec![4, 2, 1]);
        assert!(report.all_ok());
    }

    #[test]
    fn report_on_foreign_input() {
        let params = example_params(vec![0, 1]).unwrap();
        let report = verify_build(&CycleSet::trivial(2), &params);
        assert_eq!(report.level, MultipermutationLevel::Level(1));
        assert!(!report.level_ok());
        assert!(!report.indecomposable);
        assert!(!report.all_ok());
    }

    #[test]
    fn chain_listing() {
        assert_eq!(chains(2, 2), vec![vec![2, 1, 0]]);
        assert_eq!(chains(3, 2), vec![vec![3, 1, 0], vec![3, 2, 0]]);
        assert_eq!(chains(3, 3), vec![vec![3, 2, 1, 0]]);
        assert!(chains(2, 3).is_empty());
    }

    #[test]
    fn enumerate_example() {
        assert!(enumerate(2, 2, 2, ValidationMode::Paper).unwrap().is_empty());
        let direct = enumerate(2, 2, 2, ValidationMode::Direct).unwrap();
        assert_eq!(direct.len(), 1);
        assert_eq!(direct[0].params.functions(), &[vec![0, 1]]);
        assert_eq!(direct[0].cycle_set, c4());
    }

    #[test]
    fn cap_and_prime_checks() {
        assert_eq!(
            enumerate(2, 7, 2, ValidationMode::Direct),
            Err(ConsError::CapExceeded { size: 128, cap: 64 })
        );
        assert_eq!(enumerate(6, 1, 2, ValidationMode::Direct), Err(ConsError::NotPrime { p: 6 }));
    }

    #[test]
    fn parallel_search_keeps_order() {
        let serial = ConstructionSearch::new(2, 4, 2, ValidationMode::Direct).run().unwrap();
        let parallel = ConstructionSearch::new(2, 4, 2, ValidationMode::Direct)
            .threads(4)
            .run()
            .unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn analysis_examples() {
        let a = analyze_cyclic(&c4()).unwrap();
        assert_eq!(a.generator_index, 0);
        assert_eq!(a.n_star, 2);
        assert_eq!(a.retraction_size, 2);
        assert!(a.divides);
        assert_eq!(a.exponent_table, vec![1, 3, 1, 3]);
        assert!(a.congruence_ok);

        let swap = CycleSet::from_rows(&[[1, 0], [1, 0]]).unwrap();
        let a = analyze_cyclic(&swap).unwrap();
        assert_eq!(a.n_star, 1);
        assert_eq!(a.exponent_table, vec![1, 1]);

        assert_eq!(analyze_cyclic(&CycleSet::trivial(2)), Err(ConsError::NotCyclicTransitive));
    }

    #[test]
    fn analysis_relabels_to_a_generator() {
        // After conjugation σ_0 is no longer the rotation, but the relabeling restores it.
        let g = Permutation::new(vec![1, 0, 2, 3]).unwrap();
        let x = CycleSet::validate(c4().table().relabel(&g)).unwrap();
        let a = analyze_cyclic(&x).unwrap();
        assert_eq!(a.relabeled.sigma(0), Permutation::rotation(4));
        assert_eq!(a.n_star, a.retraction_size);
    }
}
