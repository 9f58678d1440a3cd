use std::collections::BTreeSet;

use ybe_core::construction::{analyze_cyclic, enumerate, verify_build, ConsParams, ValidationMode};
use ybe_core::cycle_set::{enumerate_cycle_sets, CycleSetFilter};
use ybe_core::{CycleSet, MultipermutationLevel};

const SMALL: [(u64, u32); 6] = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2)];

#[test]
fn direct_mode_output_is_fully_verified() {
    for (p, k) in SMALL {
        for level in 2..=3 {
            for item in enumerate(p, k, level, ValidationMode::Direct).unwrap() {
                let report = verify_build(&item.cycle_set, &item.params);
                assert!(report.all_ok(), "{:?}: {report:?}", item.params);
                let a = analyze_cyclic(&item.cycle_set).unwrap();
                assert_eq!(a.n_star, a.retraction_size);
                assert!(a.divides && a.congruence_ok);
            }
        }
    }
}

#[test]
fn paper_mode_is_empty_whenever_psi_starts_below_k() {
    for (p, k) in SMALL {
        for level in 2..=3 {
            assert!(enumerate(p, k, level, ValidationMode::Paper).unwrap().is_empty());
        }
    }
}

#[test]
fn paper_acceptance_implies_direct() {
    // Vacuous on this range, since paper mode accepts nothing; kept so the
    // implication is rechecked if either condition changes.
    for (p, k) in SMALL {
        for level in 2..=3 {
            let direct: BTreeSet<_> = enumerate(p, k, level, ValidationMode::Direct)
                .unwrap()
                .into_iter()
                .map(|c| format!("{:?}", c.params))
                .collect();
            for c in enumerate(p, k, level, ValidationMode::Paper).unwrap() {
                assert!(direct.contains(&format!("{:?}", c.params)));
            }
        }
    }
}

#[test]
fn direct_condition_matches_built_table_validation() {
    // Brute force every family at 2^3, including ones the direct check rejects.
    for chain in [vec![3, 1, 0], vec![3, 2, 0]] {
        let domain = 1usize << chain[1];
        let bound = 1u64 << (chain[0] - chain[1]);
        for code in 0..bound.pow(domain as u32 - 1) {
            let mut f = vec![0u64; domain];
            let mut c = code;
            for v in f.iter_mut().skip(1) {
                *v = c % bound;
                c /= bound;
            }
            let params = ConsParams::new(2, 3, 2, chain.clone(), vec![f]).unwrap();
            if params.check_injective().is_err() {
                continue;
            }
            let n = params.size() as usize;
            let table = ybe_core::OpTable::from_fn(n, |x, y| {
                (y + params.psi(1, x as u64).unwrap() as usize) % n
            });
            assert_eq!(
                params.validate(ValidationMode::Direct).is_ok(),
                CycleSet::validate(table).is_ok(),
                "{params:?}"
            );
        }
    }
}

fn canonical_set(xs: impl IntoIterator<Item = CycleSet>) -> BTreeSet<CycleSet> {
    xs.into_iter().map(|x| x.canonical_form()).collect()
}

#[test]
fn construction_covers_small_cyclic_indecomposables() {
    // Every indecomposable cycle set of prime-power size up to 5 with cyclic
    // G(X) and level at least 2 arises from the direct-mode search.
    for (p, k) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1)] {
        let n = p.pow(k) as usize;
        let targets = canonical_set(
            enumerate_cycle_sets(n, CycleSetFilter::Indecomposable)
                .unwrap()
                .into_iter()
                .filter(|x| x.permutation_group().is_cyclic())
                .filter(|x| {
                    matches!(x.multipermutation_level().unwrap(), MultipermutationLevel::Level(l) if l >= 2)
                }),
        );
        let built = canonical_set(
            (2..=k as usize)
                .flat_map(|level| enumerate(p, k, level, ValidationMode::Direct).unwrap())
                .map(|c| c.cycle_set),
        );
        assert_eq!(targets.is_empty(), n != 4);
        assert_eq!(targets, built, "size {n}");
    }
}

/// Labels `X` by `i ↦ φⁱ(x₀)` for each `x₀` whose `σ` has order `|X|` and
/// keeps the least exponent table. Two cycle sets with regular cyclic `G(X)`
/// are isomorphic exactly when these agree.
fn rotation_invariant(x: &CycleSet) -> Vec<usize> {
    let n = x.n();
    (0..n)
        .filter(|&g| x.sigma(g).order() == n)
        .map(|g| {
            let phi = x.sigma(g);
            let mut label = vec![0; n];
            let mut e = g;
            for i in 0..n {
                label[e] = i;
                e = phi.apply(e);
            }
            let mut e = g;
            let mut exps = Vec::with_capacity(n);
            for _ in 0..n {
                exps.push(label[x.op(e, g)]);
                e = phi.apply(e);
            }
            exps
        })
        .min()
        .expect("G(X) is cyclic and transitive")
}

#[test]
fn construction_covers_cyclic_indecomposables_of_size_eight() {
    // Up to isomorphism such an X has σ_0 = φ and every σ_x a power of φ,
    // so it suffices to scan exponent vectors with j_0 = 1.
    let n = 8usize;
    let mut targets = BTreeSet::new();
    for code in 0..n.pow(n as u32 - 1) {
        let mut j = vec![1usize; n];
        let mut c = code;
        for v in j.iter_mut().skip(1) {
            *v = c % n;
            c /= n;
        }
        if j.iter().all(|&e| e == 1) {
            continue;
        }
        let rows: ybe_oracles::Table =
            (0..n).map(|x| (0..n).map(|y| (y + j[x]) % n).collect()).collect();
        if ybe_oracles::is_cycle_set(&rows) {
            let x = CycleSet::from_rows(&rows).unwrap();
            targets.insert(rotation_invariant(&x));
        }
    }
    let built: BTreeSet<_> = (2..=3)
        .flat_map(|level| enumerate(2, 3, level, ValidationMode::Direct).unwrap())
        .map(|c| rotation_invariant(&c.cycle_set))
        .collect();
    assert!(!targets.is_empty());
    assert_eq!(targets, built);
}
