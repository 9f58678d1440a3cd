//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ybe_core::brace_ring::{brace_to_lcs, lcs_to_brace};
use ybe_core::construction::{analyze_cyclic, enumerate, verify_build, ConsError, ConsParams};
use ybe_core::cycle_set::{enumerate_cycle_sets, for_each_row_permutation_table, CycleSetFilter};
use ybe_core::{
    BraidMap, CycleSet, ExtensionContext, FiniteBrace, FiniteRing, OpTable, QybeComponent, QybeMap, Side,
    ValidationMode, ZVector,
};
use ybe_oracles as oracle;

/// Single-threaded budget for the full row-bijective scan at n ≤ 4.
const BIJECTION_BUDGET: Duration = Duration::from_secs(60);
const MAX_BIJECTION_N: usize = 4;
const MAX_SHORTCUT_N: usize = 3;
const MAX_NONDEGENERACY_N: usize = 5;
const MAX_BRACE_ORDER: usize = 8;
const MAX_SGP_N: usize = 4;
const SGP_SEED: u64 = 42;
const SGP_BOUND: i64 = 3;
const SGP_TRIALS: usize = 1000;
const SHUFFLES: usize = 100;
/// Random test vectors per cycle set for the order-independence check.
const SHUFFLE_VECTORS: usize = 5;
const MAX_CONSTRUCTION_SIZE: u64 = 16;
const MAX_CONSTRUCTION_LEVEL: usize = 3;
/// Tolerated counterexamples for every exact criterion.
const ALLOWED_FAILURES: usize = 0;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn rows(t: &OpTable) -> oracle::Table {
    t.rows().map(<[usize]>::to_vec).collect()
}

fn table(t: &oracle::Table) -> OpTable {
    OpTable::from_rows(t).unwrap()
}

fn all_left_braces() -> Vec<FiniteBrace> {
    oracle::SMALL_ABELIAN_GROUPS
        .iter()
        .filter(|m| m.iter().product::<usize>() <= MAX_BRACE_ORDER)
        .flat_map(|m| {
            let add = oracle::abelian_group(m);
            oracle::left_braces(&add)
                .into_iter()
                .map(move |c| FiniteBrace::validate(table(&add), table(&c), Side::Left).unwrap())
        })
        .collect()
}

fn bijection() -> Outcome {
    let start = Instant::now();
    let (mut tables, mut valid, mut failures) = (0usize, 0usize, 0usize);
    for n in 1..=MAX_BIJECTION_N {
        for_each_row_permutation_table(n, |t| {
            tables += 1;
            let ours = CycleSet::validate(t.clone());
            if ours.is_ok() != oracle::is_cycle_set(&rows(t)) {
                failures += 1;
            }
            let Ok(x) = ours else { return };
            valid += 1;
            let q = QybeMap::from_cycle_set(&x);
            let ok = q.check_qybe()
                && q.check_unitary()
                && q.nondegeneracy().both()
                && q.to_cycle_set().as_ref() == Ok(&x);
            if !ok {
                failures += 1;
            }
        });
    }
    let elapsed = start.elapsed();
    outcome(
        failures <= ALLOWED_FAILURES && elapsed <= BIJECTION_BUDGET,
        format!(
            "{tables} row-bijective tables, {valid} cycle sets, {failures} failures, {:.1}s (budget {}s)",
            elapsed.as_secs_f64(),
            BIJECTION_BUDGET.as_secs()
        ),
    )
}

/// All involutions of `0..m`, as image vectors.
fn involutions(m: usize) -> Vec<Vec<usize>> {
    fn rec(image: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = image.iter().position(|&v| v == usize::MAX) else {
            out.push(image.clone());
            return;
        };
        image[i] = i;
        rec(image, out);
        for j in i + 1..image.len() {
            if image[j] == usize::MAX {
                image[i] = j;
                image[j] = i;
                rec(image, out);
                image[j] = usize::MAX;
            }
        }
        image[i] = usize::MAX;
    }
    let mut out = Vec::new();
    rec(&mut vec![usize::MAX; m], &mut out);
    out
}

fn involutive_maps(n: usize) -> Vec<BraidMap> {
    involutions(n * n)
        .into_iter()
        .map(|r| BraidMap::from_fn(n, |x, y| (r[x * n + y] / n, r[x * n + y] % n)))
        .collect()
}

/// Returns the criterion outcome and a line restricted to non-degenerate maps.
fn shortcut() -> (Outcome, String) {
    let (mut maps, mut disagreements) = (0usize, [0usize; 3]);
    let (mut nd_maps, mut nd_disagreements) = (0usize, [0usize; 3]);
    let mut first = None;
    for n in 1..=MAX_SHORTCUT_N {
        for r in involutive_maps(n) {
            maps += 1;
            let full = r.check_braid();
            let nd = r.nondegeneracy().both();
            nd_maps += nd as usize;
            for (i, which) in QybeComponent::ALL.into_iter().enumerate() {
                let single = r.involutive_shortcut_check(which).expect("involutive by construction");
                if single != full {
                    disagreements[i] += 1;
                    if nd {
                        nd_disagreements[i] += 1;
                    }
                    first.get_or_insert_with(|| {
                        format!(
                            "first: n = {n}, condition {}, lambda {:?}, tau {:?}, braid {full}",
                            which.index(),
                            rows(r.lambda_table()),
                            rows(r.tau_table())
                        )
                    });
                }
            }
        }
    }
    let total: usize = disagreements.iter().sum();
    let detail = format!(
        "{maps} involutive maps, disagreements per condition {:?}{}",
        disagreements,
        first.map(|f| format!("; {f}")).unwrap_or_default()
    );
    let supplementary = format!(
        "non-degenerate involutions only: {nd_maps} maps, disagreements per condition {nd_disagreements:?}"
    );
    (outcome(total <= ALLOWED_FAILURES, detail), supplementary)
}

fn nondegeneracy() -> Outcome {
    let mut counts = Vec::new();
    let mut exceptions = 0;
    for n in 1..=MAX_NONDEGENERACY_N {
        let all = enumerate_cycle_sets(n, CycleSetFilter::All).unwrap();
        for x in &all {
            let mut diag: Vec<usize> = (0..n).map(|i| x.op(i, i)).collect();
            diag.sort_unstable();
            if diag != (0..n).collect::<Vec<_>>() || !x.is_nondegenerate() {
                exceptions += 1;
            }
        }
        counts.push(all.len());
    }
    outcome(
        exceptions <= ALLOWED_FAILURES,
        format!("cycle sets per size {counts:?}, {exceptions} degenerate"),
    )
}

fn brace_solutions(braces: &[FiniteBrace]) -> Outcome {
    let failures = braces
        .iter()
        .filter(|b| {
            let r = b.solution().unwrap();
            !(r.check_involutive()
                && r.nondegeneracy().both()
                && r.check_braid()
                && oracle::braid_relation_holds(b.n(), |x, y| r.apply(x, y)))
        })
        .count();
    outcome(
        failures <= ALLOWED_FAILURES,
        format!("{} labeled left braces, {failures} failures", braces.len()),
    )
}

fn linear_round_trip(braces: &[FiniteBrace]) -> Outcome {
    let failures = braces
        .iter()
        .filter(|b| {
            let right = b.opposite();
            let lcs = brace_to_lcs(&right).unwrap();
            !(lcs.exponent_law_violation().is_none() && lcs_to_brace(&lcs) == right)
        })
        .count();
    outcome(
        failures <= ALLOWED_FAILURES,
        format!("{} right braces, {failures} failures", braces.len()),
    )
}

fn ring_pipeline() -> Outcome {
    let r = FiniteRing::upper_triangular_f2();
    let n = r.n();
    let triple_zero = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| r.mul(r.mul(a, b), c) == 0)));
    let pair_nonzero = (0..n).any(|a| (0..n).any(|b| r.mul(a, b) != 0));
    let brace = r.to_brace();
    let braid_ok = brace.as_ref().is_ok_and(|b| {
        let s = b.solution().unwrap();
        s.check_braid() && s.check_involutive() && s.nondegeneracy().both()
    });
    let two_sided = brace.as_ref().is_ok_and(FiniteBrace::is_two_sided);
    let pass = r.nilpotency_index() == Some(3)
        && triple_zero
        && pair_nonzero
        && r.is_jacobson_radical()
        && two_sided
        && braid_ok;
    outcome(
        pass,
        format!(
            "index {:?}, triple products zero {triple_zero}, some pair product nonzero {pair_nonzero}, radical {}, two-sided {two_sided}, braid map {braid_ok}",
            r.nilpotency_index(),
            r.is_jacobson_radical()
        ),
    )
}

fn socle_retraction(braces: &[FiniteBrace]) -> Outcome {
    let failures = braces
        .iter()
        .filter(|b| {
            let right = b.opposite();
            let (_, projection) = right.quotient(&right.socle()).unwrap();
            let retraction = brace_to_lcs(&right).unwrap().cycle_set().retraction().unwrap();
            projection != retraction.projection
        })
        .count();
    outcome(
        failures <= ALLOWED_FAILURES,
        format!("{} right braces, {failures} mismatches", braces.len()),
    )
}

fn small_cycle_sets() -> Vec<CycleSet> {
    (1..=MAX_SGP_N)
        .flat_map(|n| enumerate_cycle_sets(n, CycleSetFilter::All).unwrap())
        .collect()
}

fn structure_group(sets: &[CycleSet]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SGP_SEED);
    let (mut relation_failures, mut sample_failures, mut shuffle_failures) = (0, 0, 0);
    for x in sets {
        let n = x.n();
        let ctx = ExtensionContext::new(x.clone()).unwrap();
        if !ctx.check_generator_relations::<BigInt>() {
            relation_failures += 1;
        }
        if ctx.check_right_brace_sampled::<BigInt>(SGP_BOUND, SGP_TRIALS, SGP_SEED).is_err() {
            sample_failures += 1;
        }
        for _ in 0..SHUFFLE_VECTORS {
            let coords: Vec<i64> = (0..n).map(|_| rng.gen_range(-SGP_BOUND..=SGP_BOUND)).collect();
            let t = ZVector::from_i64s(&coords);
            let expected = ctx.sigma_of_vector(&t).unwrap();
            for _ in 0..SHUFFLES {
                if ctx.sigma_of_vector_shuffled(&t, &mut rng).unwrap() != expected {
                    shuffle_failures += 1;
                }
            }
        }
    }
    let total = relation_failures + sample_failures + shuffle_failures;
    outcome(
        total <= ALLOWED_FAILURES,
        format!(
            "{} cycle sets; relation failures {relation_failures}, sampled-law failures {sample_failures} ({SGP_TRIALS} trials, seed {SGP_SEED}, bound {SGP_BOUND}), shuffle failures {shuffle_failures} ({SHUFFLES} shuffles x {SHUFFLE_VECTORS} vectors)",
            sets.len()
        ),
    )
}

fn retracted_extension(sets: &[CycleSet]) -> Outcome {
    let mut failures = 0;
    let mut checked = 0;
    for x in sets.iter().filter(|x| x.is_nondegenerate()) {
        checked += 1;
        let gens: Vec<Vec<usize>> = x.sigmas().into_iter().map(|s| s.into_image()).collect();
        let order = oracle::group_order(x.n(), &gens);
        let ok = ExtensionContext::new(x.clone())
            .and_then(|c| c.retracted_extension::<BigInt>())
            .is_ok_and(|a| {
                a.brace.n() == order
                    && oracle::is_right_brace(&rows(a.brace.add_table()), &rows(a.brace.circle_table()))
            });
        if !ok {
            failures += 1;
        }
    }
    outcome(
        failures <= ALLOWED_FAILURES,
        format!("{checked} non-degenerate cycle sets, {failures} failures"),
    )
}

fn construction() -> Outcome {
    let params = ConsParams::new(2, 2, 2, vec![2, 1, 0], vec![vec![0, 1]]).unwrap();
    let psi = (params.psi(1, 0).unwrap(), params.psi(1, 1).unwrap());
    let paper = params.validate(ValidationMode::Paper);
    let direct = params.validate(ValidationMode::Direct);
    let paper_violation =
        paper == Err(ConsError::PaperConditionViolation { x: 0, y: 1, lhs: 6, rhs: 3 });
    let paper_results = enumerate(2, 2, 2, ValidationMode::Paper).unwrap().len();
    let c4 = CycleSet::from_rows(&[[1, 2, 3, 0], [3, 0, 1, 2], [1, 2, 3, 0], [3, 0, 1, 2]]).unwrap();
    let direct_has_c4 = enumerate(2, 2, 2, ValidationMode::Direct)
        .unwrap()
        .iter()
        .any(|c| c.cycle_set == c4);

    let (mut yielded, mut bad) = (0, 0);
    for p in [2u64, 3, 5, 7, 11, 13] {
        for k in 1.. {
            if p.pow(k) > MAX_CONSTRUCTION_SIZE {
                break;
            }
            for level in 2..=MAX_CONSTRUCTION_LEVEL {
                for item in enumerate(p, k, level, ValidationMode::Direct).unwrap() {
                    yielded += 1;
                    let x = &item.cycle_set;
                    let ok = CycleSet::validate(x.table().clone()).is_ok()
                        && verify_build(x, &item.params).all_ok()
                        && analyze_cyclic(x).is_ok_and(|a| a.n_star == a.retraction_size && a.divides);
                    if !ok {
                        bad += 1;
                    }
                }
            }
        }
    }
    let pass = psi == (1, 3)
        && paper_violation
        && paper_results == 0
        && direct.is_ok()
        && direct_has_c4
        && bad <= ALLOWED_FAILURES;
    outcome(
        pass,
        format!(
            "psi1 = {psi:?}; paper mode at (2,2,2): {paper_results} results, f1 = (0,1) rejected with {}; direct mode accepts f1 = (0,1) and yields C4: {direct_has_c4} (mode discrepancy reproduced); direct search p^k <= {MAX_CONSTRUCTION_SIZE}, level <= {MAX_CONSTRUCTION_LEVEL}: {yielded} tables, {bad} failing verification",
            paper.as_ref().err().map(ToString::to_string).unwrap_or_else(|| "no violation".into())
        ),
    )
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn cli_determinism() -> Outcome {
    let invocations: Vec<Vec<String>> = [
        vec!["check", "swap2.bop"],
        vec!["check", "c4.bop"],
        vec!["check", "invalid.bop"],
        vec!["check", "bad_entry.bop"],
        vec!["check", "example.cons"],
        vec!["check", "ut3.ring"],
        vec!["check", "z4.brace"],
        vec!["check", "trivial2.brace"],
        vec!["convert", "--to", "qybe", "trivial2.bop"],
        vec!["convert", "--to", "sol", "c4.bop"],
        vec!["convert", "--to", "qsol", "z4.brace"],
        vec!["convert", "--to", "brace", "ut3.ring"],
        vec!["retract", "c4.bop"],
        vec!["dual", "c4.bop"],
        vec!["sgp", "c4.bop"],
        vec!["sgp", "swap2.bop"],
        vec!["construct", "example.cons"],
        vec!["construct", "--mode", "paper", "example.cons"],
    ]
    .into_iter()
    .map(|args| {
        args.iter()
            .map(|a| if a.contains('.') { fixture(a) } else { a.to_string() })
            .collect()
    })
    .chain([
        ["enumerate", "construct", "-p", "2", "-k", "2", "-n", "2", "--mode", "paper"]
            .map(String::from)
            .to_vec(),
        ["enumerate", "construct", "-p", "2", "-k", "4", "-n", "3"].map(String::from).to_vec(),
        ["--threads", "4", "enumerate", "cycle-sets", "-n", "4"].map(String::from).to_vec(),
    ])
    .collect();
    let run = |args: &[String]| {
        let out = Command::new(env!("CARGO_BIN_EXE_ybe")).args(args).output().unwrap();
        (out.stdout, out.stderr, out.status.code())
    };
    let differing: Vec<String> = invocations
        .iter()
        .filter(|args| run(args) != run(args))
        .map(|args| args.join(" "))
        .collect();
    outcome(
        differing.len() <= ALLOWED_FAILURES,
        format!("{} invocations run twice, {} differ {:?}", invocations.len(), differing.len(), differing),
    )
}

fn main() {
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    let mut report = |i: usize, name: &'static str, o: Outcome| {
        println!("criterion {i:>2} [{name}]: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        results.push((i, name, o));
    };

    report(1, "cycle set / solution bijection", bijection());
    let (shortcut_outcome, shortcut_note) = shortcut();
    report(2, "involutive shortcut", shortcut_outcome);
    println!("             [involutive shortcut]: INFO ({shortcut_note})");
    report(3, "finite cycle sets are non-degenerate", nondegeneracy());
    let braces = all_left_braces();
    report(4, "brace solutions", brace_solutions(&braces));
    report(5, "linear cycle sets and right braces", linear_round_trip(&braces));
    report(6, "radical ring pipeline", ring_pipeline());
    report(7, "socle quotient and retraction", socle_retraction(&braces));
    let sets = small_cycle_sets();
    report(8, "structure group", structure_group(&sets));
    report(9, "retracted extension", retracted_extension(&sets));
    report(10, "prime-power construction", construction());
    report(11, "CLI determinism", cli_determinism());

    let failed: Vec<usize> = results.iter().filter(|(_, _, o)| !o.pass).map(|(i, _, _)| *i).collect();
    println!(
        "acceptance: {} of {} criteria pass{}",
        results.len() - failed.len(),
        results.len(),
        if failed.is_empty() {
            String::new()
        } else {
            format!("; failing: {failed:?}")
        }
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
