use ybe_core::cycle_set::{enumerate_cycle_sets, for_each_row_permutation_table, CycleSetFilter};
use ybe_core::{CycleSet, QybeMap};
use ybe_oracles as oracle;

fn rows(x: &CycleSet) -> oracle::Table {
    x.table().rows().map(<[usize]>::to_vec).collect()
}

#[test]
fn validation_agrees_with_oracle() {
    for n in 1..=3 {
        let mut count = 0;
        for_each_row_permutation_table(n, |t| {
            let rows: oracle::Table = t.rows().map(<[usize]>::to_vec).collect();
            let ours = CycleSet::validate(t.clone()).is_ok();
            assert_eq!(ours, oracle::is_cycle_set(&rows), "{rows:?}");
            count += ours as usize;
        });
        assert_eq!(count, enumerate_cycle_sets(n, CycleSetFilter::All).unwrap().len());
    }
}

#[test]
fn cycle_set_solutions_satisfy_literal_qybe() {
    for n in 1..=4 {
        for x in enumerate_cycle_sets(n, CycleSetFilter::All).unwrap() {
            let q = QybeMap::from_cycle_set(&x);
            assert!(oracle::qybe_holds(n, |a, b| q.apply(a, b)));
            let r = q.braid_solution();
            assert!(oracle::braid_relation_holds(n, |a, b| r.apply(a, b)));
            assert_eq!(q.to_cycle_set().unwrap(), x);
        }
    }
}

#[test]
fn small_cycle_sets_are_nondegenerate() {
    for n in 1..=4 {
        for x in enumerate_cycle_sets(n, CycleSetFilter::All).unwrap() {
            let mut diag: Vec<usize> = rows(&x).iter().enumerate().map(|(i, r)| r[i]).collect();
            diag.sort_unstable();
            assert_eq!(diag, (0..n).collect::<Vec<_>>());
        }
    }
}
