//! Brute-force reference computations, kept free of any dependency on
//! `ybe-core` so they can serve as independent oracles in its tests.
//!
//! Tables are plain `Vec<Vec<usize>>` with `t[x][y]` the product of `x` and `y`.

use std::collections::{BTreeSet, HashSet, VecDeque};

pub type Table = Vec<Vec<usize>>;

/// Abelian groups of order at most 8 up to isomorphism, as cyclic factors.
pub const SMALL_ABELIAN_GROUPS: &[&[usize]] = &[
    &[1],
    &[2],
    &[3],
    &[4],
    &[2, 2],
    &[5],
    &[6],
    &[7],
    &[8],
    &[2, 4],
    &[2, 2, 2],
];

/// Isomorphism classes of left braces of order 1..=8.
pub const BRACE_CLASS_COUNTS: [usize; 8] = [1, 1, 1, 4, 1, 2, 1, 27];

/// Addition on `ℤ/m₁ × ⋯`, element `i` having mixed-radix digits
/// `i mod m₁, (i / m₁) mod m₂, …`.
pub fn abelian_group(moduli: &[usize]) -> Table {
    let n: usize = moduli.iter().product();
    let digits = |mut a: usize| {
        moduli
            .iter()
            .map(|&m| {
                let d = a % m;
                a /= m;
                d
            })
            .collect::<Vec<_>>()
    };
    let pack = |d: &[usize]| {
        d.iter()
            .zip(moduli)
            .rev()
            .fold(0, |acc, (&digit, &m)| acc * m + digit)
    };
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let s: Vec<usize> = digits(a)
                        .iter()
                        .zip(digits(b))
                        .zip(moduli)
                        .map(|((x, y), m)| (x + y) % m)
                        .collect();
                    pack(&s)
                })
                .collect()
        })
        .collect()
}

/// Automorphisms of an additive group with identity 0, as image vectors.
pub fn automorphisms(add: &Table) -> Vec<Vec<usize>> {
    let n = add.len();
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    image[0] = 0;
    used[0] = true;
    fn rec(
        add: &Table,
        i: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = add.len();
        if i == n {
            let hom = (0..n).all(|a| (0..n).all(|b| image[add[a][b]] == add[image[a]][image[b]]));
            if hom {
                out.push(image.clone());
            }
            return;
        }
        for v in 1..n {
            if !used[v] {
                image[i] = v;
                used[v] = true;
                // Prune on sums of already-mapped elements.
                let ok = (1..=i).all(|a| {
                    (1..=i).all(|b| {
                        let s = add[a][b];
                        s > i || image[s] == add[image[a]][image[b]]
                    })
                });
                if ok {
                    rec(add, i + 1, image, used, out);
                }
                used[v] = false;
                image[i] = usize::MAX;
            }
        }
    }
    if n == 1 {
        return vec![vec![0]];
    }
    rec(add, 1, &mut image, &mut used, &mut out);
    out
}

fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

/// Every left brace on `add`, as circle tables `a∘b = a + λ_a(b)`.
///
/// The maps `λ_a` are chosen from `Aut(A)` with `λ_0 = id`, subject to
/// `λ_{a + λ_a(b)} = λ_a λ_b`, which is exactly the brace condition.
pub fn left_braces(add: &Table) -> Vec<Table> {
    let n = add.len();
    let auts = automorphisms(add);
    let mut lambdas: Vec<Option<Vec<usize>>> = vec![None; n];
    lambdas[0] = Some((0..n).collect());
    let mut out = Vec::new();
    search(add, &auts, &mut lambdas, &mut out);
    out
}

/// Closes the partial assignment under `λ_{a∘b} = λ_aλ_b`. Returns `false`
/// on a contradiction.
fn propagate(add: &Table, lambdas: &mut [Option<Vec<usize>>]) -> bool {
    let n = add.len();
    let mut changed = true;
    while changed {
        changed = false;
        for a in 0..n {
            let Some(la) = lambdas[a].clone() else { continue };
            for b in 0..n {
                let Some(lb) = lambdas[b].as_ref() else { continue };
                let c = add[a][la[b]];
                let prod = compose(&la, lb);
                match &lambdas[c] {
                    Some(lc) if *lc != prod => return false,
                    Some(_) => {}
                    None => {
                        lambdas[c] = Some(prod);
                        changed = true;
                    }
                }
            }
        }
    }
    true
}

fn search(add: &Table, auts: &[Vec<usize>], lambdas: &mut Vec<Option<Vec<usize>>>, out: &mut Vec<Table>) {
    let n = add.len();
    match lambdas.iter().position(Option::is_none) {
        None => {
            let circle: Table = (0..n)
                .map(|a| {
                    let la = lambdas[a].as_ref().unwrap();
                    (0..n).map(|b| add[a][la[b]]).collect()
                })
                .collect();
            out.push(circle);
        }
        Some(a) => {
            for g in auts {
                let mut next = lambdas.clone();
                next[a] = Some(g.clone());
                if propagate(add, &mut next) {
                    search(add, auts, &mut next, out);
                }
            }
        }
    }
}

/// One representative per isomorphism class: the least relabeling of each
/// circle table under `Aut(A)`.
pub fn left_brace_classes(add: &Table) -> Vec<Table> {
    let auts = automorphisms(add);
    let mut seen = BTreeSet::new();
    for circle in left_braces(add) {
        seen.insert(canonical(&circle, &auts));
    }
    seen.into_iter().collect()
}

fn canonical(circle: &Table, auts: &[Vec<usize>]) -> Table {
    let n = circle.len();
    auts.iter()
        .map(|g| {
            let mut inv = vec![0; n];
            for (x, &gx) in g.iter().enumerate() {
                inv[gx] = x;
            }
            (0..n)
                .map(|a| (0..n).map(|b| g[circle[inv[a]][inv[b]]]).collect())
                .collect::<Table>()
        })
        .min()
        .expect("identity automorphism")
}

/// Transposed circle table: the opposite brace, which is a right brace.
pub fn opposite(circle: &Table) -> Table {
    let n = circle.len();
    (0..n).map(|a| (0..n).map(|b| circle[b][a]).collect()).collect()
}

/// `(A, +, ∘)` is a group pair satisfying `a∘(b+c) + a = a∘b + a∘c`.
pub fn is_left_brace(add: &Table, circle: &Table) -> bool {
    let n = add.len();
    is_group(add)
        && is_group(circle)
        && (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| add[circle[a][add[b][c]]][a] == add[circle[a][b]][circle[a][c]])
            })
        })
}

/// `(a+b)∘c + c = a∘c + b∘c`.
pub fn is_right_brace(add: &Table, circle: &Table) -> bool {
    let n = add.len();
    is_group(add)
        && is_group(circle)
        && (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| add[circle[add[a][b]][c]][c] == add[circle[a][c]][circle[b][c]])
            })
        })
}

pub fn is_group(t: &Table) -> bool {
    let n = t.len();
    let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])));
    let Some(e) = (0..n).find(|&e| (0..n).all(|a| t[e][a] == a && t[a][e] == a)) else {
        return false;
    };
    assoc && (0..n).all(|a| (0..n).any(|b| t[a][b] == e))
}

/// Order of the permutation group generated by `gens` on `0..n`.
pub fn group_order(n: usize, gens: &[Vec<usize>]) -> usize {
    let id: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = compose(g, &p);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

/// The cycle-set law `(x·y)·(x·z) = (y·x)·(y·z)` with bijective rows.
pub fn is_cycle_set(t: &Table) -> bool {
    let n = t.len();
    let rows_ok = t.iter().all(|row| {
        let mut s = row.clone();
        s.sort_unstable();
        s == (0..n).collect::<Vec<_>>()
    });
    rows_ok
        && (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| t[t[x][y]][t[x][z]] == t[t[y][x]][t[y][z]]))
        })
}

/// `r₁r₂r₁ = r₂r₁r₂` on `X³`, composing the maps literally.
pub fn braid_relation_holds(n: usize, r: impl Fn(usize, usize) -> (usize, usize)) -> bool {
    let r1 = |(a, b, c): (usize, usize, usize)| {
        let (u, v) = r(a, b);
        (u, v, c)
    };
    let r2 = |(a, b, c): (usize, usize, usize)| {
        let (u, v) = r(b, c);
        (a, u, v)
    };
    (0..n).all(|a| {
        (0..n).all(|b| (0..n).all(|c| r1(r2(r1((a, b, c)))) == r2(r1(r2((a, b, c))))))
    })
}

/// `R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂` on `X³`, where `Rᵢⱼ` acts on factors `i, j`.
pub fn qybe_holds(n: usize, r: impl Fn(usize, usize) -> (usize, usize)) -> bool {
    let r12 = |(a, b, c): (usize, usize, usize)| {
        let (u, v) = r(a, b);
        (u, v, c)
    };
    let r13 = |(a, b, c): (usize, usize, usize)| {
        let (u, v) = r(a, c);
        (u, b, v)
    };
    let r23 = |(a, b, c): (usize, usize, usize)| {
        let (u, v) = r(b, c);
        (a, u, v)
    };
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| r12(r13(r23((a, b, c)))) == r23(r13(r12((a, b, c)))))
        })
    })
}
