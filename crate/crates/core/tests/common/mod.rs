//! Brute-force oracles and the seeded fuzz corpus shared by the integration
//! tests. Nothing here calls into the order, diagram or structure code it
//! is used to check.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surmise::synth::{random_poset, sample_models, SynthSpec};
use surmise::JudgmentTable;

/// Flexibility levels exercised by the fuzz suites, in basis points.
pub const ALPHAS: [u32; 4] = [0, 1000, 2500, 4999];

pub fn columns(table: &JudgmentTable) -> Vec<Vec<bool>> {
    (0..table.target_count())
        .map(|j| table.column(j).unwrap())
        .collect()
}

/// Models correct on each target, as plain sets.
pub fn supports(table: &JudgmentTable) -> Vec<HashSet<usize>> {
    columns(table)
        .iter()
        .map(|col| {
            col.iter()
                .enumerate()
                .filter(|(_, &c)| c)
                .map(|(i, _)| i)
                .collect()
        })
        .collect()
}

/// `p -> q` at zero flexibility: every model correct on `q` is correct on `p`.
pub fn containment_order(table: &JudgmentTable) -> Vec<Vec<bool>> {
    let s = supports(table);
    (0..s.len())
        .map(|p| (0..s.len()).map(|q| s[q].is_subset(&s[p])).collect())
        .collect()
}

/// The surmise relation computed from explicit state sets: `p` lies in the
/// intersection of all states that contain `q` (the whole ground set when no
/// state contains `q`).
pub fn intersection_surmise(ground: usize, states: &[BTreeSet<usize>]) -> Vec<Vec<bool>> {
    let all: BTreeSet<usize> = (0..ground).collect();
    (0..ground)
        .map(|p| {
            (0..ground)
                .map(|q| {
                    let meet = states
                        .iter()
                        .filter(|s| s.contains(&q))
                        .fold(all.clone(), |acc, s| acc.intersection(s).copied().collect());
                    meet.contains(&p)
                })
                .collect()
        })
        .collect()
}

/// Distinct table rows as state sets, plus the empty and full state.
pub fn table_states(table: &JudgmentTable) -> Vec<BTreeSet<usize>> {
    let mut states: BTreeSet<BTreeSet<usize>> = (0..table.model_count())
        .map(|i| {
            table
                .row(i)
                .unwrap()
                .iter()
                .enumerate()
                .filter(|(_, &c)| c)
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    states.insert(BTreeSet::new());
    states.insert((0..table.target_count()).collect());
    states.into_iter().collect()
}

/// Targets grouped by identical columns, as sorted index sets.
pub fn identical_column_blocks(table: &JudgmentTable) -> Vec<Vec<usize>> {
    let cols = columns(table);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for j in 0..cols.len() {
        match blocks.iter_mut().find(|b| cols[b[0]] == cols[j]) {
            Some(b) => b.push(j),
            None => blocks.push(vec![j]),
        }
    }
    blocks.sort();
    blocks
}

/// Reachability by depth-first search from each node.
pub fn reachability(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
    }
    (0..n)
        .map(|start| {
            let mut seen = vec![false; n];
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            seen
        })
        .collect()
}

/// Covering pairs by the "drop every implied edge" method: an edge `a -> c`
/// of a strict order survives only if no path of length two or more joins
/// the endpoints.
pub fn covering_pairs(strict: &[Vec<bool>]) -> BTreeSet<(usize, usize)> {
    let n = strict.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| strict[a][b])
        .collect();
    edges
        .iter()
        .copied()
        .filter(|&(a, c)| {
            let others: Vec<(usize, usize)> =
                edges.iter().copied().filter(|&e| e != (a, c)).collect();
            !reachability(n, &others)[a][c]
        })
        .collect()
}

/// A fixed corpus of small tables: half uniform random cells, half sampled
/// from random planted orders with a little noise.
pub fn fuzz_corpus(count: usize) -> Vec<JudgmentTable> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0F7A_B1E5);
    (0..count)
        .map(|k| {
            let targets = rng.gen_range(1..=8);
            let models = rng.gen_range(1..=12);
            if k % 2 == 0 {
                let density: f64 = rng.gen_range(0.1..0.9);
                let bits: Vec<Vec<u8>> = (0..models)
                    .map(|_| {
                        (0..targets)
                            .map(|_| u8::from(rng.gen::<f64>() < density))
                            .collect()
                    })
                    .collect();
                let names: Vec<String> = (0..targets).map(|j| format!("t{j}")).collect();
                let model_names: Vec<String> = (1..=models).map(|i| format!("M{i}")).collect();
                JudgmentTable::build(&names, &model_names, &bits).unwrap()
            } else {
                let poset = random_poset(targets, rng.gen_range(0.0..0.8), rng.gen()).unwrap();
                let noise = [0.0, 0.05, 0.15][rng.gen_range(0..3)];
                sample_models(&SynthSpec::new(poset, models, noise, rng.gen()).unwrap()).unwrap()
            }
        })
        .collect()
}

/// Every labeled partial order on `n` elements, as `order[a][b]` = `a <= b`.
/// Each unordered pair is below, above or incomparable; non-transitive
/// assignments are discarded.
pub fn all_posets(n: usize) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let total = 3usize.pow(pairs.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        let mut c = code;
        for &(a, b) in &pairs {
            match c % 3 {
                1 => rel[a][b] = true,
                2 => rel[b][a] = true,
                _ => {}
            }
            c /= 3;
        }
        let transitive =
            (0..n).all(|a| (0..n).all(|b| !rel[a][b] || (0..n).all(|c| !rel[b][c] || rel[a][c])));
        if transitive {
            out.push(rel);
        }
    }
    out
}
