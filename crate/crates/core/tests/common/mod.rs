#![allow(dead_code)]

use hqmm_core::linalg::Mat;
use hqmm_core::Hmm64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random valid model with `n ≤ max_n` states and `m ≤ max_m` symbols.
///
/// About half the transitions are zero and some rows are copies of earlier
/// rows, so duplicate quantum states (zero-one Gram matrices) show up too.
/// Draws are repeated until the chain is irreducible.
pub fn random_model(seed: u64, max_n: usize, max_m: usize) -> Hmm64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.random_range(1..=max_n);
        let m = rng.random_range(1..=max_m);
        let rows = random_rows(&mut rng, n, m);
        if strongly_connected(&rows, n, m) {
            let transitions = (0..m)
                .map(|r| Mat::from_fn(n, n, |i, j| rows[i][j * m + r]))
                .collect();
            return Hmm64::from_matrices(format!("random-{seed}"), transitions, None)
                .expect("irreducible model has a unique stationary law");
        }
    }
}

fn random_rows(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 && rng.random::<f64>() < 0.2 {
            let k = rng.random_range(0..i);
            rows.push(rows[k].clone());
            continue;
        }
        let mut w: Vec<f64> = (0..n * m)
            .map(|_| if rng.random::<f64>() < 0.5 { 0.0 } else { rng.random::<f64>() + 0.01 })
            .collect();
        let cycle = ((i + 1) % n) * m + rng.random_range(0..m);
        if w[cycle] == 0.0 {
            w[cycle] = rng.random::<f64>() + 0.01;
        }
        let total: f64 = w.iter().sum();
        rows.push(w.into_iter().map(|x| x / total).collect());
    }
    rows
}

fn strongly_connected(rows: &[Vec<f64>], n: usize, m: usize) -> bool {
    let edge = |i: usize, j: usize| (0..m).any(|r| rows[i][j * m + r] > 0.0);
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for (j, visited) in seen.iter_mut().enumerate() {
                let e = if forward { edge(i, j) } else { edge(j, i) };
                if e && !*visited {
                    *visited = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

pub fn binary_entropy(p: f64) -> f64 {
    let eta = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
    eta(p) + eta(1.0 - p)
}
