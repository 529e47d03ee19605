#![allow(dead_code)]

use fanforge::fan_search::{validate_fan_matrix, FanMatrix};
use fanforge::linalg::IntMatrix;
use fanforge::report::Input;
use fanforge::secondary::family_matrices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fan_matrix(rows: &[Vec<i64>]) -> FanMatrix {
    validate_fan_matrix(&IntMatrix::from_i64_rows(rows)).unwrap()
}

pub fn input(rows: &[Vec<i64>]) -> Input {
    Input::from_v(fan_matrix(rows)).unwrap()
}

pub fn example71() -> Input {
    input(&[
        vec![1, 1, 0, 2, -1, 0, 1],
        vec![0, 2, 0, 2, -1, 0, 1],
        vec![0, 0, 1, -1, 0, 0, 0],
        vec![0, 0, 0, 0, 0, 1, -1],
    ])
}

pub fn q71() -> Vec<Vec<i64>> {
    vec![
        vec![1, 1, 0, 0, 2, 0, 0],
        vec![0, 0, 1, 1, 2, 0, 0],
        vec![0, 0, 0, 0, 1, 1, 1],
    ]
}

pub fn bh() -> Input {
    input(&[
        vec![1, 0, 0, 0, -1, 1],
        vec![0, 1, 0, -1, -1, 2],
        vec![0, 0, 1, -1, 0, 1],
    ])
}

pub fn q_bh() -> Vec<Vec<i64>> {
    vec![
        vec![1, 1, 0, 0, 1, 0],
        vec![0, 1, 1, 1, 0, 0],
        vec![0, 0, 0, 1, 1, 1],
    ]
}

pub fn family(p: u64, q: u64) -> Input {
    let (q, v) = family_matrices(p, q).unwrap();
    Input { v, q }
}

pub fn p2() -> Input {
    input(&[vec![1, 0, -1], vec![0, 1, -1]])
}

/// Exponent vector with the given 1-based `(variable, power)` pairs.
pub fn mono(pairs: &[(usize, i64)], m: usize) -> Vec<i64> {
    let mut e = vec![0; m];
    for &(i, k) in pairs {
        e[i - 1] = k;
    }
    e
}

pub fn random_f_matrix(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> FanMatrix {
    loop {
        let n = rng.gen_range(2..=max_n);
        let m = rng.gen_range(n + 1..=max_m);
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..m).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        if let Ok(v) = validate_fan_matrix(&IntMatrix::from_i64_rows(&rows)) {
            return v;
        }
    }
}

/// Distinct random F-matrices with `n <= 3`, `m <= 6`.
pub fn random_set(count: usize, seed: u64) -> Vec<FanMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<FanMatrix> = Vec::new();
    while out.len() < count {
        let v = random_f_matrix(&mut rng, 3, 6);
        if !out.iter().any(|w| w.matrix() == v.matrix()) {
            out.push(v);
        }
    }
    out
}
