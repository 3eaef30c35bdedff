//! Cached Bernoulli numbers and Stirling numbers of the second kind.

use std::sync::{Mutex, OnceLock};

use rug::{Integer, Rational};

use crate::number::rational::binomial;

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static C: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(vec![Rational::from(1), Rational::from((-1, 2))]))
}

/// `B_k` with the convention `B_1 = -1/2`.
pub fn bernoulli(k: u32) -> Rational {
    let k = k as usize;
    if k > 1 && k % 2 == 1 {
        return Rational::new();
    }
    let mut cache = bernoulli_cache().lock().unwrap();
    while cache.len() <= k {
        let m = cache.len();
        if m % 2 == 1 {
            cache.push(Rational::new());
            continue;
        }
        // sum_{j<m} C(m+1, j) B_j = -(m+1) B_m
        let mut acc = Rational::new();
        for (j, bj) in cache.iter().enumerate() {
            if *bj != 0 {
                acc += Rational::from(bj * binomial(m as u32 + 1, j as u32));
            }
        }
        cache.push(-acc / (m as u32 + 1));
    }
    cache[k].clone()
}

fn stirling_cache() -> &'static Mutex<Vec<Vec<Integer>>> {
    static C: OnceLock<Mutex<Vec<Vec<Integer>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(vec![vec![Integer::from(1)]]))
}

/// `S(n, k)`: partitions of an `n`-set into `k` non-empty blocks.
pub fn stirling2(n: u32, k: u32) -> Integer {
    if k > n {
        return Integer::new();
    }
    let mut rows = stirling_cache().lock().unwrap();
    while rows.len() <= n as usize {
        let prev = rows.last().unwrap();
        let m = prev.len();
        let mut row = vec![Integer::new(); m + 1];
        for j in 1..=m {
            let mut v = Integer::from(&prev[j - 1]);
            if j < m {
                v += Integer::from(&prev[j] * j as u32);
            }
            row[j] = v;
        }
        rows.push(row);
    }
    rows[n as usize][k as usize].clone()
}
