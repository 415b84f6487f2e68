//! Subset enumeration, ranking, exact binomials and the range-partitioned
//! scan shared by the certifier and the subset-condition checks.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::One;

/// C(n, k), or `None` on u64 overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Exact C(n, k) by the multiplicative formula.
pub fn binomial_big(n: &BigUint, k: u64) -> BigUint {
    let kb = BigUint::from(k);
    if &kb > n {
        return BigUint::default();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - BigUint::from(i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// k-subsets of 0..n in lexicographic order.
#[derive(Debug, Clone)]
pub struct LexSubsets {
    n: usize,
    idx: Vec<usize>,
    started: bool,
    done: bool,
}

impl LexSubsets {
    pub fn new(n: usize, k: usize) -> Self {
        LexSubsets { n, idx: (0..k).collect(), started: false, done: k > n }
    }

    /// Starts at the subset with lexicographic rank `rank`.
    pub fn starting_at(n: usize, k: usize, rank: u64) -> Self {
        let idx = unrank_lex(n, k, rank);
        let done = idx.is_none();
        LexSubsets { n, idx: idx.unwrap_or_default(), started: false, done }
    }

    pub fn current(&self) -> &[usize] {
        &self.idx
    }

    /// Moves to the next subset and returns the lowest position that changed
    /// (0 for the first subset). `None` once exhausted.
    pub fn advance(&mut self) -> Option<usize> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(0);
        }
        let k = self.idx.len();
        let n = self.n;
        let pos = (0..k).rev().find(|&i| self.idx[i] < n - k + i);
        match pos {
            Some(i) => {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                Some(i)
            }
            None => {
                self.done = true;
                None
            }
        }
    }
}

pub fn unrank_lex(n: usize, k: usize, mut rank: u64) -> Option<Vec<usize>> {
    if k > n || rank >= binomial(n as u64, k as u64)? {
        return None;
    }
    let mut out = Vec::with_capacity(k);
    let mut c = 0usize;
    for i in 0..k {
        loop {
            let count = binomial((n - c - 1) as u64, (k - i - 1) as u64)?;
            if rank < count {
                break;
            }
            rank -= count;
            c += 1;
        }
        out.push(c);
        c += 1;
    }
    Some(out)
}

pub fn rank_lex(n: usize, subset: &[usize]) -> u64 {
    let k = subset.len();
    let mut rank = 0u64;
    let mut prev = 0usize;
    for (i, &s) in subset.iter().enumerate() {
        for c in prev..s {
            rank += binomial((n - c - 1) as u64, (k - i - 1) as u64).unwrap_or(0);
        }
        prev = s + 1;
    }
    rank
}

/// Colex rank: sum of C(idx[i], i + 1).
pub fn rank_colex(subset: &[usize]) -> u64 {
    subset
        .iter()
        .enumerate()
        .map(|(i, &c)| binomial(c as u64, i as u64 + 1).unwrap_or(u64::MAX))
        .sum()
}

pub fn unrank_colex(k: usize, mut rank: u64) -> Vec<usize> {
    let mut out = vec![0usize; k];
    for i in (0..k).rev() {
        let mut c = i;
        while binomial(c as u64 + 1, i as u64 + 1).map_or(false, |b| b <= rank) {
            c += 1;
        }
        rank -= binomial(c as u64, i as u64 + 1).unwrap();
        out[i] = c;
    }
    out
}

/// Advances a k-subset of 0..n to its colex successor. Returns false on wrap.
pub fn next_colex(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in 0..k {
        let limit = if i + 1 < k { idx[i + 1] } else { n };
        if idx[i] + 1 < limit {
            idx[i] += 1;
            for (j, slot) in idx.iter_mut().enumerate().take(i) {
                *slot = j;
            }
            return true;
        }
    }
    false
}

/// Splits ranks 0..total into contiguous ranges, runs `scan` on each, and
/// returns the smallest rank any scan reported. Scans receive the best rank
/// found so far and may stop once their position passes it.
pub(crate) fn first_hit<F>(total: u64, jobs: usize, scan: F) -> Option<u64>
where
    F: Fn(u64, u64, &AtomicU64) -> Option<u64> + Sync,
{
    let best = AtomicU64::new(u64::MAX);
    let jobs = jobs.max(1) as u64;
    if jobs == 1 || total < 1024 {
        return scan(0, total, &best);
    }
    let chunk = total.div_ceil(jobs);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                let start = (w * chunk).min(total);
                let end = ((w + 1) * chunk).min(total);
                let scan = &scan;
                let best = &best;
                s.spawn(move || {
                    let hit = scan(start, end, best);
                    if let Some(h) = hit {
                        best.fetch_min(h, Ordering::SeqCst);
                    }
                    hit
                })
            })
            .collect();
        handles.into_iter().filter_map(|h| h.join().expect("worker panicked")).min()
    })
}
