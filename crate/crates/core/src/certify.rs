//! MDS and non-RS certification.
//!
//! A code is certified non-RS when it is MDS, k <= n/2 and its Schur square
//! has dimension at least 2k: a GRS code of that shape always has Schur
//! square dimension exactly 2k - 1. The converse does not hold, so a square
//! of dimension 2k - 1 only yields "RS-consistent".

use std::sync::atomic::Ordering;

use serde::{Deserialize, Serialize};

use crate::code::{monomial_matrix, sumset, EvalCode};
use crate::combin::{binomial, first_hit, unrank_lex, LexSubsets};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::limits::Limits;
use crate::matrix::MatrixFq;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "non_rs")]
    NonRsCertified,
    #[serde(rename = "rs_consistent")]
    RsConsistent,
    #[serde(rename = "indeterminate")]
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "mds")]
    pub is_mds: bool,
    /// Lexicographically first dependent k-column subset.
    #[serde(rename = "witness")]
    pub failing_columns: Option<Vec<usize>>,
    pub min_distance: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_distribution: Option<Vec<u64>>,
    pub schur_dim: usize,
    pub verdict: Verdict,
}

/// Outcome of the exhaustive MDS check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MdsCheck {
    pub is_mds: bool,
    pub witness: Option<Vec<usize>>,
}

/// Checks every k-column subset of the k×n matrix `g` for independence.
pub fn mds_exhaustive(g: &MatrixFq, limits: &Limits) -> Result<MdsCheck> {
    let (k, n) = (g.rows(), g.cols());
    if k > n {
        return Err(Error::RankDeficient { expected: k, found: n });
    }
    let total = binomial(n as u64, k as u64).filter(|&t| t <= limits.subset_guard).ok_or_else(|| {
        Error::Infeasible {
            what: "column subsets",
            count: crate::combin::binomial_big(&(n as u64).into(), k as u64).to_string(),
            guard: limits.subset_guard,
        }
    })?;
    let hit = first_hit(total, limits.jobs, |start, end, best| {
        let mut it = LexSubsets::starting_at(n, k, start);
        for rank in start..end {
            if rank > best.load(Ordering::Relaxed) {
                return None;
            }
            it.advance()?;
            let sub = g.select_cols(it.current()).expect("indices in range");
            if sub.rank() < k {
                return Some(rank);
            }
        }
        None
    });
    Ok(match hit {
        Some(rank) => MdsCheck { is_mds: false, witness: unrank_lex(n, k, rank) },
        None => MdsCheck { is_mds: true, witness: None },
    })
}

/// Rank of all pairwise component-wise products of the rows of `g`.
pub fn schur_square_dim(g: &MatrixFq) -> usize {
    let ctx = g.ctx();
    let k = g.rows();
    let mut entries = Vec::with_capacity(k * (k + 1) / 2 * g.cols());
    for a in 0..k {
        for b in a..k {
            entries.extend(g.row(a).iter().zip(g.row(b)).map(|(x, y)| ctx.mul(x, y)));
        }
    }
    MatrixFq::new(ctx, k * (k + 1) / 2, g.cols(), entries).expect("consistent shape").rank()
}

/// Schur-square dimension of C(T, I) as the rank of the I+I monomials on T.
pub fn schur_square_dim_monomial(code: &EvalCode) -> usize {
    let s = sumset(code.exponents());
    monomial_matrix(code.ctx(), code.points().points(), s.exps()).rank()
}

/// Enumerates all q^k messages; returns the minimum nonzero codeword weight
/// and the message-weight distribution A_0..A_n.
pub fn min_distance_bruteforce(code: &EvalCode, limits: &Limits) -> Result<(usize, Vec<u64>)> {
    let ctx = code.ctx();
    let (n, k) = (code.n(), code.k());
    let infeasible = || Error::Infeasible {
        what: "codewords",
        count: format!("{}^{}", ctx.order(), k),
        guard: limits.codeword_guard,
    };
    let q = ctx.order_u64().ok_or_else(infeasible)?;
    let count = (q as u128).checked_pow(k as u32).ok_or_else(infeasible)?;
    if count > limits.codeword_guard as u128 {
        return Err(infeasible());
    }
    let elements = ctx.enumerate(u64::MAX)?;
    let g = code.generator_matrix();
    // scaled[j][c] = elements[c] · row j, when small enough to tabulate
    let tabulate = (q as u128) * (n as u128) * (k as u128) <= 1 << 22;
    let scaled: Vec<Vec<Vec<FieldElement>>> = if tabulate {
        (0..k)
            .map(|j| elements.iter().map(|c| g.row(j).iter().map(|x| ctx.mul(c, x)).collect()).collect())
            .collect()
    } else {
        Vec::new()
    };

    let walker = Walker { ctx, g: &g, elements: &elements, scaled: &scaled, tabulate, k, n };
    let walk = |first: std::ops::Range<usize>| -> Vec<u64> {
        let mut dist = vec![0u64; n + 1];
        let mut bufs = vec![vec![ctx.zero(); n]; k + 1];
        for c0 in first {
            walker.descend(0, c0, &mut bufs, &mut dist);
        }
        dist
    };

    let qn = elements.len();
    let jobs = limits.jobs.max(1).min(qn);
    let dist = if jobs == 1 {
        walk(0..qn)
    } else {
        let chunk = qn.div_ceil(jobs);
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs)
                .map(|w| {
                    let range = (w * chunk).min(qn)..((w + 1) * chunk).min(qn);
                    let walk = &walk;
                    s.spawn(move || walk(range))
                })
                .collect();
            handles.into_iter().fold(vec![0u64; n + 1], |mut acc, h| {
                for (a, b) in acc.iter_mut().zip(h.join().expect("worker panicked")) {
                    *a += b;
                }
                acc
            })
        })
    };
    let d = (1..=n).find(|&w| dist[w] > 0).unwrap_or(0);
    Ok((d, dist))
}

struct Walker<'a> {
    ctx: &'a crate::field::FieldContext,
    g: &'a MatrixFq,
    elements: &'a [FieldElement],
    scaled: &'a [Vec<Vec<FieldElement>>],
    tabulate: bool,
    k: usize,
    n: usize,
}

impl Walker<'_> {
    /// Sets message coordinate `level` to element `c`, then enumerates the rest.
    /// `bufs[level]` holds the partial codeword of the coordinates before it.
    fn descend(&self, level: usize, c: usize, bufs: &mut [Vec<FieldElement>], dist: &mut [u64]) {
        let (head, tail) = bufs.split_at_mut(level + 1);
        let (partial, next) = (&head[level], &mut tail[0]);
        for i in 0..self.n {
            next[i] = if self.tabulate {
                self.ctx.add(&partial[i], &self.scaled[level][c][i])
            } else {
                self.ctx.add(&partial[i], &self.ctx.mul(&self.elements[c], self.g.get(level, i)))
            };
        }
        if level + 1 == self.k {
            dist[next.iter().filter(|e| !e.is_zero()).count()] += 1;
            return;
        }
        for c in 0..self.elements.len() {
            self.descend(level + 1, c, bufs, dist);
        }
    }
}

/// Generator of the dual code.
pub fn dual_code(g: &MatrixFq) -> Result<MatrixFq> {
    let r = g.rank();
    if r != g.rows() {
        return Err(Error::RankDeficient { expected: g.rows(), found: r });
    }
    Ok(g.null_space())
}

/// Runs the MDS check and both Schur-square computations and assigns the
/// verdict. With `brute_force_distance` the full weight distribution is
/// also enumerated.
pub fn non_rs_certificate(code: &EvalCode, limits: &Limits, brute_force_distance: bool) -> Result<Certificate> {
    let g = code.generator_matrix();
    let (n, k) = (code.n(), code.k());
    let mds = mds_exhaustive(&g, limits)?;
    let schur_dim = schur_square_dim(&g);
    let via_monomials = schur_square_dim_monomial(code);
    if schur_dim != via_monomials {
        return Err(Error::Internal(format!(
            "Schur square dimension {schur_dim} from row products disagrees with {via_monomials} from monomials"
        )));
    }
    let (min_distance, weight_distribution) = if brute_force_distance {
        let (d, dist) = min_distance_bruteforce(code, limits)?;
        (Some(d), Some(dist))
    } else {
        (None, None)
    };
    Ok(Certificate {
        n,
        k,
        is_mds: mds.is_mds,
        failing_columns: mds.witness,
        min_distance,
        weight_distribution,
        schur_dim,
        verdict: verdict(n, k, mds.is_mds, schur_dim),
    })
}

/// Verdict for an [n, k] code; also used for bare generator matrices.
pub fn verdict(n: usize, k: usize, is_mds: bool, schur_dim: usize) -> Verdict {
    if 2 * k > n || !is_mds {
        Verdict::Indeterminate
    } else if schur_dim >= 2 * k {
        Verdict::NonRsCertified
    } else if schur_dim + 1 == 2 * k {
        Verdict::RsConsistent
    } else {
        Verdict::Indeterminate
    }
}
