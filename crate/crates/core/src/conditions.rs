//! Subset conditions on evaluation sets.
//!
//! With I = {0..k}\{k-r}, a nonzero f in span{x^i : i in I} vanishing on a
//! k-subset S must be a multiple of the product of (x - s) over S, whose
//! x^(k-r) coefficient is (-1)^r e_r(S). So C(T, I) is MDS exactly when no
//! k-subset of T has e_r = 0. The checks here decide that predicate (and its
//! shifted form e_r != δ) directly on T.

use std::collections::HashMap;
use std::sync::atomic::Ordering;

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::code::EvalSet;
use crate::combin::{binomial, binomial_big, first_hit, next_colex, unrank_colex, unrank_lex, LexSubsets};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::limits::Limits;

/// Forbids e_r(S) = δ on every k-subset S.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionSpec {
    pub k: usize,
    pub r: usize,
    pub delta: FieldElement,
}

impl ConditionSpec {
    pub fn new(k: usize, r: usize, delta: FieldElement) -> Result<Self> {
        if r == 0 || r > k {
            return Err(Error::InvalidParams(format!("need 1 <= r <= k, got r = {r}, k = {k}")));
        }
        Ok(ConditionSpec { k, r, delta })
    }

    /// e_r != 0.
    pub fn nonzero(ctx: &FieldContext, k: usize, r: usize) -> Result<Self> {
        Self::new(k, r, ctx.zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EsymCheck {
    pub holds: bool,
    /// Lexicographically first violating k-subset (indices into T).
    pub witness: Option<Vec<usize>>,
}

/// e_0..e_r of the prefix extended by `alpha`.
fn extend_esym(ctx: &FieldContext, prev: &[FieldElement], alpha: &FieldElement, out: &mut [FieldElement]) {
    out[0] = prev[0].clone();
    for j in 1..prev.len() {
        out[j] = ctx.add(&prev[j], &ctx.mul(alpha, &prev[j - 1]));
    }
}

/// Decides e_r(S) != δ for every k-subset S of `t`.
pub fn check_esym(ctx: &FieldContext, t: &EvalSet, spec: &ConditionSpec, limits: &Limits) -> Result<EsymCheck> {
    check_points(ctx, t.points(), spec, limits)
}

pub(crate) fn check_points(
    ctx: &FieldContext,
    points: &[FieldElement],
    spec: &ConditionSpec,
    limits: &Limits,
) -> Result<EsymCheck> {
    let n = points.len();
    let (k, r) = (spec.k, spec.r);
    if r == 0 || r > k {
        return Err(Error::InvalidParams(format!("need 1 <= r <= k, got r = {r}, k = {k}")));
    }
    let total = binomial(n as u64, k as u64).filter(|&t| t <= limits.subset_guard).ok_or_else(|| {
        Error::Infeasible {
            what: "k-subsets",
            count: binomial_big(&BigUint::from(n), k as u64).to_string(),
            guard: limits.subset_guard,
        }
    })?;
    let hit = first_hit(total, limits.jobs, |start, end, best| {
        let mut it = LexSubsets::starting_at(n, k, start);
        // levels[d] = e_0..e_r of the first d chosen points
        let mut levels = vec![vec![ctx.zero(); r + 1]; k + 1];
        levels[0][0] = ctx.one();
        for rank in start..end {
            if rank > best.load(Ordering::Relaxed) {
                return None;
            }
            let changed = it.advance()?;
            for d in changed..k {
                let (head, tail) = levels.split_at_mut(d + 1);
                extend_esym(ctx, &head[d], &points[it.current()[d]], &mut tail[0]);
            }
            if levels[k][r] == spec.delta {
                return Some(rank);
            }
        }
        None
    });
    Ok(match hit {
        Some(rank) => EsymCheck { holds: false, witness: unrank_lex(n, k, rank) },
        None => EsymCheck { holds: true, witness: None },
    })
}

/// N[j][s]: number of j-subsets of T summing to the element with index s.
#[derive(Debug, Clone)]
pub struct SubsetSumTable {
    ctx: FieldContext,
    counts: Vec<Vec<u128>>,
}

impl SubsetSumTable {
    pub fn count(&self, j: usize, s: &FieldElement) -> u128 {
        self.counts[j][self.ctx.index_of(s) as usize]
    }

    pub fn row(&self, j: usize) -> &[u128] {
        &self.counts[j]
    }

    pub fn max_size(&self) -> usize {
        self.counts.len() - 1
    }
}

/// Subset-sum counts by the one-element-at-a-time recurrence.
pub fn subset_sum_counts(ctx: &FieldContext, t: &EvalSet, k: usize, limits: &Limits) -> Result<SubsetSumTable> {
    let elements = ctx.enumerate(limits.field_guard).map_err(|_| Error::Infeasible {
        what: "subset-sum table entries",
        count: ctx.order().to_string(),
        guard: limits.field_guard,
    })?;
    let q = elements.len();
    let index: HashMap<&FieldElement, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut counts = vec![vec![0u128; q]; k + 1];
    counts[0][0] = 1;
    for alpha in t.points() {
        // shifted[s] = index of elements[s] + alpha
        let shifted: Vec<usize> = elements.iter().map(|e| index[&ctx.add(e, alpha)]).collect();
        for j in (1..=k).rev() {
            let (lower, upper) = counts.split_at_mut(j);
            let prev = &lower[j - 1];
            let cur = &mut upper[0];
            for (s, &c) in prev.iter().enumerate() {
                if c != 0 {
                    cur[shifted[s]] += c;
                }
            }
        }
    }
    Ok(SubsetSumTable { ctx: ctx.clone(), counts })
}

/// α_i = β_i - δ/k: k-subset sums of the output are those of the input minus δ.
pub fn shift_transform(ctx: &FieldContext, b: &EvalSet, delta: &FieldElement, k: usize) -> Result<EvalSet> {
    let k_elem = ctx.constant(k as u64);
    let k_inv = ctx.inv(&k_elem).ok_or(Error::CharacteristicDividesK { p: ctx.p(), k })?;
    let offset = ctx.mul(delta, &k_inv);
    let points = b.points().iter().map(|x| ctx.sub(x, &offset)).collect();
    EvalSet::new(ctx, points)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundVariant {
    /// Any I with m_I = max I.
    General,
    /// I = {0..k-2, k}, where bad k-sets have zero sum.
    Vieta,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundQuery {
    pub q: BigUint,
    pub n: u64,
    pub k: u64,
    pub m_i: u64,
    pub variant: BoundVariant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    pub holds: bool,
    pub lhs: BigUint,
    pub rhs: BigUint,
}

/// Counting bound for the existence of a good n-set: C(q, n) against the
/// number of n-sets containing a bad k-set.
pub fn existence_bound(query: &BoundQuery) -> Result<BoundResult> {
    let BoundQuery { q, n, k, m_i, variant } = query;
    let (n, k, m_i) = (*n, *k, *m_i);
    if k < 3 || 2 * k > n {
        return Err(Error::InvalidParams(format!("need 3 <= k <= n/2, got n = {n}, k = {k}")));
    }
    if m_i + 1 < k {
        return Err(Error::InvalidParams(format!("need m_I >= k - 1, got m_I = {m_i}, k = {k}")));
    }
    if *q < BigUint::from(2u32) {
        return Err(Error::InvalidParams("q must be at least 2".into()));
    }
    let lhs = binomial_big(q, n);
    let kb = BigUint::from(k);
    let completions = if q >= &kb { binomial_big(&(q - &kb), n - k) } else { BigUint::default() };
    let rhs = match variant {
        BoundVariant::General => {
            let projective = (q.pow(k as u32) - BigUint::one()) / (q - BigUint::one());
            projective * binomial_big(&BigUint::from(m_i), k) * completions
        }
        BoundVariant::Vieta => binomial_big(q, k - 1) * completions,
    };
    Ok(BoundResult { holds: lhs > rhs, lhs, rhs })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStrategy {
    /// n-subsets of the field in colex order; first valid one wins.
    Exhaustive,
    /// Uniform n-subsets; attempt i draws from stream i of a ChaCha8 generator seeded with `seed`.
    Random { seed: u64, max_attempts: u64 },
    /// Adds field elements in enumeration order whenever the condition survives.
    Greedy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub set: EvalSet,
    /// Colex rank (exhaustive) or attempt index (random); absent for greedy.
    pub index: Option<u64>,
}

/// Looks for n field elements satisfying `spec`. Points are returned in
/// field-enumeration order.
pub fn search_eval_set(
    ctx: &FieldContext,
    n: usize,
    spec: &ConditionSpec,
    strategy: SearchStrategy,
    limits: &Limits,
) -> Result<Option<SearchOutcome>> {
    let q = ctx.order_u64().filter(|&q| q <= limits.field_guard).ok_or_else(|| Error::TooLarge {
        q: ctx.order().to_string(),
        guard: limits.field_guard,
    })?;
    if n == 0 || n as u64 > q {
        return Err(Error::InvalidParams(format!("need 1 <= n <= q, got n = {n}")));
    }
    let inner = Limits { jobs: 1, ..*limits };
    // each candidate check enumerates C(n, k) subsets
    if binomial(n as u64, spec.k as u64).map_or(true, |c| c > limits.subset_guard) {
        return Err(Error::Infeasible {
            what: "k-subsets per candidate",
            count: binomial_big(&BigUint::from(n), spec.k as u64).to_string(),
            guard: limits.subset_guard,
        });
    }
    let to_points = |idx: &[usize]| -> Vec<FieldElement> { idx.iter().map(|&i| ctx.from_index(i as u64)).collect() };
    let passes = |idx: &[usize]| -> bool {
        check_points(ctx, &to_points(idx), spec, &inner).map(|c| c.holds).unwrap_or(false)
    };
    let finish = |idx: &[usize], index: Option<u64>| -> Result<Option<SearchOutcome>> {
        Ok(Some(SearchOutcome { set: EvalSet::new(ctx, to_points(idx))?, index }))
    };
    let q = q as usize;
    match strategy {
        SearchStrategy::Exhaustive => {
            let total = binomial(q as u64, n as u64).filter(|&t| t <= limits.subset_guard).ok_or_else(|| {
                Error::Infeasible {
                    what: "candidate evaluation sets",
                    count: binomial_big(&BigUint::from(q), n as u64).to_string(),
                    guard: limits.subset_guard,
                }
            })?;
            let hit = first_hit(total, limits.jobs, |start, end, best| {
                if start >= end {
                    return None;
                }
                let mut idx = unrank_colex(n, start);
                for rank in start..end {
                    if rank > best.load(Ordering::Relaxed) {
                        return None;
                    }
                    if passes(&idx) {
                        return Some(rank);
                    }
                    if !next_colex(&mut idx, q) {
                        break;
                    }
                }
                None
            });
            match hit {
                Some(rank) => finish(&unrank_colex(n, rank), Some(rank)),
                None => Ok(None),
            }
        }
        SearchStrategy::Random { seed, max_attempts } => {
            let draw = |attempt: u64| -> Vec<usize> {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(attempt);
                let mut idx = rand::seq::index::sample(&mut rng, q, n).into_vec();
                idx.sort_unstable();
                idx
            };
            let hit = first_hit(max_attempts, limits.jobs, |start, end, best| {
                (start..end)
                    .take_while(|&a| a <= best.load(Ordering::Relaxed))
                    .find(|&a| passes(&draw(a)))
            });
            match hit {
                Some(a) => finish(&draw(a), Some(a)),
                None => Ok(None),
            }
        }
        SearchStrategy::Greedy => {
            let mut chosen: Vec<usize> = Vec::with_capacity(n);
            for c in 0..q {
                if chosen.len() == n {
                    break;
                }
                chosen.push(c);
                if !passes(&chosen) {
                    chosen.pop();
                }
            }
            if chosen.len() == n {
                finish(&chosen, None)
            } else {
                Ok(None)
            }
        }
    }
}
