//! Explicit code families. Each constructor checks its parameter bounds with
//! exact integer inequalities and emits points whose subset condition holds
//! by construction; tests re-verify every family with the certifier.
//!
//! Points of the extension-field families are a_0 + a_1 ζ + ... + a_t ζ^t,
//! enumerated as a counter: a_0 runs fastest through its allowed range, then
//! the tail (a_1, ..., a_t) counts in base p with a_1 least significant.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::code::{EvalCode, EvalSet, ExponentSet};
use crate::combin::binomial;
use crate::conditions::{check_esym, ConditionSpec};
use crate::error::{Error, Result};
use crate::field::{increment_counter, is_prime, make_field, FieldContext, FieldElement};
use crate::limits::Limits;
use crate::matrix::MatrixFq;

pub const FAMILY_IDS: [&str; 8] = ["cor44", "thm412", "thm415", "cor62", "thm63", "thm64", "hamming-lift", "cor411"];

fn params(pairs: &[(&str, u64)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|&(k, v)| (k.to_string(), Value::from(v))).collect()
}

fn odd_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::InvalidParams("p must be odd".into()));
    }
    Ok(())
}

fn rate_bounds(k: usize, n: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::InvalidParams(format!("need k >= 3, got {k}")));
    }
    if 2 * k > n {
        return Err(Error::BoundViolated(format!("2k <= n fails: 2·{k} > {n}")));
    }
    Ok(())
}

/// p^e, saturating.
fn pow_sat(p: u64, e: usize) -> u64 {
    (0..e).fold(1u64, |acc, _| acc.saturating_mul(p))
}

/// `count` points whose constant digit cycles through `constants` and whose
/// next `t` digits count in base p.
fn counter_points(ctx: &FieldContext, constants: &[u64], t: usize, count: usize) -> Vec<FieldElement> {
    let mut tail = vec![0u64; t];
    let mut out = Vec::with_capacity(count);
    'outer: loop {
        for &a0 in constants {
            if out.len() == count {
                break 'outer;
            }
            let mut digits = Vec::with_capacity(t + 1);
            digits.push(a0);
            digits.extend_from_slice(&tail);
            out.push(ctx.element(&digits).expect("digits below p"));
        }
        if !increment_counter(&mut tail, ctx.p()) {
            break;
        }
    }
    out
}

fn finish(ctx: &FieldContext, points: Vec<FieldElement>, exps: ExponentSet, family: &str, p: BTreeMap<String, Value>) -> Result<EvalCode> {
    EvalCode::tagged(ctx, EvalSet::new(ctx, points)?, exps, family, p)
}

/// T = {0, ..., n-1} ⊂ Z_p, I = {0..k-2, k}; needs kn - k(k+1)/2 <= p - 1.
pub fn cor44(p: u64, k: usize, n: usize) -> Result<EvalCode> {
    odd_prime(p)?;
    rate_bounds(k, n)?;
    let max_sum = (k * n - k * (k + 1) / 2) as u64;
    if max_sum > p - 1 {
        return Err(Error::BoundViolated(format!(
            "kn - k(k+1)/2 <= p - 1 fails: {max_sum} > {}",
            p - 1
        )));
    }
    let ctx = make_field(p, 1)?;
    let points = (0..n as u64).map(|i| ctx.constant(i)).collect();
    finish(&ctx, points, ExponentSet::without_one(k, 1)?, "cor44", params(&[("p", p), ("k", k as u64), ("n", n as u64)]))
}

/// Points 1 + a_1 ζ + ... + a_{m-1} ζ^{m-1} over GF(p^m), I = {0..k-2, k}.
pub fn thm412(p: u64, m: usize, k: usize, n: usize) -> Result<EvalCode> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m < 2 {
        return Err(Error::InvalidParams("need m >= 2".into()));
    }
    if k as u64 % p == 0 {
        return Err(Error::CharacteristicDividesK { p, k });
    }
    rate_bounds(k, n)?;
    let cap = pow_sat(p, m - 1);
    if n as u64 > cap {
        return Err(Error::BoundViolated(format!("n <= p^(m-1) fails: {n} > {cap}")));
    }
    let ctx = make_field(p, m)?;
    let points = counter_points(&ctx, &[1], m - 1, n);
    finish(
        &ctx,
        points,
        ExponentSet::without_one(k, 1)?,
        "thm412",
        params(&[("p", p), ("m", m as u64), ("k", k as u64), ("n", n as u64)]),
    )
}

/// Constant digits 1..=u (u = ⌊p/k⌋) over every tail, then up to p - ku - 1
/// extra points with constant digit u + 1.
pub fn thm415(p: u64, m: usize, k: usize, n: usize) -> Result<EvalCode> {
    odd_prime(p)?;
    if m < 1 {
        return Err(Error::InvalidParams("need m >= 1".into()));
    }
    if k < 3 || k as u64 > p - 1 {
        return Err(Error::InvalidParams(format!("need 3 <= k <= p - 1, got k = {k}")));
    }
    rate_bounds(k, n)?;
    let u = p / k as u64;
    let tails = pow_sat(p, m - 1);
    let main = u.saturating_mul(tails);
    // the extras need distinct tails, so at most p^(m-1) of them
    let extra_cap = (p - k as u64 * u - 1).min(tails);
    let cap = main.saturating_add(extra_cap);
    if n as u64 > cap {
        return Err(Error::BoundViolated(format!(
            "n <= ⌊p/k⌋·p^(m-1) + (p - k⌊p/k⌋ - 1) fails: {n} > {cap}"
        )));
    }
    let ctx = make_field(p, m)?;
    let constants: Vec<u64> = (1..=u).collect();
    let n_main = (n as u64).min(main) as usize;
    let mut points = counter_points(&ctx, &constants, m - 1, n_main);
    points.extend(counter_points(&ctx, &[u + 1], m - 1, n - n_main));
    finish(
        &ctx,
        points,
        ExponentSet::without_one(k, 1)?,
        "thm415",
        params(&[("p", p), ("m", m as u64), ("k", k as u64), ("n", n as u64)]),
    )
}

/// T = {0, ..., n-1} ⊂ Z_p, I = {0..k}\{k-r}; needs (nk)^r <= r!·p.
pub fn cor62(p: u64, k: usize, r: usize, n: usize) -> Result<EvalCode> {
    odd_prime(p)?;
    if r < 2 || r + 1 > k {
        return Err(Error::InvalidParams(format!("need 2 <= r <= k - 1, got r = {r}, k = {k}")));
    }
    rate_bounds(k, n)?;
    let lhs = (n as u128 * k as u128).checked_pow(r as u32);
    let rhs = factorial(r).map(|f| f * p as u128);
    match (lhs, rhs) {
        (Some(l), Some(rh)) if l <= rh => {}
        _ => {
            return Err(Error::BoundViolated(format!(
                "(nk)^r <= r!·p fails: ({n}·{k})^{r} > {r}!·{p}"
            )))
        }
    }
    let ctx = make_field(p, 1)?;
    let points = (0..n as u64).map(|i| ctx.constant(i)).collect();
    finish(
        &ctx,
        points,
        ExponentSet::without_one(k, r)?,
        "cor62",
        params(&[("p", p), ("k", k as u64), ("r", r as u64), ("n", n as u64)]),
    )
}

fn factorial(r: usize) -> Option<u128> {
    (1..=r as u128).try_fold(1u128, |acc, i| acc.checked_mul(i))
}

/// Points 1 + a_1 ζ + ... + a_t ζ^t with t = ⌊(m-1)/r⌋, I = {0..k}\{k-r}.
pub fn thm63(p: u64, m: usize, k: usize, r: usize, n: usize) -> Result<EvalCode> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k < 3 || r == 0 || r >= k {
        return Err(Error::InvalidParams(format!("need k >= 3 and 1 <= r <= k - 1, got k = {k}, r = {r}")));
    }
    let c = binomial(k as u64, r as u64).ok_or_else(|| Error::InvalidParams("C(k, r) overflows".into()))?;
    if c % p == 0 {
        return Err(Error::BinomialDivisible { p, k, r });
    }
    let t = m.saturating_sub(1) / r;
    if t < 1 {
        return Err(Error::BoundViolated(format!("t = ⌊(m-1)/r⌋ >= 1 fails for m = {m}, r = {r}")));
    }
    rate_bounds(k, n)?;
    let cap = pow_sat(p, t);
    if n as u64 > cap {
        return Err(Error::BoundViolated(format!("n <= p^t fails: {n} > {cap}")));
    }
    let ctx = make_field(p, m)?;
    let points = counter_points(&ctx, &[1], t, n);
    finish(
        &ctx,
        points,
        ExponentSet::without_one(k, r)?,
        "thm63",
        params(&[("p", p), ("m", m as u64), ("k", k as u64), ("r", r as u64), ("n", n as u64)]),
    )
}

/// ⌊x^(1/r)⌋ for x >= 0.
pub fn integer_root(x: u128, r: u32) -> u128 {
    if r == 1 || x < 2 {
        return x;
    }
    let mut lo = 0u128;
    let mut hi = 1u128 << (128 / r + 1).min(127);
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        match mid.checked_pow(r) {
            Some(v) if v <= x => lo = mid,
            _ => hi = mid - 1,
        }
    }
    lo
}

/// Constant digits 1..=w with w = ⌊⌊(r!·p)^(1/r)⌋/k⌋ over tails of length
/// t = ⌊(m-1)/r⌋, I = {0..k}\{k-r}.
pub fn thm64(p: u64, m: usize, k: usize, r: usize, n: usize) -> Result<EvalCode> {
    odd_prime(p)?;
    if m < 1 || k < 3 || r == 0 || r >= k {
        return Err(Error::InvalidParams(format!("need m >= 1, k >= 3, 1 <= r <= k - 1, got m = {m}, k = {k}, r = {r}")));
    }
    let rfp = factorial(r)
        .and_then(|f| f.checked_mul(p as u128))
        .ok_or_else(|| Error::InvalidParams("r!·p overflows".into()))?;
    let w = integer_root(rfp, r as u32) / k as u128;
    if w < 1 {
        return Err(Error::BoundViolated(format!("k <= (r!·p)^(1/r) fails for k = {k}")));
    }
    // the constant part of e_r lies in [C(k,r), C(k,r)·w^r]; it must stay below p
    let c = binomial(k as u64, r as u64).unwrap_or(u64::MAX) as u128;
    let top = w.checked_pow(r as u32).and_then(|x| x.checked_mul(c));
    if top.map_or(true, |v| v >= p as u128) {
        return Err(Error::BoundViolated(format!("C(k,r)·w^r < p fails with w = {w}")));
    }
    rate_bounds(k, n)?;
    let t = (m - 1) / r;
    let cap = (w as u64).saturating_mul(pow_sat(p, t));
    if n as u64 > cap {
        return Err(Error::BoundViolated(format!("n <= w·p^t fails: {n} > {cap} (w = {w}, t = {t})")));
    }
    let ctx = make_field(p, m)?;
    let constants: Vec<u64> = (1..=w as u64).collect();
    let points = counter_points(&ctx, &constants, t, n);
    finish(
        &ctx,
        points,
        ExponentSet::without_one(k, r)?,
        "thm64",
        params(&[("p", p), ("m", m as u64), ("k", k as u64), ("r", r as u64), ("n", n as u64)]),
    )
}

/// Splits a prime power into (p, e).
pub fn prime_power(q: u64) -> Result<(u64, usize)> {
    if q < 2 {
        return Err(Error::InvalidParams(format!("{q} is not a prime power")));
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(Error::InvalidParams(format!("{q} is not a prime power")));
    }
    Ok((p, e))
}

/// Parity-check matrix of the extended q-ary Hamming code: every normalized
/// projective point of PG(r-1, q) with a 1 appended, then (0, ..., 0, 1).
pub fn extended_hamming_parity(r: usize, base_q: u64) -> Result<MatrixFq> {
    if r < 2 {
        return Err(Error::InvalidParams(format!("need r >= 2, got {r}")));
    }
    let (p, e) = prime_power(base_q)?;
    let ctx = make_field(p, e)?;
    let mut columns: Vec<Vec<FieldElement>> = Vec::new();
    let mut v = vec![0u64; r];
    while increment_counter(&mut v, base_q) {
        let first = v.iter().position(|&x| x != 0).unwrap();
        // element index 1 is the field's one
        if v[first] != 1 {
            continue;
        }
        let mut col: Vec<FieldElement> = v.iter().map(|&i| ctx.from_index(i)).collect();
        col.push(ctx.one());
        columns.push(col);
    }
    let mut last = vec![ctx.zero(); r];
    last.push(ctx.one());
    columns.push(last);
    let n = columns.len();
    let mut h = MatrixFq::zeros(&ctx, r + 1, n);
    for (c, col) in columns.into_iter().enumerate() {
        for (row, x) in col.into_iter().enumerate() {
            h.set(row, c, x);
        }
    }
    Ok(h)
}

/// Reads each column of `h` (over GF(p^e), ρ rows) as an element of
/// GF(p^(eρ)) by concatenating digit vectors, and builds C(T, {0..k-2, k}).
/// The k-subset sums are checked here; a zero sum means the base code has a
/// weight-k codeword.
pub fn lift_parity_columns(h: &MatrixFq, k: usize, limits: &Limits) -> Result<EvalCode> {
    let base = h.ctx();
    let (rho, n) = (h.rows(), h.cols());
    for a in 0..n {
        for b in a + 1..n {
            if (0..rho).all(|r| h.get(r, a) == h.get(r, b)) {
                return Err(Error::DuplicateColumns(a, b));
            }
        }
    }
    if k < 3 || 2 * k > n {
        return Err(Error::InvalidParams(format!("need 3 <= k <= n/2, got n = {n}, k = {k}")));
    }
    let ctx = make_field(base.p(), base.m() * rho)?;
    let points: Vec<FieldElement> = (0..n)
        .map(|c| {
            let digits: Vec<u64> = (0..rho).flat_map(|r| h.get(r, c).digits().to_vec()).collect();
            ctx.element(&digits).expect("digits below p")
        })
        .collect();
    let t = EvalSet::new(&ctx, points)?;
    let check = check_esym(&ctx, &t, &ConditionSpec::nonzero(&ctx, k, 1)?, limits)?;
    if let Some(witness) = check.witness {
        return Err(Error::ConditionViolated { witness });
    }
    EvalCode::new(&ctx, t, ExponentSet::without_one(k, 1)?)
}

/// Lift of the extended Hamming parity-check matrix Ham(r, base_q).
pub fn hamming_lift(r: usize, base_q: u64, k: usize, limits: &Limits) -> Result<EvalCode> {
    let h = extended_hamming_parity(r, base_q)?;
    Ok(lift_parity_columns(&h, k, limits)?
        .with_family("hamming-lift", params(&[("r", r as u64), ("q", base_q), ("k", k as u64)])))
}

/// [2^r, k] over GF(2^(r+1)) for odd 3 <= k <= 2^(r-1).
pub fn cor411(r: usize, k: usize, limits: &Limits) -> Result<EvalCode> {
    if r < 3 {
        return Err(Error::InvalidParams(format!("need r >= 3, got {r}")));
    }
    if k % 2 == 0 {
        return Err(Error::KEven(k));
    }
    let cap = 1usize << (r - 1);
    if k < 3 || k > cap {
        return Err(Error::BoundViolated(format!("3 <= k <= 2^(r-1) fails: k = {k}, 2^(r-1) = {cap}")));
    }
    let h = extended_hamming_parity(r, 2)?;
    Ok(lift_parity_columns(&h, k, limits)?.with_family("cor411", params(&[("r", r as u64), ("k", k as u64)])))
}

/// Parameter names taken by each family.
pub fn family_params(family: &str) -> Option<&'static [&'static str]> {
    Some(match family {
        "cor44" => &["p", "k", "n"],
        "thm412" | "thm415" => &["p", "m", "k", "n"],
        "cor62" => &["p", "k", "r", "n"],
        "thm63" | "thm64" => &["p", "m", "k", "r", "n"],
        "hamming-lift" => &["r", "q", "k"],
        "cor411" => &["r", "k"],
        _ => return None,
    })
}

/// Builds a family by id from integer parameters.
pub fn construct(family: &str, args: &BTreeMap<String, u64>, limits: &Limits) -> Result<EvalCode> {
    let names = family_params(family)
        .ok_or_else(|| Error::InvalidParams(format!("unknown family {family:?}; expected one of {FAMILY_IDS:?}")))?;
    if let Some(extra) = args.keys().find(|k| !names.contains(&k.as_str())) {
        return Err(Error::InvalidParams(format!("family {family} does not take parameter {extra}; it takes {names:?}")));
    }
    let get = |name: &str| -> Result<u64> {
        args.get(name)
            .copied()
            .ok_or_else(|| Error::InvalidParams(format!("family {family} needs parameter {name}")))
    };
    let us = |name: &str| -> Result<usize> { get(name).map(|v| v as usize) };
    match family {
        "cor44" => cor44(get("p")?, us("k")?, us("n")?),
        "thm412" => thm412(get("p")?, us("m")?, us("k")?, us("n")?),
        "thm415" => thm415(get("p")?, us("m")?, us("k")?, us("n")?),
        "cor62" => cor62(get("p")?, us("k")?, us("r")?, us("n")?),
        "thm63" => thm63(get("p")?, us("m")?, us("k")?, us("r")?, us("n")?),
        "thm64" => thm64(get("p")?, us("m")?, us("k")?, us("r")?, us("n")?),
        "hamming-lift" => hamming_lift(us("r")?, get("q")?, us("k")?, limits),
        "cor411" => cor411(us("r")?, us("k")?, limits),
        _ => unreachable!("family_params covers every id"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_sum_family() {
        let c = cor44(13, 3, 6).unwrap();
        assert_eq!(c.exponents().exps(), &[0, 1, 3]);
        let pts: Vec<u64> = c.points().points().iter().map(|e| e.digits()[0]).collect();
        assert_eq!(pts, vec![0, 1, 2, 3, 4, 5]);
        assert!(matches!(cor44(13, 3, 7), Err(Error::BoundViolated(_))));
        assert!(cor44(101, 4, 10).is_ok());
        assert!(matches!(cor44(15, 3, 6), Err(Error::NotPrime(15))));
        assert!(matches!(cor44(13, 3, 5), Err(Error::BoundViolated(_))));
    }

    #[test]
    fn constant_one_family() {
        let c = thm412(3, 3, 4, 9).unwrap();
        let f = c.ctx();
        let z = f.zeta();
        let pts = c.points().points();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], f.one());
        assert_eq!(pts[1], f.add(&f.one(), &z));
        assert_eq!(pts[2], f.add(&f.one(), &f.mul(&f.constant(2), &z)));
        assert_eq!(c.exponents().exps(), &[0, 1, 2, 4]);
        assert_eq!(thm412(3, 3, 3, 9).unwrap_err(), Error::CharacteristicDividesK { p: 3, k: 3 });
        let c = thm412(2, 5, 3, 16).unwrap();
        assert_eq!(c.ctx().order_u64(), Some(32));
        assert!(c.points().points().iter().all(|e| e.digits()[0] == 1));
        assert!(matches!(thm412(2, 5, 3, 17), Err(Error::BoundViolated(_))));
    }

    #[test]
    fn bounded_constant_family() {
        let c = thm415(7, 2, 3, 14).unwrap();
        assert_eq!(c.ctx().order_u64(), Some(49));
        let a0: Vec<u64> = c.points().points().iter().map(|e| e.digits()[0]).collect();
        assert!(a0.iter().all(|&d| d == 1 || d == 2));
        assert_eq!(&a0[..4], &[1, 2, 1, 2]);
        assert!(matches!(thm415(7, 2, 3, 15), Err(Error::BoundViolated(_))));
        // u = 3, cap 3·11 + 1 = 34
        let c = thm415(11, 2, 3, 34).unwrap();
        let last = c.points().points().last().unwrap();
        assert_eq!(last.digits(), &[4, 0]);
        assert!(thm415(11, 2, 3, 22).is_ok());
        assert!(matches!(thm415(11, 2, 3, 35), Err(Error::BoundViolated(_))));
    }

    #[test]
    fn bounded_constant_extras_stay_distinct() {
        // p = 13, k = 3: u = 4, p - ku - 1 = 0
        assert!(matches!(thm415(13, 1, 3, 5), Err(Error::BoundViolated(_))));
        // p = 11, k = 3, m = 1: one tail, so at most one extra point
        assert!(matches!(thm415(11, 1, 3, 6), Err(Error::BoundViolated(_))));
    }

    #[test]
    fn prime_field_esym_family() {
        let c = cor62(163, 3, 2, 6).unwrap();
        assert_eq!(c.exponents().exps(), &[0, 2, 3]);
        assert!(matches!(cor62(101, 3, 2, 6), Err(Error::BoundViolated(_))));
        assert!(matches!(cor62(163, 3, 2, 7), Err(Error::BoundViolated(_))));
    }

    #[test]
    fn constant_one_esym_family() {
        let c = thm63(7, 3, 3, 2, 6).unwrap();
        assert_eq!(c.ctx().order_u64(), Some(343));
        let f = c.ctx();
        for (i, pt) in c.points().points().iter().enumerate() {
            assert_eq!(pt, &f.add(&f.one(), &f.mul(&f.constant(i as u64), &f.zeta())));
        }
        assert_eq!(thm63(3, 3, 3, 2, 6).unwrap_err(), Error::BinomialDivisible { p: 3, k: 3, r: 2 });
        assert!(matches!(thm63(7, 3, 3, 2, 8), Err(Error::BoundViolated(_))));
    }

    #[test]
    fn bounded_constant_esym_family() {
        assert_eq!(integer_root(146, 2), 12);
        assert_eq!(integer_root(14, 2), 3);
        assert_eq!(integer_root(27, 3), 3);
        assert_eq!(integer_root(26, 3), 2);
        let c = thm64(73, 3, 3, 2, 20).unwrap();
        let a0: Vec<u64> = c.points().points().iter().map(|e| e.digits()[0]).collect();
        assert!(a0.iter().all(|&d| (1..=4).contains(&d)));
        assert!(matches!(thm64(7, 3, 3, 2, 8), Err(Error::BoundViolated(_))));
        // r = 1 matches the sum family's main block
        let a = thm64(7, 2, 3, 1, 14).unwrap();
        let b = thm415(7, 2, 3, 14).unwrap();
        assert_eq!(a.points(), b.points());
        assert_eq!(a.exponents(), b.exponents());
    }

    #[test]
    fn bounded_constant_esym_rejects_k_equal_p() {
        // w = 1 and k·1 = p: the constant part of every sum is 0 mod p
        assert!(matches!(thm64(7, 3, 7, 1, 14), Err(Error::BoundViolated(_))));
    }

    #[test]
    fn hamming_parity_shapes() {
        let h = extended_hamming_parity(3, 2).unwrap();
        assert_eq!((h.rows(), h.cols()), (4, 8));
        let mut cols: Vec<Vec<u64>> = (0..8).map(|c| h.column(c).iter().map(|e| e.digits()[0]).collect()).collect();
        assert!(cols.iter().all(|c| c[3] == 1));
        cols.sort();
        cols.dedup();
        assert_eq!(cols.len(), 8);
        let h3 = extended_hamming_parity(2, 3).unwrap();
        assert_eq!((h3.rows(), h3.cols()), (3, 5));
        // pairwise independence
        for a in 0..5 {
            for b in a + 1..5 {
                assert!(crate::matrix::columns_independent(&h3, &[a, b]).unwrap());
            }
        }
        assert!(extended_hamming_parity(1, 2).is_err());
        assert!(extended_hamming_parity(2, 6).is_err());
        let h4 = extended_hamming_parity(2, 4).unwrap();
        assert_eq!(h4.cols(), 6);
    }

    #[test]
    fn lift_examples() {
        let lim = Limits::default();
        let h = extended_hamming_parity(3, 2).unwrap();
        let c = lift_parity_columns(&h, 3, &lim).unwrap();
        assert_eq!((c.n(), c.k()), (8, 3));
        assert_eq!(c.ctx().order_u64(), Some(16));
        assert!(matches!(lift_parity_columns(&h, 5, &lim), Err(Error::InvalidParams(_))));
        let h4 = extended_hamming_parity(4, 2).unwrap();
        let c5 = lift_parity_columns(&h4, 5, &lim).unwrap();
        assert_eq!(c5.ctx().order_u64(), Some(32));
        // duplicate columns
        let f = h.ctx().clone();
        let mut dup = MatrixFq::zeros(&f, 4, 8);
        for c in 0..8 {
            for r in 0..4 {
                dup.set(r, c, h.get(r, c.min(6)).clone());
            }
        }
        assert_eq!(lift_parity_columns(&dup, 3, &lim).unwrap_err(), Error::DuplicateColumns(6, 7));
        // k = 4 on the extended Hamming code: weight-4 codewords exist
        assert!(matches!(lift_parity_columns(&h, 4, &lim), Err(Error::ConditionViolated { .. })));
    }

    #[test]
    fn binary_hamming_lift_family() {
        let lim = Limits::default();
        let c = cor411(4, 5, &lim).unwrap();
        assert_eq!((c.n(), c.k()), (16, 5));
        assert_eq!(c.family(), "cor411");
        assert_eq!(cor411(4, 4, &lim).unwrap_err(), Error::KEven(4));
        let c = cor411(3, 3, &lim).unwrap();
        assert_eq!((c.n(), c.k(), c.ctx().order_u64()), (8, 3, Some(16)));
        assert!(matches!(cor411(3, 5, &lim), Err(Error::BoundViolated(_))));
    }

    #[test]
    fn construct_dispatch() {
        let lim = Limits::default();
        let args: BTreeMap<String, u64> = [("p", 13), ("k", 3), ("n", 6)].iter().map(|&(k, v)| (k.to_string(), v)).collect();
        assert_eq!(construct("cor44", &args, &lim).unwrap(), cor44(13, 3, 6).unwrap());
        assert!(construct("thm412", &args, &lim).is_err());
        assert!(construct("bogus", &args, &lim).is_err());
        let mut extra = args.clone();
        extra.insert("m".into(), 2);
        assert!(matches!(construct("cor44", &extra, &lim), Err(Error::InvalidParams(_))));
        for id in FAMILY_IDS {
            assert!(family_params(id).is_some());
        }
    }

    #[test]
    fn every_family_certifies_non_rs() {
        use crate::certify::{non_rs_certificate, Verdict};
        let lim = Limits::default();
        let codes = vec![
            (cor44(13, 3, 6).unwrap(), 1),
            (thm412(3, 3, 4, 9).unwrap(), 1),
            (thm415(7, 2, 3, 14).unwrap(), 1),
            (thm415(11, 2, 3, 34).unwrap(), 1),
            (cor62(163, 3, 2, 6).unwrap(), 2),
            (thm63(7, 3, 3, 2, 6).unwrap(), 2),
            (thm64(73, 3, 3, 2, 8).unwrap(), 2),
            (hamming_lift(3, 2, 3, &lim).unwrap(), 1),
            (cor411(3, 3, &lim).unwrap(), 1),
        ];
        for (c, r) in codes {
            let spec = ConditionSpec::nonzero(c.ctx(), c.k(), r).unwrap();
            assert!(check_esym(c.ctx(), c.points(), &spec, &lim).unwrap().holds, "{}", c.family());
            let cert = non_rs_certificate(&c, &lim, false).unwrap();
            assert!(cert.is_mds, "{}", c.family());
            assert_eq!(cert.verdict, Verdict::NonRsCertified, "{}", c.family());
        }
    }

    #[test]
    fn constructions_are_deterministic() {
        let lim = Limits::default();
        assert_eq!(thm415(7, 2, 3, 14).unwrap(), thm415(7, 2, 3, 14).unwrap());
        assert_eq!(cor411(4, 5, &lim).unwrap(), cor411(4, 5, &lim).unwrap());
    }
}
