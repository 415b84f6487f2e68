use mdsforge::certify::{dual_code, mds_exhaustive, min_distance_bruteforce, non_rs_certificate, schur_square_dim, schur_square_dim_monomial};
use mdsforge::code::{is_arithmetic_progression, sumset, EvalCode, EvalSet, ExponentSet};
use mdsforge::conditions::{check_esym, search_eval_set, shift_transform, subset_sum_counts, ConditionSpec, SearchStrategy};
use mdsforge::field::{make_field, FieldContext, FieldElement};
use mdsforge::limits::Limits;
use mdsforge::matrix::{columns_independent, solve_square, MatrixFq};
use proptest::prelude::*;
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIELDS: [(u64, usize); 9] = [(2, 1), (2, 3), (2, 4), (3, 2), (5, 1), (7, 1), (13, 1), (3, 3), (5, 2)];

fn field(i: usize) -> FieldContext {
    let (p, m) = FIELDS[i % FIELDS.len()];
    make_field(p, m).unwrap()
}

fn elem(ctx: &FieldContext, rng: &mut ChaCha8Rng) -> FieldElement {
    ctx.from_index(rng.gen_range(0..ctx.order_u64().unwrap()))
}

fn nonzero(ctx: &FieldContext, rng: &mut ChaCha8Rng) -> FieldElement {
    ctx.from_index(rng.gen_range(1..ctx.order_u64().unwrap()))
}

fn eval_set(ctx: &FieldContext, n: usize, rng: &mut ChaCha8Rng) -> EvalSet {
    let q = ctx.order_u64().unwrap() as usize;
    let pts = index::sample(rng, q, n).into_iter().map(|i| ctx.from_index(i as u64)).collect();
    EvalSet::new(ctx, pts).unwrap()
}

fn random_matrix(ctx: &FieldContext, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> MatrixFq {
    let entries = (0..rows * cols).map(|_| elem(ctx, rng)).collect();
    MatrixFq::new(ctx, rows, cols, entries).unwrap()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn esym(ctx: &FieldContext, xs: &[FieldElement], r: usize) -> FieldElement {
    subsets(xs.len(), r).iter().fold(ctx.zero(), |acc, s| {
        let prod = s.iter().fold(ctx.one(), |p, &i| ctx.mul(&p, &xs[i]));
        ctx.add(&acc, &prod)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(fi in 0usize..9, seed in any::<u64>()) {
        let f = field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (elem(&f, &mut rng), elem(&f, &mut rng), elem(&f, &mut rng));
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
        prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a.clone());
        if !a.is_zero() {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        } else {
            prop_assert!(f.inv(&a).is_none());
        }
    }

    #[test]
    fn lagrange_and_frobenius(fi in 0usize..9, seed in any::<u64>()) {
        let f = field(fi);
        let q = f.order_u64().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = nonzero(&f, &mut rng);
        prop_assert_eq!(f.pow(&a, q - 1), f.one());
        let b = elem(&f, &mut rng);
        prop_assert_eq!(f.pow(&b, q), b.clone());
        let p = f.p();
        prop_assert_eq!(f.pow(&f.add(&a, &b), p), f.add(&f.pow(&a, p), &f.pow(&b, p)));
    }

    #[test]
    fn rank_identities(fi in 0usize..9, rows in 1usize..6, cols in 1usize..7, seed in any::<u64>()) {
        let f = field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = random_matrix(&f, rows, cols, &mut rng);
        if rows > 1 && rng.gen_bool(0.5) {
            // force a dependent row
            let combo: Vec<FieldElement> = (0..cols).map(|c| f.add(m.get(0, c), m.get(1 % rows, c))).collect();
            for (c, v) in combo.into_iter().enumerate() {
                m.set(rows - 1, c, v);
            }
        }
        let r = m.rank();
        let (red, pivots) = m.rref();
        prop_assert_eq!(red.rank(), r);
        prop_assert_eq!(pivots.len(), r);
        let mut order: Vec<usize> = (0..rows).collect();
        order.shuffle(&mut rng);
        let shuffled = MatrixFq::from_rows(&f, cols, order.iter().map(|&i| m.row(i).to_vec()).collect()).unwrap();
        prop_assert_eq!(shuffled.rank(), r);
        let ns = m.null_space();
        prop_assert_eq!(r + ns.rows(), cols);
        for i in 0..ns.rows() {
            prop_assert!(m.right_mul(ns.row(i)).unwrap().iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn solve_square_reproduces_rhs(fi in 0usize..9, n in 1usize..6, seed in any::<u64>()) {
        let f = field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(&f, n, n, &mut rng);
        let b: Vec<FieldElement> = (0..n).map(|_| elem(&f, &mut rng)).collect();
        match solve_square(&a, &b) {
            Ok(x) => prop_assert_eq!(a.right_mul(&x).unwrap(), b),
            Err(_) => prop_assert!(a.rank() < n),
        }
    }

    #[test]
    fn encode_is_linear(fi in 0usize..9, k in 1usize..5, seed in any::<u64>()) {
        let f = field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = f.order_u64().unwrap() as usize;
        let k = k.min(q);
        let n = rng.gen_range(k..=q.min(k + 5));
        let mut exps: Vec<u64> = index::sample(&mut rng, 8, k).into_iter().map(|e| e as u64).collect();
        exps.sort();
        let code = EvalCode::new(&f, eval_set(&f, n, &mut rng), ExponentSet::new(exps).unwrap()).unwrap();
        let u: Vec<FieldElement> = (0..k).map(|_| elem(&f, &mut rng)).collect();
        let w: Vec<FieldElement> = (0..k).map(|_| elem(&f, &mut rng)).collect();
        let (a, b) = (elem(&f, &mut rng), elem(&f, &mut rng));
        let mix: Vec<FieldElement> = u.iter().zip(&w).map(|(x, y)| f.add(&f.mul(&a, x), &f.mul(&b, y))).collect();
        let lhs = code.encode(&mix).unwrap();
        let (eu, ew) = (code.encode(&u).unwrap(), code.encode(&w).unwrap());
        let rhs: Vec<FieldElement> = eu.iter().zip(&ew).map(|(x, y)| f.add(&f.mul(&a, x), &f.mul(&b, y))).collect();
        prop_assert_eq!(lhs, rhs);
        let m_i = code.exponents().max() as usize;
        if n > m_i {
            prop_assert_eq!(code.generator_matrix().rank(), k);
            // nonzero codewords vanish on at most m_I points
            if u.iter().any(|e| !e.is_zero()) {
                prop_assert!(eu.iter().filter(|e| !e.is_zero()).count() >= n - m_i);
            }
        }
    }

    #[test]
    fn certificate_invariant_under_column_scaling(fi in 0usize..9, seed in any::<u64>()) {
        let f = field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = f.order_u64().unwrap() as usize;
        prop_assume!(q >= 6);
        let k = 3;
        let n = rng.gen_range(2 * k..=q.min(9));
        let code = EvalCode::new(&f, eval_set(&f, n, &mut rng), ExponentSet::without_one(k, rng.gen_range(1..k)).unwrap()).unwrap();
        let g = code.generator_matrix();
        let mut scaled = g.clone();
        for c in 0..n {
            let s = nonzero(&f, &mut rng);
            for r in 0..k {
                scaled.set(r, c, f.mul(g.get(r, c), &s));
            }
        }
        let lim = Limits::default();
        prop_assert_eq!(mds_exhaustive(&g, &lim).unwrap().is_mds, mds_exhaustive(&scaled, &lim).unwrap().is_mds);
        prop_assert_eq!(schur_square_dim(&g), schur_square_dim(&scaled));
        prop_assert_eq!(schur_square_dim(&g), schur_square_dim_monomial(&code));
        let cert = non_rs_certificate(&code, &lim, false).unwrap();
        if cert.is_mds {
            prop_assert!(cert.schur_dim >= 2 * k - 1);
            prop_assert!(cert.schur_dim <= n.min(k * (k + 1) / 2));
            let d = dual_code(&g).unwrap();
            prop_assert!(mds_exhaustive(&d, &lim).unwrap().is_mds);
            for s in subsets(n, k) {
                prop_assert!(columns_independent(&g, &s).unwrap());
            }
        }
    }

    #[test]
    fn shift_transform_moves_the_forbidden_value(seed in any::<u64>()) {
        let f = field([4usize, 5, 6, 8][(seed % 4) as usize]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = 3;
        let q = f.order_u64().unwrap() as usize;
        let n = rng.gen_range(k..=q.min(8));
        let b = eval_set(&f, n, &mut rng);
        let delta = elem(&f, &mut rng);
        prop_assume!(f.inv(&f.constant(k as u64)).is_some());
        let shifted = shift_transform(&f, &b, &delta, k).unwrap();
        let lim = Limits::default();
        let before = check_esym(&f, &b, &ConditionSpec::new(k, 1, delta).unwrap(), &lim).unwrap();
        let after = check_esym(&f, &shifted, &ConditionSpec::nonzero(&f, k, 1).unwrap(), &lim).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn subset_sum_table_counts_every_subset(fi in 0usize..9, seed in any::<u64>()) {
        let f = field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = f.order_u64().unwrap() as usize;
        let n = rng.gen_range(1..=q.min(8));
        let t = eval_set(&f, n, &mut rng);
        let k = rng.gen_range(1..=n);
        let table = subset_sum_counts(&f, &t, k, &Limits::default()).unwrap();
        for j in 0..=k {
            let mut expect = vec![0u128; q];
            for s in subsets(n, j) {
                let sum = s.iter().fold(f.zero(), |acc, &i| f.add(&acc, &t.points()[i]));
                expect[f.index_of(&sum) as usize] += 1;
            }
            prop_assert_eq!(table.row(j), &expect[..]);
        }
    }

    #[test]
    fn framework_equivalence(fi in 0usize..9, seed in any::<u64>()) {
        let f = field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = f.order_u64().unwrap() as usize;
        let k = rng.gen_range(2..=4usize.min(q));
        let r = rng.gen_range(1..k);
        let n = rng.gen_range(k..=q.min(9));
        let t = eval_set(&f, n, &mut rng);
        let lim = Limits::default();
        let cond = check_esym(&f, &t, &ConditionSpec::nonzero(&f, k, r).unwrap(), &lim).unwrap();
        let code = EvalCode::new(&f, t, ExponentSet::without_one(k, r).unwrap()).unwrap();
        let mds = mds_exhaustive(&code.generator_matrix(), &lim).unwrap();
        prop_assert_eq!(cond.holds, mds.is_mds);
        prop_assert_eq!(cond.witness, mds.witness);
    }
}

#[test]
fn enumeration_and_determinism() {
    for (p, m) in FIELDS {
        let f = make_field(p, m).unwrap();
        let all = f.enumerate(1 << 20).unwrap();
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len() as u64, f.order_u64().unwrap());
        assert_eq!(make_field(p, m).unwrap().modulus(), f.modulus());
    }
}

#[test]
fn sumset_size_detects_progressions() {
    // every I ⊆ {0..10} with |I| >= 3
    for mask in 0u32..(1 << 11) {
        if mask.count_ones() < 3 {
            continue;
        }
        let exps: Vec<u64> = (0..11).filter(|i| mask >> i & 1 == 1).collect();
        let i = ExponentSet::new(exps).unwrap();
        assert_eq!(sumset(&i).k() == 2 * i.k() - 1, is_arithmetic_progression(&i));
    }
}

#[test]
fn vieta_on_split_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    while done < 200 {
        let p = [7u64, 11, 13][rng.gen_range(0..3)];
        let f = make_field(p, 1).unwrap();
        let k = rng.gen_range(2..=4usize);
        // monic, coefficients c_0..c_{k-1}
        let coeffs: Vec<FieldElement> = (0..k).map(|_| elem(&f, &mut rng)).collect();
        let roots: Vec<FieldElement> = f
            .enumerate(1 << 10)
            .unwrap()
            .into_iter()
            .filter(|x| {
                let mut v = f.one();
                for c in coeffs.iter().rev() {
                    v = f.add(&f.mul(&v, x), c);
                }
                v.is_zero()
            })
            .collect();
        if roots.len() != k {
            continue;
        }
        for r in 1..=k {
            let mut expect = coeffs[k - r].clone();
            if r % 2 == 1 {
                expect = f.neg(&expect);
            }
            assert_eq!(esym(&f, &roots, r), expect);
        }
        done += 1;
    }
}

#[test]
fn mds_matches_brute_force_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let lim = Limits::default();
    for _ in 0..60 {
        let f = field(rng.gen_range(0..FIELDS.len()));
        let q = f.order_u64().unwrap() as usize;
        let k = rng.gen_range(1..=3usize.min(q));
        let n = rng.gen_range(k..=q.min(k + 4));
        let mut exps: Vec<u64> = index::sample(&mut rng, 6, k).into_iter().map(|e| e as u64).collect();
        exps.sort();
        let code = EvalCode::new(&f, eval_set(&f, n, &mut rng), ExponentSet::new(exps).unwrap()).unwrap();
        if code.generator_matrix().rank() < k {
            continue;
        }
        let mds = mds_exhaustive(&code.generator_matrix(), &lim).unwrap().is_mds;
        let (d, _) = min_distance_bruteforce(&code, &lim).unwrap();
        assert_eq!(mds, d == n - k + 1);
    }
}

#[test]
fn exhaustive_search_none_means_none_exist() {
    let lim = Limits::default();
    for (p, m, n, k) in [(7u64, 1usize, 5usize, 3usize), (5, 1, 4, 3), (2, 3, 5, 3), (3, 2, 6, 3)] {
        let f = make_field(p, m).unwrap();
        let spec = ConditionSpec::nonzero(&f, k, 1).unwrap();
        let found = search_eval_set(&f, n, &spec, SearchStrategy::Exhaustive, &lim).unwrap();
        let q = f.order_u64().unwrap() as usize;
        let any = subsets(q, n).into_iter().any(|s| {
            let t = EvalSet::new(&f, s.iter().map(|&i| f.from_index(i as u64)).collect()).unwrap();
            check_esym(&f, &t, &spec, &lim).unwrap().holds
        });
        assert_eq!(found.is_some(), any, "GF({p}^{m}) n={n} k={k}");
        if let Some(o) = found {
            assert!(check_esym(&f, &o.set, &spec, &lim).unwrap().holds);
        }
    }
}
