//! Monomial evaluation codes C(T, I) and generalized Reed-Solomon controls.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::matrix::MatrixFq;

/// Strictly increasing monomial exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentSet {
    exps: Vec<u64>,
}

impl ExponentSet {
    pub fn new(exps: Vec<u64>) -> Result<Self> {
        if exps.is_empty() {
            return Err(Error::InvalidParams("exponent set must be nonempty".into()));
        }
        if exps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParams(format!("exponents {exps:?} are not strictly increasing")));
        }
        Ok(ExponentSet { exps })
    }

    /// {0, 1, ..., k} with k - r removed.
    pub fn without_one(k: usize, r: usize) -> Result<Self> {
        if r == 0 || r > k {
            return Err(Error::InvalidParams(format!("need 1 <= r <= k, got r = {r}, k = {k}")));
        }
        let gap = (k - r) as u64;
        Self::new((0..=k as u64).filter(|&e| e != gap).collect())
    }

    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    pub fn k(&self) -> usize {
        self.exps.len()
    }

    /// m_I, the largest exponent.
    pub fn max(&self) -> u64 {
        *self.exps.last().unwrap()
    }

    /// If the set is {0..k}\{k-r} for some 1 <= r <= k, returns r.
    pub fn gap_order(&self) -> Option<usize> {
        let k = self.k();
        (1..=k).find(|&r| ExponentSet::without_one(k, r).map_or(false, |s| &s == self))
    }
}

/// I + I, sorted and deduplicated.
pub fn sumset(i: &ExponentSet) -> ExponentSet {
    let sums: BTreeSet<u64> = i
        .exps
        .iter()
        .enumerate()
        .flat_map(|(a, &x)| i.exps[a..].iter().map(move |&y| x + y))
        .collect();
    ExponentSet { exps: sums.into_iter().collect() }
}

/// Constant consecutive differences; sets of one or two elements qualify.
pub fn is_arithmetic_progression(i: &ExponentSet) -> bool {
    let e = &i.exps;
    e.len() <= 2 || e.windows(3).all(|w| w[1] - w[0] == w[2] - w[1])
}

/// Ordered, pairwise-distinct evaluation points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalSet {
    points: Vec<FieldElement>,
}

impl EvalSet {
    pub fn new(ctx: &FieldContext, points: Vec<FieldElement>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParams("evaluation set must be nonempty".into()));
        }
        if let Some(e) = points.iter().find(|e| !ctx.contains(e)) {
            return Err(Error::InvalidElement(format!("{e:?} does not belong to the field")));
        }
        let mut seen = HashSet::with_capacity(points.len());
        for (i, pt) in points.iter().enumerate() {
            if !seen.insert(pt) {
                return Err(Error::InvalidParams(format!("evaluation point {pt:?} repeated at index {i}")));
            }
        }
        Ok(EvalSet { points })
    }

    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// The code C(T, I) = {(f(α))_{α∈T} : f ∈ span{x^i : i ∈ I}}.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalCode {
    ctx: FieldContext,
    points: EvalSet,
    exponents: ExponentSet,
    family: String,
    params: BTreeMap<String, Value>,
}

impl EvalCode {
    pub fn new(ctx: &FieldContext, points: EvalSet, exponents: ExponentSet) -> Result<Self> {
        Self::tagged(ctx, points, exponents, "custom", BTreeMap::new())
    }

    pub fn tagged(
        ctx: &FieldContext,
        points: EvalSet,
        exponents: ExponentSet,
        family: &str,
        params: BTreeMap<String, Value>,
    ) -> Result<Self> {
        if exponents.k() > points.len() {
            return Err(Error::InvalidParams(format!(
                "dimension {} exceeds length {}",
                exponents.k(),
                points.len()
            )));
        }
        if let Some(e) = points.points().iter().find(|e| !ctx.contains(e)) {
            return Err(Error::InvalidElement(format!("{e:?} does not belong to the field")));
        }
        Ok(EvalCode { ctx: ctx.clone(), points, exponents, family: family.to_string(), params })
    }

    pub fn with_family(mut self, family: &str, params: BTreeMap<String, Value>) -> Self {
        self.family = family.to_string();
        self.params = params;
        self
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn points(&self) -> &EvalSet {
        &self.points
    }

    pub fn exponents(&self) -> &ExponentSet {
        &self.exponents
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn params(&self) -> &BTreeMap<String, Value> {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn k(&self) -> usize {
        self.exponents.k()
    }

    /// k×n matrix with entry (j, i) = α_i^{I[j]}.
    pub fn generator_matrix(&self) -> MatrixFq {
        monomial_matrix(&self.ctx, self.points.points(), self.exponents.exps())
    }

    /// Evaluates Σ message[j]·x^{I[j]} at every point.
    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if message.len() != self.k() {
            return Err(Error::DimensionMismatch { expected: self.k(), found: message.len() });
        }
        if let Some(e) = message.iter().find(|e| !self.ctx.contains(e)) {
            return Err(Error::InvalidElement(format!("{e:?} does not belong to the field")));
        }
        self.generator_matrix().left_mul(message)
    }
}

/// Rows are exponents, columns are points; 0^0 = 1.
pub fn monomial_matrix(ctx: &FieldContext, points: &[FieldElement], exps: &[u64]) -> MatrixFq {
    let entries = exps
        .iter()
        .flat_map(|&e| points.iter().map(move |a| ctx.pow(a, e)))
        .collect();
    MatrixFq::new(ctx, exps.len(), points.len(), entries).expect("shape is consistent")
}

pub fn generator_matrix(code: &EvalCode) -> MatrixFq {
    code.generator_matrix()
}

pub fn encode(code: &EvalCode, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
    code.encode(message)
}

/// GRS_k(α, v): rows v_i·α_i^j for j < k.
#[derive(Debug, Clone)]
pub struct GrsSpec {
    ctx: FieldContext,
    alpha: EvalSet,
    multipliers: Vec<FieldElement>,
    k: usize,
}

impl GrsSpec {
    pub fn new(ctx: &FieldContext, alpha: EvalSet, multipliers: Vec<FieldElement>, k: usize) -> Result<Self> {
        if multipliers.len() != alpha.len() {
            return Err(Error::DimensionMismatch { expected: alpha.len(), found: multipliers.len() });
        }
        if let Some(i) = multipliers.iter().position(|v| v.is_zero()) {
            return Err(Error::ZeroMultiplier(i));
        }
        if k == 0 || k > alpha.len() {
            return Err(Error::InvalidParams(format!("need 1 <= k <= n, got k = {k}")));
        }
        Ok(GrsSpec { ctx: ctx.clone(), alpha, multipliers, k })
    }

    /// Plain Reed-Solomon: all multipliers one.
    pub fn reed_solomon(ctx: &FieldContext, alpha: EvalSet, k: usize) -> Result<Self> {
        let v = vec![ctx.one(); alpha.len()];
        Self::new(ctx, alpha, v, k)
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

pub fn grs_generator(spec: &GrsSpec) -> MatrixFq {
    let ctx = &spec.ctx;
    let exps: Vec<u64> = (0..spec.k as u64).collect();
    let mut g = monomial_matrix(ctx, spec.alpha.points(), &exps);
    for j in 0..g.rows() {
        for (i, v) in spec.multipliers.iter().enumerate() {
            let scaled = ctx.mul(g.get(j, i), v);
            g.set(j, i, scaled);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn ints(ctx: &FieldContext, v: &[u64]) -> Vec<FieldElement> {
        v.iter().map(|&x| ctx.constant(x)).collect()
    }

    #[test]
    fn exponent_set_validation() {
        assert!(ExponentSet::new(vec![]).is_err());
        assert!(ExponentSet::new(vec![0, 2, 2]).is_err());
        assert!(ExponentSet::new(vec![3, 1]).is_err());
        let i = ExponentSet::without_one(3, 1).unwrap();
        assert_eq!(i.exps(), &[0, 1, 3]);
        assert_eq!(i.max(), 3);
        assert_eq!(i.gap_order(), Some(1));
        assert_eq!(ExponentSet::without_one(3, 2).unwrap().exps(), &[0, 2, 3]);
        assert_eq!(ExponentSet::new(vec![0, 1, 2]).unwrap().gap_order(), None);
        assert_eq!(ExponentSet::new(vec![0, 5]).unwrap().gap_order(), None);
    }

    #[test]
    fn sumset_examples() {
        let s = |v: Vec<u64>| sumset(&ExponentSet::new(v).unwrap()).exps().to_vec();
        assert_eq!(s(vec![0, 1, 3]), vec![0, 1, 2, 3, 4, 6]);
        assert_eq!(s(vec![0, 1, 2]), vec![0, 1, 2, 3, 4]);
        assert_eq!(s(vec![0, 1, 2, 4]), vec![0, 1, 2, 3, 4, 5, 6, 8]);
    }

    #[test]
    fn ap_examples() {
        let ap = |v: Vec<u64>| is_arithmetic_progression(&ExponentSet::new(v).unwrap());
        assert!(ap(vec![0, 2, 4]));
        assert!(!ap(vec![0, 1, 3]));
        assert!(ap(vec![7]));
        assert!(ap(vec![1, 9]));
    }

    /// |I+I| = 2k-1 exactly for progressions, over every I ⊆ {0..10} with k >= 3.
    #[test]
    fn sumset_size_characterizes_progressions() {
        for mask in 0u32..(1 << 11) {
            let exps: Vec<u64> = (0..11).filter(|b| mask >> b & 1 == 1).collect();
            if exps.len() < 3 {
                continue;
            }
            let k = exps.len();
            let i = ExponentSet::new(exps).unwrap();
            let s = sumset(&i).k();
            assert!(s >= 2 * k - 1);
            assert_eq!(s == 2 * k - 1, is_arithmetic_progression(&i), "{:?}", i.exps());
        }
    }

    #[test]
    fn generator_matrix_examples() {
        let f = make_field(13, 1).unwrap();
        let t = EvalSet::new(&f, ints(&f, &[0, 1, 2, 3, 4, 5])).unwrap();
        let code = EvalCode::new(&f, t.clone(), ExponentSet::new(vec![0, 1, 3]).unwrap()).unwrap();
        let g = code.generator_matrix();
        assert_eq!(g.row(0), ints(&f, &[1, 1, 1, 1, 1, 1]).as_slice());
        assert_eq!(g.row(1), ints(&f, &[0, 1, 2, 3, 4, 5]).as_slice());
        assert_eq!(g.row(2), ints(&f, &[0, 1, 8, 1, 12, 8]).as_slice());

        let constant = EvalCode::new(&f, t, ExponentSet::new(vec![0]).unwrap()).unwrap();
        assert_eq!(constant.generator_matrix().row(0), ints(&f, &[1; 6]).as_slice());

        let single = EvalSet::new(&f, ints(&f, &[1])).unwrap();
        assert!(EvalCode::new(&f, single.clone(), ExponentSet::new(vec![0, 5]).unwrap()).is_err());
        let g = monomial_matrix(&f, single.points(), &[0, 5]);
        assert_eq!(g.column(0), ints(&f, &[1, 1]));
    }

    #[test]
    fn encode_examples() {
        let f = make_field(13, 1).unwrap();
        let pts = ints(&f, &[0, 1, 2, 3, 4, 5]);
        let t = EvalSet::new(&f, pts.clone()).unwrap();
        let code = EvalCode::new(&f, t, ExponentSet::new(vec![0, 1, 3]).unwrap()).unwrap();
        assert_eq!(code.encode(&ints(&f, &[0, 0, 0])).unwrap(), ints(&f, &[0; 6]));
        assert_eq!(code.encode(&ints(&f, &[0, 1, 0])).unwrap(), code.generator_matrix().row(1));
        let word = code.encode(&ints(&f, &[1, 0, 12])).unwrap();
        let expect: Vec<_> = pts.iter().map(|a| f.add(&f.one(), &f.mul(&f.constant(12), &f.pow(a, 3)))).collect();
        assert_eq!(word, expect);
        assert!(matches!(code.encode(&ints(&f, &[1])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn eval_set_rejects_duplicates() {
        let f = make_field(7, 1).unwrap();
        assert!(EvalSet::new(&f, ints(&f, &[1, 2, 1])).is_err());
        assert!(EvalSet::new(&f, vec![]).is_err());
    }

    #[test]
    fn grs_examples() {
        let f = make_field(13, 1).unwrap();
        let a = EvalSet::new(&f, ints(&f, &[1, 2, 3])).unwrap();
        let g = grs_generator(&GrsSpec::reed_solomon(&f, a.clone(), 2).unwrap());
        assert_eq!(g.row(0), ints(&f, &[1, 1, 1]).as_slice());
        assert_eq!(g.row(1), ints(&f, &[1, 2, 3]).as_slice());
        let v = ints(&f, &[4, 5, 6]);
        let g1 = grs_generator(&GrsSpec::new(&f, a.clone(), v.clone(), 1).unwrap());
        assert_eq!(g1.row(0), v.as_slice());
        assert_eq!(
            GrsSpec::new(&f, a, ints(&f, &[1, 0, 1]), 2).unwrap_err(),
            Error::ZeroMultiplier(1)
        );
    }
}
