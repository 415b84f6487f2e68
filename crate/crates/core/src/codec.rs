//! Systematic encoding and erasure decoding for MDS evaluation codes.

use crate::code::EvalCode;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::matrix::{solve_square, MatrixFq};

/// A received word; `None` marks an erased coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReceivedWord {
    symbols: Vec<Option<FieldElement>>,
}

impl ReceivedWord {
    pub fn new(symbols: Vec<Option<FieldElement>>) -> Self {
        ReceivedWord { symbols }
    }

    /// `codeword` with the listed positions erased.
    pub fn erase(codeword: &[FieldElement], positions: &[usize]) -> Result<Self> {
        let mut symbols: Vec<Option<FieldElement>> = codeword.iter().cloned().map(Some).collect();
        for &p in positions {
            let slot = symbols
                .get_mut(p)
                .ok_or(Error::IndexOutOfRange { index: p, bound: codeword.len() })?;
            *slot = None;
        }
        Ok(ReceivedWord { symbols })
    }

    pub fn symbols(&self) -> &[Option<FieldElement>] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn erasures(&self) -> usize {
        self.symbols.iter().filter(|s| s.is_none()).count()
    }
}

/// Row-equivalent [I_k | A]. Needs full row rank and invertible leading k columns.
pub fn systematic_form(g: &MatrixFq) -> Result<MatrixFq> {
    let k = g.rows();
    let rank = g.rank();
    if rank != k {
        return Err(Error::RankDeficient { expected: k, found: rank });
    }
    let (r, pivots) = g.rref();
    if pivots.iter().copied().ne(0..k) {
        return Err(Error::Singular);
    }
    Ok(r)
}

/// Recovers the message from any k surviving coordinates (the lowest-indexed
/// ones), then checks the rest of the word against the re-encoding.
pub fn decode_erasures(code: &EvalCode, word: &ReceivedWord) -> Result<Vec<FieldElement>> {
    let (n, k) = (code.n(), code.k());
    if word.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: word.len() });
    }
    let ctx = code.ctx();
    if let Some(e) = word.symbols().iter().flatten().find(|e| !ctx.contains(e)) {
        return Err(Error::InvalidElement(format!("{e:?} does not belong to the field")));
    }
    let erased = word.erasures();
    if erased > n - k {
        return Err(Error::TooManyErasures { erased, max: n - k });
    }
    let survivors: Vec<usize> = (0..n).filter(|&i| word.symbols()[i].is_some()).take(k).collect();
    let g = code.generator_matrix();
    let gs = g.select_cols(&survivors)?.transpose();
    let y: Vec<FieldElement> = survivors.iter().map(|&i| word.symbols()[i].clone().unwrap()).collect();
    let message = solve_square(&gs, &y)?;
    let codeword = g.left_mul(&message)?;
    for (i, s) in word.symbols().iter().enumerate() {
        if let Some(s) = s {
            if *s != codeword[i] {
                return Err(Error::Inconsistent { position: i });
            }
        }
    }
    Ok(message)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::cor44;
    use crate::field::make_field;

    #[test]
    fn systematic_form_examples() {
        let code = cor44(13, 3, 6).unwrap();
        let g = code.generator_matrix();
        let s = systematic_form(&g).unwrap();
        let f = code.ctx();
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(s.get(r, c), &if r == c { f.one() } else { f.zero() });
            }
        }
        assert_eq!(g.stack(&s).unwrap().rank(), 3);
        assert_eq!(systematic_form(&s).unwrap(), s);
        let z = MatrixFq::zeros(f, 2, 4);
        assert_eq!(systematic_form(&z).unwrap_err(), Error::RankDeficient { expected: 2, found: 0 });
        let one = f.one();
        let zero = f.zero();
        let m = MatrixFq::from_rows(f, 3, vec![vec![zero.clone(), one.clone(), zero.clone()], vec![zero.clone(), zero, one]]).unwrap();
        assert_eq!(systematic_form(&m).unwrap_err(), Error::Singular);
    }

    #[test]
    fn decode_roundtrip() {
        let code = cor44(13, 3, 6).unwrap();
        let f = code.ctx();
        let msg = vec![f.constant(1), f.constant(2), f.constant(3)];
        let cw = code.encode(&msg).unwrap();
        assert_eq!(decode_erasures(&code, &ReceivedWord::erase(&cw, &[]).unwrap()).unwrap(), msg);
        assert_eq!(decode_erasures(&code, &ReceivedWord::erase(&cw, &[0, 2, 4]).unwrap()).unwrap(), msg);
        let too_many = ReceivedWord::erase(&cw, &[0, 1, 2, 3]).unwrap();
        assert_eq!(decode_erasures(&code, &too_many).unwrap_err(), Error::TooManyErasures { erased: 4, max: 3 });
    }

    #[test]
    fn decode_detects_corruption() {
        let code = cor44(13, 3, 6).unwrap();
        let f = code.ctx();
        let msg = vec![f.constant(4), f.constant(0), f.constant(9)];
        let mut cw = code.encode(&msg).unwrap();
        cw[5] = f.add(&cw[5], &f.one());
        let w = ReceivedWord::erase(&cw, &[1]).unwrap();
        assert_eq!(decode_erasures(&code, &w).unwrap_err(), Error::Inconsistent { position: 5 });
        let short = ReceivedWord::new(vec![None; 5]);
        assert!(matches!(decode_erasures(&code, &short), Err(Error::DimensionMismatch { .. })));
        let other = make_field(7, 2).unwrap();
        let mut alien: Vec<Option<FieldElement>> = code.encode(&msg).unwrap().into_iter().map(Some).collect();
        alien[0] = Some(other.zeta());
        assert!(matches!(decode_erasures(&code, &ReceivedWord::new(alien)), Err(Error::InvalidElement(_))));
    }
}
