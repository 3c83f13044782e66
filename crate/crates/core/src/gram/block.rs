//! Gram matrices on full word bases.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::linalg::{signature, Matrix, Signature};
use super::GramContext;
use crate::qfield::Cyclotomic;
use crate::qspec::{RealForm, RootOfUnitySpec};
use crate::rootdata::{RootSystem, Weight};
use crate::{Error, Result};

/// The form on all words `F_{i_1} ... F_{i_k} v_lambda` of one weight space.
#[derive(Clone, Debug)]
pub struct GramBlock {
    pub eta: Vec<i64>,
    pub weight: Weight,
    /// Lexicographically ordered; `(i_1, ..., i_k)` is `F_{i_1} ... F_{i_k} v`.
    pub words: Vec<Vec<u8>>,
    pub matrix: Matrix,
    pub rank: usize,
    pub signature: Signature,
}

/// All arrangements of the multiset `eta`, in lexicographic order.
pub fn words_of(eta: &[i64]) -> Vec<Vec<u8>> {
    fn go(rem: &mut [i64], cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if rem.iter().all(|&r| r == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..rem.len() {
            if rem[i] > 0 {
                rem[i] -= 1;
                cur.push(i as u8);
                go(rem, cur, out);
                cur.pop();
                rem[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut eta.to_vec(), &mut Vec::new(), &mut out);
    out
}

struct FullBlock {
    words: Vec<Vec<u8>>,
    index: BTreeMap<Vec<u8>, usize>,
    matrix: Matrix,
    null: Vec<bool>,
}

/// Memoized full-word Gram blocks for one `(lambda, form)`.
pub struct WordGram<'c, 'a> {
    ctx: &'c GramContext<'a>,
    blocks: BTreeMap<Vec<i64>, FullBlock>,
}

impl<'c, 'a> WordGram<'c, 'a> {
    pub fn new(ctx: &'c GramContext<'a>) -> Self {
        Self {
            ctx,
            blocks: BTreeMap::new(),
        }
    }

    /// Words and Gram matrix of the weight space `lambda - sum eta_i alpha_i`.
    pub fn block(&mut self, eta: &[i64]) -> (&[Vec<u8>], &Matrix) {
        self.ensure(eta);
        let b = &self.blocks[eta];
        (&b.words, &b.matrix)
    }

    fn ensure(&mut self, eta: &[i64]) {
        if self.blocks.contains_key(eta) {
            return;
        }
        let n = eta.len();
        for i in 0..n {
            if eta[i] > 0 {
                let mut e = eta.to_vec();
                e[i] -= 1;
                self.ensure(&e);
            }
        }
        let block = self.compute(eta);
        self.blocks.insert(eta.to_vec(), block);
    }

    fn compute(&self, eta: &[i64]) -> FullBlock {
        let ctx = self.ctx;
        let n = eta.len();
        let zero = ctx.zero();
        let words = words_of(eta);
        let index: BTreeMap<Vec<u8>, usize> = words
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, w)| (w, k))
            .collect();
        if eta.iter().all(|&e| e == 0) {
            return FullBlock {
                words,
                index,
                matrix: vec![vec![ctx.one()]],
                null: vec![false],
            };
        }
        let a = ctx.rs.cartan();
        let lower: Vec<Option<&FullBlock>> = (0..n)
            .map(|i| {
                (eta[i] > 0).then(|| {
                    let mut e = eta.to_vec();
                    e[i] -= 1;
                    &self.blocks[&e]
                })
            })
            .collect();
        // E_i on each word: sum over positions t with w_t = i of
        // [lambda_i - sum_{s>t} A_{i,w_s}]_{q_i} times the word with t removed
        let contractions: Vec<Vec<Vec<(Cyclotomic, usize)>>> = words
            .iter()
            .map(|w| {
                (0..n)
                    .map(|i| {
                        let Some(lb) = lower[i] else {
                            return Vec::new();
                        };
                        let mut out = Vec::new();
                        let mut shift = 0i64;
                        for t in (0..w.len()).rev() {
                            if w[t] as usize == i {
                                let x = ctx.lambda.coords[i] - crate::Rat::from_integer(shift);
                                let c = ctx.h(i, x);
                                if !c.is_zero() {
                                    let mut rest = w.clone();
                                    rest.remove(t);
                                    let idx = lb.index[&rest];
                                    if !lb.null[idx] {
                                        out.push((c, idx));
                                    }
                                }
                            }
                            shift += a[i][w[t] as usize];
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        let nw = words.len();
        let mut matrix = vec![vec![zero.clone(); nw]; nw];
        for x in 0..nw {
            let i = words[x][0] as usize;
            let lb = lower[i].unwrap();
            let ux = lb.index[&words[x][1..]];
            if lb.null[ux] {
                continue;
            }
            let row = &lb.matrix[ux];
            for y in x..nw {
                let mut acc = zero.clone();
                for (c, idx) in &contractions[y][i] {
                    if !row[*idx].is_zero() {
                        acc = &acc + &(c * &row[*idx]);
                    }
                }
                if acc.is_zero() {
                    continue;
                }
                if ctx.sign(i) < 0 {
                    acc = -acc;
                }
                matrix[y][x] = acc.clone();
                matrix[x][y] = acc;
            }
        }
        let null = matrix
            .iter()
            .map(|r| r.iter().all(|v| v.is_zero()))
            .collect();
        FullBlock {
            words,
            index,
            matrix,
            null,
        }
    }
}

/// Full Gram block of the weight space `lambda - sum target_i alpha_i`.
///
/// The number of words grows like a multinomial in the height; use
/// [`super::module_report`] for whole modules.
pub fn gram_block(
    rs: &RootSystem,
    spec: &RootOfUnitySpec,
    lambda: &Weight,
    form: &RealForm,
    target: &[i64],
) -> Result<GramBlock> {
    if target.len() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            got: target.len(),
        });
    }
    if target.iter().any(|&t| t < 0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "target {target:?} has a negative entry"
        )));
    }
    let ctx = GramContext::new(rs, spec, lambda, form)?;
    let mut wg = WordGram::new(&ctx);
    let (words, matrix) = wg.block(target);
    let sig = signature(matrix);
    Ok(GramBlock {
        eta: target.to_vec(),
        weight: rs.lower(lambda, target),
        words: words.to_vec(),
        matrix: matrix.clone(),
        rank: sig.rank(),
        signature: sig,
    })
}
