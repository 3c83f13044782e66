//! Contravariant forms on highest-weight modules of `U_q^fin`.
//!
//! The module `L^fin(lambda)` is the quotient of the span of lowering words
//! `F_{i_1} ... F_{i_k} v_lambda` by the radical of the form determined by
//!
//! ```text
//! <v_lambda, v_lambda> = 1,    <F_i u, w> = s_i <u, E_i w>,
//! E_i F_j = F_j E_i + delta_ij [H_i]_{q_i},
//! ```
//!
//! where `[H_i]` acts on a vector of weight `mu` by `[(mu, alpha_i^vee)]_{q_i}`
//! and `s` is the sign vector of the real form. All values are real, so the
//! form is symmetric.
//!
//! Two engines share this recursion:
//!
//! * [`gram_block`] materializes the full Gram matrix on all words of one
//!   weight space, in lexicographic order (exponential in the height).
//! * [`module_report`] walks the weight spaces height by height keeping only a
//!   basis of the quotient, together with the `E_i` and `F_i` actions on it,
//!   so the cost is governed by the dimension of the irreducible module.

mod block;
mod linalg;
mod scan;
mod shift;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_integer::Integer;

use crate::qfield::{Cyclotomic, QNumbers};
use crate::qspec::{RealForm, RootOfUnitySpec};
use crate::rootdata::{freudenthal_by_depth, RootSystem, Weight};
use crate::{Error, Rat, Result};

pub use block::{gram_block, GramBlock, WordGram};
pub use linalg::{invert, mat_mul, rank, row_basis, signature, Matrix, Signature};
pub use scan::{
    character_stability_scan, classical_limit_scan, LimitStage, LimitStatus, StabilityVerdict,
};
pub use shift::{
    classical_character_check, shift_decompose, verify_shift_equivalence,
    verify_shift_equivalence_batch, ShiftDecomposition, ShiftReport,
};

/// Default number of height levels explored by [`module_report`].
pub const DEFAULT_HEIGHT_BUDGET: usize = 40;

/// Shared evaluation data for one `(lambda, form)`.
pub struct GramContext<'a> {
    pub rs: &'a RootSystem,
    pub spec: &'a RootOfUnitySpec,
    pub lambda: Weight,
    pub form: RealForm,
    qn: QNumbers,
    cache: RefCell<BTreeMap<(usize, Rat), Cyclotomic>>,
}

/// Conductor carrying `q_j^{x}` for every coordinate `x` of `lambda`.
fn conductor_for(spec: &RootOfUnitySpec, lambda: &Weight) -> u64 {
    let l = lambda.coords.iter().fold(1i64, |acc, c| acc.lcm(c.denom()));
    (spec.q.m() * l) as u64
}

impl<'a> GramContext<'a> {
    pub fn new(
        rs: &'a RootSystem,
        spec: &'a RootOfUnitySpec,
        lambda: &Weight,
        form: &RealForm,
    ) -> Result<Self> {
        let n = rs.rank();
        if lambda.rank() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: lambda.rank(),
            });
        }
        if form.rank() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: form.rank(),
            });
        }
        if spec.rank() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: spec.rank(),
            });
        }
        let qn = QNumbers::with_conductor(spec.q, conductor_for(spec, lambda));
        Ok(Self {
            rs,
            spec,
            lambda: lambda.clone(),
            form: form.clone(),
            qn,
            cache: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn zero(&self) -> Cyclotomic {
        self.qn.zero()
    }

    pub fn one(&self) -> Cyclotomic {
        self.qn.one()
    }

    /// `[x]_{q_j}`, cached.
    pub fn h(&self, j: usize, x: Rat) -> Cyclotomic {
        if let Some(v) = self.cache.borrow().get(&(j, x)) {
            return v.clone();
        }
        let v = self
            .qn
            .qint_rat(x, self.spec.d[j])
            .expect("conductor carries every weight coordinate");
        self.cache.borrow_mut().insert((j, x), v.clone());
        v
    }

    /// `(mu, alpha_j^vee)` for `mu = lambda - sum eta_k alpha_k`.
    pub fn weight_coord(&self, eta: &[i64], j: usize) -> Rat {
        let a = self.rs.cartan();
        let shift: i64 = eta.iter().enumerate().map(|(k, &e)| e * a[j][k]).sum();
        self.lambda.coords[j] - Rat::from_integer(shift)
    }

    pub fn sign(&self, i: usize) -> i64 {
        self.form.s[i] as i64
    }
}

/// One weight space of the irreducible quotient.
struct Level {
    words: Vec<Vec<u8>>,
    gram: Matrix,
    /// `e_action[j]`: columns are `E_j b` in the basis of `eta - e_j`.
    e_action: Vec<Option<Matrix>>,
    /// `f_from[i]`: columns are `F_i b'` for `b'` in the basis of `eta - e_i`.
    f_from: Vec<Option<Matrix>>,
    candidates: usize,
    signature: Signature,
}

impl Level {
    fn rank(&self) -> usize {
        self.words.len()
    }
}

fn minus(eta: &[i64], i: usize) -> Option<Vec<i64>> {
    if eta[i] == 0 {
        return None;
    }
    let mut e = eta.to_vec();
    e[i] -= 1;
    Some(e)
}

fn column(m: &Matrix, c: usize) -> Vec<Cyclotomic> {
    m.iter().map(|row| row[c].clone()).collect()
}

/// Height-by-height construction of the irreducible quotient.
pub struct QuotientModule<'a> {
    ctx: GramContext<'a>,
    levels: BTreeMap<Vec<i64>, Level>,
    /// Non-empty weight spaces per height.
    heights: Vec<Vec<Vec<i64>>>,
    truncated: bool,
}

impl<'a> QuotientModule<'a> {
    /// Build all weight spaces up to `height_budget` levels below the top.
    pub fn build(ctx: GramContext<'a>, height_budget: usize) -> Self {
        let n = ctx.rs.rank();
        let mut me = Self {
            ctx,
            levels: BTreeMap::new(),
            heights: Vec::new(),
            truncated: false,
        };
        let top = vec![0i64; n];
        let one = me.ctx.one();
        me.levels.insert(
            top.clone(),
            Level {
                words: vec![Vec::new()],
                gram: vec![vec![one]],
                e_action: vec![None; n],
                f_from: vec![None; n],
                candidates: 1,
                signature: Signature {
                    plus: 1,
                    zero: 0,
                    minus: 0,
                },
            },
        );
        me.heights.push(vec![top]);
        loop {
            let h = me.heights.len();
            let prev = me.heights.last().unwrap();
            let mut cands: Vec<Vec<i64>> = Vec::new();
            for eta in prev {
                for i in 0..n {
                    let mut e = eta.clone();
                    e[i] += 1;
                    cands.push(e);
                }
            }
            cands.sort();
            cands.dedup();
            if h > height_budget {
                me.truncated = !cands.is_empty();
                break;
            }
            let mut next = Vec::new();
            for eta in cands {
                if let Some(level) = me.build_level(&eta) {
                    if level.rank() > 0 {
                        next.push(eta.clone());
                    }
                    me.levels.insert(eta, level);
                }
            }
            if next.is_empty() {
                break;
            }
            me.heights.push(next);
        }
        me
    }

    fn build_level(&self, eta: &[i64]) -> Option<Level> {
        let ctx = &self.ctx;
        let n = ctx.rs.rank();
        let zero = ctx.zero();
        let live = |e: &Option<Vec<i64>>| {
            e.as_ref()
                .and_then(|e| self.levels.get(e))
                .filter(|l| l.rank() > 0)
        };
        // candidates F_i b' with b' in the basis of eta - e_i
        let mut cands: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            if let Some(l) = live(&minus(eta, i)) {
                cands.extend((0..l.rank()).map(|b| (i, b)));
            }
        }
        if cands.is_empty() {
            return None;
        }
        // E_j on each candidate, in the basis of eta - e_j
        let ecoords: Vec<Vec<Option<Vec<Cyclotomic>>>> = cands
            .iter()
            .map(|&(i, b)| {
                let src = minus(eta, i).unwrap();
                let l1 = &self.levels[&src];
                (0..n)
                    .map(|j| {
                        let target = live(&minus(eta, j))?;
                        let mut v = vec![zero.clone(); target.rank()];
                        if let (Some(ej), Some(fi)) = (&l1.e_action[j], &target.f_from[i]) {
                            let col = column(ej, b);
                            v = linalg::mat_vec(fi, &col, &zero);
                        }
                        if i == j {
                            let x = ctx.weight_coord(&src, j);
                            v[b] = &v[b] + &ctx.h(j, x);
                        }
                        Some(v)
                    })
                    .collect()
            })
            .collect();
        // Gram on candidates: <F_i b', c> = s_i <b', E_i c>
        let nc = cands.len();
        let mut g: Matrix = vec![vec![zero.clone(); nc]; nc];
        for (x, &(i, b)) in cands.iter().enumerate() {
            let l1 = &self.levels[&minus(eta, i).unwrap()];
            for y in x..nc {
                let Some(ev) = &ecoords[y][i] else { continue };
                let mut acc = zero.clone();
                for (k, val) in ev.iter().enumerate() {
                    if !val.is_zero() && !l1.gram[b][k].is_zero() {
                        acc = &acc + &(&l1.gram[b][k] * val);
                    }
                }
                if ctx.sign(i) < 0 {
                    acc = -acc;
                }
                g[y][x] = acc.clone();
                g[x][y] = acc;
            }
        }
        let basis = row_basis(&g);
        let r = basis.len();
        let sub: Matrix = basis
            .iter()
            .map(|&p| basis.iter().map(|&q| g[p][q].clone()).collect())
            .collect();
        let mut sig = signature(&sub);
        sig.zero += nc - r;
        let words: Vec<Vec<u8>> = basis
            .iter()
            .map(|&p| {
                let (i, b) = cands[p];
                let l1 = &self.levels[&minus(eta, i).unwrap()];
                let mut w = vec![i as u8];
                w.extend_from_slice(&l1.words[b]);
                w
            })
            .collect();
        let mut e_action = vec![None; n];
        let mut f_from = vec![None; n];
        if r > 0 {
            let ginv = invert(&sub).expect("principal submatrix on a row basis is nonsingular");
            let rows: Matrix = basis.iter().map(|&p| g[p].clone()).collect();
            let coords = mat_mul(&ginv, &rows, &zero);
            for i in 0..n {
                let idx: Vec<usize> = (0..nc).filter(|&c| cands[c].0 == i).collect();
                if !idx.is_empty() {
                    f_from[i] = Some(
                        coords
                            .iter()
                            .map(|row| idx.iter().map(|&c| row[c].clone()).collect())
                            .collect(),
                    );
                }
            }
            for j in 0..n {
                if let Some(t) = live(&minus(eta, j)) {
                    let cols: Vec<&Vec<Cyclotomic>> = basis
                        .iter()
                        .map(|&p| ecoords[p][j].as_ref().unwrap())
                        .collect();
                    e_action[j] = Some(
                        (0..t.rank())
                            .map(|k| cols.iter().map(|c| c[k].clone()).collect())
                            .collect(),
                    );
                }
            }
        }
        Some(Level {
            words,
            gram: sub,
            e_action,
            f_from,
            candidates: nc,
            signature: sig,
        })
    }

    pub fn context(&self) -> &GramContext<'a> {
        &self.ctx
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// Dimension of the weight space `lambda - sum eta_i alpha_i`.
    pub fn dim(&self, eta: &[i64]) -> usize {
        self.levels.get(eta).map_or(0, |l| l.rank())
    }

    /// Gram matrix on the chosen basis of one weight space.
    pub fn basis_gram(&self, eta: &[i64]) -> Option<(&[Vec<u8>], &Matrix)> {
        self.levels.get(eta).map(|l| (&l.words[..], &l.gram))
    }

    /// Lowest height with a non-zero weight space.
    pub fn depth(&self) -> usize {
        self.heights.len() - 1
    }

    fn summaries(&self) -> Vec<BlockSummary> {
        let mut out: Vec<BlockSummary> = self
            .levels
            .iter()
            .map(|(eta, l)| BlockSummary {
                eta: eta.clone(),
                weight: self.ctx.rs.lower(&self.ctx.lambda, eta),
                candidates: l.candidates,
                rank: l.rank(),
                signature: l.signature,
            })
            .collect();
        out.sort_by(|a, b| {
            let ha: i64 = a.eta.iter().sum();
            let hb: i64 = b.eta.iter().sum();
            ha.cmp(&hb).then_with(|| b.eta.cmp(&a.eta))
        });
        out
    }
}

/// Rank and signature of one weight space of the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSummary {
    pub eta: Vec<i64>,
    pub weight: Weight,
    /// Number of spanning vectors whose Gram matrix was evaluated.
    pub candidates: usize,
    pub rank: usize,
    pub signature: Signature,
}

#[derive(Clone, Debug)]
pub struct ModuleReport {
    pub lambda: Weight,
    pub form: RealForm,
    pub spec: RootOfUnitySpec,
    /// Non-zero weight multiplicities of `L^fin(lambda)`.
    pub dims: BTreeMap<Weight, usize>,
    pub blocks: Vec<BlockSummary>,
    pub total_dim: usize,
    pub unitary: bool,
    pub classical_character: bool,
    pub truncated: bool,
    pub height_budget: usize,
    /// Height of the lowest non-zero weight space reached.
    pub depth: usize,
}

/// Multiplicities, unitarity and classical-character comparison for `L^fin(lambda)`.
pub fn module_report(
    rs: &RootSystem,
    spec: &RootOfUnitySpec,
    lambda: &Weight,
    form: &RealForm,
    height_budget: usize,
) -> Result<ModuleReport> {
    let ctx = GramContext::new(rs, spec, lambda, form)?;
    let module = QuotientModule::build(ctx, height_budget);
    Ok(report_from(&module, rs, spec, height_budget))
}

fn report_from(
    module: &QuotientModule<'_>,
    rs: &RootSystem,
    spec: &RootOfUnitySpec,
    budget: usize,
) -> ModuleReport {
    let lambda = module.ctx.lambda.clone();
    let blocks = module.summaries();
    let dims: BTreeMap<Weight, usize> = blocks
        .iter()
        .filter(|b| b.rank > 0)
        .map(|b| (b.weight.clone(), b.rank))
        .collect();
    let total_dim = dims.values().sum();
    let unitary = blocks.iter().all(|b| b.signature.is_psd());
    let truncated = module.truncated;
    let classical_character = lambda.is_dominant_integral() && {
        let cap = if truncated { budget } else { usize::MAX };
        let classical = freudenthal_by_depth(&lambda, rs, cap).expect("dominant integral");
        let ours: BTreeMap<Vec<i64>, u64> = blocks
            .iter()
            .filter(|b| b.rank > 0)
            .map(|b| (b.eta.clone(), b.rank as u64))
            .collect();
        classical == ours
    };
    ModuleReport {
        lambda,
        form: module.ctx.form.clone(),
        spec: spec.clone(),
        dims,
        blocks,
        total_dim,
        unitary,
        classical_character,
        truncated,
        height_budget: budget,
        depth: module.depth(),
    }
}

/// Human-readable rendering of a weight-space key.
pub fn eta_label(eta: &[i64]) -> alloc::string::String {
    format!("{eta:?}")
}

#[cfg(test)]
mod tests;
