use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{normalizer, CodeError, StabilizerCode};
use crate::f2::{BitMatrix, BitVec, RowSpace};
use crate::pauli::{Pauli, PauliOp};

/// Candidate count above which [`distance_exact`] refuses to enumerate.
pub const DEFAULT_EXACT_BUDGET: u64 = 200_000_000;

/// Trials per independently seeded shard of [`distance_upper`].
pub const SHARD_TRIALS: usize = 8;

/// A logical operator certifying `distance <= weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceBound {
    pub weight: usize,
    pub witness: PauliOp,
}

/// Exact distance by weight-ascending enumeration, or `None` when there is
/// no logical of weight at most `w_max`.
pub fn distance_exact(code: &StabilizerCode, w_max: usize) -> Result<Option<usize>, CodeError> {
    Ok(distance_exact_with_budget(code, w_max, DEFAULT_EXACT_BUDGET)?.map(|b| b.weight))
}

/// [`distance_exact`] with an explicit candidate budget, returning the first
/// minimum-weight logical found.
pub fn distance_exact_with_budget(
    code: &StabilizerCode,
    w_max: usize,
    budget: u64,
) -> Result<Option<DistanceBound>, CodeError> {
    if code.k() == 0 {
        return Ok(None);
    }
    let n = code.n();
    let alphabets: Vec<Vec<Pauli>> = if code.as_css().is_some() {
        vec![vec![Pauli::X], vec![Pauli::Z]]
    } else {
        vec![vec![Pauli::X, Pauli::Y, Pauli::Z]]
    };
    let searches: Vec<Search> = alphabets.iter().map(|a| Search::new(code, a)).collect();
    let mut spent: u64 = 0;
    for w in 1..=w_max.min(n) {
        for s in &searches {
            spent = spent.saturating_add(
                binomial(n, w).saturating_mul((s.letters as u64).saturating_pow(w as u32)),
            );
        }
        if spent > budget {
            return Err(CodeError::Budget { budget, weight: w });
        }
        for s in &searches {
            if let Some(witness) = s.find(w) {
                return Ok(Some(DistanceBound { weight: w, witness }));
            }
        }
    }
    Ok(None)
}

fn binomial(n: usize, k: usize) -> u64 {
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u64) / (i as u64 + 1);
    }
    acc
}

/// Depth-first enumeration of supports with per-qubit letter choices,
/// accumulating syndromes.
struct Search {
    n: usize,
    letters: usize,
    alphabet: Vec<Pauli>,
    /// `columns[q][letter]` is the syndrome of that single-qubit Pauli.
    columns: Vec<Vec<BitVec>>,
    group: RowSpace,
}

impl Search {
    fn new(code: &StabilizerCode, alphabet: &[Pauli]) -> Self {
        let n = code.n();
        let m = code.checks().len();
        let columns = (0..n)
            .map(|q| {
                alphabet
                    .iter()
                    .map(|&p| {
                        let (px, pz) = p.bits();
                        BitVec::from_bools(
                            &code
                                .checks()
                                .iter()
                                .map(|c| (px && c.z_bits().get(q)) ^ (pz && c.x_bits().get(q)))
                                .collect::<Vec<_>>(),
                        )
                        .resized(m)
                    })
                    .collect()
            })
            .collect();
        Search {
            n,
            letters: alphabet.len(),
            alphabet: alphabet.to_vec(),
            columns,
            group: RowSpace::from_matrix(&code.check_matrix()),
        }
    }

    fn find(&self, w: usize) -> Option<PauliOp> {
        let m = self.columns.first().map_or(0, |c| c[0].len());
        (0..self.n).into_par_iter().find_map_first(|first| {
            let mut chosen = Vec::with_capacity(w);
            let mut syn = vec![BitVec::zeros(m); w + 1];
            self.dfs(first, w, &mut chosen, &mut syn)
        })
    }

    fn dfs(
        &self,
        q: usize,
        w: usize,
        chosen: &mut Vec<(usize, usize)>,
        syn: &mut Vec<BitVec>,
    ) -> Option<PauliOp> {
        let depth = chosen.len();
        for letter in 0..self.letters {
            let next = syn[depth].xor(&self.columns[q][letter]);
            chosen.push((q, letter));
            let found = if depth + 1 == w {
                if next.is_zero() {
                    self.logical(chosen)
                } else {
                    None
                }
            } else {
                syn[depth + 1] = next;
                let remaining = w - depth - 1;
                (q + 1..=self.n - remaining).find_map(|r| self.dfs(r, w, chosen, syn))
            };
            chosen.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn logical(&self, chosen: &[(usize, usize)]) -> Option<PauliOp> {
        let mut op = PauliOp::identity(self.n);
        for &(q, l) in chosen {
            op.set(q, self.alphabet[l]);
        }
        (!self.group.contains(&op.symplectic())).then_some(op)
    }
}

/// Randomized information-set search for low-weight logicals.
///
/// Trials are split into shards of [`SHARD_TRIALS`], shard `s` drawing from
/// the ChaCha stream `s` of `seed`; shards run in parallel and the lightest
/// witness (lowest shard on ties) wins, so the bound only improves as
/// `trials` grows.
pub fn distance_upper(code: &StabilizerCode, trials: usize, seed: u64) -> Option<DistanceBound> {
    if code.k() == 0 || trials == 0 {
        return None;
    }
    let sides: Vec<Side> = match code.as_css() {
        Some(css) => vec![
            Side::css(css.hz(), css.hx(), true),
            Side::css(css.hx(), css.hz(), false),
        ],
        None => vec![Side::symplectic(code)],
    };
    let shards = trials.div_ceil(SHARD_TRIALS);
    (0..shards)
        .into_par_iter()
        .filter_map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s as u64);
            let count = SHARD_TRIALS.min(trials - s * SHARD_TRIALS);
            let mut best: Option<DistanceBound> = None;
            for _ in 0..count {
                for side in &sides {
                    let cap = best.as_ref().map_or(usize::MAX, |b| b.weight);
                    if let Some(found) = side.trial(&mut rng, cap) {
                        best = Some(found);
                    }
                }
            }
            best.map(|b| (b.weight, s, b))
        })
        .min_by_key(|(w, s, _)| (*w, *s))
        .map(|(_, _, b)| b)
}

/// One half of the search: codewords of `basis` outside `group`.
struct Side {
    n: usize,
    basis: BitMatrix,
    group: RowSpace,
    kind: SideKind,
}

#[derive(Clone, Copy)]
enum SideKind {
    X,
    Z,
    /// Interleaved `x_q, z_q` columns of a general stabilizer normalizer.
    Symplectic,
}

impl Side {
    fn css(dual: &BitMatrix, group: &BitMatrix, x: bool) -> Self {
        Side {
            n: dual.cols(),
            basis: dual.nullspace(),
            group: RowSpace::from_matrix(group),
            kind: if x { SideKind::X } else { SideKind::Z },
        }
    }

    fn symplectic(code: &StabilizerCode) -> Self {
        let n = code.n();
        let interleave = |v: &BitVec| {
            let mut out = BitVec::zeros(2 * n);
            for q in 0..n {
                out.set(2 * q, v.get(q));
                out.set(2 * q + 1, v.get(n + q));
            }
            out
        };
        let basis = normalizer(n, code.checks());
        let rows = basis.iter_rows().map(interleave).collect();
        let group = code.check_matrix().iter_rows().map(interleave).collect();
        Side {
            n,
            basis: BitMatrix::from_rows(2 * n, rows).expect("width"),
            group: RowSpace::from_matrix(&BitMatrix::from_rows(2 * n, group).expect("width")),
            kind: SideKind::Symplectic,
        }
    }

    fn weight(&self, v: &BitVec) -> usize {
        match self.kind {
            SideKind::X | SideKind::Z => v.weight(),
            SideKind::Symplectic => (0..self.n)
                .filter(|&q| v.get(2 * q) || v.get(2 * q + 1))
                .count(),
        }
    }

    fn to_op(&self, v: &BitVec) -> PauliOp {
        match self.kind {
            SideKind::X => PauliOp::from_bits(v.clone(), BitVec::zeros(self.n)),
            SideKind::Z => PauliOp::from_bits(BitVec::zeros(self.n), v.clone()),
            SideKind::Symplectic => {
                let x = BitVec::from_indices(self.n, (0..self.n).filter(|&q| v.get(2 * q)));
                let z = BitVec::from_indices(self.n, (0..self.n).filter(|&q| v.get(2 * q + 1)));
                PauliOp::from_bits(x, z)
            }
        }
    }

    /// Lightest logical below `cap` among single rows and row pairs of the
    /// reduced basis under a random column order.
    fn trial(&self, rng: &mut ChaCha8Rng, cap: usize) -> Option<DistanceBound> {
        let cols = self.basis.cols();
        let mut perm: Vec<usize> = match self.kind {
            SideKind::Symplectic => (0..self.n).collect(),
            _ => (0..cols).collect(),
        };
        perm.shuffle(rng);
        if let SideKind::Symplectic = self.kind {
            perm = perm.iter().flat_map(|&q| [2 * q, 2 * q + 1]).collect();
        }
        let mut inverse = vec![0; cols];
        for (j, &c) in perm.iter().enumerate() {
            inverse[c] = j;
        }
        let rref = self.basis.select_cols(&perm).row_reduce().rref;
        let rows: Vec<BitVec> = rref.iter_rows().filter(|r| !r.is_zero()).cloned().collect();
        let mut best: Option<DistanceBound> = None;
        let mut cap = cap;
        let consider = |v: &BitVec, best: &mut Option<DistanceBound>, cap: &mut usize| {
            let orig = v.gather(&inverse);
            let w = self.weight(&orig);
            if w >= *cap || self.group.contains(&orig) {
                return;
            }
            *cap = w;
            *best = Some(DistanceBound {
                weight: w,
                witness: self.to_op(&orig),
            });
        };
        for (i, a) in rows.iter().enumerate() {
            consider(a, &mut best, &mut cap);
            for b in &rows[i + 1..] {
                let s = a.xor(b);
                if matches!(self.kind, SideKind::Symplectic) || s.weight() < cap {
                    consider(&s, &mut best, &mut cap);
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::library;

    #[test]
    fn four_two_two_exact_and_upper() {
        let code = library::four_two_two();
        assert_eq!(distance_exact(&code, 4).unwrap(), Some(2));
        let ub = distance_upper(&code, 4, 1).unwrap();
        assert_eq!(ub.weight, 2);
        assert!(code.is_logical(&ub.witness));
    }

    #[test]
    fn surface_code_distance_three() {
        let code = library::rotated_surface(3).to_stabilizer();
        assert_eq!(distance_exact(&code, 3).unwrap(), Some(3));
        assert_eq!(distance_exact(&code, 2).unwrap(), None);
    }

    #[test]
    fn no_logicals_when_k_is_zero() {
        let code = StabilizerCode::new(1, vec![crate::pauli::pauli("Z")], None).unwrap();
        assert_eq!(distance_exact(&code, 1).unwrap(), None);
        assert!(distance_upper(&code, 8, 0).is_none());
    }

    #[test]
    fn budget_is_reported() {
        let code = library::rotated_surface(3).to_stabilizer();
        let err = distance_exact_with_budget(&code, 3, 10).unwrap_err();
        assert!(matches!(err, CodeError::Budget { budget: 10, .. }));
    }

    #[test]
    fn non_css_code() {
        // Five-qubit code.
        let checks = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
            .iter()
            .map(|s| crate::pauli::pauli(s))
            .collect();
        let code = StabilizerCode::new(5, checks, None).unwrap();
        assert_eq!(distance_exact(&code, 5).unwrap(), Some(3));
        assert_eq!(distance_upper(&code, 16, 3).unwrap().weight, 3);
    }
}
