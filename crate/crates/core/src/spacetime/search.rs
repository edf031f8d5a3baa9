use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::schedule::FaultSite;
use super::syndrome::SyndromeMap;
use super::SpacetimeError;
use crate::f2::BitVec;

/// Default cap on enumerated partial fault sets.
pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogicalFault {
    pub weight: usize,
    pub faults: Vec<FaultSite>,
    /// Changed final-state checks; index 0 is the reported outcome.
    pub effect: Vec<usize>,
}

/// Lightest silent fault set that is not a spacetime stabilizer, up to
/// weight `w_max`.
///
/// Weight `w` is enumerated as `(w-1)`-subsets whose syndrome is looked up
/// among the single faults; a completing fault must cancel it exactly.
pub fn fault_distance_search(
    map: &SyndromeMap,
    w_max: usize,
    budget: u64,
) -> Result<Option<LogicalFault>, SpacetimeError> {
    let n = map.sites.len();
    let mut by_syndrome: HashMap<&BitVec, Vec<usize>> = HashMap::new();
    for i in 0..n {
        by_syndrome.entry(map.d.row(i)).or_default().push(i);
    }
    let mut spent = 0u64;
    for w in 1..=w_max {
        let count = binomial(n, w - 1);
        spent = spent.saturating_add(count);
        if spent > budget {
            return Err(SpacetimeError::Budget { weight: w, budget });
        }
        let found = if w == 1 {
            complete(
                map,
                &by_syndrome,
                &[],
                BitVec::zeros(map.d.cols()),
                BitVec::zeros(map.effects.cols()),
            )
        } else {
            // Shard on the first fault of the partial set.
            (0..n).into_par_iter().find_map_first(|first| {
                let mut stack = vec![first];
                search_from(map, &by_syndrome, &mut stack, w - 1)
            })
        };
        if let Some(set) = found {
            let faults: Vec<FaultSite> = set.iter().map(|&i| map.sites[i].clone()).collect();
            let syn = map.syndrome(&faults)?;
            return Ok(Some(LogicalFault {
                weight: w,
                faults,
                effect: syn.effect.iter_ones().collect(),
            }));
        }
    }
    Ok(None)
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| {
        acc.saturating_mul((n - i) as u64) / (i as u64 + 1)
    })
}

fn search_from(
    map: &SyndromeMap,
    by_syndrome: &HashMap<&BitVec, Vec<usize>>,
    stack: &mut Vec<usize>,
    size: usize,
) -> Option<Vec<usize>> {
    if stack.len() == size {
        let mut det = BitVec::zeros(map.d.cols());
        let mut eff = BitVec::zeros(map.effects.cols());
        for &i in stack.iter() {
            det.xor_assign(map.d.row(i));
            eff.xor_assign(map.effects.row(i));
        }
        return complete(map, by_syndrome, stack, det, eff);
    }
    let start = *stack.last().expect("nonempty") + 1;
    for i in start..map.sites.len() {
        stack.push(i);
        if let Some(found) = search_from(map, by_syndrome, stack, size) {
            return Some(found);
        }
        stack.pop();
    }
    None
}

/// Adds one fault after the last of `partial` that cancels `det` and leaves
/// a nonzero effect.
fn complete(
    map: &SyndromeMap,
    by_syndrome: &HashMap<&BitVec, Vec<usize>>,
    partial: &[usize],
    det: BitVec,
    eff: BitVec,
) -> Option<Vec<usize>> {
    let after = partial.last().map_or(0, |&l| l + 1);
    let candidates = by_syndrome.get(&det)?;
    candidates
        .iter()
        .copied()
        .filter(|&c| c >= after)
        .find(|&c| !eff.xor(map.effects.row(c)).is_zero())
        .map(|c| {
            let mut v = partial.to_vec();
            v.push(c);
            v
        })
}
