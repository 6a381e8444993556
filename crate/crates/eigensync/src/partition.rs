//! Equal-sum block partitions of positive integer vectors.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::spectral::WeightVector;

/// Sums above this limit make the divisor scan (and any enumeration)
/// pointless; the partition routines refuse them with a clean error.
pub const PARTITION_SUM_LIMIT: u128 = 1_000_000_000_000;

/// An equivalence relation on `[0, n)` given by its blocks: disjoint
/// nonempty sets covering the universe. Canonical form: members ascending
/// within a block, blocks ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionRelation {
    n: usize,
    blocks: Vec<Vec<usize>>,
    /// index of the block containing each element
    assignment: Vec<usize>,
}

impl PartitionRelation {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut canonical: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        canonical.retain(|b| !b.is_empty());
        canonical.sort_by_key(|b| b[0]);
        let mut assignment = vec![usize::MAX; n];
        for (idx, block) in canonical.iter().enumerate() {
            for &q in block {
                if q >= n {
                    return Err(Error::MalformedPartition(format!(
                        "element {q} out of range for universe {n}"
                    )));
                }
                if assignment[q] != usize::MAX {
                    return Err(Error::MalformedPartition(format!(
                        "element {q} appears in more than one block"
                    )));
                }
                assignment[q] = idx;
            }
        }
        if let Some(q) = assignment.iter().position(|&a| a == usize::MAX) {
            return Err(Error::MalformedPartition(format!(
                "element {q} is not covered by any block"
            )));
        }
        Ok(PartitionRelation {
            n,
            blocks: canonical,
            assignment,
        })
    }

    /// The discrete partition `{{0}, {1}, ..., {n-1}}`.
    pub fn singletons(n: usize) -> Self {
        PartitionRelation {
            n,
            blocks: (0..n).map(|q| vec![q]).collect(),
            assignment: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block containing `q`.
    pub fn block_index(&self, q: usize) -> usize {
        self.assignment[q]
    }

    /// Per-block weight sums under `weights` (parallel to `blocks()`).
    pub fn block_sums(&self, weights: &[u128]) -> Vec<u128> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&q| weights[q]).sum())
            .collect()
    }

    /// The common block sum when all blocks weigh the same, else `None`.
    pub fn equal_block_sum(&self, weights: &[u128]) -> Option<u128> {
        let sums = self.block_sums(weights);
        if sums.windows(2).all(|w| w[0] == w[1]) {
            Some(sums[0])
        } else {
            None
        }
    }
}

impl fmt::Display for PartitionRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, q) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{q}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// All partitions of a weight vector grouped by admissible block sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartitionReport {
    /// Sum of all entries.
    pub total: u128,
    /// Partitions with at least two blocks, grouped by block sum. Only block
    /// sums admitting at least one partition appear.
    pub per_b: BTreeMap<u128, Vec<PartitionRelation>>,
    /// Total number of partitions with >= 2 blocks across all block sums.
    pub global_count: u64,
}

impl BlockPartitionReport {
    /// Exactly one partition with the given block sum.
    pub fn is_unique_at(&self, b: u128) -> bool {
        self.per_b.get(&b).map(|v| v.len()) == Some(1)
    }

    /// Exactly one partition across all block sums.
    pub fn is_globally_unique(&self) -> bool {
        self.global_count == 1
    }
}

fn checked_weights(w: &WeightVector) -> Result<Vec<u128>> {
    let weights = w.to_u128_entries()?;
    let total: u128 = weights
        .iter()
        .try_fold(0u128, |acc, &e| acc.checked_add(e))
        .ok_or(Error::WeightSumTooLarge {
            total: w.sum().to_string(),
            limit: PARTITION_SUM_LIMIT,
        })?;
    if total > PARTITION_SUM_LIMIT {
        return Err(Error::WeightSumTooLarge {
            total: total.to_string(),
            limit: PARTITION_SUM_LIMIT,
        });
    }
    Ok(weights)
}

/// All set partitions of the coordinate indices into blocks each summing
/// exactly to `b`, enumerated by canonical backtracking: coordinates are
/// assigned in index order and blocks are identified by smallest member, so
/// the enumeration is complete and duplicate-free. The one-block partition is
/// excluded: `sum / b` must be at least 2.
pub fn enumerate_partitions(w: &WeightVector, b: u128) -> Result<Vec<PartitionRelation>> {
    let weights = checked_weights(w)?;
    let total: u128 = weights.iter().sum();
    if b == 0 || total % b != 0 {
        return Err(Error::InvalidParameter(format!(
            "block sum {b} does not divide the total weight {total}"
        )));
    }
    if total / b < 2 {
        return Err(Error::InvalidParameter(format!(
            "block sum {b} yields fewer than 2 blocks (total {total})"
        )));
    }
    let mut out = Vec::new();
    backtrack_partitions(&weights, b, &mut |blocks| {
        out.push(
            PartitionRelation::new(weights.len(), blocks.to_vec())
                .expect("backtracking emits a valid partition"),
        );
        true
    });
    Ok(out)
}

fn has_partition(weights: &[u128], b: u128) -> bool {
    let mut found = false;
    backtrack_partitions(weights, b, &mut |_| {
        found = true;
        false // stop at the first witness
    });
    found
}

/// Canonical backtracking over equal-sum partitions. `emit` returns false to
/// stop the search early.
fn backtrack_partitions(
    weights: &[u128],
    b: u128,
    emit: &mut dyn FnMut(&[Vec<usize>]) -> bool,
) -> bool {
    let total: u128 = weights.iter().sum();
    debug_assert!(b > 0 && total % b == 0);
    let target_blocks = (total / b) as usize;
    if weights.iter().any(|&e| e > b) {
        return true;
    }
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut remaining: Vec<u128> = Vec::new();
    fn recurse(
        weights: &[u128],
        b: u128,
        target_blocks: usize,
        idx: usize,
        members: &mut Vec<Vec<usize>>,
        remaining: &mut Vec<u128>,
        emit: &mut dyn FnMut(&[Vec<usize>]) -> bool,
    ) -> bool {
        if idx == weights.len() {
            debug_assert!(remaining.iter().all(|&r| r == 0));
            return emit(members);
        }
        let wi = weights[idx];
        for block in 0..members.len() {
            if remaining[block] >= wi {
                members[block].push(idx);
                remaining[block] -= wi;
                let keep_going = recurse(weights, b, target_blocks, idx + 1, members, remaining, emit);
                remaining[block] += wi;
                members[block].pop();
                if !keep_going {
                    return false;
                }
            }
        }
        if members.len() < target_blocks {
            members.push(vec![idx]);
            remaining.push(b - wi);
            let keep_going = recurse(weights, b, target_blocks, idx + 1, members, remaining, emit);
            members.pop();
            remaining.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
    recurse(weights, b, target_blocks, 0, &mut members, &mut remaining, emit)
}

/// Block sums `b` that could admit a partition with at least two blocks:
/// divisors of the total with quotient >= 2, at least as large as the
/// biggest single entry.
fn admissible_block_sums(weights: &[u128]) -> Vec<u128> {
    let total: u128 = weights.iter().sum();
    let max_entry = *weights.iter().max().expect("nonempty weights");
    let mut sums = Vec::new();
    let mut d = 1u128;
    while d * d <= total {
        if total % d == 0 {
            for b in [d, total / d] {
                if b >= max_entry && total / b >= 2 {
                    sums.push(b);
                }
            }
        }
        d += 1;
    }
    sums.sort_unstable();
    sums.dedup();
    sums
}

/// True iff some block sum `b` with `b * l = sum(w)` and `l >= 2` admits at
/// least one equal-sum partition.
pub fn is_partitionable(w: &WeightVector) -> Result<bool> {
    let weights = checked_weights(w)?;
    Ok(admissible_block_sums(&weights)
        .into_iter()
        .any(|b| has_partition(&weights, b)))
}

/// Full uniqueness report: all partitions grouped by block sum plus the
/// global count. "Unique at b" means one partition for that block sum;
/// "globally unique" means one partition across all block sums.
pub fn partition_uniqueness(w: &WeightVector) -> Result<BlockPartitionReport> {
    let weights = checked_weights(w)?;
    let total: u128 = weights.iter().sum();
    let mut per_b = BTreeMap::new();
    let mut global_count = 0u64;
    for b in admissible_block_sums(&weights) {
        let parts = enumerate_partitions(w, b)?;
        if !parts.is_empty() {
            global_count += parts.len() as u64;
            per_b.insert(b, parts);
        }
    }
    Ok(BlockPartitionReport {
        total,
        per_b,
        global_count,
    })
}
