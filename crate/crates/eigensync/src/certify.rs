//! Theorem-level decision procedures: maximal-weight synchronizing
//! partitions, total-synchronization certificates, synchronizing ratios, and
//! reset-threshold bound checks.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::automaton::{Automaton, DEFAULT_SUBSET_BUDGET};
use crate::digraph::{factorial, Digraph};
use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, is_partitionable, PartitionRelation};
use crate::spectral::{integer_eigenvector, weighted_integer_eigenvector, Distribution, Rational, WeightVector};

/// Default cap on the number of transition functions enumerated by the
/// certification and ratio procedures.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

/// A partition of the states into synchronizing subsets of maximal weight,
/// realized as the kernel of a witness word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FriedmanPartition {
    /// The blocks: pairwise disjoint synchronizing subsets covering Q.
    pub partition: PartitionRelation,
    /// The common weight of every block (the maximal synchronizing weight).
    pub weight: BigUint,
    /// A word whose kernel equals the partition.
    pub witness_word: Vec<usize>,
    /// The eigenvector the weights refer to.
    pub eigenvector: WeightVector,
}

/// Certificate carried by a positive total-synchronization verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyncCertificate {
    /// The eigenvector admits no equal-sum partition, so every coloring of
    /// every digraph with this eigenvector is synchronizing.
    NonPartitionableEigenvector(WeightVector),
    /// Every coloring was enumerated and found synchronizing.
    ExhaustiveEnumeration {
        /// Distinct transition functions checked.
        functions: u64,
        /// Slot-labelings they represent; equals `(k!)^n`.
        labelings: BigUint,
    },
}

/// Certified outcome of the totally-synchronizing decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TotalSyncVerdict {
    TotallySynchronizing(SyncCertificate),
    NotTotallySynchronizing {
        /// A coloring that fails to synchronize.
        witness: Automaton,
    },
    Unknown {
        /// The enumeration budget that was exhausted.
        budget: u64,
    },
}

/// Exact synchronizing ratio of a digraph: synchronizing slot-labelings over
/// all `(k!)^n` labelings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyncRatio {
    pub numerator: BigUint,
    pub denominator: BigUint,
    pub value: Rational,
}

/// The partition of the states into maximal-weight synchronizing subsets
/// (with respect to the eigenvector for `d`), together with the common block
/// weight and a word whose kernel realizes the partition.
///
/// The kernel classes of any word are synchronizing subsets; a word of
/// minimal rank has exactly `sum(w) / b` classes, forcing every class to the
/// maximal weight `b`. The search therefore takes the shortest minimal-rank
/// word found by BFS over images of the full state set.
pub fn friedman_partition(a: &Automaton, d: &Distribution) -> Result<FriedmanPartition> {
    let w = weighted_integer_eigenvector(a, d)?;
    let (rank, word) = a.min_rank_word(DEFAULT_SUBSET_BUDGET)?;
    let partition = a.kernel_of_word(&word)?;
    debug_assert_eq!(partition.block_count(), rank);
    let weights: Vec<BigUint> = partition
        .blocks()
        .iter()
        .map(|block| block.iter().map(|&q| w.entry(q)).sum())
        .collect();
    let weight = weights[0].clone();
    if weights.iter().any(|b| b != &weight) {
        return Err(Error::Spectral(
            "kernel classes of a minimal-rank word have unequal weights".into(),
        ));
    }
    Ok(FriedmanPartition {
        partition,
        weight,
        witness_word: word,
        eigenvector: w,
    })
}

/// Decides whether every coloring of the primitive digraph `g` is
/// synchronizing.
///
/// Fast path: a non-partitionable eigenvector certifies the positive answer
/// outright. Otherwise distinct colorings are enumerated up to `budget`:
/// a non-synchronizing coloring refutes, full enumeration certifies, and an
/// exhausted budget yields `Unknown`.
///
/// A strongly connected but imprimitive digraph has no synchronizing
/// coloring at all, so it is refuted with an arbitrary coloring as witness.
pub fn certify_totally_synchronizing(g: &Digraph, budget: u64) -> Result<TotalSyncVerdict> {
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    if !g.is_primitive() {
        let witness = g
            .colorings()
            .next()
            .expect("every digraph has at least one coloring");
        return Ok(TotalSyncVerdict::NotTotallySynchronizing { witness });
    }
    let w = integer_eigenvector(g)?;
    if !is_partitionable(&w)? {
        return Ok(TotalSyncVerdict::TotallySynchronizing(
            SyncCertificate::NonPartitionableEigenvector(w),
        ));
    }
    let mut checked = 0u64;
    for coloring in g.colorings() {
        if checked >= budget {
            return Ok(TotalSyncVerdict::Unknown { budget });
        }
        checked += 1;
        if !coloring.is_synchronizing() {
            return Ok(TotalSyncVerdict::NotTotallySynchronizing { witness: coloring });
        }
    }
    let labelings = BigUint::from(checked) * g.labelings_per_function();
    Ok(TotalSyncVerdict::TotallySynchronizing(
        SyncCertificate::ExhaustiveEnumeration {
            functions: checked,
            labelings,
        },
    ))
}

/// Exact synchronizing ratio of a strongly connected digraph. Distinct
/// transition functions are enumerated once and weighted by the number of
/// slot-labelings producing them, so the denominator is exactly `(k!)^n`.
pub fn synchronizing_ratio(g: &Digraph, budget: u64) -> Result<SyncRatio> {
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let denominator = factorial(g.k()).pow(g.n() as u32);
    if !g.is_primitive() {
        // no coloring of an imprimitive digraph synchronizes
        return Ok(SyncRatio {
            numerator: BigUint::zero(),
            denominator: denominator.clone(),
            value: Rational::zero(),
        });
    }
    if g.coloring_function_count() > BigUint::from(budget) {
        return Err(Error::EnumerationBudgetExceeded { budget });
    }
    let mut sync_functions = BigUint::zero();
    for coloring in g.colorings() {
        if coloring.is_synchronizing() {
            sync_functions += BigUint::one();
        }
    }
    let numerator = sync_functions * g.labelings_per_function();
    let value = Rational::new(numerator.clone().into(), denominator.clone().into());
    Ok(SyncRatio {
        numerator,
        denominator,
        value,
    })
}

/// Result of checking the eigenvector bound on the reset threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RtBoundReport {
    pub holds: bool,
    /// Exact reset threshold.
    pub rt: usize,
    /// Sum of the eigenvector entries.
    pub weight_sum: BigUint,
    /// `W^2 - 3W + 3`.
    pub bound: BigUint,
}

/// Computes the exact reset threshold and checks it against
/// `W^2 - 3W + 3`, where `W` is the entry sum of the eigenvector of `a`
/// in accordance with `d`.
pub fn check_rt_bound(a: &Automaton, d: &Distribution, max_n: usize) -> Result<RtBoundReport> {
    let w = weighted_integer_eigenvector(a, d)?;
    let (rt, _) = a
        .shortest_reset_word(max_n)?
        .ok_or(Error::NotSynchronizing)?;
    let weight_sum = w.sum();
    let bound = rt_bound_from_sum(&weight_sum);
    let holds = BigUint::from(rt) <= bound;
    Ok(RtBoundReport {
        holds,
        rt,
        weight_sum,
        bound,
    })
}

/// `W^2 - 3W + 3`, computed as `(W-1)(W-2) + 1` to stay in unsigned
/// arithmetic for every `W >= 1`.
pub fn rt_bound_from_sum(weight_sum: &BigUint) -> BigUint {
    let one = BigUint::one();
    if weight_sum <= &one {
        return one;
    }
    (weight_sum - 1u32) * (weight_sum - 2u32) + one
}

/// Tests, on one non-synchronizing instance, the biconditional between
/// uniqueness of the equal-sum partition at the maximal synchronizing weight
/// `b` and the maximal-weight partition being a congruence. Returns whether
/// the two sides agree.
pub fn check_unique_partition_congruence(a: &Automaton, d: &Distribution) -> Result<bool> {
    if a.is_synchronizing() {
        return Err(Error::SynchronizingInput);
    }
    let fp = friedman_partition(a, d)?;
    let b = u128::try_from(&fp.weight).map_err(|_| Error::WeightSumTooLarge {
        total: fp.weight.to_string(),
        limit: u128::MAX,
    })?;
    let unique_at_b = enumerate_partitions(&fp.eigenvector, b)?.len() == 1;
    let is_congruence = a.is_congruence(&fp.partition)?;
    Ok(unique_at_b == is_congruence)
}
