//! Generators and transformations: named families, the complete weighted
//! digraph, letter duplication, the Eulerian lift, and non-synchronizing
//! colorings of Eulerian digraphs.

use num_traits::ToPrimitive;

use crate::automaton::Automaton;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::partition::PartitionRelation;
use crate::spectral::{integer_eigenvector, Distribution, WeightVector};

/// Hard cap on generated state/letter counts so degenerate inputs fail fast
/// instead of exhausting memory.
const SIZE_LIMIT: usize = 1_000_000;

fn to_size<T: ToPrimitive>(value: &T, what: &str) -> Result<usize> {
    value
        .to_usize()
        .filter(|&v| v <= SIZE_LIMIT)
        .ok_or_else(|| Error::InvalidParameter(format!("{what} exceeds the size limit {SIZE_LIMIT}")))
}

/// The n-state automaton with a cyclic-shift letter `a` and a letter `b`
/// fixing everything except the last state, which both letters send to 0.
/// Its reset threshold is `(n-1)^2` and the eigenvector of its underlying
/// digraph is `(2, 2, ..., 2, 1)`.
pub fn gen_cerny(n: usize) -> Result<Automaton> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "cerny family needs n >= 2, got {n}"
        )));
    }
    let rows = (0..n)
        .map(|i| {
            if i < n - 1 {
                vec![i + 1, i]
            } else {
                vec![0, 0]
            }
        })
        .collect();
    Automaton::from_rows(rows)
}

/// The k-out-regular digraph on `n` vertices where every vertex `i` has an
/// edge to 0 with multiplicity `k - 1` and an edge to `(i + 1) mod n`. Its
/// integer eigenvector is the geometric vector `(k^(n-1), ..., k, 1)`, so
/// eigenvector entries can be exponential in `n`.
pub fn gen_u(n: usize, k: usize) -> Result<Digraph> {
    if n < 1 || k < 2 {
        return Err(Error::InvalidParameter(format!(
            "u family needs n >= 1 and k >= 2, got n={n} k={k}"
        )));
    }
    let rows = (0..n)
        .map(|i| {
            let mut row = vec![0usize; k - 1];
            row.push((i + 1) % n);
            row
        })
        .collect();
    Digraph::from_rows(rows)
}

/// The digraph on `n = len(w)` vertices where every ordered pair `(i, j)`
/// carries an edge of multiplicity `w[j]`. Its out-degree is `sum(w)`, it is
/// primitive, and its integer eigenvector is exactly `w`.
pub fn gen_complete_weighted(w: &WeightVector) -> Result<Digraph> {
    let entries = w.to_u128_entries()?;
    let mut row = Vec::new();
    for (j, &mult) in entries.iter().enumerate() {
        let mult = to_size(&mult, "edge multiplicity")?;
        row.extend(std::iter::repeat(j).take(mult));
    }
    to_size(&(row.len() as u128), "out-degree sum(w)")?;
    let rows = vec![row; w.len()];
    Digraph::from_rows(rows)
}

/// A coloring of an Eulerian digraph in which every letter acts as a
/// permutation of the states, obtained by decomposing the k-regular
/// bipartite edge multigraph into k perfect matchings with augmenting-path
/// search (lowest-index tie break). Non-synchronizing whenever `n >= 2`.
pub fn birkhoff_nonsync_coloring(g: &Digraph) -> Result<Automaton> {
    g.require_eulerian()?;
    let n = g.n();
    let mut remaining = g.adjacency_counts();
    let mut rows = vec![Vec::with_capacity(g.k()); n];
    for _letter in 0..g.k() {
        let matching = perfect_matching(&remaining)
            .expect("a regular bipartite multigraph always has a perfect matching");
        for (src, dst) in matching.iter().enumerate() {
            remaining[src][*dst] -= 1;
            rows[src].push(*dst);
        }
    }
    Automaton::from_rows(rows)
}

/// Kuhn's augmenting-path matching on the bipartite graph with an edge
/// wherever `remaining[i][j] > 0`. Returns `matching[src] = dst`.
fn perfect_matching(remaining: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = remaining.len();
    let mut owner: Vec<Option<usize>> = vec![None; n]; // dst -> src
    fn try_assign(
        src: usize,
        remaining: &[Vec<usize>],
        visited: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for dst in 0..remaining.len() {
            if remaining[src][dst] > 0 && !visited[dst] {
                visited[dst] = true;
                if owner[dst].is_none()
                    || try_assign(owner[dst].unwrap(), remaining, visited, owner)
                {
                    owner[dst] = Some(src);
                    return true;
                }
            }
        }
        false
    }
    for src in 0..n {
        let mut visited = vec![false; n];
        if !try_assign(src, remaining, &mut visited, &mut owner) {
            return None;
        }
    }
    let mut matching = vec![0usize; n];
    for (dst, src) in owner.iter().enumerate() {
        matching[(*src)?] = dst;
    }
    Some(matching)
}

/// Builds the complete weighted digraph of `w` together with a
/// non-synchronizing coloring that respects the block structure of `p`:
/// the partition is a congruence of the coloring and the factor automaton is
/// a permutation automaton on the blocks.
pub fn nonsync_coloring_from_partition(
    w: &WeightVector,
    p: &PartitionRelation,
) -> Result<(Digraph, Automaton)> {
    let weights = w.to_u128_entries()?;
    if p.n() != w.len() {
        return Err(Error::MalformedPartition(format!(
            "partition covers {} coordinates, weight vector has {}",
            p.n(),
            w.len()
        )));
    }
    if p.block_count() < 2 {
        return Err(Error::MalformedPartition(
            "partition needs at least 2 blocks".into(),
        ));
    }
    let b = p.equal_block_sum(&weights).ok_or_else(|| {
        Error::MalformedPartition("blocks do not have equal weight sums".into())
    })?;
    let b = to_size(&b, "block sum")?;
    let block_count = p.block_count();

    let g = gen_complete_weighted(w)?;
    let alphabet = g.k();

    // Factor digraph: complete on the blocks, every edge of multiplicity b.
    let factor_rows: Vec<Vec<usize>> = (0..block_count)
        .map(|_| {
            (0..block_count)
                .flat_map(|t| std::iter::repeat(t).take(b))
                .collect()
        })
        .collect();
    let factor_digraph = Digraph::from_rows(factor_rows)?;
    let factor_perm = birkhoff_nonsync_coloring(&factor_digraph)?;

    // Expand each target block into its states, heaviest-index last, with
    // multiplicity w[j]; pair them with the letters that reach the block.
    let expanded: Vec<Vec<usize>> = p
        .blocks()
        .iter()
        .map(|block| {
            block
                .iter()
                .flat_map(|&j| std::iter::repeat(j).take(weights[j] as usize))
                .collect()
        })
        .collect();

    let mut rows = vec![vec![0usize; alphabet]; w.len()];
    for s in 0..block_count {
        let mut letters_to_block: Vec<Vec<usize>> = vec![Vec::new(); block_count];
        for x in 0..alphabet {
            letters_to_block[factor_perm.step(s, x)].push(x);
        }
        for t in 0..block_count {
            debug_assert_eq!(letters_to_block[t].len(), expanded[t].len());
            for q in &p.blocks()[s] {
                for (x, dst) in letters_to_block[t].iter().zip(&expanded[t]) {
                    rows[*q][*x] = *dst;
                }
            }
        }
    }
    let coloring = Automaton::from_rows(rows)?;
    Ok((g, coloring))
}

/// Replicates letter `i` of `a` exactly `m_i` times, where
/// `p_i = m_i / l` with `l` the common denominator of `d`. The result has
/// `l` letters, the same reset threshold as `a`, and its uniform eigenvector
/// equals the `d`-weighted eigenvector of `a`.
pub fn duplicate_letters(a: &Automaton, d: &Distribution) -> Result<Automaton> {
    if d.k() != a.k() {
        return Err(Error::InvalidDistribution(format!(
            "distribution has {} probabilities, automaton has {} letters",
            d.k(),
            a.k()
        )));
    }
    let (l, numerators) = d.common_denominator();
    to_size(&l, "common denominator of the distribution")?;
    let multiplicities: Vec<usize> = numerators
        .iter()
        .map(|m| to_size(m, "letter multiplicity"))
        .collect::<Result<_>>()?;
    let rows = (0..a.n())
        .map(|q| {
            (0..a.k())
                .flat_map(|i| std::iter::repeat(a.step(q, i)).take(multiplicities[i]))
                .collect()
        })
        .collect();
    Automaton::from_rows(rows)
}

/// The Eulerian lift of an automaton: every base state `i` becomes a class
/// of `w[i]` copies, base letters map classes into classes, and one extra
/// letter per lifted state collapses its class onto that state.
#[derive(Debug, Clone)]
pub struct LiftedAutomaton {
    /// The input automaton.
    pub base: Automaton,
    /// The lift: `sum(w)` states over the enlarged alphabet.
    pub automaton: Automaton,
    /// Base state of each lifted state.
    pub state_map: Vec<usize>,
    /// Indices of the class-collapsing extra letters.
    pub lambda_letters: Vec<usize>,
    offsets: Vec<usize>,
}

impl LiftedAutomaton {
    /// The lifted states forming the class of base state `i`.
    pub fn class_of(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    /// Number of lifted states, equal to the eigenvector sum of the base.
    pub fn state_count(&self) -> usize {
        self.automaton.n()
    }
}

/// Builds the Eulerian lift of a strongly connected automaton using its
/// uniform integer eigenvector `w`.
///
/// States are the pairs `(i, j)` with `j < w[i]`. For each base letter the
/// incoming edge slots of every class are distributed round-robin (in
/// (source state, copy, letter) order) over the class members, giving every
/// lifted state in-degree `k` over the base letters. The extra letters keep
/// the automaton Eulerian and collapse one class each. The reset threshold
/// of the lift dominates the base's.
pub fn eulerian_lift(a: &Automaton) -> Result<LiftedAutomaton> {
    let w = integer_eigenvector(&a.underlying())?;
    let entries = w.to_u128_entries()?;
    let n = a.n();
    let k = a.k();
    let mut offsets = vec![0usize; n + 1];
    for i in 0..n {
        offsets[i + 1] = offsets[i] + to_size(&entries[i], "eigenvector entry")?;
    }
    let total = to_size(&(offsets[n] as u128), "eigenvector sum")?;

    let lambda_count = total;
    let alphabet = k + lambda_count;
    let mut rows = vec![vec![usize::MAX; alphabet]; total];

    // Base letters: distribute the incoming slots of each class round-robin.
    for t in 0..n {
        let class_size = offsets[t + 1] - offsets[t];
        let mut slot = 0usize;
        for i in 0..n {
            for copy in offsets[i]..offsets[i + 1] {
                for x in 0..k {
                    if a.step(i, x) == t {
                        rows[copy][x] = offsets[t] + slot % class_size;
                        slot += 1;
                    }
                }
            }
        }
        debug_assert_eq!(slot, k * class_size);
    }

    // Extra letters: one per lifted state (i, j), sending the whole class of
    // i to (i, j) and fixing everything else.
    let mut state_map = vec![0usize; total];
    for i in 0..n {
        for target in offsets[i]..offsets[i + 1] {
            state_map[target] = i;
            let letter = k + target;
            for (q, row) in rows.iter_mut().enumerate() {
                row[letter] = if (offsets[i]..offsets[i + 1]).contains(&q) {
                    target
                } else {
                    q
                };
            }
        }
    }

    let automaton = Automaton::from_rows(rows)?;
    Ok(LiftedAutomaton {
        base: a.clone(),
        automaton,
        state_map,
        lambda_letters: (k..alphabet).collect(),
        offsets,
    })
}
