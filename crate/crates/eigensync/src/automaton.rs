//! Complete deterministic finite automata and synchronization primitives.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::partition::PartitionRelation;
use crate::spectral::WeightVector;
use crate::state_set::StateSet;

/// Default cap on the state count for subset-lattice searches
/// (`2^n` frontier). Beyond it, exact reset thresholds are reported as
/// bounded, not exact.
pub const DEFAULT_SUBSET_BUDGET: usize = 20;

/// A complete deterministic finite automaton: `n` states, `k` letters,
/// exactly one destination per (state, letter). Letters are the indices
/// `0..k`; textual names `a`, `b`, ... are presentation-only.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automaton {
    n: usize,
    k: usize,
    /// Flat `n * k` transition table, row-major; position = letter index.
    delta: Vec<usize>,
}

impl Automaton {
    /// Builds an automaton from per-state destination rows (one destination
    /// per letter, letter index = position).
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidParameter(
                "automaton needs at least one state".into(),
            ));
        }
        let k = rows[0].len();
        if k == 0 {
            return Err(Error::InvalidParameter(
                "automaton needs at least one letter".into(),
            ));
        }
        let mut delta = Vec::with_capacity(n * k);
        for (row_idx, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidParameter(format!(
                    "row {row_idx} has {} entries, expected {k}",
                    row.len()
                )));
            }
            for &dest in row {
                if dest >= n {
                    return Err(Error::DestinationOutOfRange {
                        row: row_idx,
                        dest,
                        n,
                    });
                }
            }
            delta.extend_from_slice(row);
        }
        Ok(Automaton { n, k, delta })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The transition row of state `q` (destination per letter).
    pub fn row(&self, q: usize) -> &[usize] {
        &self.delta[q * self.k..(q + 1) * self.k]
    }

    /// `delta(q, letter)`. Panics if `q` or `letter` is out of range.
    pub fn step(&self, q: usize, letter: usize) -> usize {
        assert!(letter < self.k, "letter {letter} out of range");
        self.delta[q * self.k + letter]
    }

    /// The underlying digraph: same states, per-state destination multisets.
    pub fn underlying(&self) -> Digraph {
        let rows = (0..self.n).map(|q| self.row(q).to_vec()).collect();
        Digraph::from_rows(rows).expect("transition table is a valid digraph")
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.underlying().is_strongly_connected()
    }

    pub fn is_eulerian(&self) -> bool {
        self.underlying().is_eulerian()
    }

    /// Image of `s` under one letter.
    pub fn image(&self, s: &StateSet, letter: usize) -> StateSet {
        assert!(letter < self.k, "letter {letter} out of range");
        let mut out = StateSet::empty(self.n);
        for q in s.iter() {
            out.insert(self.step(q, letter));
        }
        out
    }

    /// Image of `s` under the composed transition maps, in word order.
    pub fn apply_word(&self, s: &StateSet, word: &[usize]) -> Result<StateSet> {
        for &letter in word {
            if letter >= self.k {
                return Err(Error::LetterOutOfRange { letter, k: self.k });
            }
        }
        let mut current = s.clone();
        for &letter in word {
            current = self.image(&current, letter);
        }
        Ok(current)
    }

    /// Image of a single state under a word.
    pub fn apply_word_state(&self, q: usize, word: &[usize]) -> Result<usize> {
        let mut current = q;
        for &letter in word {
            if letter >= self.k {
                return Err(Error::LetterOutOfRange { letter, k: self.k });
            }
            current = self.step(current, letter);
        }
        Ok(current)
    }

    /// Full preimage `{ q | delta(q, letter) in s }`.
    pub fn preimage(&self, s: &StateSet, letter: usize) -> StateSet {
        assert!(letter < self.k, "letter {letter} out of range");
        let mut out = StateSet::empty(self.n);
        for q in 0..self.n {
            if s.contains(self.step(q, letter)) {
                out.insert(q);
            }
        }
        out
    }

    /// Table of synchronizable unordered state pairs, computed by backward
    /// BFS from the singleton pairs in the pair automaton. Runs in O(n^2 k).
    fn synchronizable_pairs(&self) -> Vec<bool> {
        let n = self.n;
        let mut pre: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; self.k];
        for q in 0..n {
            for x in 0..self.k {
                pre[x][self.step(q, x)].push(q);
            }
        }
        let idx = |p: usize, q: usize| if p <= q { p * n + q } else { q * n + p };
        let mut mergeable = vec![false; n * n];
        let mut queue = VecDeque::new();
        for q in 0..n {
            mergeable[idx(q, q)] = true;
            queue.push_back((q, q));
        }
        while let Some((u, v)) = queue.pop_front() {
            for x in 0..self.k {
                for &p in &pre[x][u] {
                    for &q in &pre[x][v] {
                        let i = idx(p, q);
                        if !mergeable[i] {
                            mergeable[i] = true;
                            queue.push_back((p.min(q), p.max(q)));
                        }
                    }
                }
            }
        }
        mergeable
    }

    /// True iff some pair of distinct states `p`, `q` can be mapped to a
    /// single state by some word.
    pub fn is_pair_synchronizable(&self, p: usize, q: usize) -> bool {
        let table = self.synchronizable_pairs();
        let (a, b) = (p.min(q), p.max(q));
        table[a * self.n + b]
    }

    /// True iff the automaton is synchronizing, decided by the pair-automaton
    /// criterion: every unordered state pair reaches a singleton.
    pub fn is_synchronizing(&self) -> bool {
        let table = self.synchronizable_pairs();
        for p in 0..self.n {
            for q in p + 1..self.n {
                if !table[p * self.n + q] {
                    return false;
                }
            }
        }
        true
    }

    /// Exact reset threshold and one witness word of that length, found by
    /// BFS in the subset lattice from the full state set. Returns `None` for
    /// a non-synchronizing automaton. Witnesses are lexicographically
    /// smallest among the shortest.
    ///
    /// Errors with [`Error::SubsetBudgetExceeded`] when `n > max_n`,
    /// signalling the caller to fall back to bounds.
    pub fn shortest_reset_word(&self, max_n: usize) -> Result<Option<(usize, Vec<usize>)>> {
        if self.n > max_n {
            return Err(Error::SubsetBudgetExceeded {
                n: self.n,
                max_n,
            });
        }
        let (rank, word) = self.min_rank_search(true);
        if rank == 1 {
            Ok(Some((word.len(), word)))
        } else {
            Ok(None)
        }
    }

    /// Minimal rank `min |Q w|` over all words together with the
    /// lexicographically smallest shortest word attaining it.
    pub fn min_rank_word(&self, max_n: usize) -> Result<(usize, Vec<usize>)> {
        if self.n > max_n {
            return Err(Error::SubsetBudgetExceeded {
                n: self.n,
                max_n,
            });
        }
        Ok(self.min_rank_search(false))
    }

    /// BFS over images of the full state set. Explores letters in ascending
    /// order so the first node found at each size carries the
    /// lexicographically least shortest word. With `stop_at_singleton`, exits
    /// as soon as a singleton is dequeued-adjacent; otherwise exhausts the
    /// reachable image space to certify minimality.
    fn min_rank_search(&self, stop_at_singleton: bool) -> (usize, Vec<usize>) {
        struct Node {
            parent: usize,
            letter: usize,
        }
        let full = StateSet::full(self.n);
        let mut nodes = vec![Node {
            parent: usize::MAX,
            letter: usize::MAX,
        }];
        let mut sets = vec![full.clone()];
        let mut visited: HashMap<StateSet, usize> = HashMap::new();
        visited.insert(full.clone(), 0);
        let mut best = (full.len(), 0usize);
        if best.0 == 1 {
            return (1, Vec::new());
        }
        let mut queue = VecDeque::from([0usize]);
        'bfs: while let Some(node_idx) = queue.pop_front() {
            for x in 0..self.k {
                let img = self.image(&sets[node_idx], x);
                if visited.contains_key(&img) {
                    continue;
                }
                let new_idx = nodes.len();
                nodes.push(Node {
                    parent: node_idx,
                    letter: x,
                });
                let size = img.len();
                visited.insert(img.clone(), new_idx);
                sets.push(img);
                if size < best.0 {
                    best = (size, new_idx);
                    if size == 1 && stop_at_singleton {
                        break 'bfs;
                    }
                }
                queue.push_back(new_idx);
            }
        }
        let mut word = Vec::new();
        let mut at = best.1;
        while nodes[at].parent != usize::MAX {
            word.push(nodes[at].letter);
            at = nodes[at].parent;
        }
        word.reverse();
        (best.0, word)
    }

    /// The kernel of a word: states are equivalent iff the word maps them to
    /// the same state.
    pub fn kernel_of_word(&self, word: &[usize]) -> Result<PartitionRelation> {
        let mut by_target: HashMap<usize, Vec<usize>> = HashMap::new();
        for q in 0..self.n {
            by_target
                .entry(self.apply_word_state(q, word)?)
                .or_default()
                .push(q);
        }
        let blocks: Vec<Vec<usize>> = by_target.into_values().collect();
        PartitionRelation::new(self.n, blocks)
    }

    /// True iff for every letter and every block of `p`, the image of the
    /// block is contained in a single block.
    pub fn is_congruence(&self, p: &PartitionRelation) -> Result<bool> {
        if p.n() != self.n {
            return Err(Error::MalformedPartition(format!(
                "partition covers {} states, automaton has {}",
                p.n(),
                self.n
            )));
        }
        for (block_idx, block) in p.blocks().iter().enumerate() {
            for x in 0..self.k {
                let target_block = p.block_index(self.step(block[0], x));
                for &q in &block[1..] {
                    if p.block_index(self.step(q, x)) != target_block {
                        let _ = block_idx;
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// The factor automaton over a congruence: block `B` maps under letter
    /// `x` to the block containing `Bx`. Errors when `p` is not a congruence.
    pub fn factor(&self, p: &PartitionRelation) -> Result<Automaton> {
        if p.n() != self.n {
            return Err(Error::MalformedPartition(format!(
                "partition covers {} states, automaton has {}",
                p.n(),
                self.n
            )));
        }
        let blocks = p.blocks();
        let mut rows = Vec::with_capacity(blocks.len());
        for (block_idx, block) in blocks.iter().enumerate() {
            let mut row = Vec::with_capacity(self.k);
            for x in 0..self.k {
                let target = p.block_index(self.step(block[0], x));
                for &q in &block[1..] {
                    if p.block_index(self.step(q, x)) != target {
                        return Err(Error::NotACongruence {
                            block: block_idx,
                            letter: x,
                        });
                    }
                }
                row.push(target);
            }
            rows.push(row);
        }
        Automaton::from_rows(rows)
    }

    /// The family of inclusion-maximal synchronizing subsets of maximum
    /// weight. Computed as a closure: start from singletons, repeatedly take
    /// full letter preimages, retaining only inclusion-maximal sets, until a
    /// fixpoint; then keep the sets of maximum weight.
    ///
    /// Every synchronizing set is contained in `{q} w^{-1}` for some state
    /// `q` and word `w`, so the closure visits a superset of every maximal
    /// synchronizing set.
    pub fn max_weight_sync_family(&self, w: &WeightVector) -> Result<Vec<StateSet>> {
        if !self.is_strongly_connected() {
            return Err(Error::NotStronglyConnected);
        }
        if w.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "weight vector has {} entries, automaton has {} states",
                w.len(),
                self.n
            )));
        }
        let mut family: Vec<StateSet> = Vec::new();
        let mut queue: VecDeque<StateSet> = VecDeque::new();
        for q in 0..self.n {
            let s = StateSet::singleton(self.n, q);
            family.push(s.clone());
            queue.push_back(s);
        }
        while let Some(s) = queue.pop_front() {
            for x in 0..self.k {
                let p = self.preimage(&s, x);
                if p.is_empty() {
                    continue;
                }
                if family.iter().any(|f| p.is_subset(f)) {
                    continue;
                }
                family.retain(|f| !f.is_subset(&p));
                family.push(p.clone());
                queue.push_back(p);
            }
        }
        let max_weight = family
            .iter()
            .map(|s| s.weight(w))
            .max()
            .expect("family contains the singletons");
        let mut best: Vec<StateSet> = family
            .into_iter()
            .filter(|s| s.weight(w) == max_weight)
            .collect();
        best.sort_by_key(|s| s.iter().collect::<Vec<_>>());
        Ok(best)
    }

    /// Weight of a set under `w`.
    pub fn set_weight(&self, s: &StateSet, w: &WeightVector) -> BigUint {
        s.weight(w)
    }
}

/// Renders a word over letter indices as letters `a`, `b`, ... when the
/// alphabet fits the Latin alphabet, otherwise as dot-separated indices.
pub fn format_word(word: &[usize], k: usize) -> String {
    if word.is_empty() {
        return "ε".to_string();
    }
    if k <= 26 {
        word.iter()
            .map(|&x| char::from(b'a' + x as u8))
            .collect()
    } else {
        word.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}
