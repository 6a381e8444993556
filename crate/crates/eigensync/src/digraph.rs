//! k-out-regular digraphs with multi-edges and loops.

use num_bigint::BigUint;
use num_traits::One;

use crate::automaton::Automaton;
use crate::error::{Error, Result};

/// A digraph on `n` vertices where every vertex has exactly `k` ordered
/// outgoing edge slots. Multi-edges and loops are allowed.
///
/// Equality has multiset semantics: slot lists are kept sorted ascending per
/// vertex (the canonical form), so two digraphs are equal iff the per-vertex
/// destination multisets agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    k: usize,
    /// Flat `n * k` slot table, row-major, each row sorted ascending.
    slots: Vec<usize>,
}

impl Digraph {
    /// Builds a digraph from per-vertex destination lists. Each row must have
    /// the same length `k >= 1`, and every destination must lie in `[0, n)`.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidParameter(
                "digraph needs at least one vertex".into(),
            ));
        }
        let k = rows[0].len();
        if k == 0 {
            return Err(Error::InvalidParameter(
                "digraph needs out-degree at least 1".into(),
            ));
        }
        let mut slots = Vec::with_capacity(n * k);
        for (row_idx, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidParameter(format!(
                    "row {row_idx} has {} slots, expected {k}",
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
            let mut sorted = row.clone();
            sorted.sort_unstable();
            slots.extend_from_slice(&sorted);
        }
        Ok(Digraph { n, k, slots })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The sorted destination slots of vertex `v`.
    pub fn slots(&self, v: usize) -> &[usize] {
        &self.slots[v * self.k..(v + 1) * self.k]
    }

    /// Edge multiplicity counts: `counts[i][j]` is the number of slots of
    /// vertex `i` pointing to `j`.
    pub fn adjacency_counts(&self) -> Vec<Vec<usize>> {
        let mut counts = vec![vec![0usize; self.n]; self.n];
        for v in 0..self.n {
            for &d in self.slots(v) {
                counts[v][d] += 1;
            }
        }
        counts
    }

    /// In-degree of every vertex, counting multiplicity.
    pub fn in_degrees(&self) -> Vec<usize> {
        let mut degs = vec![0usize; self.n];
        for &d in &self.slots {
            degs[d] += 1;
        }
        degs
    }

    /// True iff every vertex reaches every other vertex along directed edges.
    pub fn is_strongly_connected(&self) -> bool {
        if self.n == 1 {
            return true;
        }
        self.reaches_all_forward() && self.reaches_all_backward()
    }

    fn reaches_all_forward(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &d in self.slots(v) {
                if !seen[d] {
                    seen[d] = true;
                    count += 1;
                    stack.push(d);
                }
            }
        }
        count == self.n
    }

    fn reaches_all_backward(&self) -> bool {
        let mut rev = vec![Vec::new(); self.n];
        for v in 0..self.n {
            for &d in self.slots(v) {
                rev[d].push(v);
            }
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &p in &rev[v] {
                if !seen[p] {
                    seen[p] = true;
                    count += 1;
                    stack.push(p);
                }
            }
        }
        count == self.n
    }

    /// True iff the digraph is primitive: strongly connected and aperiodic.
    ///
    /// The period is the gcd over all edges `(u, v)` of
    /// `level(u) + 1 - level(v)` where levels come from a BFS; the digraph is
    /// aperiodic iff that gcd is 1.
    pub fn is_primitive(&self) -> bool {
        if !self.is_strongly_connected() {
            return false;
        }
        let levels = self.bfs_levels(0);
        let mut period: u64 = 0;
        for u in 0..self.n {
            for &v in self.slots(u) {
                let diff = levels[u] as i64 + 1 - levels[v] as i64;
                period = gcd_u64(period, diff.unsigned_abs());
                if period == 1 {
                    return true;
                }
            }
        }
        period == 1
    }

    fn bfs_levels(&self, start: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.n];
        level[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &d in self.slots(v) {
                if level[d] == usize::MAX {
                    level[d] = level[v] + 1;
                    queue.push_back(d);
                }
            }
        }
        level
    }

    /// True iff every vertex has in-degree equal to the out-degree `k`.
    pub fn is_eulerian(&self) -> bool {
        self.in_degrees().iter().all(|&d| d == self.k)
    }

    /// Checks the Eulerian property, reporting the first offending vertex.
    pub fn require_eulerian(&self) -> Result<()> {
        for (state, &d) in self.in_degrees().iter().enumerate() {
            if d != self.k {
                return Err(Error::NotEulerian {
                    state,
                    in_degree: d,
                    out_degree: self.k,
                });
            }
        }
        Ok(())
    }

    /// Number of distinct transition functions obtainable by coloring: the
    /// product over vertices of the multinomial `k! / prod(multiplicity!)`.
    pub fn coloring_function_count(&self) -> BigUint {
        let mut total = BigUint::one();
        for v in 0..self.n {
            total *= distinct_arrangements(self.slots(v));
        }
        total
    }

    /// Number of slot-labelings that induce each single transition function:
    /// the product over vertices of `prod(multiplicity!)`. Multiplying this
    /// by [`coloring_function_count`](Self::coloring_function_count) gives
    /// `(k!)^n` exactly.
    pub fn labelings_per_function(&self) -> BigUint {
        let mut total = BigUint::one();
        for v in 0..self.n {
            for m in multiplicities(self.slots(v)) {
                total *= factorial(m);
            }
        }
        total
    }

    /// Iterates all distinct colorings (transition functions) of the digraph,
    /// states ascending, letter assignments in lexicographic order of
    /// destination tuples. The last vertex varies fastest.
    pub fn colorings(&self) -> Colorings<'_> {
        let current = (0..self.n).map(|v| self.slots(v).to_vec()).collect();
        Colorings {
            g: self,
            current: Some(current),
        }
    }
}

/// Iterator over distinct transition functions of a digraph.
pub struct Colorings<'g> {
    g: &'g Digraph,
    current: Option<Vec<Vec<usize>>>,
}

impl Iterator for Colorings<'_> {
    type Item = Automaton;

    fn next(&mut self) -> Option<Automaton> {
        let tuples = self.current.as_mut()?;
        let result = Automaton::from_rows(tuples.clone())
            .expect("coloring rows are valid by construction");
        // Odometer step: advance the last vertex that still has a next
        // permutation, resetting the ones behind it.
        let mut advanced = false;
        for v in (0..self.g.n).rev() {
            if next_multiset_permutation(&mut tuples[v]) {
                advanced = true;
                break;
            }
            tuples[v].copy_from_slice(self.g.slots(v));
        }
        if !advanced {
            self.current = None;
        }
        Some(result)
    }
}

/// Advances `arr` to the next lexicographic permutation of its multiset.
/// Returns false (leaving `arr` sorted descending) when exhausted.
fn next_multiset_permutation(arr: &mut [usize]) -> bool {
    if arr.len() < 2 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

fn multiplicities(sorted: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut run = 0usize;
    for i in 0..sorted.len() {
        run += 1;
        if i + 1 == sorted.len() || sorted[i + 1] != sorted[i] {
            out.push(run);
            run = 0;
        }
    }
    out
}

fn distinct_arrangements(sorted: &[usize]) -> BigUint {
    let mut result = factorial(sorted.len());
    for m in multiplicities(sorted) {
        result /= factorial(m);
    }
    result
}

pub(crate) fn factorial(m: usize) -> BigUint {
    let mut f = BigUint::one();
    for i in 2..=m {
        f *= BigUint::from(i);
    }
    f
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}
