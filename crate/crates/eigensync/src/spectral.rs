//! Exact rational arithmetic and integer dominant left eigenvectors.
//!
//! The dominant left eigenvector of a strongly connected k-out-regular
//! digraph at eigenvalue k is unique up to scale and strictly positive
//! (Perron–Frobenius); normalizing its integer multiple to coprime entries
//! fixes a canonical representative. All arithmetic is exact: floating point
//! is never used.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::automaton::Automaton;
use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Exact rational number: arbitrary-precision, always reduced, positive
/// denominator. Rendered as `p/q`, or `p` when `q = 1`.
pub type Rational = BigRational;

/// Parses a rational from `p/q` or plain integer text. Decimal notation is
/// rejected: inputs carry an exactness contract.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let make_err =
        || Error::InvalidParameter(format!("`{text}` is not an exact rational (use p/q or an integer; decimals are rejected)"));
    if text.contains(['.', 'e', 'E']) {
        return Err(make_err());
    }
    match text.split_once('/') {
        None => {
            let p: BigInt = text.parse().map_err(|_| make_err())?;
            Ok(Rational::from_integer(p))
        }
        Some((num, den)) => {
            let p: BigInt = num.parse().map_err(|_| make_err())?;
            let q: BigInt = den.parse().map_err(|_| make_err())?;
            if q.is_zero() {
                return Err(Error::InvalidParameter(format!(
                    "`{text}` has a zero denominator"
                )));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// A probability distribution over the `k` letters: positive rationals
/// summing to exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    probs: Vec<Rational>,
}

impl Distribution {
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("no letter probabilities".into()));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_positive()) {
            return Err(Error::InvalidDistribution(format!(
                "probability {p} is not positive"
            )));
        }
        let sum: Rational = probs.iter().sum();
        if !sum.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(Distribution { probs })
    }

    /// The uniform distribution `(1/k, ..., 1/k)`.
    pub fn uniform(k: usize) -> Self {
        let p = Rational::new(BigInt::one(), BigInt::from(k));
        Distribution {
            probs: vec![p; k],
        }
    }

    pub fn k(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn is_uniform(&self) -> bool {
        self.probs.iter().all(|p| p == &self.probs[0])
    }

    /// The least common denominator `l` and the numerators `m_i` such that
    /// `p_i = m_i / l`.
    pub fn common_denominator(&self) -> (BigUint, Vec<BigUint>) {
        let mut l = BigUint::one();
        for p in &self.probs {
            l = l.lcm(p.denom().magnitude());
        }
        let numerators = self
            .probs
            .iter()
            .map(|p| {
                let scaled = p * Rational::from_integer(BigInt::from(l.clone()));
                scaled.to_integer().magnitude().clone()
            })
            .collect();
        (l, numerators)
    }
}

/// A normalized positive integer weight vector: entries >= 1 with gcd 1.
///
/// For the uniform eigenvector of a digraph it satisfies the exact balance
/// equation `sum_i c_ij * w[i] = k * w[j]` for every `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    entries: Vec<BigUint>,
}

impl WeightVector {
    /// Builds a weight vector from positive entries, dividing out the gcd to
    /// reach the canonical coprime form.
    pub fn new(entries: Vec<BigUint>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter("empty weight vector".into()));
        }
        if entries.iter().any(|e| e.is_zero()) {
            return Err(Error::InvalidParameter(
                "weight vector entries must be positive".into(),
            ));
        }
        let mut g = entries[0].clone();
        for e in &entries[1..] {
            g = g.gcd(e);
        }
        let entries = if g.is_one() {
            entries
        } else {
            entries.iter().map(|e| e / &g).collect()
        };
        Ok(WeightVector { entries })
    }

    pub fn from_u64s(entries: &[u64]) -> Result<Self> {
        Self::new(entries.iter().map(|&e| BigUint::from(e)).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, i: usize) -> &BigUint {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.entries
    }

    /// Total weight: the sum of all entries.
    pub fn sum(&self) -> BigUint {
        self.entries.iter().sum()
    }

    /// Entries as `u128`, for the partition-analysis routines.
    pub fn to_u128_entries(&self) -> Result<Vec<u128>> {
        self.entries
            .iter()
            .map(|e| {
                u128::try_from(e).map_err(|_| Error::WeightSumTooLarge {
                    total: self.sum().to_string(),
                    limit: u128::MAX,
                })
            })
            .collect()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// A nonzero rational row vector `v` with `v * m = 0`, or `None` when `m` is
/// nonsingular. Canonical choice: the first free variable of the eliminated
/// system is set to 1 and the result is cleared to coprime integers.
pub fn left_nullspace_vector(m: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    nullspace_with_rank(m).1
}

/// Fraction-free (Bareiss) elimination on the transpose; returns the rank
/// and the canonical left-null vector when the nullspace is nontrivial.
fn nullspace_with_rank(m: &[Vec<Rational>]) -> (usize, Option<Vec<Rational>>) {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    if n == 0 {
        return (0, None);
    }

    // v * m = 0  <=>  m^T v^T = 0. Scale each row of m^T to integers; row
    // scaling preserves the solution set.
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut lcm = BigInt::one();
            for j in 0..n {
                lcm = lcm.lcm(m[j][i].denom());
            }
            (0..n)
                .map(|j| (&m[j][i] * Rational::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect();

    // One-step fraction-free elimination: every division by the previous
    // pivot is exact, keeping intermediate entries at minor-sized integers.
    let mut prev = BigInt::one();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut piv_row = 0usize;
    for col in 0..n {
        if piv_row == n {
            break;
        }
        let Some(r) = (piv_row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(piv_row, r);
        for i in piv_row + 1..n {
            for j in col + 1..n {
                let t = (&a[piv_row][col] * &a[i][j] - &a[i][col] * &a[piv_row][j]) / &prev;
                a[i][j] = t;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[piv_row][col].clone();
        pivots.push((piv_row, col));
        piv_row += 1;
    }

    let rank = pivots.len();
    if rank == n {
        return (rank, None);
    }

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let first_free = (0..n)
        .find(|c| !pivot_cols.contains(c))
        .expect("rank < n implies a free column");

    let mut x = vec![Rational::zero(); n];
    x[first_free] = Rational::one();
    for &(r, pc) in pivots.iter().rev() {
        let mut sum = Rational::zero();
        for j in pc + 1..n {
            if !a[r][j].is_zero() && !x[j].is_zero() {
                sum += Rational::from_integer(a[r][j].clone()) * &x[j];
            }
        }
        x[pc] = -sum / Rational::from_integer(a[r][pc].clone());
    }

    // Clear to coprime integers.
    let mut lcm = BigInt::one();
    for e in &x {
        lcm = lcm.lcm(e.denom());
    }
    let mut ints: Vec<BigInt> = x
        .iter()
        .map(|e| (e * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for e in &ints {
        g = g.gcd(e);
    }
    if !g.is_zero() && !g.is_one() {
        for e in &mut ints {
            *e /= &g;
        }
    }
    (
        rank,
        Some(ints.into_iter().map(Rational::from_integer).collect()),
    )
}

/// The unique positive integer left eigenvector of the adjacency matrix of
/// `g` at eigenvalue `k`, normalized to coprime entries. Satisfies
/// `sum_i c_ij * w[i] = k * w[j]` for every `j`.
pub fn integer_eigenvector(g: &Digraph) -> Result<WeightVector> {
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let counts = g.adjacency_counts();
    let n = g.n();
    let k = BigInt::from(g.k());
    let m: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut e = BigInt::from(counts[i][j]);
                    if i == j {
                        e -= &k;
                    }
                    Rational::from_integer(e)
                })
                .collect()
        })
        .collect();
    eigenvector_from_matrix(&m)
}

/// The positive integer left eigenvector of `sum_i p_i A_i` at eigenvalue 1
/// (scaled to coprime integers), where `A_i` are the letter matrices of `a`.
pub fn weighted_integer_eigenvector(a: &Automaton, d: &Distribution) -> Result<WeightVector> {
    if d.k() != a.k() {
        return Err(Error::InvalidDistribution(format!(
            "distribution has {} probabilities, automaton has {} letters",
            d.k(),
            a.k()
        )));
    }
    if !a.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let n = a.n();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        for (x, p) in d.probs().iter().enumerate() {
            row[a.step(i, x)] += p;
        }
        row[i] -= Rational::one();
    }
    eigenvector_from_matrix(&m)
}

fn eigenvector_from_matrix(m: &[Vec<Rational>]) -> Result<WeightVector> {
    let n = m.len();
    let (rank, v) = nullspace_with_rank(m);
    let v = v.ok_or_else(|| {
        Error::Spectral("stochastic matrix unexpectedly has a trivial nullspace".into())
    })?;
    if rank != n - 1 {
        return Err(Error::Spectral(format!(
            "dominant eigenspace has dimension {} > 1",
            n - rank
        )));
    }
    let mut ints: Vec<BigInt> = v.into_iter().map(|e| e.to_integer()).collect();
    if ints.iter().any(|e| e.sign() == Sign::Minus) {
        for e in &mut ints {
            *e = -e.clone();
        }
    }
    if ints.iter().any(|e| e.sign() != Sign::Plus) {
        return Err(Error::Spectral(
            "dominant eigenvector is not strictly positive".into(),
        ));
    }
    WeightVector::new(ints.into_iter().map(|e| e.magnitude().clone()).collect())
}

/// True iff every entry of `w` is at most `(2 k^2)^((n-1)/2)`, compared in
/// exact integer arithmetic. For odd `n - 1`, compares squares against
/// `(2 k^2)^(n-1)` to avoid irrational roots.
pub fn check_entry_bound(g: &Digraph, w: &WeightVector) -> bool {
    let n = g.n();
    let base = BigUint::from(2 * g.k() * g.k());
    if (n - 1) % 2 == 0 {
        let bound = base.pow(((n - 1) / 2) as u32);
        w.entries().iter().all(|e| e <= &bound)
    } else {
        let bound = base.pow((n - 1) as u32);
        w.entries().iter().all(|e| e * e <= bound)
    }
}

/// Checks the exact balance identity `sum_i c_ij * w[i] = k * w[j]` for
/// every column `j`.
pub fn satisfies_balance(g: &Digraph, w: &WeightVector) -> bool {
    if w.len() != g.n() {
        return false;
    }
    let counts = g.adjacency_counts();
    let k = BigUint::from(g.k());
    for j in 0..g.n() {
        let mut incoming = BigUint::zero();
        for i in 0..g.n() {
            incoming += counts[i][j] * w.entry(i);
        }
        if incoming != &k * w.entry(j) {
            return false;
        }
    }
    true
}
