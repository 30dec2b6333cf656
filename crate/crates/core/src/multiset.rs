//! Multiset specifications, permutations of them, and the transpositions
//! that move between permutations.
//!
//! Positions are 1-based in every public type: a [`Transposition`] `(i,j)`
//! always has `1 <= i < j <= n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};

/// Default upper bound on the number of items any materializing operation
/// will produce.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// Multiplicities `m_1..m_k` of the element types `1..k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MultisetSpec {
    multiplicities: Vec<usize>,
}

impl MultisetSpec {
    pub fn new(multiplicities: Vec<usize>) -> Result<Self> {
        if multiplicities.is_empty() {
            return Err(Error::InvalidSpec(
                "at least one element type is required".into(),
            ));
        }
        if let Some(pos) = multiplicities.iter().position(|&m| m == 0) {
            return Err(Error::InvalidSpec(format!(
                "multiplicity of type {} is zero",
                pos + 1
            )));
        }
        Ok(Self { multiplicities })
    }

    /// Two-type spec `1^k 2^(n-k)`, the multiset form of a `k`-combination.
    pub fn combination(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::InvalidArgs(format!(
                "combination spec needs 0 < k < n, got n={n} k={k}"
            )));
        }
        Self::new(vec![k, n - k])
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Number of element types `k`.
    pub fn types(&self) -> usize {
        self.multiplicities.len()
    }

    /// Total number of elements `n`.
    pub fn len(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn multiplicity(&self, symbol: u32) -> usize {
        self.multiplicities[symbol as usize - 1]
    }

    /// The non-decreasing arrangement `1^m1 2^m2 ... k^mk`.
    pub fn sorted_arrangement(&self) -> Permutation {
        let symbols = self
            .multiplicities
            .iter()
            .enumerate()
            .flat_map(|(t, &m)| std::iter::repeat_n(t as u32 + 1, m))
            .collect();
        Permutation(symbols)
    }

    /// Whether `symbols` is an arrangement of exactly this multiset.
    pub fn admits(&self, symbols: &[u32]) -> bool {
        if symbols.len() != self.len() {
            return false;
        }
        let mut counts = vec![0usize; self.types()];
        for &s in symbols {
            if s == 0 || s as usize > self.types() {
                return false;
            }
            counts[s as usize - 1] += 1;
        }
        counts == self.multiplicities
    }

    /// Rejects the spec when its permutation count is above `cap`.
    pub fn check_cap(&self, cap: u64) -> Result<u64> {
        check_count("multiset permutation list", &multinomial_count(self), cap)
    }
}

/// Parses `"2,2,1,1"` into multiplicities.
impl FromStr for MultisetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let multiplicities = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad multiplicity {part:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(multiplicities)
    }
}

impl fmt::Display for MultisetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.multiplicities.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub(crate) fn check_count(what: &'static str, count: &BigUint, cap: u64) -> Result<u64> {
    match count.to_u64() {
        Some(c) if c <= cap => Ok(c),
        _ => Err(Error::CapExceeded {
            what,
            count: count.to_string(),
            cap,
        }),
    }
}

/// `n! / (m_1! ... m_k!)`, computed exactly.
pub fn multinomial_count(spec: &MultisetSpec) -> BigUint {
    // Product of binomials C(m_1 + .. + m_t, m_t), each built incrementally so
    // every intermediate division is exact.
    let mut total = BigUint::one();
    let mut placed = 0u64;
    for &m in spec.multiplicities() {
        for i in 1..=m as u64 {
            placed += 1;
            total *= placed;
            total /= i;
        }
    }
    total
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// All distinct permutations of `spec` in strict lexicographic order.
pub fn enumerate_lex(spec: &MultisetSpec, cap: u64) -> Result<Vec<Permutation>> {
    let count = spec.check_cap(cap)? as usize;
    let mut current = spec.sorted_arrangement().0;
    let mut out = Vec::with_capacity(count);
    loop {
        out.push(Permutation(current.clone()));
        if !next_lex(&mut current) {
            break;
        }
    }
    Ok(out)
}

fn next_lex(a: &mut [u32]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let pivot = i - 1;
    let j = (i..a.len()).rev().find(|&j| a[j] > a[pivot]).unwrap();
    a.swap(pivot, j);
    a[i..].reverse();
    true
}

/// An arrangement of the symbols of a multiset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(pub Vec<u32>);

impl Permutation {
    pub fn symbols(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Copy of `self` with the symbols at `t.i` and `t.j` exchanged.
    pub fn apply(&self, t: Transposition) -> Result<Permutation> {
        let mut out = self.clone();
        t.apply_to(&mut out.0)?;
        Ok(out)
    }
}

impl From<Vec<u32>> for Permutation {
    fn from(v: Vec<u32>) -> Self {
        Permutation(v)
    }
}

pub fn apply_transposition(p: &Permutation, t: Transposition) -> Result<Permutation> {
    p.apply(t)
}

/// Writes symbols as a digit string when every symbol is a single digit,
/// otherwise as comma-separated integers.
pub fn format_symbols(symbols: &[u32]) -> String {
    if symbols.iter().all(|&s| s <= 9) {
        symbols
            .iter()
            .map(|s| char::from(b'0' + *s as u8))
            .collect()
    } else {
        let parts: Vec<String> = symbols.iter().map(|s| s.to_string()).collect();
        parts.join(",")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_symbols(&self.0))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad symbol {t:?} in {s:?}")))
        };
        let symbols = if s.contains(',') {
            s.split(',').map(parse).collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("bad symbol {c:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Permutation(symbols))
    }
}

/// Exchange of the contents of positions `i < j` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Transposition {
    i: usize,
    j: usize,
}

impl Transposition {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == 0 || i >= j {
            return Err(Error::IndexOutOfRange { i, j, len: 0 });
        }
        Ok(Self { i, j })
    }

    /// Builds from two distinct 0-based indices in either order.
    pub(crate) fn from_zero_based(a: usize, b: usize) -> Self {
        debug_assert_ne!(a, b);
        Self {
            i: a.min(b) + 1,
            j: a.max(b) + 1,
        }
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn width(&self) -> usize {
        self.j - self.i
    }

    pub fn apply_to<T>(&self, cells: &mut [T]) -> Result<()> {
        if self.j > cells.len() {
            return Err(Error::IndexOutOfRange {
                i: self.i,
                j: self.j,
                len: cells.len(),
            });
        }
        cells.swap(self.i - 1, self.j - 1);
        Ok(())
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl FromStr for Transposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("transposition {s:?} is not of the form (i,j)")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("transposition {s:?} is not of the form (i,j)")))?;
        let a = a.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
        let b = b.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
        Transposition::new(a, b)
    }
}

/// The transposition taking `a` to `b`, if they differ in exactly two
/// positions whose contents are crossed.
pub fn transposition_between<T: PartialEq>(a: &[T], b: &[T]) -> Option<Transposition> {
    if a.len() != b.len() {
        return None;
    }
    let mut diff = (0..a.len()).filter(|&i| a[i] != b[i]);
    let (p, q) = (diff.next()?, diff.next()?);
    if diff.next().is_some() {
        return None;
    }
    (a[p] == b[q] && a[q] == b[p]).then(|| Transposition::from_zero_based(p, q))
}

/// An ordered run of states where each state follows from the previous one
/// by a single transposition. Signs alternate starting at `+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayTrace<S> {
    states: Vec<S>,
    steps: Vec<Transposition>,
}

impl<S> GrayTrace<S> {
    pub fn new(first: S) -> Self {
        Self {
            states: vec![first],
            steps: Vec::new(),
        }
    }

    pub fn push(&mut self, step: Transposition, state: S) {
        self.steps.push(step);
        self.states.push(state);
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    pub fn steps(&self) -> &[Transposition] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn first(&self) -> &S {
        &self.states[0]
    }

    pub fn last(&self) -> &S {
        self.states.last().unwrap()
    }

    pub fn sign(index: usize) -> i8 {
        if index.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn signs(&self) -> impl Iterator<Item = i8> + '_ {
        (0..self.states.len()).map(Self::sign)
    }

    pub fn into_states(self) -> Vec<S> {
        self.states
    }
}

impl<S> GrayTrace<S> {
    /// Builds a trace from a list of states, recovering each step. Returns
    /// `None` if some consecutive pair is not a single transposition.
    pub fn from_states<T: PartialEq>(states: Vec<S>) -> Option<Self>
    where
        S: AsRef<[T]>,
    {
        let mut steps = Vec::with_capacity(states.len().saturating_sub(1));
        for w in states.windows(2) {
            steps.push(transposition_between(w[0].as_ref(), w[1].as_ref())?);
        }
        if states.is_empty() {
            return None;
        }
        Some(Self { states, steps })
    }
}

impl AsRef<[u32]> for Permutation {
    fn as_ref(&self) -> &[u32] {
        &self.0
    }
}
