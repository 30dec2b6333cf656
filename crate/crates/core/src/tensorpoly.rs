//! Young tableau column enumeration and the curvature-tensor polynomial it
//! produces.
//!
//! The tableau is filled in two-row bands: band `b` holds consecutive
//! numbers, placed column by column with the pair `(2j-1, 2j)` stacked in a
//! column. Within each column the two numbers of a pair are identified, so
//! a column of height `h` contributes the multiset `{1:2, 2:2, ..}` with
//! `h/2` types. The column lists come from the multiset generator, applied
//! to the actual numbers, and the columns are combined as a reflected
//! mixed-radix product with the leftmost column changing fastest. Every
//! state differs from the previous one by a single transposition, so signs
//! alternate.
//!
//! A term maps number `i` to the row it sits in; numbers `4f+1..4f+4` give
//! the indices of factor `f`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiperm::for_each_move;
use crate::multiset::{
    check_count, format_symbols, multinomial_count, MultisetSpec, Transposition,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YoungTableau {
    partition: Vec<usize>,
    /// `rows[r][c]` is the number in row `r`, column `c` (0-based).
    rows: Vec<Vec<u32>>,
}

pub fn build_tableau(partition: &[usize]) -> Result<YoungTableau> {
    if partition.is_empty() || partition.contains(&0) {
        return Err(Error::InvalidArgs(format!(
            "{partition:?} is not a partition"
        )));
    }
    if partition.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidArgs(format!(
            "{partition:?} is not non-increasing"
        )));
    }
    if !partition.len().is_multiple_of(2) || partition.chunks(2).any(|p| p[0] != p[1]) {
        return Err(Error::UnpairableShape(partition.to_vec()));
    }
    let mut rows: Vec<Vec<u32>> = partition.iter().map(|&l| vec![0; l]).collect();
    let mut next = 1u32;
    for band in 0..partition.len() / 2 {
        #[allow(clippy::needless_range_loop)]
        for c in 0..partition[2 * band] {
            rows[2 * band][c] = next;
            rows[2 * band + 1][c] = next + 1;
            next += 2;
        }
    }
    Ok(YoungTableau {
        partition: partition.to_vec(),
        rows,
    })
}

impl YoungTableau {
    pub fn partition(&self) -> &[usize] {
        &self.partition
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Total number of boxes.
    pub fn size(&self) -> usize {
        self.partition.iter().sum()
    }

    pub fn column_heights(&self) -> Vec<usize> {
        (0..self.partition[0])
            .map(|c| self.partition.iter().filter(|&&l| l > c).count())
            .collect()
    }

    /// Columns, each listed top to bottom.
    pub fn columns(&self) -> Vec<Vec<u32>> {
        self.column_heights()
            .iter()
            .enumerate()
            .map(|(c, &h)| (0..h).map(|r| self.rows[r][c]).collect())
            .collect()
    }

    /// 1-based row holding `number`.
    pub fn row_of(&self, number: u32) -> Option<usize> {
        self.rows
            .iter()
            .position(|row| row.contains(&number))
            .map(|r| r + 1)
    }

    /// The number identified with `number`.
    pub fn partner(&self, number: u32) -> u32 {
        if number % 2 == 1 {
            number + 1
        } else {
            number - 1
        }
    }

    fn column_spec(height: usize) -> MultisetSpec {
        MultisetSpec::new(vec![2; height / 2]).expect("columns have even height")
    }

    /// Length of the reduced stream, the product of the per-column counts.
    pub fn reduced_count(&self) -> BigUint {
        self.column_heights()
            .iter()
            .map(|&h| multinomial_count(&Self::column_spec(h)))
            .product()
    }

    /// Order of the full column group, `prod h_c!`.
    pub fn vertical_group_order(&self) -> BigUint {
        self.column_heights()
            .iter()
            .map(|&h| (1..=h as u64).fold(BigUint::one(), |acc, x| acc * x))
            .product()
    }
}

/// The reduced column-group stream. The first state is the tableau itself
/// with sign `+1`.
#[derive(Debug, Clone)]
pub struct VerticalStream {
    columns: Vec<Vec<u32>>,
    steps: Vec<Vec<Transposition>>,
    pos: Vec<usize>,
    forward: Vec<bool>,
    sign: i8,
    started: bool,
}

impl VerticalStream {
    pub fn new(t: &YoungTableau) -> Self {
        let columns = t.columns();
        let steps: Vec<Vec<Transposition>> = columns
            .iter()
            .map(|col| {
                let mut list = Vec::new();
                for_each_move(&YoungTableau::column_spec(col.len()), |mv| {
                    list.push(mv.transposition)
                });
                list
            })
            .collect();
        let n = columns.len();
        Self {
            columns,
            steps,
            pos: vec![0; n],
            forward: vec![true; n],
            sign: 1,
            started: false,
        }
    }

    pub fn columns(&self) -> &[Vec<u32>] {
        &self.columns
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Moves to the next state. Returns the column index and the
    /// transposition applied within it, or `None` when the stream is done.
    /// The first call only marks the start.
    pub fn advance(&mut self) -> Option<Option<(usize, Transposition)>> {
        if !self.started {
            self.started = true;
            return Some(None);
        }
        let c = (0..self.columns.len()).find(|&c| {
            if self.forward[c] {
                self.pos[c] < self.steps[c].len()
            } else {
                self.pos[c] > 0
            }
        })?;
        for d in &mut self.forward[..c] {
            *d = !*d;
        }
        let t = if self.forward[c] {
            self.pos[c] += 1;
            self.steps[c][self.pos[c] - 1]
        } else {
            self.pos[c] -= 1;
            self.steps[c][self.pos[c]]
        };
        t.apply_to(&mut self.columns[c]).expect("step fits column");
        self.sign = -self.sign;
        Some(Some((c, t)))
    }

    /// Number of remaining states, walking the stream without copying.
    pub fn count_remaining(mut self) -> u64 {
        let mut n = 0;
        while self.advance().is_some() {
            n += 1;
        }
        n
    }
}

/// A signed filling of the tableau, one column per entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub columns: Vec<Vec<u32>>,
    pub sign: i8,
}

impl Assignment {
    /// 1-based row of each number, indexed by number (entry 0 unused).
    pub fn row_map(&self) -> Vec<u32> {
        let n = self.columns.iter().map(|c| c.len()).sum::<usize>();
        let mut rows = vec![0; n + 1];
        for col in &self.columns {
            for (r, &num) in col.iter().enumerate() {
                rows[num as usize] = r as u32 + 1;
            }
        }
        rows
    }

    /// `+ 1256 3478`
    pub fn diagram(&self) -> String {
        let cols: Vec<String> = self.columns.iter().map(|c| format_symbols(c)).collect();
        format!(
            "{} {}",
            if self.sign > 0 { '+' } else { '-' },
            cols.join(" ")
        )
    }
}

pub fn reduced_vertical_enumerate(t: &YoungTableau, cap: u64) -> Result<Vec<Assignment>> {
    check_count("reduced column stream", &t.reduced_count(), cap)?;
    let mut stream = VerticalStream::new(t);
    let mut out = Vec::new();
    while stream.advance().is_some() {
        out.push(Assignment {
            columns: stream.columns().to_vec(),
            sign: stream.sign(),
        });
    }
    Ok(out)
}

/// Four index labels in canonical order: each pair ascending, pairs in
/// lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TensorFactor(pub [u32; 4]);

impl fmt::Display for TensorFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R_{}", format_symbols(&self.0))
    }
}

/// Applies the pair antisymmetries and the pair interchange. `None` when a
/// pair repeats a label, which forces the factor to vanish.
pub fn canonicalize_factor(idx: [u32; 4]) -> Option<(TensorFactor, i8)> {
    let [mut a, mut b, mut c, mut d] = idx;
    if a == b || c == d {
        return None;
    }
    let mut sign = 1;
    if a > b {
        std::mem::swap(&mut a, &mut b);
        sign = -sign;
    }
    if c > d {
        std::mem::swap(&mut c, &mut d);
        sign = -sign;
    }
    if (a, b) > (c, d) {
        return Some((TensorFactor([c, d, a, b]), sign));
    }
    Some((TensorFactor([a, b, c, d]), sign))
}

/// A product of factors with its sign, before any symmetry is applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTerm {
    pub sign: i8,
    pub factors: Vec<[u32; 4]>,
}

impl fmt::Display for RawTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|q| format!("R_{}", format_symbols(q)))
            .collect();
        write!(
            f,
            "{}{}",
            if self.sign > 0 { '+' } else { '-' },
            parts.join("*")
        )
    }
}

impl Assignment {
    pub fn raw_term(&self) -> RawTerm {
        let rows = self.row_map();
        let factors = rows[1..]
            .chunks(4)
            .map(|q| [q[0], q[1], q[2], q[3]])
            .collect();
        RawTerm {
            sign: self.sign,
            factors,
        }
    }
}

fn check_factorable(t: &YoungTableau) -> Result<()> {
    if !t.size().is_multiple_of(4) {
        return Err(Error::InvalidArgs(format!(
            "{} boxes do not split into 4-index factors",
            t.size()
        )));
    }
    Ok(())
}

pub fn raw_terms(t: &YoungTableau, cap: u64) -> Result<Vec<RawTerm>> {
    check_factorable(t)?;
    Ok(reduced_vertical_enumerate(t, cap)?
        .iter()
        .map(Assignment::raw_term)
        .collect())
}

/// Canonical factors mapped to integer coefficients, zero entries dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TensorPolynomial {
    terms: BTreeMap<Vec<TensorFactor>, i64>,
}

impl TensorPolynomial {
    pub fn add(&mut self, factors: Vec<TensorFactor>, coefficient: i64) {
        let entry = self.terms.entry(factors);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coefficient;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                if coefficient != 0 {
                    e.insert(coefficient);
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<TensorFactor>, i64> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, by: i64) -> Self {
        let mut out = Self::default();
        for (k, &v) in &self.terms {
            out.add(k.clone(), v * by);
        }
        out
    }

    /// One term per line, e.g. `+2*R_1214*R_2334`.
    pub fn to_human(&self) -> String {
        self.terms
            .iter()
            .map(|(factors, c)| {
                let fs: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
                format!("{c:+}*{}\n", fs.join("*"))
            })
            .collect()
    }

    /// One term per line: the coefficient, then each factor's four indices.
    pub fn to_machine(&self) -> String {
        self.terms
            .iter()
            .map(|(factors, c)| {
                let fs: Vec<String> = factors.iter().map(|f| format_symbols(&f.0)).collect();
                format!("{c} {}\n", fs.join(" "))
            })
            .collect()
    }
}

/// Sums the signed terms of the reduced stream. With
/// `identify_equal_factors` the factors of each term are sorted, so
/// products that differ only in factor order are collected together.
pub fn build_polynomial(
    t: &YoungTableau,
    identify_equal_factors: bool,
    cap: u64,
) -> Result<TensorPolynomial> {
    check_factorable(t)?;
    check_count("reduced column stream", &t.reduced_count(), cap)?;
    let mut poly = TensorPolynomial::default();
    let mut stream = VerticalStream::new(t);
    while stream.advance().is_some() {
        let assignment = Assignment {
            columns: stream.columns().to_vec(),
            sign: stream.sign(),
        };
        let raw = assignment.raw_term();
        let mut sign = raw.sign as i64;
        let mut factors = Vec::with_capacity(raw.factors.len());
        let mut vanishes = false;
        for q in raw.factors {
            match canonicalize_factor(q) {
                Some((f, s)) => {
                    sign *= s as i64;
                    factors.push(f);
                }
                None => {
                    vanishes = true;
                    break;
                }
            }
        }
        if vanishes {
            continue;
        }
        if identify_equal_factors {
            factors.sort();
        }
        poly.add(factors, sign);
    }
    Ok(poly)
}

/// The collected invariant for the `2,2,2,2` tableau as published by
/// Agaoka, written as half of the polynomial this crate produces.
pub const AGAOKA_B2222_HALF: [(i64, [[u32; 4]; 2]); 12] = [
    (1, [[1, 2, 3, 4], [1, 2, 3, 4]]),
    (1, [[1, 4, 2, 3], [1, 4, 2, 3]]),
    (1, [[1, 3, 2, 4], [1, 3, 2, 4]]),
    (1, [[1, 2, 1, 2], [3, 4, 3, 4]]),
    (1, [[1, 3, 1, 3], [2, 4, 2, 4]]),
    (1, [[1, 4, 1, 4], [2, 3, 2, 3]]),
    (2, [[1, 2, 1, 4], [2, 3, 3, 4]]),
    (2, [[1, 2, 2, 3], [1, 4, 3, 4]]),
    (-2, [[1, 2, 1, 3], [2, 4, 3, 4]]),
    (-2, [[1, 2, 2, 4], [1, 3, 3, 4]]),
    (-2, [[1, 3, 1, 4], [2, 3, 2, 4]]),
    (-2, [[1, 3, 2, 3], [1, 4, 2, 4]]),
];

/// The reference polynomial at full scale, each factor canonicalized.
pub fn agaoka_reference() -> TensorPolynomial {
    let mut poly = TensorPolynomial::default();
    for (c, quads) in AGAOKA_B2222_HALF {
        let mut sign = 1;
        let mut factors: Vec<TensorFactor> = quads
            .iter()
            .map(|&q| {
                let (f, s) = canonicalize_factor(q).expect("reference factors are nonzero");
                sign *= s as i64;
                f
            })
            .collect();
        factors.sort();
        poly.add(factors, 2 * c * sign);
    }
    poly
}
