//! Reference Gray codes used as baselines.
//!
//! The list-valued recursions (revolving door `C(n,k)`, its marked variant
//! `C'(n,k)`, and the Eades-McKay chord list `E(n,k)`) are materialized in
//! full, so they are subject to the item cap.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::multiset::{binomial, check_count, GrayTrace, Permutation, Transposition};

/// Largest `n` accepted by [`sjt_generate`] unless a different bound is
/// passed to [`sjt_generate_capped`].
pub const SJT_DEFAULT_MAX_N: usize = 10;

/// Adjacent-transposition listing of the permutations of `1..n` in which
/// element `1` sweeps back and forth, and each time it turns the next
/// smallest mobile element takes one step.
///
/// For `n = 4` this is the circuit `1234, 2134, 2314, 2341, 3241, ...`.
pub fn sjt_generate(n: usize) -> Result<GrayTrace<Permutation>> {
    sjt_generate_capped(n, SJT_DEFAULT_MAX_N)
}

pub fn sjt_generate_capped(n: usize, max_n: usize) -> Result<GrayTrace<Permutation>> {
    if n == 0 {
        return Err(Error::InvalidArgs("n must be at least 1".into()));
    }
    if n > max_n {
        return Err(Error::CapExceeded {
            what: "Johnson-Trotter listing size n",
            count: n.to_string(),
            cap: max_n as u64,
        });
    }
    let mut perm: Vec<u32> = (1..=n as u32).collect();
    // +1: facing right, -1: facing left; indexed by element value.
    let mut facing = vec![1i8; n + 1];
    let mut trace = GrayTrace::new(Permutation(perm.clone()));
    loop {
        // smallest element whose facing neighbour is larger
        let mobile = (0..n)
            .filter(|&p| {
                let q = p as isize + facing[perm[p] as usize] as isize;
                q >= 0 && (q as usize) < n && perm[q as usize] > perm[p]
            })
            .min_by_key(|&p| perm[p]);
        let Some(p) = mobile else { break };
        let value = perm[p];
        let q = (p as isize + facing[value as usize] as isize) as usize;
        perm.swap(p, q);
        for v in 1..value {
            facing[v as usize] = -facing[v as usize];
        }
        trace.push(
            Transposition::new(p.min(q) + 1, p.max(q) + 1)?,
            Permutation(perm.clone()),
        );
    }
    Ok(trace)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString(pub Vec<u8>);

impl BitString {
    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    fn pushed(mut self, tail: &[u8]) -> Self {
        self.0.extend_from_slice(tail);
        self
    }
}

impl AsRef<[u8]> for BitString {
    fn as_ref(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .0
            .iter()
            .map(|&b| if b == 1 { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse(format!(
                    "unexpected {c:?} in bit string {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitString)
    }
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::InvalidArgs(format!(
            "need 0 <= k <= n, got n={n} k={k}"
        )));
    }
    Ok(())
}

fn check_list_cap(n: usize, k: usize, cap: u64) -> Result<()> {
    check_count("combination list", &binomial(n as u64, k as u64), cap).map(|_| ())
}

/// The revolving-door list of all arrangements of `1^k 0^(n-k)`:
/// `C(n-1,k)` with `0` appended, then `C(n-1,k-1)` reversed with `1`
/// appended.
pub fn ruskey_c(n: usize, k: usize, cap: u64) -> Result<Vec<BitString>> {
    check_nk(n, k)?;
    check_list_cap(n, k, cap)?;
    Ok(revolving_door(n, k))
}

fn revolving_door(n: usize, k: usize) -> Vec<BitString> {
    if k == 0 {
        return vec![BitString(vec![0; n])];
    }
    if k == n {
        return vec![BitString(vec![1; n])];
    }
    let mut out: Vec<BitString> = revolving_door(n - 1, k)
        .into_iter()
        .map(|b| b.pushed(&[0]))
        .collect();
    out.extend(
        revolving_door(n - 1, k - 1)
            .into_iter()
            .rev()
            .map(|b| b.pushed(&[1])),
    );
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mark {
    One,
    Zero(usize),
}

/// A bit string whose zeros carry indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedString(pub Vec<Mark>);

impl MarkedString {
    pub fn marks(&self) -> &[Mark] {
        &self.0
    }

    /// Drops the indices.
    pub fn erase(&self) -> BitString {
        BitString(
            self.0
                .iter()
                .map(|m| match m {
                    Mark::One => 1,
                    Mark::Zero(_) => 0,
                })
                .collect(),
        )
    }
}

impl fmt::Display for MarkedString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|m| match m {
                Mark::One => "1".to_string(),
                Mark::Zero(i) => format!("0_{i}"),
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for MarkedString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|tok| match tok {
                "1" => Ok(Mark::One),
                _ => tok
                    .strip_prefix("0_")
                    .and_then(|i| i.parse().ok())
                    .map(Mark::Zero)
                    .ok_or_else(|| Error::Parse(format!("bad marked token {tok:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(MarkedString)
    }
}

/// The revolving-door list with indexed zeros: `C'(n-1,k)` with
/// `0_(n-k-1)` appended, then `C'(n-1,k-1)` reversed, each zero index
/// decreased by one modulo `n-k`, with `1` appended.
pub fn ruskey_c_marked(n: usize, k: usize, cap: u64) -> Result<Vec<MarkedString>> {
    check_nk(n, k)?;
    check_list_cap(n, k, cap)?;
    Ok(marked_revolving_door(n, k))
}

fn marked_revolving_door(n: usize, k: usize) -> Vec<MarkedString> {
    if k == 0 {
        return vec![MarkedString((0..n).map(Mark::Zero).collect())];
    }
    if k == n {
        return vec![MarkedString(vec![Mark::One; n])];
    }
    let zeros = n - k;
    let mut out: Vec<MarkedString> = marked_revolving_door(n - 1, k)
        .into_iter()
        .map(|mut m| {
            m.0.push(Mark::Zero(zeros - 1));
            m
        })
        .collect();
    out.extend(
        marked_revolving_door(n - 1, k - 1)
            .into_iter()
            .rev()
            .map(|m| {
                let mut cells: Vec<Mark> =
                    m.0.into_iter()
                        .map(|c| match c {
                            Mark::Zero(i) => Mark::Zero((i + zeros - 1) % zeros),
                            one => one,
                        })
                        .collect();
                cells.push(Mark::One);
                MarkedString(cells)
            }),
    );
    out
}

/// The Eades-McKay chord list, with each step recovered as a
/// transposition.
pub fn eades_mckay(n: usize, k: usize, cap: u64) -> Result<GrayTrace<BitString>> {
    check_nk(n, k)?;
    check_list_cap(n, k, cap)?;
    let list = chord_list(n, k);
    GrayTrace::from_states(list).ok_or_else(|| {
        Error::InvalidArgs(format!(
            "chord list for n={n} k={k} is not a transposition list"
        ))
    })
}

fn chord_list(n: usize, k: usize) -> Vec<BitString> {
    if k == 0 {
        return vec![BitString(vec![0; n])];
    }
    if k == n {
        return vec![BitString(vec![1; n])];
    }
    if k == 1 {
        return (0..n)
            .map(|p| {
                let mut bits = vec![0; n];
                bits[p] = 1;
                BitString(bits)
            })
            .collect();
    }
    let mut out: Vec<BitString> = chord_list(n - 1, k)
        .into_iter()
        .map(|b| b.pushed(&[0]))
        .collect();
    out.extend(
        chord_list(n - 2, k - 1)
            .into_iter()
            .rev()
            .map(|b| b.pushed(&[0, 1])),
    );
    out.extend(
        chord_list(n - 2, k - 2)
            .into_iter()
            .map(|b| b.pushed(&[1, 1])),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_CAP;

    fn strings<T: ToString>(v: &[T]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn sjt_small() {
        assert_eq!(
            strings(sjt_generate(3).unwrap().states()),
            ["123", "213", "231", "321", "312", "132"]
        );
        assert_eq!(strings(sjt_generate(1).unwrap().states()), ["1"]);
        let four = sjt_generate(4).unwrap();
        assert_eq!(four.len(), 24);
        assert_eq!(
            strings(&four.states()[..5]),
            ["1234", "2134", "2314", "2341", "3241"]
        );
        assert!(four.steps().iter().all(|t| t.width() == 1));
        assert!(sjt_generate(11).is_err());
        assert!(sjt_generate(0).is_err());
    }

    #[test]
    fn revolving_door_fixtures() {
        assert_eq!(
            strings(&ruskey_c(4, 2, DEFAULT_CAP).unwrap()),
            ["1100", "0110", "1010", "0011", "0101", "1001"]
        );
        assert_eq!(strings(&ruskey_c(3, 0, DEFAULT_CAP).unwrap()), ["000"]);
        assert_eq!(strings(&ruskey_c(3, 3, DEFAULT_CAP).unwrap()), ["111"]);
        assert!(matches!(
            ruskey_c(2, 3, DEFAULT_CAP),
            Err(Error::InvalidArgs(_))
        ));
        assert!(matches!(
            ruskey_c(20, 10, 1000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn marked_fixtures() {
        let list = ruskey_c_marked(4, 2, DEFAULT_CAP).unwrap();
        assert_eq!(list[0].to_string(), "1 1 0_0 0_1");
        assert_eq!(list.last().unwrap().to_string(), "1 0_1 0_0 1");
        assert_eq!(
            strings(&ruskey_c_marked(2, 0, DEFAULT_CAP).unwrap()),
            ["0_0 0_1"]
        );
        let parsed: MarkedString = "1 0_1 0_0 1".parse().unwrap();
        assert_eq!(&parsed, list.last().unwrap());
    }

    #[test]
    fn chord_fixtures() {
        assert_eq!(
            strings(eades_mckay(3, 1, DEFAULT_CAP).unwrap().states()),
            ["100", "010", "001"]
        );
        let e = eades_mckay(6, 3, DEFAULT_CAP).unwrap();
        assert_eq!(e.len(), 20);
        assert_eq!(strings(&e.states()[..3]), ["111000", "110100", "101100"]);
        assert_eq!(e.last().to_string(), "000111");
        assert_eq!(e.states()[7].to_string(), "100110");
        assert_eq!(e.steps()[6], Transposition::new(2, 4).unwrap());
    }
}
