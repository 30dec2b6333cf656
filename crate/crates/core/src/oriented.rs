//! Combination generation on oriented strings over `{o, <, >}`.
//!
//! Each placed element carries a facing direction. One iteration takes the
//! rightmost element as active and tries, in order:
//!
//! * move into an adjacent empty cell it faces (logged as rule `2`);
//! * facing left, jump over a run of left-facing elements into the empty
//!   cell beyond, turning the crossed elements right (rule `3`);
//! * facing right, jump over a run of right-facing elements into the
//!   nearest empty cell (rule `4`);
//! * otherwise flip, and hand activity to the next element on the left
//!   (logged as `6`).
//!
//! If every element flips without moving the iteration is terminal and its
//! result is the negation of the input.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::multiset::{GrayTrace, Transposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Empty,
    Left,
    Right,
}

impl Cell {
    pub fn symbol(self) -> char {
        match self {
            Cell::Empty => 'o',
            Cell::Left => '<',
            Cell::Right => '>',
        }
    }

    pub fn from_symbol(c: char) -> Option<Cell> {
        match c {
            'o' => Some(Cell::Empty),
            '<' => Some(Cell::Left),
            '>' => Some(Cell::Right),
            _ => None,
        }
    }

    pub fn flipped(self) -> Cell {
        match self {
            Cell::Empty => Cell::Empty,
            Cell::Left => Cell::Right,
            Cell::Right => Cell::Left,
        }
    }

    pub fn is_oriented(self) -> bool {
        self != Cell::Empty
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedState(Vec<Cell>);

impl OrientedState {
    pub fn new(cells: Vec<Cell>) -> Self {
        Self(cells)
    }

    /// `>^k o^(n-k)`, the starting state that sweeps all placements.
    pub fn part_a_start(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidArgs(format!(
                "need 0 < k <= n, got n={n} k={k}"
            )));
        }
        let mut cells = vec![Cell::Right; k];
        cells.resize(n, Cell::Empty);
        Ok(Self(cells))
    }

    pub fn cells(&self) -> &[Cell] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn oriented_count(&self) -> usize {
        self.0.iter().filter(|c| c.is_oriented()).count()
    }

    /// Placement pattern with orientation erased: `true` where an element sits.
    pub fn occupancy(&self) -> Vec<bool> {
        self.0.iter().map(|c| c.is_oriented()).collect()
    }

    pub fn negate(&self) -> Self {
        Self(self.0.iter().map(|c| c.flipped()).collect())
    }

    /// Deletes the rightmost oriented symbol.
    pub fn reduce(&self) -> Result<Self> {
        let pos = self
            .0
            .iter()
            .rposition(|c| c.is_oriented())
            .ok_or(Error::NoOrientedSymbol)?;
        let mut cells = self.0.clone();
        cells.remove(pos);
        Ok(Self(cells))
    }

    pub fn iterate(&self) -> Result<IterationOutcome> {
        let mut cells = self.0.clone();
        let n = cells.len();
        let mut active = cells
            .iter()
            .rposition(|c| c.is_oriented())
            .ok_or(Error::NoOrientedSymbol)?;
        let mut rules = Vec::new();
        loop {
            let facing = cells[active];
            if let Some(target) = jump_target(&cells, active, facing) {
                let (lo, hi) = (active.min(target), active.max(target));
                if facing == Cell::Left {
                    for c in &mut cells[lo + 1..hi] {
                        *c = Cell::Right;
                    }
                }
                cells.swap(active, target);
                rules.push(match (hi - lo, facing) {
                    (1, _) => 2,
                    (_, Cell::Left) => 3,
                    _ => 4,
                });
                debug_assert!(hi < n);
                return Ok(IterationOutcome {
                    next: Self(cells),
                    mv: Some(Transposition::from_zero_based(lo, hi)),
                    rules_fired: rules,
                });
            }
            cells[active] = facing.flipped();
            rules.push(6);
            match cells[..active].iter().rposition(|c| c.is_oriented()) {
                Some(p) => active = p,
                None => {
                    return Ok(IterationOutcome {
                        next: Self(cells),
                        mv: None,
                        rules_fired: rules,
                    })
                }
            }
        }
    }
}

/// Empty cell reachable from `from` by crossing only elements facing the
/// same way as the mover.
fn jump_target(cells: &[Cell], from: usize, facing: Cell) -> Option<usize> {
    match facing {
        Cell::Right => cells[from + 1..]
            .iter()
            .position(|&c| c != Cell::Right)
            .map(|off| from + 1 + off)
            .filter(|&p| cells[p] == Cell::Empty),
        Cell::Left => cells[..from]
            .iter()
            .rposition(|&c| c != Cell::Left)
            .filter(|&p| cells[p] == Cell::Empty),
        Cell::Empty => None,
    }
}

impl fmt::Display for OrientedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|c| c.symbol()).collect();
        f.write_str(&s)
    }
}

impl FromStr for OrientedState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                Cell::from_symbol(c).ok_or_else(|| {
                    Error::Parse(format!("unexpected {c:?} in oriented state {s:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

impl AsRef<[Cell]> for OrientedState {
    fn as_ref(&self) -> &[Cell] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationOutcome {
    pub next: OrientedState,
    /// `None` for a terminal iteration.
    pub mv: Option<Transposition>,
    pub rules_fired: Vec<u8>,
}

/// A full run: the emitted states and, per state, the rules that produced it
/// (empty for the initial state).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedRun {
    pub trace: GrayTrace<OrientedState>,
    pub rules: Vec<Vec<u8>>,
}

impl OrientedRun {
    /// Rows formatted like `state rules`, e.g. `>oo>>o 6,4`.
    pub fn rows(&self) -> Vec<(String, String)> {
        self.trace
            .states()
            .iter()
            .zip(&self.rules)
            .map(|(s, r)| {
                let rules: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                (s.to_string(), rules.join(","))
            })
            .collect()
    }
}

/// Iterates from `initial` until the terminal iteration, emitting every
/// state reached.
pub fn run(initial: &OrientedState) -> Result<OrientedRun> {
    let mut trace = GrayTrace::new(initial.clone());
    let mut rules = vec![Vec::new()];
    let mut current = initial.clone();
    loop {
        let outcome = current.iterate()?;
        match outcome.mv {
            Some(mv) => {
                trace.push(mv, outcome.next.clone());
                rules.push(outcome.rules_fired);
                current = outcome.next;
            }
            None => return Ok(OrientedRun { trace, rules }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(s: &str) -> OrientedState {
        s.parse().unwrap()
    }

    #[test]
    fn negation() {
        assert_eq!(st("o<oo<>").negate(), st("o>oo><"));
        assert_eq!(st("oooo").negate(), st("oooo"));
    }

    #[test]
    fn reduction() {
        assert_eq!(st(">oo>>o").reduce().unwrap(), st(">oo>o"));
        assert_eq!(st(">o").reduce().unwrap(), st("o"));
        assert_eq!(st("><<").reduce().unwrap(), st("><"));
        assert_eq!(st("ooo").reduce(), Err(Error::NoOrientedSymbol));
    }

    #[test]
    fn single_iterations() {
        let out = st(">>oo>o").iterate().unwrap();
        assert_eq!(out.next, st(">>ooo>"));
        assert_eq!(out.mv, Some(Transposition::new(5, 6).unwrap()));
        assert_eq!(out.rules_fired, vec![2]);

        let out = st(">o><oo").iterate().unwrap();
        assert_eq!(out.next, st(">oo>>o"));
        assert_eq!(out.mv, Some(Transposition::new(3, 5).unwrap()));
        assert_eq!(out.rules_fired, vec![6, 4]);

        // flip the rightmost, then the next element steps into the gap
        let out = st("o>oo>").iterate().unwrap();
        assert_eq!(out.next, st("oo>o<"));
        assert_eq!(out.mv, Some(Transposition::new(2, 3).unwrap()));
        assert_eq!(out.rules_fired, vec![6, 2]);

        let out = st("o>o<<o").iterate().unwrap();
        assert_eq!(out.next, st("o><>oo"));
        assert_eq!(out.mv, Some(Transposition::new(3, 5).unwrap()));
        assert_eq!(out.rules_fired, vec![3]);
    }

    #[test]
    fn terminal_iteration_negates() {
        let s = st("ooo><<");
        let out = s.iterate().unwrap();
        assert_eq!(out.mv, None);
        assert_eq!(out.next, s.negate());
        assert_eq!(out.rules_fired, vec![6, 6, 6]);
        assert_eq!(st("oooo").iterate(), Err(Error::NoOrientedSymbol));
    }

    #[test]
    fn tiny_run() {
        let r = run(&st(">o")).unwrap();
        let states: Vec<String> = r.trace.states().iter().map(|s| s.to_string()).collect();
        assert_eq!(states, [">o", "o>"]);
    }

    #[test]
    fn long_state_does_not_recurse() {
        // every element flips and hands activity leftwards
        let n = 20_000;
        let s = OrientedState::new(vec![Cell::Right; n]);
        let out = s.iterate().unwrap();
        assert_eq!(out.mv, None);
        assert_eq!(out.rules_fired.len(), n);
    }
}
