//! Generator for all permutations of a multiset using transpositions that
//! obey the strong homogeneous condition: every element strictly between
//! the two swapped positions equals the smaller swapped value.
//!
//! The generator state is the current arrangement, one direction per
//! position, and the active element type. Type `1` plays the combination
//! sweep over the cells held by larger types; each time it cannot move,
//! the next type takes one step and type `1` resumes.

use crate::error::Result;
use crate::multiset::{GrayTrace, MultisetSpec, Permutation, Transposition, DEFAULT_CAP};
use crate::oriented::{Cell, OrientedState};

/// Direction of travel stored per position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    fn flipped(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    pub fn as_cell(self) -> Cell {
        match self {
            Direction::Forward => Cell::Right,
            Direction::Backward => Cell::Left,
        }
    }
}

/// One emission of the generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub permutation: Permutation,
    /// Absent for the first emission.
    pub mv: Option<Transposition>,
    pub active_type: Option<u32>,
}

/// A single move, without a copy of the arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    pub transposition: Transposition,
    pub active_type: u32,
}

#[derive(Debug, Clone)]
pub struct MultisetPermutations {
    spec: MultisetSpec,
    perm: Vec<u32>,
    dirs: Vec<Direction>,
    /// `0` before the first emission; `>= k` once exhausted.
    active: u32,
}

impl MultisetPermutations {
    pub fn new(spec: &MultisetSpec) -> Self {
        let perm = spec.sorted_arrangement().0;
        let n = perm.len();
        Self {
            spec: spec.clone(),
            perm,
            dirs: vec![Direction::Forward; n],
            active: 0,
        }
    }

    pub fn spec(&self) -> &MultisetSpec {
        &self.spec
    }

    pub fn current(&self) -> &[u32] {
        &self.perm
    }

    pub fn directions(&self) -> &[Direction] {
        &self.dirs
    }

    /// Bytes held on the heap by the generator state.
    pub fn heap_bytes(&self) -> usize {
        self.perm.capacity() * std::mem::size_of::<u32>()
            + self.dirs.capacity() * std::mem::size_of::<Direction>()
            + std::mem::size_of_val(self.spec.multiplicities())
    }

    fn types(&self) -> u32 {
        self.spec.types() as u32
    }

    /// The current arrangement with elements of type `1` drawn as their
    /// direction and every other type as its digit, or as `o` when the spec
    /// has two types.
    pub fn oriented_view(&self) -> String {
        let two_types = self.types() == 2;
        self.perm
            .iter()
            .zip(&self.dirs)
            .map(|(&s, &d)| match s {
                1 => d.as_cell().symbol(),
                _ if two_types => 'o',
                _ => char::from_digit(s, 10).unwrap_or('?'),
            })
            .collect()
    }

    /// For two-type specs, the arrangement as an oriented state.
    pub fn oriented_state(&self) -> Option<OrientedState> {
        (self.types() == 2).then(|| {
            OrientedState::new(
                self.perm
                    .iter()
                    .zip(&self.dirs)
                    .map(|(&s, &d)| if s == 1 { d.as_cell() } else { Cell::Empty })
                    .collect(),
            )
        })
    }

    /// Advances to the next arrangement. The first call leaves the sorted
    /// start in place and reports `Some(None)`; afterwards each call returns
    /// the move applied, and `None` once every arrangement has been emitted.
    pub fn advance(&mut self) -> Option<Option<Move>> {
        let k = self.types();
        if self.active == 0 {
            self.active = 1;
            return Some(None);
        }
        if self.active >= k {
            return None;
        }
        let n = self.perm.len();
        let mut ty = self.active;
        let mut limit = n;
        loop {
            let Some(m) = self.perm[..limit].iter().rposition(|&s| s == ty) else {
                ty += 1;
                if ty >= k {
                    self.active = ty;
                    return None;
                }
                limit = n;
                continue;
            };
            let dir = self.dirs[m];
            if let Some(target) = self.target(m, ty, dir) {
                self.perm.swap(m, target);
                self.dirs.swap(m, target);
                let (lo, hi) = (m.min(target), m.max(target));
                for d in &mut self.dirs[lo + 1..hi] {
                    *d = Direction::Forward;
                }
                self.active = 1;
                return Some(Some(Move {
                    transposition: Transposition::from_zero_based(lo, hi),
                    active_type: ty,
                }));
            }
            self.dirs[m] = dir.flipped();
            limit = m;
        }
    }

    /// First position in direction `dir` from `m` that is not an element of
    /// type `ty` facing the same way, provided it holds a larger type.
    fn target(&self, m: usize, ty: u32, dir: Direction) -> Option<usize> {
        let blocks = |p: usize| self.perm[p] != ty || self.dirs[p] != dir;
        let stop = match dir {
            Direction::Forward => (m + 1..self.perm.len()).find(|&p| blocks(p)),
            Direction::Backward => (0..m).rev().find(|&p| blocks(p)),
        }?;
        (self.perm[stop] > ty).then_some(stop)
    }
}

impl Iterator for MultisetPermutations {
    type Item = StepRecord;

    fn next(&mut self) -> Option<StepRecord> {
        let mv = self.advance()?;
        Some(StepRecord {
            permutation: Permutation(self.perm.clone()),
            mv: mv.map(|m| m.transposition),
            active_type: mv.map(|m| m.active_type),
        })
    }
}

pub fn new_generator(spec: &MultisetSpec) -> MultisetPermutations {
    MultisetPermutations::new(spec)
}

/// Drains the generator into a trace, refusing specs above `cap`.
pub fn generate_all(spec: &MultisetSpec, cap: u64) -> Result<GrayTrace<Permutation>> {
    spec.check_cap(cap)?;
    let mut gen = MultisetPermutations::new(spec);
    gen.advance();
    let mut trace = GrayTrace::new(Permutation(gen.current().to_vec()));
    while let Some(Some(mv)) = gen.advance() {
        trace.push(mv.transposition, Permutation(gen.current().to_vec()));
    }
    Ok(trace)
}

pub fn generate_all_default(spec: &MultisetSpec) -> Result<GrayTrace<Permutation>> {
    generate_all(spec, DEFAULT_CAP)
}

/// Walks the generator without storing states, passing each move to `f`.
/// Returns the number of arrangements emitted.
pub fn for_each_move(spec: &MultisetSpec, mut f: impl FnMut(&Move)) -> u64 {
    let mut gen = MultisetPermutations::new(spec);
    let mut emitted = 0;
    while let Some(mv) = gen.advance() {
        emitted += 1;
        if let Some(mv) = mv {
            f(&mv);
        }
    }
    emitted
}
