//! Correctness oracles: single-step checks, exactly-once checks against the
//! lexicographic enumeration, circularity, the marked revolving-door lemma,
//! and small transposition graphs with a brute-force Hamilton path search.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiset::{
    check_count, enumerate_lex, multinomial_count, transposition_between, GrayTrace, MultisetSpec,
    Permutation, Transposition, DEFAULT_CAP,
};
use crate::refgens::{ruskey_c_marked, Mark, MarkedString};

/// Graphs above this many vertices are counted but not searched.
pub const HAMILTON_VERTEX_CAP: u64 = 10_000;

/// Node expansions allowed to one Hamilton search before it gives up.
pub const HAMILTON_STEP_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub is_transposition: bool,
    #[serde(rename = "move")]
    pub mv: Option<Transposition>,
    /// `j - i`, or `0` when the step is not a transposition.
    pub width: usize,
    /// Every element strictly between the swapped positions equals the
    /// smaller swapped value.
    pub strong_homogeneous: bool,
    pub adjacent: bool,
}

impl StepReport {
    pub fn passed(&self) -> bool {
        self.is_transposition && self.strong_homogeneous
    }
}

pub fn check_gray_step<T: Ord>(prev: &[T], next: &[T]) -> Result<StepReport> {
    if prev.len() != next.len() {
        return Err(Error::LengthMismatch {
            left: prev.len(),
            right: next.len(),
        });
    }
    let Some(mv) = transposition_between(prev, next) else {
        return Ok(StepReport {
            is_transposition: false,
            mv: None,
            width: 0,
            strong_homogeneous: false,
            adjacent: false,
        });
    };
    let (a, b) = (mv.i() - 1, mv.j() - 1);
    let smaller = (&prev[a]).min(&prev[b]);
    let strong_homogeneous = prev[a + 1..b].iter().all(|x| x == smaller);
    Ok(StepReport {
        is_transposition: true,
        mv: Some(mv),
        width: mv.width(),
        strong_homogeneous,
        adjacent: mv.width() == 1,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactlyOnceReport {
    /// Every state is an arrangement of the spec.
    pub all_valid: bool,
    pub no_duplicates: bool,
    pub count: u64,
    pub expected_count: String,
    pub count_matches: bool,
    /// Sorted states equal the lexicographic enumeration.
    pub matches_lex: bool,
    pub all_steps_strong: bool,
    /// Index of the first state whose incoming step fails.
    pub first_bad_step: Option<usize>,
}

impl ExactlyOnceReport {
    pub fn passed(&self) -> bool {
        self.all_valid
            && self.no_duplicates
            && self.count_matches
            && self.matches_lex
            && self.all_steps_strong
    }
}

pub fn check_exactly_once(
    trace: &GrayTrace<Permutation>,
    spec: &MultisetSpec,
) -> ExactlyOnceReport {
    let states = trace.states();
    let all_valid = states.iter().all(|p| spec.admits(p.symbols()));
    let mut sorted: Vec<&Permutation> = states.iter().collect();
    sorted.sort();
    let no_duplicates = sorted.windows(2).all(|w| w[0] != w[1]);
    let expected = multinomial_count(spec);
    let count = states.len() as u64;
    let count_matches = expected == count.into();
    let matches_lex = count_matches
        && enumerate_lex(spec, count)
            .map(|lex| lex.iter().eq(sorted.iter().copied()))
            .unwrap_or(false);
    let first_bad_step = states
        .windows(2)
        .position(
            |w| !matches!(check_gray_step(w[0].symbols(), w[1].symbols()), Ok(r) if r.passed()),
        )
        .map(|p| p + 1);
    ExactlyOnceReport {
        all_valid,
        no_duplicates,
        count,
        expected_count: expected.to_string(),
        count_matches,
        matches_lex,
        all_steps_strong: first_bad_step.is_none(),
        first_bad_step,
    }
}

/// The step from the last state back to the first.
pub fn check_circular<S: AsRef<[T]>, T: Ord>(trace: &GrayTrace<S>) -> StepReport {
    check_gray_step(trace.last().as_ref(), trace.first().as_ref())
        .expect("trace states share a length")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub n: usize,
    pub k: usize,
    pub list_len: usize,
    /// The first element is `1^k 0_0 0_1 ... 0_(n-k-1)`.
    pub first_element: bool,
    /// When `0 < k < n`, the last element is
    /// `1^(k-1) 0_(n-k-1) 0_0 ... 0_(n-k-2) 1`.
    pub last_element: Option<bool>,
    /// Consecutive elements differ in exactly two places, a one and a
    /// marked zero that change places.
    pub successive_swap: bool,
    /// Steps where some zero other than the moved one changes its index.
    /// Informational only.
    pub relabelled_steps: usize,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.first_element && self.last_element.unwrap_or(true) && self.successive_swap
    }
}

pub fn verify_marked_lemma(n: usize, k: usize) -> Result<LemmaReport> {
    if n == 0 || k > n {
        return Err(Error::InvalidArgs(format!(
            "need n >= 1 and 0 <= k <= n, got n={n} k={k}"
        )));
    }
    let list = ruskey_c_marked(n, k, DEFAULT_CAP)?;
    let z = n - k;

    let mut first = vec![Mark::One; k];
    first.extend((0..z).map(Mark::Zero));
    let first_element = list[0] == MarkedString(first);

    let last_element = (0 < k && k < n).then(|| {
        let mut last = vec![Mark::One; k - 1];
        last.push(Mark::Zero(z - 1));
        last.extend((0..z - 1).map(Mark::Zero));
        last.push(Mark::One);
        list.last() == Some(&MarkedString(last))
    });

    let mut successive_swap = true;
    let mut relabelled_steps = 0;
    for w in list.windows(2) {
        let (a, b) = (w[0].marks(), w[1].marks());
        let diff: Vec<usize> = (0..n)
            .filter(|&p| (a[p] == Mark::One) != (b[p] == Mark::One))
            .collect();
        let swap_ok = match diff[..] {
            [p, q] => {
                let one_and_zero = |x: Mark, y: Mark| {
                    matches!(
                        (x, y),
                        (Mark::One, Mark::Zero(_)) | (Mark::Zero(_), Mark::One)
                    )
                };
                one_and_zero(a[p], a[q]) && one_and_zero(b[p], b[q])
            }
            _ => false,
        };
        successive_swap &= swap_ok;
        if swap_ok && !marks_follow_swap(a, b, &diff) {
            relabelled_steps += 1;
        }
    }

    Ok(LemmaReport {
        n,
        k,
        list_len: list.len(),
        first_element,
        last_element,
        successive_swap,
        relabelled_steps,
    })
}

/// Whether `b` is exactly `a` with positions `diff[0]` and `diff[1]`
/// exchanged, indices included.
fn marks_follow_swap(a: &[Mark], b: &[Mark], diff: &[usize]) -> bool {
    let mut swapped = a.to_vec();
    swapped.swap(diff[0], diff[1]);
    swapped == b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphReport {
    pub vertex_count: u64,
    pub edge_count: u64,
    pub max_width: usize,
    /// `None` when the graph is above the search cap or the search ran out
    /// of budget.
    pub has_hamilton_path: Option<bool>,
}

/// The graph on all arrangements of a multiset whose edges are
/// transpositions of width at most `max_width`.
#[derive(Debug, Clone)]
pub struct TranspositionGraph {
    pub vertices: Vec<Permutation>,
    /// `(u, v, move)` with `u < v` as indices into `vertices`.
    pub edges: Vec<(usize, usize, Transposition)>,
    pub max_width: usize,
}

impl TranspositionGraph {
    pub fn build(spec: &MultisetSpec, max_width: usize, cap: u64) -> Result<Self> {
        if max_width == 0 {
            return Err(Error::InvalidArgs("max_width must be at least 1".into()));
        }
        let vertices = enumerate_lex(spec, cap)?;
        let n = spec.len();
        let mut edges = Vec::new();
        for (u, p) in vertices.iter().enumerate() {
            let mut work = p.symbols().to_vec();
            for a in 0..n {
                for b in a + 1..n.min(a + max_width + 1) {
                    if work[a] == work[b] {
                        continue;
                    }
                    work.swap(a, b);
                    // the lex list is sorted, so lookup is a binary search
                    let v = vertices
                        .binary_search_by(|q| q.symbols().cmp(&work[..]))
                        .expect("swapped arrangement is a vertex");
                    work.swap(a, b);
                    if u < v {
                        edges.push((u, v, Transposition::from_zero_based(a, b)));
                    }
                }
            }
        }
        Ok(Self {
            vertices,
            edges,
            max_width,
        })
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(u, v, _) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Brute-force search for a Hamilton path. `Ok(None)` means the step
    /// budget ran out before an answer.
    pub fn hamilton_path(&self, budget: u64) -> Result<Option<Option<Vec<usize>>>> {
        check_count(
            "Hamilton search vertex set",
            &(self.vertices.len() as u64).into(),
            HAMILTON_VERTEX_CAP,
        )?;
        let adj = self.adjacency();
        let mut search = HamiltonSearch {
            adj: &adj,
            visited: vec![false; adj.len()],
            path: Vec::with_capacity(adj.len()),
            steps: 0,
            budget,
        };
        for start in 0..adj.len() {
            match search.from(start) {
                Some(true) => return Ok(Some(Some(search.path))),
                Some(false) => {}
                None => return Ok(None),
            }
        }
        Ok(Some(None))
    }

    pub fn report(&self) -> GraphReport {
        let has_hamilton_path = match self.hamilton_path(HAMILTON_STEP_BUDGET) {
            Ok(Some(path)) => Some(path.is_some()),
            _ => None,
        };
        GraphReport {
            vertex_count: self.vertices.len() as u64,
            edge_count: self.edges.len() as u64,
            max_width: self.max_width,
            has_hamilton_path,
        }
    }

    /// Graphviz rendering; vertices are labelled by arrangement, edges by
    /// their transposition.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph transpositions {\n");
        for (i, p) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{p}\"];");
        }
        for (u, v, t) in &self.edges {
            let _ = writeln!(out, "  v{u} -- v{v} [label=\"{t}\"];");
        }
        out.push_str("}\n");
        out
    }
}

struct HamiltonSearch<'a> {
    adj: &'a [Vec<usize>],
    visited: Vec<bool>,
    path: Vec<usize>,
    steps: u64,
    budget: u64,
}

impl HamiltonSearch<'_> {
    /// `Some(found)`, or `None` once the budget is spent. On success the
    /// path is left in `self.path`.
    fn from(&mut self, v: usize) -> Option<bool> {
        self.steps += 1;
        if self.steps > self.budget {
            return None;
        }
        self.visited[v] = true;
        self.path.push(v);
        if self.path.len() == self.adj.len() {
            return Some(true);
        }
        if !self.dead_end(v) {
            for i in 0..self.adj[v].len() {
                let w = self.adj[v][i];
                if !self.visited[w] && self.from(w)? {
                    return Some(true);
                }
            }
        }
        self.visited[v] = false;
        self.path.pop();
        Some(false)
    }

    /// Degree pruning: an unvisited vertex with no way in kills the branch,
    /// and at most two unvisited vertices may have exactly one way in (the
    /// next vertex and the final one).
    fn dead_end(&self, current: usize) -> bool {
        let mut single = 0;
        for u in 0..self.adj.len() {
            if self.visited[u] {
                continue;
            }
            let open = self.adj[u]
                .iter()
                .filter(|&&w| !self.visited[w] || w == current)
                .count();
            match open {
                0 => return true,
                1 => single += 1,
                _ => {}
            }
        }
        single > 2
    }
}

pub fn transposition_graph(spec: &MultisetSpec, max_width: usize) -> Result<GraphReport> {
    Ok(TranspositionGraph::build(spec, max_width, DEFAULT_CAP)?.report())
}

/// Renders a report as `key: value` lines; nested values stay as JSON.
pub fn to_key_value<T: Serialize>(report: &T) -> String {
    let value = serde_json::to_value(report).expect("reports serialize");
    let mut out = String::new();
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                let text = match v {
                    serde_json::Value::String(s) => s,
                    serde_json::Value::Null => "none".to_string(),
                    other => other.to_string(),
                };
                let _ = writeln!(out, "{k}: {text}");
            }
        }
        other => {
            let _ = writeln!(out, "{other}");
        }
    }
    out
}
