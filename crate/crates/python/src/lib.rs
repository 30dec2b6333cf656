//! Python bindings. Multisets are passed as multiplicity lists, e.g.
//! `[2, 2, 2]` for `112233`; positions in moves are 1-based.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use multiset_gray::metrics::{compare_motion, comparison_csv, motion_for, Algo};
use multiset_gray::oriented::run;
use multiset_gray::refgens::{eades_mckay as em, ruskey_c, sjt_generate};
use multiset_gray::tensorpoly::{build_polynomial, build_tableau, raw_terms as raw};
use multiset_gray::verify::{check_exactly_once, check_gray_step, StepReport};
use multiset_gray::{
    enumerate_lex, generate_all, multinomial_count, MultisetPermutations, MultisetSpec,
    OrientedState, Transposition, DEFAULT_CAP,
};

type Move = Option<(usize, usize)>;

fn err(e: multiset_gray::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn spec(m: Vec<usize>) -> PyResult<MultisetSpec> {
    MultisetSpec::new(m).map_err(err)
}

fn pair(t: Transposition) -> (usize, usize) {
    (t.i(), t.j())
}

/// Number of distinct permutations of the multiset.
#[pyfunction]
fn count(multiplicities: Vec<usize>) -> PyResult<BigUint> {
    Ok(multinomial_count(&spec(multiplicities)?))
}

/// All permutations in Gray order as `(permutation, move)` pairs; the first
/// move is `None`.
#[pyfunction]
#[pyo3(signature = (multiplicities, cap = DEFAULT_CAP))]
fn generate(multiplicities: Vec<usize>, cap: u64) -> PyResult<Vec<(Vec<u32>, Move)>> {
    let trace = generate_all(&spec(multiplicities)?, cap).map_err(err)?;
    let moves = std::iter::once(None).chain(trace.steps().iter().map(|&t| Some(pair(t))));
    Ok(trace
        .states()
        .iter()
        .map(|p| p.0.clone())
        .zip(moves)
        .collect())
}

/// All permutations in lexicographic order.
#[pyfunction]
#[pyo3(signature = (multiplicities, cap = DEFAULT_CAP))]
fn lex(multiplicities: Vec<usize>, cap: u64) -> PyResult<Vec<Vec<u32>>> {
    let all = enumerate_lex(&spec(multiplicities)?, cap).map_err(err)?;
    Ok(all.into_iter().map(|p| p.0).collect())
}

/// Streaming generator; storage does not grow with the number of states.
#[pyclass(module = "multiset_gray_py")]
struct Generator {
    inner: MultisetPermutations,
}

#[pymethods]
impl Generator {
    #[new]
    fn new(multiplicities: Vec<usize>) -> PyResult<Self> {
        Ok(Self {
            inner: MultisetPermutations::new(&spec(multiplicities)?),
        })
    }

    fn __iter__(slf: PyRef<'_, Self>) -> PyRef<'_, Self> {
        slf
    }

    fn __next__(&mut self) -> Option<(Vec<u32>, Move)> {
        let mv = self.inner.advance()?;
        Some((
            self.inner.current().to_vec(),
            mv.map(|m| pair(m.transposition)),
        ))
    }

    /// Current arrangement with direction marks, e.g. `>>2233`.
    fn oriented_view(&self) -> String {
        self.inner.oriented_view()
    }

    fn heap_bytes(&self) -> usize {
        self.inner.heap_bytes()
    }
}

/// Checks one step between two arrangements.
#[pyfunction]
fn check_step<'py>(
    py: Python<'py>,
    prev: Vec<u32>,
    next: Vec<u32>,
) -> PyResult<Bound<'py, PyDict>> {
    let r: StepReport = check_gray_step(&prev, &next).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("is_transposition", r.is_transposition)?;
    d.set_item("move", r.mv.map(pair))?;
    d.set_item("width", r.width)?;
    d.set_item("strong_homogeneous", r.strong_homogeneous)?;
    d.set_item("adjacent", r.adjacent)?;
    d.set_item("passed", r.passed())?;
    Ok(d)
}

/// True when the generator lists every permutation exactly once with
/// strong homogeneous steps.
#[pyfunction]
#[pyo3(signature = (multiplicities, cap = DEFAULT_CAP))]
fn verify(multiplicities: Vec<usize>, cap: u64) -> PyResult<bool> {
    let s = spec(multiplicities)?;
    let trace = generate_all(&s, cap).map_err(err)?;
    Ok(check_exactly_once(&trace, &s).passed())
}

/// One iteration on a `{o,<,>}` string: `(next_state, move)`.
#[pyfunction]
fn iterate(state: &str) -> PyResult<(String, Move)> {
    let s: OrientedState = state.parse().map_err(err)?;
    let out = s.iterate().map_err(err)?;
    Ok((out.next.to_string(), out.mv.map(pair)))
}

/// Full oriented run as `(state, rules)` rows.
#[pyfunction]
fn oriented_run(state: &str) -> PyResult<Vec<(String, String)>> {
    let s: OrientedState = state.parse().map_err(err)?;
    Ok(run(&s).map_err(err)?.rows())
}

/// Total motion and width histogram of a combination list.
#[pyfunction]
#[pyo3(signature = (n, k, algo = "ours", cap = DEFAULT_CAP))]
fn motion(n: usize, k: usize, algo: &str, cap: u64) -> PyResult<(u64, BTreeMap<usize, u64>)> {
    let algo = match algo {
        "ours" => Algo::Ours,
        "eades" => Algo::Eades,
        "ruskey" => Algo::Ruskey,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown algorithm {other:?}"
            )))
        }
    };
    let m = motion_for(algo, n, k, cap).map_err(err)?;
    Ok((m.total_motion, m.width_histogram))
}

/// The motion comparison table for `2 <= n <= max_n` as CSV.
#[pyfunction]
#[pyo3(signature = (max_n, cap = DEFAULT_CAP))]
fn compare(max_n: usize, cap: u64) -> PyResult<String> {
    Ok(comparison_csv(&compare_motion(max_n, cap).map_err(err)?))
}

#[pyfunction]
fn sjt(n: usize) -> PyResult<Vec<Vec<u32>>> {
    let t = sjt_generate(n).map_err(err)?;
    Ok(t.into_states().into_iter().map(|p| p.0).collect())
}

#[pyfunction]
#[pyo3(signature = (n, k, cap = DEFAULT_CAP))]
fn revolving_door(n: usize, k: usize, cap: u64) -> PyResult<Vec<String>> {
    Ok(ruskey_c(n, k, cap)
        .map_err(err)?
        .iter()
        .map(|b| b.to_string())
        .collect())
}

#[pyfunction]
#[pyo3(signature = (n, k, cap = DEFAULT_CAP))]
fn eades_mckay(n: usize, k: usize, cap: u64) -> PyResult<Vec<String>> {
    let t = em(n, k, cap).map_err(err)?;
    Ok(t.states().iter().map(|b| b.to_string()).collect())
}

/// Number of column fillings streamed for a tableau shape.
#[pyfunction]
fn reduced_count(partition: Vec<usize>) -> PyResult<BigUint> {
    Ok(build_tableau(&partition).map_err(err)?.reduced_count())
}

/// Signed raw terms such as `+R_1212*R_3434`.
#[pyfunction]
#[pyo3(signature = (partition, cap = DEFAULT_CAP))]
fn raw_terms(partition: Vec<usize>, cap: u64) -> PyResult<Vec<String>> {
    let t = build_tableau(&partition).map_err(err)?;
    Ok(raw(&t, cap)
        .map_err(err)?
        .iter()
        .map(|r| r.to_string())
        .collect())
}

/// Collected polynomial, human-readable or in the `coef idx idx` format.
#[pyfunction]
#[pyo3(signature = (partition, machine = false, cap = DEFAULT_CAP))]
fn polynomial(partition: Vec<usize>, machine: bool, cap: u64) -> PyResult<String> {
    let t = build_tableau(&partition).map_err(err)?;
    let p = build_polynomial(&t, true, cap).map_err(err)?;
    Ok(if machine {
        p.to_machine()
    } else {
        p.to_human()
    })
}

#[pymodule]
fn multiset_gray_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Generator>()?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(lex, m)?)?;
    m.add_function(wrap_pyfunction!(check_step, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(iterate, m)?)?;
    m.add_function(wrap_pyfunction!(oriented_run, m)?)?;
    m.add_function(wrap_pyfunction!(motion, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(sjt, m)?)?;
    m.add_function(wrap_pyfunction!(revolving_door, m)?)?;
    m.add_function(wrap_pyfunction!(eades_mckay, m)?)?;
    m.add_function(wrap_pyfunction!(reduced_count, m)?)?;
    m.add_function(wrap_pyfunction!(raw_terms, m)?)?;
    m.add_function(wrap_pyfunction!(polynomial, m)?)?;
    Ok(())
}
