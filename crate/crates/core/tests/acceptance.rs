//! Acceptance gate. Each criterion runs in turn and prints one line:
//!
//! ```text
//! [PASS] 1 oriented run from >>>ooo reproduces the 20-row table
//! ```
//!
//! The test fails at the end if any criterion failed.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

use multiset_gray::metrics::{compare_motion, motion_for, motion_stats, Algo};
use multiset_gray::multiperm::new_generator;
use multiset_gray::oriented::{run, Cell};
use multiset_gray::refgens::{eades_mckay, ruskey_c, sjt_generate};
use multiset_gray::tensorpoly::{
    agaoka_reference, build_polynomial, build_tableau, raw_terms, reduced_vertical_enumerate,
    VerticalStream,
};
use multiset_gray::verify::{
    check_circular, check_gray_step, transposition_graph, verify_marked_lemma,
};
use multiset_gray::{
    enumerate_lex, generate_all, multinomial_count, GrayTrace, MultisetSpec, OrientedState,
    Permutation, Transposition, DEFAULT_CAP,
};

type Check = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn spec(m: &[usize]) -> MultisetSpec {
    MultisetSpec::new(m.to_vec()).unwrap()
}

fn state(s: &str) -> OrientedState {
    s.parse().unwrap()
}

/// Compares a run against a fixture of `index, state, rules` rows.
fn compare_run(start: &str, fixture: &str) -> Check {
    let expected = common::fixture_rows(fixture);
    let rows = run(&state(start)).map_err(|e| e.to_string())?.rows();
    ensure!(
        rows.len() == expected.len(),
        "{} rows, expected {}",
        rows.len(),
        expected.len()
    );
    for (i, ((s, rules), exp)) in rows.iter().zip(&expected).enumerate() {
        let exp_rules = exp.get(2).map(String::as_str).unwrap_or("");
        ensure!(
            s == &exp[1] && rules == exp_rules,
            "row {}: got {s} [{rules}], expected {} [{exp_rules}]",
            i + 1,
            exp[1]
        );
    }
    Ok(format!(
        "{} rows, last {}",
        rows.len(),
        rows.last().unwrap().0
    ))
}

fn best_of<F: FnMut()>(runs: usize, mut f: F) -> Duration {
    (0..runs)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed()
        })
        .min()
        .unwrap()
}

fn c1_sweep_a() -> Check {
    let detail = compare_run(">>>ooo", "sweep_a_6_3.txt")?;
    let last = run(&state(">>>ooo")).unwrap().trace.last().to_string();
    ensure!(last == "ooo><<", "final state {last}");
    let elapsed = best_of(5, || {
        run(&state(">>>ooo")).unwrap();
    });
    ensure!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
    Ok(format!("{detail}, {elapsed:?}"))
}

fn c2_sweep_b() -> Check {
    let detail = compare_run("ooo<>>", "sweep_b_6_3.txt")?;
    let end = run(&state(">>>ooo")).unwrap().trace.last().negate();
    ensure!(
        end == state("ooo<>>"),
        "part b does not start from the negated part a end"
    );
    Ok(detail)
}

fn c3_iteration_symmetry() -> Check {
    let holds = |s: &OrientedState| {
        let m = s.iterate().unwrap().next;
        m.negate().iterate().unwrap().next == s.negate()
    };
    let mut checked = 0u64;
    for n in 1..=10 {
        for k in 1..=n {
            let a = run(&OrientedState::part_a_start(n, k).unwrap()).unwrap();
            let b = run(&a.trace.last().negate()).unwrap();
            for s in a.trace.states().iter().chain(b.trace.states()) {
                ensure!(holds(s), "violated at {s}");
                checked += 1;
            }
        }
    }
    let strategy = proptest::collection::vec(0u8..3, 1..=24).prop_filter_map("all empty", |v| {
        let cells: Vec<Cell> = v
            .into_iter()
            .map(|x| [Cell::Empty, Cell::Left, Cell::Right][x as usize])
            .collect();
        let s = OrientedState::new(cells);
        (s.oriented_count() > 0).then_some(s)
    });
    let mut runner = TestRunner::deterministic();
    for _ in 0..1000 {
        let s = strategy.new_tree(&mut runner).unwrap().current();
        ensure!(holds(&s), "violated at random state {s}");
    }
    Ok(format!(
        "{checked} run states and 1000 random states, zero violations"
    ))
}

fn view_permutation(view: &str) -> Permutation {
    Permutation(
        view.chars()
            .map(|c| match c {
                '<' | '>' => 1,
                d => d.to_digit(10).unwrap(),
            })
            .collect(),
    )
}

fn c4_views_222() -> Check {
    let views: Vec<String> = common::fixture("views_222.txt")
        .lines()
        .map(str::to_string)
        .collect();
    ensure!(views.len() == 90, "fixture has {} cells", views.len());
    let s = spec(&[2, 2, 2]);
    let trace = generate_all(&s, DEFAULT_CAP).map_err(|e| e.to_string())?;
    ensure!(trace.len() == 90, "{} states", trace.len());
    for (i, (p, v)) in trace.states().iter().zip(&views).enumerate() {
        ensure!(
            *p == view_permutation(v),
            "state {}: {p} vs table {v}",
            i + 1
        );
    }
    let (first, last) = (trace.first().to_string(), trace.last().to_string());
    ensure!(first == "112233", "first {first}");
    // the table's final cell <<3322 reads 113322
    ensure!(last == "113322", "last {last}");

    let mut g = new_generator(&s);
    let mut view_mismatch = Vec::new();
    let mut i = 0;
    while g.advance().is_some() {
        if g.oriented_view() != views[i] {
            view_mismatch.push(i + 1);
        }
        i += 1;
    }
    ensure!(
        view_mismatch == [55, 85],
        "orientation marks differ at {view_mismatch:?}"
    );

    for w in trace.states().windows(2) {
        let r = check_gray_step(w[0].symbols(), w[1].symbols()).unwrap();
        ensure!(
            r.passed(),
            "step {} -> {} is not strong homogeneous",
            w[0],
            w[1]
        );
    }
    Ok("90 permutations in column order, first 112233, last 113322 (table cell <<3322)".into())
}

fn c5_exactly_once() -> Check {
    let started = Instant::now();
    let specs = common::all_specs(9);
    for s in &specs {
        let trace = generate_all(s, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let mut got = trace.into_states();
        got.sort();
        let lex = enumerate_lex(s, DEFAULT_CAP).unwrap();
        ensure!(got == lex, "spec {s} differs from the lexicographic list");
        ensure!(multinomial_count(s) == got.len().into(), "spec {s} count");
    }
    let elapsed = started.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("{} multiplicity vectors, {elapsed:?}", specs.len()))
}

fn c6_motion_parity() -> Check {
    let ours = motion_for(Algo::Ours, 6, 3, DEFAULT_CAP).unwrap();
    ensure!(
        ours.histogram_text() == "{1:15, 2:4}" && ours.total_motion == 23,
        "ours {} W={}",
        ours.histogram_text(),
        ours.total_motion
    );
    let e = eades_mckay(6, 3, DEFAULT_CAP).unwrap();
    let es = motion_stats(&e);
    ensure!(
        es.histogram_text() == "{1:16, 2:2, 3:1}" && es.total_motion == 23,
        "eades {} W={}",
        es.histogram_text(),
        es.total_motion
    );
    let rows = common::fixture_rows("eades_mckay_6_3.txt");
    ensure!(rows.len() == e.len(), "{} rows vs {}", rows.len(), e.len());
    for (i, row) in rows.iter().enumerate() {
        ensure!(
            e.states()[i].to_string() == row[1],
            "row {} state {}",
            i + 1,
            e.states()[i]
        );
    }
    // the printed move on row 4 contradicts its own states (101100 -> 011100)
    for (i, row) in rows.iter().enumerate().skip(1) {
        let ours = e.steps()[i - 1];
        let printed: Transposition = row[2].parse().unwrap();
        if i + 1 == 4 {
            ensure!(
                ours == Transposition::new(1, 2).unwrap(),
                "row 4 move {ours}"
            );
            continue;
        }
        ensure!(
            ours == printed,
            "row {} move {ours}, table {printed}",
            i + 1
        );
    }
    ensure!(e.steps()[6].to_string() == "(2,4)", "step 8");
    ensure!(e.steps()[15].to_string() == "(2,5)", "step 17");
    Ok("ours {1:15, 2:4} W=23; chord list {1:16, 2:2, 3:1} W=23; 20 rows match".into())
}

fn c7_experiments() -> Check {
    let rows = compare_motion(20, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let failed: Vec<String> = rows
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("({},{}) W_B={} W_E={}", r.n, r.k, r.w_b, r.w_e))
        .collect();
    ensure!(
        failed.is_empty(),
        "{} of {} cells violate a/b/c, e.g. {}",
        failed.len(),
        rows.len(),
        failed[..failed.len().min(4)].join(", ")
    );
    Ok(format!("{} cells", rows.len()))
}

fn c8_revolving_door() -> Check {
    let c: Vec<String> = ruskey_c(4, 2, DEFAULT_CAP)
        .unwrap()
        .iter()
        .map(|b| b.to_string())
        .collect();
    ensure!(
        c == ["1100", "0110", "1010", "0011", "0101", "1001"],
        "C(4,2) = {c:?}"
    );
    let trace = GrayTrace::from_states(ruskey_c(4, 2, DEFAULT_CAP).unwrap()).unwrap();
    ensure!(
        check_circular(&trace).is_transposition,
        "no closing transposition"
    );
    let mut cases = 0;
    for n in 1..=12 {
        for k in 0..=n {
            let r = verify_marked_lemma(n, k).map_err(|e| e.to_string())?;
            ensure!(r.passed(), "lemma fails at n={n} k={k}: {r:?}");
            cases += 1;
        }
    }
    Ok(format!(
        "C(4,2) fixture, closing step, lemma on {cases} cases"
    ))
}

fn c9_johnson_trotter() -> Check {
    for n in 4..=6 {
        let ours = generate_all(&spec(&vec![1; n]), DEFAULT_CAP).unwrap();
        let sjt = sjt_generate(n).unwrap();
        ensure!(ours.states() == sjt.states(), "n={n} differs");
    }
    Ok("n = 4, 5, 6 state for state".into())
}

fn c10_no_hamilton_path() -> Check {
    let r = transposition_graph(&spec(&[2, 2]), 1).map_err(|e| e.to_string())?;
    ensure!(
        r.vertex_count == 6 && r.edge_count == 6,
        "{} vertices {} edges",
        r.vertex_count,
        r.edge_count
    );
    ensure!(
        r.has_hamilton_path == Some(false),
        "search returned {:?}",
        r.has_hamilton_path
    );
    Ok("1122 graph: 6 vertices, 6 edges, no Hamilton path".into())
}

fn c11_circular() -> Check {
    for (m, len) in [(&[2, 2, 1, 1][..], 180), (&[2, 1, 1][..], 12)] {
        let t = generate_all(&spec(m), DEFAULT_CAP).unwrap();
        ensure!(t.len() == len, "{m:?} has {} states", t.len());
        ensure!(check_circular(&t).passed(), "{m:?} is not circular");
    }
    let mut count = 0;
    for s in common::all_specs(8) {
        let m = s.multiplicities();
        if m.len() >= 2 && m[m.len() - 1] == 1 && m[m.len() - 2] == 1 {
            let t = generate_all(&s, DEFAULT_CAP).unwrap();
            ensure!(check_circular(&t).passed(), "spec {s} is not circular");
            count += 1;
        }
    }
    Ok(format!("112234, 1123 and {count} specs with n <= 8"))
}

fn c12_polynomial() -> Check {
    let t = build_tableau(&[2, 2, 2, 2]).unwrap();
    let started = Instant::now();
    let raw = raw_terms(&t, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let collected = build_polynomial(&t, true, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();

    let diagrams = common::fixture_rows("columns_2222.txt");
    let assignments = reduced_vertical_enumerate(&t, DEFAULT_CAP).unwrap();
    ensure!(
        assignments.len() == 36 && diagrams.len() == 36,
        "expected 36 diagrams"
    );
    for (i, (a, d)) in assignments.iter().zip(&diagrams).enumerate() {
        let expect = format!("{} {} {}", d[0], d[1], d[2]);
        ensure!(
            a.diagram() == expect,
            "diagram {}: {} vs {expect}",
            i + 1,
            a.diagram()
        );
    }
    let printed = common::fixture_rows("raw_terms.txt");
    for (i, (term, p)) in raw.iter().zip(&printed).enumerate() {
        let expect = format!("{}R_{}*R_{}", p[0], p[1], p[2]);
        ensure!(
            term.to_string() == expect,
            "term {}: {term} vs {expect}",
            i + 1
        );
    }
    let reference = agaoka_reference();
    ensure!(
        collected == reference,
        "collected polynomial differs:\n{}",
        collected.to_human()
    );
    ensure!(collected.len() == 12, "{} terms", collected.len());
    ensure!(elapsed < Duration::from_millis(10), "took {elapsed:?}");
    Ok(format!("36 signed terms, 12 collected terms, {elapsed:?}"))
}

fn c13_big_tableau() -> Check {
    let t = build_tableau(&[5, 5, 5, 5, 4, 4]).unwrap();
    let expected = 90u64.pow(4) * 6;
    ensure!(expected == 393_660_000, "90^4*6 = {expected}");
    ensure!(
        t.reduced_count() == expected.into(),
        "count {}",
        t.reduced_count()
    );
    let started = Instant::now();
    let streamed = VerticalStream::new(&t).count_remaining();
    let elapsed = started.elapsed();
    ensure!(streamed == expected, "streamed {streamed}");
    Ok(format!(
        "393660000 by formula and by streaming ({elapsed:?})"
    ))
}

fn resident_kib() -> Option<u64> {
    let statm = std::fs::read_to_string("/proc/self/statm").ok()?;
    let pages: u64 = statm.split_whitespace().nth(1)?.parse().ok()?;
    Some(pages * 4)
}

fn c14_constant_storage() -> Check {
    let s = spec(&[12, 12]);
    let mut g = new_generator(&s);
    let heap = g.heap_bytes();
    let rss_before = resident_kib();
    let mut emitted = 0u64;
    let mut sink = 0u64;
    while emitted < 1_000_000 {
        let Some(mv) = g.advance() else { break };
        if let Some(mv) = mv {
            sink = sink.wrapping_add(mv.transposition.i() as u64);
        }
        emitted += 1;
        if emitted.is_multiple_of(100_000) {
            ensure!(
                g.heap_bytes() == heap,
                "heap grew to {} bytes",
                g.heap_bytes()
            );
        }
    }
    ensure!(emitted == 1_000_000, "only {emitted} states");
    let growth = match (rss_before, resident_kib()) {
        (Some(a), Some(b)) => {
            ensure!(
                b.saturating_sub(a) < 4096,
                "resident set grew by {} KiB",
                b - a
            );
            format!(", resident growth {} KiB", b.saturating_sub(a))
        }
        _ => String::new(),
    };
    std::hint::black_box(sink);
    Ok(format!(
        "10^6 states of {{12,12}}, generator heap {heap} bytes{growth}"
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 14] = [
        (
            1,
            "oriented run from >>>ooo reproduces the 20-row table",
            c1_sweep_a,
        ),
        (
            2,
            "oriented run from ooo<>> reproduces the mirrored table",
            c2_sweep_b,
        ),
        (
            3,
            "M(N(M(S))) = N(S) on run states and random states",
            c3_iteration_symmetry,
        ),
        (4, "multiset 112233 yields the 90-cell table", c4_views_222),
        (
            5,
            "exactly once for every multiset with n <= 9",
            c5_exactly_once,
        ),
        (
            6,
            "total motion parity at n=6, k=3 and chord table",
            c6_motion_parity,
        ),
        (
            7,
            "motion experiments a/b/c for 2 <= n <= 20",
            c7_experiments,
        ),
        (
            8,
            "revolving door fixture and marked lemma for n <= 12",
            c8_revolving_door,
        ),
        (
            9,
            "distinct elements give the Johnson-Trotter order",
            c9_johnson_trotter,
        ),
        (
            10,
            "no Hamilton path in the 1122 adjacent graph",
            c10_no_hamilton_path,
        ),
        (
            11,
            "circular lists when the two largest types are single",
            c11_circular,
        ),
        (12, "B2222 polynomial raw and collected", c12_polynomial),
        (13, "B55554 4 reduced stream cardinality", c13_big_tableau),
        (14, "constant storage while streaming", c14_constant_storage),
    ];
    println!();
    let mut failed = Vec::new();
    for (id, name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("[PASS] {id:>2} {name}: {detail}"),
            Err(why) => {
                println!("[FAIL] {id:>2} {name}: {why}");
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
