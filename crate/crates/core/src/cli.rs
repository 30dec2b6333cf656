//! Command-line front end. Exit status is `0` on success, `1` when a check
//! fails, and `2` on usage errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::Error;
use crate::metrics::{compare_motion, motion_for, Algo, CSV_HEADER};
use crate::multiperm::{generate_all, MultisetPermutations};
use crate::multiset::{format_symbols, MultisetSpec, DEFAULT_CAP};
use crate::oriented::{run as run_oriented, OrientedState};
use crate::tensorpoly::{
    agaoka_reference, build_polynomial, build_tableau, raw_terms, VerticalStream,
};
use crate::verify::{
    check_circular, check_exactly_once, to_key_value, verify_marked_lemma, TranspositionGraph,
};

#[derive(Debug, Parser)]
#[command(
    name = "multiset-gray",
    version,
    about = "Gray codes for multiset permutations"
)]
pub struct Cli {
    /// Refuse to materialize more than this many items.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: u64,

    /// Write output here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Lines)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Lines,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stream every permutation of a multiset.
    Enum(EnumArgs),
    /// Check a generated list for exactly-once coverage and circularity.
    Verify(MultisetArg),
    /// Width histogram and total motion of a combination list.
    Motion(MotionArgs),
    /// Total motion of this generator against Eades-McKay, as CSV.
    Compare {
        #[arg(long)]
        max_n: usize,
    },
    /// Transposition graph on all permutations of a multiset.
    Graph(GraphArgs),
    /// Check the marked revolving-door lemma for one `(n, k)`.
    Lemma {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Run the oriented combination sweep from a `{o,<,>}` state.
    Oriented {
        #[arg(long)]
        state: String,
    },
    /// Curvature-tensor polynomial of a paired Young tableau.
    Poly(PolyArgs),
}

#[derive(Debug, Args)]
pub struct MultisetArg {
    /// Multiplicities, e.g. `2,2,2`.
    #[arg(long)]
    pub multiset: String,
}

#[derive(Debug, Args)]
pub struct EnumArgs {
    #[arg(long)]
    pub multiset: String,
    /// Add the move and sign of each step.
    #[arg(long)]
    pub trace: bool,
    /// Draw type 1 as `<`/`>` by direction (two-type multisets only).
    #[arg(long)]
    pub oriented: bool,
    /// Stop after this many permutations.
    #[arg(long)]
    pub limit: Option<u64>,
}

#[derive(Debug, Args)]
pub struct MotionArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = Algo::Ours)]
    pub algo: Algo,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[arg(long)]
    pub multiset: String,
    #[arg(long, default_value_t = 1)]
    pub max_width: usize,
    /// Emit Graphviz instead of a report.
    #[arg(long)]
    pub dot: bool,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    /// Row lengths, e.g. `2,2,2,2`.
    #[arg(long)]
    pub partition: String,
    /// Print the signed terms before any symmetry is applied.
    #[arg(long)]
    pub raw: bool,
    /// Compare the `2,2,2,2` polynomial with the built-in reference.
    #[arg(long)]
    pub check_agaoka: bool,
    /// Coefficient followed by index quadruples, one term per line.
    #[arg(long)]
    pub machine: bool,
    /// Print stream and group sizes without enumerating.
    #[arg(long)]
    pub count: bool,
    /// Walk the whole stream and report how many states it has.
    #[arg(long)]
    pub stream_count: bool,
}

enum Failure {
    Check,
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `argv` (including the program name) and runs the command.
pub fn run_cli<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.output {
        Some(path) => match File::create(path) {
            Ok(f) => {
                let mut w = BufWriter::new(f);
                dispatch(&cli, &mut w).and_then(|()| w.flush().map_err(Failure::from))
            }
            Err(e) => Err(Failure::Usage(format!(
                "cannot create {}: {e}",
                path.display()
            ))),
        },
        None => dispatch(&cli, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Check) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        // a closed pipe ends the stream quietly
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn parse_spec(s: &str) -> std::result::Result<MultisetSpec, Failure> {
    Ok(s.parse::<MultisetSpec>()?)
}

fn parse_list(s: &str) -> std::result::Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("bad number {p:?} in {s:?}")))
        })
        .collect()
}

fn check(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Enum(a) => enumerate(a, cli.format, out),
        Command::Verify(a) => {
            let spec = parse_spec(&a.multiset)?;
            let trace = generate_all(&spec, cli.cap)?;
            let report = check_exactly_once(&trace, &spec);
            let circular = check_circular(&trace);
            let value = json!({
                "multiset": spec.to_string(),
                "exactly_once": report,
                "circular": circular.passed(),
                "closing_step": circular,
            });
            match cli.format {
                Format::Json => writeln!(out, "{value}")?,
                _ => {
                    out.write_all(to_key_value(&value).as_bytes())?;
                    out.write_all(to_key_value(&report).as_bytes())?;
                }
            }
            check(report.passed())
        }
        Command::Motion(a) => {
            let stats = motion_for(a.algo, a.n, a.k, cli.cap)?;
            match cli.format {
                Format::Json => writeln!(out, "{}", serde_json::to_string(&stats).unwrap())?,
                Format::Csv => {
                    writeln!(out, "width,count")?;
                    for (w, c) in &stats.width_histogram {
                        writeln!(out, "{w},{c}")?;
                    }
                }
                Format::Lines => {
                    writeln!(out, "W={}", stats.total_motion)?;
                    writeln!(out, "widths={}", stats.histogram_text())?;
                    writeln!(out, "steps={}", stats.step_count)?;
                }
            }
            Ok(())
        }
        Command::Compare { max_n } => {
            let rows = compare_motion(*max_n, cli.cap)?;
            if cli.format == Format::Json {
                for r in &rows {
                    writeln!(out, "{}", serde_json::to_string(r).unwrap())?;
                }
            } else {
                writeln!(out, "{CSV_HEADER}")?;
                for r in &rows {
                    writeln!(out, "{}", r.csv_line())?;
                }
            }
            check(rows.iter().all(|r| r.passed()))
        }
        Command::Graph(a) => {
            let spec = parse_spec(&a.multiset)?;
            let graph = TranspositionGraph::build(&spec, a.max_width, cli.cap)?;
            if a.dot {
                out.write_all(graph.to_dot().as_bytes())?;
            } else {
                let report = graph.report();
                match cli.format {
                    Format::Json => writeln!(out, "{}", serde_json::to_string(&report).unwrap())?,
                    _ => out.write_all(to_key_value(&report).as_bytes())?,
                }
            }
            Ok(())
        }
        Command::Lemma { n, k } => {
            let report = verify_marked_lemma(*n, *k)?;
            match cli.format {
                Format::Json => writeln!(out, "{}", serde_json::to_string(&report).unwrap())?,
                _ => out.write_all(to_key_value(&report).as_bytes())?,
            }
            check(report.passed())
        }
        Command::Oriented { state } => {
            let start: OrientedState = state.parse()?;
            let run = run_oriented(&start)?;
            let moves = std::iter::once(String::new())
                .chain(run.trace.steps().iter().map(|t| t.to_string()));
            for (i, ((s, rules), mv)) in run.rows().into_iter().zip(moves).enumerate() {
                match cli.format {
                    Format::Json => writeln!(
                        out,
                        "{}",
                        json!({"index": i + 1, "state": s, "rules": rules, "move": mv})
                    )?,
                    Format::Csv => writeln!(out, "{},{s},\"{rules}\",\"{mv}\"", i + 1)?,
                    Format::Lines => writeln!(out, "{}\t{s}\t{rules}\t{mv}", i + 1)?,
                }
            }
            Ok(())
        }
        Command::Poly(a) => poly(a, cli.cap, out),
    }
}

fn enumerate(a: &EnumArgs, format: Format, out: &mut dyn Write) -> Outcome {
    let spec = parse_spec(&a.multiset)?;
    if a.oriented && spec.types() != 2 {
        return Err(Failure::Usage(
            "--oriented needs a two-type multiset".into(),
        ));
    }
    let mut gen = MultisetPermutations::new(&spec);
    if format == Format::Csv {
        writeln!(out, "index,state,move,sign")?;
    }
    let mut index = 0u64;
    while a.limit.is_none_or(|l| index < l) {
        let Some(mv) = gen.advance() else { break };
        let state = if a.oriented {
            gen.oriented_view()
        } else {
            format_symbols(gen.current())
        };
        let mv = mv.map(|m| m.transposition.to_string()).unwrap_or_default();
        let sign = if index.is_multiple_of(2) { '+' } else { '-' };
        match format {
            Format::Lines if a.trace => writeln!(out, "{state}\t{mv}\t{sign}")?,
            Format::Lines => writeln!(out, "{state}")?,
            Format::Csv => writeln!(out, "{},{state},\"{mv}\",{sign}", index + 1)?,
            Format::Json => writeln!(
                out,
                "{}",
                json!({"index": index + 1, "state": state, "move": mv, "sign": format!("{sign}1")})
            )?,
        }
        index += 1;
    }
    Ok(())
}

fn poly(a: &PolyArgs, cap: u64, out: &mut dyn Write) -> Outcome {
    let partition = parse_list(&a.partition)?;
    let t = build_tableau(&partition)?;
    if a.count {
        writeln!(out, "reduced_count: {}", t.reduced_count())?;
        writeln!(out, "vertical_group_order: {}", t.vertical_group_order())?;
        return Ok(());
    }
    if a.stream_count {
        let expected = t.reduced_count();
        let walked = VerticalStream::new(&t).count_remaining();
        writeln!(out, "streamed: {walked}")?;
        return check(expected == walked.into());
    }
    if a.check_agaoka {
        if partition != [2, 2, 2, 2] {
            return Err(Failure::Usage(
                "--check-agaoka needs --partition 2,2,2,2".into(),
            ));
        }
        let poly = build_polynomial(&t, true, cap)?;
        let reference = agaoka_reference();
        if poly == reference {
            writeln!(out, "MATCH ({} terms)", poly.len())?;
            return Ok(());
        }
        writeln!(out, "MISMATCH")?;
        writeln!(out, "computed:")?;
        out.write_all(poly.to_human().as_bytes())?;
        writeln!(out, "reference:")?;
        out.write_all(reference.to_human().as_bytes())?;
        return Err(Failure::Check);
    }
    if a.raw {
        for term in raw_terms(&t, cap)? {
            writeln!(out, "{term}")?;
        }
        return Ok(());
    }
    let poly = build_polynomial(&t, true, cap)?;
    if a.machine {
        out.write_all(poly.to_machine().as_bytes())?;
    } else {
        out.write_all(poly.to_human().as_bytes())?;
    }
    Ok(())
}
