use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use buchstaber::generators::{generate, GeneratorSpec};
use buchstaber::invariant::conditions::{
    lambda_violation_gf2, lambda_violation_integer, s_violation_gf2, s_violation_integer,
};
use buchstaber::invariant::criteria::check_criteria;
use buchstaber::invariant::report::{analyze, s_real, upper_bound, AnalyzeOptions};
use buchstaber::invariant::xi::{xi_search, SearchOptions, DEFAULT_MAX_K};
use buchstaber::io::{complex_to_json, complex_to_text, parse_complex, parse_gf2_matrix, parse_int_matrix};
use buchstaber::oracle::{matrix_scan_canonical, matrix_scan_gf2, MAX_SCAN_BITS};
use buchstaber::zlattice::{counterexample_matrix, det_exact, lemma_r23_scan};
use buchstaber::{Error, IntMatrix, SimplicialComplex, VertexSet};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

const EXIT_INVALID: u8 = 1;
const EXIT_GUARD: u8 = 2;

/// Buchstaber invariant of simplicial complexes.
#[derive(Parser)]
#[command(name = "buchstaber", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Search {
    /// Largest k for ξ-search.
    #[arg(long, default_value_t = DEFAULT_MAX_K)]
    max_k: usize,
    /// Worker threads (0 = all available cores).
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl Search {
    fn options(&self) -> SearchOptions {
        SearchOptions { max_k: self.max_k, threads: self.threads }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Ring {
    Gf2,
    Int,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: N(K), criteria, s_R(K), bounds and the s(K) interval.
    Analyze {
        /// Complex file (text or JSON); `-` reads standard input.
        input: PathBuf,
        /// Also report the chromatic bound m - γ for a simple polytope.
        #[arg(long)]
        polytopal: bool,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        output: Output,
    },
    /// The real invariant with its ξ, S and Λ witnesses.
    Sreal {
        input: PathBuf,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        output: Output,
    },
    /// Largest r ≤ 3 whose intersection criterion holds, with the matched sets.
    Criteria {
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Generate a complex, e.g. `gen cyclic 3 6` or `gen join cycle 4 points 2`.
    Gen {
        /// Kind and parameters: simplex N | boundary N | skeleton N K | cycle M |
        /// points M | complete_graph M | cyclic N M | random M [seed=S p=A/B mode=flag|mixed] |
        /// join SPEC SPEC.
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        /// Seed for random kinds without an explicit `seed=`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file instead of standard output.
        #[arg(short = 'o', long = "output")]
        out: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Check a user-supplied S (m × k) or Λ ((m - n) × m) matrix against K.
    Verify {
        input: PathBuf,
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = Ring::Gf2)]
        ring: Ring,
        /// Treat the matrix as Λ instead of S.
        #[arg(long)]
        lambda: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Compare ξ-search with a brute-force matrix scan for each k.
    Oracle {
        input: PathBuf,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        output: Output,
    },
    /// Scan n × n 0/1 matrices (n = 2, 3, 4) for odd determinants other than ±1.
    Lemma23 {
        #[command(flatten)]
        output: Output,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_resource_guard() { EXIT_GUARD } else { EXIT_INVALID };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

fn invalid(message: String) -> Failure {
    Failure { code: EXIT_INVALID, message }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| invalid(format!("standard input: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn read_complex(path: &Path) -> Result<SimplicialComplex, Failure> {
    let text = read_input(path)?;
    parse_complex(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn set_list(sets: &[VertexSet]) -> String {
    sets.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Analyze { input, polytopal, search, output } => {
            let k = read_complex(&input)?;
            let report = analyze(&k, &AnalyzeOptions { polytopal, search: search.options() });
            if output.json {
                print_json(&report);
            } else {
                println!("{report}");
            }
            Ok(if report.s_real.exact { 0 } else { EXIT_GUARD })
        }
        Command::Sreal { input, search, output } => {
            let k = read_complex(&input)?;
            let r = s_real(&k, &search.options());
            if output.json {
                print_json(&r);
            } else {
                if r.exact {
                    println!("s_R(K) = {}", r.lower);
                } else {
                    println!("s_R(K) in [{}, {}] (search stopped at k = {})", r.lower, r.upper, r.guard_tripped_at.unwrap_or(0));
                }
                if let Some(w) = &r.xi_witness {
                    for (i, image) in w.images().iter().enumerate() {
                        let a = buchstaber::Gf2Vector(i as u64 + 1);
                        println!("xi({}) = {image}", a.to_tuple_string(w.k()));
                    }
                }
                if let Some(s) = &r.matrix_witness {
                    print!("S =\n{s}");
                }
                if let Some(l) = &r.lambda_witness {
                    print!("Lambda =\n{l}");
                }
            }
            Ok(if r.exact { 0 } else { EXIT_GUARD })
        }
        Command::Criteria { input, output } => {
            let k = read_complex(&input)?;
            let r = check_criteria(&k);
            if output.json {
                print_json(&r);
            } else {
                println!("level = {}", r.level);
                if let Some(w) = r.witness.as_ref().filter(|_| r.level > 0) {
                    println!("S{} case {}: {}", w.level, w.configuration, set_list(&w.sets));
                }
            }
            Ok(0)
        }
        Command::Gen { spec, seed, out, output } => {
            let tokens: Vec<&str> = spec.iter().flat_map(|s| s.split_whitespace()).collect();
            let spec = GeneratorSpec::parse_tokens(&tokens, seed)?;
            let k = generate(&spec)?;
            let text = if output.json { complex_to_json(&k) + "\n" } else { format!("# {spec}\n{}", complex_to_text(&k)) };
            match out {
                Some(path) => fs::write(&path, text).map_err(|e| invalid(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Verify { input, matrix, ring, lambda, output } => {
            let k = read_complex(&input)?;
            let text = read_input(&matrix)?;
            let parse_context = |e: Error| invalid(format!("{}: {e}", matrix.display()));
            let violation = match (ring, lambda) {
                (Ring::Gf2, false) => s_violation_gf2(&k, &parse_gf2_matrix(&text).map_err(parse_context)?)?,
                (Ring::Gf2, true) => lambda_violation_gf2(&k, &parse_gf2_matrix(&text).map_err(parse_context)?)?,
                (Ring::Int, false) => s_violation_integer(&k, &parse_int_matrix(&text).map_err(parse_context)?)?,
                (Ring::Int, true) => lambda_violation_integer(&k, &parse_int_matrix(&text).map_err(parse_context)?)?,
            };
            let ring_name = match ring {
                Ring::Gf2 => "gf2",
                Ring::Int => "int",
            };
            let which = if lambda { "Lambda" } else { "S" };
            if output.json {
                print_json(&json!({
                    "ring": ring_name,
                    "matrix": which,
                    "holds": violation.is_none(),
                    "failing_simplex": violation,
                }));
            } else {
                match violation {
                    None => println!("{which} satisfies the condition over {ring_name}: true"),
                    Some(sigma) => println!(
                        "{which} satisfies the condition over {ring_name}: false (first failing maximal simplex {sigma})"
                    ),
                }
            }
            Ok(0)
        }
        Command::Oracle { input, search, output } => {
            let k = read_complex(&input)?;
            let opts = search.options();
            let top = upper_bound(&k).min(opts.max_k);
            let mut rows = Vec::new();
            let mut guard = None;
            for rank in 1..=top {
                let exhaustive = k.vertex_count() * rank <= MAX_SCAN_BITS;
                let scan = if exhaustive { matrix_scan_gf2(&k, rank) } else { matrix_scan_canonical(&k, rank) };
                let (xi, scan) = match (xi_search(&k, rank, &opts), scan) {
                    (Ok(xi), Ok(scan)) => (xi.is_some(), scan.is_some()),
                    (Err(e), _) | (_, Err(e)) => {
                        guard = Some(e.to_string());
                        break;
                    }
                };
                rows.push((rank, xi, scan, if exhaustive { "exhaustive" } else { "reduced" }));
            }
            let agree = rows.iter().all(|&(_, xi, scan, _)| xi == scan);
            if output.json {
                let rows: Vec<_> = rows
                    .iter()
                    .map(|&(k, xi, scan, kind)| json!({"k": k, "xi_search": xi, "matrix_scan": scan, "scan": kind}))
                    .collect();
                print_json(&json!({"rows": rows, "agree": agree, "guard": guard}));
            } else {
                println!("k  xi-search  matrix-scan");
                for (rank, xi, scan, kind) in &rows {
                    println!("{rank}  {xi:<9}  {scan} ({kind})");
                }
                if let Some(g) = &guard {
                    println!("stopped: {g}");
                }
                println!("agreement: {}", if agree { "yes" } else { "NO" });
            }
            Ok(if guard.is_some() { EXIT_GUARD } else { 0 })
        }
        Command::Lemma23 { output } => {
            let mut parts = Vec::new();
            let mut entries = Vec::new();
            let mut shown = Vec::new();
            for n in 2..=4 {
                match lemma_r23_scan::<BigInt>(n)? {
                    None => {
                        parts.push(format!("n={n}: no counterexample"));
                        entries.push(json!({"n": n, "counterexample": null}));
                    }
                    Some(first) => {
                        // Report the member A_n of the explicit family; the
                        // scan's first hit is kept alongside it.
                        let a = counterexample_matrix::<BigInt>(n)?;
                        let det = det_exact(&a)?;
                        let first_det = det_exact(&first)?;
                        parts.push(format!("n={n}: counterexample found, det = {det}"));
                        entries.push(json!({
                            "n": n,
                            "counterexample": matrix_json(&a),
                            "det": det.to_string(),
                            "first_in_scan": matrix_json(&first),
                            "first_in_scan_det": first_det.to_string(),
                        }));
                        shown.push((n, a, first, first_det));
                    }
                }
            }
            let family: Vec<(usize, String)> = [4, 6, 8]
                .into_iter()
                .map(|k| Ok((k, det_exact(&counterexample_matrix::<BigInt>(k)?)?.to_string())))
                .collect::<Result<_, Error>>()?;
            if output.json {
                let family: Vec<_> = family.iter().map(|(k, d)| json!({"k": k, "det": d})).collect();
                print_json(&json!({"scans": entries, "family": family}));
            } else {
                println!("{}", parts.join("; "));
                for (n, a, first, first_det) in shown {
                    print!("A_{n} =\n{a}");
                    print!("first counterexample in scan order (det = {first_det}) =\n{first}");
                }
                for (k, d) in family {
                    println!("det A_{k} = {d}");
                }
            }
            Ok(0)
        }
    }
}

fn matrix_json(a: &IntMatrix) -> Vec<Vec<String>> {
    (0..a.nrows()).map(|i| a.row(i).iter().map(|x| x.to_string()).collect()).collect()
}

/// Die quietly on a closed pipe (`buchstaber ... | head`) instead of panicking.
fn restore_sigpipe() {
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

fn main() -> ExitCode {
    restore_sigpipe();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
