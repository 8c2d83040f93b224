//! Command-line surface over the library: compute entropies from matrix
//! files, run property suites, fuzz the open conjecture, and emit the
//! saturation constructors' instances.
//!
//! Exit codes: 0 success (conjecture findings included), 1 theorem-suite
//! violation, 2 usage/parse failure, 3 validation failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use stochent::entropy::{
    relative_entropy_stoch, relative_entropy_vec, shannon_entropy, weighted_entropy,
};
use stochent::error::Error;
use stochent::io::{
    AdditivitySpecFile, ChannelFile, MatrixFile, StrongSpecFile, Thm1SpecFile, Thm2SpecFile,
};
use stochent::quantum::{
    channel_relative_entropy, kraus_matrix, map_entropy, von_neumann_entropy,
};
use stochent::structure::{
    birkhoff_decompose, construct_additivity, construct_strong_additivity, construct_theorem1,
    construct_theorem2, theorem1_equality_sides, theorem2_equality_sides, Theorem1Spec,
    Theorem2Spec,
};
use stochent::verify::{fuzz_conjecture, is_known_suite, run_all, run_suite};
use stochent::{DensityMatrix, ProbVector, RelativeEntropy};

const EXIT_VIOLATION: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;

#[derive(Parser)]
#[command(name = "stochent", about = "Entropy of stochastic matrices and quantum channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EntropyKind {
    Shannon,
    Weighted,
    VonNeumann,
    Map,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelKind {
    Vec,
    Stochastic,
    Channel,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    Thm1,
    Thm2,
    Additivity,
    Strong,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy of a probability vector, stochastic matrix, state, or channel.
    Entropy {
        #[arg(long, value_enum)]
        kind: EntropyKind,
        /// Input file (MatrixFile, or ChannelFile for --kind map).
        input: PathBuf,
        /// Weight vector for --kind weighted (defaults to uniform).
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Relative entropy between two objects of the same kind.
    RelEntropy {
        #[arg(long, value_enum)]
        kind: RelKind,
        a: PathBuf,
        b: PathBuf,
        /// Weight vector for --kind stochastic (defaults to uniform).
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Run a property suite (or all of them) and report violations.
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, value_delimiter = ',', default_values_t = vec![2usize, 3, 4])]
        dims: Vec<usize>,
        #[arg(long, env = "STOCHENT_SEED", default_value_t = 0)]
        seed: u64,
        /// Write the report JSON here (stdout summary is printed regardless).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a saturating instance from a spec file and write it out.
    Construct {
        #[arg(long, value_enum)]
        which: ConstructKind,
        #[arg(long)]
        spec: PathBuf,
        /// Output directory for the instance files and verification record.
        #[arg(long)]
        out: PathBuf,
    },
    /// Birkhoff decomposition of a bistochastic matrix.
    Birkhoff { input: PathBuf },
    /// Kraus matrix B(Φ) of a channel.
    KrausMatrix {
        input: PathBuf,
        /// Write the MatrixFile here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fuzz the open composition conjecture; findings never fail the run.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, value_delimiter = ',', default_values_t = vec![2usize, 3])]
        dims: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        kraus_counts: Vec<usize>,
        #[arg(long, env = "STOCHENT_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Domain failures map to the validation exit code; internal failures too,
/// since the user can do nothing about a parse at that point.
fn fail_domain(err: Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(EXIT_VALIDATION)
}

fn fail_parse(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_PARSE)
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| format!("cannot serialize: {e}"))?;
    std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn print_value(v: f64) {
    println!("{v:.12}");
}

fn print_rel(v: RelativeEntropy) {
    match v {
        RelativeEntropy::Finite(x) => print_value(x),
        RelativeEntropy::Infinite => println!("inf"),
    }
}

/// Load a weight vector, defaulting to uniform of length `n`.
fn load_weights(path: &Option<PathBuf>, n: usize) -> Result<Result<ProbVector, Error>, String> {
    match path {
        None => Ok(Ok(ProbVector::uniform(n))),
        Some(p) => {
            let mf: MatrixFile = read_json(p)?;
            Ok(mf.to_prob_vector())
        }
    }
}

fn cmd_entropy(kind: EntropyKind, input: &Path, weights: &Option<PathBuf>) -> ExitCode {
    match kind {
        EntropyKind::Shannon => {
            let mf: MatrixFile = match read_json(input) {
                Ok(v) => v,
                Err(e) => return fail_parse(e),
            };
            match mf.to_prob_vector() {
                Ok(p) => {
                    print_value(shannon_entropy(&p));
                    ExitCode::SUCCESS
                }
                Err(e) => fail_domain(e),
            }
        }
        EntropyKind::Weighted => {
            let mf: MatrixFile = match read_json(input) {
                Ok(v) => v,
                Err(e) => return fail_parse(e),
            };
            let t = match mf.to_stochastic() {
                Ok(t) => t,
                Err(e) => return fail_domain(e),
            };
            let p = match load_weights(weights, t.dim()) {
                Ok(Ok(p)) => p,
                Ok(Err(e)) => return fail_domain(e),
                Err(e) => return fail_parse(e),
            };
            match weighted_entropy(&t, &p) {
                Ok(h) => {
                    print_value(h);
                    ExitCode::SUCCESS
                }
                Err(e) => fail_domain(e),
            }
        }
        EntropyKind::VonNeumann => {
            let mf: MatrixFile = match read_json(input) {
                Ok(v) => v,
                Err(e) => return fail_parse(e),
            };
            let rho = match mf.to_complex_matrix().and_then(DensityMatrix::new) {
                Ok(r) => r,
                Err(e) => return fail_domain(e),
            };
            match von_neumann_entropy(&rho) {
                Ok(h) => {
                    print_value(h);
                    ExitCode::SUCCESS
                }
                Err(e) => fail_domain(e),
            }
        }
        EntropyKind::Map => {
            let cf: ChannelFile = match read_json(input) {
                Ok(v) => v,
                Err(e) => return fail_parse(e),
            };
            match cf.to_channel().and_then(|ch| map_entropy(&ch)) {
                Ok(h) => {
                    print_value(h);
                    ExitCode::SUCCESS
                }
                Err(e) => fail_domain(e),
            }
        }
    }
}

fn cmd_rel_entropy(kind: RelKind, a: &Path, b: &Path, weights: &Option<PathBuf>) -> ExitCode {
    match kind {
        RelKind::Vec => {
            let (fa, fb): (MatrixFile, MatrixFile) = match (read_json(a), read_json(b)) {
                (Ok(x), Ok(y)) => (x, y),
                (Err(e), _) | (_, Err(e)) => return fail_parse(e),
            };
            let pq = fa
                .to_prob_vector()
                .and_then(|p| fb.to_prob_vector().map(|q| (p, q)));
            match pq.and_then(|(p, q)| relative_entropy_vec(&p, &q)) {
                Ok(h) => {
                    print_rel(h);
                    ExitCode::SUCCESS
                }
                Err(e) => fail_domain(e),
            }
        }
        RelKind::Stochastic => {
            let (fa, fb): (MatrixFile, MatrixFile) = match (read_json(a), read_json(b)) {
                (Ok(x), Ok(y)) => (x, y),
                (Err(e), _) | (_, Err(e)) => return fail_parse(e),
            };
            let ab = fa
                .to_stochastic()
                .and_then(|x| fb.to_stochastic().map(|y| (x, y)));
            let (x, y) = match ab {
                Ok(v) => v,
                Err(e) => return fail_domain(e),
            };
            let p = match load_weights(weights, x.dim()) {
                Ok(Ok(p)) => p,
                Ok(Err(e)) => return fail_domain(e),
                Err(e) => return fail_parse(e),
            };
            match relative_entropy_stoch(&x, &y, &p) {
                Ok(h) => {
                    print_rel(h);
                    ExitCode::SUCCESS
                }
                Err(e) => fail_domain(e),
            }
        }
        RelKind::Channel => {
            let (fa, fb): (ChannelFile, ChannelFile) = match (read_json(a), read_json(b)) {
                (Ok(x), Ok(y)) => (x, y),
                (Err(e), _) | (_, Err(e)) => return fail_parse(e),
            };
            let res = fa
                .to_channel()
                .and_then(|x| fb.to_channel().map(|y| (x, y)))
                .and_then(|(x, y)| channel_relative_entropy(&x, &y));
            match res {
                Ok(h) => {
                    print_rel(h);
                    ExitCode::SUCCESS
                }
                Err(e) => fail_domain(e),
            }
        }
    }
}

fn cmd_check(
    suite: &str,
    trials: usize,
    dims: &[usize],
    seed: u64,
    out: &Option<PathBuf>,
) -> ExitCode {
    if suite != "all" && !is_known_suite(suite) {
        return fail_parse(format!("unknown suite '{suite}'"));
    }
    let reports = if suite == "all" {
        match run_all(trials, dims, seed) {
            Ok(r) => r,
            Err(e) => return fail_domain(e),
        }
    } else {
        match run_suite(suite, trials, dims, seed) {
            Ok(r) => vec![r],
            Err(e) => return fail_domain(e),
        }
    };
    let mut total_violations = 0usize;
    for r in &reports {
        total_violations += r.violations.len();
        println!(
            "{}: {} violations, max gap {:.3e}, retries {}",
            r.suite_name,
            r.violations.len(),
            r.max_gap_observed,
            r.retries
        );
    }
    if let Some(path) = out {
        let result = if reports.len() == 1 {
            write_json(path, &reports[0])
        } else {
            write_json(path, &reports)
        };
        if let Err(e) = result {
            return fail_parse(e);
        }
    }
    if total_violations > 0 {
        ExitCode::from(EXIT_VIOLATION)
    } else {
        ExitCode::SUCCESS
    }
}

fn write_thm1(out: &Path, spec: &Theorem1Spec) -> Result<(), Error> {
    let (t, p, q) = construct_theorem1(spec)?;
    let (lhs, rhs) = theorem1_equality_sides(spec)?;
    let lhs = lhs.expect_finite("thm1 verification")?;
    let rhs = rhs.expect_finite("thm1 verification")?;
    let io_err = |e: String| Error::Internal(e);
    write_json(&out.join("T.json"), &MatrixFile::from_stochastic(&t)).map_err(io_err)?;
    write_json(&out.join("p.json"), &MatrixFile::from_prob(&p)).map_err(io_err)?;
    write_json(&out.join("q.json"), &MatrixFile::from_prob(&q)).map_err(io_err)?;
    write_json(
        &out.join("verification.json"),
        &json!({
            "statement": "H(Tp||Tq) = H(p||q)",
            "lhs": lhs,
            "rhs": rhs,
            "gap": (lhs - rhs).abs(),
        }),
    )
    .map_err(io_err)
}

fn write_thm2(out: &Path, spec: &Theorem2Spec) -> Result<(), Error> {
    let (t, a, b) = construct_theorem2(spec)?;
    let p = ProbVector::uniform(spec.total_dim());
    let (lhs, rhs) = theorem2_equality_sides(spec, &p)?;
    let lhs = lhs.expect_finite("thm2 verification")?;
    let rhs = rhs.expect_finite("thm2 verification")?;
    let io_err = |e: String| Error::Internal(e);
    write_json(&out.join("T.json"), &MatrixFile::from_stochastic(&t)).map_err(io_err)?;
    write_json(&out.join("A.json"), &MatrixFile::from_stochastic(&a)).map_err(io_err)?;
    write_json(&out.join("B.json"), &MatrixFile::from_stochastic(&b)).map_err(io_err)?;
    write_json(
        &out.join("verification.json"),
        &json!({
            "statement": "H_p(TA||TB) = H_p(A||B), p uniform",
            "lhs": lhs,
            "rhs": rhs,
            "gap": (lhs - rhs).abs(),
        }),
    )
    .map_err(io_err)
}

fn cmd_construct(which: ConstructKind, spec_path: &Path, out: &Path) -> ExitCode {
    if let Err(e) = std::fs::create_dir_all(out) {
        return fail_parse(format!("cannot create {}: {e}", out.display()));
    }
    let result: Result<Result<(), Error>, String> = match which {
        ConstructKind::Thm1 => {
            read_json::<Thm1SpecFile>(spec_path).map(|f| f.to_spec().and_then(|s| write_thm1(out, &s)))
        }
        ConstructKind::Thm2 => {
            read_json::<Thm2SpecFile>(spec_path).map(|f| f.to_spec().and_then(|s| write_thm2(out, &s)))
        }
        ConstructKind::Additivity => read_json::<AdditivitySpecFile>(spec_path).map(|f| {
            f.to_parts().and_then(|(xl, pi_l, yr, pi_r)| {
                let (x, y) = construct_additivity(&xl, &pi_l, &yr, &pi_r)?;
                let xy = x.matmul(&y)?;
                let lhs = stochent::entropy::matrix_entropy(&xy);
                let rhs =
                    stochent::entropy::matrix_entropy(&x) + stochent::entropy::matrix_entropy(&y);
                let io_err = |e: String| Error::Internal(e);
                write_json(&out.join("X.json"), &MatrixFile::from_stochastic(&x)).map_err(io_err)?;
                write_json(&out.join("Y.json"), &MatrixFile::from_stochastic(&y)).map_err(io_err)?;
                write_json(
                    &out.join("verification.json"),
                    &json!({
                        "statement": "H(XY) = H(X) + H(Y)",
                        "lhs": lhs,
                        "rhs": rhs,
                        "gap": (lhs - rhs).abs(),
                    }),
                )
                .map_err(io_err)
            })
        }),
        ConstructKind::Strong => read_json::<StrongSpecFile>(spec_path).map(|f| {
            f.to_blocks().and_then(|blocks| {
                let (x, y, z) = construct_strong_additivity(&blocks)?;
                let xy = x.matmul(&y)?;
                let yz = y.matmul(&z)?;
                let xyz = x.matmul(&yz)?;
                let me = stochent::entropy::matrix_entropy::<f64>;
                let lhs = me(&xyz) + me(&y);
                let rhs = me(&xy) + me(&yz);
                let io_err = |e: String| Error::Internal(e);
                write_json(&out.join("X.json"), &MatrixFile::from_stochastic(&x)).map_err(io_err)?;
                write_json(&out.join("Y.json"), &MatrixFile::from_stochastic(&y)).map_err(io_err)?;
                write_json(&out.join("Z.json"), &MatrixFile::from_stochastic(&z)).map_err(io_err)?;
                write_json(
                    &out.join("verification.json"),
                    &json!({
                        "statement": "H(XYZ) + H(Y) = H(XY) + H(YZ)",
                        "lhs": lhs,
                        "rhs": rhs,
                        "gap": (lhs - rhs).abs(),
                    }),
                )
                .map_err(io_err)
            })
        }),
    };
    match result {
        Err(e) => fail_parse(e),
        Ok(Err(e)) => fail_domain(e),
        Ok(Ok(())) => ExitCode::SUCCESS,
    }
}

fn cmd_birkhoff(input: &Path) -> ExitCode {
    let mf: MatrixFile = match read_json(input) {
        Ok(v) => v,
        Err(e) => return fail_parse(e),
    };
    let result = mf.to_stochastic().and_then(|b| birkhoff_decompose(&b));
    match result {
        Ok(d) => {
            let terms: Vec<_> = d
                .terms
                .iter()
                .map(|(w, perm)| json!({"weight": w, "perm": perm}))
                .collect();
            println!("{}", serde_json::to_string_pretty(&terms).unwrap());
            ExitCode::SUCCESS
        }
        Err(e) => fail_domain(e),
    }
}

fn cmd_kraus_matrix(input: &Path, out: &Option<PathBuf>) -> ExitCode {
    let cf: ChannelFile = match read_json(input) {
        Ok(v) => v,
        Err(e) => return fail_parse(e),
    };
    match cf.to_channel().and_then(|ch| kraus_matrix(&ch)) {
        Ok(b) => {
            let mf = MatrixFile::from_stochastic(&b);
            match out {
                Some(path) => {
                    if let Err(e) = write_json(path, &mf) {
                        return fail_parse(e);
                    }
                }
                None => println!("{}", serde_json::to_string_pretty(&mf).unwrap()),
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail_domain(e),
    }
}

fn cmd_fuzz(
    trials: usize,
    dims: &[usize],
    kraus_counts: &[usize],
    seed: u64,
    out: &Option<PathBuf>,
) -> ExitCode {
    let report = match fuzz_conjecture(trials, dims, kraus_counts, seed) {
        Ok(r) => r,
        Err(e) => return fail_domain(e),
    };
    println!(
        "conjecture: {} findings, max gap {:.3e}",
        report.violations.len(),
        report.max_gap_observed
    );
    if let Some(path) = out {
        if let Err(e) = write_json(path, &report) {
            return fail_parse(e);
        }
    } else {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    }
    // Findings are discoveries, not failures.
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Entropy {
            kind,
            input,
            weights,
        } => cmd_entropy(*kind, input, weights),
        Command::RelEntropy { kind, a, b, weights } => cmd_rel_entropy(*kind, a, b, weights),
        Command::Check {
            suite,
            trials,
            dims,
            seed,
            out,
        } => cmd_check(suite, *trials, dims, *seed, out),
        Command::Construct { which, spec, out } => cmd_construct(*which, spec, out),
        Command::Birkhoff { input } => cmd_birkhoff(input),
        Command::KrausMatrix { input, out } => cmd_kraus_matrix(input, out),
        Command::Fuzz {
            trials,
            dims,
            kraus_counts,
            seed,
            out,
        } => cmd_fuzz(*trials, dims, kraus_counts, *seed, out),
    }
}
