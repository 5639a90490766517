//! Command-line front end.
//!
//! Exit codes: 0 ok, 2 parse or input error, 3 verification failure,
//! 4 resource guard or search limit, 5 internal invariant violation.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::astar;
use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix};
use crate::oracle::{all_branches, dense};
use crate::schedule::{check_layers, compile, emit_fanout_variant, MeasurementSchedule};
use crate::synthesis::{measurement_cost, synthesis_defects, synthesize, Gate, GateSequence};
use crate::tableau::{random_clifford, CliffordTableau};

pub const DEFAULT_SEED: u64 = 0;
/// Largest register for which `simulate-schedule` enumerates every branch.
pub const SIMULATE_MAX_QUBITS: usize = 3;

#[derive(Parser, Debug)]
#[command(
    name = "pbcsynth",
    version,
    about = "Clifford synthesis into two layers of joint Pauli measurements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Synthesize a tableau (or symplectic matrix) into two commuting layers.
    Synth {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write the measurement schedule.
        #[arg(long)]
        schedule: Option<PathBuf>,
        /// Also write the entangler-based listing.
        #[arg(long)]
        fanout: Option<PathBuf>,
    },
    /// Minimum-measurement synthesis by A* search.
    Optimal {
        #[arg(long = "in", required_unless_present = "explore_exceptional")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        max_cost: usize,
        #[arg(long, default_value_t = astar::DEFAULT_MAX_QUBITS)]
        max_qubits: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Compare optimal cost with `res` over every element of Sp(2n, F2).
        #[arg(long)]
        explore_exceptional: bool,
        /// Qubit count for `--explore-exceptional`.
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Check a gate sequence against a target tableau.
    Verify {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Print `res(M) = rank(M + I)` of a symplectic matrix.
    Res {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Print a seeded random Clifford tableau.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Synthesize and compile `count` random Cliffords and write one record each.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        report: PathBuf,
        /// Include wall-clock times, which makes the report non-reproducible.
        #[arg(long)]
        timing: bool,
    },
    /// Run every outcome branch of a schedule and compare with a target.
    SimulateSchedule {
        #[arg(long)]
        schedule: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::Dimension(_)
        | Error::Singular
        | Error::NotSymplectic
        | Error::NotInvolution
        | Error::ZeroQubits
        | Error::InvalidPauli(_)
        | Error::NotPauli
        | Error::InvalidGate(_) => 2,
        Error::Verification(_) | Error::ImpossibleOutcome | Error::Branch(_) => 3,
        Error::Guard { .. } | Error::SearchExhausted { .. } => 4,
        Error::Internal(_) => 5,
    }
}

/// I/O failures are reported as input errors.
fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("{}: {e}", path.display()),
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Internal(format!("{}: {e}", path.display())))
}

/// Accepts the tableau format or, when the header has two numbers, a symplectic matrix.
pub fn read_tableau(path: &Path) -> Result<CliffordTableau> {
    let text = read(path)?;
    let header = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    if header.split_whitespace().count() == 2 {
        let m: BitMatrix = text.parse()?;
        CliffordTableau::from_symplectic(&m)
    } else {
        text.parse()
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return e.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn main() -> i32 {
    run(
        std::env::args_os(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    )
}

fn dispatch(cmd: Command) -> Result<String> {
    match cmd {
        Command::Synth {
            input,
            out,
            schedule,
            fanout,
        } => cmd_synth(&input, &out, schedule.as_deref(), fanout.as_deref()),
        Command::Optimal {
            input,
            max_cost,
            max_qubits,
            out,
            explore_exceptional,
            n,
        } => {
            if explore_exceptional {
                cmd_explore(n, max_qubits)
            } else {
                let input = input.expect("clap enforces --in");
                cmd_optimal(&input, max_cost, max_qubits, out.as_deref())
            }
        }
        Command::Verify { seq, target } => cmd_verify(&seq, &target),
        Command::Res { input } => cmd_res(&input),
        Command::Random { n, seed, out } => cmd_random(n, seed, out.as_deref()),
        Command::Bench {
            n,
            count,
            seed,
            report,
            timing,
        } => cmd_bench(n, count, seed, &report, timing),
        Command::SimulateSchedule { schedule, target } => cmd_simulate_schedule(&schedule, &target),
    }
}

pub fn cmd_synth(
    input: &Path,
    out: &Path,
    schedule: Option<&Path>,
    fanout: Option<&Path>,
) -> Result<String> {
    let c = read_tableau(input)?;
    let r = synthesize(&c)?;
    let defects = synthesis_defects(&r, &c);
    if !defects.is_empty() {
        return Err(Error::Verification(defects.join("; ")));
    }
    let seq = r.to_sequence().to_string();
    let back: GateSequence = seq.parse()?;
    if back.realize()? != c {
        return Err(Error::Internal(
            "sequence text does not reproduce the target".into(),
        ));
    }
    let sched = match schedule {
        Some(_) => {
            let s = compile(&r, &c)?;
            let report = check_layers(&s);
            if !report.passed() {
                return Err(Error::Verification(report.to_string()));
            }
            Some(s.to_string())
        }
        None => None,
    };
    let fan = match fanout {
        Some(_) => Some(emit_fanout_variant(&r, &c)?.to_string()),
        None => None,
    };
    write(out, &seq)?;
    if let (Some(p), Some(t)) = (schedule, sched) {
        write(p, &t)?;
    }
    if let (Some(p), Some(t)) = (fanout, fan) {
        write(p, &t)?;
    }
    Ok(format!(
        "{} gates, {} measurements ({} + {})\n",
        r.s1.len() + r.s2.len(),
        r.total_cost(),
        r.s1.iter().map(measurement_cost).sum::<usize>(),
        r.s2.iter().map(measurement_cost).sum::<usize>()
    ))
}

pub fn cmd_optimal(
    input: &Path,
    max_cost: usize,
    max_qubits: usize,
    out: Option<&Path>,
) -> Result<String> {
    let c = read_tableau(input)?;
    let r = astar::optimal_synthesize_guarded(&c, max_cost, max_qubits)?;
    let seq = GateSequence {
        n: c.n(),
        layers: vec![r.gates.clone()],
        correction: r.correction.clone(),
    };
    if seq.realize()? != c {
        return Err(Error::Verification(
            "optimal sequence does not reproduce the target".into(),
        ));
    }
    let text = seq.to_string();
    match out {
        Some(p) => {
            write(p, &text)?;
            Ok(format!("cost {} ({} nodes expanded)\n", r.cost, r.expanded))
        }
        None => Ok(text),
    }
}

fn cmd_explore(n: usize, max_qubits: usize) -> Result<String> {
    let limit = max_qubits.min(astar::BFS_MAX_QUBITS);
    if n == 0 || n > limit {
        return Err(Error::Guard {
            what: "exceptional exploration",
            n,
            limit,
        });
    }
    let report = astar::explore_exceptional(n)?;
    let mut s = format!("elements {}\nres cost count\n", report.total);
    for ((r, c), k) in &report.histogram {
        let _ = writeln!(s, "{r} {c} {k}");
    }
    let _ = writeln!(s, "exceptional {}", report.exceptional.len());
    for m in &report.exceptional {
        s.push_str(&m.to_text());
    }
    Ok(s)
}

pub fn cmd_verify(seq: &Path, target: &Path) -> Result<String> {
    let s: GateSequence = read(seq)?.parse()?;
    let c = read_tableau(target)?;
    if s.n != c.n() {
        return Err(Error::Verification(format!(
            "sequence on {} qubits, target on {}",
            s.n,
            c.n()
        )));
    }
    if s.layers.len() == 2 {
        let r = s.clone().into_result().expect("two layers");
        let defects = synthesis_defects(&r, &c);
        if !defects.is_empty() {
            return Err(Error::Verification(defects.join("; ")));
        }
    } else if s.realize()? != c {
        return Err(Error::Verification(
            "sequence does not realize the target".into(),
        ));
    }
    Ok("ok\n".into())
}

pub fn cmd_res(input: &Path) -> Result<String> {
    let m: BitMatrix = read(input)?.parse()?;
    Ok(format!("{}\n", gf2::res(&m)?))
}

pub fn cmd_random(n: usize, seed: u64, out: Option<&Path>) -> Result<String> {
    let text = random_clifford(n, seed)?.to_text();
    match out {
        Some(p) => {
            write(p, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRecord {
    pub n: usize,
    pub seed: u64,
    pub s_gates: usize,
    pub cz_gates: usize,
    pub measurements: usize,
    pub layer_sizes: [usize; 2],
    pub res: usize,
    pub micros: u128,
}

impl BenchRecord {
    pub const HEADER: &'static str =
        "n\tseed\ts_gates\tcz_gates\tmeasurements\tlayer1\tlayer2\tres";

    fn line(&self, timing: bool) -> String {
        let mut s = format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.n,
            self.seed,
            self.s_gates,
            self.cz_gates,
            self.measurements,
            self.layer_sizes[0],
            self.layer_sizes[1],
            self.res
        );
        if timing {
            let _ = write!(s, "\t{}", self.micros);
        }
        s
    }
}

/// Per-instance seeds drawn from a stream keyed by the master seed.
pub fn instance_seeds(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.next_u64()).collect()
}

pub fn bench_instance(n: usize, seed: u64) -> Result<BenchRecord> {
    let start = Instant::now();
    let c = random_clifford(n, seed)?;
    let r = synthesize(&c)?;
    let s = compile(&r, &c)?;
    let layer_sizes = [s.layer(1).len(), s.layer(2).len()];
    let micros = start.elapsed().as_micros();
    let s_gates = r.gates().filter(|g| matches!(g, Gate::GenS(_))).count();
    let record = BenchRecord {
        n,
        seed,
        s_gates,
        cz_gates: r.s1.len() + r.s2.len() - s_gates,
        measurements: s.measurements.len(),
        layer_sizes,
        res: gf2::res(&c.to_symplectic())?,
        micros,
    };
    if record.measurements > 2 * n || layer_sizes.iter().any(|&l| l > n) {
        return Err(Error::Verification(format!(
            "bound exceeded for seed {seed}"
        )));
    }
    Ok(record)
}

pub fn bench_report(n: usize, count: usize, seed: u64, timing: bool) -> Result<String> {
    let records = instance_seeds(seed, count)
        .into_par_iter()
        .map(|s| bench_instance(n, s))
        .collect::<Result<Vec<_>>>()?;
    let mut out = String::from(BenchRecord::HEADER);
    if timing {
        out.push_str("\tmicros");
    }
    out.push('\n');
    for r in &records {
        out.push_str(&r.line(timing));
        out.push('\n');
    }
    let total: usize = records.iter().map(|r| r.measurements).sum();
    let max = records.iter().map(|r| r.measurements).max().unwrap_or(0);
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for r in &records {
        for &l in &r.layer_sizes {
            *hist.entry(l).or_default() += 1;
        }
    }
    let _ = writeln!(out, "# count {}", records.len());
    let _ = writeln!(out, "# max_measurements {max}");
    let _ = writeln!(
        out,
        "# mean_measurements {:.3}",
        if records.is_empty() {
            0.0
        } else {
            total as f64 / records.len() as f64
        }
    );
    let hist: Vec<String> = hist.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    let _ = writeln!(out, "# layer_size_histogram {}", hist.join(" "));
    Ok(out)
}

pub fn cmd_bench(n: usize, count: usize, seed: u64, report: &Path, timing: bool) -> Result<String> {
    let text = bench_report(n, count, seed, timing)?;
    write(report, &text)?;
    let summary: Vec<&str> = text.lines().filter(|l| l.starts_with('#')).collect();
    Ok(summary.join("\n") + "\n")
}

pub fn cmd_simulate_schedule(schedule: &Path, target: &Path) -> Result<String> {
    let s: MeasurementSchedule = read(schedule)?.parse()?;
    let c = read_tableau(target)?;
    if s.n_data != c.n() {
        return Err(Error::Verification(format!(
            "schedule on {} data qubits, target on {}",
            s.n_data,
            c.n()
        )));
    }
    if s.n_data > SIMULATE_MAX_QUBITS {
        return Err(Error::Guard {
            what: "branch simulation",
            n: s.n_data,
            limit: SIMULATE_MAX_QUBITS,
        });
    }
    let report = check_layers(&s);
    if !report.passed() {
        return Err(Error::Verification(report.to_string()));
    }
    let branches = all_branches(&s)?;
    for (outcomes, u) in &branches {
        if *u != c {
            return Err(Error::Verification(format!(
                "branch {outcomes} yields a different Clifford"
            )));
        }
    }
    if c.n() <= dense::MAX_QUBITS {
        let d = dense::dense_of_tableau(&branches[0].1)?;
        if !d.equal_up_to_phase(&dense::dense_of_tableau(&c)?, dense::TOLERANCE) {
            return Err(Error::Internal("dense reconstruction disagrees".into()));
        }
    }
    Ok(format!("{} branches ok\n", branches.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("pbcsynth").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn synth_identity_and_s() {
        let d = tempdir().unwrap();
        let p = |s: &str| d.path().join(s).to_str().unwrap().to_string();
        fs::write(p("id"), "2\n+ZI\n+IZ\n+XI\n+IX\n").unwrap();
        let (code, _, _) = call(&["synth", "--in", &p("id"), "--out", &p("id.seq")]);
        assert_eq!(code, 0);
        assert_eq!(fs::read_to_string(p("id.seq")).unwrap(), "2\n---\nP +II\n");
        fs::write(p("s"), "1\n+Z\n+Y\n").unwrap();
        let (code, _, _) = call(&[
            "synth",
            "--in",
            &p("s"),
            "--out",
            &p("s.seq"),
            "--schedule",
            &p("s.sch"),
        ]);
        assert_eq!(code, 0);
        let seq = fs::read_to_string(p("s.seq")).unwrap();
        assert_eq!(seq.lines().filter(|l| l.starts_with("S ")).count(), 1);
        let (code, out, _) = call(&[
            "simulate-schedule",
            "--schedule",
            &p("s.sch"),
            "--target",
            &p("s"),
        ]);
        assert_eq!((code, out.as_str()), (0, "4 branches ok\n"));
        let (code, _, _) = call(&["verify", "--seq", &p("s.seq"), "--target", &p("s")]);
        assert_eq!(code, 0);
        let tampered = if seq.ends_with("P +X\n") {
            "P +Y\n"
        } else {
            "P +X\n"
        };
        let bad = seq
            .lines()
            .filter(|l| !l.starts_with("P "))
            .collect::<Vec<_>>()
            .join("\n")
            + "\n"
            + tampered;
        fs::write(p("bad.seq"), bad).unwrap();
        assert_eq!(
            call(&["verify", "--seq", &p("bad.seq"), "--target", &p("s")]).0,
            3
        );
        fs::write(p("junk"), "1\n+Q\n").unwrap();
        assert_eq!(call(&["synth", "--in", &p("junk"), "--out", &p("x")]).0, 2);
        assert!(!d.path().join("x").exists());
    }

    #[test]
    fn res_and_optimal() {
        let d = tempdir().unwrap();
        let p = |s: &str| d.path().join(s).to_str().unwrap().to_string();
        fs::write(p("cz"), "4 4\n1001\n0110\n0010\n0001\n").unwrap();
        assert_eq!(
            call(&["res", "--in", &p("cz")]),
            (0, "2\n".into(), String::new())
        );
        fs::write(p("s"), "1\n+Z\n+Y\n").unwrap();
        let (code, out, _) = call(&["optimal", "--in", &p("s"), "--max-cost", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().filter(|l| l.starts_with("S ")).count(), 1);
        fs::write(p("id"), "1\n+Z\n+X\n").unwrap();
        assert_eq!(
            call(&["optimal", "--in", &p("id"), "--max-cost", "4"]).1,
            "1\nP +I\n"
        );
        let (_, big, _) = call(&["random", "--n", "4", "--seed", "3"]);
        fs::write(p("big"), big).unwrap();
        assert_eq!(
            call(&["optimal", "--in", &p("big"), "--max-cost", "8"]).0,
            4
        );
    }

    #[test]
    fn bench_is_bounded_and_reproducible() {
        let d = tempdir().unwrap();
        let a = d.path().join("a").to_str().unwrap().to_string();
        let b = d.path().join("b").to_str().unwrap().to_string();
        for f in [&a, &b] {
            let (code, _, _) = call(&[
                "bench", "--n", "5", "--count", "100", "--seed", "9", "--report", f,
            ]);
            assert_eq!(code, 0);
        }
        let text = fs::read_to_string(&a).unwrap();
        assert_eq!(text, fs::read_to_string(&b).unwrap());
        let rows: Vec<&str> = text
            .lines()
            .skip(1)
            .filter(|l| !l.starts_with('#'))
            .collect();
        assert_eq!(rows.len(), 100);
        assert!(rows
            .iter()
            .all(|r| r.split('\t').nth(4).unwrap().parse::<usize>().unwrap() <= 10));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["bogus"]).0, 2);
        assert_eq!(exit_code(&Error::Internal(String::new())), 5);
        assert_eq!(call(&["res", "--in", "/nonexistent/file"]).0, 2);
    }
}
