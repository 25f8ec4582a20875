//! `hsk` command-line front end.
//!
//! Exit codes: 0 kernel emitted (or plain success), 10 decided yes,
//! 20 decided no, 1 usage or format error, 2 internal consistency error.

mod format;
mod report;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use format::{parse_instance, write_instance};
pub use report::KernelReport;

use crate::crown::validate_hs_crown;
use crate::error::{Error, Result};
use crate::hypergraph::Instance;
use crate::lp::build_shs_lp;
use crate::oracle::{derive_seed, generate, generate_crown_rich, CrownRichSpec, GenSpec, Oracle};
use crate::reductions::{kernel_bound, reduce_with, Reduced, Rule, StepEvent, Verdict};

pub const EXIT_KERNEL: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_YES: i32 = 10;
pub const EXIT_NO: i32 = 20;

#[derive(Debug, Parser)]
#[command(name = "hsk", version, about = "Kernelizer and exact solver for d-Hitting Set")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduce an instance to a kernel or decide it.
    Kernelize {
        /// Instance file, or `-` for stdin.
        #[arg(default_value = "-")]
        file: PathBuf,
        /// Override the budget from the file header.
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
        /// Print every rule application (and applied crowns) to stderr.
        #[arg(long)]
        trace: bool,
        /// Write a JSON run report to this path.
        #[arg(long)]
        report_json: Option<PathBuf>,
        /// Print every LP the crown rule solves to stderr.
        #[arg(long)]
        dump_lp: bool,
    },
    /// Decide an instance exactly with the brute-force solver.
    Solve {
        #[arg(default_value = "-")]
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
    },
    /// Generate a seeded random instance.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: i64,
        /// Plant a hitting set of this size.
        #[arg(long)]
        plant: Option<usize>,
    },
    /// Differential check of the kernelizer against the exact solver.
    Verify {
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        kmax: i64,
        /// Which instance family the trials draw from.
        #[arg(long, value_enum, default_value_t = Family::Mixed)]
        family: Family,
    },
}

/// Instance families for `verify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Uniform random edges, half of them with a planted solution.
    Uniform,
    /// Petal-and-template instances that survive to the LP crown rule.
    Crown,
    /// Even trials uniform, odd trials crown.
    Mixed,
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_KERNEL };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Kernelize {
            file,
            k,
            trace,
            report_json,
            dump_lp,
        } => kernelize(&file, k, trace, report_json.as_deref(), dump_lp, stdin, stdout, stderr),
        Command::Solve { file, k } => solve(&file, k, stdin, stdout),
        Command::Gen {
            seed,
            n,
            m,
            d,
            k,
            plant,
        } => gen(
            GenSpec {
                seed,
                n,
                m,
                d,
                k,
                planted: plant,
            },
            stdout,
        ),
        Command::Verify {
            trials,
            seed,
            n,
            d,
            kmax,
            family,
        } => verify(trials, seed, n, d, kmax, family, stdout, stderr),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code_for(&e)
        }
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Internal(_) | Error::InvalidCrown(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

fn read_input(file: &Path, stdin: &mut dyn Read) -> Result<Instance> {
    let text = if file.as_os_str() == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(file)?
    };
    parse_instance(&text)
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Undecided => EXIT_KERNEL,
        Verdict::Yes => EXIT_YES,
        Verdict::No => EXIT_NO,
    }
}

#[allow(clippy::too_many_arguments)]
fn kernelize(
    file: &Path,
    k_override: Option<i64>,
    trace: bool,
    report_json: Option<&Path>,
    dump_lp: bool,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32> {
    let original = read_input(file, stdin)?;
    let input = match k_override {
        Some(k) => original.clone().with_k(k),
        None => original.clone(),
    };
    let start = Instant::now();
    let mut log = String::new();
    let reduced = reduce_with(input, |ev: &StepEvent<'_>| {
        if trace {
            log.push_str(&format!("{}\n", ev.step));
            if let Some(c) = &ev.step.crown {
                log.push_str(&format!("  crown {}\n", c.render(ev.before)));
            }
        }
        if dump_lp && ev.step.rule == Rule::LpCrown {
            log.push_str(&build_shs_lp(ev.before.graph()).listing());
            if let Some(lp) = &ev.step.lp {
                let values: Vec<String> = lp.values.iter().enumerate().map(|(v, x)| format!("x{v}={x}")).collect();
                log.push_str(&format!("optimum {}: {}\n", lp.objective, values.join(" ")));
            }
        }
    })?;
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    stderr.write_all(log.as_bytes())?;

    if let Some(path) = report_json {
        let report = KernelReport::new(&original, k_override, &reduced, elapsed);
        let json = serde_json::to_string(&report).map_err(|e| Error::Internal(e.to_string()))?;
        std::fs::write(path, json + "\n")?;
    }
    match reduced.trace.verdict {
        Verdict::Undecided => stdout.write_all(write_instance(&reduced.instance).as_bytes())?,
        Verdict::Yes => writeln!(stderr, "verdict: yes")?,
        Verdict::No => writeln!(stderr, "verdict: no")?,
    }
    Ok(verdict_code(reduced.trace.verdict))
}

fn solve(file: &Path, k_override: Option<i64>, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<i32> {
    let mut inst = read_input(file, stdin)?;
    if let Some(k) = k_override {
        inst = inst.with_k(k);
    }
    let oracle = Oracle::from_env();
    let best = oracle.min_hitting_set(&inst)?;
    let yes = matches!(&best, Some(s) if (s.len() as i64) <= inst.k());
    writeln!(stdout, "answer: {}", if yes { "yes" } else { "no" })?;
    match best {
        Some(s) => {
            writeln!(stdout, "minimum: {}", s.len())?;
            let names: Vec<&str> = s.iter().map(|&v| inst.label(v)).collect();
            writeln!(stdout, "witness: {}", names.join(" "))?;
        }
        None => writeln!(stdout, "minimum: unhittable")?,
    }
    Ok(if yes { EXIT_YES } else { EXIT_NO })
}

fn gen(spec: GenSpec, stdout: &mut dyn Write) -> Result<i32> {
    let inst = generate(&spec)?;
    stdout.write_all(write_instance(&inst).as_bytes())?;
    Ok(EXIT_KERNEL)
}

/// Number of distinct edges with sizes in `2..=d` over `n` vertices that
/// meet a planted set of size `planted`.
fn distinct_edge_count(n: usize, d: usize, planted: usize) -> u128 {
    fn binom(n: usize, r: usize) -> u128 {
        if r > n {
            return 0;
        }
        (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
    }
    (2..=d.min(n)).map(|s| binom(n, s) - binom(n - planted, s)).sum()
}

/// Largest kernel bound a crown trial may need to exceed; beyond it the exact
/// LP gets slow.
const CROWN_TRIAL_MAX_BOUND: u128 = 80;

/// Generator parameters of one verification trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrialSpec {
    Uniform(GenSpec),
    Crown(CrownRichSpec),
}

impl TrialSpec {
    pub fn generate(&self) -> Result<Instance> {
        match self {
            TrialSpec::Uniform(spec) => generate(spec),
            TrialSpec::Crown(spec) => generate_crown_rich(spec),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            TrialSpec::Uniform(spec) => spec.n,
            TrialSpec::Crown(spec) => spec.n,
        }
    }
}

/// The uniform generator parameters of verification trial `index`.
pub fn trial_spec(base_seed: u64, index: u64, n: usize, d: usize, kmax: i64) -> GenSpec {
    let seed = derive_seed(base_seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=kmax.max(1));
    let planted = rng.gen_bool(0.5).then_some((k as usize).min(n));
    let capacity = distinct_edge_count(n, d, planted.unwrap_or(n)) / 2;
    let hi = (2 * n).min(40).min(capacity.min(usize::MAX as u128) as usize).max(1);
    let lo = (n / 2).clamp(1, hi);
    let m = rng.gen_range(lo..=hi);
    GenSpec {
        seed,
        n,
        m,
        d,
        k,
        planted,
    }
}

/// Crown-family parameters of trial `index`, or `None` when no `k` in
/// `2..=kmax` keeps the kernel bound small. The vertex count sits just above
/// the bound (and at least `n`) so the LP rule gets its turn.
pub fn crown_trial_spec(base_seed: u64, index: u64, n: usize, d: usize, kmax: i64) -> Option<CrownRichSpec> {
    let seed = derive_seed(base_seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = (2..=kmax)
        .take_while(|&k| kernel_bound(d, k) <= CROWN_TRIAL_MAX_BOUND)
        .last()?;
    let k = rng.gen_range(2..=top);
    let above = kernel_bound(d, k) as usize + 1 + rng.gen_range(0..8);
    Some(CrownRichSpec {
        seed,
        n: above.max(n).max(2 * d + 2),
        d,
        k,
    })
}

pub fn family_trial_spec(family: Family, base_seed: u64, index: u64, n: usize, d: usize, kmax: i64) -> TrialSpec {
    let crown = match family {
        Family::Uniform => false,
        Family::Crown => true,
        Family::Mixed => index % 2 == 1,
    };
    crown
        .then(|| crown_trial_spec(base_seed, index, n, d, kmax))
        .flatten()
        .map(TrialSpec::Crown)
        .unwrap_or_else(|| TrialSpec::Uniform(trial_spec(base_seed, index, n, d, kmax)))
}

/// Outcome of one differential trial.
#[derive(Clone, Debug)]
pub struct TrialResult {
    pub spec: TrialSpec,
    pub expected: bool,
    pub kernelized: bool,
    pub verdict: Verdict,
    pub crowns: usize,
    pub crown_failures: Vec<String>,
    pub trace: Vec<String>,
}

impl TrialResult {
    pub fn agrees(&self) -> bool {
        self.expected == self.kernelized && self.crown_failures.is_empty()
    }
}

/// Kernelizes a generated instance and compares the outcome with the oracle,
/// validating every crown the LP rule applies.
///
/// Crown trials lift the oracle ceiling to their own vertex count: the
/// branching solver's cost is governed by `k`, not `n`.
pub fn run_trial(spec: TrialSpec, oracle: Oracle) -> Result<TrialResult> {
    let inst = spec.generate()?;
    let oracle = match spec {
        TrialSpec::Crown(c) => Oracle::new(oracle.ceiling.max(c.n)),
        TrialSpec::Uniform(_) => oracle,
    };
    let expected = oracle.decide(&inst)?;
    let mut crowns = 0;
    let mut crown_failures = Vec::new();
    let reduced: Reduced = reduce_with(inst, |ev| {
        if let Some(c) = &ev.step.crown {
            crowns += 1;
            let v = validate_hs_crown(ev.before.graph(), c);
            if !v.is_valid() || !v.strict || c.independent.is_empty() {
                crown_failures.push(format!("crown {} rejected: {v}", c.render(ev.before)));
            }
        }
    })?;
    let kernelized = match reduced.trace.verdict {
        Verdict::Yes => true,
        Verdict::No => false,
        Verdict::Undecided => oracle.decide(&reduced.instance)?,
    };
    Ok(TrialResult {
        spec,
        expected,
        kernelized,
        verdict: reduced.trace.verdict,
        crowns,
        crown_failures,
        trace: reduced.trace.steps.iter().map(|s| s.to_string()).collect(),
    })
}

#[allow(clippy::too_many_arguments)]
fn verify(
    trials: usize,
    seed: u64,
    n: usize,
    d: usize,
    kmax: i64,
    family: Family,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32> {
    let oracle = Oracle::from_env();
    let results: Vec<TrialResult> = (0..trials as u64)
        .into_par_iter()
        .map(|i| run_trial(family_trial_spec(family, seed, i, n, d, kmax), oracle))
        .collect::<Result<_>>()?;
    let agree = results.iter().filter(|r| r.agrees()).count();
    let crowns: usize = results.iter().map(|r| r.crowns).sum();
    for r in results.iter().filter(|r| !r.agrees()) {
        writeln!(
            stderr,
            "DISAGREEMENT {:?}: oracle={} kernelizer={} ({:?})",
            r.spec, r.expected, r.kernelized, r.verdict
        )?;
        for f in &r.crown_failures {
            writeln!(stderr, "  {f}")?;
        }
        for line in &r.trace {
            writeln!(stderr, "  {line}")?;
        }
    }
    writeln!(stdout, "{agree}/{trials} agree")?;
    writeln!(stdout, "LP crowns applied: {crowns}")?;
    Ok(if agree == trials { EXIT_KERNEL } else { EXIT_INTERNAL })
}
