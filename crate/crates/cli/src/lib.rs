//! Command implementations behind the `adequacy` binary.
//!
//! Every command produces a [`Report`] whose JSON rendering is canonical:
//! object keys are sorted and nothing run-dependent is included unless
//! `--timing` is given.

use std::path::Path;
use std::time::Instant;

use adequacy_core::ffalg::{LocalRing, Poly, Ring, TruncatedLocalRing};
use adequacy_core::grouprep::{AdequacyReport, DEFAULT_CAP};
use adequacy_core::io::{local_poly_coords, parse_corpus, CorpusEntry, GroupInput, ScenarioInput};
use adequacy_core::levelmod::{run_samples, NilpotentType};
use adequacy_core::weylhecke::{
    apply_projector, eigenline_table, minimal_double_coset_reps, pj_integer, pj_polynomial, spherical_projector,
    Composition, PjMode, TwoPartComposition,
};
use adequacy_core::{corpus, Error, GaloisField, Mode};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const DEFAULT_SEED: u64 = 1;

pub mod exit {
    pub const OK: i32 = 0;
    /// Sweep expectation mismatch, implication violation or failed check.
    pub const CHECK_FAILED: i32 = 1;
    pub const INVALID: i32 = 2;
    pub const CLOSURE_OVERFLOW: i32 = 3;
}

#[derive(Debug, Parser)]
#[command(name = "adequacy", version, about = "Adequacy checks, parahoric Hecke data and level-raising pairs")]
pub struct Cli {
    /// Emit JSON (the only output format).
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Maximum group order during closure.
    #[arg(long, global = true, env = "ADEQUACY_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Include wall time in the report (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Big,
    Adequate,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check one group: a built-in name or a path to a group JSON file.
    Adequacy {
        group: String,
        #[arg(long, value_enum, default_value = "adequate")]
        mode: ModeArg,
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        require_semisimple: bool,
    },
    /// Check every entry of a corpus: `builtin`, `appendix` or a path.
    Sweep {
        #[arg(default_value = "builtin")]
        corpus: String,
    },
    /// Minimal double coset representatives in W_Q \ S_n / W_P.
    Cosets {
        #[arg(long)]
        n: usize,
        #[arg(long = "Q", value_delimiter = ',')]
        q: Vec<usize>,
        /// `n1,n2`
        #[arg(long = "P", value_delimiter = ',')]
        p: Vec<usize>,
    },
    /// The polynomial P_j; coefficients of P are given highest degree first.
    Pj {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        poly: Vec<i64>,
        #[arg(long)]
        n2: usize,
        #[arg(long)]
        j: usize,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        q: i64,
        /// Roots of P; selects the split mode.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        roots: Option<Vec<i64>>,
        /// Work over W(GF(l^m))/l^N instead of the integers.
        #[arg(long)]
        l: Option<u64>,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long = "N", default_value_t = 1)]
        precision: u32,
    },
    /// Eigenvalues of V^j on the parahoric invariants of a scenario file.
    Eigs { scenario: String },
    /// The spherical projector of a scenario file and the lines it keeps.
    Project { scenario: String },
    /// Sample pairs with Phi Sigma Phi^-1 = Sigma^q and verify their constraints.
    Levelmod {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        sigma: Vec<usize>,
        #[arg(long)]
        q: u64,
        /// Prime `l` of the field GF(l).
        #[arg(long)]
        field: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: Value,
    pub input_digest: String,
    pub payload: Value,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub status: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ClosureOverflow { .. } => exit::CLOSURE_OVERFLOW,
            _ => exit::INVALID,
        };
        CliError { code, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> CliError {
    CliError { code: exit::INVALID, message: message.into() }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Sorted-key, pretty-printed JSON followed by a newline.
pub fn render(report: &Report) -> String {
    let value = serde_json::to_value(report).expect("reports serialize");
    let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
    s.push('\n');
    s
}

fn digest(value: &Value) -> String {
    let bytes = serde_json::to_vec(value).expect("values serialize");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payloads serialize")
}

/// Runs the command on a pool of `--threads` workers.
pub fn execute(cli: &Cli) -> CliResult<Outcome> {
    match cli.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| invalid(format!("thread pool: {e}")))?;
            pool.install(|| run(cli))
        }
        None => run(cli),
    }
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let start = Instant::now();
    let (command, input, payload, status) = match &cli.command {
        Command::Adequacy { group, mode, require_semisimple } => {
            cmd_adequacy(group, *mode, *require_semisimple, cli.cap)?
        }
        Command::Sweep { corpus } => cmd_sweep(corpus, cli.cap)?,
        Command::Cosets { n, q, p } => cmd_cosets(*n, q, p)?,
        Command::Pj { poly, n2, j, q, roots, l, m, precision } => {
            cmd_pj(poly, *n2, *j, *q, roots.as_deref(), *l, *m, *precision)?
        }
        Command::Eigs { scenario } => cmd_hecke("eigs", scenario, false)?,
        Command::Project { scenario } => cmd_hecke("project", scenario, true)?,
        Command::Levelmod { n, sigma, q, field, samples } => cmd_levelmod(*n, sigma, *q, *field, *samples, cli.seed)?,
    };
    let report = Report {
        command,
        input_digest: digest(&input),
        payload,
        version: env!("CARGO_PKG_VERSION").to_string(),
        wall_time_ms: cli.timing.then(|| start.elapsed().as_secs_f64() * 1000.0),
    };
    Ok(Outcome { report, status })
}

type CommandOutput = (Value, Value, Value, i32);

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> CliResult<T> {
    let text = std::fs::read_to_string(Path::new(path)).map_err(|e| invalid(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| invalid(format!("{path}: {e}")))
}

/// A built-in group name or a path to a group file.
pub fn load_group(spec: &str) -> CliResult<GroupInput> {
    match corpus::builtin(spec) {
        Ok(entry) => Ok(entry.group),
        Err(_) if Path::new(spec).exists() => read_json(spec),
        Err(_) => Err(invalid(format!("{spec} is neither a built-in group nor a readable file"))),
    }
}

pub fn load_corpus(spec: &str) -> CliResult<Vec<CorpusEntry>> {
    match spec {
        "builtin" => Ok(corpus::builtin_corpus()),
        "appendix" => Ok(corpus::appendix_corpus()),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{path}: {e}")))?;
            Ok(parse_corpus(&text)?)
        }
    }
}

fn core_mode(mode: ModeArg) -> Mode {
    match mode {
        ModeArg::Big => Mode::Big,
        ModeArg::Adequate => Mode::Adequate,
    }
}

pub fn cmd_adequacy(group: &str, mode: ModeArg, require_semisimple: bool, cap: usize) -> CliResult<CommandOutput> {
    let input = load_group(group)?;
    let built = input.build(cap)?;
    let report: AdequacyReport = built.check(core_mode(mode), require_semisimple)?;
    let command = json!({
        "name": "adequacy",
        "group": group,
        "mode": format!("{mode:?}").to_lowercase(),
        "require_semisimple": require_semisimple,
    });
    Ok((command, to_value(&input), to_value(&report), exit::OK))
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepEntry {
    pub name: String,
    pub order: usize,
    pub big: bool,
    pub adequate: bool,
    /// Adequate verdict with the semisimplicity requirement dropped.
    pub adequate_any_eigenvalue: bool,
    pub failed_big: Vec<String>,
    pub failed_adequate: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_big: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_adequate: Option<bool>,
    pub mismatch: bool,
    pub implication_violation: bool,
}

pub fn sweep_entry(entry: &CorpusEntry, cap: usize) -> CliResult<SweepEntry> {
    let g = entry.group.build(cap).map_err(|e| {
        let err = CliError::from(e);
        CliError { code: err.code, message: format!("{}: {}", entry.name, err.message) }
    })?;
    let big = g.check(Mode::Big, true)?;
    let adq = g.check(Mode::Adequate, true)?;
    let adq_any = g.check(Mode::Adequate, false)?;
    let mismatch = entry.expected_big.is_some_and(|b| b != big.verdict)
        || entry.expected_adequate.is_some_and(|a| a != adq.verdict || a != adq_any.verdict);
    let implication_violation = (big.verdict && !(adq.verdict && adq_any.verdict))
        || (entry.expected_big == Some(true) && entry.expected_adequate == Some(false));
    Ok(SweepEntry {
        name: entry.name.clone(),
        order: g.order(),
        big: big.verdict,
        adequate: adq.verdict,
        adequate_any_eigenvalue: adq_any.verdict,
        failed_big: big.failed,
        failed_adequate: adq.failed,
        expected_big: entry.expected_big,
        expected_adequate: entry.expected_adequate,
        mismatch,
        implication_violation,
    })
}

pub fn cmd_sweep(corpus_spec: &str, cap: usize) -> CliResult<CommandOutput> {
    let entries = load_corpus(corpus_spec)?;
    let results: Vec<SweepEntry> = entries.par_iter().map(|e| sweep_entry(e, cap)).collect::<CliResult<_>>()?;
    let mismatches = results.iter().filter(|r| r.mismatch).count();
    let violations = results.iter().filter(|r| r.implication_violation).count();
    let payload = json!({
        "entries": results,
        "count": results.len(),
        "mismatches": mismatches,
        "implication_violations": violations,
        "passed": mismatches == 0 && violations == 0,
    });
    let status = if mismatches + violations == 0 { exit::OK } else { exit::CHECK_FAILED };
    let command = json!({ "name": "sweep", "corpus": corpus_spec });
    Ok((command, to_value(&entries), payload, status))
}

pub fn cmd_cosets(n: usize, q: &[usize], p: &[usize]) -> CliResult<CommandOutput> {
    let q = Composition::new(q.to_vec())?;
    let p = match p {
        [n1, n2] => TwoPartComposition::new(*n1, *n2)?,
        [n2] => TwoPartComposition::new(0, *n2)?,
        _ => return Err(invalid("--P takes n1,n2")),
    };
    if q.n() != n || p.n() != n {
        return Err(invalid(format!("Q and P must both have size n = {n}")));
    }
    let reps = minimal_double_coset_reps(&q, &p)?;
    let command = json!({ "name": "cosets", "n": n, "Q": q, "P": [p.n1, p.n2] });
    let payload = json!({ "count": reps.len(), "representatives": reps });
    Ok((command.clone(), command, payload, exit::OK))
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_pj(
    poly: &[i64],
    n2: usize,
    j: usize,
    q: i64,
    roots: Option<&[i64]>,
    l: Option<u64>,
    m: usize,
    precision: u32,
) -> CliResult<CommandOutput> {
    if poly.is_empty() {
        return Err(invalid("--poly needs at least one coefficient"));
    }
    let low_first: Vec<i64> = poly.iter().rev().copied().collect();
    let mode = if roots.is_some() { "split" } else { "generic" };
    let command = json!({
        "name": "pj", "poly": poly, "n2": n2, "j": j, "q": q, "roots": roots,
        "ring": l.map(|l| json!({ "l": l, "m": m, "N": precision })),
    });
    let coeffs: Vec<Vec<i128>> = match l {
        None => {
            let p: Vec<i128> = low_first.iter().map(|&c| c as i128).collect();
            let r: Option<Vec<i128>> = roots.map(|r| r.iter().map(|&x| x as i128).collect());
            pj_integer(&p, n2, j, q as i128, r.as_deref())?.into_iter().map(|c| vec![c]).collect()
        }
        Some(l) => {
            let ring = TruncatedLocalRing::new(&GaloisField::with_degree(l, m)?, precision)?;
            let p = Poly::new(&ring, low_first.iter().map(|&c| ring.from_int(c as i128)).collect());
            if !p.is_monic(&ring) {
                return Err(invalid("P must be monic"));
            }
            let qq = ring.from_int(q as i128);
            let root_elems: Option<Vec<_>> = roots.map(|r| r.iter().map(|&x| ring.from_int(x as i128)).collect());
            let mode = match &root_elems {
                Some(r) => PjMode::Split(r),
                None => PjMode::Generic,
            };
            let pj = pj_polynomial(&p, n2, j, &qq, mode, &ring)?;
            local_poly_coords(&pj).into_iter().map(|c| c.into_iter().map(|x| x as i128).collect()).collect()
        }
    };
    let payload = json!({
        "mode": mode,
        "degree": coeffs.len() - 1,
        "coefficients": coeffs,
    });
    Ok((command.clone(), command, payload, exit::OK))
}

pub fn cmd_hecke(name: &str, path: &str, project: bool) -> CliResult<CommandOutput> {
    let input: ScenarioInput = read_json(path)?;
    let sc = input.build()?;
    let table = eigenline_table(&sc);
    let frobenius = local_poly_coords(&sc.frobenius_polynomial());
    let payload = if project {
        let proj = spherical_projector(&sc)?;
        let result = apply_projector(&table, &proj, &sc.ring);
        let k = sc.ring.residue_field();
        json!({
            "alpha_bar": k.coords(proj.alpha_bar),
            "frobenius": frobenius,
            "factors": proj.factors.iter().map(|f| json!({
                "j": f.j,
                "target": k.coords(f.target),
                "k_j": f.k_j,
                "P_j": local_poly_coords(&f.p_j),
                "Q_j": local_poly_coords(&f.q_j),
                "R_j": local_poly_coords(&f.r_j),
            })).collect::<Vec<_>>(),
            "lines": result.lines,
            "surviving": result.surviving,
            "surviving_count": result.surviving.len(),
        })
    } else {
        json!({ "frobenius": frobenius, "table": table, "line_count": table.lines.len() })
    };
    let command = json!({ "name": name, "scenario": path });
    Ok((command, to_value(&input), payload, exit::OK))
}

pub fn cmd_levelmod(n: usize, sigma: &[usize], q: u64, l: u64, samples: usize, seed: u64) -> CliResult<CommandOutput> {
    let sigma = NilpotentType::new(sigma.to_vec())?;
    if sigma.n() != n {
        return Err(invalid(format!("sigma is a partition of {}, not {n}", sigma.n())));
    }
    let field = GaloisField::prime(l)?;
    let summary = run_samples(&sigma, q, &field, samples, seed)?;
    let command =
        json!({ "name": "levelmod", "n": n, "sigma": sigma, "q": q, "field": l, "samples": samples, "seed": seed });
    let status = if summary.all_passed { exit::OK } else { exit::CHECK_FAILED };
    Ok((command.clone(), command, to_value(&summary), status))
}
