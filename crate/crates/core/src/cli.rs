//! Command-line front end. Exit codes: 0 success, 1 attack failure,
//! 2 invalid input.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::aag::{keygen, true_key, AagInstance, AagParams, Platform, PrivateKeys};
use crate::attacks::{run_attack, AttackKind, AttackReport, ObjectiveKind, Outcome};
use crate::conjugacy::{scsp_solve, scsp_star, ConjugacySystem, SolutionSet};
use crate::lab::{csv_string, run_experiment, ExperimentConfig};
use crate::raag::CommutationGraph;
use crate::stallings::SubgroupExpression;
use crate::word::{Word, WordTuple};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "gtcrypt",
    version,
    about = "Key exchange, attacks and Monte-Carlo experiments over free groups and RAAGs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a key-exchange instance and the matching private keys.
    Keygen {
        /// `free:RANK`, `path:N`, or `graph:FILE` with a `{n, edges}` graph.
        #[arg(long)]
        platform: String,
        /// JSON file with sampling ranges; defaults apply when omitted.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instance output path.
        #[arg(long)]
        out: PathBuf,
        /// Private key output path; defaults to `<out stem>.private.json`.
        #[arg(long)]
        private_out: Option<PathBuf>,
    },
    /// Attack a public instance.
    Attack {
        instance: PathBuf,
        #[arg(long, value_parser = parse_attack)]
        attack: AttackKind,
        #[arg(long, value_parser = parse_objective, default_value = "inner")]
        objective: ObjectiveKind,
        #[arg(long)]
        max_iters: Option<usize>,
        /// Private key file, read only to check the recovered key.
        #[arg(long)]
        private: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve a conjugacy system exactly, optionally inside a subgroup.
    Solve {
        /// `{pairs: [[u, v], ...]}`.
        #[arg(long)]
        system: PathBuf,
        /// Array of generator words.
        #[arg(long)]
        subgroup: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a Monte-Carlo experiment and write CSV.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Override the worker count from the configuration.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Re-run a recorded command and compare output digests.
    Replay {
        manifest: PathBuf,
        /// Write outputs here instead of the recorded paths.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn parse_attack(s: &str) -> Result<AttackKind, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

fn parse_objective(s: &str) -> Result<ObjectiveKind, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Failure(String),
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
    /// Digest with run-time measurements removed, for outputs that carry them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stable_sha256: Option<String>,
}

/// Everything needed to repeat a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config: serde_json::Value,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn digest_bytes(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn digest_file(path: &Path) -> CliResult<FileDigest> {
    let bytes = fs::read(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    Ok(FileDigest { path: path.display().to_string(), sha256: digest_bytes(&bytes), stable_sha256: None })
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

/// Parses JSON, reporting the path of the offending field on failure.
pub fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> CliResult<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::Invalid(format!("{what}: schema error at `{path}`: {}", e.into_inner()))
    })
}

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    parse_json(&read_text(path)?, &path.display().to_string())
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<FileDigest> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::Invalid(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, bytes).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    Ok(FileDigest { path: path.display().to_string(), sha256: digest_bytes(bytes), stable_sha256: None })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<FileDigest> {
    let mut text = serde_json::to_string(value).expect("serializable");
    text.push('\n');
    write_file(path, text.as_bytes())
}

fn write_manifest(out: &Path, manifest: &RunManifest) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(manifest).expect("serializable");
    text.push('\n');
    write_file(&manifest_path(out), text.as_bytes()).map(|_| ())
}

pub fn parse_platform(spec: &str) -> CliResult<Platform> {
    let (kind, arg) = spec.split_once(':').ok_or_else(|| CliError::Invalid(format!("bad platform `{spec}`")))?;
    let num = || arg.parse::<u32>().map_err(|_| CliError::Invalid(format!("bad platform size in `{spec}`")));
    match kind {
        "free" => Ok(Platform::free(num()?)?),
        "path" => Ok(Platform::path_raag(num()?)?),
        "graph" => Ok(Platform::Raag(read_json::<CommutationGraph>(Path::new(arg))?)),
        _ => Err(CliError::Invalid(format!("unknown platform kind `{kind}`"))),
    }
}

fn private_default(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "instance".into());
    out.with_file_name(format!("{stem}.private.json"))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct KeygenConfig {
    platform: Platform,
    params: AagParams,
    seed: u64,
    out: PathBuf,
    private_out: PathBuf,
}

fn do_keygen(cfg: &KeygenConfig) -> CliResult<Vec<FileDigest>> {
    let (inst, alice, bob) = keygen(&cfg.platform, &cfg.params, cfg.seed)?;
    let a = write_json(&cfg.out, &inst)?;
    let b = write_json(&cfg.private_out, &PrivateKeys { alice, bob })?;
    Ok(vec![a, b])
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct AttackConfig {
    instance: PathBuf,
    attack: AttackKind,
    objective: ObjectiveKind,
    max_iters: Option<usize>,
    private: Option<PathBuf>,
    out: PathBuf,
}

pub fn load_instance(path: &Path) -> CliResult<AagInstance> {
    let inst: AagInstance = read_json(path)?;
    inst.validate().map_err(|e| CliError::Invalid(format!("{}: schema error: {e}", path.display())))?;
    Ok(inst)
}

fn do_attack(cfg: &AttackConfig) -> CliResult<(Vec<FileDigest>, Vec<FileDigest>, Outcome)> {
    let inst = load_instance(&cfg.instance)?;
    let mut inputs = vec![digest_file(&cfg.instance)?];
    let (result, ms) = run_attack(&inst, cfg.attack, cfg.objective, cfg.max_iters)?;
    let outcome = if result.key.is_some() { Outcome::Success } else { Outcome::Failure };
    let mut verified = result.verified;
    if let (Some(p), Some(key)) = (&cfg.private, &result.key) {
        let keys: PrivateKeys = read_json(p)?;
        inputs.push(digest_file(p)?);
        verified &= true_key(&inst, &keys.alice, &keys.bob)? == *key;
    }
    let report = AttackReport {
        instance_ref: cfg.instance.display().to_string(),
        attack: cfg.attack,
        outcome,
        steps: result.steps,
        wall_time_ms: ms,
        verified,
        key: result.key,
        objective: (cfg.attack == AttackKind::Lba).then_some(cfg.objective),
    };
    let mut digest = write_json(&cfg.out, &report)?;
    let stable = AttackReport { wall_time_ms: 0.0, ..report };
    digest.stable_sha256 = Some(digest_bytes(serde_json::to_string(&stable).expect("serializable").as_bytes()));
    Ok((inputs, vec![digest], outcome))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SolveConfig {
    system: PathBuf,
    subgroup: Option<PathBuf>,
    out: PathBuf,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SolveReport {
    solution_set: SolutionSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    expression: Option<SubgroupExpression>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<Word>,
    solvable: bool,
    verified: bool,
}

fn do_solve(cfg: &SolveConfig) -> CliResult<(Vec<FileDigest>, Vec<FileDigest>)> {
    let sys: ConjugacySystem = read_json(&cfg.system)?;
    if sys.is_empty() {
        return Err(crate::Error::EmptySystem.into());
    }
    let mut inputs = vec![digest_file(&cfg.system)?];
    let solution_set = scsp_solve(&sys);
    let report = match &cfg.subgroup {
        None => {
            let x = solution_set.witness();
            let verified = x.as_ref().is_some_and(|x| sys.is_solved_by(x));
            SolveReport { solvable: x.is_some(), solution_set, expression: None, x, verified }
        }
        Some(path) => {
            let gens: WordTuple = read_json(path)?;
            inputs.push(digest_file(path)?);
            let expression = scsp_star(&sys, &gens);
            let x = expression.as_ref().map(|e| e.evaluate(&gens)).transpose()?;
            let verified = x.as_ref().is_some_and(|x| sys.is_solved_by(x));
            SolveReport { solvable: x.is_some(), solution_set, expression, x, verified }
        }
    };
    Ok((inputs, vec![write_json(&cfg.out, &report)?]))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ExperimentRun {
    config: ExperimentConfig,
    out: PathBuf,
}

fn do_experiment(run: &ExperimentRun) -> CliResult<Vec<FileDigest>> {
    let rows = run_experiment(&run.config)?;
    Ok(vec![write_file(&run.out, csv_string(&rows)?.as_bytes())?])
}

fn manifest(
    command: &str,
    config: &impl Serialize,
    seed: Option<u64>,
    inputs: Vec<FileDigest>,
    outputs: Vec<FileDigest>,
) -> RunManifest {
    RunManifest {
        command: command.to_string(),
        config: serde_json::to_value(config).expect("serializable"),
        seed,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        inputs,
        outputs,
    }
}

fn execute(command: Command) -> CliResult<i32> {
    match command {
        Command::Keygen { platform, params, seed, out, private_out } => {
            let platform = parse_platform(&platform)?;
            let mut inputs = Vec::new();
            let params = match params {
                Some(p) => {
                    inputs.push(digest_file(&p)?);
                    read_json(&p)?
                }
                None => AagParams::default(),
            };
            let private_out = private_out.unwrap_or_else(|| private_default(&out));
            let cfg = KeygenConfig { platform, params, seed, out: out.clone(), private_out };
            let outputs = do_keygen(&cfg)?;
            write_manifest(&out, &manifest("keygen", &cfg, Some(seed), inputs, outputs))?;
            Ok(EXIT_OK)
        }
        Command::Attack { instance, attack, objective, max_iters, private, out } => {
            let cfg = AttackConfig { instance, attack, objective, max_iters, private, out: out.clone() };
            let (inputs, outputs, outcome) = do_attack(&cfg)?;
            write_manifest(&out, &manifest("attack", &cfg, None, inputs, outputs))?;
            match outcome {
                Outcome::Success => Ok(EXIT_OK),
                Outcome::Failure => Err(CliError::Failure(format!("{attack} attack failed"))),
            }
        }
        Command::Solve { system, subgroup, out } => {
            let cfg = SolveConfig { system, subgroup, out: out.clone() };
            let (inputs, outputs) = do_solve(&cfg)?;
            write_manifest(&out, &manifest("solve", &cfg, None, inputs, outputs))?;
            Ok(EXIT_OK)
        }
        Command::Experiment { config, out, workers } => {
            let mut cfg: ExperimentConfig = read_json(&config)?;
            if let Some(w) = workers {
                cfg.workers = w;
            }
            let inputs = vec![digest_file(&config)?];
            let seed = cfg.seed;
            let run = ExperimentRun { config: cfg, out: out.clone() };
            let outputs = do_experiment(&run)?;
            write_manifest(&out, &manifest("experiment", &run, Some(seed), inputs, outputs))?;
            Ok(EXIT_OK)
        }
        Command::Replay { manifest: path, out_dir } => replay(&read_json(&path)?, out_dir.as_deref()),
    }
}

fn relocate(p: &Path, dir: Option<&Path>) -> PathBuf {
    match dir {
        Some(d) => d.join(p.file_name().unwrap_or(p.as_os_str())),
        None => p.to_path_buf(),
    }
}

/// Re-runs the command recorded in a manifest. Exit 0 when every output
/// matches its recorded digest (attack reports are compared without their
/// wall time), 1 otherwise.
pub fn replay(m: &RunManifest, out_dir: Option<&Path>) -> CliResult<i32> {
    let bad = |e: serde_json::Error| CliError::Invalid(format!("manifest config: {e}"));
    let outputs = match m.command.as_str() {
        "keygen" => {
            let mut cfg: KeygenConfig = serde_json::from_value(m.config.clone()).map_err(bad)?;
            cfg.out = relocate(&cfg.out, out_dir);
            cfg.private_out = relocate(&cfg.private_out, out_dir);
            do_keygen(&cfg)?
        }
        "attack" => {
            let mut cfg: AttackConfig = serde_json::from_value(m.config.clone()).map_err(bad)?;
            cfg.out = relocate(&cfg.out, out_dir);
            do_attack(&cfg)?.1
        }
        "solve" => {
            let mut cfg: SolveConfig = serde_json::from_value(m.config.clone()).map_err(bad)?;
            cfg.out = relocate(&cfg.out, out_dir);
            do_solve(&cfg)?.1
        }
        "experiment" => {
            let mut run: ExperimentRun = serde_json::from_value(m.config.clone()).map_err(bad)?;
            run.out = relocate(&run.out, out_dir);
            do_experiment(&run)?
        }
        other => return Err(CliError::Invalid(format!("unknown manifest command `{other}`"))),
    };
    let mut identical = outputs.len() == m.outputs.len();
    for (new, old) in outputs.iter().zip(&m.outputs) {
        let same = new.sha256 == old.sha256 || (new.stable_sha256.is_some() && new.stable_sha256 == old.stable_sha256);
        println!("{} {} {}", if same { "identical" } else { "DIFFERS" }, new.path, new.sha256);
        identical &= same;
    }
    Ok(if identical { EXIT_OK } else { EXIT_FAILURE })
}

/// Runs the CLI on `args`, printing errors to stderr, and returns the exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(CliError::Failure(msg)) => {
            eprintln!("failure: {msg}");
            EXIT_FAILURE
        }
        Err(CliError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INVALID
        }
    }
}
