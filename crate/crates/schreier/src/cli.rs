//! The `schreier` command line.
//!
//! Exit codes: 0 success, 1 property violation, 2 parse error, 3 resource
//! cap, 4 failed precondition.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use schreier_core::families::{adequacy, members_up_to, restrict, spreading_violation, FamilyError};
use schreier_core::indices::{
    build_l1_tree, index_consistency_report, lavrentiev_index, oscillation_index, oscillation_membership,
    ChainStart, IndexError, IndicatorSeq, L1TreeOptions, OscillationMode,
};
use schreier_core::norms::{
    boolean_l1_certify, family_norm_capped, tsirelson_norm, CoeffVec, Engine, FunctionTable, LastEndpoint,
    NormError, TsirelsonOptions,
};
use schreier_core::trees::{
    boolean_tree, delta_order, has_property_fb, is_weakly_independent, parse_node, wf_order, TreeError,
};
use schreier_core::{FamilySpec, FinSet, Ordinal};
use serde_json::{json, Value};

use crate::formats::{
    family_dump, finset_json, interval_json, norm_result_json, parse_config, parse_finset,
    parse_function_rows, parse_ordinal, parse_rational, parse_set_pairs, parse_step_fn, parse_vector,
    parse_vector_file, parse_wf_tree_file, rational_json, set_pairs_json, FormatError,
};
use crate::specs::{parse_family, parse_tree};

/// A failed run: the message and the exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub msg: String,
}

impl CliError {
    pub const VIOLATION: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const RESOURCE: i32 = 3;
    pub const PRECONDITION: i32 = 4;

    fn new(code: i32, msg: impl Into<String>) -> Self {
        CliError { code, msg: msg.into() }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::new(CliError::PARSE, e.to_string())
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        let code = match e {
            FamilyError::NotMember(_) => CliError::PRECONDITION,
            FamilyError::ResourceCap { .. } => CliError::RESOURCE,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<NormError> for CliError {
    fn from(e: NormError) -> Self {
        let code = match &e {
            NormError::Family(f) => return f.clone().into(),
            NormError::ResourceCap { .. } => CliError::RESOURCE,
            NormError::InvalidInput(_) => CliError::PARSE,
            NormError::WindowTooSmall { .. } => CliError::PRECONDITION,
            NormError::HypothesisFailed { .. } | NormError::ConclusionFailed { .. } => CliError::VIOLATION,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<TreeError> for CliError {
    fn from(e: TreeError) -> Self {
        let code = match e {
            TreeError::NotPrefixClosed(_) => CliError::PARSE,
            TreeError::Unsupported(_) | TreeError::Undecided { .. } => CliError::PRECONDITION,
            TreeError::ResourceCap { .. } => CliError::RESOURCE,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<IndexError> for CliError {
    fn from(e: IndexError) -> Self {
        let code = match &e {
            IndexError::Family(f) => return f.clone().into(),
            IndexError::Norm(n) => return n.clone().into(),
            IndexError::Tree(t) => return t.clone().into(),
            IndexError::EpsilonOutOfRange | IndexError::Thresholds | IndexError::InvalidStepFn(_) => CliError::PARSE,
            IndexError::ResourceCap { .. } => CliError::RESOURCE,
            IndexError::InvalidChain(_) => CliError::VIOLATION,
            IndexError::NotMember(_)
            | IndexError::Unsupported(_)
            | IndexError::Precondition { .. }
            | IndexError::Construction { .. } => CliError::PRECONDITION,
        };
        CliError::new(code, e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "schreier", version, about = "Schreier families, ordinal indices and Tsirelson-type norms")]
pub struct Cli {
    /// Omit the run metadata (tool version and time) from JSON output.
    #[arg(long, global = true)]
    pub no_meta: bool,
    /// File of `key=value` lines supplying flags not given on the command line.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Membership, ranks and derived sets of families.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Family norms, Tsirelson-type norms and ℓ¹ certificates.
    #[command(subcommand)]
    Norm(NormCmd),
    /// Oscillation, Lavrentiev and tree indices.
    #[command(subcommand)]
    Index(IndexCmd),
}

#[derive(Args, Debug)]
pub struct SpecSet {
    /// Family spec, e.g. `schreier(w)`.
    #[arg(long)]
    pub spec: String,
    /// Finite set, e.g. `[3,5,9]`.
    #[arg(long)]
    pub set: String,
}

#[derive(Subcommand, Debug)]
pub enum FamilyCmd {
    Member(SpecSet),
    /// Cantor–Bendixson rank in the closure of the family.
    Rank(SpecSet),
    /// Whether the set lies in a derived set of the family.
    Derivative {
        #[command(flatten)]
        target: SpecSet,
        #[arg(long)]
        order: String,
        /// Also decide finite orders by probing far-out extensions.
        #[arg(long)]
        brute: bool,
        #[arg(long, default_value_t = 20)]
        window: u32,
    },
    /// Dump the members contained in `{1, …, n}`, one per line.
    Restrict {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Adequacy and spreading on `{1, …, n}`.
    Check {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 10)]
        n: u32,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
}

#[derive(Args, Debug)]
pub struct VecInput {
    /// Vector literal `index:coeff,…` with rational coefficients.
    #[arg(long = "vec", allow_hyphen_values = true)]
    pub vec: Option<String>,
    /// File holding a vector literal or a JSON object of index → "p/q".
    #[arg(long)]
    pub vec_file: Option<PathBuf>,
}

impl VecInput {
    fn load(&self) -> Result<CoeffVec, CliError> {
        match (&self.vec, &self.vec_file) {
            (Some(v), None) => Ok(parse_vector(v)?),
            (None, Some(p)) => Ok(parse_vector_file(&read(p)?)?),
            _ => Err(CliError::new(CliError::PARSE, "give exactly one of --vec and --vec-file")),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum EngineArg {
    Memo,
    Naive,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum EndpointArg {
    End,
    Free,
}

#[derive(Subcommand, Debug)]
pub enum NormCmd {
    /// `sup_{F∈𝓕} |Σ_{n∈F} x_n|`.
    Family {
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        input: VecInput,
        #[arg(long, default_value_t = schreier_core::norms::DEFAULT_NORM_CAP)]
        cap: usize,
    },
    /// The Tsirelson-type norm `T_α`.
    Tsirelson {
        #[arg(long)]
        alpha: String,
        #[command(flatten)]
        input: VecInput,
        #[arg(long, value_enum, default_value_t = EngineArg::Memo)]
        engine: EngineArg,
        #[arg(long, value_enum, default_value_t = EndpointArg::End)]
        last_endpoint: EndpointArg,
        #[arg(long)]
        max_support: Option<usize>,
    },
    /// CSV timings of both engines over growing supports.
    Bench {
        #[arg(long, default_value = "0")]
        alpha: String,
        #[arg(long, default_value_t = 30)]
        max_support: usize,
        #[arg(long, default_value_t = 2)]
        step: usize,
        /// Largest support handed to the naive engine.
        #[arg(long, default_value_t = 12)]
        naive_max: usize,
    },
    /// ℓ¹ lower estimate for functions with Boolean independent level sets.
    CertifyL1 {
        /// JSON `{"functions": [["p/q", …], …]}`.
        #[arg(long)]
        table: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        delta: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum IndexCmd {
    /// Oscillation index, or membership of `--set` in `𝒪^order`.
    Oscillation {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        order: Option<String>,
        #[arg(long, default_value = "1/2")]
        epsilon: String,
        /// Evaluate finite levels from the definition.
        #[arg(long)]
        direct: bool,
    },
    /// Lavrentiev index of a step function file.
    Lavrentiev {
        #[arg(long = "fn")]
        file: PathBuf,
        #[arg(long = "c", allow_hyphen_values = true)]
        c: String,
        #[arg(long = "d", allow_hyphen_values = true)]
        d: String,
    },
    /// Build and certify a finite-order ℓ¹ tree.
    L1tree {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        order: u64,
        #[arg(long, default_value = "1/2")]
        epsilon: String,
        #[arg(long, default_value_t = 2)]
        width: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cross-checks between oscillation, spreading and ℓ¹ indices.
    Consistency {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 5)]
        level: u32,
        #[arg(long, default_value_t = 20)]
        window: u32,
    },
    /// Tree orders and properties.
    Tree {
        /// Tree spec, e.g. `L(schreier(1),2)`.
        #[arg(long)]
        spec: Option<String>,
        /// Report the derivation order of the tree.
        #[arg(long)]
        delta: bool,
        /// Check weak independence up to this depth.
        #[arg(long)]
        weak_independence: Option<usize>,
        /// Check property FB at this node (`+`/`-` string; `root` for the root).
        #[arg(long, allow_hyphen_values = true)]
        fb: Option<String>,
        #[arg(long, default_value_t = 20)]
        window: usize,
        /// File of comma-separated label tuples; reports the tree order.
        #[arg(long)]
        wf: Option<PathBuf>,
        /// JSON set pairs; reports the Boolean independence tree order.
        #[arg(long)]
        pairs: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long, default_value_t = 1 << 20)]
        cap: usize,
    },
}

fn read(p: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(p).map_err(|e| CliError::new(CliError::PARSE, format!("{}: {e}", p.display())))
}

/// Appends `--key value` for every config entry whose flag is absent.
pub fn merge_config(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let strs: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let Some(pos) = strs.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(args);
    };
    let path = match strs[pos].strip_prefix("--config=") {
        Some(p) => p.to_string(),
        None => strs
            .get(pos + 1)
            .cloned()
            .ok_or_else(|| CliError::new(CliError::PARSE, "--config needs a path"))?,
    };
    let entries = parse_config(&read(&PathBuf::from(path))?)?;
    let mut out = args;
    for (k, v) in entries {
        let flag = format!("--{k}");
        let present = strs.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}=")));
        if present {
            continue;
        }
        if v == "true" {
            out.push(flag.into());
        } else if v != "false" {
            out.push(format!("{flag}={v}").into());
        }
    }
    Ok(out)
}

/// What a command produces.
pub enum Output {
    Json(Value),
    Text(String),
}

/// Parses `args` (including the program name), runs the command and
/// returns its output.
pub fn run<I, T>(args: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = merge_config(args.into_iter().map(Into::into).collect())?;
    let cli = Cli::try_parse_from(args).map_err(|e| {
        let code = match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
            _ => CliError::PARSE,
        };
        CliError::new(code, e.to_string())
    })?;
    let (out, violation) = execute(&cli.command)?;
    let text = match out {
        Output::Json(mut v) => {
            if !cli.no_meta {
                if let Value::Object(m) = &mut v {
                    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
                    m.insert(
                        "meta".into(),
                        json!({ "tool": "schreier", "version": env!("CARGO_PKG_VERSION"), "unix_time": secs }),
                    );
                }
            }
            format!("{v}\n")
        }
        Output::Text(t) => t,
    };
    if let Some(path) = &cli.output {
        fs::write(path, &text).map_err(|e| CliError::new(CliError::PARSE, format!("{}: {e}", path.display())))?;
    }
    match violation {
        Some(msg) => Err(CliError {
            code: CliError::VIOLATION,
            msg: format!("{msg}\n{text}"),
        }),
        None if cli.output.is_some() => Ok(String::new()),
        None => Ok(text),
    }
}

/// Runs a command; the second component names a property violation, in
/// which case the output is still reported.
fn execute(cmd: &Command) -> Result<(Output, Option<String>), CliError> {
    match cmd {
        Command::Family(c) => family(c),
        Command::Norm(c) => norm(c),
        Command::Index(c) => index(c),
    }
}

fn ok(v: Value) -> Result<(Output, Option<String>), CliError> {
    Ok((Output::Json(v), None))
}

fn spec_and_set(a: &SpecSet) -> Result<(FamilySpec, FinSet), CliError> {
    Ok((parse_family(&a.spec)?, parse_finset(&a.set)?))
}

fn family(cmd: &FamilyCmd) -> Result<(Output, Option<String>), CliError> {
    match cmd {
        FamilyCmd::Member(a) => {
            let (spec, f) = spec_and_set(a)?;
            ok(json!({ "member": spec.member(&f) }))
        }
        FamilyCmd::Rank(a) => {
            let (spec, f) = spec_and_set(a)?;
            ok(json!({ "rank": spec.cb_rank(&f)?.to_string() }))
        }
        FamilyCmd::Derivative {
            target,
            order,
            brute,
            window,
        } => {
            let (spec, f) = spec_and_set(target)?;
            let rho = parse_ordinal(order)?;
            let mut v = json!({ "in_derivative": spec.in_derivative(&f, &rho) });
            if *brute {
                let j = rho
                    .as_finite()
                    .and_then(|j| u32::try_from(j).ok())
                    .ok_or_else(|| CliError::new(CliError::PRECONDITION, "--brute needs a finite order"))?;
                v["brute"] = json!(schreier_core::families::brute_derivative_member(&spec, &f, j, *window));
            }
            ok(v)
        }
        FamilyCmd::Restrict { spec, n, cap } => {
            let spec = parse_family(spec)?;
            let members = members_up_to(&spec, *n, *cap)?;
            Ok((Output::Text(family_dump(&members)), None))
        }
        FamilyCmd::Check { spec, n, cap } => {
            let spec = parse_family(spec)?;
            let FamilySpec::Explicit(members) = restrict(&spec, *n, *cap)? else {
                unreachable!("restrict returns an explicit family")
            };
            let report = adequacy(&members);
            let spread = spreading_violation(&spec, *n, *cap)?;
            let v = json!({
                "n": n,
                "members": members.len(),
                "adequate": report.is_adequate(),
                "contains_empty": report.contains_empty,
                "missing_singletons": report.missing_singletons,
                "hereditary_violation": report.hereditary_violation.as_ref().map(|(f, g)| json!([finset_json(f), finset_json(g)])),
                "spreading": spread.is_none(),
                "spreading_violation": spread.as_ref().map(|(f, g)| json!([finset_json(f), finset_json(g)])),
            });
            let violation = (!report.is_adequate() || spread.is_some()).then(|| String::from("family check failed"));
            Ok((Output::Json(v), violation))
        }
    }
}

fn norm(cmd: &NormCmd) -> Result<(Output, Option<String>), CliError> {
    match cmd {
        NormCmd::Family { spec, input, cap } => {
            let spec = parse_family(spec)?;
            let x = input.load()?;
            ok(norm_result_json(&family_norm_capped(&spec, &x, *cap)?))
        }
        NormCmd::Tsirelson {
            alpha,
            input,
            engine,
            last_endpoint,
            max_support,
        } => {
            let alpha = parse_ordinal(alpha)?;
            let x = input.load()?;
            let mut opts = TsirelsonOptions::with_engine(match engine {
                EngineArg::Memo => Engine::Memoized,
                EngineArg::Naive => Engine::Naive,
            });
            opts.last_endpoint = match last_endpoint {
                EndpointArg::End => LastEndpoint::EndOfSupport,
                EndpointArg::Free => LastEndpoint::Free,
            };
            if let Some(m) = max_support {
                opts.max_support = *m;
            }
            ok(norm_result_json(&tsirelson_norm(&alpha, &x, &opts)?))
        }
        NormCmd::Bench {
            alpha,
            max_support,
            step,
            naive_max,
        } => {
            let alpha = parse_ordinal(alpha)?;
            let mut csv = String::from("support,engine,micros,value\n");
            let mut s = step.max(&1).to_owned();
            while s <= *max_support {
                let x = bench_vector(s);
                for (name, engine) in [("memo", Engine::Memoized), ("naive", Engine::Naive)] {
                    if engine == Engine::Naive && s > *naive_max {
                        continue;
                    }
                    let mut opts = TsirelsonOptions::with_engine(engine);
                    opts.max_support = opts.max_support.max(s);
                    let t = Instant::now();
                    let r = tsirelson_norm(&alpha, &x, &opts)?;
                    csv.push_str(&format!("{s},{name},{},{}\n", t.elapsed().as_micros(), r.value));
                }
                s += step.max(&1);
            }
            Ok((Output::Text(csv), None))
        }
        NormCmd::CertifyL1 {
            table,
            r,
            delta,
            samples,
            seed,
        } => {
            let rows = parse_function_rows(&read(table)?)?;
            let table = FunctionTable::new(rows)?;
            let r = parse_rational(r)?;
            let delta = parse_rational(delta)?;
            let pairs = table.level_pairs(&r, &delta);
            let c = boolean_l1_certify(&table, &r, &delta, *samples, *seed)?;
            ok(json!({
                "pairs": set_pairs_json(&pairs),
                "lower_constant": rational_json(&c.lower_constant),
                "equivalence_constant": rational_json(&c.equivalence_constant),
                "sign_vectors_checked": c.sign_vectors_checked,
                "random_vectors_checked": c.random_vectors_checked,
                "min_ratio": rational_json(&c.min_ratio),
            }))
        }
    }
}

/// Deterministic benchmark vector on `{1, …, s}`: coefficients cycle
/// through `1, −1/2, 2/3`.
fn bench_vector(s: usize) -> CoeffVec {
    let cycle = [(1, 1), (-1, 2), (2, 3)];
    CoeffVec::new((1..=s as u32).map(|i| {
        let (p, q) = cycle[(i as usize - 1) % cycle.len()];
        (i, schreier_core::norms::rat(p, q))
    }))
    .expect("positive distinct indices")
}

fn index(cmd: &IndexCmd) -> Result<(Output, Option<String>), CliError> {
    match cmd {
        IndexCmd::Oscillation {
            spec,
            set,
            order,
            epsilon,
            direct,
        } => {
            let seq = IndicatorSeq::new(parse_family(spec)?);
            let epsilon = parse_rational(epsilon)?;
            match (set, order) {
                (None, None) => ok(json!({ "index": oscillation_index(&seq)?.to_string() })),
                (Some(set), Some(order)) => {
                    let f = parse_finset(set)?;
                    let lambda = parse_ordinal(order)?;
                    let mode = if *direct {
                        OscillationMode::direct()
                    } else {
                        OscillationMode::Symbolic
                    };
                    ok(json!({ "member": oscillation_membership(&seq, &f, &lambda, &epsilon, mode)? }))
                }
                _ => Err(CliError::new(CliError::PARSE, "--set and --order go together")),
            }
        }
        IndexCmd::Lavrentiev { file, c, d } => {
            let f = parse_step_fn(&read(file)?)?;
            let r = lavrentiev_index(&f, &parse_rational(c)?, &parse_rational(d)?)?;
            ok(json!({
                "index": r.index.to_string(),
                "start": match r.start {
                    ChainStart::High => "high",
                    ChainStart::Low => "low",
                },
                "chain": r.chain.iter().map(|s| s.intervals().iter().map(interval_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }))
        }
        IndexCmd::L1tree {
            spec,
            order,
            epsilon,
            width,
            samples,
            seed,
        } => {
            let seq = IndicatorSeq::new(parse_family(spec)?);
            let opts = L1TreeOptions {
                width: *width,
                samples: *samples,
                seed: *seed,
                ..L1TreeOptions::default()
            };
            let t = build_l1_tree(&seq, *order, &parse_rational(epsilon)?, &opts)?;
            let label = |l: &[(u32, u32)]| l.iter().map(|&(n, m)| json!([n, m])).collect::<Vec<_>>();
            ok(json!({
                "order": t.order,
                "wf_order": wf_order(&t.tree).to_string(),
                "predicted_index": t.predicted_index.to_string(),
                "epsilon": rational_json(&t.epsilon),
                "delta": rational_json(&t.delta),
                "r": rational_json(&t.r),
                "nodes": t.tree.nodes().map(|z| label(z)).collect::<Vec<_>>(),
                "branches": t.branches.iter().map(|b| json!({
                    "labels": label(&b.labels),
                    "points": b.points.iter().map(finset_json).collect::<Vec<_>>(),
                    "pairs": set_pairs_json(&b.pairs),
                    "lower_constant": rational_json(&b.certificate.lower_constant),
                    "equivalence_constant": rational_json(&b.certificate.equivalence_constant),
                    "sign_vectors_checked": b.certificate.sign_vectors_checked,
                    "random_vectors_checked": b.certificate.random_vectors_checked,
                    "min_ratio": rational_json(&b.certificate.min_ratio),
                })).collect::<Vec<_>>(),
            }))
        }
        IndexCmd::Consistency { spec, level, window } => {
            let text = spec.trim().to_string();
            let seq = IndicatorSeq::new(parse_family(spec)?);
            let r = index_consistency_report(&seq, *level, *window)?;
            let v = json!({
                "family": text,
                "oscillation_index": r.oscillation_index.to_string(),
                "predicted_l1_index": r.predicted_l1_index.to_string(),
                "pass": r.all_pass(),
                "entries": r.entries.iter().map(|e| json!({
                    "claim": e.claim,
                    "reference": e.reference,
                    "instances": e.instances,
                    "pass": e.pass,
                    "witness": e.witness,
                })).collect::<Vec<_>>(),
            });
            let violation = (!r.all_pass()).then(|| String::from("a consistency check failed"));
            Ok((Output::Json(v), violation))
        }
        IndexCmd::Tree {
            spec,
            delta,
            weak_independence,
            fb,
            window,
            wf,
            pairs,
            depth,
            cap,
        } => {
            let mut v = serde_json::Map::new();
            let mut violation = None;
            let tree = spec.as_deref().map(parse_tree).transpose()?;
            let need_tree = || CliError::new(CliError::PARSE, "this check needs --spec");
            if *delta {
                let t = tree.as_ref().ok_or_else(need_tree)?;
                v.insert("order".into(), json!(delta_order(t)?.to_string()));
            }
            if let Some(d) = weak_independence {
                let t = tree.as_ref().ok_or_else(need_tree)?;
                let wi = is_weakly_independent(t, *d, *cap)?;
                if !wi {
                    violation = Some(String::from("tree is not weakly independent"));
                }
                v.insert("weakly_independent".into(), json!(wi));
            }
            if let Some(stem) = fb {
                let t = tree.as_ref().ok_or_else(need_tree)?;
                let node = if stem == "root" {
                    Vec::new()
                } else {
                    parse_node(stem).ok_or_else(|| CliError::new(CliError::PARSE, format!("bad node {stem:?}")))?
                };
                v.insert("fb".into(), json!(has_property_fb(t, &node, *window)?));
            }
            if let Some(p) = wf {
                let t = parse_wf_tree_file(&read(p)?)?;
                v.insert("wf_order".into(), json!(wf_order(&t).to_string()));
            }
            if let Some(p) = pairs {
                let sp = parse_set_pairs(&read(p)?)?;
                let bt = boolean_tree(&sp, *depth, *cap)?;
                v.insert("boolean_order".into(), json!(Ordinal::from(bt.order()).to_string()));
                v.insert("boolean_truncated".into(), json!(bt.truncated));
            }
            if v.is_empty() {
                return Err(CliError::new(
                    CliError::PARSE,
                    "nothing to compute: pass --delta, --weak-independence, --fb, --wf or --pairs",
                ));
            }
            Ok((Output::Json(Value::Object(v)), violation))
        }
    }
}
