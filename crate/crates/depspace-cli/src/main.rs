//! depspace: inspect finite dependence spaces from the command line.
//!
//! Exit codes are a contract: 0 means the property holds or the query
//! succeeded, 1 means the property fails and the report carries a
//! counterexample, 2 means usage, parse, guard, or precondition error
//! (message on standard error). Reports are human-readable text by
//! default; --json emits one JSON object with a fixed field layout per
//! command. Every report over an input space echoes the canonical
//! serialization hash of that space.

use clap::{Args, Parser, Subcommand, ValueEnum};
use depspace::axioms::{
    self, MemberDefect, check_transitivity_direct, check_transitivity_idempotence,
};
use depspace::document::{
    SpaceDocument, parse_graph, parse_matrix, parse_space, serialize_space, space_hash,
};
use depspace::instances::{
    RankOracle, gen_binary, gen_graphic, gen_random, gen_uniform, oracle_compare,
};
use depspace::properties::{
    BasisReport, eis_scan, enumerate_bases, extend_to_basis, steinitz_scan,
};
use depspace::{Space, Subset};
use serde_json::{Map, Value, json};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "depspace",
    version,
    about = "Finite dependence spaces: axiom checks, property scans, bases, generators"
)]
struct Cli {
    /// Emit the report as a single JSON object on standard output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check an axiom on a space file.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Verify a derived property on a space file.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Print the one-step span of a subset.
    Span(SetArgs),
    /// Decide whether a subset is independent.
    Independent(SetArgs),
    /// Decide whether a subset is a basis.
    Basis(SetArgs),
    /// Extend an independent subset to a basis.
    Extend(ExtendArgs),
    /// List every basis of the space.
    Bases(FileArgs),
    /// Print the common basis size.
    Dimension(FileArgs),
    /// Generate a space and print its canonical document.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Compare a generated space against its independent rank oracle.
    #[command(subcommand, name = "oracle-compare")]
    OracleCompare(OracleCmd),
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Every family member has at least two distinct known elements.
    WellFormed(FileArgs),
    /// Dependence is transitive over subsets.
    Transitivity(TransitivityArgs),
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// The exchange lemma over all (base, a, b) triples.
    Steinitz(FileArgs),
    /// Exchange of independent sets over all (P, Q, R) triples.
    Eis(FileArgs),
    /// All bases have the same size.
    EquicardinalBases(FileArgs),
}

#[derive(Subcommand)]
enum GenCmd {
    /// Uniform matroid U(k, n).
    Uniform {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Cycle matroid of a graph file.
    Graphic { file: PathBuf },
    /// Column matroid of a 0/1 matrix file over GF(2).
    Binary { file: PathBuf },
    /// Seeded pseudorandom family.
    Random {
        #[arg(long)]
        n: usize,
        /// Number of distinct members to draw.
        #[arg(long)]
        m: usize,
        /// Largest member size (default: n).
        #[arg(long = "max-size")]
        max_size: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    Uniform {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    Graphic {
        file: PathBuf,
    },
    Binary {
        file: PathBuf,
    },
}

#[derive(Args)]
struct FileArgs {
    file: PathBuf,
}

#[derive(Args)]
struct TransitivityArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
    method: MethodArg,
}

#[derive(Args)]
struct SetArgs {
    file: PathBuf,
    /// Comma-separated element labels; empty for the empty set.
    #[arg(long)]
    set: String,
}

#[derive(Args)]
struct ExtendArgs {
    file: PathBuf,
    /// Comma-separated element labels; empty for the empty set.
    #[arg(long, default_value = "")]
    set: String,
    /// Require the transitivity check to pass first.
    #[arg(long)]
    strict: bool,
    /// Extend without checking transitivity (the default).
    #[arg(long, conflicts_with = "strict")]
    no_strict: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Direct,
    Idempotence,
}

/// A finished report: verdict, exit code, human lines, JSON fields.
struct Outcome {
    command: String,
    verdict: &'static str,
    failed: bool,
    human: Vec<String>,
    fields: Vec<(&'static str, Value)>,
    hash: Option<String>,
}

impl Outcome {
    fn new(command: &str, verdict: &'static str, failed: bool) -> Outcome {
        Outcome {
            command: command.to_string(),
            verdict,
            failed,
            human: Vec::new(),
            fields: Vec::new(),
            hash: None,
        }
    }

    fn line(mut self, line: String) -> Outcome {
        self.human.push(line);
        self
    }

    fn field(mut self, key: &'static str, value: Value) -> Outcome {
        self.fields.push((key, value));
        self
    }

    fn hash_of(mut self, space: &Space) -> Outcome {
        self.hash = Some(space_hash(space));
        self
    }
}

/// Die silently on a closed pipe (`depspace bases f | head`) instead of
/// panicking on EPIPE.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli.command) {
        Ok(Emit::Report(outcome)) => emit(outcome, cli.json, started),
        Ok(Emit::Document(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

enum Emit {
    Report(Outcome),
    Document(String),
}

fn emit(outcome: Outcome, json: bool, started: Instant) -> ExitCode {
    if json {
        let mut map = Map::new();
        map.insert("command".to_string(), Value::from(outcome.command));
        map.insert("verdict".to_string(), Value::from(outcome.verdict));
        if let Some(hash) = &outcome.hash {
            map.insert("input-hash".to_string(), Value::from(hash.as_str()));
        }
        for (key, value) in outcome.fields {
            map.insert(key.to_string(), value);
        }
        map.insert(
            "elapsed-ms".to_string(),
            Value::from(started.elapsed().as_millis() as u64),
        );
        println!("{}", Value::Object(map));
    } else {
        for line in &outcome.human {
            println!("{line}");
        }
        if let Some(hash) = &outcome.hash {
            println!("input-hash: {hash}");
        }
    }
    if outcome.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cmd: &Cmd) -> Result<Emit, String> {
    match cmd {
        Cmd::Check(CheckCmd::WellFormed(args)) => check_well_formed(&args.file),
        Cmd::Check(CheckCmd::Transitivity(args)) => check_transitivity(args),
        Cmd::Verify(VerifyCmd::Steinitz(args)) => verify_steinitz(&args.file),
        Cmd::Verify(VerifyCmd::Eis(args)) => verify_eis(&args.file),
        Cmd::Verify(VerifyCmd::EquicardinalBases(args)) => verify_equicardinal(&args.file),
        Cmd::Span(args) => span(args),
        Cmd::Independent(args) => independent(args),
        Cmd::Basis(args) => basis(args),
        Cmd::Extend(args) => extend(args),
        Cmd::Bases(args) => bases(&args.file),
        Cmd::Dimension(args) => dimension(&args.file),
        Cmd::Gen(g) => generate(g),
        Cmd::OracleCompare(o) => compare(o),
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn load_space(path: &Path) -> Result<Space, String> {
    parse_space(&read_file(path)?).map_err(|e| e.to_string())
}

fn parse_set(space: &Space, raw: &str) -> Result<Subset, String> {
    if raw.is_empty() {
        return Ok(Subset::EMPTY);
    }
    let labels: Vec<&str> = raw.split(',').collect();
    space.subset_of_labels(&labels).map_err(|e| e.to_string())
}

/// Well-formedness runs on the raw document so a defective family is a
/// verdict, not a parse failure. Ground-set problems (bad or duplicate
/// labels, too many elements) are still input errors.
fn check_well_formed(path: &Path) -> Result<Emit, String> {
    let doc = SpaceDocument::parse(&read_file(path)?).map_err(|e| e.to_string())?;
    validate_ground(&doc.elements)?;
    let report = axioms::check_well_formed(&doc.elements, &doc.delta);
    let scanned = Value::from(report.scanned);
    let outcome = match report.witness {
        None => {
            let space = doc.to_space().map_err(|e| e.to_string())?;
            Outcome::new("check well-formed", "holds", false)
                .line(format!("well-formed: holds (scanned {})", report.scanned))
                .field("scanned-count", scanned)
                .hash_of(&space)
        }
        Some(w) => {
            let member = format!("{{{}}}", w.member.join(","));
            let (reason, witness) = match &w.defect {
                MemberDefect::TooSmall => (
                    format!("member {member} has fewer than two distinct elements"),
                    json!({"member": w.member, "defect": "too-small"}),
                ),
                MemberDefect::Unknown(label) => (
                    format!("member {member} mentions unknown element {label:?}"),
                    json!({"member": w.member, "defect": "unknown-element", "label": label}),
                ),
            };
            Outcome::new("check well-formed", "fails", true)
                .line(format!("well-formed: fails (scanned {})", report.scanned))
                .line(format!("counterexample: {reason}"))
                .field("scanned-count", scanned)
                .field("witness", witness)
        }
    };
    Ok(Emit::Report(outcome))
}

/// Label validation matching space construction, without requiring the
/// family to be well-formed.
fn validate_ground(elements: &[String]) -> Result<(), String> {
    let probe = Space::new(elements.to_vec(), &[] as &[Vec<&str>]);
    probe.map(|_| ()).map_err(|e| e.to_string())
}

fn check_transitivity(args: &TransitivityArgs) -> Result<Emit, String> {
    let space = load_space(&args.file)?;
    let report = match args.method {
        MethodArg::Direct => check_transitivity_direct(&space),
        MethodArg::Idempotence => check_transitivity_idempotence(&space),
    }
    .map_err(|e| e.to_string())?;
    let method = report.method.to_string();
    let mut outcome = Outcome::new(
        "check transitivity",
        if report.holds() { "holds" } else { "fails" },
        !report.holds(),
    )
    .line(format!(
        "transitivity: {} (method {method}, scanned {})",
        if report.holds() { "holds" } else { "fails" },
        report.scanned
    ))
    .field("method", Value::from(method))
    .field("scanned-count", Value::from(report.scanned));
    if let Some(w) = report.witness {
        outcome = outcome
            .line(format!(
                "counterexample: x={}, A={}, B={}: x depends on A, every element of A depends on B, but x does not depend on B",
                space.label(w.x),
                space.format_subset(w.a),
                space.format_subset(w.b)
            ))
            .field(
                "witness",
                json!({
                    "x": space.label(w.x),
                    "a": space.labels_of(w.a),
                    "b": space.labels_of(w.b),
                }),
            );
    }
    Ok(Emit::Report(outcome.hash_of(&space)))
}

fn verify_steinitz(path: &Path) -> Result<Emit, String> {
    let space = load_space(path)?;
    let report = steinitz_scan(&space).map_err(|e| e.to_string())?;
    let mut outcome = Outcome::new(
        "verify steinitz",
        if report.holds() { "holds" } else { "fails" },
        !report.holds(),
    )
    .line(format!(
        "steinitz-exchange: {} (scanned {})",
        if report.holds() { "holds" } else { "fails" },
        report.scanned
    ))
    .field("scanned-count", Value::from(report.scanned));
    if let Some(w) = report.witness {
        outcome = outcome
            .line(format!(
                "counterexample: a={}, b={}, base={}: b is in span(base+{{a}}) but not span(base), and a is not in span(base+{{b}})",
                space.label(w.a),
                space.label(w.b),
                space.format_subset(w.base)
            ))
            .field(
                "witness",
                json!({
                    "a": space.label(w.a),
                    "b": space.label(w.b),
                    "base": space.labels_of(w.base),
                }),
            );
    }
    Ok(Emit::Report(outcome.hash_of(&space)))
}

fn verify_eis(path: &Path) -> Result<Emit, String> {
    let space = load_space(path)?;
    let report = eis_scan(&space).map_err(|e| e.to_string())?;
    let mut outcome = Outcome::new(
        "verify eis",
        if report.holds() { "holds" } else { "fails" },
        !report.holds(),
    )
    .line(format!(
        "eis: {} (scanned {})",
        if report.holds() { "holds" } else { "fails" },
        report.scanned
    ))
    .field("scanned-count", Value::from(report.scanned));
    if let Some(w) = report.witness {
        outcome = outcome
            .line(format!(
                "counterexample: P={}, Q={}, R={}: R is an independent subset of span(Q) and P+Q is independent, but P+R is dependent",
                space.format_subset(w.p),
                space.format_subset(w.q),
                space.format_subset(w.r)
            ))
            .field(
                "witness",
                json!({
                    "p": space.labels_of(w.p),
                    "q": space.labels_of(w.q),
                    "r": space.labels_of(w.r),
                }),
            );
    }
    Ok(Emit::Report(outcome.hash_of(&space)))
}

fn basis_report(space: &Space) -> Result<BasisReport, String> {
    enumerate_bases(space).map_err(|e| e.to_string())
}

fn verify_equicardinal(path: &Path) -> Result<Emit, String> {
    let space = load_space(path)?;
    let report = basis_report(&space)?;
    let outcome = if let Some((first, second)) = report.witness_pair {
        Outcome::new("verify equicardinal-bases", "fails", true)
            .line(format!(
                "equicardinal-bases: fails ({} bases)",
                report.bases.len()
            ))
            .line(format!(
                "counterexample: {} and {} differ in size",
                space.format_subset(first),
                space.format_subset(second)
            ))
            .field(
                "witness",
                json!({
                    "first": space.labels_of(first),
                    "second": space.labels_of(second),
                }),
            )
    } else {
        Outcome::new("verify equicardinal-bases", "holds", false)
            .line(format!(
                "equicardinal-bases: holds ({} bases, dimension {})",
                report.bases.len(),
                report
                    .dimension
                    .map_or_else(|| "none".to_string(), |d| d.to_string())
            ))
            .field(
                "result",
                json!({
                    "count": report.bases.len(),
                    "dimension": report.dimension,
                }),
            )
    };
    Ok(Emit::Report(outcome.hash_of(&space)))
}

fn span(args: &SetArgs) -> Result<Emit, String> {
    let space = load_space(&args.file)?;
    let set = parse_set(&space, &args.set)?;
    let out = space.span(set);
    let outcome = Outcome::new("span", "ok", false)
        .line(space.labels_of(out).join(","))
        .field(
            "result",
            json!({
                "set": space.labels_of(set),
                "span": space.labels_of(out),
            }),
        )
        .hash_of(&space);
    Ok(Emit::Report(outcome))
}

fn independent(args: &SetArgs) -> Result<Emit, String> {
    let space = load_space(&args.file)?;
    let set = parse_set(&space, &args.set)?;
    let outcome = match space.first_contained_member(set) {
        None => Outcome::new("independent", "independent", false)
            .line(format!("independent: {}", space.format_subset(set))),
        Some(member) => Outcome::new("independent", "dependent", true)
            .line(format!(
                "dependent: {} contains family member {}",
                space.format_subset(set),
                space.format_subset(member)
            ))
            .field("witness", json!({"member": space.labels_of(member)})),
    };
    Ok(Emit::Report(outcome.hash_of(&space)))
}

fn basis(args: &SetArgs) -> Result<Emit, String> {
    let space = load_space(&args.file)?;
    let set = parse_set(&space, &args.set)?;
    let outcome = if space.is_basis(set) {
        Outcome::new("basis", "basis", false).line(format!("basis: {}", space.format_subset(set)))
    } else if let Some(member) = space.first_contained_member(set) {
        Outcome::new("basis", "not-basis", true)
            .line(format!(
                "not a basis: {} is dependent (contains {})",
                space.format_subset(set),
                space.format_subset(member)
            ))
            .field(
                "witness",
                json!({"reason": "dependent", "member": space.labels_of(member)}),
            )
    } else {
        let missing = space.ground().minus(space.span(set));
        Outcome::new("basis", "not-basis", true)
            .line(format!(
                "not a basis: span of {} misses {}",
                space.format_subset(set),
                space.format_subset(missing)
            ))
            .field(
                "witness",
                json!({"reason": "not-spanning", "missing": space.labels_of(missing)}),
            )
    };
    Ok(Emit::Report(outcome.hash_of(&space)))
}

fn extend(args: &ExtendArgs) -> Result<Emit, String> {
    let space = load_space(&args.file)?;
    let set = parse_set(&space, &args.set)?;
    let result = extend_to_basis(&space, set, args.strict).map_err(|e| e.to_string())?;
    let outcome = Outcome::new("extend", "ok", false)
        .line(space.labels_of(result).join(","))
        .field("result", json!({"basis": space.labels_of(result)}))
        .hash_of(&space);
    Ok(Emit::Report(outcome))
}

fn bases(path: &Path) -> Result<Emit, String> {
    let space = load_space(path)?;
    let report = basis_report(&space)?;
    let mut outcome =
        Outcome::new("bases", "ok", false).line(format!("bases: {}", report.bases.len()));
    for &b in &report.bases {
        outcome = outcome.line(space.format_subset(b));
    }
    outcome = outcome.line(match report.dimension {
        Some(d) if report.equicardinal => format!("equicardinal: yes (dimension {d})"),
        _ if report.equicardinal => "equicardinal: yes".to_string(),
        _ => "equicardinal: no".to_string(),
    });
    let listed: Vec<Vec<String>> = report.bases.iter().map(|&b| space.labels_of(b)).collect();
    outcome = outcome
        .field(
            "result",
            json!({
                "count": listed.len(),
                "bases": listed,
                "equicardinal": report.equicardinal,
                "dimension": report.dimension,
            }),
        )
        .hash_of(&space);
    Ok(Emit::Report(outcome))
}

fn dimension(path: &Path) -> Result<Emit, String> {
    let space = load_space(path)?;
    let report = basis_report(&space)?;
    let outcome = if let Some((first, second)) = report.witness_pair {
        Outcome::new("dimension", "not-equicardinal", true)
            .line(format!(
                "dimension: undefined ({} and {} differ in size)",
                space.format_subset(first),
                space.format_subset(second)
            ))
            .field(
                "witness",
                json!({
                    "first": space.labels_of(first),
                    "second": space.labels_of(second),
                }),
            )
    } else {
        let d = report
            .dimension
            .expect("every space has at least one basis");
        Outcome::new("dimension", "ok", false)
            .line(format!("dimension: {d}"))
            .field(
                "result",
                json!({"dimension": d, "count": report.bases.len()}),
            )
    };
    Ok(Emit::Report(outcome.hash_of(&space)))
}

fn generate(cmd: &GenCmd) -> Result<Emit, String> {
    let (space, provenance) = match cmd {
        GenCmd::Uniform { n, k } => (
            gen_uniform(*n, *k).map_err(|e| e.to_string())?,
            format!("gen uniform n={n} k={k}"),
        ),
        GenCmd::Graphic { file } => {
            let spec = parse_graph(&read_file(file)?).map_err(|e| e.to_string())?;
            let provenance = format!(
                "gen graphic vertices={} edges={}",
                spec.vertex_count,
                spec.edges.len()
            );
            (gen_graphic(&spec).map_err(|e| e.to_string())?, provenance)
        }
        GenCmd::Binary { file } => {
            let spec = parse_matrix(&read_file(file)?).map_err(|e| e.to_string())?;
            let provenance = format!(
                "gen binary rows={} columns={}",
                spec.rows.len(),
                spec.rows.first().map_or(0, |r| r.len())
            );
            (gen_binary(&spec).map_err(|e| e.to_string())?, provenance)
        }
        GenCmd::Random {
            n,
            m,
            max_size,
            seed,
        } => {
            let max_size = max_size.unwrap_or(*n);
            (
                gen_random(*n, *m, max_size, *seed).map_err(|e| e.to_string())?,
                format!("gen random n={n} m={m} max-size={max_size} seed={seed}"),
            )
        }
    };
    Ok(Emit::Document(serialize_space(&space, Some(&provenance))))
}

fn compare(cmd: &OracleCmd) -> Result<Emit, String> {
    let (space, oracle, command) = match cmd {
        OracleCmd::Uniform { n, k } => (
            gen_uniform(*n, *k).map_err(|e| e.to_string())?,
            RankOracle::uniform(*n, *k).map_err(|e| e.to_string())?,
            "oracle-compare uniform",
        ),
        OracleCmd::Graphic { file } => {
            let spec = parse_graph(&read_file(file)?).map_err(|e| e.to_string())?;
            (
                gen_graphic(&spec).map_err(|e| e.to_string())?,
                RankOracle::graphic(&spec).map_err(|e| e.to_string())?,
                "oracle-compare graphic",
            )
        }
        OracleCmd::Binary { file } => {
            let spec = parse_matrix(&read_file(file)?).map_err(|e| e.to_string())?;
            (
                gen_binary(&spec).map_err(|e| e.to_string())?,
                RankOracle::binary(&spec).map_err(|e| e.to_string())?,
                "oracle-compare binary",
            )
        }
    };
    let report = oracle_compare(&space, &oracle).map_err(|e| e.to_string())?;
    let mut outcome = Outcome::new(
        command,
        if report.holds() { "agree" } else { "mismatch" },
        !report.holds(),
    )
    .line(format!(
        "oracle-compare: {} (scanned {})",
        if report.holds() { "agree" } else { "mismatch" },
        report.scanned
    ))
    .field("scanned-count", Value::from(report.scanned));
    if let Some(w) = report.witness {
        let describe = |independent: bool| {
            if independent {
                "independent"
            } else {
                "dependent"
            }
        };
        outcome = outcome
            .line(format!(
                "counterexample: {}: space says {}, oracle says {}",
                space.format_subset(w.set),
                describe(w.space_independent),
                describe(w.oracle_independent)
            ))
            .field(
                "witness",
                json!({
                    "set": space.labels_of(w.set),
                    "space-independent": w.space_independent,
                    "oracle-independent": w.oracle_independent,
                }),
            );
    }
    Ok(Emit::Report(outcome.hash_of(&space)))
}
