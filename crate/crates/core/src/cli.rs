//! Command-line front end.
//!
//! Exit codes: 0 pass, 1 fail (certificate rejected, or no Ramanujan graph
//! exists for the parameters), 2 usage or input error, 3 internal error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::{Rational, UniPoly};
use crate::error::{Error, Result};
use crate::expectation::{cancellation_stats, node_ctensor, node_polynomial, CTensor};
use crate::family::{leaf_graph, Multigraph, NodeState, Params};
use crate::oracle::{brute_expected_charpoly, DEFAULT_CAP};
use crate::walk::{certify, Certificate, StageRecord, Walk, WalkOptions};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ramanujan", version, about = "Build and certify bipartite Ramanujan multigraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Walk the matching tree to a leaf and certify the resulting graph.
    Build(BuildArgs),
    /// Certify a multigraph JSON file.
    Certify {
        /// Path to a file with {"n", "d", "multiplicity"}.
        graph: PathBuf,
    },
    /// Print a node's expected nontrivial characteristic polynomial.
    NodePoly {
        #[command(flatten)]
        target: NodeArgs,
        /// Also dump the squared-minor tensor of the node's random block.
        #[arg(long)]
        ctensor: bool,
    },
    /// Print a node's expected characteristic polynomial by brute force.
    Oracle {
        #[command(flatten)]
        target: NodeArgs,
        /// Maximum number of enumerated outcomes.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        oracle_cap: u128,
    },
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
    /// Output directory for graph.json, certificate.json and transcript.json.
    /// Without it the graph and certificate go to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the run transcript.
    #[arg(long, requires = "out")]
    pub trace: bool,
    /// Fix the first matching to the identity.
    #[arg(long)]
    pub canonical_first_matching: bool,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args, Debug)]
pub struct NodeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
    /// Node as inline JSON or a path to a JSON file; the root if omitted.
    #[arg(long)]
    pub node: Option<String>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            }
        }
    }
}

pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Build(args) => cmd_build(&args),
        Command::Certify { graph } => cmd_certify(&graph),
        Command::NodePoly { target, ctensor } => cmd_node_poly(&target, ctensor),
        Command::Oracle { target, oracle_cap } => cmd_oracle(&target, oracle_cap),
    };
    outcome.unwrap_or_else(|e| report(&e))
}

fn report(e: &Error) -> i32 {
    eprintln!("error: {e}");
    exit_code(e)
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        _ if e.is_internal() => EXIT_INTERNAL,
        Error::RootExceedsBound { .. } => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

#[derive(Serialize)]
struct ChildTrace {
    node: NodeState,
    poly_sha256: String,
    passed: bool,
}

#[derive(Serialize)]
struct StageTrace {
    node: NodeState,
    poly: UniPoly<Rational>,
    children: Vec<ChildTrace>,
    chosen: usize,
    elapsed_ms: u128,
}

#[derive(Serialize)]
struct FlagsTrace {
    canonical_first_matching: bool,
    jobs: usize,
}

#[derive(Serialize)]
struct CancellationTrace {
    checked: u64,
    violations: u64,
}

#[derive(Serialize)]
struct ParamsTrace {
    n: usize,
    d: usize,
}

/// Everything needed to replay and audit a build.
#[derive(Serialize)]
struct RunTranscript<'a> {
    params: ParamsTrace,
    flags: FlagsTrace,
    stages: Vec<StageTrace>,
    /// Tensor coefficients checked for rationality and sign in this process.
    cancellation: CancellationTrace,
    #[serde(skip_serializing_if = "Option::is_none")]
    leaf: Option<NodeState>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<&'a Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// SHA-256 of the polynomial's JSON coefficient list.
pub fn poly_hash(p: &UniPoly<Rational>) -> String {
    let json = serde_json::to_string(p).expect("polynomial serializes");
    hex::encode(Sha256::digest(json.as_bytes()))
}

fn stage_trace(s: &StageRecord) -> StageTrace {
    StageTrace {
        node: s.node.clone(),
        poly: s.poly.clone(),
        children: s
            .children
            .iter()
            .map(|c| ChildTrace { node: c.node.clone(), poly_sha256: poly_hash(&c.poly), passed: c.passed })
            .collect(),
        chosen: s.chosen,
        elapsed_ms: s.elapsed_ms,
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    fs::write(dir.join(name), contents)?;
    Ok(())
}

pub fn cmd_build(args: &BuildArgs) -> Result<i32> {
    let params = Params::new(args.n, args.d)?;
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
    }
    let options = WalkOptions {
        canonical_first_matching: args.canonical_first_matching,
        jobs: args.jobs,
        verify_averaging: false,
    };
    let mut walk = Walk::new(params, options);
    let result = walk.run().and_then(|leaf| {
        let graph = leaf_graph(&leaf, &params)?;
        let cert = certify(&graph)?;
        Ok((leaf, graph, cert))
    });

    let transcript = |leaf: Option<NodeState>, cert: Option<&Certificate>, error: Option<String>| {
        to_json(&RunTranscript {
            params: ParamsTrace { n: params.n, d: params.d },
            flags: FlagsTrace { canonical_first_matching: args.canonical_first_matching, jobs: args.jobs },
            stages: walk.stages().iter().map(stage_trace).collect(),
            cancellation: {
                let (checked, violations) = cancellation_stats();
                CancellationTrace { checked, violations }
            },
            leaf,
            certificate: cert,
            error,
        })
    };

    let (leaf, graph, cert) = match result {
        Ok(v) => v,
        Err(e) => {
            if e.is_internal() {
                let t = transcript(None, None, Some(e.to_string()));
                match &args.out {
                    Some(dir) => write_file(dir, "transcript.json", &t)?,
                    None => eprint!("{t}"),
                }
            }
            return Err(e);
        }
    };

    match &args.out {
        Some(dir) => {
            write_file(dir, "graph.json", &to_json(&graph))?;
            write_file(dir, "certificate.json", &to_json(&cert))?;
            if args.trace {
                write_file(dir, "transcript.json", &transcript(Some(leaf), Some(&cert), None))?;
            }
            eprintln!(
                "n={} d={}: {} ({} stages)",
                params.n,
                params.d,
                if cert.passed { "passed" } else { "FAILED" },
                walk.stages().len()
            );
        }
        None => {
            #[derive(Serialize)]
            struct Both<'a> {
                graph: &'a Multigraph,
                certificate: &'a Certificate,
            }
            print!("{}", to_json(&Both { graph: &graph, certificate: &cert }));
        }
    }
    Ok(if cert.passed { EXIT_PASS } else { EXIT_FAIL })
}

pub fn cmd_certify(path: &Path) -> Result<i32> {
    let text = fs::read_to_string(path)?;
    let graph: Multigraph = serde_json::from_str(&text)?;
    let cert = certify(&graph)?;
    print!("{}", to_json(&cert));
    Ok(if cert.passed { EXIT_PASS } else { EXIT_FAIL })
}

/// Reads a node from inline JSON or a file path; `None` is the root.
pub fn parse_node(spec: Option<&str>) -> Result<NodeState> {
    let Some(spec) = spec else {
        return Ok(NodeState::root());
    };
    let text = if spec.trim_start().starts_with('{') { spec.to_string() } else { fs::read_to_string(spec)? };
    serde_json::from_str(&text).map_err(|e| Error::InvalidNode(e.to_string()))
}

pub fn cmd_node_poly(target: &NodeArgs, with_ctensor: bool) -> Result<i32> {
    let params = Params::new(target.n, target.d)?;
    let node = parse_node(target.node.as_deref())?;
    let poly = node_polynomial(&node, &params)?;
    if with_ctensor {
        #[derive(Serialize)]
        struct Dump {
            poly: UniPoly<Rational>,
            ctensor: Option<CTensor>,
        }
        let ctensor = node_ctensor(&node, &params)?;
        print!("{}", to_json(&Dump { poly, ctensor }));
    } else {
        println!("{}", serde_json::to_string(&poly)?);
    }
    Ok(EXIT_PASS)
}

pub fn cmd_oracle(target: &NodeArgs, cap: u128) -> Result<i32> {
    let params = Params::new(target.n, target.d)?;
    let node = parse_node(target.node.as_deref())?;
    let poly = brute_expected_charpoly(&node, &params, cap)?;
    println!("{}", serde_json::to_string(&poly)?);
    Ok(EXIT_PASS)
}
