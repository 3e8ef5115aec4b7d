//! Command-line front end. Every command prints one JSON document on
//! standard output; errors go to standard error with exit code 1 for domain
//! errors and 2 for I/O or format errors.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::value::RawValue;

use crate::contract::{self, ContractionPlan};
use crate::error::Error;
use crate::hypergraph::{connected_components, euler_characteristic, Hypergraph, DEFAULT_FACE_CAP};
use crate::io::{self as doc, AnyModel, Blocks, Document, FORMAT};
use crate::junction::{self, JunctionOptions};
use crate::model::TensorHypernetwork;
use crate::scalar::Scalar;
use crate::tensor::LabeledTensor;
use crate::zoo::{self, Fill, SiteOperator};

#[derive(Debug, Parser)]
#[command(
    name = "hyperdual",
    version,
    about = "Graphical models and tensor hypernetworks on dual hypergraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a named model or network
    Zoo(ZooArgs),
    /// Swap a graphical model and its dual tensor network
    Dualize {
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Contract a tensor network to its state
    Contract {
        input: String,
        /// Also write the contraction plan and its cost here
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// Print the contraction plan of a tensor network with its cost
    Plan { input: String },
    /// Marginal over a set of variables (dual edges for a network)
    Marginalize {
        input: String,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        vars: Vec<usize>,
        #[arg(long)]
        normalized: bool,
    },
    /// Restrict one variable to a subset of its states
    Condition {
        input: String,
        #[arg(long)]
        var: usize,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        keep: Vec<usize>,
    },
    /// Shannon entropy (nats) of a normalized marginal
    Entropy {
        input: String,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        vars: Vec<usize>,
    },
    /// Structural report for a model and its dual
    Analyze { input: String },
    /// <psi| A |psi> for an MPS and per-site operator blocks
    Expect { psi: String, blocks: String },
}

#[derive(Debug, clap::Args)]
struct ZooArgs {
    /// mps, mps-sandwich, tucker, cp, no-three-way, ising, peps or blocks
    family: String,
    #[arg(long, default_value_t = 4)]
    sites: usize,
    #[arg(long, default_value_t = 2)]
    phys: usize,
    #[arg(long, default_value_t = 2)]
    bond: usize,
    #[arg(long, default_value_t = 2)]
    rows: usize,
    #[arg(long, default_value_t = 2)]
    cols: usize,
    /// Variable sizes (no-three-way, ising)
    #[arg(long, value_delimiter = ',', default_value = "2")]
    states: Vec<usize>,
    /// Dangling dimensions (tucker, cp)
    #[arg(long, value_delimiter = ',', default_value = "2,2,2")]
    dims: Vec<usize>,
    /// Core dimensions (tucker)
    #[arg(long, value_delimiter = ',', default_value = "2,2,2")]
    ranks: Vec<usize>,
    /// CP rank
    #[arg(long, default_value_t = 2)]
    rank: usize,
    /// Random fill from this seed; all-ones fill when absent
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    complex: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Domain(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Format(msg) => Failure::Io(format!("format error: {msg}")),
            other => Failure::Domain(other.to_string()),
        }
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

fn read_input(path: &str) -> CmdResult<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Io(format!("reading standard input: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("reading {path}: {e}")))
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> CmdResult<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::Io(format!("writing {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(Failure::Io(format!("writing output: {e}")))
                }
                _ => Ok(()),
            }
        }
    }
}

fn load(path: &str) -> CmdResult<Document> {
    Ok(doc::parse_model(&read_input(path)?)?)
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(command: Command) -> CmdResult<()> {
    match command {
        Command::Zoo(args) => cmd_zoo(&args),
        Command::Dualize { input, out } => {
            let text = match load(&input)? {
                Document::Real(m) => doc::model_to_json(&m.dual())?,
                Document::Complex(m) => doc::model_to_json(&m.dual())?,
            };
            emit(&text, out.as_ref())
        }
        Command::Contract { input, plan } => match load(&input)? {
            Document::Real(m) => cmd_contract(&m, plan.as_ref()),
            Document::Complex(m) => cmd_contract(&m, plan.as_ref()),
        },
        Command::Plan { input } => match load(&input)? {
            Document::Real(m) => emit(&plan_json(require_tn(&m)?)?, None),
            Document::Complex(m) => emit(&plan_json(require_tn(&m)?)?, None),
        },
        Command::Marginalize {
            input,
            vars,
            normalized,
        } => match load(&input)? {
            Document::Real(m) => cmd_marginalize(&m, &vars, normalized),
            Document::Complex(m) => cmd_marginalize(&m, &vars, normalized),
        },
        Command::Condition { input, var, keep } => match load(&input)? {
            Document::Real(m) => cmd_condition(&m, var, &keep),
            Document::Complex(m) => cmd_condition(&m, var, &keep),
        },
        Command::Entropy { input, vars } => match load(&input)? {
            Document::Real(m) => cmd_entropy(&m, &vars),
            Document::Complex(_) => {
                Err(Failure::Domain("entropy needs a real-valued model".into()))
            }
        },
        Command::Analyze { input } => match load(&input)? {
            Document::Real(m) => cmd_analyze(&m),
            Document::Complex(m) => cmd_analyze(&m),
        },
        Command::Expect { psi, blocks } => cmd_expect(&psi, &blocks),
    }
}

fn zoo_model<S: Scalar>(args: &ZooArgs) -> CmdResult<String> {
    let fill: Fill<S> = args.seed.map_or(Fill::Ones, Fill::Random);
    let model = match args.family.as_str() {
        "mps" => AnyModel::Tn(zoo::mps(args.sites, args.phys, args.bond, &fill)?),
        "mps-sandwich" => {
            let psi = zoo::mps(args.sites, args.phys, args.bond, &fill)?;
            let blocks = vec![SiteOperator::identity(args.phys); args.sites];
            AnyModel::Tn(zoo::mps_sandwich(&psi, &blocks)?)
        }
        "tucker" => AnyModel::Tn(zoo::tucker(&args.dims, &args.ranks, &fill)?),
        "cp" => AnyModel::Tn(zoo::cp(&args.dims, args.rank, &fill)?),
        "no-three-way" => {
            let sizes: [usize; 3] = match args.states.as_slice() {
                &[n] => [n; 3],
                &[a, b, c] => [a, b, c],
                other => {
                    return Err(Failure::Domain(format!(
                        "no-three-way takes 1 or 3 sizes, got {}",
                        other.len()
                    )))
                }
            };
            AnyModel::Gm(zoo::no_three_way(sizes, &fill)?)
        }
        "ising" => AnyModel::Gm(zoo::ising_grid(args.rows, args.cols, &args.states, &fill)?),
        "peps" => AnyModel::Tn(zoo::peps_grid(
            args.rows, args.cols, args.phys, args.bond, &fill,
        )?),
        "blocks" => return zoo_blocks::<S>(args),
        other => return Err(Failure::Domain(format!("unknown family {other:?}"))),
    };
    Ok(doc::model_to_json(&model)?)
}

fn zoo_blocks<S: Scalar>(args: &ZooArgs) -> CmdResult<String> {
    if args.sites == 0 || args.phys == 0 {
        return Err(Failure::Domain("sites and phys must be at least 1".into()));
    }
    let n = args.phys;
    let blocks: Vec<SiteOperator<S>> = match args.seed {
        None => vec![SiteOperator::identity(n); args.sites],
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..args.sites)
                .map(|_| {
                    SiteOperator::new(n, (0..n * n).map(|_| S::sample_unit(&mut rng)).collect())
                })
                .collect::<crate::Result<_>>()?
        }
    };
    Ok(doc::blocks_to_json(&blocks)?)
}

fn cmd_zoo(args: &ZooArgs) -> CmdResult<()> {
    let text = if args.complex {
        zoo_model::<Complex64>(args)?
    } else {
        zoo_model::<f64>(args)?
    };
    emit(&text, args.out.as_ref())
}

fn require_tn<S: Scalar>(m: &AnyModel<S>) -> CmdResult<&TensorHypernetwork<S>> {
    match m {
        AnyModel::Tn(tn) => Ok(tn),
        AnyModel::Gm(_) => Err(Failure::Domain(
            "expected a tensor network; dualize the graphical model first".into(),
        )),
    }
}

fn plan_json<S: Scalar>(tn: &TensorHypernetwork<S>) -> CmdResult<String> {
    let report = contract::plan_report(tn)?;
    let plan = ContractionPlan {
        steps: report.steps.clone(),
    };
    let (_, cost) = contract::execute_plan(tn, &plan)?;
    Ok(doc::plan_to_json(&report, cost)?)
}

fn cmd_contract<S: Scalar>(m: &AnyModel<S>, plan: Option<&PathBuf>) -> CmdResult<()> {
    let tn = require_tn(m)?;
    let state = contract::contract(tn)?;
    if let Some(path) = plan {
        emit(&plan_json(tn)?, Some(path))?;
    }
    emit(&doc::tensor_to_json(&state)?, None)
}

fn cmd_marginalize<S: Scalar>(m: &AnyModel<S>, vars: &[usize], normalized: bool) -> CmdResult<()> {
    let gm = m.as_gm();
    let mut t = junction::marginal_set_unnormalized(&gm, vars, &JunctionOptions::default())?;
    if normalized {
        t = t.normalize()?.0;
    }
    emit(&doc::tensor_to_json(&t)?, None)
}

fn cmd_condition<S: Scalar>(m: &AnyModel<S>, var: usize, keep: &[usize]) -> CmdResult<()> {
    let conditioned = m.as_gm().condition(var, keep)?;
    let out = match m {
        AnyModel::Gm(_) => AnyModel::Gm(conditioned),
        AnyModel::Tn(_) => AnyModel::Tn(conditioned.to_tensor_network()),
    };
    emit(&doc::model_to_json(&out)?, None)
}

#[derive(Serialize)]
struct EntropyOut<'a> {
    format: &'static str,
    kind: &'static str,
    vars: &'a [usize],
    entropy: Box<RawValue>,
}

fn cmd_entropy(m: &AnyModel<f64>, vars: &[usize]) -> CmdResult<()> {
    let gm = m.as_gm();
    let marginal = junction::marginal_set_unnormalized(&gm, vars, &JunctionOptions::default())?;
    let (p, _) = marginal.normalize_probability()?;
    let mut sorted = vars.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let out = EntropyOut {
        format: FORMAT,
        kind: "entropy",
        vars: &sorted,
        entropy: doc::number(p.shannon_entropy()?)?,
    };
    emit(&to_json(&out)?, None)
}

/// Structural properties of one hypergraph.
#[derive(Debug, Serialize)]
pub struct StructureReport {
    pub vertices: usize,
    pub edges: usize,
    /// Common size of all hyperedges, if they share one.
    pub uniform: Option<usize>,
    /// Common vertex degree, if all vertices share one.
    pub regular: Option<usize>,
    pub two_uniform: bool,
    pub two_regular: bool,
    pub at_most_two_regular: bool,
    pub berge_acyclic: bool,
    /// `null` when the clique search exceeds its cap.
    pub helly: Option<bool>,
    /// `null` when the face count exceeds its cap.
    pub euler_characteristic: Option<i64>,
    pub components: usize,
    pub treewidth_estimate: usize,
}

impl StructureReport {
    pub fn new(h: &Hypergraph) -> Self {
        let uniform = h
            .edges()
            .first()
            .map(Vec::len)
            .filter(|&k| h.is_k_uniform(k));
        let regular = (h.vertex_count() > 0)
            .then(|| h.degree(0))
            .filter(|&k| h.is_k_regular(k));
        let complex = h.simplicial_complex();
        StructureReport {
            vertices: h.vertex_count(),
            edges: h.edge_count(),
            uniform,
            regular,
            two_uniform: h.is_k_uniform(2),
            two_regular: h.is_k_regular(2),
            at_most_two_regular: h.is_at_most_k_regular(2),
            berge_acyclic: h.is_berge_acyclic(),
            helly: h.has_helly_property().ok(),
            euler_characteristic: euler_characteristic(&complex, DEFAULT_FACE_CAP).ok(),
            components: connected_components(&complex),
            treewidth_estimate: junction::treewidth_estimate(h),
        }
    }
}

#[derive(Serialize)]
struct AnalyzeOut {
    format: &'static str,
    kind: &'static str,
    model: doc::ModelKind,
    hypergraph: StructureReport,
    dual: StructureReport,
}

fn cmd_analyze<S: Scalar>(m: &AnyModel<S>) -> CmdResult<()> {
    let h = m.hypergraph();
    let out = AnalyzeOut {
        format: FORMAT,
        kind: "analysis",
        model: m.kind(),
        hypergraph: StructureReport::new(h),
        dual: StructureReport::new(&h.dual()),
    };
    emit(&to_json(&out)?, None)
}

fn to_json<T: Serialize>(value: &T) -> CmdResult<String> {
    serde_json::to_string(value).map_err(|e| Failure::Io(format!("serializing output: {e}")))
}

fn complex_tensor(t: &LabeledTensor<f64>) -> LabeledTensor<Complex64> {
    let data = t.data().iter().map(|&x| Complex64::new(x, 0.0)).collect();
    LabeledTensor::new(t.labels().to_vec(), t.sizes().to_vec(), data).expect("same shape")
}

fn complex_tn(tn: &TensorHypernetwork<f64>) -> TensorHypernetwork<Complex64> {
    let tensors = tn.tensors().iter().map(complex_tensor).collect();
    TensorHypernetwork::new(tn.hypergraph().clone(), tn.edge_sizes().to_vec(), tensors)
        .expect("same structure")
}

fn complex_blocks(blocks: &[SiteOperator<f64>]) -> Vec<SiteOperator<Complex64>> {
    blocks
        .iter()
        .map(|b| {
            let data = b.data().iter().map(|&x| Complex64::new(x, 0.0)).collect();
            SiteOperator::new(b.dim(), data).expect("same shape")
        })
        .collect()
}

fn cmd_expect(psi_path: &str, blocks_path: &str) -> CmdResult<()> {
    let psi = load(psi_path)?;
    let blocks = doc::parse_blocks(&read_input(blocks_path)?)?;
    let text = match (psi, blocks) {
        (Document::Real(m), Blocks::Real(b)) => {
            doc::scalar_to_json(contract::expectation_value(require_tn(&m)?, &b)?)?
        }
        (Document::Complex(m), Blocks::Complex(b)) => {
            doc::scalar_to_json(contract::expectation_value(require_tn(&m)?, &b)?)?
        }
        (Document::Real(m), Blocks::Complex(b)) => {
            let tn = complex_tn(require_tn(&m)?);
            doc::scalar_to_json(contract::expectation_value(&tn, &b)?)?
        }
        (Document::Complex(m), Blocks::Real(b)) => doc::scalar_to_json(
            contract::expectation_value(require_tn(&m)?, &complex_blocks(&b))?,
        )?,
    };
    emit(&text, None)
}
