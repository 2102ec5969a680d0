use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use superpose::blocks::is_k_edge_connected;
use superpose::format::{parse_instance, parse_mapping, serialize_instance, serialize_mapping};
use superpose::generate::{
    gen_random, reduce_biconnectivity_augmentation, reduce_hamiltonian_path, reduce_subgraph_isomorphism, Instance, RandomParams,
};
use superpose::oracle::{brute_force_optimum_with, OracleConfig, DEFAULT_CAP};
use superpose::unweighted::{construct_2connect, construct_connect, feasible_2connect, feasible_connect};
use superpose::{solve, superpose, Error, Graph, Solution, SolverConfig, WeightFn};

const YES: u8 = 0;
const NO: u8 = 1;
const USAGE: u8 = 2;
const CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "superpose", version, about = "Place the edges of H onto G so that the union is k-edge-connected")]
struct Cli {
    /// Seed for generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Most injections the oracle will enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Refuse instances whose H needs a vertex cover larger than this.
    #[arg(long, global = true)]
    tmax: Option<usize>,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    parallel: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum-weight placement (or a yes/no answer when the instance has a budget).
    Solve { instance: String },
    /// Ignore weights: is there any placement at all?
    Feasible {
        instance: String,
        /// Print a placement when one exists.
        #[arg(long)]
        construct: bool,
    },
    /// Exhaustive search over all injections.
    Oracle { instance: String },
    /// Verify a mapping against an instance.
    Check { instance: String, mapping: String },
    /// Emit an instance.
    #[command(subcommand)]
    Gen(Gen),
    /// Time the weighted solver on random instances and print CSV.
    Bench(BenchArgs),
}

#[derive(Subcommand)]
enum Gen {
    /// Random instance.
    Random(RandomArgs),
    /// Encode "is H a subgraph of G?" (edge-list files).
    Subiso {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Encode Hamiltonian path on a cubic graph (edge-list file).
    Hampath {
        #[arg(long)]
        g: String,
    },
    /// Encode augmenting a tree to 2-edge-connectivity.
    Biconn {
        /// Edge-list file of the tree.
        #[arg(long)]
        tree: String,
        /// Cost of links not listed with --cost.
        #[arg(long, default_value_t = 1)]
        default_cost: u64,
        /// Link cost as u,v,c (repeatable).
        #[arg(long, value_parser = parse_cost)]
        cost: Vec<(usize, usize, u64)>,
        #[arg(long)]
        budget: u64,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long, default_value_t = 8)]
    n_g: usize,
    #[arg(long, default_value_t = 4)]
    n_h: usize,
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    #[arg(long, default_value_t = 5)]
    wmax: u64,
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Patch G into one component.
    #[arg(long)]
    connected: bool,
    /// Keep every edge of H on this many vertices.
    #[arg(long)]
    cover: Option<usize>,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated sizes of G.
    #[arg(long, value_delimiter = ',', default_values_t = vec![10, 20, 40])]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 6)]
    n_h: usize,
    #[arg(long, default_value_t = 1)]
    cover: usize,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 3)]
    reps: u64,
    #[arg(long, default_value_t = 0.2)]
    p: f64,
}

fn parse_cost(s: &str) -> Result<(usize, usize, u64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [u, v, c] = parts.as_slice() else {
        return Err(format!("expected u,v,c, got {s}"));
    };
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("invalid number {t}"));
    Ok((num(u)? as usize, num(v)? as usize, num(c)?))
}

/// Failure with an exit code and a message for stderr.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::OracleCapExceeded { .. } => Fail(CAP, e.to_string()),
            _ => Fail(USAGE, e.to_string()),
        }
    }
}

fn read(path: &str) -> Result<String, Fail> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Fail(USAGE, format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Fail(USAGE, format!("{path}: {e}")))
}

fn load(path: &str) -> Result<Instance, Fail> {
    parse_instance(&read(path)?).map_err(|e| Fail(USAGE, format!("{path}: {e}")))
}

/// Plain edge list: `n m` then `m` lines `u v`; `#` comments allowed.
fn load_edge_list(path: &str) -> Result<Graph, Fail> {
    let text = read(path)?;
    let bad = |m: String| Fail(USAGE, format!("{path}: {m}"));
    let mut nums = Vec::new();
    for (i, line) in text.lines().enumerate() {
        for tok in line.split('#').next().unwrap_or("").split_whitespace() {
            nums.push(tok.parse::<usize>().map_err(|_| bad(format!("line {}: invalid number {tok}", i + 1)))?);
        }
    }
    let (&n, rest) = nums.split_first().ok_or_else(|| bad("empty file".into()))?;
    let (&m, rest) = rest.split_first().ok_or_else(|| bad("missing edge count".into()))?;
    if rest.len() != 2 * m {
        return Err(bad(format!("expected {m} edges, found {} numbers", rest.len())));
    }
    Graph::new(n, rest.chunks(2).map(|c| (c[0], c[1]))).map_err(|e| bad(e.to_string()))
}

fn solver_config(cli: &Cli) -> SolverConfig {
    SolverConfig { tmax: cli.tmax, parallel: cli.parallel as usize }
}

fn require_connected(inst: &Instance) -> Result<(), Fail> {
    if inst.k == 2 && !inst.g.is_connected() {
        return Err(Fail(USAGE, "k = 2 needs a connected G".into()));
    }
    Ok(())
}

// Mapping lines, or INFEASIBLE / NO; the exit code follows the answer.
fn report(inst: &Instance, best: Option<Solution>, out: &mut String) -> u8 {
    match (best, inst.budget) {
        (None, _) => {
            out.push_str("INFEASIBLE\n");
            NO
        }
        (Some(s), Some(b)) if s.weight > b => {
            let _ = writeln!(out, "NO\n# optimum {} exceeds budget {b}", s.weight);
            NO
        }
        (Some(s), _) => {
            out.push_str(&serialize_mapping(&s.phi, s.weight));
            YES
        }
    }
}

fn run(cli: &Cli, out: &mut String) -> Result<u8, Fail> {
    match &cli.command {
        Command::Solve { instance } => {
            let inst = load(instance)?;
            require_connected(&inst)?;
            let best = solve(&inst.g, &inst.h, &inst.w, inst.k, &solver_config(cli))?;
            Ok(report(&inst, best, out))
        }
        Command::Oracle { instance } => {
            let inst = load(instance)?;
            let cfg = OracleConfig { cap: cli.cap, parallel: cli.parallel as usize };
            let res = brute_force_optimum_with(&inst.g, &inst.h, &inst.w, inst.k, &cfg)?;
            let _ = writeln!(out, "# visited {}", res.visited);
            Ok(report(&inst, res.solution, out))
        }
        Command::Feasible { instance, construct } => {
            let inst = load(instance)?;
            require_connected(&inst)?;
            let (g, h) = (&inst.g, &inst.h);
            let ok = if inst.k == 1 { feasible_connect(g, h) } else { feasible_2connect(g, h)? };
            if !ok {
                out.push_str("NO\n");
                return Ok(NO);
            }
            if *construct {
                let phi = if inst.k == 1 { construct_connect(g, h) } else { construct_2connect(g, h)? };
                let phi = phi.ok_or_else(|| Fail(USAGE, "construction failed on a feasible instance".into()))?;
                let weight = inst.w.mapping_weight(h, &phi)?;
                out.push_str(&serialize_mapping(&phi, weight));
            } else {
                out.push_str("YES\n");
            }
            Ok(YES)
        }
        Command::Check { instance, mapping } => {
            let inst = load(instance)?;
            let file = parse_mapping(&read(mapping)?).map_err(|e| Fail(USAGE, format!("{mapping}: {e}")))?;
            let phi = file.to_mapping(inst.h.n(), inst.g.n())?;
            let mut problems = Vec::new();
            if !phi.is_total() {
                problems.push("mapping does not cover every vertex of H".to_string());
            }
            if problems.is_empty() {
                let weight = inst.w.mapping_weight(&inst.h, &phi)?;
                if file.weight.is_some_and(|d| d != weight) {
                    problems.push(format!("declared weight {} but the mapping weighs {weight}", file.weight.unwrap()));
                }
                if inst.budget.is_some_and(|b| weight > b) {
                    problems.push(format!("weight {weight} exceeds budget {}", inst.budget.unwrap()));
                }
                let f = superpose(&inst.g, &inst.h, &phi)?;
                if !is_k_edge_connected(&f, inst.k) {
                    problems.push(format!("superposition is not {}-edge-connected", inst.k));
                }
                if problems.is_empty() {
                    let _ = writeln!(out, "OK weight {weight}");
                    return Ok(YES);
                }
            }
            for p in problems {
                let _ = writeln!(out, "FAIL {p}");
            }
            Ok(NO)
        }
        Command::Gen(gen) => {
            let inst = match gen {
                Gen::Random(a) => {
                    let params = RandomParams {
                        n_g: a.n_g,
                        n_h: a.n_h,
                        edge_prob: a.p,
                        weight_max: a.wmax,
                        k: a.k,
                        connected_g: a.connected,
                        cover_bound: a.cover,
                    };
                    Instance { budget: a.budget, ..gen_random(&params, cli.seed)? }
                }
                Gen::Subiso { g, h, k } => reduce_subgraph_isomorphism(&load_edge_list(g)?, &load_edge_list(h)?, *k)?,
                Gen::Hampath { g } => reduce_hamiltonian_path(&load_edge_list(g)?)?,
                Gen::Biconn { tree, default_cost, cost, budget, k } => {
                    let mut c = WeightFn::uniform(*default_cost);
                    for &(u, v, x) in cost {
                        c.set(u, v, x);
                    }
                    reduce_biconnectivity_augmentation(&load_edge_list(tree)?, &c, *budget, *k)?
                }
            };
            out.push_str(&serialize_instance(&inst));
            Ok(YES)
        }
        Command::Bench(b) => {
            out.push_str("k,n_g,n_h,seed,m_g,m_h,weight,millis\n");
            for &n_g in &b.sizes {
                for rep in 0..b.reps {
                    let seed = cli.seed.wrapping_add(rep);
                    let params = RandomParams {
                        n_g,
                        n_h: b.n_h.min(n_g),
                        edge_prob: b.p,
                        weight_max: 9,
                        k: b.k,
                        connected_g: b.k == 2,
                        cover_bound: Some(b.cover),
                    };
                    let inst = gen_random(&params, seed)?;
                    let start = Instant::now();
                    let best = solve(&inst.g, &inst.h, &inst.w, b.k, &solver_config(cli))?;
                    let ms = start.elapsed().as_secs_f64() * 1e3;
                    let weight = best.map_or("inf".to_string(), |s| s.weight.to_string());
                    let _ = writeln!(out, "{},{n_g},{},{seed},{},{},{weight},{ms:.3}", b.k, inst.h.n(), inst.g.m(), inst.h.m());
                }
            }
            Ok(YES)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = match run(&cli, &mut out) {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    };
    print!("{out}");
    ExitCode::from(code)
}
